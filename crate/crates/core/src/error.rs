use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("exponent must be an integer, got `{0}`")]
    ExponentOnlyIntegral(String),
    #[error("elements belong to different group families")]
    FamilyMismatch,
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("scalars belong to different fields")]
    FieldMismatch,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("element does not belong to the ring instance: {0}")]
    InstanceMismatch(String),
    #[error("invalid ring instance: {0}")]
    InvalidInstance(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("component at degree {0} is zero")]
    UnreachableDegree(String),
    #[error("search window has {size} unknowns, cap is {cap}")]
    WindowTooLarge { size: usize, cap: usize },
    #[error("premise does not hold: {0}")]
    PremiseViolated(String),
    #[error("degree {0} has infinite order (or none found within the bound)")]
    InfiniteOrderDegree(String),
    #[error("degrees {0} and {1} are not conjugate")]
    NonConjugateDegrees(String, String),
    #[error("degree alignment exhausted at step {step} (bound {bound})")]
    AlignmentExhausted { step: usize, bound: u64 },
    #[error("candidate element {0} vanishes")]
    DegenerateCandidate(String),
    #[error("matrix is not in the ideal M_2(tk[t]): {0}")]
    NotInIdeal(String),
    #[error("census inconclusive: {0}")]
    CensusInconclusive(String),
    #[error("bounded search exhausted: {0}")]
    ExhaustedBound(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("exponent overflow: {0}")]
    Overflow(String),
    #[error("i/o error: {0}")]
    Io(String),
}
