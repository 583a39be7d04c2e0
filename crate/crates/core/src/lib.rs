pub mod conditions;
pub mod error;
pub mod goldie;
pub mod group;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod ring;
pub mod scalar;
pub mod suite;
pub mod xy;

pub use error::{Error, Result};
