//! Fractions with periodic-degree denominators, trivial-quotient certificates,
//! the embedding of `k[x,y]/(xy)` into `k[x,x^-1] (+) k[y,y^-1]`, and the maps `phi_ij`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::goldie::{CensusReport, ShapeClass};
use crate::group::GroupElement;
use crate::ring::{add_coeff, Coords, GradedElement, MatrixBase, Mono, RingInstance, RingKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub numerator: GradedElement,
    pub denominator: GradedElement,
    /// `k = O(deg s)`; the denominator is `s^k`.
    pub k: u64,
    /// `(r s^(k-1)) s = r s^k`.
    pub cross_multiplication_holds: bool,
}

/// Rewrites `r s^-1` as `(r s^(k-1)) (s^k)^-1` with `s^k` in `R_e`.
pub fn fraction_normalize_periodic(inst: &RingInstance, r: &GradedElement, s: &GradedElement, order_bound: u64) -> Result<Fraction> {
    inst.check(r)?;
    inst.check(s)?;
    let g = inst.group();
    let deg = s.degree()?;
    let k = g.element_order(deg, order_bound).finite().ok_or_else(|| Error::InfiniteOrderDegree(g.format(deg)))?;
    let numerator = inst.mul(r, &inst.pow(s, k - 1));
    let denominator = inst.pow(s, k);
    if denominator.degree()? != &g.identity() {
        return Err(Error::DegenerateCandidate("s^k is not in R_e".into()));
    }
    let cross_multiplication_holds = inst.mul(&numerator, s) == inst.mul(r, &denominator);
    Ok(Fraction { numerator, denominator, k, cross_multiplication_holds })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrivialQuotient {
    pub statement: String,
    /// Unit shapes found, as `degree: representative`.
    pub units: Vec<String>,
}

/// Certifies `Q = R` when the census found only units and witnessed zero divisors.
pub fn quotient_is_trivial(inst: &RingInstance, census: &CensusReport) -> Result<TrivialQuotient> {
    if let Some(s) = census
        .shapes
        .iter()
        .find(|s| !matches!(s.class, ShapeClass::Unit { .. } | ShapeClass::ZeroDivisor { .. }))
    {
        return Err(Error::CensusInconclusive(format!(
            "shape {:?} at degree {} is neither a unit nor a witnessed zero divisor",
            s.mask,
            inst.group().format(&s.degree)
        )));
    }
    let g = inst.group();
    let units = census
        .unit_shapes()
        .map(|s| match &s.class {
            ShapeClass::Unit { representative, .. } => format!("{}: {}", g.format(&s.degree), inst.format_element(representative)),
            _ => unreachable!("filtered to units"),
        })
        .collect();
    Ok(TrivialQuotient { statement: "every homogeneous regular element is a unit, so Q_cl^gr(R) = R".into(), units })
}

/// The direct-sum target of the embedding for a `k[x,y]/(xy)` instance.
pub fn nastasescu_target(inst: &RingInstance) -> Result<RingInstance> {
    match inst.kind() {
        RingKind::Nastasescu { h } => RingInstance::direct_sum_laurent(inst.group().clone(), h.clone(), inst.field()),
        _ => Err(Error::InvalidInstance("not a k[x,y]/(xy) instance".into())),
    }
}

/// `x -> (x, 0)`, `y -> (0, y)`, `1 -> (1, 1)`.
pub fn nastasescu_embed(inst: &RingInstance, target: &RingInstance, a: &GradedElement) -> Result<GradedElement> {
    inst.check(a)?;
    let mut coords = Coords::new();
    for (m, c) in a.coords() {
        match m.exp {
            0 => {
                add_coeff(&mut coords, Mono::new(0, 0), c.clone());
                add_coeff(&mut coords, Mono::new(1, 0), c);
            }
            e if e > 0 => add_coeff(&mut coords, Mono::new(0, e), c),
            e => add_coeff(&mut coords, Mono::new(1, -e), c),
        }
    }
    Ok(target.from_coords(&coords))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub samples: usize,
    pub hom_violations: Vec<String>,
    pub image_violations: Vec<String>,
    pub degree_violations: Vec<String>,
    pub spanning_window: usize,
    pub kernel_dim: usize,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.hom_violations.is_empty() && self.image_violations.is_empty() && self.degree_violations.is_empty() && self.kernel_dim == 0
    }
}

fn random_element(inst: &RingInstance, rng: &mut ChaCha8Rng, bound: i64, terms: usize) -> GradedElement {
    let window = inst.monomial_window(bound);
    let degrees = inst.support(&window);
    (0..rng.gen_range(1..=terms)).fold(inst.zero(), |acc, _| {
        let d = &degrees[rng.gen_range(0..degrees.len())];
        let x = inst.random_homogeneous(rng, d, bound).expect("degree in support");
        inst.add(&acc, &x)
    })
}

/// Homomorphism, image and degree checks on random pairs, and injectivity on the monomials up to `bound`.
pub fn nastasescu_embedding_audit(inst: &RingInstance, samples: usize, bound: i64, seed: u64) -> Result<EmbeddingReport> {
    let target = nastasescu_target(inst)?;
    let embed = |a: &GradedElement| nastasescu_embed(inst, &target, a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EmbeddingReport {
        samples,
        hom_violations: Vec::new(),
        image_violations: Vec::new(),
        degree_violations: Vec::new(),
        spanning_window: 0,
        kernel_dim: 0,
    };
    if embed(&inst.one())? != target.one() {
        report.hom_violations.push("1 does not map to (1, 1)".into());
    }
    for _ in 0..samples {
        let a = random_element(inst, &mut rng, bound, 4);
        let b = random_element(inst, &mut rng, bound, 4);
        let (fa, fb) = (embed(&a)?, embed(&b)?);
        let show = |x: &GradedElement| inst.format_element(x);
        if embed(&inst.mul(&a, &b))? != target.mul(&fa, &fb) {
            report.hom_violations.push(format!("product of {} and {}", show(&a), show(&b)));
        }
        if embed(&inst.add(&a, &b))? != target.add(&fa, &fb) {
            report.hom_violations.push(format!("sum of {} and {}", show(&a), show(&b)));
        }
        let (f, g) = target.to_laurent_pair(&fa).expect("direct-sum element");
        if f.coeff(0) != g.coeff(0) {
            report.image_violations.push(format!("image of {} has f(0) != g(0)", show(&a)));
        }
        for (deg, part) in inst.decompose(&a) {
            let image = embed(&part)?;
            if !image.is_zero() && image.degree().ok() != Some(&deg) {
                report.degree_violations.push(format!("{} leaves degree {}", show(&part), inst.group().format(&deg)));
            }
        }
    }
    let monos = inst.window_monomials(bound);
    let images: Vec<Coords> = monos
        .iter()
        .map(|m| embed(&inst.monomial(*m, inst.field().one())).map(|x| x.coords()))
        .collect::<Result<_>>()?;
    let rank = inst.linear_system(&images, &Coords::new()).0.rank();
    report.spanning_window = monos.len();
    report.kernel_dim = monos.len() - rank;
    Ok(report)
}

/// `phi_ij`, defined on the ideal of matrices with entries in `t k[t]` by `A -> t^-1 e_ij A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GradedHom {
    pub i: usize,
    pub j: usize,
}

impl GradedHom {
    pub fn all() -> [GradedHom; 4] {
        [GradedHom { i: 1, j: 1 }, GradedHom { i: 1, j: 2 }, GradedHom { i: 2, j: 1 }, GradedHom { i: 2, j: 2 }]
    }

    pub fn name(&self) -> String {
        format!("phi_{}{}", self.i, self.j)
    }
}

fn poly_matrix_2(inst: &RingInstance) -> Result<(GroupElement, Vec<GroupElement>)> {
    match inst.kind() {
        RingKind::Matrix { base: MatrixBase::PolyD { h }, shifts } if shifts.len() == 2 => Ok((h.clone(), shifts.clone())),
        _ => Err(Error::InvalidInstance("phi maps need M_2(k[t])(g_1, g_2)".into())),
    }
}

/// Whether every entry of `a` has zero constant term.
pub fn in_ideal(a: &GradedElement) -> bool {
    a.coords().keys().all(|m| m.exp >= 1)
}

pub fn phi_apply(inst: &RingInstance, hom: GradedHom, a: &GradedElement) -> Result<GradedElement> {
    poly_matrix_2(inst)?;
    inst.check(a)?;
    if let Some((m, _)) = a.coords().into_iter().find(|(m, _)| m.exp < 1) {
        return Err(Error::NotInIdeal(format!("entry ({}, {}) has a nonzero constant term", m.slot / 2 + 1, m.slot % 2 + 1)));
    }
    let (i, j) = (hom.i as u8 - 1, hom.j as u8 - 1);
    let mut coords = Coords::new();
    for (m, c) in a.coords() {
        if m.slot / 2 == j {
            add_coeff(&mut coords, Mono::new(i * 2 + m.slot % 2, m.exp - 1), c);
        }
    }
    Ok(inst.from_coords(&coords))
}

/// `deg(t^-1 e_ij) = g_i h^-1 g_j^-1`.
pub fn phi_degree(inst: &RingInstance, hom: GradedHom) -> Result<GroupElement> {
    let (h, shifts) = poly_matrix_2(inst)?;
    let g = inst.group();
    Ok(g.mul(&g.mul(&shifts[hom.i - 1], &g.inverse(&h)), &g.inverse(&shifts[hom.j - 1])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiAudit {
    pub hom: String,
    pub degree: String,
    pub samples: usize,
    pub additivity_violations: Vec<String>,
    pub module_violations: Vec<String>,
    pub degree_violations: Vec<String>,
}

impl PhiAudit {
    pub fn passed(&self) -> bool {
        self.additivity_violations.is_empty() && self.module_violations.is_empty() && self.degree_violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!(self)
    }
}

/// Random matrix with entry exponents in `lo..=hi`.
fn random_poly_matrix(inst: &RingInstance, rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> GradedElement {
    let mut coords = Coords::new();
    for slot in 0..4u8 {
        for e in lo..=hi {
            if rng.gen_bool(0.3) {
                add_coeff(&mut coords, Mono::new(slot, e), inst.field().from_i64(rng.gen_range(-5..=5)));
            }
        }
    }
    inst.from_coords(&coords)
}

/// Additivity, right linearity `phi(A r) = phi(A) r`, and the degree shift, on random samples.
pub fn phi_module_audit(inst: &RingInstance, hom: GradedHom, samples: usize, max_degree: i64, seed: u64) -> Result<PhiAudit> {
    let shift = phi_degree(inst, hom)?;
    let g = inst.group();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((hom.i * 2 + hom.j) as u64) << 32);
    let mut audit = PhiAudit {
        hom: hom.name(),
        degree: g.format(&shift),
        samples,
        additivity_violations: Vec::new(),
        module_violations: Vec::new(),
        degree_violations: Vec::new(),
    };
    let show = |x: &GradedElement| inst.format_element(x);
    for _ in 0..samples {
        let a = random_poly_matrix(inst, &mut rng, 1, max_degree);
        let b = random_poly_matrix(inst, &mut rng, 1, max_degree);
        let r = random_poly_matrix(inst, &mut rng, 0, max_degree);
        let (pa, pb) = (phi_apply(inst, hom, &a)?, phi_apply(inst, hom, &b)?);
        if phi_apply(inst, hom, &inst.add(&a, &b))? != inst.add(&pa, &pb) {
            audit.additivity_violations.push(format!("A = {}, B = {}", show(&a), show(&b)));
        }
        if phi_apply(inst, hom, &inst.mul(&a, &r))? != inst.mul(&pa, &r) {
            audit.module_violations.push(format!("A = {}, r = {}", show(&a), show(&r)));
        }
        for (deg, part) in inst.decompose(&a) {
            let image = phi_apply(inst, hom, &part)?;
            if !image.is_zero() && image.degree().ok() != Some(&g.mul(&shift, &deg)) {
                audit.degree_violations.push(format!("{} of degree {}", show(&part), g.format(&deg)));
            }
        }
    }
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goldie::regular_census;
    use crate::group::Group;
    use crate::poly::LaurentPoly;
    use crate::scalar::Field;

    fn lp(coeffs: &[i64], val: i64) -> LaurentPoly {
        LaurentPoly::from_coeffs(Field::Rational, val, coeffs.iter().map(|&c| Field::Rational.from_i64(c)).collect())
    }

    fn counterexample() -> RingInstance {
        let g = Group::InfiniteDihedral;
        RingInstance::counterexample(g.clone(), g.parse_word("s").unwrap(), g.parse_word("r").unwrap(), Field::Rational).unwrap()
    }

    #[test]
    fn periodic_fraction() {
        let ga = RingInstance::group_algebra(Group::builtin_table("Z2").unwrap(), Field::Rational).unwrap();
        let u = ga.monomial(Mono::new(0, 1), Field::Rational.one());
        let fr = fraction_normalize_periodic(&ga, &ga.one(), &u, 10).unwrap();
        assert_eq!((fr.numerator, fr.denominator.clone(), fr.k), (u, ga.one(), 2));
        assert!(fr.cross_multiplication_holds);
        let n = RingInstance::nastasescu_default(Field::Rational);
        let x = n.monomial(Mono::new(0, 1), Field::Rational.one());
        assert!(matches!(fraction_normalize_periodic(&n, &n.one(), &x, 10), Err(Error::InfiniteOrderDegree(_))));
    }

    #[test]
    fn trivial_quotient_nastasescu() {
        let n = RingInstance::nastasescu_default(Field::Rational);
        let census = regular_census(&n, &n.monomial_window(5)).unwrap();
        let q = quotient_is_trivial(&n, &census).unwrap();
        assert_eq!(q.units, vec!["g^0: 1".replace("g^0", "e")]);
    }

    #[test]
    fn embedding() {
        let n = RingInstance::nastasescu_default(Field::Rational);
        let target = nastasescu_target(&n).unwrap();
        let x = n.monomial(Mono::new(0, 1), Field::Rational.one());
        let a = n.add(&x, &n.scalar(Field::Rational.from_i64(2)));
        let image = nastasescu_embed(&n, &target, &a).unwrap();
        let (f, g) = target.to_laurent_pair(&image).unwrap();
        assert_eq!((f.to_string(), g.to_string()), ("t + 2".to_string(), "2".to_string()));
        let report = nastasescu_embedding_audit(&n, 100, 6, 0).unwrap();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn phi_examples() {
        let r = counterexample();
        let a = r.from_matrix(&[vec![lp(&[0, 1], 0), lp(&[0, 2], 0)], vec![lp(&[0, 3], 0), lp(&[0, 4], 0)]]).unwrap();
        let p = phi_apply(&r, GradedHom { i: 1, j: 1 }, &a).unwrap();
        assert_eq!(r.format_element(&p), "[[1, 2], [0, 0]]");
        let t = r.from_matrix(&[vec![lp(&[0, 1], 0), lp(&[], 0)], vec![lp(&[], 0), lp(&[0, 1], 0)]]).unwrap();
        assert_eq!(r.format_element(&phi_apply(&r, GradedHom { i: 2, j: 2 }, &t).unwrap()), "[[0, 0], [0, 1]]");
        let bad = r.from_matrix(&[vec![lp(&[1, 1], 0), lp(&[], 0)], vec![lp(&[], 0), lp(&[], 0)]]).unwrap();
        assert!(matches!(phi_apply(&r, GradedHom { i: 1, j: 1 }, &bad), Err(Error::NotInIdeal(_))));
        for hom in GradedHom::all() {
            let audit = phi_module_audit(&r, hom, 40, 8, 0).unwrap();
            assert!(audit.passed(), "{audit:?}");
        }
    }
}
