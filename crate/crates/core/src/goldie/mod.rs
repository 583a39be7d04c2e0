//! Homogeneous annihilators, regularity certificates and the regular-element census.

mod chain;
mod construct;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::poly::LaurentPoly;
use crate::ring::{combine, Coords, GradedElement, MatrixBase, RingInstance, RingKind, Window};
use crate::scalar::Scalar;

pub use chain::{descending_chain_report, e_faithful_probe, ChainReport, ChainStep, FaithfulRecord, FaithfulReport};
pub use construct::{
    gr_simplicity_probe, gs_candidate_build, periodic_power_regularize, GSCandidateSet, PeriodicPowerReport, SimplicityRecord,
    SimplicityReport,
};

/// Default cap on the total dimension of an annihilator window.
pub const DEFAULT_WINDOW_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorBasis {
    pub element: GradedElement,
    pub side: Side,
    pub window: Window,
    pub basis: Vec<GradedElement>,
}

fn product(inst: &RingInstance, a: &GradedElement, x: &GradedElement, side: Side) -> GradedElement {
    match side {
        Side::Right => inst.mul(a, x),
        Side::Left => inst.mul(x, a),
    }
}

/// Homogeneous `x` in the window with `a x = 0` (right) or `x a = 0` (left), as a basis.
pub fn annihilator_solve(inst: &RingInstance, a: &GradedElement, side: Side, window: &Window, cap: usize) -> Result<AnnihilatorBasis> {
    let components: Vec<(GroupElement, Vec<Coords>)> = window
        .degrees
        .iter()
        .map(|d| (d.clone(), inst.component_basis_bounded(d, window.coeff_bound)))
        .filter(|(_, b)| !b.is_empty())
        .collect();
    let size: usize = components.iter().map(|(_, b)| b.len()).sum();
    if size > cap {
        return Err(Error::WindowTooLarge { size, cap });
    }
    let mut basis = Vec::new();
    for (deg, comp) in components {
        let images: Vec<Coords> = comp
            .iter()
            .map(|b| product(inst, a, &GradedElement::homogeneous(deg.clone(), b.clone()), side).coords())
            .collect();
        let (matrix, _) = inst.linear_system(&images, &Coords::new());
        for v in matrix.nullspace() {
            basis.push(GradedElement::homogeneous(deg.clone(), combine(&comp, &v)));
        }
    }
    Ok(AnnihilatorBasis { element: a.clone(), side, window: window.clone(), basis })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    GlobalUnit { inverse: GradedElement },
    ZeroDivisor { witness: GradedElement, side: Side },
    /// No zero divisor in the window; `proof` is set when regularity is known globally.
    RegularUpToBound { window: Window, proof: Option<String> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub element: GradedElement,
    pub verdict: Verdict,
}

impl RegularityCertificate {
    pub fn is_unit(&self) -> bool {
        matches!(self.verdict, Verdict::GlobalUnit { .. })
    }

    pub fn is_zero_divisor(&self) -> bool {
        matches!(self.verdict, Verdict::ZeroDivisor { .. })
    }

    /// Unit, or regular with a global proof.
    pub fn is_proven_regular(&self) -> bool {
        matches!(self.verdict, Verdict::GlobalUnit { .. } | Verdict::RegularUpToBound { proof: Some(_), .. })
    }

    /// Re-multiplies the witness or inverse.
    pub fn verify(&self, inst: &RingInstance) -> bool {
        match &self.verdict {
            Verdict::GlobalUnit { inverse } => {
                inst.mul(&self.element, inverse) == inst.one() && inst.mul(inverse, &self.element) == inst.one()
            }
            Verdict::ZeroDivisor { witness, side } => {
                !witness.is_zero() && product(inst, &self.element, witness, *side).is_zero()
            }
            Verdict::RegularUpToBound { .. } => true,
        }
    }

    pub fn to_json(&self, inst: &RingInstance) -> Value {
        let f = |a: &GradedElement| inst.format_element(a);
        let verdict = match &self.verdict {
            Verdict::GlobalUnit { inverse } => json!({"kind": "global_unit", "inverse": f(inverse)}),
            Verdict::ZeroDivisor { witness, side } => json!({"kind": "zero_divisor", "witness": f(witness), "side": side}),
            Verdict::RegularUpToBound { window, proof } => json!({
                "kind": "regular_up_to_bound",
                "window_degrees": window.degrees.len(),
                "coeff_bound": window.coeff_bound,
                "proof": proof,
            }),
        };
        json!({"element": f(&self.element), "verdict": verdict})
    }
}

/// Determinant of a 2x2 matrix-instance element; `None` for other instances.
fn determinant(inst: &RingInstance, a: &GradedElement) -> Option<LaurentPoly> {
    let m = inst.to_matrix(a)?;
    match m.len() {
        1 => Some(m[0][0].clone()),
        2 => Some(m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0]))),
        _ => None,
    }
}

/// A proof that `a` is not a zero divisor anywhere in the ring, when one is available.
fn global_regularity_proof(inst: &RingInstance, a: &GradedElement) -> Option<String> {
    match inst.kind() {
        RingKind::PolyD { .. } => Some("k[t] is an integral domain".into()),
        RingKind::Matrix { base: MatrixBase::PolyD { .. } | MatrixBase::Laurent { .. }, .. } | RingKind::Bazhenov => {
            let det = determinant(inst, a)?;
            (!det.is_zero()).then(|| format!("det = {det} is nonzero over the commutative domain of entries"))
        }
        _ => None,
    }
}

/// Unit, witnessed zero divisor, or regular within the window.
pub fn regularity_certify(inst: &RingInstance, a: &GradedElement, window: &Window) -> Result<RegularityCertificate> {
    a.degree()?;
    inst.check(a)?;
    if let Some(inverse) = inst.unit_inverse(a) {
        return Ok(RegularityCertificate { element: a.clone(), verdict: Verdict::GlobalUnit { inverse } });
    }
    for side in [Side::Right, Side::Left] {
        let ann = annihilator_solve(inst, a, side, window, DEFAULT_WINDOW_CAP)?;
        if let Some(witness) = ann.basis.into_iter().next() {
            return Ok(RegularityCertificate { element: a.clone(), verdict: Verdict::ZeroDivisor { witness, side } });
        }
    }
    let proof = global_regularity_proof(inst, a);
    Ok(RegularityCertificate { element: a.clone(), verdict: Verdict::RegularUpToBound { window: window.clone(), proof } })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShapeClass {
    /// Every element with this support is a unit; `inverse` inverts the representative.
    Unit { representative: GradedElement, inverse: GradedElement },
    /// One cofactor kills every element with this support.
    ZeroDivisor { witness: GradedElement, side: Side },
    /// Regular but not invertible, proven globally.
    RegularNonUnit { representative: GradedElement, proof: String },
    Inconclusive { note: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeRecord {
    pub degree: GroupElement,
    /// Indices into the component basis.
    pub mask: Vec<usize>,
    pub class: ShapeClass,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub instance: String,
    pub window: Window,
    /// Component bases of the nonzero components in the window.
    pub components: Vec<(GroupElement, Vec<GradedElement>)>,
    pub shapes: Vec<ShapeRecord>,
}

impl CensusReport {
    pub fn unit_shapes(&self) -> impl Iterator<Item = &ShapeRecord> {
        self.shapes.iter().filter(|s| matches!(s.class, ShapeClass::Unit { .. }))
    }

    pub fn count(&self, pred: impl Fn(&ShapeClass) -> bool) -> usize {
        self.shapes.iter().filter(|s| pred(&s.class)).count()
    }

    pub fn zero_divisor_shapes(&self) -> usize {
        self.count(|c| matches!(c, ShapeClass::ZeroDivisor { .. }))
    }

    pub fn regular_shapes(&self) -> usize {
        self.count(|c| matches!(c, ShapeClass::Unit { .. } | ShapeClass::RegularNonUnit { .. }))
    }

    pub fn inconclusive_shapes(&self) -> usize {
        self.count(|c| matches!(c, ShapeClass::Inconclusive { .. }))
    }

    /// Every shape is a unit or a witnessed zero divisor.
    pub fn all_unit_or_zero_divisor(&self) -> bool {
        self.shapes.iter().all(|s| matches!(s.class, ShapeClass::Unit { .. } | ShapeClass::ZeroDivisor { .. }))
    }

    /// Degrees carrying a unit shape.
    pub fn unit_degrees(&self) -> Vec<GroupElement> {
        let mut v: Vec<GroupElement> = self.unit_shapes().map(|s| s.degree.clone()).collect();
        v.dedup();
        v
    }

    /// All shapes classified, and the homogeneous regular elements are exactly
    /// the units of `R_e`, which is spanned by scalar (diagonal) constants.
    pub fn regulars_are_scalar_units_at_identity(&self, inst: &RingInstance) -> bool {
        let e = inst.group().identity();
        self.all_unit_or_zero_divisor()
            && self.unit_shapes().all(|s| s.degree == e)
            && self.components.iter().filter(|(d, _)| *d == e).all(|(_, basis)| {
                basis.iter().all(|b| b.coords().keys().all(|m| m.exp == 0 && is_diagonal_slot(inst, m.slot)))
            })
    }

    pub fn to_json(&self, inst: &RingInstance) -> Value {
        let g = inst.group();
        let f = |a: &GradedElement| inst.format_element(a);
        let components: BTreeMap<String, Vec<String>> =
            self.components.iter().map(|(d, b)| (g.format(d), b.iter().map(f).collect())).collect();
        let shapes: Vec<Value> = self
            .shapes
            .iter()
            .map(|s| {
                let class = match &s.class {
                    ShapeClass::Unit { representative, inverse } => {
                        json!({"kind": "unit", "representative": f(representative), "inverse": f(inverse)})
                    }
                    ShapeClass::ZeroDivisor { witness, side } => json!({"kind": "zero_divisor", "witness": f(witness), "side": side}),
                    ShapeClass::RegularNonUnit { representative, proof } => {
                        json!({"kind": "regular_non_unit", "representative": f(representative), "proof": proof})
                    }
                    ShapeClass::Inconclusive { note } => json!({"kind": "inconclusive", "note": note}),
                };
                json!({"degree": g.format(&s.degree), "mask": s.mask, "class": class})
            })
            .collect();
        json!({
            "instance": self.instance,
            "window_degrees": self.window.degrees.len(),
            "coeff_bound": self.window.coeff_bound,
            "components": components,
            "shapes": shapes,
            "summary": {
                "shapes": self.shapes.len(),
                "regular": self.regular_shapes(),
                "zero_divisor": self.zero_divisor_shapes(),
                "inconclusive": self.inconclusive_shapes(),
                "unit_degrees": self.unit_degrees().iter().map(|d| g.format(d)).collect::<Vec<_>>(),
            },
        })
    }
}

fn is_diagonal_slot(inst: &RingInstance, slot: u8) -> bool {
    match inst.to_matrix(&inst.zero()) {
        Some(m) => {
            let n = m.len() as u8;
            slot / n == slot % n
        }
        None => true,
    }
}

/// Largest component dimension the census expands into support shapes.
const MAX_SHAPE_DIM: usize = 12;

/// Classifies every support shape of every component in the window.
pub fn regular_census(inst: &RingInstance, window: &Window) -> Result<CensusReport> {
    let components: Vec<(GroupElement, Vec<GradedElement>)> = window
        .degrees
        .iter()
        .map(|d| {
            let basis = inst.component_basis_bounded(d, window.coeff_bound);
            (d.clone(), basis.into_iter().map(|c| GradedElement::homogeneous(d.clone(), c)).collect::<Vec<_>>())
        })
        .filter(|(_, b)| !b.is_empty())
        .collect();
    if let Some((_, b)) = components.iter().find(|(_, b)| b.len() > MAX_SHAPE_DIM) {
        return Err(Error::WindowTooLarge { size: b.len(), cap: MAX_SHAPE_DIM });
    }
    let candidates: Vec<&GradedElement> = components.iter().flat_map(|(_, b)| b.iter()).collect();
    let mut shapes = Vec::new();
    for (deg, basis) in &components {
        // kills[i][c] = (basis[i] * cand[c] == 0, cand[c] * basis[i] == 0)
        let kills: Vec<Vec<(bool, bool)>> = basis
            .iter()
            .map(|b| candidates.iter().map(|c| (inst.mul(b, c).is_zero(), inst.mul(c, b).is_zero())).collect())
            .collect();
        for bits in 1u32..(1 << basis.len()) {
            let mask: Vec<usize> = (0..basis.len()).filter(|i| bits & (1 << i) != 0).collect();
            let class = classify_shape(inst, window, basis, &mask, &candidates, &kills);
            shapes.push(ShapeRecord { degree: deg.clone(), mask, class });
        }
    }
    Ok(CensusReport { instance: inst.name(), window: window.clone(), components, shapes })
}

fn classify_shape(
    inst: &RingInstance,
    window: &Window,
    basis: &[GradedElement],
    mask: &[usize],
    candidates: &[&GradedElement],
    kills: &[Vec<(bool, bool)>],
) -> ShapeClass {
    for (side, pick) in [(Side::Right, 0usize), (Side::Left, 1)] {
        let hit = (0..candidates.len()).find(|&c| mask.iter().all(|&i| if pick == 0 { kills[i][c].0 } else { kills[i][c].1 }));
        if let Some(c) = hit {
            return ShapeClass::ZeroDivisor { witness: candidates[c].clone(), side };
        }
    }
    let representative = masked_sum(inst, basis, mask, |_| inst.field().one());
    if coefficient_independent(inst, basis, mask) {
        return match inst.unit_inverse(&representative) {
            Some(inverse) => ShapeClass::Unit { representative, inverse },
            None => match regularity_certify(inst, &representative, window) {
                Ok(RegularityCertificate { verdict: Verdict::ZeroDivisor { .. }, .. }) => ShapeClass::Inconclusive {
                    note: "representative is a zero divisor but no single cofactor covers the shape".into(),
                },
                Ok(RegularityCertificate { verdict: Verdict::RegularUpToBound { proof: Some(proof), .. }, .. }) => {
                    ShapeClass::RegularNonUnit { representative, proof }
                }
                _ => ShapeClass::Inconclusive { note: "not a unit, no zero-divisor witness within the window".into() },
            },
        };
    }
    ShapeClass::Inconclusive { note: "unit status depends on the coefficients".into() }
}

fn masked_sum(inst: &RingInstance, basis: &[GradedElement], mask: &[usize], coeff: impl Fn(usize) -> Scalar) -> GradedElement {
    mask.iter().fold(inst.zero(), |acc, &i| inst.add(&acc, &inst.scale(&coeff(i), &basis[i])))
}

/// Whether invertibility of `sum c_i b_i` (all `c_i` nonzero) is independent of the `c_i`.
fn coefficient_independent(inst: &RingInstance, basis: &[GradedElement], mask: &[usize]) -> bool {
    if mask.len() == 1 {
        return true;
    }
    match inst.kind() {
        RingKind::DirectSumLaurent { .. } => true,
        _ if inst.is_matrix() => {
            // With at most one permutation supported the determinant is a single signed monomial.
            let n = inst.to_matrix(&inst.zero()).map(|m| m.len()).unwrap_or(0);
            let mut cells = vec![false; n * n];
            for &i in mask {
                for m in basis[i].coords().keys() {
                    cells[m.slot as usize] = true;
                }
            }
            supported_permutations(n, &cells) <= 1
        }
        _ => false,
    }
}

fn supported_permutations(n: usize, cells: &[bool]) -> usize {
    fn go(row: usize, n: usize, used: &mut Vec<bool>, cells: &[bool]) -> usize {
        if row == n {
            return 1;
        }
        let mut total = 0;
        for col in 0..n {
            if !used[col] && cells[row * n + col] {
                used[col] = true;
                total += go(row + 1, n, used, cells);
                used[col] = false;
            }
        }
        total
    }
    go(0, n, &mut vec![false; n], cells)
}

/// Checks the span of `xs` equals the span of `ys` (as coordinate vectors).
pub(crate) fn same_span(inst: &RingInstance, xs: &[GradedElement], ys: &[GradedElement]) -> bool {
    let rank = |v: &[GradedElement]| -> usize {
        let coords: Vec<Coords> = v.iter().map(|x| x.coords()).collect();
        inst.linear_system(&coords, &Coords::new()).0.rank()
    };
    let mut all = xs.to_vec();
    all.extend_from_slice(ys);
    let r = rank(&all);
    r == rank(xs) && r == rank(ys)
}


#[cfg(test)]
mod tests;
