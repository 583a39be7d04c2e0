//! Descending chains of principal right ideals and the e-faithfulness probe.

use serde_json::{json, Value};

use crate::error::Result;
use crate::group::GroupElement;
use crate::ring::{Coords, GradedElement, MatrixBase, RingInstance, RingKind, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    pub i: usize,
    /// `a^(i+1) = a^i * a` was re-multiplied exactly.
    pub inclusion_checked: bool,
    /// `Some(true)`: `a^i` is not in `a^(i+1) R` (proven); `Some(false)`: it is; `None`: not found in the window.
    pub strict: Option<bool>,
    pub method: String,
    /// `r` with `a^(i+1) r = a^i`, when the ideals coincide.
    pub witness: Option<GradedElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub generator: GradedElement,
    pub steps: Vec<ChainStep>,
}

impl ChainReport {
    pub fn strictly_descending(&self) -> bool {
        self.steps.iter().all(|s| s.inclusion_checked && s.strict == Some(true))
    }

    /// First `i` with `a^i R = a^(i+1) R`.
    pub fn stabilized_at(&self) -> Option<usize> {
        self.steps.iter().find(|s| s.strict == Some(false)).map(|s| s.i)
    }

    pub fn to_json(&self, inst: &RingInstance) -> Value {
        json!({
            "generator": inst.format_element(&self.generator),
            "strictly_descending": self.strictly_descending(),
            "stabilized_at": self.stabilized_at(),
            "steps": self.steps.iter().map(|s| json!({
                "i": s.i,
                "inclusion_checked": s.inclusion_checked,
                "strict": s.strict,
                "method": s.method,
                "witness": s.witness.as_ref().map(|w| inst.format_element(w)),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Finds `r` in the span of the given components with `b r = target`.
fn solve_right(inst: &RingInstance, b: &GradedElement, target: &GradedElement, comps: &[(GroupElement, Vec<Coords>)]) -> Option<GradedElement> {
    let basis: Vec<GradedElement> =
        comps.iter().flat_map(|(d, cs)| cs.iter().map(|c| GradedElement::homogeneous(d.clone(), c.clone()))).collect();
    let images: Vec<Coords> = basis.iter().map(|x| inst.mul(b, x).coords()).collect();
    let coeffs = inst.express_in_basis(&images, &target.coords())?;
    let r = basis.iter().zip(&coeffs).fold(inst.zero(), |acc, (x, c)| inst.add(&acc, &inst.scale(c, x)));
    (inst.mul(b, &r) == *target).then_some(r)
}

/// Smallest `t`-adic valuation over the entries of a matrix-instance element.
fn min_valuation(inst: &RingInstance, a: &GradedElement) -> Option<i64> {
    let m = inst.to_matrix(a)?;
    m.iter().flatten().filter(|p| !p.is_zero()).map(|p| p.valuation()).min()
}

fn polynomial_entries(inst: &RingInstance) -> bool {
    matches!(inst.kind(), RingKind::Matrix { base: MatrixBase::PolyD { .. }, .. } | RingKind::Bazhenov)
}

/// For `i = 1..=n`, checks `a^(i+1) R` inside `a^i R` and decides whether `a^i` lies in `a^(i+1) R`.
pub fn descending_chain_report(inst: &RingInstance, a: &GradedElement, n: usize, window: &Window) -> Result<ChainReport> {
    inst.check(a)?;
    let g = inst.group();
    let mut steps = Vec::new();
    let mut ai = a.clone();
    for i in 1..=n {
        let next = inst.mul(&ai, a);
        let inclusion_checked = inst.mul(a, &ai) == next;
        let step = if ai.is_zero() {
            ChainStep { i, inclusion_checked, strict: Some(false), method: "a^i = 0".into(), witness: Some(inst.zero()) }
        } else if let Ok(sigma) = a.degree() {
            // Graded: a^i = a^(i+1) r forces r into R_(deg a)^-1.
            let inv = g.inverse(sigma);
            let comps = vec![(inv.clone(), inst.component_basis(&inv))];
            let witness = solve_right(inst, &next, &ai, &comps);
            ChainStep { i, inclusion_checked, strict: Some(witness.is_none()), method: "exact solve in R_(deg a)^-1".into(), witness }
        } else if let RingKind::GroupAlgebra { .. } = inst.kind() {
            let comps: Vec<(GroupElement, Vec<Coords>)> =
                g.elements().unwrap_or_default().into_iter().map(|d| { let b = inst.component_basis(&d); (d, b) }).collect();
            let witness = solve_right(inst, &next, &ai, &comps);
            ChainStep { i, inclusion_checked, strict: Some(witness.is_none()), method: "exact solve over all of R".into(), witness }
        } else {
            match (polynomial_entries(inst), min_valuation(inst, &ai), min_valuation(inst, &next)) {
                (true, Some(v), Some(w)) if v < w => ChainStep {
                    i,
                    inclusion_checked,
                    strict: Some(true),
                    method: format!("entries of a^(i+1) R have t-valuation >= {w} > {v}"),
                    witness: None,
                },
                _ => {
                    let comps: Vec<(GroupElement, Vec<Coords>)> = window
                        .degrees
                        .iter()
                        .map(|d| (d.clone(), inst.component_basis_bounded(d, window.coeff_bound)))
                        .collect();
                    let witness = solve_right(inst, &next, &ai, &comps);
                    let strict = if witness.is_some() { Some(false) } else { None };
                    ChainStep { i, inclusion_checked, strict, method: "window solve".into(), witness }
                }
            }
        };
        steps.push(step);
        ai = next;
    }
    Ok(ChainReport { generator: a.clone(), steps })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulRecord {
    pub degree: GroupElement,
    pub r: GradedElement,
    /// `r'` of the inverse degree with `r r' != 0`; `None` proves none exists.
    pub witness: Option<GradedElement>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulReport {
    pub records: Vec<FaithfulRecord>,
}

impl FaithfulReport {
    pub fn failures(&self) -> impl Iterator<Item = &FaithfulRecord> {
        self.records.iter().filter(|r| r.witness.is_none())
    }

    pub fn is_faithful(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_json(&self, inst: &RingInstance) -> Value {
        let g = inst.group();
        json!({
            "records": self.records.len(),
            "faithful_in_window": self.is_faithful(),
            "failures": self.failures().map(|r| json!({
                "degree": g.format(&r.degree),
                "r": inst.format_element(&r.r),
                "inverse_component": inst
                    .component_basis(&g.inverse(&r.degree))
                    .into_iter()
                    .map(|c| inst.format_element(&GradedElement::homogeneous(g.inverse(&r.degree), c)))
                    .collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// For each basis element `r` of each window component, looks for `r'` in `R_(deg r)^-1` with `r r' != 0`.
/// The whole inverse component is searched, so a missing witness is exact.
pub fn e_faithful_probe(inst: &RingInstance, window: &Window) -> FaithfulReport {
    let g = inst.group();
    let mut records = Vec::new();
    for d in &window.degrees {
        let inv = g.inverse(d);
        let partners = inst.component_basis(&inv);
        for c in inst.component_basis_bounded(d, window.coeff_bound) {
            let r = GradedElement::homogeneous(d.clone(), c);
            let witness = partners
                .iter()
                .map(|p| GradedElement::homogeneous(inv.clone(), p.clone()))
                .find(|p| !inst.mul(&r, p).is_zero());
            records.push(FaithfulRecord { degree: d.clone(), r, witness });
        }
    }
    FaithfulReport { records }
}

