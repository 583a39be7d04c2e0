//! Witness searches and audits for the commutation conditions on a group.
//!
//! Condition (2) asks for `n >= 1` with `g h^n = h^n g`; condition (2)' asks for
//! `m, n >= 1` with `g h^m = h^n g`. Searches are bounded; for `D_inf` and
//! `BS(1,2)` a closed-form certificate upgrades "not found" to "proven absent".

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{Group, GroupElement, RestrictedElement};

/// Closed-form proof that a bounded search can never succeed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralCertificate {
    pub claim: String,
    pub argument: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome<W> {
    Found(W),
    /// Nothing within `bound`. Inconclusive unless a certificate is attached.
    ExhaustedBound { bound: Vec<u64>, certificate: Option<StructuralCertificate> },
    ViolationFound(W),
}

impl<W> SearchOutcome<W> {
    pub fn found(&self) -> Option<&W> {
        match self {
            SearchOutcome::Found(w) => Some(w),
            _ => None,
        }
    }

    pub fn violation(&self) -> Option<&W> {
        match self {
            SearchOutcome::ViolationFound(w) => Some(w),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::ExhaustedBound { .. })
    }

    pub fn certificate(&self) -> Option<&StructuralCertificate> {
        match self {
            SearchOutcome::ExhaustedBound { certificate, .. } => certificate.as_ref(),
            _ => None,
        }
    }

    pub fn to_json(&self, witness: impl Fn(&W) -> Value) -> Value {
        match self {
            SearchOutcome::Found(w) => json!({"kind": "found", "witness": witness(w)}),
            SearchOutcome::ViolationFound(w) => json!({"kind": "violation_found", "witness": witness(w)}),
            SearchOutcome::ExhaustedBound { bound, certificate } => {
                json!({"kind": "exhausted_bound", "bound": bound, "certificate": certificate})
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cond2Witness {
    pub g: GroupElement,
    pub h: GroupElement,
    pub n: u64,
}

impl Cond2Witness {
    pub fn verify(&self, group: &Group) -> bool {
        group.commutes(&self.g, &group.pow(&self.h, self.n as i64))
    }

    pub fn to_json(&self, group: &Group) -> Value {
        json!({"g": group.format(&self.g), "h": group.format(&self.h), "n": self.n})
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cond2PrimeWitness {
    pub g: GroupElement,
    pub h: GroupElement,
    pub m: u64,
    pub n: u64,
}

impl Cond2PrimeWitness {
    /// `g h^m = h^n g`.
    pub fn verify(&self, group: &Group) -> bool {
        let lhs = group.mul(&self.g, &group.pow(&self.h, self.m as i64));
        let rhs = group.mul(&group.pow(&self.h, self.n as i64), &self.g);
        lhs == rhs
    }

    pub fn to_json(&self, group: &Group) -> Value {
        json!({"g": group.format(&self.g), "h": group.format(&self.h), "m": self.m, "n": self.n})
    }
}

/// A pair `(k, l)` with `h^k = g h^l g^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionViolation {
    pub k: u64,
    pub l: u64,
}

/// Minimal `n <= n_max` with `g h^n = h^n g`.
pub fn cond2_witness(group: &Group, g: &GroupElement, h: &GroupElement, n_max: u64) -> Result<SearchOutcome<Cond2Witness>> {
    group.multiply(g, h)?;
    let mut hn = group.identity();
    for n in 1..=n_max {
        hn = group.mul(&hn, h);
        if group.commutes(g, &hn) {
            let w = Cond2Witness { g: g.clone(), h: h.clone(), n };
            debug_assert!(w.verify(group));
            return Ok(SearchOutcome::Found(w));
        }
    }
    Ok(SearchOutcome::ExhaustedBound { bound: vec![n_max], certificate: commuting_certificate(group, g, h) })
}

/// Lexicographically minimal `(m, n)` with `g h^m = h^n g`.
pub fn cond2prime_witness(
    group: &Group,
    g: &GroupElement,
    h: &GroupElement,
    m_max: u64,
    n_max: u64,
) -> Result<SearchOutcome<Cond2PrimeWitness>> {
    group.multiply(g, h)?;
    let powers = power_index(group, h, n_max);
    let mut hm = group.identity();
    for m in 1..=m_max {
        hm = group.mul(&hm, h);
        if let Some(&n) = powers.get(&group.conjugate(&hm, g)) {
            return Ok(SearchOutcome::Found(Cond2PrimeWitness { g: g.clone(), h: h.clone(), m, n }));
        }
    }
    Ok(SearchOutcome::ExhaustedBound { bound: vec![m_max, n_max], certificate: conjugate_power_certificate(group, g, h) })
}

/// Searches `(k, l)` with `h^k = g h^l g^-1`; `ExhaustedBound` means the obstruction holds in range.
pub fn conjugate_power_obstruction(
    group: &Group,
    g: &GroupElement,
    h: &GroupElement,
    k_max: u64,
    l_max: u64,
) -> Result<SearchOutcome<ObstructionViolation>> {
    group.multiply(g, h)?;
    let conj: HashMap<GroupElement, u64> = {
        let mut map = HashMap::new();
        let mut hl = group.identity();
        for l in 1..=l_max {
            hl = group.mul(&hl, h);
            map.entry(group.conjugate(&hl, g)).or_insert(l);
        }
        map
    };
    let mut hk = group.identity();
    for k in 1..=k_max {
        hk = group.mul(&hk, h);
        if let Some(&l) = conj.get(&hk) {
            return Ok(SearchOutcome::ViolationFound(ObstructionViolation { k, l }));
        }
    }
    Ok(SearchOutcome::ExhaustedBound { bound: vec![k_max, l_max], certificate: conjugate_power_certificate(group, g, h) })
}

fn power_index(group: &Group, h: &GroupElement, n_max: u64) -> HashMap<GroupElement, u64> {
    let mut map = HashMap::new();
    let mut hn = group.identity();
    for n in 1..=n_max {
        hn = group.mul(&hn, h);
        map.entry(hn.clone()).or_insert(n);
    }
    map
}

/// Proof that `g` commutes with no positive power of `h`.
fn commuting_certificate(group: &Group, g: &GroupElement, h: &GroupElement) -> Option<StructuralCertificate> {
    match (group, g, h) {
        (Group::InfiniteDihedral, GroupElement::Dihedral { flip: true, .. }, GroupElement::Dihedral { k, flip: false })
            if *k != 0 =>
        {
            Some(StructuralCertificate {
                claim: format!("g h^n != h^n g for every n >= 1 (h = r^{k})"),
                argument: format!("g is a reflection, so g h^n g^-1 = r^{} while h^n = r^{}; these differ for n >= 1", -k, k),
            })
        }
        (Group::BaumslagSolitar, GroupElement::Affine(gm), GroupElement::Affine(hm)) if !hm.is_identity() => {
            let (lhs, rhs) = bs_commutation_sides(gm, hm);
            (lhs != rhs).then(|| StructuralCertificate {
                claim: "g h^n != h^n g for every n >= 1".into(),
                argument: format!(
                    "for x -> 2^p x + q, g commutes with h^n (n >= 1) iff q_h (2^p_g - 1) = q_g (2^p_h - 1), \
                     independent of n; here {lhs} != {rhs}"
                ),
            })
        }
        _ => None,
    }
}

fn bs_commutation_sides(g: &crate::group::AffineMap, h: &crate::group::AffineMap) -> (crate::group::Dyadic, crate::group::Dyadic) {
    let lhs = h.shift.shl(g.log2_scale).sub(&h.shift);
    let rhs = g.shift.shl(h.log2_scale).sub(&g.shift);
    (lhs, rhs)
}

/// Proof that `g h^m g^-1 = h^n` has no solution with `m, n >= 1`.
fn conjugate_power_certificate(group: &Group, g: &GroupElement, h: &GroupElement) -> Option<StructuralCertificate> {
    match (group, g, h) {
        (Group::InfiniteDihedral, GroupElement::Dihedral { flip: true, .. }, GroupElement::Dihedral { k, flip: false })
            if *k != 0 =>
        {
            Some(StructuralCertificate {
                claim: "h^k != g h^l g^-1 for all k, l >= 1".into(),
                argument: format!("g h^l g^-1 = r^{} * l while h^k = r^{k} * k; signs differ for k, l >= 1", -k),
            })
        }
        (Group::BaumslagSolitar, GroupElement::Affine(gm), GroupElement::Affine(hm)) if hm.log2_scale != 0 => {
            let (lhs, rhs) = bs_commutation_sides(gm, hm);
            (lhs != rhs).then(|| StructuralCertificate {
                claim: "h^k != g h^l g^-1 for all k, l >= 1".into(),
                argument: format!(
                    "scales 2^(p_h k) and 2^(p_h l) force k = l; g then commutes with h^l, which holds iff \
                     q_h (2^p_g - 1) = q_g (2^p_h - 1) independently of l; here {lhs} != {rhs}"
                ),
            })
        }
        _ => None,
    }
}

/// Exponent `2 * prod (2 j + 1)` over the reflection coordinates `j` of `g`.
///
/// Returns 2 when `g` has no reflections.
pub fn klyachko_exponent(g: &RestrictedElement) -> u64 {
    g.flip_positions().iter().fold(2u64, |acc, &j| acc.checked_mul(2 * j as u64 + 1).expect("exponent fits u64"))
}

/// Checks `g h^n = h^n g` for `n = klyachko_exponent(g)`.
pub fn klyachko_verify(g: &RestrictedElement, h: &RestrictedElement) -> bool {
    let n = klyachko_exponent(g) as i64;
    let group = Group::RestrictedDihedral;
    let g = GroupElement::Restricted(g.clone());
    let hn = group.pow(&GroupElement::Restricted(h.clone()), n);
    group.commutes(&g, &hn)
}

/// An element of the restricted product not commuting with `g`; `None` only for `g = e`.
pub fn noncommuting_partner(g: &RestrictedElement) -> Option<RestrictedElement> {
    if g.is_identity() {
        return None;
    }
    let group = Group::RestrictedDihedral;
    let ge = GroupElement::Restricted(g.clone());
    let last = g.exceptions().keys().next_back().copied().unwrap_or(0);
    // A nonzero tail c is a nontrivial rotation at any coordinate with 2i+1 > |c|.
    let reach = last.max(g.tail().unsigned_abs() as u32) + 1;
    for i in 1..=reach {
        for cand in [RestrictedElement::flip_at(i), RestrictedElement::rotation_at(i)] {
            if !group.commutes(&ge, &GroupElement::Restricted(cand.clone())) {
                return Some(cand);
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarStep {
    pub d: u32,
    pub lhs: GroupElement,
    pub rhs: GroupElement,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarReport {
    pub steps: Vec<StarStep>,
    pub first_failure: Option<u32>,
}

impl StarReport {
    pub fn all_pass(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn to_json(&self, group: &Group) -> Value {
        json!({
            "steps": self.steps.iter().map(|s| json!({
                "d": s.d, "lhs": group.format(&s.lhs), "rhs": group.format(&s.rhs), "holds": s.holds
            })).collect::<Vec<_>>(),
            "first_failure": self.first_failure,
        })
    }
}

fn checked_power(base: u64, exp: u32) -> Result<i64> {
    base.checked_pow(exp)
        .and_then(|v| i64::try_from(v).ok())
        .ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

/// Checks `g^d h^(m^d) g^-d = h^(n^d)` for `d = 1..=d_max`, given `g h^m g^-1 = h^n`.
pub fn star_induction_check(group: &Group, g: &GroupElement, h: &GroupElement, m: u64, n: u64, d_max: u32) -> Result<StarReport> {
    group.multiply(g, h)?;
    let premise_l = group.conjugate(&group.pow(h, m as i64), g);
    let premise_r = group.pow(h, n as i64);
    if premise_l != premise_r {
        return Err(Error::PremiseViolated(format!(
            "g h^{m} g^-1 = {} but h^{n} = {}",
            group.format(&premise_l),
            group.format(&premise_r)
        )));
    }
    let mut steps = Vec::new();
    let mut first_failure = None;
    for d in 1..=d_max {
        let gd = group.pow(g, d as i64);
        let lhs = group.conjugate(&group.pow(h, checked_power(m, d)?), &gd);
        let rhs = group.pow(h, checked_power(n, d)?);
        let holds = lhs == rhs;
        if !holds && first_failure.is_none() {
            first_failure = Some(d);
        }
        steps.push(StarStep { d, lhs, rhs, holds });
    }
    Ok(StarReport { steps, first_failure })
}

/// One displayed equality of the `m = n` argument, checked exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseEquality {
    pub statement: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseAnalysisReport {
    pub case: String,
    pub equalities: Vec<CaseEquality>,
    /// The exponent identity the argument reduces to, e.g. `h^(m^k) = h^(n^k)`.
    pub reduced_identity: CaseEquality,
    /// `Some(m == n)` when `h` has structurally infinite order, so exponents can be compared.
    pub concludes_m_eq_n: Option<bool>,
}

/// Instance check of the argument deriving `m = n` from
/// `h g^k h^-1 = g^l` and `g h^m g^-1 = h^n`, covering `k = l`, `k > l`, `k < l`.
pub fn star_case_analysis(group: &Group, g: &GroupElement, h: &GroupElement, k: u32, l: u32, m: u64, n: u64) -> Result<CaseAnalysisReport> {
    group.multiply(g, h)?;
    let pw = |x: &GroupElement, e: i64| group.pow(x, e);
    if group.conjugate(&pw(g, k as i64), h) != pw(g, l as i64) {
        return Err(Error::PremiseViolated(format!("h g^{k} h^-1 != g^{l}")));
    }
    if group.conjugate(&pw(h, m as i64), g) != pw(h, n as i64) {
        return Err(Error::PremiseViolated(format!("g h^{m} g^-1 != h^{n}")));
    }
    let eq = |statement: String, a: GroupElement, b: GroupElement| CaseEquality { statement, holds: a == b };
    let star = |d: u32| -> Result<(GroupElement, GroupElement)> {
        let gd = pw(g, d as i64);
        Ok((group.conjugate(&pw(h, checked_power(m, d)?), &gd), pw(h, checked_power(n, d)?)))
    };
    let mut equalities = Vec::new();
    let (case, reduced, lhs_exp, rhs_exp) = if k == l {
        let (a, b) = star(k)?;
        equalities.push(eq(format!("g^{k} h^(m^{k}) g^-{k} = h^(n^{k})"), a, b));
        equalities.push(eq(format!("h g^{k} = g^{k} h"), group.mul(h, &pw(g, k as i64)), group.mul(&pw(g, k as i64), h)));
        let mk = checked_power(m, k)?;
        let nk = checked_power(n, k)?;
        ("k = l".to_string(), eq(format!("h^(m^{k}) = h^(n^{k})"), pw(h, mk), pw(h, nk)), mk, nk)
    } else {
        // (big, small) plays (k, l) of the k > l case; k < l swaps roles via conjugation by h.
        let (big, small) = (k.max(l), k.min(l));
        let diff = big - small;
        let (a, b) = star(big)?;
        equalities.push(eq(format!("g^{big} h^(m^{big}) g^-{big} = h^(n^{big})"), a.clone(), b.clone()));
        let g_small = pw(g, small as i64);
        let mixed = checked_power(m, small)?
            .checked_mul(checked_power(n, diff)?)
            .ok_or_else(|| Error::Overflow("m^l n^(k-l)".into()))?;
        let via_small = group.conjugate(&pw(h, mixed), &g_small);
        equalities.push(eq(
            format!("h^(n^{big}) = g^{small} h^(m^{small} n^{diff}) g^-{small}"),
            pw(h, checked_power(n, big)?),
            via_small,
        ));
        let m_big = checked_power(m, big)?;
        let substituted = group.conjugate(&pw(h, m_big), &g_small);
        equalities.push(eq(format!("g^{big} h^(m^{big}) g^-{big} = g^{small} h^(m^{big}) g^-{small}"), a, substituted));
        let case = if k > l { "k > l" } else { "k < l" };
        (case.to_string(), eq(format!("h^(m^{big}) = h^(m^{small} n^{diff})"), pw(h, m_big), pw(h, mixed)), m_big, mixed)
    };
    let concludes_m_eq_n = group.element_order(h, 1).is_structurally_infinite().then_some({
        // h of infinite order: h^a = h^b forces a = b, and a = b forces m = n.
        reduced.holds && lhs_exp == rhs_exp && m == n
    });
    Ok(CaseAnalysisReport { case, equalities, reduced_identity: reduced, concludes_m_eq_n })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupAnalysis {
    pub order: usize,
    pub commutator_subgroup: Vec<GroupElement>,
    pub center: Vec<GroupElement>,
    pub centralizers: Vec<(GroupElement, Vec<GroupElement>)>,
    /// `Cent(G')`, the intersection of the centralizers of elements of `G'`.
    pub centralizer_of_commutator: Vec<GroupElement>,
    pub k: usize,
    pub index_cent_gprime: usize,
    /// `k^(k-1)`.
    pub index_bound: BigUint,
    pub index_bound_holds: bool,
    pub exponent: u64,
}

impl FiniteGroupAnalysis {
    pub fn to_json(&self, group: &Group) -> Value {
        let f = |v: &[GroupElement]| v.iter().map(|x| group.format(x)).collect::<Vec<_>>();
        json!({
            "order": self.order,
            "commutator_subgroup": f(&self.commutator_subgroup),
            "center": f(&self.center),
            "centralizer_of_commutator": f(&self.centralizer_of_commutator),
            "k": self.k,
            "index_cent_gprime": self.index_cent_gprime,
            "index_bound": self.index_bound.to_string(),
            "index_bound_holds": self.index_bound_holds,
            "exponent": self.exponent,
        })
    }
}

fn finite_elements(group: &Group) -> Result<Vec<GroupElement>> {
    group.elements().ok_or_else(|| Error::InvalidInstance(format!("{} is not a finite group", group.name())))
}

fn element_orders(group: &Group, elements: &[GroupElement]) -> Vec<u64> {
    let bound = elements.len() as u64;
    elements.iter().map(|x| group.element_order(x, bound).finite().expect("finite group element")).collect()
}

/// Commutator subgroup, center, centralizers and exponent of a finite group.
pub fn finite_group_analysis(group: &Group) -> Result<FiniteGroupAnalysis> {
    let elements = finite_elements(group)?;
    let centralizer = |x: &GroupElement| -> Vec<GroupElement> {
        elements.iter().filter(|y| group.commutes(x, y)).cloned().collect()
    };
    let mut gprime = vec![group.identity()];
    for x in &elements {
        for y in &elements {
            let c = group.mul(&group.mul(x, y), &group.mul(&group.inverse(x), &group.inverse(y)));
            if !gprime.contains(&c) {
                gprime.push(c);
            }
        }
    }
    // close under products (finite, so closure under products suffices)
    let mut i = 0;
    while i < gprime.len() {
        for j in 0..gprime.len() {
            let p = group.mul(&gprime[i], &gprime[j]);
            if !gprime.contains(&p) {
                gprime.push(p);
            }
        }
        i += 1;
    }
    gprime.sort();
    let centralizers: Vec<(GroupElement, Vec<GroupElement>)> = elements.iter().map(|x| (x.clone(), centralizer(x))).collect();
    let center: Vec<GroupElement> =
        elements.iter().filter(|x| elements.iter().all(|y| group.commutes(x, y))).cloned().collect();
    let cent_gprime: Vec<GroupElement> =
        elements.iter().filter(|y| gprime.iter().all(|x| group.commutes(x, y))).cloned().collect();
    let k = gprime.len();
    let index = elements.len() / cent_gprime.len();
    let index_bound = BigUint::from(k).pow(k as u32 - 1);
    let exponent = element_orders(group, &elements).into_iter().fold(1u64, num_integer::lcm);
    Ok(FiniteGroupAnalysis {
        order: elements.len(),
        commutator_subgroup: gprime,
        center,
        centralizers,
        centralizer_of_commutator: cent_gprime,
        k,
        index_cent_gprime: index,
        index_bound_holds: BigUint::from(index) <= index_bound,
        index_bound,
        exponent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remark1Audit {
    pub k: usize,
    /// `k^k`.
    pub n_claimed: BigUint,
    pub holds_uniformly: bool,
    pub counterexample_pair: Option<(GroupElement, GroupElement)>,
    /// Least `n` with `h^n` central for every `h`.
    pub minimal_uniform_n: u64,
    pub pairs_checked: usize,
}

impl Remark1Audit {
    pub fn to_json(&self, group: &Group) -> Value {
        json!({
            "k": self.k,
            "n_claimed": self.n_claimed.to_string(),
            "holds_uniformly": self.holds_uniformly,
            "counterexample_pair": self.counterexample_pair.as_ref().map(|(g, h)| json!({"g": group.format(g), "h": group.format(h)})),
            "minimal_uniform_n": self.minimal_uniform_n,
            "pairs_checked": self.pairs_checked,
        })
    }
}

/// Tests `g h^(k^k) = h^(k^k) g` over all pairs, `k = |G'|`.
pub fn remark1_bound_audit(group: &Group) -> Result<Remark1Audit> {
    let analysis = finite_group_analysis(group)?;
    let elements = finite_elements(group)?;
    let orders = element_orders(group, &elements);
    let k = analysis.k as u64;
    let n_claimed = BigUint::from(k).pow(k as u32);
    // h^(k^k) = h^(k^k mod O(h))
    let powered: Vec<GroupElement> = elements
        .iter()
        .zip(&orders)
        .map(|(h, &o)| {
            let e = BigUint::from(k).modpow(&BigUint::from(k), &BigUint::from(o));
            group.pow(h, e.to_i64().expect("residue below group order"))
        })
        .collect();
    let mut counterexample_pair = None;
    'outer: for g in &elements {
        for (h, hn) in elements.iter().zip(&powered) {
            if !group.commutes(g, hn) {
                counterexample_pair = Some((g.clone(), h.clone()));
                break 'outer;
            }
        }
    }
    let minimal_uniform_n = (1..=analysis.exponent)
        .find(|&n| elements.iter().all(|h| analysis.center.contains(&group.pow(h, n as i64))))
        .expect("h^exponent = e is central");
    Ok(Remark1Audit {
        k: analysis.k,
        n_claimed,
        holds_uniformly: counterexample_pair.is_none(),
        counterexample_pair,
        minimal_uniform_n,
        pairs_checked: elements.len() * elements.len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlignmentResult {
    pub h_list: Vec<GroupElement>,
    pub k_steps: Vec<u64>,
    pub k: u64,
    pub common_power: GroupElement,
}

impl AlignmentResult {
    pub fn to_json(&self, group: &Group) -> Value {
        json!({
            "h_list": self.h_list.iter().map(|h| group.format(h)).collect::<Vec<_>>(),
            "k_steps": self.k_steps,
            "k": self.k,
            "common_power": group.format(&self.common_power),
        })
    }
}

/// Minimal `k_i` with `h_i^k_i = h_(i+1)^k_i`, then checks `h_1^k = ... = h_n^k` for `k = prod k_i`.
pub fn degree_alignment(group: &Group, h_list: &[GroupElement], step_bound: u64) -> Result<AlignmentResult> {
    let first = h_list.first().ok_or_else(|| Error::InvalidInstance("empty degree list".into()))?;
    for h in h_list {
        group.multiply(first, h)?;
    }
    let mut k_steps = Vec::new();
    for (i, pair) in h_list.windows(2).enumerate() {
        let (mut a, mut b) = (group.identity(), group.identity());
        let mut found = None;
        for k in 1..=step_bound {
            a = group.mul(&a, &pair[0]);
            b = group.mul(&b, &pair[1]);
            if a == b {
                found = Some(k);
                break;
            }
        }
        k_steps.push(found.ok_or(Error::AlignmentExhausted { step: i + 1, bound: step_bound })?);
    }
    let k = k_steps.iter().try_fold(1u64, |acc, &x| acc.checked_mul(x)).ok_or_else(|| Error::Overflow("k".into()))?;
    let common_power = group.pow(first, k as i64);
    for h in h_list {
        let p = group.pow(h, k as i64);
        assert_eq!(p, common_power, "common power equality after alignment");
    }
    Ok(AlignmentResult { h_list: h_list.to_vec(), k_steps, k, common_power })
}

/// Whether `BigUint` one; kept for report code that prints claimed exponents.
pub fn is_one(v: &BigUint) -> bool {
    v.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Coord;

    fn w(group: &Group, s: &str) -> GroupElement {
        group.parse_word(s).unwrap()
    }

    #[test]
    fn abelian_cond2_is_immediate() {
        let z2 = Group::FreeAbelian(2);
        let out = cond2_witness(&z2, &w(&z2, "g1"), &w(&z2, "g2"), 10).unwrap();
        assert_eq!(out.found().unwrap().n, 1);
    }

    #[test]
    fn restricted_cond2_needs_multiple_of_three() {
        let d = Group::RestrictedDihedral;
        let out = cond2_witness(&d, &w(&d, "s1"), &w(&d, "rho"), 100).unwrap();
        assert_eq!(out.found().unwrap().n, 3);
    }

    #[test]
    fn d_infinity_cond2_exhausts_with_certificate() {
        let d = Group::InfiniteDihedral;
        let out = cond2_witness(&d, &w(&d, "s"), &w(&d, "r"), 1000).unwrap();
        assert!(out.is_exhausted());
        assert!(out.certificate().is_some());
    }

    #[test]
    fn bs12_cond2prime() {
        let bs = Group::BaumslagSolitar;
        let out = cond2prime_witness(&bs, &w(&bs, "a"), &w(&bs, "b"), 50, 50).unwrap();
        let wit = out.found().unwrap();
        assert_eq!((wit.m, wit.n), (1, 2));
        assert!(wit.verify(&bs));
    }

    #[test]
    fn obstruction_certificates() {
        let d = Group::InfiniteDihedral;
        let out = conjugate_power_obstruction(&d, &w(&d, "s"), &w(&d, "r"), 50, 50).unwrap();
        assert!(out.certificate().is_some());
        let bs = Group::BaumslagSolitar;
        let out = conjugate_power_obstruction(&bs, &w(&bs, "b"), &w(&bs, "a"), 30, 30).unwrap();
        assert!(out.certificate().is_some());
        let z = Group::Integers;
        let out = conjugate_power_obstruction(&z, &w(&z, "g"), &w(&z, "g"), 5, 5).unwrap();
        assert_eq!(out.violation(), Some(&ObstructionViolation { k: 1, l: 1 }));
    }

    #[test]
    fn klyachko_examples() {
        let g = RestrictedElement::flip_at(1);
        assert_eq!(klyachko_exponent(&g), 6);
        assert_eq!(klyachko_exponent(&RestrictedElement::tail_rotation(4)), 2);
        let g2 = RestrictedElement::new(0, [(1, Coord { amount: 0, flip: true }), (2, Coord { amount: 3, flip: true })]);
        assert_eq!(klyachko_exponent(&g2), 30);
        let h = RestrictedElement::new(2, [(2, Coord { amount: 1, flip: true }), (5, Coord { amount: 4, flip: false })]);
        assert!(klyachko_verify(&g2, &h));
    }

    #[test]
    fn partner_found_for_tail_only() {
        let g = RestrictedElement::tail_rotation(1);
        let p = noncommuting_partner(&g).unwrap();
        let d = Group::RestrictedDihedral;
        assert!(!d.commutes(&GroupElement::Restricted(g), &GroupElement::Restricted(p)));
        assert!(noncommuting_partner(&RestrictedElement::identity()).is_none());
    }

    #[test]
    fn star_premise_violation() {
        let bs = Group::BaumslagSolitar;
        let err = star_induction_check(&bs, &w(&bs, "a"), &w(&bs, "b"), 1, 3, 2).unwrap_err();
        assert!(matches!(err, Error::PremiseViolated(_)));
    }

    #[test]
    fn case_analysis_k_less_than_l_in_s3() {
        let s3 = Group::builtin_table("S3").unwrap();
        let g = w(&s3, "(123)");
        let h = w(&s3, "(12)");
        let report = star_case_analysis(&s3, &g, &h, 1, 2, 2, 2).unwrap();
        assert_eq!(report.case, "k < l");
        assert!(report.equalities.iter().all(|e| e.holds));
        assert!(report.reduced_identity.holds);
        assert_eq!(report.concludes_m_eq_n, None);
    }

    #[test]
    fn case_analysis_abelian_k_eq_l() {
        let z2 = Group::FreeAbelian(2);
        let report = star_case_analysis(&z2, &w(&z2, "g1"), &w(&z2, "g2"), 1, 1, 1, 1).unwrap();
        assert_eq!(report.concludes_m_eq_n, Some(true));
    }

    #[test]
    fn alignment_examples() {
        let s3 = Group::builtin_table("S3").unwrap();
        let out = degree_alignment(&s3, &[w(&s3, "(123)"), w(&s3, "(132)")], 10).unwrap();
        assert_eq!((out.k_steps.clone(), out.k), (vec![3], 3));
        let d = Group::InfiniteDihedral;
        let err = degree_alignment(&d, &[w(&d, "r"), w(&d, "r^-1")], 50).unwrap_err();
        assert_eq!(err, Error::AlignmentExhausted { step: 1, bound: 50 });
        let same = degree_alignment(&d, &[w(&d, "r s"), w(&d, "r s")], 5).unwrap();
        assert_eq!(same.k, 1);
    }
}
