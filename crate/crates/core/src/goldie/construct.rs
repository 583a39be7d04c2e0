//! Regular elements built from powers: periodic-degree sums and the candidate `d = sum d_i^k`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::conditions::degree_alignment;
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::ring::{GradedElement, MatrixBase, Mono, RingInstance, RingKind, Window};

use super::{annihilator_solve, regularity_certify, same_span, RegularityCertificate, Side, DEFAULT_WINDOW_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicPowerReport {
    pub inputs: Vec<GradedElement>,
    pub orders: Vec<u64>,
    pub powers: Vec<GradedElement>,
    /// `r(a_i^k_i) = r(a_i)` within the window.
    pub annihilators_match: Vec<bool>,
    pub sum: GradedElement,
    pub certificate: RegularityCertificate,
}

impl PeriodicPowerReport {
    pub fn to_json(&self, inst: &RingInstance) -> Value {
        let f = |a: &GradedElement| inst.format_element(a);
        json!({
            "inputs": self.inputs.iter().map(f).collect::<Vec<_>>(),
            "orders": self.orders,
            "powers": self.powers.iter().map(f).collect::<Vec<_>>(),
            "annihilators_match": self.annihilators_match,
            "sum": f(&self.sum),
            "certificate": self.certificate.to_json(inst),
        })
    }
}

/// `sum a_i^k_i` with `k_i` the order of `deg a_i`; every power lies in `R_e`.
pub fn periodic_power_regularize(
    inst: &RingInstance,
    a_list: &[GradedElement],
    order_bound: u64,
    window: &Window,
) -> Result<PeriodicPowerReport> {
    let g = inst.group();
    let mut orders = Vec::new();
    let mut powers = Vec::new();
    let mut annihilators_match = Vec::new();
    for a in a_list {
        inst.check(a)?;
        let deg = a.degree()?;
        let k = g
            .element_order(deg, order_bound)
            .finite()
            .ok_or_else(|| Error::InfiniteOrderDegree(g.format(deg)))?;
        let p = inst.pow(a, k);
        if !p.is_zero() && p.degree()? != &g.identity() {
            return Err(Error::DegenerateCandidate(format!("{} is not in R_e", inst.format_element(&p))));
        }
        let ra = annihilator_solve(inst, a, Side::Right, window, DEFAULT_WINDOW_CAP)?.basis;
        let rp = annihilator_solve(inst, &p, Side::Right, window, DEFAULT_WINDOW_CAP)?.basis;
        annihilators_match.push(same_span(inst, &ra, &rp));
        orders.push(k);
        powers.push(p);
    }
    let sum = powers.iter().fold(inst.zero(), |acc, p| inst.add(&acc, p));
    let certificate = regularity_certify(inst, &sum, window)?;
    Ok(PeriodicPowerReport { inputs: a_list.to_vec(), orders, powers, annihilators_match, sum, certificate })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSCandidateSet {
    pub a_list: Vec<GradedElement>,
    pub s_list: Vec<GradedElement>,
    pub c: GradedElement,
    pub d_list: Vec<GradedElement>,
    pub h_list: Vec<GroupElement>,
    /// `deg P_i` with `h_i = deg P_i * deg c * deg P_i^-1`, where `d_i = P_i Q_i` and `c = Q_i P_i`.
    pub conjugators: Vec<GroupElement>,
    pub k: u64,
    pub d: GradedElement,
    /// `d_i^k = a_i y_i` re-multiplied exactly.
    pub containment: Vec<bool>,
    /// `r(a_i)` inside `r(d_i^k)` on the window basis.
    pub annihilator_inclusion: Vec<bool>,
    pub certificate: RegularityCertificate,
}

impl GSCandidateSet {
    pub fn to_json(&self, inst: &RingInstance) -> Value {
        let g = inst.group();
        let f = |a: &GradedElement| inst.format_element(a);
        json!({
            "c": f(&self.c),
            "d_list": self.d_list.iter().map(f).collect::<Vec<_>>(),
            "h_list": self.h_list.iter().map(|h| g.format(h)).collect::<Vec<_>>(),
            "conjugators": self.conjugators.iter().map(|h| g.format(h)).collect::<Vec<_>>(),
            "k": self.k,
            "d": f(&self.d),
            "containment": self.containment,
            "annihilator_inclusion": self.annihilator_inclusion,
            "certificate": self.certificate.to_json(inst),
        })
    }
}

fn product_of(inst: &RingInstance, factors: &[&GradedElement]) -> GradedElement {
    factors.iter().fold(inst.one(), |acc, x| inst.mul(&acc, x))
}

/// Builds `c = s_1 a_1^2 ... s_n a_n^2` and `d_i = (a_i s_(i+1) a_(i+1)^2 ... s_n a_n^2)(s_1 a_1^2 ... s_i a_i)`,
/// aligns the degrees of the `d_i` and certifies `d = sum d_i^k`.
pub fn gs_candidate_build(
    inst: &RingInstance,
    a_list: &[GradedElement],
    s_list: &[GradedElement],
    alignment_bound: u64,
    window: &Window,
) -> Result<GSCandidateSet> {
    let n = a_list.len();
    if n == 0 || s_list.len() != n {
        return Err(Error::InvalidInstance("a_list and s_list must be nonempty and of equal length".into()));
    }
    for x in a_list.iter().chain(s_list) {
        inst.check(x)?;
        x.degree()?;
    }
    let g = inst.group();
    let sq: Vec<GradedElement> = a_list.iter().map(|a| inst.mul(a, a)).collect();
    let mut c_factors: Vec<&GradedElement> = Vec::new();
    for i in 0..n {
        c_factors.push(&s_list[i]);
        c_factors.push(&sq[i]);
    }
    let c = product_of(inst, &c_factors);
    // Formal degree of c, defined even when c = 0.
    let c_deg = (0..n).fold(g.identity(), |acc, i| {
        let a = a_list[i].degree().expect("checked");
        g.mul(&g.mul(&acc, s_list[i].degree().expect("checked")), &g.mul(a, a))
    });
    let mut d_list = Vec::new();
    let mut h_list = Vec::new();
    let mut conjugators = Vec::new();
    let mut tails = Vec::new();
    for i in 0..n {
        // P_i = a_i * tail, tail = s_(i+1) a_(i+1)^2 ... s_n a_n^2
        let tail = product_of(inst, &c_factors[2 * (i + 1)..]);
        let p = inst.mul(&a_list[i], &tail);
        let mut q_factors: Vec<&GradedElement> = c_factors[..2 * i].to_vec();
        q_factors.push(&s_list[i]);
        q_factors.push(&a_list[i]);
        let q = product_of(inst, &q_factors);
        let d = inst.mul(&p, &q);
        if d.is_zero() {
            return Err(Error::DegenerateCandidate(format!("d_{} = 0", i + 1)));
        }
        let h = d.degree()?.clone();
        let p_deg = p.degree()?.clone();
        if g.conjugate(&c_deg, &p_deg) != h {
            return Err(Error::NonConjugateDegrees(g.format(&h), g.format(&c_deg)));
        }
        d_list.push(d);
        h_list.push(h);
        conjugators.push(p_deg);
        tails.push((tail, q));
    }
    for i in 1..n {
        let x = g.mul(&conjugators[0], &g.inverse(&conjugators[i]));
        if g.conjugate(&h_list[i], &x) != h_list[0] {
            return Err(Error::NonConjugateDegrees(g.format(&h_list[0]), g.format(&h_list[i])));
        }
    }
    let k = degree_alignment(g, &h_list, alignment_bound)?.k;
    let powers: Vec<GradedElement> = d_list.iter().map(|d| inst.pow(d, k)).collect();
    let d = powers.iter().fold(inst.zero(), |acc, p| inst.add(&acc, p));
    let mut containment = Vec::new();
    let mut annihilator_inclusion = Vec::new();
    for i in 0..n {
        let (tail, q) = &tails[i];
        let y = product_of(inst, &[tail, q, &inst.pow(&d_list[i], k - 1)]);
        containment.push(inst.mul(&a_list[i], &y) == powers[i]);
        let ann = annihilator_solve(inst, &a_list[i], Side::Right, window, DEFAULT_WINDOW_CAP)?;
        annihilator_inclusion.push(ann.basis.iter().all(|x| inst.mul(&powers[i], x).is_zero()));
    }
    let certificate = if d.is_zero() {
        return Err(Error::DegenerateCandidate("d = 0".into()));
    } else {
        regularity_certify(inst, &d, window)?
    };
    Ok(GSCandidateSet {
        a_list: a_list.to_vec(),
        s_list: s_list.to_vec(),
        c,
        d_list,
        h_list,
        conjugators,
        k,
        d,
        containment,
        annihilator_inclusion,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityRecord {
    pub a: GradedElement,
    /// Pairs `(u_i, v_i)` with `sum u_i a v_i = 1`; empty when none was found within the bound.
    pub terms: Vec<(GradedElement, GradedElement)>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub multiplier_bound: i64,
    pub records: Vec<SimplicityRecord>,
}

impl SimplicityReport {
    pub fn all_verified(&self) -> bool {
        !self.records.is_empty() && self.records.iter().all(|r| r.verified)
    }

    pub fn to_json(&self, inst: &RingInstance) -> Value {
        let f = |a: &GradedElement| inst.format_element(a);
        json!({
            "multiplier_bound": self.multiplier_bound,
            "verified": self.records.iter().filter(|r| r.verified).count(),
            "records": self.records.iter().map(|r| json!({
                "a": f(&r.a),
                "terms": r.terms.iter().map(|(u, v)| json!([f(u), f(v)])).collect::<Vec<_>>(),
                "verified": r.verified,
            })).collect::<Vec<_>>(),
        })
    }
}

fn max_abs_exp(a: &GradedElement) -> i64 {
    a.coords().keys().map(|m| m.exp.abs()).max().unwrap_or(0)
}

/// Expression `sum u_i a v_i = 1` with homogeneous multipliers of `|t|-degree <= bound`.
fn unit_expression(inst: &RingInstance, a: &GradedElement, n: usize, bound: i64) -> Vec<(GradedElement, GradedElement)> {
    if let Some(inv) = inst.unit_inverse(a) {
        if max_abs_exp(&inv) <= bound {
            return vec![(inv, inst.one())];
        }
    }
    let pivot = a.coords().into_iter().min_by_key(|(m, _)| (m.exp.abs(), m.slot));
    let Some((m, c)) = pivot else { return Vec::new() };
    if m.exp.abs() > bound {
        return Vec::new();
    }
    let (p, q) = (m.slot as usize / n, m.slot as usize % n);
    let cinv = c.inv().expect("nonzero coefficient");
    (0..n)
        .map(|i| {
            let u = inst.monomial(Mono::new((i * n + p) as u8, -m.exp), cinv.clone());
            let v = inst.monomial(Mono::new((q * n + i) as u8, 0), inst.field().one());
            (u, v)
        })
        .collect()
}

/// Samples nonzero homogeneous elements of a Laurent matrix ring and expresses `1` in the ideal each generates.
pub fn gr_simplicity_probe(inst: &RingInstance, samples: usize, multiplier_bound: i64, seed: u64) -> Result<SimplicityReport> {
    let n = match inst.kind() {
        RingKind::Matrix { base: MatrixBase::Laurent { .. }, shifts } => shifts.len(),
        _ => return Err(Error::InvalidInstance("the probe needs a matrix ring over k[t, t^-1]".into())),
    };
    let window = inst.monomial_window(multiplier_bound);
    let degrees = inst.support(&window);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::new();
    for _ in 0..samples {
        let d = &degrees[rng.gen_range(0..degrees.len())];
        let a = inst.random_homogeneous(&mut rng, d, multiplier_bound).expect("degree in support");
        let terms = unit_expression(inst, &a, n, multiplier_bound);
        let total = terms.iter().fold(inst.zero(), |acc, (u, v)| inst.add(&acc, &inst.mul(&inst.mul(u, &a), v)));
        let verified = !terms.is_empty() && total == inst.one();
        records.push(SimplicityRecord { a, terms, verified });
    }
    if let Some(r) = records.iter().find(|r| r.terms.is_empty()) {
        return Err(Error::ExhaustedBound(format!("no expression for {} within multiplier bound {multiplier_bound}", inst.format_element(&r.a))));
    }
    Ok(SimplicityReport { multiplier_bound, records })
}
