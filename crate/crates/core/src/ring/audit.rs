//! Sampling audit of the grading law, and the Bazhenov relation audit.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::{Group, GroupElement};
use crate::poly::{LaurentPoly, Poly};
use crate::scalar::{Field, Scalar};

use super::{add_coeff, combine, Coords, GradedElement, Mono, RingInstance, Window};

/// What the grading audit needs from a ring: homogeneous bases, products, and monomial degrees.
pub trait GradedAlgebra {
    fn group(&self) -> &Group;
    fn field(&self) -> Field;
    /// Basis of the component at `sigma`, truncated at `|exp| <= coeff_bound`.
    fn basis(&self, sigma: &GroupElement, coeff_bound: i64) -> Vec<Coords>;
    fn multiply(&self, a: &Coords, b: &Coords) -> Coords;
    /// The degree the algebra assigns to a monomial.
    fn label(&self, m: &Mono) -> GroupElement;
    fn describe(&self, c: &Coords) -> String;
}

impl GradedAlgebra for RingInstance {
    fn group(&self) -> &Group {
        &self.group
    }

    fn field(&self) -> Field {
        self.field
    }

    fn basis(&self, sigma: &GroupElement, coeff_bound: i64) -> Vec<Coords> {
        self.component_basis_bounded(sigma, coeff_bound)
    }

    fn multiply(&self, a: &Coords, b: &Coords) -> Coords {
        let mut out = Coords::new();
        for (m1, x1) in a {
            for (m2, x2) in b {
                if let Some(m) = self.mono_mul(m1, m2) {
                    add_coeff(&mut out, m, x1 * x2);
                }
            }
        }
        out
    }

    fn label(&self, m: &Mono) -> GroupElement {
        self.mono_degree(m)
    }

    fn describe(&self, c: &Coords) -> String {
        self.format_element(&self.from_coords(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingViolation {
    pub a: String,
    pub deg_a: String,
    pub b: String,
    pub deg_b: String,
    pub product: String,
    pub expected_degree: String,
    /// Degrees carried by the product's monomials, or a closure failure note.
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingAudit {
    pub samples: usize,
    pub zero_products: usize,
    pub violations: Vec<GradingViolation>,
}

impl GradingAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.samples > 0
    }
}

/// Samples homogeneous pairs over the window's degrees and checks that each
/// product is zero or lies in the component of the product degree.
pub fn grading_axiom_audit<A: GradedAlgebra + ?Sized>(alg: &A, samples: usize, window: &Window, seed: u64) -> GradingAudit {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bound = window.coeff_bound;
    let degrees: Vec<(&GroupElement, Vec<Coords>)> = window
        .degrees
        .iter()
        .map(|d| (d, alg.basis(d, bound)))
        .filter(|(_, b)| !b.is_empty())
        .collect();
    let mut audit = GradingAudit { samples: 0, zero_products: 0, violations: Vec::new() };
    if degrees.is_empty() {
        return audit;
    }
    let field = alg.field();
    let group = alg.group();
    let random_in = |basis: &[Coords], rng: &mut ChaCha8Rng| loop {
        let coeffs: Vec<Scalar> = basis.iter().map(|_| field.from_i64(rng.gen_range(-3..=3))).collect();
        let x = combine(basis, &coeffs);
        if !x.is_empty() {
            return x;
        }
    };
    for _ in 0..samples {
        let (d1, b1) = &degrees[rng.gen_range(0..degrees.len())];
        let (d2, b2) = &degrees[rng.gen_range(0..degrees.len())];
        let a = random_in(b1, &mut rng);
        let b = random_in(b2, &mut rng);
        audit.samples += 1;
        let p = alg.multiply(&a, &b);
        if p.is_empty() {
            audit.zero_products += 1;
            continue;
        }
        let expected = group.mul(d1, d2);
        let labels: BTreeSet<GroupElement> = p.keys().map(|m| alg.label(m)).collect();
        let found = if labels.len() != 1 || !labels.contains(&expected) {
            Some(labels.iter().map(|l| group.format(l)).collect::<Vec<_>>().join(", "))
        } else {
            let max_exp = p.keys().map(|m| m.exp.abs()).max().unwrap_or(0);
            let basis = alg.basis(&expected, max_exp);
            let (cols, monos) = basis_matrix(field, &basis, &p);
            (cols.solve(&monos).is_none()).then(|| "product outside the component span".to_string())
        };
        if let Some(found) = found {
            audit.violations.push(GradingViolation {
                a: alg.describe(&a),
                deg_a: group.format(d1),
                b: alg.describe(&b),
                deg_b: group.format(d2),
                product: alg.describe(&p),
                expected_degree: group.format(&expected),
                found,
            });
        }
    }
    audit
}

fn basis_matrix(field: Field, basis: &[Coords], x: &Coords) -> (crate::linalg::Matrix, Vec<Scalar>) {
    let mut monos: Vec<Mono> = basis.iter().flat_map(|c| c.keys().copied()).chain(x.keys().copied()).collect();
    monos.sort();
    monos.dedup();
    let column = |c: &Coords| monos.iter().map(|m| c.get(m).cloned().unwrap_or_else(|| field.zero())).collect::<Vec<_>>();
    let cols: Vec<Vec<Scalar>> = basis.iter().map(column).collect();
    (crate::linalg::Matrix::from_columns(field, monos.len(), &cols), column(x))
}

/// Whether a `2x2` matrix over `k[t]` satisfies `a(0) = d(0)` and `b(0) = c(0)`.
pub fn bazhenov_member(m: &[[Poly; 2]; 2]) -> bool {
    m[0][0].eval_at_zero() == m[1][1].eval_at_zero() && m[0][1].eval_at_zero() == m[1][0].eval_at_zero()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BazhenovAudit {
    /// `xy = 0`, `yx = 0`, `z^2 = 1`, `xz = zy`, `yz = zx`, evaluated in the matrix model.
    pub relations: Vec<NamedCheck>,
    /// The relation as printed in the presentation, `xz = yx`; reported, expected to fail.
    pub literal_relation: NamedCheck,
    pub degrees: Vec<NamedCheck>,
    pub membership_examples: Vec<NamedCheck>,
    pub closure_pairs: usize,
    pub closure_violations: usize,
    /// The unit `z` of degree `s`; the component at `s` is spanned by it.
    pub degree_s_units: Vec<String>,
}

impl BazhenovAudit {
    pub fn passed(&self) -> bool {
        self.relations.iter().chain(&self.degrees).chain(&self.membership_examples).all(|c| c.holds)
            && self.closure_violations == 0
    }
}

fn poly(field: Field, coeffs: &[i64]) -> Poly {
    Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
}

fn mat_mul(a: &[[Poly; 2]; 2], b: &[[Poly; 2]; 2]) -> [[Poly; 2]; 2] {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat_add(a: &[[Poly; 2]; 2], b: &[[Poly; 2]; 2]) -> [[Poly; 2]; 2] {
    let e = |i: usize, j: usize| a[i][j].add(&b[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Relations, degrees and membership closure of the Bazhenov ring in its matrix model.
pub fn bazhenov_audit(field: Field, closure_pairs: usize, seed: u64) -> BazhenovAudit {
    let ring = RingInstance::bazhenov(field);
    let group = ring.group().clone();
    let lp = |c: &[i64], v: i64| LaurentPoly::from_coeffs(field, v, c.iter().map(|&x| field.from_i64(x)).collect());
    let zero = || lp(&[], 0);
    let mk = |m: [[LaurentPoly; 2]; 2]| ring.from_matrix(&m.map(|r| r.to_vec())).expect("generator lies in the ring");
    let x = mk([[lp(&[1], 1), zero()], [zero(), zero()]]);
    let y = mk([[zero(), zero()], [zero(), lp(&[1], 1)]]);
    let z = mk([[zero(), lp(&[1], 0)], [lp(&[1], 0), zero()]]);
    let one = ring.one();
    let m = |a: &GradedElement, b: &GradedElement| ring.mul(a, b);
    let show = |a: &GradedElement| ring.format_element(a);
    let check = |name: &str, lhs: GradedElement, rhs: GradedElement| NamedCheck {
        name: name.to_string(),
        holds: lhs == rhs,
        detail: format!("{} vs {}", show(&lhs), show(&rhs)),
    };
    let relations = vec![
        check("xy = 0", m(&x, &y), ring.zero()),
        check("yx = 0", m(&y, &x), ring.zero()),
        check("z^2 = 1", m(&z, &z), one.clone()),
        check("xz = zy", m(&x, &z), m(&z, &y)),
        check("yz = zx", m(&y, &z), m(&z, &x)),
    ];
    let literal_relation = check("xz = yx", m(&x, &z), m(&y, &x));
    let deg_check = |name: &str, a: &GradedElement, expected: &str| {
        let found = ring.degree_of(a).map(|d| group.format(&d)).unwrap_or_else(|_| "not homogeneous".into());
        NamedCheck { name: name.into(), holds: found == expected, detail: found }
    };
    let s = group.parse_word("s").expect("generator");
    let basis_s = ring.component_basis(&s);
    let z_coords = z.component(&s).cloned().unwrap_or_default();
    let mut degrees = vec![
        deg_check("deg x = r", &x, "r"),
        deg_check("deg y = r^-1", &y, "r^-1"),
        deg_check("deg z = s", &z, "s"),
        deg_check("deg zx = s r", &m(&z, &x), &group.format(&group.parse_word("s r").expect("word"))),
    ];
    degrees.push(NamedCheck {
        name: "R_s = kz".into(),
        holds: basis_s.len() == 1 && ring.express_in_basis(&basis_s, &z_coords).is_some(),
        detail: format!("dim R_s = {}", basis_s.len()),
    });
    let member_case = |name: &str, mtx: [[Poly; 2]; 2], expected: bool| {
        let got = bazhenov_member(&mtx);
        NamedCheck { name: name.into(), holds: got == expected, detail: format!("accepted = {got}") }
    };
    let membership_examples = vec![
        member_case("[[t,1],[1,t]] accepted", [[poly(field, &[0, 1]), poly(field, &[1])], [poly(field, &[1]), poly(field, &[0, 1])]], true),
        member_case("[[1,0],[0,2]] rejected", [[poly(field, &[1]), poly(field, &[])], [poly(field, &[]), poly(field, &[2])]], false),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_member = |rng: &mut ChaCha8Rng| -> [[Poly; 2]; 2] {
        let mut p = || -> Vec<i64> { (0..rng.gen_range(1..=5)).map(|_| rng.gen_range(-4..=4)).collect() };
        let (mut a, b, mut c, mut d) = (p(), p(), p(), p());
        d[0] = a[0];
        c[0] = b[0];
        a.truncate(5);
        [[poly(field, &a), poly(field, &b)], [poly(field, &c), poly(field, &d)]]
    };
    let mut closure_violations = 0;
    for _ in 0..closure_pairs {
        let (a, b) = (random_member(&mut rng), random_member(&mut rng));
        if !bazhenov_member(&mat_add(&a, &b)) || !bazhenov_member(&mat_mul(&a, &b)) {
            closure_violations += 1;
        }
    }
    let degree_s_units = ring
        .component_basis(&s)
        .into_iter()
        .map(|c| GradedElement::homogeneous(s.clone(), c))
        .filter(|u| ring.unit_inverse(u).is_some())
        .map(|u| show(&u))
        .collect();
    BazhenovAudit {
        relations,
        literal_relation,
        degrees,
        membership_examples,
        closure_pairs,
        closure_violations,
        degree_s_units,
    }
}
