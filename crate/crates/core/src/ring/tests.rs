use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::poly::LaurentPoly;

fn q(v: i64) -> Scalar {
    Field::Rational.from_i64(v)
}

fn lp(coeffs: &[i64], val: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs(Field::Rational, val, coeffs.iter().map(|&c| q(c)).collect())
}

fn d_inf_counterexample() -> RingInstance {
    let g = Group::InfiniteDihedral;
    let s = g.parse_word("s").unwrap();
    let r = g.parse_word("r").unwrap();
    RingInstance::counterexample(g, s, r, Field::Rational).unwrap()
}

fn nast() -> RingInstance {
    RingInstance::nastasescu_default(Field::Rational)
}

#[test]
fn nastasescu_xy_is_zero() {
    let r = nast();
    let x = r.monomial(Mono::new(0, 1), q(1));
    let y = r.monomial(Mono::new(0, -1), q(1));
    assert!(r.mul(&x, &y).is_zero());
    assert_eq!(r.format_element(&r.add(&x, &y)), "x + y");
    let parts = r.decompose(&r.add(&x, &y));
    assert_eq!(parts.len(), 2);
}

#[test]
fn nastasescu_requires_infinite_order() {
    let z2 = Group::builtin_table("Z2").unwrap();
    let u = z2.parse_word("u").unwrap();
    assert!(RingInstance::nastasescu(z2, u, Field::Rational).is_err());
}

#[test]
fn group_algebra_z2() {
    let z2 = Group::builtin_table("Z2").unwrap();
    let r = RingInstance::group_algebra(z2.clone(), Field::Rational).unwrap();
    let u = r.monomial(Mono::new(0, 1), q(1));
    let a = r.add(&r.one(), &u);
    let b = r.sub(&r.one(), &u);
    assert!(r.mul(&a, &b).is_zero());
    assert_eq!(r.format_element(&a), "1 + u");
}

#[test]
fn matrix_unit_product() {
    let r = d_inf_counterexample();
    let te11 = r.from_matrix(&[vec![lp(&[1], 1), lp(&[], 0)], vec![lp(&[], 0), lp(&[], 0)]]);
    assert!(te11.is_ok());
    let te11 = te11.unwrap();
    // e12 sits at degree s, its (1,2) entry carries D_{s s} = D_e
    let e12 = r.monomial(Mono::new(1, 0), q(1));
    assert_eq!(r.format_element(&e12), "[[0, 1], [0, 0]]");
    let p = r.mul(&te11, &e12);
    assert_eq!(r.format_element(&p), "[[0, t], [0, 0]]");
    let g = r.group();
    assert_eq!(r.degree_of(&p).unwrap(), g.mul(&g.parse_word("r").unwrap(), &g.parse_word("s").unwrap()));
}

#[test]
fn d_infinity_patterns() {
    let r = d_inf_counterexample();
    let g = r.group().clone();
    let w = |s: &str| g.parse_word(s).unwrap();
    assert_eq!(r.component_pattern(&w("e")).unwrap().to_string(), "[[k, 0], [0, k]]");
    assert_eq!(r.component_pattern(&w("r")).unwrap().to_string(), "[[kt, 0], [0, 0]]");
    assert_eq!(r.component_pattern(&w("s")).unwrap().to_string(), "[[0, k], [k, 0]]");
    assert_eq!(r.component_pattern(&w("r^-1")).unwrap().to_string(), "[[0, 0], [0, kt]]");
}

#[test]
fn enumerate_examples() {
    let r = nast();
    let basis = r.enumerate_homogeneous(&GroupElement::Int(3), 10).unwrap();
    assert_eq!(basis.len(), 1);
    assert_eq!(r.format_element(&basis[0]), "x^3");
    let p = RingInstance::poly_d(Group::Integers, GroupElement::Int(1), Field::Rational).unwrap();
    assert_eq!(p.enumerate_homogeneous(&GroupElement::Int(-2), 5), Err(Error::UnreachableDegree("g^-2".into())));
    let bs = Group::BaumslagSolitar;
    let a = bs.parse_word("a").unwrap();
    let b = bs.parse_word("b").unwrap();
    let cx = RingInstance::counterexample(bs.clone(), b, a, Field::Rational).unwrap();
    assert!(cx.enumerate_homogeneous(&bs.parse_word("b").unwrap(), 6).is_ok());
}

#[test]
fn bazhenov_components() {
    let r = RingInstance::bazhenov(Field::Rational);
    let g = r.group().clone();
    let e_basis = r.component_basis(&g.identity());
    assert_eq!(e_basis.len(), 1);
    let s = g.parse_word("s").unwrap();
    let z = GradedElement::homogeneous(s.clone(), r.component_basis(&s)[0].clone());
    assert_eq!(r.format_element(&z), "[[0, 1], [1, 0]]");
    assert!(r.unit_inverse(&z).is_some());
    let bad = r.from_matrix(&[vec![lp(&[1], 0), lp(&[], 0)], vec![lp(&[], 0), lp(&[2], 0)]]);
    assert!(bad.is_err());
}

#[test]
fn bazhenov_audit_passes() {
    let audit = bazhenov_audit(Field::Rational, 200, 3);
    assert!(audit.passed(), "{audit:?}");
    assert!(!audit.literal_relation.holds);
    assert_eq!(audit.degree_s_units, vec!["[[0, 1], [1, 0]]".to_string()]);
}

#[test]
fn grading_audit_builtins() {
    let instances = vec![nast(), d_inf_counterexample(), RingInstance::bazhenov(Field::Rational)];
    for r in instances {
        let window = r.ball_window(3, 4);
        let audit = grading_axiom_audit(&r, 300, &window, 7);
        assert!(audit.passed(), "{}: {:?}", r.name(), audit.violations.first());
    }
}

/// Matrix ring labelled with `g_i h^a g_j` instead of `g_i h^a g_j^-1`.
struct Mislabelled(RingInstance);

impl GradedAlgebra for Mislabelled {
    fn group(&self) -> &Group {
        self.0.group()
    }
    fn field(&self) -> Field {
        self.0.field()
    }
    fn basis(&self, sigma: &GroupElement, coeff_bound: i64) -> Vec<Coords> {
        self.0
            .window_monomials(coeff_bound)
            .into_iter()
            .filter(|m| self.label(m) == *sigma)
            .map(|m| [(m, self.field().one())].into_iter().collect())
            .collect()
    }
    fn multiply(&self, a: &Coords, b: &Coords) -> Coords {
        GradedAlgebra::multiply(&self.0, a, b)
    }
    fn label(&self, m: &Mono) -> GroupElement {
        let g = self.group();
        let shifts = [g.identity(), g.parse_word("r").unwrap()];
        let (i, j) = (m.slot as usize / 2, m.slot as usize % 2);
        g.mul(&g.mul(&shifts[i], &g.pow(&g.parse_word("r").unwrap(), m.exp)), &shifts[j])
    }
    fn describe(&self, c: &Coords) -> String {
        format!("{c:?}")
    }
}

#[test]
fn grading_audit_catches_wrong_shift_formula() {
    let g = Group::InfiniteDihedral;
    let r = g.parse_word("r").unwrap();
    let inner = RingInstance::counterexample(g.clone(), r.clone(), r, Field::Rational).unwrap();
    let fixture = Mislabelled(inner);
    let window = Window::new(g.ball(4), 2);
    let audit = grading_axiom_audit(&fixture, 500, &window, 1);
    assert!(!audit.passed());
}

#[test]
fn unit_inverse_of_scalar_diagonal() {
    let r = d_inf_counterexample();
    let a = r.from_matrix(&[vec![lp(&[2], 0), lp(&[], 0)], vec![lp(&[], 0), lp(&[3], 0)]]).unwrap();
    let inv = r.unit_inverse(&a).unwrap();
    assert_eq!(r.format_element(&inv), "[[1/2, 0], [0, 1/3]]");
    let t = r.monomial(Mono::new(0, 1), q(1));
    assert!(r.unit_inverse(&t).is_none());
}

#[test]
fn random_homogeneous_is_member() {
    let r = RingInstance::bazhenov(Field::Rational);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in r.ball_window(3, 3).degrees {
        if let Some(a) = r.random_homogeneous(&mut rng, &d, 3) {
            r.check(&a).unwrap();
        }
    }
}

#[test]
fn typed_views_round_trip() {
    let r = nast();
    let v = r.to_xy(&r.add(&r.one(), &r.monomial(Mono::new(0, 2), q(3)))).unwrap();
    assert_eq!(r.format_element(&r.from_xy(&v).unwrap()), "1 + 3*x^2");
    let ds = RingInstance::direct_sum_laurent(Group::Integers, GroupElement::Int(1), Field::Rational).unwrap();
    let (f, g) = ds.to_laurent_pair(&ds.one()).unwrap();
    assert_eq!((f.to_string(), g.to_string()), ("1".to_string(), "1".to_string()));
}
