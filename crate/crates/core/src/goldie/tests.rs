use super::*;
use crate::group::Group;
use crate::poly::LaurentPoly;
use crate::ring::Mono;
use crate::scalar::Field;

fn q(v: i64) -> Scalar {
    Field::Rational.from_i64(v)
}

fn lp(coeffs: &[i64], val: i64) -> LaurentPoly {
    LaurentPoly::from_coeffs(Field::Rational, val, coeffs.iter().map(|&c| q(c)).collect())
}

fn counterexample(group: Group, g: &str, h: &str) -> RingInstance {
    let (g, h) = (group.parse_word(g).unwrap(), group.parse_word(h).unwrap());
    RingInstance::counterexample(group, g, h, Field::Rational).unwrap()
}

fn nast() -> RingInstance {
    RingInstance::nastasescu_default(Field::Rational)
}

#[test]
fn nastasescu_annihilator_of_x() {
    let r = nast();
    let x = r.monomial(Mono::new(0, 1), q(1));
    let window = Window::new((1..=5).map(|i| GroupElement::Int(-i)).chain((0..=5).map(GroupElement::Int)).collect(), 10);
    let ann = annihilator_solve(&r, &x, Side::Right, &window, 100).unwrap();
    let printed: Vec<String> = ann.basis.iter().map(|b| r.format_element(b)).collect();
    assert_eq!(printed, vec!["y", "y^2", "y^3", "y^4", "y^5"]);
    let err = annihilator_solve(&r, &x, Side::Right, &window, 3).unwrap_err();
    assert_eq!(err, Error::WindowTooLarge { size: 11, cap: 3 });
}

#[test]
fn annihilator_of_te11() {
    let r = counterexample(Group::InfiniteDihedral, "s", "r");
    let a = r.monomial(Mono::new(0, 1), q(1));
    let window = r.ball_window(4, 4);
    let ann = annihilator_solve(&r, &a, Side::Right, &window, 1000).unwrap();
    assert!(!ann.basis.is_empty());
    for b in &ann.basis {
        assert!(r.mul(&a, b).is_zero());
        assert!(b.coords().keys().all(|m| m.slot >= 2), "second-row support");
    }
    let unit = r.from_matrix(&[vec![lp(&[2], 0), lp(&[], 0)], vec![lp(&[], 0), lp(&[3], 0)]]).unwrap();
    assert!(annihilator_solve(&r, &unit, Side::Right, &window, 1000).unwrap().basis.is_empty());
}

#[test]
fn regularity_verdicts() {
    let r = counterexample(Group::InfiniteDihedral, "s", "r");
    let window = r.ball_window(3, 3);
    let unit = r.from_matrix(&[vec![lp(&[2], 0), lp(&[], 0)], vec![lp(&[], 0), lp(&[3], 0)]]).unwrap();
    let cert = regularity_certify(&r, &unit, &window).unwrap();
    assert!(cert.is_unit() && cert.verify(&r));
    let off = r.monomial(Mono::new(1, 2), q(1));
    let cert = regularity_certify(&r, &off, &window).unwrap();
    assert!(cert.is_zero_divisor() && cert.verify(&r));
    let n = nast();
    let x = n.monomial(Mono::new(0, 1), q(1));
    let cert = regularity_certify(&n, &x, &n.monomial_window(5)).unwrap();
    match &cert.verdict {
        Verdict::ZeroDivisor { witness, side } => {
            assert_eq!((n.format_element(witness).as_str(), *side), ("y", Side::Right));
        }
        v => panic!("{v:?}"),
    }
    let sum = n.add(&x, &n.one());
    assert_eq!(regularity_certify(&n, &sum, &n.monomial_window(2)).unwrap_err(), Error::NotHomogeneous);
}

#[test]
fn census_nastasescu_units_are_scalars() {
    let r = nast();
    let census = regular_census(&r, &r.monomial_window(10)).unwrap();
    assert!(census.regulars_are_scalar_units_at_identity(&r));
    assert_eq!(census.unit_degrees(), vec![GroupElement::Int(0)]);
    assert_eq!(census.regular_shapes() + census.zero_divisor_shapes(), census.shapes.len());
}

#[test]
fn census_group_algebra_z2() {
    let r = RingInstance::group_algebra(Group::builtin_table("Z2").unwrap(), Field::Rational).unwrap();
    let census = regular_census(&r, &r.monomial_window(0)).unwrap();
    assert_eq!(census.unit_shapes().count(), 2);
    assert!(census.all_unit_or_zero_divisor());
}

#[test]
fn census_d_infinity_finds_degree_s_unit() {
    let r = counterexample(Group::InfiniteDihedral, "s", "r");
    let census = regular_census(&r, &r.ball_window(6, 6)).unwrap();
    assert!(census.all_unit_or_zero_divisor());
    let s = r.group().parse_word("s").unwrap();
    assert!(census.unit_degrees().contains(&s));
    assert!(!census.regulars_are_scalar_units_at_identity(&r));
}

#[test]
fn census_bs12_units_only_at_identity() {
    let r = counterexample(Group::BaumslagSolitar, "b", "a");
    let census = regular_census(&r, &r.ball_window(4, 6)).unwrap();
    assert!(census.regulars_are_scalar_units_at_identity(&r), "{:?}", census.unit_degrees());
}

#[test]
fn chains() {
    let n = nast();
    let x = n.monomial(Mono::new(0, 1), q(1));
    let report = descending_chain_report(&n, &x, 10, &n.monomial_window(3)).unwrap();
    assert!(report.strictly_descending());
    let cx = counterexample(Group::InfiniteDihedral, "s", "r");
    let t = cx.from_matrix(&[vec![lp(&[1], 1), lp(&[], 0)], vec![lp(&[], 0), lp(&[1], 1)]]).unwrap();
    let report = descending_chain_report(&cx, &t, 8, &cx.monomial_window(2)).unwrap();
    assert!(report.strictly_descending());
    let ga = RingInstance::group_algebra(Group::builtin_table("Z2").unwrap(), Field::Rational).unwrap();
    let a = ga.add(&ga.one(), &ga.monomial(Mono::new(0, 1), q(1)));
    let report = descending_chain_report(&ga, &a, 3, &ga.monomial_window(0)).unwrap();
    assert_eq!(report.stabilized_at(), Some(1));
}

#[test]
fn e_faithful() {
    let ga = RingInstance::group_algebra(Group::builtin_table("Z2").unwrap(), Field::Rational).unwrap();
    assert!(e_faithful_probe(&ga, &ga.monomial_window(0)).is_faithful());
    let n = nast();
    let report = e_faithful_probe(&n, &n.monomial_window(3));
    let fail = report.failures().next().unwrap();
    assert!(!report.is_faithful());
    assert_eq!(n.format_element(&fail.r), "x");
    let cx = counterexample(Group::InfiniteDihedral, "s", "r");
    let report = e_faithful_probe(&cx, &cx.monomial_window(2));
    let te11 = cx.monomial(Mono::new(0, 1), q(1));
    assert!(report.failures().any(|f| f.r == te11));
}

#[test]
fn periodic_powers() {
    let z2 = Group::builtin_table("Z2").unwrap();
    let ga = RingInstance::group_algebra(z2.clone(), Field::Rational).unwrap();
    let u = ga.monomial(Mono::new(0, 1), q(1));
    let rep = periodic_power_regularize(&ga, &[u], 10, &ga.monomial_window(0)).unwrap();
    assert_eq!(rep.sum, ga.one());
    assert!(rep.certificate.is_unit());
    let uu = z2.parse_word("u").unwrap();
    let m = RingInstance::matrix(z2.clone(), MatrixBase::GroundField, vec![z2.identity(), uu], Field::Rational).unwrap();
    let anti = m.add(&m.monomial(Mono::new(1, 0), q(1)), &m.monomial(Mono::new(2, 0), q(1)));
    let rep = periodic_power_regularize(&m, &[anti], 10, &m.monomial_window(0)).unwrap();
    assert_eq!(rep.powers[0], m.one());
    let n = nast();
    let x = n.monomial(Mono::new(0, 1), q(1));
    assert!(matches!(periodic_power_regularize(&n, &[x], 10, &n.monomial_window(2)), Err(Error::InfiniteOrderDegree(_))));
}

#[test]
fn gs_examples() {
    let m = RingInstance::matrix(Group::Integers, MatrixBase::GroundField, vec![GroupElement::Int(0); 2], Field::Rational).unwrap();
    let e = |s: u8| m.monomial(Mono::new(s, 0), q(1));
    let set = gs_candidate_build(&m, &[e(0), e(3)], &[e(2), e(1)], 10, &m.monomial_window(0)).unwrap();
    assert_eq!(set.d_list, vec![e(0), e(3)]);
    assert_eq!(set.k, 1);
    assert_eq!(set.d, m.one());
    assert!(set.certificate.is_unit());
    assert!(set.containment.iter().all(|&b| b));
    let p = RingInstance::poly_d(Group::Integers, GroupElement::Int(1), Field::Rational).unwrap();
    let t = p.monomial(Mono::new(0, 1), q(1));
    let set = gs_candidate_build(&p, std::slice::from_ref(&t), &[p.one()], 10, &p.monomial_window(4)).unwrap();
    assert_eq!(set.d_list, vec![p.mul(&t, &t)]);
    assert!(set.certificate.is_proven_regular());
}

#[test]
fn simplicity_probe() {
    let g = Group::InfiniteDihedral;
    let lm = RingInstance::laurent_matrix(g.clone(), g.parse_word("s").unwrap(), g.parse_word("r").unwrap(), Field::Rational).unwrap();
    let report = gr_simplicity_probe(&lm, 30, 4, 0).unwrap();
    assert!(report.all_verified());
    let nast = nast();
    assert!(gr_simplicity_probe(&nast, 1, 4, 0).is_err());
}
