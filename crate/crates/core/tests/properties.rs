use goldie_core::conditions::{cond2_witness, cond2prime_witness, Cond2PrimeWitness};
use goldie_core::group::{Group, GroupElement};
use goldie_core::parse::{parse_group_word, parse_ring_element};
use goldie_core::poly::LaurentPoly;
use goldie_core::ring::{MatrixBase, RingInstance};
use goldie_core::scalar::{Field, Scalar};
use goldie_core::xy::XYQuotientValue;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn families() -> Vec<Group> {
    let mut v = vec![
        Group::Integers,
        Group::FreeAbelian(3),
        Group::Cyclic(7),
        Group::InfiniteDihedral,
        Group::RestrictedDihedral,
        Group::BaumslagSolitar,
        Group::direct_product(Group::InfiniteDihedral, Group::Cyclic(4)).unwrap(),
    ];
    v.extend(["S3", "D4", "Q8", "Z2", "A4"].map(|n| Group::builtin_table(n).unwrap()));
    v
}

fn finite_tables() -> Vec<Group> {
    ["S3", "D4", "Q8", "Z2", "A4"].map(|n| Group::builtin_table(n).unwrap()).to_vec()
}

fn exponent(g: &Group) -> u64 {
    g.elements().unwrap().iter().map(|x| g.element_order(x, 1000).finite().unwrap()).fold(1, num_integer::lcm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn group_axioms(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in families() {
            let (a, b, c) = (g.random_element(&mut rng), g.random_element(&mut rng), g.random_element(&mut rng));
            let e = g.identity();
            prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)), "{}", g.name());
            prop_assert_eq!(g.mul(&a, &e), a.clone());
            prop_assert_eq!(g.mul(&e, &a), a.clone());
            prop_assert!(g.is_identity(&g.mul(&a, &g.inverse(&a))));
            prop_assert_eq!(g.pow(&a, 3), g.mul(&a, &g.mul(&a, &a)));
            prop_assert_eq!(g.pow(&a, -2), g.inverse(&g.mul(&a, &a)));
        }
    }

    #[test]
    fn formatted_words_reparse(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in families() {
            let a = g.random_element(&mut rng);
            prop_assert_eq!(parse_group_word(&g, &g.format(&a)).unwrap(), a, "{}", g.name());
        }
    }

    #[test]
    fn cond2_implies_cond2prime(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in families() {
            let (x, h) = (g.random_element(&mut rng), g.random_element(&mut rng));
            if let Some(w) = cond2_witness(&g, &x, &h, 24).unwrap().found() {
                prop_assert!(w.verify(&g));
                let prime = Cond2PrimeWitness { g: x.clone(), h: h.clone(), m: w.n, n: w.n };
                prop_assert!(prime.verify(&g));
                let found = cond2prime_witness(&g, &x, &h, 24, 24).unwrap();
                let found = found.found().expect("(n, n) lies in range");
                prop_assert!(found.verify(&g) && found.m <= w.n);
            }
        }
    }

    #[test]
    fn finite_cond2_within_exponent(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for g in finite_tables() {
            let (x, h) = (g.random_element(&mut rng), g.random_element(&mut rng));
            let exp = exponent(&g);
            let w = cond2_witness(&g, &x, &h, exp).unwrap();
            prop_assert!(w.found().is_some_and(|w| w.n <= exp), "{}", g.name());
        }
    }

    #[test]
    fn scalar_field_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50, p in prop::sample::select(vec![0u64, 2, 3, 7, 101])) {
        let f = if p == 0 { Field::Rational } else { Field::prime(p).unwrap() };
        let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
        let add = |x: &Scalar, y: &Scalar| x.checked_add(y).unwrap();
        let mul = |x: &Scalar, y: &Scalar| x.checked_mul(y).unwrap();
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert!(add(&a, &a.checked_neg()).is_zero());
        if let Some(inv) = a.inv() {
            prop_assert!(mul(&a, &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn laurent_ring_axioms(
        va in -4i64..4, ca in prop::collection::vec(-5i64..5, 0..5),
        vb in -4i64..4, cb in prop::collection::vec(-5i64..5, 0..5),
        vc in -4i64..4, cc in prop::collection::vec(-5i64..5, 0..5),
    ) {
        let q = Field::Rational;
        let mk = |v: i64, c: &[i64]| LaurentPoly::from_coeffs(q, v, c.iter().map(|&x| q.from_i64(x)).collect());
        let (a, b, c) = (mk(va, &ca), mk(vb, &cb), mk(vc, &cc));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.mul(&LaurentPoly::one(q)), a.clone());
        if let Some(p) = a.to_poly() {
            prop_assert_eq!(p.to_laurent(), a);
        }
    }

    #[test]
    fn xy_ring_axioms(
        a in (-5i64..5, prop::collection::vec(-5i64..5, 0..4), prop::collection::vec(-5i64..5, 0..4)),
        b in (-5i64..5, prop::collection::vec(-5i64..5, 0..4), prop::collection::vec(-5i64..5, 0..4)),
        c in (-5i64..5, prop::collection::vec(-5i64..5, 0..4), prop::collection::vec(-5i64..5, 0..4)),
    ) {
        let q = Field::Rational;
        let mk = |(k, x, y): &(i64, Vec<i64>, Vec<i64>)| XYQuotientValue::new(
            q.from_i64(*k),
            x.iter().map(|&v| q.from_i64(v)).collect(),
            y.iter().map(|&v| q.from_i64(v)).collect(),
        );
        let (a, b, c) = (mk(&a), mk(&b), mk(&c));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let xy = XYQuotientValue::x_power(q.one(), 1).mul(&XYQuotientValue::y_power(q.one(), 1)).unwrap();
        prop_assert!(xy.is_zero());
    }
}

fn ring_instances() -> Vec<RingInstance> {
    let q = Field::Rational;
    let d = Group::InfiniteDihedral;
    let w = |g: &Group, s: &str| g.parse_word(s).unwrap();
    vec![
        RingInstance::nastasescu_default(q),
        RingInstance::poly_d(Group::Integers, GroupElement::Int(1), q).unwrap(),
        RingInstance::counterexample(d.clone(), w(&d, "s"), w(&d, "r"), q).unwrap(),
        RingInstance::laurent_matrix(d.clone(), w(&d, "s"), w(&d, "r"), q).unwrap(),
        RingInstance::matrix(Group::Integers, MatrixBase::GroundField, vec![GroupElement::Int(0), GroupElement::Int(2)], q).unwrap(),
        RingInstance::bazhenov(q),
        RingInstance::group_algebra(Group::builtin_table("Q8").unwrap(), q).unwrap(),
        RingInstance::direct_sum_laurent(Group::Integers, GroupElement::Int(1), q).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn graded_ring_axioms_and_reparse(seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for inst in ring_instances() {
            let window = if inst.is_matrix() { inst.ball_window(3, 3) } else { inst.monomial_window(3) };
            let support = inst.support(&window);
            let mut pick = || {
                let i = rand::Rng::gen_range(&mut rng, 0..support.len());
                let j = rand::Rng::gen_range(&mut rng, 0..support.len());
                let a = inst.random_homogeneous(&mut rng, &support[i], 3).unwrap_or_else(|| inst.zero());
                let b = inst.random_homogeneous(&mut rng, &support[j], 3).unwrap_or_else(|| inst.zero());
                inst.add(&a, &b)
            };
            let (a, b, c) = (pick(), pick(), pick());
            prop_assert_eq!(inst.mul(&inst.mul(&a, &b), &c), inst.mul(&a, &inst.mul(&b, &c)), "{}", inst.name());
            prop_assert_eq!(inst.mul(&a, &inst.add(&b, &c)), inst.add(&inst.mul(&a, &b), &inst.mul(&a, &c)));
            prop_assert_eq!(inst.mul(&inst.add(&a, &b), &c), inst.add(&inst.mul(&a, &c), &inst.mul(&b, &c)));
            prop_assert_eq!(inst.mul(&inst.one(), &a), a.clone());
            prop_assert_eq!(inst.mul(&a, &inst.one()), a.clone());
            let text = inst.format_element(&a);
            prop_assert_eq!(parse_ring_element(&inst, &text).unwrap(), a, "{} <- {}", inst.name(), text);
        }
    }
}
