use std::sync::Arc;

use anomcert::algebra::{ratio, FormPolynomial, FormQSeries, Generator, PolyRing, Rational};
use anomcert::charcalc::{
    newton_convert, random_evaluate, theta_big_tensor, witten_bracket, Backend, FamilyMap, GeometrySpec, Lcg, Model,
    Variant,
};
use proptest::prelude::*;

const CAP: u32 = 8;

fn xy_ring() -> Arc<PolyRing> {
    PolyRing::new(vec![Generator::chern_root("x"), Generator::chern_root("y")], CAP).unwrap()
}

type Terms = Vec<(u32, u32, i64, i64)>;

fn terms() -> impl Strategy<Value = Terms> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..=20, 1i64..=5), 0..6)
}

fn poly(r: &Arc<PolyRing>, t: &Terms) -> FormPolynomial {
    let x = FormPolynomial::generator(r, 0);
    let y = FormPolynomial::generator(r, 1);
    t.iter().fold(FormPolynomial::zero(r), |acc, &(a, b, n, d)| {
        &acc + &(&x.pow(a) * &y.pow(b)).scale(&ratio(n, d))
    })
}

/// A nilpotent polynomial: no constant term.
fn nil(r: &Arc<PolyRing>, t: &Terms) -> FormPolynomial {
    let p = poly(r, t);
    &p - &FormPolynomial::constant(r, p.constant_term())
}

const T_CAP: u32 = 23;

fn series(r: &Arc<PolyRing>, coeffs: &[(u32, Terms)]) -> FormQSeries {
    coeffs.iter().fold(FormQSeries::zero(r, T_CAP), |acc, (k, t)| {
        acc.checked_add(&FormQSeries::monomial(poly(r, t), *k, T_CAP)).unwrap()
    })
}

fn series_terms() -> impl Strategy<Value = Vec<(u32, Terms)>> {
    prop::collection::vec((0u32..=T_CAP, terms()), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn polynomial_ring_axioms(a in terms(), b in terms(), c in terms()) {
        let r = xy_ring();
        let (f, g, h) = (poly(&r, &a), poly(&r, &b), poly(&r, &c));
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &FormPolynomial::one(&r), f.clone());
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!(f.checked_mul(&g).unwrap(), f.mul_sequential(&g));
    }

    #[test]
    fn series_ring_axioms(a in series_terms(), b in series_terms(), c in series_terms()) {
        let r = xy_ring();
        let (f, g, h) = (series(&r, &a), series(&r, &b), series(&r, &c));
        prop_assert_eq!(f.checked_mul(&g).unwrap(), g.checked_mul(&f).unwrap());
        prop_assert_eq!(
            f.checked_mul(&g).unwrap().checked_mul(&h).unwrap(),
            f.checked_mul(&g.checked_mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.checked_mul(&g.checked_add(&h).unwrap()).unwrap(),
            f.checked_mul(&g).unwrap().checked_add(&f.checked_mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.checked_sub(&f).unwrap().is_zero());
    }

    #[test]
    fn degree_components_are_linear(a in terms(), b in terms(), d in 0u32..=CAP, n in -9i64..=9) {
        let r = xy_ring();
        let (f, g) = (poly(&r, &a), poly(&r, &b));
        let k = ratio(n, 1);
        prop_assert_eq!(
            (&f + &g.scale(&k)).degree_component(d),
            &f.degree_component(d) + &g.degree_component(d).scale(&k)
        );
        let total = f.degrees().into_iter().fold(FormPolynomial::zero(&r), |acc, e| &acc + &f.degree_component(e));
        prop_assert_eq!(total, f.clone());
    }

    #[test]
    fn terms_stay_canonical(a in terms()) {
        let r = xy_ring();
        let f = poly(&r, &a);
        prop_assert!(f.terms().all(|(_, c)| *c != Rational::from_integer(0.into())));
        prop_assert!(f.terms().all(|(e, _)| f.degree_of(e) <= CAP));
        prop_assert!(f.scale(&ratio(0, 1)).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn unit_inverse(lead in 1i64..=9, lead_nil in terms(), rest in series_terms()) {
        let r = xy_ring();
        let head = &FormPolynomial::constant(&r, ratio(lead, 1)) + &nil(&r, &lead_nil);
        let tail: Vec<(u32, Terms)> = rest.into_iter().filter(|(k, _)| *k > 0).collect();
        let f = FormQSeries::from_poly(head, T_CAP).checked_add(&series(&r, &tail)).unwrap();
        let inv = f.invert_unit().unwrap();
        prop_assert_eq!(f.checked_mul(&inv).unwrap(), FormQSeries::one(&r, T_CAP));
    }

    #[test]
    fn exp_log_round_trip(lead_nil in terms(), rest in series_terms()) {
        let r = xy_ring();
        let head = &FormPolynomial::one(&r) + &nil(&r, &lead_nil);
        let tail: Vec<(u32, Terms)> = rest.into_iter().filter(|(k, _)| *k > 0).collect();
        let f = FormQSeries::from_poly(head, T_CAP).checked_add(&series(&r, &tail)).unwrap();
        prop_assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    /// Symmetric functions of squared roots convert to the matching power-sum monomials.
    #[test]
    fn newton_conversion_agrees(combo in prop::collection::vec((0u32..3, 0u32..2, -9i64..=9), 1..5)) {
        let roots = PolyRing::new((1..=4).map(|j| Generator::chern_root(format!("x{j}"))).collect(), 12).unwrap();
        let sums = PolyRing::new((1..=3).map(|m| Generator::power_sum(format!("P{m}"), m)).collect(), 12).unwrap();
        let s = |m: u32| -> FormPolynomial {
            (0..4).fold(FormPolynomial::zero(&roots), |acc, i| &acc + &FormPolynomial::generator(&roots, i).pow(2 * m))
        };
        let p = |m: u32| FormPolynomial::generator(&sums, m as usize - 1);
        let mut lhs = FormPolynomial::zero(&roots);
        let mut rhs = FormPolynomial::zero(&sums);
        for &(a, b, n) in &combo {
            let k = ratio(n, 1);
            lhs = &lhs + &(&s(1).pow(a) * &s(2).pow(b)).scale(&k);
            rhs = &rhs + &(&p(1).pow(a) * &p(2).pow(b)).scale(&k);
        }
        let map = FamilyMap { root_generators: vec![0, 1, 2, 3], power_sums: (1..=3).map(p).collect() };
        prop_assert_eq!(newton_convert(&lhs, &[map], &[], &sums).unwrap(), rhs);
    }

    #[test]
    fn lcg_is_deterministic_and_bounded(seed in any::<u64>()) {
        let mut a = Lcg::new(seed);
        let mut b = Lcg::new(seed);
        for _ in 0..20 {
            let x = a.next_rational();
            prop_assert_eq!(&x, &b.next_rational());
            prop_assert!(*x.numer() >= (-99).into() && *x.numer() <= 99.into());
            prop_assert!(*x.denom() >= 1.into() && *x.denom() <= 9.into());
        }
    }
}

fn geometry() -> impl Strategy<Value = (Variant, u32, u32)> {
    prop_oneof![
        Just((Variant::QEven, 8, 1)),
        Just((Variant::QEven, 8, 2)),
        Just((Variant::QEven, 12, 1)),
        Just((Variant::Q1Even, 10, 1)),
        Just((Variant::Q1Even, 10, 2)),
        Just((Variant::QTwoBundle, 8, 1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Half-integral powers cancel and only degrees divisible by 4 survive.
    #[test]
    fn bracket_and_tensor_structure((v, d, l) in geometry()) {
        let m = Model::new(&GeometrySpec::new(v, d, l, Backend::PowerSum).with_q_order(2)).unwrap();
        for i in 0..v.bundle_count() as u8 {
            let s = witten_bracket(&m, i + 1).unwrap();
            prop_assert!(s.entries().all(|(k, _)| k % 8 == 0));
            prop_assert!(s.degrees().iter().all(|d| d % 4 == 0));
        }
        let big = theta_big_tensor(&m).unwrap();
        prop_assert!(big.entries().all(|(k, _)| k % 8 == 0));
        prop_assert!(big.degrees().iter().all(|d| d % 4 == 0));
    }

    #[test]
    fn random_evaluation_is_linear_and_deterministic(
        seed in any::<u64>(), a in -9i64..=9, (v, d, l) in geometry()
    ) {
        let spec = GeometrySpec::new(v, d, l, Backend::PowerSum).with_q_order(2);
        let m = Model::new(&spec).unwrap();
        let f = m.ahat().unwrap();
        let g = witten_bracket(&m, 1).unwrap().q_coefficient(1);
        let k = ratio(a, 1);
        let ev = |p: &FormPolynomial| random_evaluate(p, &spec, seed).unwrap();
        prop_assert_eq!(ev(&(&f + &g.scale(&k))), ev(&f) + ev(&g) * &k);
        prop_assert_eq!(ev(&f), ev(&f));
    }
}
