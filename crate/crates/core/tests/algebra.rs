use std::sync::Arc;

use anomcert::algebra::{rat, ratio, CycOctic, FormPolynomial, FormQSeries, Generator, PolyRing, Rational};
use anomcert::charcalc::{Backend, GeometrySpec, Model, Variant};
use anomcert::Error;
use num_bigint::BigInt;
use num_traits::{One, Zero};

fn ring(names: &[&str], cap: u32) -> Arc<PolyRing> {
    PolyRing::new(names.iter().map(|n| Generator::chern_root(*n)).collect(), cap).unwrap()
}

fn gens(r: &Arc<PolyRing>) -> Vec<FormPolynomial> {
    (0..r.len()).map(|i| FormPolynomial::generator(r, i)).collect()
}

/// Series in `q` with rational coefficients, `coeffs[n]` at `t^{8n}`.
fn q_series(r: &Arc<PolyRing>, coeffs: &[Rational], t_cap: u32) -> FormQSeries {
    let pairs: Vec<(u32, Rational)> = coeffs
        .iter()
        .enumerate()
        .map(|(n, v)| (8 * n as u32, v.clone()))
        .collect();
    FormQSeries::from_rationals(r, &pairs, t_cap)
}

fn q_coeffs(s: &FormQSeries, n: u32) -> Vec<Rational> {
    (0..=n).map(|k| s.q_coefficient(k).constant_term()).collect()
}

/// `∏_{n≥1} (1 - q^n)^e` to `q^order`, by repeated multiplication of plain vectors.
fn euler_oracle(e: u32, order: usize) -> Vec<i64> {
    let mut acc = vec![0i64; order + 1];
    acc[0] = 1;
    for n in 1..=order {
        for _ in 0..e {
            for k in (n..=order).rev() {
                acc[k] -= acc[k - n];
            }
        }
    }
    acc
}

#[test]
fn rationals_stay_canonical() {
    let a = ratio(6, -4);
    assert_eq!(a.numer(), &BigInt::from(-3));
    assert_eq!(a.denom(), &BigInt::from(2));
    assert_eq!(ratio(2, 4) + ratio(1, 2), rat(1));
}

#[test]
fn truncation_drops_monomials_above_cap() {
    let r = ring(&["x"], 4);
    let x = &gens(&r)[0];
    let one = FormPolynomial::one(&r);
    let x2 = x * x;
    let product = &(&one + &x2) * &(&one - &x2);
    assert_eq!(product, one);
}

#[test]
fn product_with_zero_and_binomial_square() {
    let r = ring(&["x", "y"], 8);
    let g = gens(&r);
    let (x, y) = (&g[0], &g[1]);
    let sum = x + y;
    let expected = &(&(x * x) + &(x * y).scale(&rat(2))) + &(y * y);
    assert_eq!(&sum * &sum, expected);
    assert!((&sum * &FormPolynomial::zero(&r)).is_zero());
}

#[test]
fn mismatched_rings_are_rejected() {
    let a = FormPolynomial::one(&ring(&["x"], 4));
    let b = FormPolynomial::one(&ring(&["y"], 4));
    assert_eq!(a.checked_add(&b), Err(Error::RingMismatch));
    assert_eq!(a.checked_mul(&b), Err(Error::RingMismatch));
}

#[test]
fn series_products_truncate_and_compose() {
    let r = ring(&[], 0);
    let a = q_series(&r, &[rat(1), rat(-1)], 16);
    let b = q_series(&r, &[rat(1), rat(1), rat(1)], 16);
    assert_eq!(a.checked_mul(&b).unwrap(), FormQSeries::one(&r, 16));
    assert_eq!(b.checked_mul(&FormQSeries::one(&r, 16)).unwrap(), b);

    let other = FormQSeries::one(&r, 8);
    assert_eq!(a.checked_mul(&other), Err(Error::CapMismatch(16, 8)));
}

#[test]
fn euler_eighth_power_squared_is_sixteenth_power() {
    let r = ring(&[], 0);
    let cap = 8 * 4 + 7;
    let e8: Vec<Rational> = euler_oracle(8, 4).into_iter().map(rat).collect();
    let e16: Vec<Rational> = euler_oracle(16, 4).into_iter().map(rat).collect();
    let s8 = q_series(&r, &e8, cap);
    assert_eq!(s8.checked_mul(&s8).unwrap(), q_series(&r, &e16, cap));
    assert_eq!(&euler_oracle(8, 2), &[1, -8, 20]);
}

#[test]
fn geometric_inverse() {
    let r = ring(&[], 0);
    let s = q_series(&r, &[rat(1), rat(-1)], 31);
    let inv = s.invert_unit().unwrap();
    assert_eq!(q_coeffs(&inv, 3), vec![rat(1); 4]);
}

#[test]
fn inverse_of_nilpotent_unit() {
    let r = ring(&["x"], 8);
    let x = &gens(&r)[0];
    let one = FormPolynomial::one(&r);
    let x2 = x * x;
    let expected = &(&one - &x2) + &(&x2 * &x2);
    assert_eq!((&one + &x2).inverse().unwrap(), expected);
}

#[test]
fn inverse_of_theta1_unit_part() {
    // j = 1 gives 1 + q - q^2 - q^3 and j = 2 adds q^2, so the product is
    // 1 + q + 0q^2 + ... with inverse 1 - q + q^2 + ...
    let r = ring(&[], 0);
    let cap = 23;
    let mut f = FormQSeries::one(&r, cap);
    let one = FormPolynomial::one(&r);
    for j in 1..=2 {
        f = f
            .mul_binomial(&one, 8 * j)
            .mul_binomial(&one, 8 * j)
            .mul_binomial(&-&one, 8 * j);
    }
    assert_eq!(q_coeffs(&f, 2), vec![rat(1), rat(1), rat(0)]);
    assert_eq!(q_coeffs(&f.invert_unit().unwrap(), 2), vec![rat(1), rat(-1), rat(1)]);
}

#[test]
fn inverting_a_nilpotent_leading_term_fails() {
    let r = ring(&["x"], 4);
    let x = gens(&r)[0].clone();
    let s = FormQSeries::from_poly(x, 15);
    assert_eq!(s.invert_unit(), Err(Error::SingularDivision));
}

#[test]
fn division_with_offset() {
    let r = ring(&[], 0);
    let num = q_series(&r, &[rat(2), rat(4)], 23).shift_up(1);
    let den = q_series(&r, &[rat(2)], 23).shift_up(1);
    let q = num.div_offset(&den, 1).unwrap();
    assert_eq!(q.t_cap(), 22);
    assert_eq!(q_coeffs(&q, 1), vec![rat(1), rat(2)]);
}

#[test]
fn exponential_of_half_line_class() {
    let r = PolyRing::new(vec![Generator::line_class("c")], 8).unwrap();
    let cls = FormPolynomial::generator(&r, 0);
    let e = cls.scale(&ratio(1, 2)).exp_nilpotent().unwrap();
    let mut expected = FormPolynomial::zero(&r);
    for (k, d) in [(0, 1), (1, 2), (2, 8), (3, 48), (4, 384)] {
        expected = &expected + &cls.pow(k).scale(&ratio(1, d));
    }
    assert_eq!(e, expected);
}

#[test]
fn logarithm_of_one_minus_q() {
    let r = ring(&[], 0);
    let s = q_series(&r, &[rat(1), rat(-1)], 31);
    let l = s.log().unwrap();
    assert_eq!(q_coeffs(&l, 3), vec![rat(0), rat(-1), ratio(-1, 2), ratio(-1, 3)]);
}

#[test]
fn exp_and_log_domains() {
    let r = ring(&[], 0);
    let two = q_series(&r, &[rat(2)], 15);
    assert!(matches!(two.log(), Err(Error::Domain(_))));
    assert!(matches!(two.exp(), Err(Error::Domain(_))));
}

#[test]
fn exp_log_round_trip_with_form_coefficient() {
    let r = ring(&["x"], 8);
    let x = &gens(&r)[0];
    let one = FormPolynomial::one(&r);
    let q1 = &one + &(x * x);
    let f = FormQSeries::one(&r, 23)
        .checked_add(&FormQSeries::monomial(q1, 8, 23))
        .unwrap();
    assert_eq!(f.log().unwrap().exp().unwrap(), f);
}

fn ahat_model(dim: u32, backend: Backend) -> Model {
    Model::new(&GeometrySpec::new(Variant::QEven, dim, 1, backend).with_spin(true)).unwrap()
}

#[test]
fn ahat_components_from_power_sums() {
    let m = ahat_model(8, Backend::PowerSum);
    let r = m.ring().clone();
    let ahat = m.ahat().unwrap();
    let p1 = FormPolynomial::generator(&r, r.index_of("p1(T)").unwrap());
    let p2 = FormPolynomial::generator(&r, r.index_of("p2(T)").unwrap());
    assert_eq!(ahat.degree_component(0), FormPolynomial::one(&r));
    assert_eq!(ahat.degree_component(4), p1.scale(&ratio(-1, 24)));
    let expected = (&(&p1 * &p1).scale(&rat(5)) + &p2.scale(&rat(2))).scale(&ratio(1, 5760));
    assert_eq!(ahat.degree_component(8), expected);
}

#[test]
fn ahat_from_roots_matches_sinh_quotient_oracle() {
    // (x/2)/sinh(x/2) = 1 - x^2/24 + 7x^4/5760 + ...
    let m = ahat_model(8, Backend::Roots);
    let r = m.ring().clone();
    let xs = gens(&r);
    let mut expected = FormPolynomial::one(&r);
    for x in xs.iter().take(4) {
        let x2 = x * x;
        let factor = &(&FormPolynomial::one(&r) - &x2.scale(&ratio(1, 24))) + &(&x2 * &x2).scale(&ratio(7, 5760));
        expected = &expected * &factor;
    }
    assert_eq!(m.ahat().unwrap(), expected);
}

#[test]
fn degree_components_sum_back() {
    let m = ahat_model(12, Backend::PowerSum);
    let ahat = m.ahat().unwrap();
    let mut total = FormPolynomial::zero(m.ring());
    for d in ahat.degrees() {
        let part = ahat.degree_component(d);
        assert_eq!(part.degree_component(d), part);
        total = &total + &part;
    }
    assert_eq!(total, ahat);
}

#[test]
fn octic_roots_of_unity() {
    assert_eq!(
        &CycOctic::zeta_pow(4) + &CycOctic::from_rational(Rational::one()),
        CycOctic::zero()
    );
    assert_eq!(
        &CycOctic::zeta_pow(3) * &CycOctic::zeta_pow(5),
        CycOctic::from_rational(Rational::one())
    );
    assert_eq!(
        CycOctic::zeta_pow(-1),
        &CycOctic::zeta_pow(7) * &CycOctic::from_rational(Rational::one())
    );
    assert!(!CycOctic::zeta_pow(2).is_zero());
    assert!(Rational::zero().is_zero());
}
