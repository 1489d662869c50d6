use std::sync::Arc;

use anomcert::algebra::{rat, ratio, FormPolynomial, FormQSeries, Generator, PolyRing, Rational};
use anomcert::charcalc::{Backend, GeometrySpec, Model, Variant};
use anomcert::theta::{
    check_t_transform, check_t_transform_prime, exp_scaled, t_cap_for, theta_factor_ahat, theta_odd_line_factor,
    theta_prime_at_zero, theta_product, theta_ratio_line, theta_series, ThetaKind,
};
use anomcert::Error;
use num_traits::One;

fn root_ring(cap: u32) -> (Arc<PolyRing>, FormPolynomial) {
    let r = PolyRing::new(vec![Generator::chern_root("z")], cap).unwrap();
    let z = FormPolynomial::generator(&r, 0);
    (r, z)
}

/// Constant t-coefficients of a series with scalar entries.
fn scalars(s: &FormQSeries) -> Vec<Rational> {
    s.constant_coefficients().unwrap()
}

/// `Σ_{n ∈ Z} sign(n) t^{e(n)}` up to `cap`, the triple-product side of a theta constant.
fn lattice_sum(cap: u32, e: impl Fn(i64) -> i64, sign: impl Fn(i64) -> i64) -> Vec<Rational> {
    let mut out = vec![rat(0); cap as usize + 1];
    for n in -20i64..=20 {
        let k = e(n);
        if k <= cap as i64 {
            out[k as usize] += rat(sign(n));
        }
    }
    out
}

/// `Σ_i a_i z^i` (z has cohomological degree 2).
fn poly(z: &FormPolynomial, coeffs: &[Rational]) -> FormPolynomial {
    let mut acc = FormPolynomial::zero(z.ring());
    for (i, c) in coeffs.iter().enumerate() {
        acc = &acc + &z.pow(i as u32).scale(c);
    }
    acc
}

fn negate_root(s: &FormQSeries, r: &Arc<PolyRing>) -> FormQSeries {
    let minus_z = -&FormPolynomial::generator(r, 0);
    s.map_into(r, &[minus_z]).unwrap()
}

#[test]
fn theta_constants_match_triple_product() {
    let r = PolyRing::new(vec![], 0).unwrap();
    let zero = FormPolynomial::zero(&r);
    let cap = t_cap_for(3);
    let theta3 = lattice_sum(cap, |n| 4 * n * n, |_| 1);
    let theta2 = lattice_sum(cap, |n| 4 * n * n, |n| if n % 2 == 0 { 1 } else { -1 });
    let theta1 = lattice_sum(cap, |n| (2 * n + 1) * (2 * n + 1), |_| 1);
    assert_eq!(scalars(&theta_series(ThetaKind::Theta3, &zero, 3).unwrap()), theta3);
    assert_eq!(scalars(&theta_series(ThetaKind::Theta2, &zero, 3).unwrap()), theta2);
    assert_eq!(scalars(&theta_series(ThetaKind::Theta1, &zero, 3).unwrap()), theta1);
    assert!(theta_series(ThetaKind::Theta, &zero, 3).unwrap().is_zero());
}

#[test]
fn theta2_at_zero_first_terms() {
    // ∏(1-q^j)(1-q^{j-1/2})^2 = 1 - 2t^4 + 0 t^8 + 2t^16 + ...
    let r = PolyRing::new(vec![], 0).unwrap();
    let s = scalars(&theta_series(ThetaKind::Theta2, &FormPolynomial::zero(&r), 1).unwrap());
    assert_eq!(
        &s[..9],
        &[rat(1), rat(0), rat(0), rat(0), rat(-2), rat(0), rat(0), rat(0), rat(0)]
    );
    let s1 = scalars(&theta_series(ThetaKind::Theta1, &FormPolynomial::zero(&r), 1).unwrap());
    assert_eq!(s1[1], rat(2));
}

#[test]
fn theta_prime_is_jacobi_cube() {
    // t ∏(1-q^j)^3 = Σ_{n≥0} (-1)^n (2n+1) t^{(2n+1)^2}
    let r = PolyRing::new(vec![], 0).unwrap();
    let cap = t_cap_for(6);
    let mut expected = vec![rat(0); cap as usize + 1];
    for n in 0i64..4 {
        let k = ((2 * n + 1) * (2 * n + 1)) as usize;
        if k <= cap as usize {
            expected[k] = rat(if n % 2 == 0 { 2 * n + 1 } else { -(2 * n + 1) });
        }
    }
    assert_eq!(scalars(&theta_prime_at_zero(&r, 6)), expected);
}

#[test]
fn euler_collapse() {
    let r = PolyRing::new(vec![], 0).unwrap();
    let zero = FormPolynomial::zero(&r);
    for q_order in 1..=4 {
        let product = [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3]
            .iter()
            .map(|k| theta_series(*k, &zero, q_order).unwrap())
            .reduce(|a, b| a.checked_mul(&b).unwrap())
            .unwrap();
        assert_eq!(
            product,
            theta_prime_at_zero(&r, q_order).scale(&rat(2)),
            "q-order {q_order}"
        );
    }
}

#[test]
fn theta_is_odd_and_vanishes_at_degree_zero() {
    let (r, z) = root_ring(10);
    let th = theta_series(ThetaKind::Theta, &z, 2).unwrap();
    assert!(th.entries().all(|(_, p)| p.constant_term() == rat(0)));
    assert_eq!(negate_root(&th, &r), th.neg());
    let odd = theta_odd_line_factor(&z, 2).unwrap();
    assert_eq!(negate_root(&odd, &r), odd.neg());
}

#[test]
fn other_thetas_and_ratios_are_even() {
    let (r, z) = root_ring(10);
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let s = theta_series(kind, &z, 2).unwrap();
        assert_eq!(negate_root(&s, &r), s, "{kind:?}");
        let ratio = theta_ratio_line(kind, &z, 2).unwrap();
        assert_eq!(negate_root(&ratio, &r), ratio, "{kind:?} ratio");
    }
    let ahat = theta_factor_ahat(&z, 2).unwrap();
    assert_eq!(negate_root(&ahat, &r), ahat);
}

#[test]
fn ahat_factor_low_terms() {
    let (_, z) = root_ring(8);
    let s = theta_factor_ahat(&z, 2).unwrap();
    assert_eq!(
        s.q_coefficient(0),
        poly(&z, &[rat(1), rat(0), ratio(-1, 24), rat(0), ratio(7, 5760)])
    );
    // (z / 2sinh(z/2)) (e^z + e^{-z} - 2) = 2z sinh(z/2)
    assert_eq!(
        s.q_coefficient(1),
        poly(&z, &[rat(0), rat(0), rat(1), rat(0), ratio(1, 24)])
    );
    let zero = FormPolynomial::zero(z.ring());
    assert_eq!(
        theta_factor_ahat(&zero, 2).unwrap(),
        FormQSeries::one(z.ring(), s.t_cap())
    );
}

#[test]
fn line_ratios_low_terms() {
    let (r, z) = root_ring(8);
    let one = theta_ratio_line(ThetaKind::Theta1, &z, 1).unwrap();
    assert_eq!(
        one.q_coefficient(0),
        poly(&z, &[rat(1), rat(0), ratio(1, 8), rat(0), ratio(1, 384)])
    );
    let two = theta_ratio_line(ThetaKind::Theta2, &z, 1).unwrap();
    assert_eq!(two.q_coefficient(0), FormPolynomial::one(&r));
    assert_eq!(
        two.coefficient(4),
        poly(&z, &[rat(0), rat(0), rat(-1), rat(0), ratio(-1, 12)])
    );
    let three = theta_ratio_line(ThetaKind::Theta3, &z, 1).unwrap();
    assert_eq!(
        three.coefficient(4),
        poly(&z, &[rat(0), rat(0), rat(1), rat(0), ratio(1, 12)])
    );
    let zero = FormPolynomial::zero(&r);
    assert_eq!(
        theta_ratio_line(ThetaKind::Theta2, &zero, 1).unwrap(),
        FormQSeries::one(&r, two.t_cap())
    );
    assert!(matches!(
        theta_ratio_line(ThetaKind::Theta, &z, 1),
        Err(Error::Domain(_))
    ));
}

#[test]
fn odd_line_factor_is_sinh_at_q0() {
    let (r, z) = root_ring(6);
    let s = theta_odd_line_factor(&z, 2).unwrap();
    assert_eq!(
        s.q_coefficient(0),
        poly(&z, &[rat(0), ratio(1, 2), rat(0), ratio(1, 48)])
    );
    assert_eq!(s.q_coefficient(1).constant_term(), rat(0));
    assert!(theta_odd_line_factor(&FormPolynomial::zero(&r), 2).unwrap().is_zero());
}

#[test]
fn odd_line_factor_matches_collapsed_product() {
    // sinh(z/2) ∏ (1 - q^j e^z)(1 - q^j e^{-z}) / (1 - q^j)^2
    let (r, z) = root_ring(8);
    let q_order = 2;
    let cap = t_cap_for(q_order);
    let half = exp_scaled(&z, &ratio(1, 2));
    let minus_half = exp_scaled(&z, &ratio(-1, 2));
    let sinh = (&half - &minus_half).scale(&ratio(1, 2));
    let mut num = FormQSeries::from_poly(sinh, cap);
    let mut den = FormQSeries::one(&r, cap);
    let minus_one = FormPolynomial::constant(&r, -Rational::one());
    for j in 1..=q_order {
        num = num
            .mul_binomial(&-&exp_scaled(&z, &rat(1)), 8 * j)
            .mul_binomial(&-&exp_scaled(&z, &rat(-1)), 8 * j);
        den = den.mul_binomial(&minus_one, 8 * j).mul_binomial(&minus_one, 8 * j);
    }
    let expected = num.checked_mul(&den.invert_unit().unwrap()).unwrap();
    assert_eq!(theta_odd_line_factor(&z, q_order).unwrap(), expected);
}

#[test]
fn non_root_arguments_are_rejected() {
    let (_, z) = root_ring(8);
    let bad = &z * &z;
    assert!(matches!(
        theta_series(ThetaKind::Theta1, &bad, 1),
        Err(Error::Domain(_))
    ));
    let one = FormPolynomial::one(z.ring());
    assert!(matches!(theta_factor_ahat(&one, 1), Err(Error::Domain(_))));
}

#[test]
fn theta1_product_leading_term() {
    let r = PolyRing::new(vec![], 0).unwrap();
    let zeros = vec![FormPolynomial::zero(&r); 8];
    let s = theta_product(ThetaKind::Theta1, &zeros, 1).unwrap();
    assert_eq!(s.leading_exponent(), Some(8));
    assert_eq!(s.coefficient(8).constant_term(), rat(256));
}

#[test]
fn half_integral_terms_cancel_between_theta2_and_theta3_products() {
    let r = PolyRing::new((1..=8).map(|a| Generator::chern_root(format!("u{a}"))).collect(), 4).unwrap();
    let roots: Vec<FormPolynomial> = (0..8).map(|a| FormPolynomial::generator(&r, a)).collect();
    let sum = theta_product(ThetaKind::Theta2, &roots, 1)
        .unwrap()
        .checked_add(&theta_product(ThetaKind::Theta3, &roots, 1).unwrap())
        .unwrap();
    assert!(sum.coefficient(4).is_zero());
    assert!(sum.coefficient(12).is_zero());
}

#[test]
fn theta1_product_reproduces_spinor_character() {
    let spec = GeometrySpec::new(Variant::QEven, 8, 1, Backend::Roots).with_spin(true);
    let m = Model::new(&spec).unwrap();
    let r = m.ring().clone();
    let us: Vec<FormPolynomial> = (0..r.len())
        .filter(|&i| r.generators()[i].name.starts_with('u'))
        .map(|i| FormPolynomial::generator(&r, i))
        .collect();
    assert_eq!(us.len(), 8);
    let s = theta_product(ThetaKind::Theta1, &us, 1).unwrap();
    // ∏(1-q^n)^8 contributes 1 at q^0, so t^8 carries ch(Δ(V)) alone.
    assert_eq!(s.coefficient(8), m.spinor_ch(1).unwrap());
    let mut oracle = FormPolynomial::one(&r);
    for u in &us {
        oracle = &oracle * &(&exp_scaled(u, &ratio(1, 2)) + &exp_scaled(u, &ratio(-1, 2)));
    }
    assert_eq!(s.coefficient(8), oracle);
}

#[test]
fn t_transformation_laws() {
    for q_order in 1..=3 {
        for kind in ThetaKind::ALL {
            assert_eq!(
                check_t_transform(kind, q_order),
                Ok(()),
                "{kind:?} at q-order {q_order}"
            );
        }
        assert!(check_t_transform_prime(q_order));
    }
}
