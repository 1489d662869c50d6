//! Jacobi theta functions as truncated series in `t = q^{1/8}`.
//!
//! Arguments are formal roots `z` (degree-2 classes) and `e^{2πiv}` is
//! replaced by `e^z`. Under this substitution
//!
//! ```text
//! θ(z)  = 2t sinh(z/2) ∏ (1-q^j)(1-e^z q^j)(1-e^{-z} q^j)
//! θ1(z) = 2t cosh(z/2) ∏ (1-q^j)(1+e^z q^j)(1+e^{-z} q^j)
//! θ2(z) =              ∏ (1-q^j)(1-e^z q^{j-1/2})(1-e^{-z} q^{j-1/2})
//! θ3(z) =              ∏ (1-q^j)(1+e^z q^{j-1/2})(1+e^{-z} q^{j-1/2})
//! ```
//!
//! with the constant `√-1` of the analytic `θ` absorbed. Quotients never
//! divide by a nilpotent: `θ(z)/z` is expanded directly.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{
    factorial, rat, ratio, CycOctic, CycPoly, FormPolynomial, FormQSeries, Generator, PolyRing, Rational,
};
use crate::error::{Error, Result};

/// The four theta functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    Theta,
    Theta1,
    Theta2,
    Theta3,
}

impl ThetaKind {
    pub const ALL: [ThetaKind; 4] = [
        ThetaKind::Theta,
        ThetaKind::Theta1,
        ThetaKind::Theta2,
        ThetaKind::Theta3,
    ];

    /// Power of `t` at which the series starts.
    pub fn offset(self) -> u32 {
        match self {
            ThetaKind::Theta | ThetaKind::Theta1 => 1,
            ThetaKind::Theta2 | ThetaKind::Theta3 => 0,
        }
    }
}

/// t-cap used for q-order `n`: every exponent up to `q^{n + 7/8}`.
pub fn t_cap_for(q_order: u32) -> u32 {
    8 * q_order + 7
}

fn check_root(z: &FormPolynomial) -> Result<()> {
    if z.is_linear_root() {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta argument {z} is not a degree-2 class")))
    }
}

/// `e^{s z}` for a nilpotent `z`.
pub fn exp_scaled(z: &FormPolynomial, s: &Rational) -> FormPolynomial {
    (z.scale(s)).exp_nilpotent().expect("root has no constant term")
}

/// `Σ_i a_i z^{2i}` up to the degree cap.
fn even_series(z: &FormPolynomial, a: impl Fn(u32) -> Rational) -> FormPolynomial {
    let z2 = z * z;
    let mut power = FormPolynomial::one(z.ring());
    let mut acc = FormPolynomial::zero(z.ring());
    let mut i = 0;
    while !power.is_zero() {
        acc = &acc + &power.scale(&a(i));
        power = &power * &z2;
        i += 1;
    }
    acc
}

/// `2 sinh(z/2) / z`.
fn sinhc(z: &FormPolynomial) -> FormPolynomial {
    even_series(z, |i| factorial(2 * i + 1).recip() / rat(4).pow(i as i32))
}

/// The infinite product part shared by all four functions, up to `t_cap`.
fn theta_product_part(kind: ThetaKind, z: &FormPolynomial, t_cap: u32) -> FormQSeries {
    let ring = z.ring();
    let ez = exp_scaled(z, &Rational::one());
    let emz = exp_scaled(z, &-Rational::one());
    let sign = match kind {
        ThetaKind::Theta | ThetaKind::Theta2 => -Rational::one(),
        ThetaKind::Theta1 | ThetaKind::Theta3 => Rational::one(),
    };
    let a = ez.scale(&sign);
    let b = emz.scale(&sign);
    let minus_one = FormPolynomial::constant(ring, -Rational::one());
    let mut s = FormQSeries::one(ring, t_cap);
    let mut j = 1;
    loop {
        let k = match kind {
            ThetaKind::Theta | ThetaKind::Theta1 => 8 * j,
            ThetaKind::Theta2 | ThetaKind::Theta3 => 8 * j - 4,
        };
        if k > t_cap {
            break;
        }
        if 8 * j <= t_cap {
            s = s.mul_binomial(&minus_one, 8 * j);
        }
        s = s.mul_binomial(&a, k).mul_binomial(&b, k);
        j += 1;
    }
    s
}

fn theta_capped(kind: ThetaKind, z: &FormPolynomial, t_cap: u32) -> FormQSeries {
    let prod = theta_product_part(kind, z, t_cap);
    let half = ratio(1, 2);
    match kind {
        ThetaKind::Theta => {
            let pre = &exp_scaled(z, &half) - &exp_scaled(z, &-half.clone());
            prod.scale_poly(&pre).shift_up(1)
        }
        ThetaKind::Theta1 => {
            let pre = &exp_scaled(z, &half) + &exp_scaled(z, &-half.clone());
            prod.scale_poly(&pre).shift_up(1)
        }
        ThetaKind::Theta2 | ThetaKind::Theta3 => prod,
    }
}

/// `θ_kind(z)` to q-order `q_order`.
pub fn theta_series(kind: ThetaKind, z: &FormPolynomial, q_order: u32) -> Result<FormQSeries> {
    check_root(z)?;
    Ok(theta_capped(kind, z, t_cap_for(q_order)))
}

/// `θ'(0) = t ∏ (1-q^j)^3` at the given cap.
fn theta_prime_capped(ring: &Arc<PolyRing>, t_cap: u32) -> FormQSeries {
    let minus_one = FormPolynomial::constant(ring, -Rational::one());
    let mut s = FormQSeries::one(ring, t_cap);
    let mut j = 1;
    while 8 * j <= t_cap {
        for _ in 0..3 {
            s = s.mul_binomial(&minus_one, 8 * j);
        }
        j += 1;
    }
    s.shift_up(1)
}

/// `θ'(0)` to q-order `q_order`.
pub fn theta_prime_at_zero(ring: &Arc<PolyRing>, q_order: u32) -> FormQSeries {
    theta_prime_capped(ring, t_cap_for(q_order))
}

/// `z θ'(0) / θ(z)`, the theta-side replacement of the Â-genus factor.
pub fn theta_factor_ahat(z: &FormPolynomial, q_order: u32) -> Result<FormQSeries> {
    check_root(z)?;
    let cap = t_cap_for(q_order) + 1;
    let num = theta_prime_capped(z.ring(), cap);
    let den = theta_product_part(ThetaKind::Theta, z, cap)
        .scale_poly(&sinhc(z))
        .shift_up(1);
    num.div_offset(&den, 1)
}

/// `θ_kind(z) / θ_kind(0)` for kind in {θ1, θ2, θ3}.
pub fn theta_ratio_line(kind: ThetaKind, z: &FormPolynomial, q_order: u32) -> Result<FormQSeries> {
    check_root(z)?;
    if kind == ThetaKind::Theta {
        return Err(Error::Domain("θ(0) vanishes; use theta_factor_ahat".into()));
    }
    let a = kind.offset();
    let cap = t_cap_for(q_order) + a;
    let zero = FormPolynomial::zero(z.ring());
    theta_capped(kind, z, cap).div_offset(&theta_capped(kind, &zero, cap), a)
}

/// `θ(z) / (θ1(0) θ2(0) θ3(0))`, the line factor of the second family.
pub fn theta_odd_line_factor(z: &FormPolynomial, q_order: u32) -> Result<FormQSeries> {
    check_root(z)?;
    let cap = t_cap_for(q_order) + 1;
    let zero = FormPolynomial::zero(z.ring());
    let den = theta_capped(ThetaKind::Theta1, &zero, cap)
        .checked_mul(&theta_capped(ThetaKind::Theta2, &zero, cap))?
        .checked_mul(&theta_capped(ThetaKind::Theta3, &zero, cap))?;
    theta_capped(ThetaKind::Theta, z, cap).div_offset(&den, 1)
}

/// `∏_α θ_kind(u_α)` over explicit roots.
pub fn theta_product(kind: ThetaKind, roots: &[FormPolynomial], q_order: u32) -> Result<FormQSeries> {
    let first = roots.first().ok_or_else(|| Error::Domain("empty root list".into()))?;
    let mut acc = FormQSeries::one(first.ring(), t_cap_for(q_order));
    for r in roots {
        acc = acc.checked_mul(&theta_series(kind, r, q_order)?)?;
    }
    Ok(acc)
}

/// A failed modular-transformation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformMismatch {
    pub kind: ThetaKind,
    pub t_exponent: u32,
}

/// Checks the `τ ↦ τ + 1` law exactly: `t ↦ ζ t` sends θ to ζθ, θ1 to ζθ1,
/// and swaps θ2 with θ3.
pub fn check_t_transform(kind: ThetaKind, q_order: u32) -> std::result::Result<(), TransformMismatch> {
    let ring = PolyRing::new(vec![Generator::chern_root("z")], 8).expect("valid ring");
    let z = FormPolynomial::generator(&ring, 0);
    let source = theta_series(kind, &z, q_order).expect("valid root");
    let (target_kind, factor) = match kind {
        ThetaKind::Theta => (ThetaKind::Theta, CycOctic::zeta_pow(1)),
        ThetaKind::Theta1 => (ThetaKind::Theta1, CycOctic::zeta_pow(1)),
        ThetaKind::Theta2 => (ThetaKind::Theta3, CycOctic::zeta_pow(0)),
        ThetaKind::Theta3 => (ThetaKind::Theta2, CycOctic::zeta_pow(0)),
    };
    let target = theta_series(target_kind, &z, q_order).expect("valid root");
    for k in 0..=source.t_cap() {
        let lhs: CycPoly = CycOctic::zeta_pow(k as i64).mul_poly(&source.coefficient(k));
        let rhs: CycPoly = factor.mul_poly(&target.coefficient(k));
        if lhs != rhs {
            return Err(TransformMismatch { kind, t_exponent: k });
        }
    }
    Ok(())
}

/// Checks `θ'(0)` picks up exactly the factor `ζ` under `t ↦ ζ t`.
pub fn check_t_transform_prime(q_order: u32) -> bool {
    let ring = PolyRing::new(vec![], 0).expect("valid ring");
    let s = theta_prime_at_zero(&ring, q_order);
    (0..=s.t_cap()).all(|k| {
        let c = s.coefficient(k);
        c.is_zero() || (k % 8 == 1 && !c.constant_term().is_zero())
    })
}
