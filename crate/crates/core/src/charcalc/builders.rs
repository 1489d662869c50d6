use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::family::univariate_ring;
use super::{GeometrySpec, Model, Route, Variant, XiConvention};
use crate::algebra::{FormPolynomial, FormQSeries, Rational};
use crate::bundle::{Atom, BundleExpr, BundleSeries, QFamily, RankContext, Ranks};
use crate::error::{Error, Result};
use crate::theta::{self, ThetaKind};

/// Which side of the bundle/theta identity to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Bundle,
    Theta,
}

/// Constant term convention for the gauge bracket.
///
/// `Summed` is the bracket as built: the two half-integral families each
/// contribute 1 at `q^0`, so the constant is 2. `UnitLeading` subtracts one,
/// matching expansions written with leading term `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    Summed,
    UnitLeading,
}

/// Atom ranks of a geometry.
pub fn geometry_ranks(spec: &GeometrySpec) -> Ranks {
    let xi = match spec.xi {
        XiConvention::Complexified => 2,
        XiConvention::Line => 1,
    };
    let mut r = Ranks::default()
        .with(Atom::TangentC, spec.dimension)
        .with(Atom::XiC, xi);
    for i in 1..=spec.variant.bundle_count() as u8 {
        r = r
            .with(Atom::VC(i), 16 * spec.l)
            .with(Atom::DeltaV(i), BigInt::from(2u32).pow(8 * spec.l));
    }
    r
}

/// `∏_{n≥1} (1 - q^n)^exponent` in the model ring.
pub fn euler_power(model: &Model, exponent: u32) -> FormQSeries {
    let ring = model.ring();
    let cap = model.t_cap();
    let minus_one = FormPolynomial::constant(ring, -Rational::one());
    let mut s = FormQSeries::one(ring, cap);
    let mut n = 1;
    while 8 * n <= cap {
        for _ in 0..exponent {
            s = s.mul_binomial(&minus_one, 8 * n);
        }
        n += 1;
    }
    s
}

/// Families making up the big tensor product `Θ` (or `Θ1` for the second family).
fn theta_families(variant: Variant) -> Vec<(Atom, QFamily)> {
    if variant.is_q1() {
        vec![
            (Atom::TangentC, QFamily::SymInt),
            (Atom::XiC, QFamily::LambdaInt { negative: true }),
        ]
    } else {
        vec![
            (Atom::TangentC, QFamily::SymInt),
            (Atom::XiC, QFamily::LambdaInt { negative: false }),
            (Atom::XiC, QFamily::LambdaHalf { negative: true }),
            (Atom::XiC, QFamily::LambdaHalf { negative: false }),
        ]
    }
}

/// Families of the gauge bracket; `true` marks the one carrying `q^l Δ(V)`.
fn bracket_families() -> [(QFamily, bool); 3] {
    [
        (QFamily::LambdaInt { negative: false }, true),
        (QFamily::LambdaHalf { negative: true }, false),
        (QFamily::LambdaHalf { negative: false }, false),
    ]
}

/// `ch Θ(T_C Z, ξ_C)`: symmetric powers of `T̃` and exterior powers of `ξ̃`.
pub fn theta_big_tensor(model: &Model) -> Result<FormQSeries> {
    let mut acc = FormQSeries::one(model.ring(), model.t_cap());
    for (atom, family) in theta_families(model.spec().variant) {
        let w = BundleExpr::atom(atom).tilde(model)?;
        acc = acc.checked_mul(&model.lambda_sym_series(&w, family, Route::Auto)?)?;
    }
    Ok(acc)
}

/// `ch` of the gauge bracket of bundle `i`, as built (constant term 2).
pub fn witten_bracket(model: &Model, i: u8) -> Result<FormQSeries> {
    let v = BundleExpr::atom(Atom::VC(i));
    let cap = model.t_cap();
    let mut acc = FormQSeries::zero(model.ring(), cap);
    let l8 = model.bundles()[i as usize - 1].count as u32;
    for (family, spinor) in bracket_families() {
        let mut term = model.lambda_sym_series(&v, family, Route::Auto)?;
        if spinor {
            term = term.scale_poly(&model.spinor_ch(i)?).shift_up(l8);
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// The full characteristic form `Q` (or `Q1`) of a model, on either side.
pub fn q_series(model: &Model, side: Side) -> Result<FormQSeries> {
    q_series_with(model, side, Normalization::Summed)
}

/// As [`q_series`], with a choice of bracket normalization. The theta side
/// only exists for the summed bracket.
pub fn q_series_with(model: &Model, side: Side, norm: Normalization) -> Result<FormQSeries> {
    if side == Side::Theta && norm != Normalization::Summed {
        return Err(Error::Domain("the theta side has no unit-leading form".into()));
    }
    let spec = model.spec();
    let cap = model.t_cap();
    let ring = model.ring();
    let bundles = model.bundles().len() as u8;
    match side {
        Side::Bundle => {
            let form = &model.ahat()? * &model.exp_half_line();
            let mut acc = theta_big_tensor(model)?.scale_poly(&form);
            let eta_exp: u32 = model.bundles().iter().map(|f| f.count as u32).sum();
            acc = acc.checked_mul(&euler_power(model, eta_exp))?;
            for i in 1..=bundles {
                let mut bracket = witten_bracket(model, i)?;
                if norm == Normalization::UnitLeading {
                    bracket = bracket.checked_sub(&FormQSeries::one(ring, cap))?;
                }
                acc = acc.checked_mul(&bracket)?;
            }
            Ok(acc)
        }
        Side::Theta => {
            let u = univariate_ring(ring.degree_cap());
            let z = FormPolynomial::generator(&u, 0);
            let tangent = theta::theta_factor_ahat(&z, spec.q_order)?;
            let mut acc = model.tangent().product_series(&tangent, cap)?;
            let c = model.line();
            let line = if spec.variant.is_q1() {
                theta::theta_odd_line_factor(c, spec.q_order)?
            } else {
                let mut l = FormQSeries::one(ring, cap);
                for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
                    l = l.checked_mul(&theta::theta_ratio_line(kind, c, spec.q_order)?)?;
                }
                l
            };
            acc = acc.checked_mul(&line)?;
            for fam in model.bundles() {
                let mut sum = FormQSeries::zero(ring, cap);
                for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
                    let f = theta::theta_series(kind, &z, spec.q_order)?;
                    sum = sum.checked_add(&fam.product_series(&f, cap)?)?;
                }
                acc = acc.checked_mul(&sum)?;
            }
            Ok(acc)
        }
    }
}

/// Bundle-level `Θ` (or `Θ1`) as a series of canonical expressions.
pub fn theta_bundle_series(variant: Variant, ranks: &dyn RankContext, t_cap: u32) -> Result<BundleSeries> {
    let mut acc = BundleSeries::one(t_cap);
    for (atom, family) in theta_families(variant) {
        let w = BundleExpr::atom(atom).tilde(ranks)?;
        acc = acc.mul(&BundleSeries::family(&w, family, t_cap)?);
    }
    Ok(acc)
}

/// Bundle-level gauge bracket of bundle `i` with `8l` root pairs.
pub fn bracket_bundle_series(i: u8, l: u32, t_cap: u32, norm: Normalization) -> Result<BundleSeries> {
    let v = BundleExpr::atom(Atom::VC(i));
    let mut acc = BundleSeries::zero(t_cap);
    for (family, spinor) in bracket_families() {
        let mut term = BundleSeries::family(&v, family, t_cap)?;
        if spinor {
            term = term.scale_expr(&BundleExpr::atom(Atom::DeltaV(i))).shift_up(8 * l);
        }
        acc = acc.add(&term);
    }
    if norm == Normalization::UnitLeading {
        acc = acc.sub(&BundleSeries::one(t_cap));
    }
    Ok(acc)
}

/// `∏ (1 - q^n)^e` with integer coefficients.
pub fn euler_integer_series(exponent: u32, t_cap: u32) -> BundleSeries {
    let mut coeffs = vec![BigInt::from(0); (t_cap / 8 + 1) as usize];
    coeffs[0] = BigInt::one();
    for n in 1..coeffs.len() {
        for _ in 0..exponent {
            for k in (n..coeffs.len()).rev() {
                let prev = coeffs[k - n].clone();
                coeffs[k] -= prev;
            }
        }
    }
    let values: Vec<(u32, BigInt)> = coeffs.into_iter().enumerate().map(|(k, v)| (8 * k as u32, v)).collect();
    BundleSeries::from_integers(&values, t_cap)
}

/// `Θ ⊗ η^{8l·b} ⊗ brackets` at bundle level: the q-expansion of `Q`
/// without the form factor `Â e^{c/2}`.
pub fn q_bundle_series(spec: &GeometrySpec, norm: Normalization) -> Result<BundleSeries> {
    let t_cap = theta::t_cap_for(spec.q_order);
    let ranks = geometry_ranks(spec);
    let variant = spec.variant.even_counterpart();
    let bundles = variant.bundle_count() as u8;
    let mut acc = theta_bundle_series(variant, &ranks, t_cap)?;
    acc = acc.mul(&euler_integer_series(8 * spec.l * bundles as u32, t_cap));
    for i in 1..=bundles {
        acc = acc.mul(&bracket_bundle_series(i, spec.l, t_cap, norm)?);
    }
    Ok(acc)
}

/// `Δ(E) ⊗ ⊗_n Λ_{q^n}(Ẽ) ⊗ Λ_{-q^{n-1/2}}(Ẽ) ⊗ Λ_{q^{n-1/2}}(Ẽ)` for `rank E = n_rank`.
pub fn expand_qe(n_rank: u32, q_order: u32) -> Result<BundleSeries> {
    let t_cap = theta::t_cap_for(q_order);
    let ranks = Ranks::default()
        .with(Atom::EC, n_rank)
        .with(Atom::DeltaE, BigInt::from(2u32).pow(n_rank / 2));
    let e = BundleExpr::atom(Atom::EC).tilde(&ranks)?;
    let mut acc = BundleSeries::monomial(BundleExpr::atom(Atom::DeltaE), 0, t_cap);
    for family in [
        QFamily::LambdaInt { negative: false },
        QFamily::LambdaHalf { negative: true },
        QFamily::LambdaHalf { negative: false },
    ] {
        acc = acc.mul(&BundleSeries::family(&e, family, t_cap)?);
    }
    Ok(acc)
}
