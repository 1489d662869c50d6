//! Exact arithmetic: rationals, the octic cyclotomic field, graded
//! polynomials and truncated q-series.

mod cyclotomic;
pub mod par;
mod poly;
mod series;

pub use cyclotomic::{CycOctic, CycPoly};
pub use poly::{Exponents, FormPolynomial, Generator, GeneratorKind, PolyRing};
pub use series::FormQSeries;

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Builds the rational `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `n!` as a rational.
pub fn factorial(n: u32) -> Rational {
    let mut acc = num_bigint::BigInt::from(1u32);
    for k in 2..=n {
        acc *= k;
    }
    Rational::from_integer(acc)
}
