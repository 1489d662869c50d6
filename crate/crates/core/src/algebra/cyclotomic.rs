use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{FormPolynomial, Rational};

/// Element `a0 + a1 ζ + a2 ζ² + a3 ζ³` of `Q(ζ)` with `ζ⁴ = -1`.
///
/// Here `ζ = e^{πi/4}`, the factor picked up by `q^{1/8}` under `τ ↦ τ + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycOctic {
    pub c: [Rational; 4],
}

impl CycOctic {
    pub fn zero() -> Self {
        Self {
            c: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut z = Self::zero();
        z.c[0] = r;
        z
    }

    /// `ζ^n` for any integer `n`.
    pub fn zeta_pow(n: i64) -> Self {
        let m = n.rem_euclid(8) as usize;
        let mut z = Self::zero();
        z.c[m % 4] = if m < 4 { Rational::one() } else { -Rational::one() };
        z
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Multiplies a polynomial by this scalar, giving a `Q(ζ)`-valued polynomial.
    pub fn mul_poly(&self, p: &FormPolynomial) -> CycPoly {
        CycPoly {
            parts: std::array::from_fn(|i| p.scale(&self.c[i])),
        }
    }
}

impl Add for &CycOctic {
    type Output = CycOctic;
    fn add(self, rhs: &CycOctic) -> CycOctic {
        CycOctic {
            c: std::array::from_fn(|i| &self.c[i] + &rhs.c[i]),
        }
    }
}

impl Mul for &CycOctic {
    type Output = CycOctic;
    fn mul(self, rhs: &CycOctic) -> CycOctic {
        let mut out = CycOctic::zero();
        for i in 0..4 {
            for j in 0..4 {
                let p = &self.c[i] * &rhs.c[j];
                if i + j < 4 {
                    out.c[i + j] += p;
                } else {
                    out.c[i + j - 4] -= p;
                }
            }
        }
        out
    }
}

/// Polynomial with coefficients in `Q(ζ)`, stored as four rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycPoly {
    pub parts: [FormPolynomial; 4],
}

impl CycPoly {
    pub fn add(&self, other: &Self) -> Self {
        Self {
            parts: std::array::from_fn(|i| &self.parts[i] + &other.parts[i]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(FormPolynomial::is_zero)
    }
}
