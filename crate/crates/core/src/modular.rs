//! Eisenstein series, the monomial basis `E4^a E6^b` of modular forms, and
//! the linear relations every weight-`w` form satisfies among its leading
//! q-coefficients.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Rational;
use crate::charcalc::Variant;
use crate::error::{Error, Result};

/// Divisor sum `σ_k(n)`.
pub fn divisor_sum(k: u32, n: u64) -> BigInt {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// Coefficients `[a_0, ..., a_{q_order}]` of `E4` or `E6`.
pub fn eisenstein(weight: u32, q_order: u32) -> Result<Vec<BigInt>> {
    let (k, scale) = match weight {
        4 => (3, BigInt::from(240)),
        6 => (5, BigInt::from(-504)),
        w => return Err(Error::UnsupportedWeight(w)),
    };
    Ok((0..=q_order as u64)
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                &scale * divisor_sum(k, n)
            }
        })
        .collect())
}

fn mul_truncated(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Pairs `(a, b)` with `4a + 6b = weight`, largest `a` first.
pub fn basis_pairs(weight: u32) -> Vec<(u32, u32)> {
    if !weight.is_multiple_of(2) {
        return Vec::new();
    }
    (0..=weight / 4)
        .rev()
        .filter(|a| (weight - 4 * a).is_multiple_of(6))
        .map(|a| (a, (weight - 4 * a) / 6))
        .collect()
}

/// A basis element: `(a, b)` and the q-expansion of `E4^a E6^b`.
pub type BasisElement = ((u32, u32), Vec<BigInt>);

/// The basis `E4^a E6^b` of weight `weight`.
pub fn basis(weight: u32, q_order: u32) -> Result<Vec<BasisElement>> {
    let e4 = eisenstein(4, q_order)?;
    let e6 = eisenstein(6, q_order)?;
    Ok(basis_pairs(weight)
        .into_iter()
        .map(|(a, b)| {
            let mut s = vec![BigInt::zero(); q_order as usize + 1];
            s[0] = BigInt::one();
            for _ in 0..a {
                s = mul_truncated(&s, &e4);
            }
            for _ in 0..b {
                s = mul_truncated(&s, &e6);
            }
            ((a, b), s)
        })
        .collect())
}

/// Classical dimension of the space of weight-`k` modular forms.
pub fn classical_dimension(k: u32) -> u32 {
    if k % 2 == 1 || k == 2 {
        0
    } else if k % 12 == 2 {
        k / 12
    } else {
        k / 12 + 1
    }
}

/// Linear relations `a_n = Σ_{i<d} c_{n,i} a_i` for `n = d..=q_order`, where
/// `d` is the basis size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientRelation {
    pub weight: u32,
    pub basis_size: usize,
    /// `rows[n - d] = [c_{n,0}, ..., c_{n,d-1}]`.
    pub rows: Vec<Vec<Rational>>,
}

impl CoefficientRelation {
    /// q-orders the relation constrains.
    pub fn orders(&self) -> Vec<u32> {
        (self.basis_size as u32..self.basis_size as u32 + self.rows.len() as u32).collect()
    }

    /// Coefficients expressing `a_n`.
    pub fn row(&self, n: u32) -> Option<&[Rational]> {
        self.rows
            .get((n as usize).checked_sub(self.basis_size)?)
            .map(Vec::as_slice)
    }
}

/// Solves `A x = b` exactly; `A` square.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero()).ok_or(Error::Singular)?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, p) in m[r].iter_mut().zip(pivot_row) {
                    *x -= &f * p;
                }
            }
        }
    }
    Ok(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Relations satisfied by the first `q_order + 1` coefficients of any
/// weight-`weight` modular form.
pub fn coefficient_relation(weight: u32, q_order: u32) -> Result<CoefficientRelation> {
    let b = basis(weight, q_order)?;
    let d = b.len();
    if d as u32 > q_order + 1 {
        return Err(Error::Domain(format!("basis size {d} exceeds q-order {q_order} + 1")));
    }
    // Columns are basis elements; the top d x d block is inverted.
    let coeff = |n: usize, j: usize| Rational::from_integer(b[j].1[n].clone());
    let top_t: Vec<Vec<Rational>> = (0..d).map(|j| (0..d).map(|i| coeff(i, j)).collect()).collect();
    let mut rows = Vec::new();
    for n in d..=q_order as usize {
        // Row c with c · top_i = coefficient n for every basis element, i.e. top^T c = row_n.
        let rhs: Vec<Rational> = (0..d).map(|j| coeff(n, j)).collect();
        rows.push(solve(&top_t, &rhs)?);
    }
    Ok(CoefficientRelation {
        weight,
        basis_size: d,
        rows,
    })
}

/// Modular weight of the top-degree coefficients of a variant in a dimension.
pub fn weight_of(variant: Variant, dimension: u32, l: u32) -> Result<u32> {
    let k = variant.k_from_dimension(dimension)?;
    let gauge = if variant.bundle_count() == 2 { 8 * l } else { 4 * l };
    Ok(gauge + 2 * k)
}
