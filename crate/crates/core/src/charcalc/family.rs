use std::sync::Arc;

use num_traits::Zero;
use smallvec::smallvec;

use crate::algebra::{factorial, rat, FormPolynomial, FormQSeries, Generator, PolyRing, Rational};
use crate::error::{Error, Result};

/// How a family of root pairs `±x_1, ..., ±x_n` is represented.
#[derive(Clone, Debug)]
pub enum FamilyRep {
    /// The roots `x_j` themselves.
    Roots(Vec<FormPolynomial>),
    /// Images of `P_1, ..., P_K` where `P_m = Σ x_j^{2m}`.
    PowerSums(Vec<FormPolynomial>),
}

/// A family of `count` root pairs living in a model ring.
#[derive(Clone, Debug)]
pub struct RootFamily {
    pub name: String,
    pub count: usize,
    pub rep: FamilyRep,
    ring: Arc<PolyRing>,
}

/// One-variable ring `Q[z]` truncated at `cap`, scratch space for `log f(z)`.
pub fn univariate_ring(cap: u32) -> Arc<PolyRing> {
    PolyRing::new(vec![Generator::chern_root("z")], cap).expect("valid ring")
}

/// Coefficient of `z^{2m}` in a one-variable polynomial.
fn even_coefficient(p: &FormPolynomial, m: u32) -> Rational {
    p.coefficient(&smallvec![(2 * m) as u8])
}

impl RootFamily {
    pub fn new(name: impl Into<String>, ring: &Arc<PolyRing>, count: usize, rep: FamilyRep) -> Self {
        Self {
            name: name.into(),
            count,
            rep,
            ring: ring.clone(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn roots(&self) -> Option<&[FormPolynomial]> {
        match &self.rep {
            FamilyRep::Roots(r) => Some(r),
            FamilyRep::PowerSums(_) => None,
        }
    }

    /// `P_m` in the model ring; `P_0 = count`.
    pub fn power_sum(&self, m: u32) -> FormPolynomial {
        if m == 0 {
            return FormPolynomial::constant(&self.ring, rat(self.count as i64));
        }
        match &self.rep {
            FamilyRep::Roots(roots) => roots
                .iter()
                .fold(FormPolynomial::zero(&self.ring), |acc, r| &acc + &r.pow(2 * m)),
            FamilyRep::PowerSums(images) => images
                .get(m as usize - 1)
                .cloned()
                .unwrap_or_else(|| FormPolynomial::zero(&self.ring)),
        }
    }

    /// `Σ_j (e^{x_j} + e^{-x_j})`.
    pub fn ch_pairs(&self) -> FormPolynomial {
        let cap = self.ring.degree_cap();
        let mut acc = FormPolynomial::zero(&self.ring);
        for m in 0..=cap / 4 {
            acc = &acc + &self.power_sum(m).scale(&(rat(2) / factorial(2 * m)));
        }
        acc
    }

    /// `∏_j f(x_j)` for an even one-variable polynomial `f` with `f(0) ≠ 0`.
    pub fn multiplicative(&self, f: &FormPolynomial) -> Result<FormPolynomial> {
        match &self.rep {
            FamilyRep::Roots(roots) => {
                let mut acc = FormPolynomial::one(&self.ring);
                for r in roots {
                    acc = &acc * &f.map_into(&self.ring, std::slice::from_ref(r))?;
                }
                Ok(acc)
            }
            FamilyRep::PowerSums(_) => {
                if !f.is_even_in(0) {
                    return Err(Error::Domain("multiplicative class needs an even function".into()));
                }
                let c0 = f.constant_term();
                if c0.is_zero() {
                    return Err(Error::SingularDivision);
                }
                let log = f.scale(&c0.recip()).log_unipotent()?;
                let mut exponent = FormPolynomial::zero(&self.ring);
                for m in 1..=self.ring.degree_cap() / 4 {
                    let k = even_coefficient(&log, m);
                    if !k.is_zero() {
                        exponent = &exponent + &self.power_sum(m).scale(&k);
                    }
                }
                Ok(exponent.exp_nilpotent()?.scale(&c0.pow(self.count as i32)))
            }
        }
    }

    /// `∏_j f(x_j)` for a one-variable series `f`, truncated at `t_cap`.
    ///
    /// `f` must be even in `z`; its leading t-coefficient must have a
    /// nonzero constant term on the power-sum route.
    pub fn product_series(&self, f: &FormQSeries, t_cap: u32) -> Result<FormQSeries> {
        if f.t_cap() < t_cap {
            return Err(Error::CapMismatch(f.t_cap(), t_cap));
        }
        let f = f.truncate(t_cap);
        match &self.rep {
            FamilyRep::Roots(roots) => {
                let mut acc = FormQSeries::one(&self.ring, t_cap);
                for r in roots {
                    acc = acc.checked_mul(&f.map_into(&self.ring, std::slice::from_ref(r))?)?;
                }
                Ok(acc)
            }
            FamilyRep::PowerSums(_) => {
                let Some(a) = f.leading_exponent() else {
                    return Ok(FormQSeries::zero(&self.ring, t_cap));
                };
                let c0 = f.coefficient(a).constant_term();
                if c0.is_zero() {
                    return Err(Error::SingularDivision);
                }
                let total_shift = a as usize * self.count;
                if total_shift > t_cap as usize {
                    return Ok(FormQSeries::zero(&self.ring, t_cap));
                }
                let inner_cap = t_cap - total_shift as u32;
                let h = f.shift_down(a)?.truncate(inner_cap).scale(&c0.recip());
                let log = h.log()?;
                let mut lifted = FormQSeries::zero(&self.ring, inner_cap);
                for (k, p) in log.entries() {
                    if !p.is_even_in(0) {
                        return Err(Error::Domain("family product needs an even function".into()));
                    }
                    let mut coeff = FormPolynomial::zero(&self.ring);
                    for m in 0..=self.ring.degree_cap() / 4 {
                        let kappa = even_coefficient(p, m);
                        if !kappa.is_zero() {
                            coeff = &coeff + &self.power_sum(m).scale(&kappa);
                        }
                    }
                    lifted = lifted.checked_add(&FormQSeries::monomial(coeff, k, inner_cap))?;
                }
                let body = lifted.exp()?.scale(&c0.pow(self.count as i32));
                Ok(body.shift_up_to(total_shift as u32, t_cap))
            }
        }
    }
}
