use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::{par, ratio, FormPolynomial, PolyRing, Rational};
use crate::error::{Error, Result};

/// Truncated power series in `t = q^{1/8}` with polynomial coefficients.
///
/// Entries above `t_cap` are dropped. A q-order `n` sits at t-exponent `8n`;
/// half-integral q-powers sit at exponents `≡ 4 (mod 8)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormQSeries {
    ring: Arc<PolyRing>,
    t_cap: u32,
    entries: BTreeMap<u32, FormPolynomial>,
}

impl FormQSeries {
    pub fn zero(ring: &Arc<PolyRing>, t_cap: u32) -> Self {
        Self {
            ring: ring.clone(),
            t_cap,
            entries: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>, t_cap: u32) -> Self {
        Self::from_poly(FormPolynomial::one(ring), t_cap)
    }

    /// The constant series `p`.
    pub fn from_poly(p: FormPolynomial, t_cap: u32) -> Self {
        Self::monomial(p, 0, t_cap)
    }

    /// `p * t^k`, zero if `k` exceeds the cap.
    pub fn monomial(p: FormPolynomial, k: u32, t_cap: u32) -> Self {
        let mut s = Self::zero(p.ring(), t_cap);
        if k <= t_cap && !p.is_zero() {
            s.entries.insert(k, p);
        }
        s
    }

    /// Series with rational coefficients `(t-exponent, value)`.
    pub fn from_rationals(ring: &Arc<PolyRing>, coefficients: &[(u32, Rational)], t_cap: u32) -> Self {
        let mut s = Self::zero(ring, t_cap);
        for (k, c) in coefficients {
            s.add_entry(*k, FormPolynomial::constant(ring, c.clone()));
        }
        s
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn t_cap(&self) -> u32 {
        self.t_cap
    }

    /// Nonzero entries in increasing t-exponent.
    pub fn entries(&self) -> impl Iterator<Item = (u32, &FormPolynomial)> {
        self.entries.iter().map(|(k, p)| (*k, p))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Coefficient of `t^k`.
    pub fn coefficient(&self, k: u32) -> FormPolynomial {
        self.entries
            .get(&k)
            .cloned()
            .unwrap_or_else(|| FormPolynomial::zero(&self.ring))
    }

    /// Coefficient of `q^n`, that is of `t^{8n}`.
    pub fn q_coefficient(&self, n: u32) -> FormPolynomial {
        self.coefficient(8 * n)
    }

    /// Lowest t-exponent with a nonzero entry.
    pub fn leading_exponent(&self) -> Option<u32> {
        self.entries.keys().next().copied()
    }

    /// Whether every nonzero entry sits at an integral q-power.
    pub fn is_integral(&self) -> bool {
        self.entries.keys().all(|k| k % 8 == 0)
    }

    fn add_entry(&mut self, k: u32, p: FormPolynomial) {
        if k > self.t_cap || p.is_zero() {
            return;
        }
        let sum = match self.entries.remove(&k) {
            Some(old) => &old + &p,
            None => p,
        };
        if !sum.is_zero() {
            self.entries.insert(k, sum);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !(Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.t_cap != other.t_cap {
            return Err(Error::CapMismatch(self.t_cap, other.t_cap));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, p) in &other.entries {
            out.add_entry(*k, p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.mul_impl(other))
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let cap = self.t_cap;
        let mut targets: Vec<u32> = Vec::new();
        for a in self.entries.keys() {
            for b in other.entries.keys() {
                if a + b <= cap {
                    targets.push(a + b);
                }
            }
        }
        targets.sort_unstable();
        targets.dedup();
        let products = par::map_collect(&targets, |&n| {
            let mut acc = FormPolynomial::zero(&self.ring);
            for (a, pa) in self.entries.range(..=n) {
                if let Some(pb) = other.entries.get(&(n - a)) {
                    acc = &acc + &(pa * pb);
                }
            }
            (n, acc)
        });
        let mut out = Self::zero(&self.ring, cap);
        for (n, p) in products {
            out.add_entry(n, p);
        }
        out
    }

    /// Multiplies every coefficient by the polynomial `p`.
    pub fn scale_poly(&self, p: &FormPolynomial) -> Self {
        let mut out = Self::zero(&self.ring, self.t_cap);
        for (k, c) in &self.entries {
            out.add_entry(*k, c * p);
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|p| p.scale(c))
    }

    /// Applies `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&FormPolynomial) -> FormPolynomial) -> Self {
        let mut out = Self::zero(&self.ring, self.t_cap);
        for (k, c) in &self.entries {
            out.add_entry(*k, f(c));
        }
        out
    }

    /// `self * (1 + a t^k)`, the workhorse of product formulas.
    pub fn mul_binomial(&self, a: &FormPolynomial, k: u32) -> Self {
        let mut out = self.clone();
        for (j, c) in &self.entries {
            if j + k <= self.t_cap {
                out.add_entry(j + k, c * a);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring, self.t_cap);
        for _ in 0..n {
            acc = acc.mul_impl(self);
        }
        acc
    }

    /// Divides by `t^a`. Entries below `t^a` must vanish; the cap drops by `a`.
    pub fn shift_down(&self, a: u32) -> Result<Self> {
        if self.entries.keys().any(|&k| k < a) {
            return Err(Error::SingularDivision);
        }
        if a > self.t_cap {
            return Err(Error::Domain(format!("shift {a} exceeds cap {}", self.t_cap)));
        }
        let entries = self.entries.iter().map(|(k, p)| (k - a, p.clone())).collect();
        Ok(Self {
            ring: self.ring.clone(),
            t_cap: self.t_cap - a,
            entries,
        })
    }

    /// Multiplies by `t^a`, keeping the cap.
    pub fn shift_up(&self, a: u32) -> Self {
        let entries = self
            .entries
            .iter()
            .filter(|(k, _)| *k + a <= self.t_cap)
            .map(|(k, p)| (k + a, p.clone()))
            .collect();
        Self {
            ring: self.ring.clone(),
            t_cap: self.t_cap,
            entries,
        }
    }

    /// Multiplies by `t^a` and sets the cap to `new_cap ≤ t_cap + a`.
    pub fn shift_up_to(&self, a: u32, new_cap: u32) -> Self {
        assert!(new_cap <= self.t_cap + a, "shift cannot invent coefficients");
        let entries = self
            .entries
            .iter()
            .filter(|(k, _)| *k + a <= new_cap)
            .map(|(k, p)| (k + a, p.clone()))
            .collect();
        Self {
            ring: self.ring.clone(),
            t_cap: new_cap,
            entries,
        }
    }

    /// Drops entries above `t_cap` (which must not exceed the current cap).
    pub fn truncate(&self, t_cap: u32) -> Self {
        assert!(t_cap <= self.t_cap, "truncate cannot raise the cap");
        let entries = self.entries.range(..=t_cap).map(|(k, p)| (*k, p.clone())).collect();
        Self {
            ring: self.ring.clone(),
            t_cap,
            entries,
        }
    }

    /// Multiplicative inverse of a series whose `t^0` coefficient is a unit.
    pub fn invert_unit(&self) -> Result<Self> {
        let f0 = self.coefficient(0);
        let g0 = f0.inverse()?;
        let cap = self.t_cap;
        let mut g: BTreeMap<u32, FormPolynomial> = BTreeMap::new();
        g.insert(0, g0.clone());
        let minus_g0 = -&g0;
        for n in 1..=cap {
            let mut acc = FormPolynomial::zero(&self.ring);
            for (k, fk) in self.entries.range(1..=n) {
                if let Some(gj) = g.get(&(n - k)) {
                    acc = &acc + &(fk * gj);
                }
            }
            if !acc.is_zero() {
                let v = &acc * &minus_g0;
                if !v.is_zero() {
                    g.insert(n, v);
                }
            }
        }
        let mut out = Self::zero(&self.ring, cap);
        for (k, p) in g {
            out.add_entry(k, p);
        }
        Ok(out)
    }

    /// Inverse of `self / t^offset`. The result has cap `t_cap - offset`.
    pub fn invert(&self, offset: u32) -> Result<Self> {
        self.shift_down(offset)?.invert_unit()
    }

    /// `(self / t^offset) / (divisor / t^offset)`, both at the same cap.
    /// The result has cap `t_cap - offset`.
    pub fn div_offset(&self, divisor: &Self, offset: u32) -> Result<Self> {
        self.check_compatible(divisor)?;
        let num = self.shift_down(offset)?;
        let den = divisor.invert(offset)?;
        Ok(num.mul_impl(&den))
    }

    /// `exp(self)` for a series whose constant term is zero.
    pub fn exp(&self) -> Result<Self> {
        let f0 = self.coefficient(0);
        let e0 = f0.exp_nilpotent()?;
        let cap = self.t_cap;
        let mut g: BTreeMap<u32, FormPolynomial> = BTreeMap::new();
        g.insert(0, FormPolynomial::one(&self.ring));
        for n in 1..=cap {
            let mut acc = FormPolynomial::zero(&self.ring);
            for (k, fk) in self.entries.range(1..=n) {
                if let Some(gj) = g.get(&(n - k)) {
                    acc = &acc + &(fk * gj).scale(&Rational::from_integer((*k).into()));
                }
            }
            if !acc.is_zero() {
                g.insert(n, acc.scale(&ratio(1, n as i64)));
            }
        }
        let mut out = Self::zero(&self.ring, cap);
        for (k, p) in g {
            out.add_entry(k, &p * &e0);
        }
        Ok(out)
    }

    /// `log(self)` for a series whose constant term is 1.
    pub fn log(&self) -> Result<Self> {
        let f0 = self.coefficient(0);
        if !f0.constant_term().is_one() {
            return Err(Error::Domain("log needs constant term 1".into()));
        }
        let l0 = f0.log_unipotent()?;
        let h = self.scale_poly(&f0.inverse()?);
        let cap = self.t_cap;
        let mut l: BTreeMap<u32, FormPolynomial> = BTreeMap::new();
        for n in 1..=cap {
            let mut acc = h.coefficient(n).scale(&Rational::from_integer(n.into()));
            for (k, lk) in l.range(1..n) {
                let hk = h.coefficient(n - k);
                if !hk.is_zero() {
                    acc = &acc - &(lk * &hk).scale(&Rational::from_integer((*k).into()));
                }
            }
            if !acc.is_zero() {
                l.insert(n, acc.scale(&ratio(1, n as i64)));
            }
        }
        let mut out = Self::from_poly(l0, cap);
        for (k, p) in l {
            out.add_entry(k, p);
        }
        Ok(out)
    }

    /// Homogeneous component of degree `d` in every coefficient.
    pub fn degree_component(&self, d: u32) -> Self {
        self.map(|p| p.degree_component(d))
    }

    /// Applies a ring homomorphism to every coefficient.
    pub fn map_into(&self, target: &Arc<PolyRing>, images: &[FormPolynomial]) -> Result<Self> {
        let mut out = Self::zero(target, self.t_cap);
        for (k, p) in &self.entries {
            out.add_entry(*k, p.map_into(target, images)?);
        }
        Ok(out)
    }

    /// Sorted polynomial degrees carrying nonzero terms anywhere in the series.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.entries.values().flat_map(|p| p.degrees()).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Rational coefficients `[t^0, ..., t^cap]` of a series with constant entries.
    pub fn constant_coefficients(&self) -> Result<Vec<Rational>> {
        (0..=self.t_cap)
            .map(|k| {
                let p = self.coefficient(k);
                if p.degrees().iter().any(|&d| d > 0) {
                    Err(Error::Domain("series has non-constant coefficients".into()))
                } else {
                    Ok(p.constant_term())
                }
            })
            .collect()
    }
}

impl fmt::Display for FormQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "O(t^{})", self.t_cap + 1);
        }
        for (k, p) in &self.entries {
            writeln!(f, "t^{k}: {p}")?;
        }
        write!(f, "O(t^{})", self.t_cap + 1)
    }
}
