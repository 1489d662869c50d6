//! Bundle expressions as elements of a free lambda-ring.
//!
//! Every expression is stored canonically as an integer polynomial in the
//! variables `λ^k(A)` for atoms `A`, so tensor products are polynomial
//! products, direct sums are sums, and structural equality is equality of
//! canonical forms. Reduced bundles `W̃ = W - rank(W)` are expanded on
//! construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Basic bundles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// Complexified tangent bundle `T_C Z`.
    TangentC,
    /// Complexified line bundle `ξ_C`.
    XiC,
    /// Complexified gauge bundle `V_C`, indexed for the two-bundle variants.
    VC(u8),
    /// Spinor bundle `Δ(V)` of a gauge bundle.
    DeltaV(u8),
    /// Complexified bundle `E_C` of the odd layer.
    EC,
    /// Spinor bundle `Δ(E)` of the odd layer.
    DeltaE,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::TangentC => write!(f, "T"),
            Atom::XiC => write!(f, "ξ"),
            Atom::VC(i) if *i <= 1 => write!(f, "V"),
            Atom::VC(i) => write!(f, "V{i}"),
            Atom::DeltaV(i) if *i <= 1 => write!(f, "Δ(V)"),
            Atom::DeltaV(i) => write!(f, "Δ(V{i})"),
            Atom::EC => write!(f, "E"),
            Atom::DeltaE => write!(f, "Δ(E)"),
        }
    }
}

/// The variable `λ^power(atom)`, `power ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaVar {
    pub atom: Atom,
    pub power: u32,
}

/// Monomial in lambda variables: sorted `(variable, exponent)` pairs.
pub type BundleMonomial = Vec<(LambdaVar, u32)>;

/// Ranks of the atoms in a given geometry.
pub trait RankContext {
    fn atom_rank(&self, atom: Atom) -> Result<BigInt>;
}

/// Rank table backed by a map.
#[derive(Clone, Debug, Default)]
pub struct Ranks(pub BTreeMap<Atom, BigInt>);

impl Ranks {
    pub fn with(mut self, atom: Atom, rank: impl Into<BigInt>) -> Self {
        self.0.insert(atom, rank.into());
        self
    }
}

impl RankContext for Ranks {
    fn atom_rank(&self, atom: Atom) -> Result<BigInt> {
        self.0
            .get(&atom)
            .cloned()
            .ok_or_else(|| Error::UnknownAtom(atom.to_string()))
    }
}

/// Canonical bundle expression: `Σ n_m · m` over lambda monomials `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BundleExpr {
    terms: BTreeMap<BundleMonomial, BigInt>,
}

fn mul_monomials(a: &BundleMonomial, b: &BundleMonomial) -> BundleMonomial {
    let mut map: BTreeMap<LambdaVar, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *map.entry(v).or_insert(0) += e;
    }
    map.into_iter().collect()
}

impl BundleExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    /// The trivial bundle of rank `n` (negative `n` allowed as virtual bundles).
    pub fn integer(n: impl Into<BigInt>) -> Self {
        let n = n.into();
        let mut e = Self::zero();
        if !n.is_zero() {
            e.terms.insert(Vec::new(), n);
        }
        e
    }

    pub fn atom(a: Atom) -> Self {
        Self::lambda_var(a, 1)
    }

    /// The free variable `λ^k(A)`; `k = 0` gives 1.
    pub fn lambda_var(a: Atom, k: u32) -> Self {
        if k == 0 {
            return Self::one();
        }
        let mut e = Self::zero();
        e.terms
            .insert(vec![(LambdaVar { atom: a, power: k }, 1)], BigInt::one());
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BundleMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: BundleMonomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, n: impl Into<BigInt>) -> Self {
        let n = n.into();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * &n);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Integer part (coefficient of the empty monomial).
    pub fn integer_part(&self) -> BigInt {
        self.terms.get(&Vec::new()).cloned().unwrap_or_default()
    }

    /// Atoms occurring in the expression.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self.terms.keys().flat_map(|m| m.iter().map(|(x, _)| x.atom)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Rank, a ring homomorphism with `rank λ^k(A) = C(rank A, k)`.
    pub fn rank(&self, ctx: &dyn RankContext) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, e) in m {
                let r = ctx.atom_rank(x.atom)?;
                let b = if r.is_negative() {
                    return Err(Error::Domain(format!("negative rank for {}", x.atom)));
                } else {
                    binomial(r, BigInt::from(x.power))
                };
                v *= b.pow(*e);
            }
            total += v;
        }
        Ok(total)
    }

    /// The reduced bundle `W - rank(W)`.
    pub fn tilde(&self, ctx: &dyn RankContext) -> Result<Self> {
        Ok(self - &Self::integer(self.rank(ctx)?))
    }

    /// Splits a linear expression `n0 + Σ n_A A` into its parts.
    pub fn linear_parts(&self) -> Result<(BigInt, Vec<(Atom, BigInt)>)> {
        let mut n0 = BigInt::zero();
        let mut atoms = Vec::new();
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => n0 = c.clone(),
                [(LambdaVar { atom, power: 1 }, 1)] => atoms.push((*atom, c.clone())),
                _ => {
                    return Err(Error::UnsupportedPlethysm(format!(
                        "lambda operation on non-linear argument {self}"
                    )))
                }
            }
        }
        Ok((n0, atoms))
    }

    /// `[λ^0(W), ..., λ^max(W)]` for linear `W`, from
    /// `λ_t(W) = (1+t)^{n0} ∏ λ_t(A)^{n_A}`.
    pub fn lambda_series(&self, max: u32) -> Result<Vec<Self>> {
        let (n0, atoms) = self.linear_parts()?;
        let mut acc = trivial_lambda(&n0, max);
        for (a, n) in atoms {
            let base: Vec<Self> = (0..=max).map(|k| Self::lambda_var(a, k)).collect();
            let factor = series_power(&base, &n, max);
            acc = series_mul(&acc, &factor, max);
        }
        Ok(acc)
    }

    /// `[S^0(W), ..., S^max(W)]` for linear `W`, from `σ_t(W) = 1 / λ_{-t}(W)`.
    pub fn sym_series(&self, max: u32) -> Result<Vec<Self>> {
        let lam = self.lambda_series(max)?;
        let alternating: Vec<Self> = lam
            .iter()
            .enumerate()
            .map(|(k, x)| if k % 2 == 1 { -x } else { x.clone() })
            .collect();
        Ok(series_inverse(&alternating, max))
    }

    /// `Λ^k(W)`.
    pub fn lambda(&self, k: u32) -> Result<Self> {
        Ok(self.lambda_series(k)?.pop().unwrap_or_default())
    }

    /// `S^k(W)`.
    pub fn sym(&self, k: u32) -> Result<Self> {
        Ok(self.sym_series(k)?.pop().unwrap_or_default())
    }
}

fn trivial_lambda(n: &BigInt, max: u32) -> Vec<BundleExpr> {
    // (1+t)^n with generalized binomial coefficients.
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=max {
        out.push(BundleExpr::integer(c.clone()));
        c = c * (n - BigInt::from(k)) / BigInt::from(k + 1);
    }
    out
}

fn series_mul(a: &[BundleExpr], b: &[BundleExpr], max: u32) -> Vec<BundleExpr> {
    (0..=max as usize)
        .map(|n| {
            let mut acc = BundleExpr::zero();
            for i in 0..=n {
                if i < a.len() && n - i < b.len() {
                    acc = &acc + &(&a[i] * &b[n - i]);
                }
            }
            acc
        })
        .collect()
}

/// Inverse of a series with constant term 1.
fn series_inverse(a: &[BundleExpr], max: u32) -> Vec<BundleExpr> {
    let mut g = vec![BundleExpr::one()];
    for n in 1..=max as usize {
        let mut acc = BundleExpr::zero();
        for k in 1..=n {
            if k < a.len() {
                acc = &acc + &(&a[k] * &g[n - k]);
            }
        }
        g.push(-&acc);
    }
    g
}

fn series_power(base: &[BundleExpr], n: &BigInt, max: u32) -> Vec<BundleExpr> {
    let (b, e) = if n.is_negative() {
        (series_inverse(base, max), -n)
    } else {
        (base.to_vec(), n.clone())
    };
    let mut acc = vec![BundleExpr::one()];
    let mut i = BigInt::zero();
    while i < e {
        acc = series_mul(&acc, &b, max);
        i += 1;
    }
    acc
}

impl Add for &BundleExpr {
    type Output = BundleExpr;
    fn add(self, rhs: &BundleExpr) -> BundleExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &BundleExpr {
    type Output = BundleExpr;
    fn sub(self, rhs: &BundleExpr) -> BundleExpr {
        self + &-rhs
    }
}

impl Neg for &BundleExpr {
    type Output = BundleExpr;
    fn neg(self) -> BundleExpr {
        self.scale(-1)
    }
}

impl Mul for &BundleExpr {
    type Output = BundleExpr;
    fn mul(self, rhs: &BundleExpr) -> BundleExpr {
        let mut out = BundleExpr::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mul_monomials(ma, mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BundleExpr {
            type Output = BundleExpr;
            fn $m(self, rhs: BundleExpr) -> BundleExpr {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BundleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let factors: Vec<String> = m
                .iter()
                .map(|(x, e)| {
                    let base = if x.power == 1 {
                        x.atom.to_string()
                    } else {
                        format!("Λ{}{}", x.power, x.atom)
                    };
                    if *e == 1 {
                        base
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("⊗"))?;
            } else {
                write!(f, "{}·{}", abs, factors.join("⊗"))?;
            }
        }
        Ok(())
    }
}

/// Q-series in `t = q^{1/8}` with bundle-expression coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSeries {
    t_cap: u32,
    entries: BTreeMap<u32, BundleExpr>,
}

/// One factor family of an infinite tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QFamily {
    /// `⊗_{n≥1} S_{q^n}(W)`.
    SymInt,
    /// `⊗_{m≥1} Λ_{±q^m}(W)`.
    LambdaInt { negative: bool },
    /// `⊗_{r≥1} Λ_{±q^{r-1/2}}(W)`.
    LambdaHalf { negative: bool },
}

impl QFamily {
    /// t-exponents of the formal parameters, up to `t_cap`.
    pub fn t_exponents(self, t_cap: u32) -> Vec<u32> {
        let step = |n: u32| match self {
            QFamily::SymInt | QFamily::LambdaInt { .. } => 8 * n,
            QFamily::LambdaHalf { .. } => 8 * n - 4,
        };
        (1..).map(step).take_while(|&k| k <= t_cap).collect()
    }

    pub fn is_negative(self) -> bool {
        matches!(
            self,
            QFamily::LambdaInt { negative: true } | QFamily::LambdaHalf { negative: true }
        )
    }
}

impl BundleSeries {
    pub fn zero(t_cap: u32) -> Self {
        Self {
            t_cap,
            entries: BTreeMap::new(),
        }
    }

    pub fn one(t_cap: u32) -> Self {
        Self::monomial(BundleExpr::one(), 0, t_cap)
    }

    pub fn monomial(e: BundleExpr, k: u32, t_cap: u32) -> Self {
        let mut s = Self::zero(t_cap);
        s.add_entry(k, e);
        s
    }

    /// Integer series from `(t-exponent, value)` pairs.
    pub fn from_integers(values: &[(u32, BigInt)], t_cap: u32) -> Self {
        let mut s = Self::zero(t_cap);
        for (k, v) in values {
            s.add_entry(*k, BundleExpr::integer(v.clone()));
        }
        s
    }

    pub fn t_cap(&self) -> u32 {
        self.t_cap
    }

    pub fn entries(&self) -> impl Iterator<Item = (u32, &BundleExpr)> {
        self.entries.iter().map(|(k, e)| (*k, e))
    }

    pub fn coefficient(&self, k: u32) -> BundleExpr {
        self.entries.get(&k).cloned().unwrap_or_default()
    }

    pub fn q_coefficient(&self, n: u32) -> BundleExpr {
        self.coefficient(8 * n)
    }

    fn add_entry(&mut self, k: u32, e: BundleExpr) {
        if k > self.t_cap || e.is_zero() {
            return;
        }
        let sum = match self.entries.remove(&k) {
            Some(old) => &old + &e,
            None => e,
        };
        if !sum.is_zero() {
            self.entries.insert(k, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, e) in &other.entries {
            out.add_entry(*k, e.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, n: i64) -> Self {
        let mut out = Self::zero(self.t_cap);
        for (k, e) in &self.entries {
            out.add_entry(*k, e.scale(n));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.t_cap.min(other.t_cap));
        for (a, ea) in &self.entries {
            for (b, eb) in &other.entries {
                if a + b <= out.t_cap {
                    out.add_entry(a + b, ea * eb);
                }
            }
        }
        out
    }

    pub fn shift_up(&self, a: u32) -> Self {
        let mut out = Self::zero(self.t_cap);
        for (k, e) in &self.entries {
            out.add_entry(k + a, e.clone());
        }
        out
    }

    /// Multiplies each coefficient by `e`.
    pub fn scale_expr(&self, e: &BundleExpr) -> Self {
        let mut out = Self::zero(self.t_cap);
        for (k, x) in &self.entries {
            out.add_entry(*k, x * e);
        }
        out
    }

    /// The tensor product of one family applied to a linear expression `w`.
    pub fn family(w: &BundleExpr, family: QFamily, t_cap: u32) -> Result<Self> {
        let exps = family.t_exponents(t_cap);
        let mut acc = Self::one(t_cap);
        for e in exps {
            let max = t_cap / e;
            let parts = match family {
                QFamily::SymInt => w.sym_series(max)?,
                _ => w.lambda_series(max)?,
            };
            let mut factor = Self::zero(t_cap);
            for (k, x) in parts.into_iter().enumerate() {
                let sign = if family.is_negative() && k % 2 == 1 { -1 } else { 1 };
                factor.add_entry(e * k as u32, x.scale(sign));
            }
            acc = acc.mul(&factor);
        }
        Ok(acc)
    }

    /// Whether every nonzero entry sits at an integral q-power.
    pub fn is_integral(&self) -> bool {
        self.entries.keys().all(|k| k % 8 == 0)
    }
}
