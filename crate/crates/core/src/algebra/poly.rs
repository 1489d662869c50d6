use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{par, rat, Rational};
use crate::error::{Error, Result};

/// What a generator stands for. Only used for display and bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// A formal Chern root, degree 2.
    ChernRoot,
    /// The power sum `P_m` of squared roots, degree `4m`.
    PowerSum { index: u32 },
    /// A line class such as `c = c1(ξ)`, degree 2.
    LineClass,
}

/// A named polynomial generator with its cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn chern_root(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            degree: 2,
            kind: GeneratorKind::ChernRoot,
        }
    }

    pub fn line_class(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            degree: 2,
            kind: GeneratorKind::LineClass,
        }
    }

    pub fn power_sum(name: impl Into<String>, index: u32) -> Self {
        Self {
            name: name.into(),
            degree: 4 * index,
            kind: GeneratorKind::PowerSum { index },
        }
    }
}

/// Generator list plus the truncation degree shared by all its polynomials.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    generators: Vec<Generator>,
    degree_cap: u32,
}

impl PolyRing {
    /// Creates a ring. Generator degrees must be positive and even, the cap even.
    pub fn new(generators: Vec<Generator>, degree_cap: u32) -> Result<Arc<Self>> {
        if !degree_cap.is_multiple_of(2) {
            return Err(Error::Domain(format!("degree cap {degree_cap} is odd")));
        }
        if let Some(g) = generators.iter().find(|g| g.degree == 0 || g.degree % 2 != 0) {
            return Err(Error::Domain(format!("generator {} has degree {}", g.name, g.degree)));
        }
        Ok(Arc::new(Self { generators, degree_cap }))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Position of the generator called `name`.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    fn degree(&self, e: &Exponents) -> u32 {
        e.iter().zip(&self.generators).map(|(&k, g)| k as u32 * g.degree).sum()
    }
}

fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector, one entry per generator.
pub type Exponents = SmallVec<[u8; 24]>;

/// Sparse polynomial over the rationals, truncated above the ring's degree cap.
///
/// Terms are kept in a `BTreeMap`, so two equal polynomials have identical
/// internal layout. Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct FormPolynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Exponents, Rational>,
}

impl PartialEq for FormPolynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for FormPolynomial {}

impl FormPolynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Rational) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Self::unit_exponents(ring), c);
        }
        p
    }

    /// The generator at position `index`.
    pub fn generator(ring: &Arc<PolyRing>, index: usize) -> Self {
        let mut e = Self::unit_exponents(ring);
        e[index] = 1;
        Self::monomial(ring, e, Rational::one())
    }

    /// `coefficient * x^e`, or zero if the monomial exceeds the cap.
    pub fn monomial(ring: &Arc<PolyRing>, e: Exponents, coefficient: Rational) -> Self {
        assert_eq!(e.len(), ring.len(), "exponent vector length");
        let mut p = Self::zero(ring);
        if !coefficient.is_zero() && ring.degree(&e) <= ring.degree_cap {
            p.terms.insert(e, coefficient);
        }
        p
    }

    fn unit_exponents(ring: &PolyRing) -> Exponents {
        SmallVec::from_elem(0, ring.len())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_of(&self, e: &Exponents) -> u32 {
        self.ring.degree(e)
    }

    /// Coefficient of the monomial `e`.
    pub fn coefficient(&self, e: &Exponents) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Self::unit_exponents(&self.ring))
    }

    /// Highest degree carrying a nonzero term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| self.ring.degree(e)).max()
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_component(&self, d: u32) -> Self {
        self.filter(|e| self.ring.degree(e) == d)
    }

    /// Sorted list of degrees carrying nonzero terms.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|e| self.ring.degree(e)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    fn filter(&self, keep: impl Fn(&Exponents) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| keep(e))
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Self {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.mul_impl(other, par::enabled()))
    }

    /// Product computed on the calling thread only.
    pub fn mul_sequential(&self, other: &Self) -> Self {
        assert!(same_ring(&self.ring, &other.ring), "ring mismatch");
        self.mul_impl(other, false)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn mul_impl(&self, other: &Self, parallel: bool) -> Self {
        let ring = &self.ring;
        let cap = ring.degree_cap;
        if self.is_zero() || other.is_zero() {
            return Self::zero(ring);
        }
        let mut rhs: Vec<(&Exponents, &Rational, u32)> =
            other.terms.iter().map(|(e, c)| (e, c, ring.degree(e))).collect();
        rhs.sort_by_key(|t| t.2);
        let lhs: Vec<(&Exponents, &Rational, u32)> = self.terms.iter().map(|(e, c)| (e, c, ring.degree(e))).collect();

        let block = |chunk: &[(&Exponents, &Rational, u32)]| {
            let mut acc: HashMap<Exponents, Rational> = HashMap::new();
            for &(ea, ca, da) in chunk {
                for &(eb, cb, db) in &rhs {
                    if da + db > cap {
                        break;
                    }
                    let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                    let p = ca * cb;
                    match acc.entry(e) {
                        std::collections::hash_map::Entry::Occupied(mut o) => *o.get_mut() += p,
                        std::collections::hash_map::Entry::Vacant(v) => {
                            v.insert(p);
                        }
                    }
                }
            }
            acc
        };

        let partials: Vec<HashMap<Exponents, Rational>> = if parallel && lhs.len() >= par::PARALLEL_THRESHOLD {
            let chunk = lhs.len().div_ceil(4 * num_threads()).max(8);
            let chunks: Vec<&[(&Exponents, &Rational, u32)]> = lhs.chunks(chunk).collect();
            par::map_collect(&chunks, |c| block(c))
        } else {
            vec![block(&lhs)]
        };

        let mut out = Self::zero(ring);
        for part in partials {
            for (e, c) in part {
                out.add_term(e, c);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        Self {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Adams operation on a Chern character: scales the degree-`2d` part by `k^d`.
    pub fn adams(&self, k: u32) -> Self {
        let ring = &self.ring;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let d = ring.degree(e) / 2;
                (e.clone(), c * rat(k as i64).pow(d as i32))
            })
            .collect();
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// `1 / self` for a polynomial with nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::SingularDivision);
        }
        let c_inv = c.recip();
        let n = (self - &Self::constant(&self.ring, c)).scale(&c_inv);
        let minus_n = -&n;
        let mut term = Self::one(&self.ring);
        let mut acc = Self::one(&self.ring);
        while !term.is_zero() {
            term = &term * &minus_n;
            acc = &acc + &term;
        }
        Ok(acc.scale(&c_inv))
    }

    /// `exp(self)` for a polynomial with zero constant term.
    pub fn exp_nilpotent(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::Domain("exp of a polynomial with nonzero constant term".into()));
        }
        let mut term = Self::one(&self.ring);
        let mut acc = Self::one(&self.ring);
        let mut k = 1i64;
        while !term.is_zero() {
            term = (&term * self).scale(&super::ratio(1, k));
            acc = &acc + &term;
            k += 1;
        }
        Ok(acc)
    }

    /// `log(self)` for a polynomial with constant term 1.
    pub fn log_unipotent(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::Domain(
                "log of a polynomial with constant term other than 1".into(),
            ));
        }
        let n = self - &Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        let mut acc = Self::zero(&self.ring);
        let mut k = 1i64;
        loop {
            power = &power * &n;
            if power.is_zero() {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc = &acc + &power.scale(&super::ratio(sign, k));
            k += 1;
        }
        Ok(acc)
    }

    /// Replaces generator `index` by `replacement` (same ring).
    pub fn substitute(&self, index: usize, replacement: &Self) -> Result<Self> {
        if !same_ring(&self.ring, &replacement.ring) {
            return Err(Error::RingMismatch);
        }
        let images: Vec<Self> = (0..self.ring.len())
            .map(|i| {
                if i == index {
                    replacement.clone()
                } else {
                    Self::generator(&self.ring, i)
                }
            })
            .collect();
        self.map_into(&self.ring, &images)
    }

    /// Ring homomorphism sending generator `i` to `images[i]` in `target`.
    ///
    /// Images must not raise degree for the result to be exact; truncation
    /// happens at the target cap.
    pub fn map_into(&self, target: &Arc<PolyRing>, images: &[Self]) -> Result<Self> {
        if images.len() != self.ring.len() {
            return Err(Error::Domain("image list length differs from generator count".into()));
        }
        if images.iter().any(|p| !same_ring(&p.ring, target)) {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Evaluates at the given generator values.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.ring.len() {
            return Err(Error::Domain("value list length differs from generator count".into()));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    v *= values[i].pow(k as i32);
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Whether every term has even exponent in generator `index`.
    pub fn is_even_in(&self, index: usize) -> bool {
        self.terms.keys().all(|e| e[index] % 2 == 0)
    }

    /// Whether the polynomial is homogeneous of degree 2 with no constant term,
    /// i.e. a valid formal root.
    pub fn is_linear_root(&self) -> bool {
        self.terms.keys().all(|e| self.ring.degree(e) == 2)
    }
}

fn num_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

impl<'a> Add<&'a FormPolynomial> for &'a FormPolynomial {
    type Output = FormPolynomial;
    fn add(self, rhs: &'a FormPolynomial) -> FormPolynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a FormPolynomial> for &'a FormPolynomial {
    type Output = FormPolynomial;
    fn sub(self, rhs: &'a FormPolynomial) -> FormPolynomial {
        self.checked_add(&-rhs)
            .expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a FormPolynomial> for &'a FormPolynomial {
    type Output = FormPolynomial;
    fn mul(self, rhs: &'a FormPolynomial) -> FormPolynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial product")
    }
}

impl Neg for &FormPolynomial {
    type Output = FormPolynomial;
    fn neg(self) -> FormPolynomial {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        FormPolynomial {
            ring: self.ring.clone(),
            terms,
        }
    }
}

impl fmt::Display for FormPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Lowest degree first, which reads naturally for truncated forms.
        let mut items: Vec<(&Exponents, &Rational)> = self.terms.iter().collect();
        items.sort_by_key(|(e, _)| self.ring.degree(e));
        for (n, (e, c)) in items.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.ring.generators())
                .filter(|(k, _)| **k > 0)
                .map(|(k, g)| {
                    if *k == 1 {
                        g.name.clone()
                    } else {
                        format!("{}^{}", g.name, k)
                    }
                })
                .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
