use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::family::{univariate_ring, FamilyRep, RootFamily};
use super::{Backend, GeometrySpec, Lcg, XiConvention};
use crate::algebra::{factorial, rat, ratio, FormPolynomial, FormQSeries, Generator, PolyRing, Rational};
use crate::bundle::{Atom, BundleExpr, QFamily, RankContext};
use crate::error::{Error, Result};
use crate::theta::{exp_scaled, t_cap_for};

/// How `lambda_sym_series` evaluates a tensor-product family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Root products where possible, Adams operations otherwise.
    Auto,
    /// `exp(Σ_k ± t^{ke}/k ψ^k ch W)`.
    Adams,
    /// Explicit factors `1 ± e^ρ t^e` per root `ρ`. Roots backend only.
    Roots,
}

/// A geometry realized in one backend: the ring, its root families, the line
/// class and the anomaly constraint.
#[derive(Clone, Debug)]
pub struct Model {
    spec: GeometrySpec,
    ring: Arc<PolyRing>,
    tangent: RootFamily,
    line: FormPolynomial,
    bundles: Vec<RootFamily>,
    constraint: Option<(usize, FormPolynomial)>,
    t_cap: u32,
}

fn bundle_label(spec: &GeometrySpec, i: usize) -> String {
    if spec.variant.bundle_count() == 1 {
        "V".to_string()
    } else {
        format!("V{}", i + 1)
    }
}

/// Generators of the power-sum ring, in the order random values are drawn.
fn power_sum_generators(spec: &GeometrySpec) -> Vec<Generator> {
    let k = spec.degree_cap() / 4;
    let mut gens: Vec<Generator> = (1..=k).map(|m| Generator::power_sum(format!("p{m}(T)"), m)).collect();
    if !spec.spin {
        gens.push(Generator::line_class("c"));
    }
    for i in 0..spec.variant.bundle_count() {
        let label = bundle_label(spec, i);
        gens.extend((1..=k).map(|m| Generator::power_sum(format!("p{m}({label})"), m)));
    }
    gens
}

/// Random values of the power-sum generators for `seed`, with the anomaly
/// constraint imposed on the first gauge bundle.
fn random_values(spec: &GeometrySpec, seed: u64) -> Vec<Rational> {
    let gens = power_sum_generators(spec);
    let mut lcg = Lcg::new(seed);
    let mut values: Vec<Rational> = gens.iter().map(|_| lcg.next_rational()).collect();
    let find = |name: &str| gens.iter().position(|g| g.name == name);
    if let Some(v1) = find(&format!("p1({})", bundle_label(spec, 0))) {
        let t = find("p1(T)").map(|i| values[i].clone()).unwrap_or_else(Rational::zero);
        let c = find("c").map(|i| values[i].clone()).unwrap_or_else(Rational::zero);
        let mut forced = t - rat(spec.variant.line_coefficient()) * &c * &c;
        if spec.variant.bundle_count() == 2 {
            if let Some(v2) = find(&format!("p1({})", bundle_label(spec, 1))) {
                forced -= &values[v2];
            }
        }
        values[v1] = forced;
    }
    values
}

/// Evaluates a power-sum form at the seeded random point of `spec`.
pub fn random_evaluate(f: &FormPolynomial, spec: &GeometrySpec, seed: u64) -> Result<Rational> {
    f.evaluate(&random_values(spec, seed))
}

impl Model {
    pub fn new(spec: &GeometrySpec) -> Result<Self> {
        spec.validate()?;
        let cap = spec.degree_cap();
        let n = spec.tangent_root_count();
        let nv = spec.bundle_root_count();
        let bundles = spec.variant.bundle_count();
        let t_cap = t_cap_for(spec.q_order);
        match spec.backend {
            Backend::Roots => {
                let mut gens: Vec<Generator> = (1..=n).map(|j| Generator::chern_root(format!("x{j}"))).collect();
                if !spec.spin {
                    gens.push(Generator::line_class("c"));
                }
                for i in 0..bundles {
                    let prefix = if bundles == 1 {
                        "u".to_string()
                    } else {
                        format!("u{}_", i + 1)
                    };
                    gens.extend((1..=nv).map(|a| Generator::chern_root(format!("{prefix}{a}"))));
                }
                let ring = PolyRing::new(gens, cap)?;
                let tangent = RootFamily::new(
                    "T",
                    &ring,
                    n,
                    FamilyRep::Roots((0..n).map(|j| FormPolynomial::generator(&ring, j)).collect()),
                );
                let offset = n + usize::from(!spec.spin);
                let line = if spec.spin {
                    FormPolynomial::zero(&ring)
                } else {
                    FormPolynomial::generator(&ring, n)
                };
                let families = (0..bundles)
                    .map(|i| {
                        let start = offset + i * nv;
                        RootFamily::new(
                            bundle_label(spec, i),
                            &ring,
                            nv,
                            FamilyRep::Roots(
                                (start..start + nv)
                                    .map(|a| FormPolynomial::generator(&ring, a))
                                    .collect(),
                            ),
                        )
                    })
                    .collect();
                Ok(Self {
                    spec: spec.clone(),
                    ring,
                    tangent,
                    line,
                    bundles: families,
                    constraint: None,
                    t_cap,
                })
            }
            Backend::PowerSum => {
                let gens = power_sum_generators(spec);
                let ring = PolyRing::new(gens, cap)?;
                let k = (cap / 4) as usize;
                let gen = |name: String| ring.index_of(&name).map(|i| FormPolynomial::generator(&ring, i));
                let images = |label: &str| -> Vec<FormPolynomial> {
                    (1..=k)
                        .map(|m| gen(format!("p{m}({label})")).expect("generator present"))
                        .collect()
                };
                let tangent = RootFamily::new("T", &ring, n, FamilyRep::PowerSums(images("T")));
                let line = gen("c".into()).unwrap_or_else(|| FormPolynomial::zero(&ring));
                let families: Vec<RootFamily> = (0..bundles)
                    .map(|i| {
                        let label = bundle_label(spec, i);
                        RootFamily::new(label.clone(), &ring, nv, FamilyRep::PowerSums(images(&label)))
                    })
                    .collect();
                let constraint = ring.index_of(&format!("p1({})", bundle_label(spec, 0))).map(|idx| {
                    let mut rep = &tangent.power_sum(1) - &(&line * &line).scale(&rat(spec.variant.line_coefficient()));
                    if bundles == 2 {
                        rep = &rep - &families[1].power_sum(1);
                    }
                    (idx, rep)
                });
                Ok(Self {
                    spec: spec.clone(),
                    ring,
                    tangent,
                    line,
                    bundles: families,
                    constraint,
                    t_cap,
                })
            }
            Backend::Random => {
                let ring = PolyRing::new(vec![Generator::line_class("s")], cap)?;
                let s = FormPolynomial::generator(&ring, 0);
                let gens = power_sum_generators(spec);
                let values = random_values(spec, spec.seed);
                let image = |name: &str| -> FormPolynomial {
                    match gens.iter().position(|g| g.name == name) {
                        Some(i) => s.pow(gens[i].degree / 2).scale(&values[i]),
                        None => FormPolynomial::zero(&ring),
                    }
                };
                let k = cap / 4;
                let images = |label: &str| -> Vec<FormPolynomial> {
                    (1..=k).map(|m| image(&format!("p{m}({label})"))).collect()
                };
                let tangent = RootFamily::new("T", &ring, n, FamilyRep::PowerSums(images("T")));
                let line = image("c");
                let families = (0..bundles)
                    .map(|i| {
                        let label = bundle_label(spec, i);
                        RootFamily::new(label.clone(), &ring, nv, FamilyRep::PowerSums(images(&label)))
                    })
                    .collect();
                Ok(Self {
                    spec: spec.clone(),
                    ring,
                    tangent,
                    line,
                    bundles: families,
                    constraint: None,
                    t_cap,
                })
            }
        }
    }

    pub fn spec(&self) -> &GeometrySpec {
        &self.spec
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn t_cap(&self) -> u32 {
        self.t_cap
    }

    pub fn tangent(&self) -> &RootFamily {
        &self.tangent
    }

    pub fn bundles(&self) -> &[RootFamily] {
        &self.bundles
    }

    /// The line class `c` (zero in the spin reading).
    pub fn line(&self) -> &FormPolynomial {
        &self.line
    }

    /// Imposes the anomaly constraint on a form of this model.
    ///
    /// Power sums: substitutes `P1(V1)`. Random: already imposed by the
    /// valuation. Roots: not expressible, convert first.
    pub fn apply_constraint(&self, f: &FormPolynomial) -> Result<FormPolynomial> {
        match self.spec.backend {
            Backend::PowerSum => match &self.constraint {
                Some((idx, rep)) => f.substitute(*idx, rep),
                None => Ok(f.clone()),
            },
            Backend::Random => Ok(f.clone()),
            Backend::Roots => Err(Error::Conversion("constraint needs power-sum coordinates".into())),
        }
    }

    /// `Â(TZ)`.
    pub fn ahat(&self) -> Result<FormPolynomial> {
        let u = univariate_ring(self.ring.degree_cap());
        let z = FormPolynomial::generator(&u, 0);
        let z2 = &z * &z;
        let mut power = FormPolynomial::one(&u);
        let mut sinhc = FormPolynomial::zero(&u);
        let mut i = 0;
        while !power.is_zero() {
            sinhc = &sinhc + &power.scale(&(factorial(2 * i + 1).recip() / rat(4).pow(i as i32)));
            power = &power * &z2;
            i += 1;
        }
        self.tangent.multiplicative(&sinhc.inverse()?)
    }

    /// `e^{c/2}`.
    pub fn exp_half_line(&self) -> FormPolynomial {
        exp_scaled(&self.line, &ratio(1, 2))
    }

    /// Roots of an atom as a list of weights; zero weights stand for trivial summands.
    fn atom_roots(&self, atom: Atom) -> Result<Vec<FormPolynomial>> {
        let pm =
            |roots: &[FormPolynomial]| -> Vec<FormPolynomial> { roots.iter().flat_map(|r| [r.clone(), -r]).collect() };
        match atom {
            Atom::TangentC => {
                let roots = self
                    .tangent
                    .roots()
                    .ok_or_else(|| Error::Conversion("no explicit roots".into()))?;
                let mut all = pm(roots);
                let zeros = self.spec.dimension as usize - 2 * roots.len();
                all.extend(std::iter::repeat_n(FormPolynomial::zero(&self.ring), zeros));
                Ok(all)
            }
            Atom::XiC => match self.spec.xi {
                XiConvention::Complexified => Ok(vec![self.line.clone(), -&self.line]),
                XiConvention::Line => Ok(vec![self.line.clone()]),
            },
            Atom::VC(i) => {
                let fam = self.bundle(i)?;
                let roots = fam
                    .roots()
                    .ok_or_else(|| Error::Conversion("no explicit roots".into()))?;
                Ok(pm(roots))
            }
            other => Err(Error::UnsupportedPlethysm(format!("{other} has no root decomposition"))),
        }
    }

    fn bundle(&self, i: u8) -> Result<&RootFamily> {
        let idx = i.max(1) as usize - 1;
        self.bundles
            .get(idx)
            .ok_or_else(|| Error::UnknownAtom(Atom::VC(i).to_string()))
    }

    /// Chern character of an atom.
    pub fn ch_atom(&self, atom: Atom) -> Result<FormPolynomial> {
        match atom {
            Atom::TangentC => {
                let zeros = self.spec.dimension as i64 - 2 * self.tangent.count as i64;
                Ok(&self.tangent.ch_pairs() + &FormPolynomial::constant(&self.ring, rat(zeros)))
            }
            Atom::XiC => {
                let plus = exp_scaled(&self.line, &Rational::one());
                Ok(match self.spec.xi {
                    XiConvention::Complexified => &plus + &exp_scaled(&self.line, &-Rational::one()),
                    XiConvention::Line => plus,
                })
            }
            Atom::VC(i) => Ok(self.bundle(i)?.ch_pairs()),
            Atom::DeltaV(i) => self.spinor_ch(i),
            other => Err(Error::UnknownAtom(other.to_string())),
        }
    }

    /// `ch(Δ(V_i)) = ∏ (e^{u/2} + e^{-u/2})`.
    pub fn spinor_ch(&self, i: u8) -> Result<FormPolynomial> {
        let u = univariate_ring(self.ring.degree_cap());
        let z = FormPolynomial::generator(&u, 0);
        let half = ratio(1, 2);
        let f = &exp_scaled(&z, &half) + &exp_scaled(&z, &-half);
        self.bundle(i)?.multiplicative(&f)
    }

    /// Chern character of a bundle expression.
    pub fn ch(&self, expr: &BundleExpr) -> Result<FormPolynomial> {
        ch_with(expr, &self.ring, &|a| self.ch_atom(a))
    }

    /// Chern character of `⊗_n Λ_{±t^{e_n}}(w)` or `⊗_n S_{t^{e_n}}(w)`.
    pub fn lambda_sym_series(&self, w: &BundleExpr, family: QFamily, route: Route) -> Result<FormQSeries> {
        let route = match route {
            Route::Auto if self.spec.backend == Backend::Roots => {
                let linear_in_roots = w
                    .linear_parts()
                    .map(|(_, atoms)| {
                        atoms
                            .iter()
                            .all(|(a, _)| matches!(a, Atom::TangentC | Atom::XiC | Atom::VC(_)))
                    })
                    .unwrap_or(false);
                if linear_in_roots {
                    Route::Roots
                } else {
                    Route::Adams
                }
            }
            Route::Auto => Route::Adams,
            r => r,
        };
        match route {
            Route::Roots => self.lambda_sym_roots(w, family),
            _ => adams_family_series(&self.ch(w)?, family, self.t_cap),
        }
    }

    fn lambda_sym_roots(&self, w: &BundleExpr, family: QFamily) -> Result<FormQSeries> {
        let (n0, atoms) = w.linear_parts()?;
        let mut weighted: Vec<(FormPolynomial, BigInt)> = Vec::new();
        if !n0.is_zero() {
            weighted.push((FormPolynomial::zero(&self.ring), n0));
        }
        for (a, n) in atoms {
            for r in self.atom_roots(a)? {
                weighted.push((r, n.clone()));
            }
        }
        let cap = self.t_cap;
        let sign = if family.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut acc = FormQSeries::one(&self.ring, cap);
        for e in family.t_exponents(cap) {
            for (rho, mult) in &weighted {
                let er = exp_scaled(rho, &Rational::one());
                let positive = mult > &BigInt::zero();
                let magnitude = if positive { mult.clone() } else { -mult };
                let times = u64::try_from(&magnitude).map_err(|_| Error::Domain("multiplicity too large".into()))?;
                for _ in 0..times {
                    acc = match (family, positive) {
                        (QFamily::SymInt, true) => acc.checked_mul(&geometric(&er, e, cap))?,
                        (QFamily::SymInt, false) => acc.mul_binomial(&-&er, e),
                        (_, true) => acc.mul_binomial(&er.scale(&sign), e),
                        (_, false) => acc.checked_mul(&geometric(&-&er.scale(&sign), e, cap))?,
                    };
                }
            }
        }
        Ok(acc)
    }

    /// `ch(λ^k(A))` from elementary symmetric functions of `e^ρ`. Roots backend only.
    pub fn ch_lambda_by_roots(&self, atom: Atom, k: u32) -> Result<FormPolynomial> {
        let roots = self.atom_roots(atom)?;
        let mut e: Vec<FormPolynomial> = vec![FormPolynomial::one(&self.ring)];
        for r in roots {
            let er = exp_scaled(&r, &Rational::one());
            let mut next = e.clone();
            next.push(FormPolynomial::zero(&self.ring));
            for j in 1..next.len() {
                next[j] = &e.get(j).cloned().unwrap_or_else(|| FormPolynomial::zero(&self.ring)) + &(&e[j - 1] * &er);
            }
            e = next;
        }
        Ok(e.get(k as usize)
            .cloned()
            .unwrap_or_else(|| FormPolynomial::zero(&self.ring)))
    }
}

impl RankContext for Model {
    fn atom_rank(&self, atom: Atom) -> Result<BigInt> {
        match atom {
            Atom::TangentC => Ok(self.spec.dimension.into()),
            Atom::XiC => Ok(match self.spec.xi {
                XiConvention::Complexified => 2.into(),
                XiConvention::Line => 1.into(),
            }),
            Atom::VC(i) => self.bundle(i).map(|f| (2 * f.count).into()),
            Atom::DeltaV(i) => self.bundle(i).map(|f| BigInt::from(2u32).pow(f.count as u32)),
            other => Err(Error::UnknownAtom(other.to_string())),
        }
    }
}

/// `1 / (1 - a t^e)` truncated at `cap`.
fn geometric(a: &FormPolynomial, e: u32, cap: u32) -> FormQSeries {
    let mut s = FormQSeries::zero(a.ring(), cap);
    let mut power = FormPolynomial::one(a.ring());
    let mut k = 0;
    while k * e <= cap && !power.is_zero() {
        s = s
            .checked_add(&FormQSeries::monomial(power.clone(), k * e, cap))
            .expect("same ring");
        power = &power * a;
        k += 1;
    }
    s
}

/// Chern character of a bundle expression given the characters of its atoms.
///
/// `ch λ^k(A)` follows from Newton's identity
/// `k λ^k = Σ_{i=1}^k (-1)^{i-1} λ^{k-i} ψ^i`.
pub fn ch_with(
    expr: &BundleExpr,
    ring: &Arc<PolyRing>,
    atom_ch: &dyn Fn(Atom) -> Result<FormPolynomial>,
) -> Result<FormPolynomial> {
    let mut lambdas: BTreeMap<Atom, Vec<FormPolynomial>> = BTreeMap::new();
    let mut total = FormPolynomial::zero(ring);
    for (monomial, coeff) in expr.terms() {
        let mut term = FormPolynomial::constant(ring, Rational::from_integer(coeff.clone()));
        for (var, e) in monomial {
            lambdas
                .entry(var.atom)
                .or_insert_with(|| vec![FormPolynomial::one(ring)]);
            let base = atom_ch(var.atom)?;
            let list = lambdas.get_mut(&var.atom).expect("inserted");
            while list.len() <= var.power as usize {
                let k = list.len();
                let mut acc = FormPolynomial::zero(ring);
                for i in 1..=k {
                    let sign = if i % 2 == 1 { 1 } else { -1 };
                    acc = &acc + &(&list[k - i] * &base.adams(i as u32)).scale(&rat(sign));
                }
                list.push(acc.scale(&ratio(1, k as i64)));
            }
            term = &term * &list[var.power as usize].pow(*e);
        }
        total = &total + &term;
    }
    Ok(total)
}

/// `exp(Σ_n Σ_k w_k t^{k e_n} ψ^k(ch W))` for one tensor-product family.
pub fn adams_family_series(ch_w: &FormPolynomial, family: QFamily, t_cap: u32) -> Result<FormQSeries> {
    let ring = ch_w.ring();
    let mut log = FormQSeries::zero(ring, t_cap);
    for e in family.t_exponents(t_cap) {
        let mut k = 1;
        while k * e <= t_cap {
            let w = match family {
                QFamily::SymInt => ratio(1, k as i64),
                QFamily::LambdaInt { negative } | QFamily::LambdaHalf { negative } => {
                    let base = if k % 2 == 1 { 1 } else { -1 };
                    let sign = if negative && k % 2 == 1 { -base } else { base };
                    ratio(sign, k as i64)
                }
            };
            log = log.checked_add(&FormQSeries::monomial(ch_w.adams(k).scale(&w), k * e, t_cap))?;
            k += 1;
        }
    }
    log.exp()
}
