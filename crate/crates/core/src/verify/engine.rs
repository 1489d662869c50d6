//! Coefficient extraction and exact linear algebra shared by the certifiers.
//!
//! A top-degree coefficient is turned into a [`Sample`]: its coordinates keyed
//! by `(seed, monomial)`. Symbolic backends contribute one coordinate per
//! monomial under seed 0; the random backend contributes the value at each
//! seed. Relations among coefficients are then plain linear algebra on samples,
//! identical for every backend.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{par, Exponents, FormPolynomial, FormQSeries, Rational};
use crate::charcalc::{
    q_series, q_series_with, roots_to_power_sums, Backend, GeometrySpec, Model, Normalization, Side,
};
use crate::error::Result;

pub type Key = (u64, Exponents);

/// Coordinates of a form, sparse and exact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sample(pub BTreeMap<Key, Rational>);

impl Sample {
    pub fn from_poly(p: &FormPolynomial, seed: u64) -> Self {
        Self(p.terms().map(|(e, c)| ((seed, e.clone()), c.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Moves every coordinate into a separate block `tag`, so samples of
    /// independent quantities can be merged without colliding.
    pub fn tagged(&self, tag: u64) -> Self {
        Self(
            self.0
                .iter()
                .map(|((s, e), v)| ((s | (tag << 40), e.clone()), v.clone()))
                .collect(),
        )
    }

    /// Joins samples over disjoint seeds.
    pub fn merge(mut self, other: &Sample) -> Self {
        for (k, v) in &other.0 {
            self.add_at(k.clone(), v.clone());
        }
        self
    }

    fn add_at(&mut self, k: Key, v: Rational) {
        if v.is_zero() {
            return;
        }
        let entry = self.0.entry(k.clone()).or_insert_with(Rational::zero);
        *entry += v;
        if entry.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn scaled_add(&self, other: &Sample, c: &Rational) -> Sample {
        let mut out = self.clone();
        for (k, v) in &other.0 {
            out.add_at(k.clone(), v * c);
        }
        out
    }

    pub fn get(&self, k: &Key) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Residual `self - Σ c_i basis_i`.
    pub fn residual(&self, basis: &[Sample], c: &[Rational]) -> Sample {
        basis
            .iter()
            .zip(c)
            .fold(self.clone(), |acc, (b, ci)| acc.scaled_add(b, &-ci))
    }

    /// Short description for reports.
    pub fn describe(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let shown: Vec<String> = self
            .0
            .iter()
            .take(3)
            .map(|((s, e), v)| format!("{v} at seed {s} monomial {:?}", e.as_slice()))
            .collect();
        format!("{} nonzero coordinates, e.g. {}", self.0.len(), shown.join(", "))
    }
}

/// Outcome of solving `target = Σ c_i basis_i` from data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    /// The basis samples have rank below their count; some coordinates of `c` are free.
    Undetermined {
        consistent: bool,
    },
    Inconsistent,
}

/// Exact least-structure solve: Gaussian elimination over all coordinates.
pub fn solve_from_data(basis: &[Sample], target: &Sample) -> Solution {
    let d = basis.len();
    let mut keys: Vec<&Key> = basis.iter().flat_map(|b| b.0.keys()).chain(target.0.keys()).collect();
    keys.sort();
    keys.dedup();
    let mut rows: Vec<Vec<Rational>> = keys
        .iter()
        .map(|k| {
            basis
                .iter()
                .map(|b| b.get(k))
                .chain(std::iter::once(target.get(k)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for col in 0..d {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[d].is_zero());
    if !consistent {
        return Solution::Inconsistent;
    }
    if rank < d {
        return Solution::Undetermined { consistent };
    }
    let mut c = vec![Rational::zero(); d];
    for (i, &col) in pivots.iter().enumerate() {
        c[col] = rows[i][d].clone();
    }
    Solution::Unique(c)
}

/// Seeds used by a backend: five consecutive seeds for the random backend.
pub fn seeds_for(backend: Backend, seed: u64, count: u32) -> Vec<u64> {
    match backend {
        Backend::Random => (0..count as u64).map(|i| seed + i).collect(),
        _ => Vec::new(),
    }
}

/// Default backend by dimension.
pub fn default_backend(dimension: u32) -> Backend {
    if dimension <= 14 {
        Backend::PowerSum
    } else {
        Backend::Random
    }
}

/// Evaluates forms built from a model in constrained power-sum (or random)
/// coordinates, one sample per form, merged over the random seeds.
///
/// Roots models are converted to power sums before the constraint, so every
/// symbolic backend produces samples over the same monomials.
pub fn sample_forms<F>(spec: &GeometrySpec, seeds: &[u64], build: F) -> Result<Vec<Sample>>
where
    F: Fn(&Model) -> Result<Vec<FormPolynomial>> + Sync + Send,
{
    let per_seed = |seed: &u64| -> Result<Vec<Sample>> {
        let s = spec.clone().with_seed(*seed);
        let model = Model::new(&s)?;
        let target = match s.backend {
            Backend::Roots => Some(Model::new(&s.clone().with_backend(Backend::PowerSum))?),
            _ => None,
        };
        let key = if s.backend == Backend::Random { *seed } else { 0 };
        build(&model)?
            .iter()
            .map(|f| {
                let constrained = match &target {
                    Some(ps) => ps.apply_constraint(&roots_to_power_sums(f, &model, ps)?)?,
                    None => model.apply_constraint(f)?,
                };
                Ok(Sample::from_poly(&constrained, key))
            })
            .collect()
    };
    let list: Vec<u64> = if spec.backend == Backend::Random {
        seeds.to_vec()
    } else {
        vec![spec.seed]
    };
    let mut merged: Vec<Sample> = Vec::new();
    for r in par::map_collect(&list, per_seed) {
        let r = r?;
        if merged.is_empty() {
            merged = r;
        } else {
            for (m, s) in merged.iter_mut().zip(&r) {
                *m = std::mem::take(m).merge(s);
            }
        }
    }
    Ok(merged)
}

/// Constrained components of one side: `result[i][n]` is the degree
/// `degrees[i]` part of the `q^n` coefficient.
pub fn extract(
    spec: &GeometrySpec,
    seeds: &[u64],
    side: Side,
    norm: Normalization,
    degrees: &[u32],
) -> Result<Vec<Vec<Sample>>> {
    let q = spec.q_order as usize;
    let flat = sample_forms(spec, seeds, |model| {
        let series = q_series_with(model, side, norm)?;
        Ok(degrees
            .iter()
            .flat_map(|&d| (0..=q as u32).map(move |n| (d, n)))
            .map(|(d, n)| series.q_coefficient(n).degree_component(d))
            .collect())
    })?;
    Ok(flat.chunks(q + 1).map(|c| c.to_vec()).collect())
}

/// Both sides of a geometry, unconstrained, for the side-equality check.
pub fn both_sides(spec: &GeometrySpec) -> Result<(Model, FormQSeries, FormQSeries)> {
    let model = Model::new(spec)?;
    let bundle = q_series(&model, Side::Bundle)?;
    let theta = q_series(&model, Side::Theta)?;
    Ok((model, bundle, theta))
}

/// `E4^a E6^b`-type integer coefficient vector applied to samples:
/// `Σ_j f_{n-j} m_j` for `n = 0..=q`.
pub fn convolve(f: &[Sample], m: &[Rational]) -> Vec<Sample> {
    (0..f.len())
        .map(|n| {
            (0..=n).fold(Sample::default(), |acc, j| match m.get(j) {
                Some(c) if !c.is_zero() => acc.scaled_add(&f[n - j], c),
                _ => acc,
            })
        })
        .collect()
}

/// First index where two sample lists differ.
pub fn first_difference(a: &[Sample], b: &[Sample]) -> Option<usize> {
    (0..a.len().max(b.len())).find(|&i| a.get(i) != b.get(i))
}
