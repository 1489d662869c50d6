use std::sync::Arc;

use smallvec::SmallVec;

use super::Model;
use crate::algebra::{rat, ratio, Exponents, FormPolynomial, PolyRing};
use crate::error::{Error, Result};

/// One root family to convert: source generator indices of the roots and the
/// target images of `P_1, P_2, ...`.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub root_generators: Vec<usize>,
    pub power_sums: Vec<FormPolynomial>,
}

/// Rewrites a form that is symmetric and even in each root family as a
/// polynomial in the even power sums.
///
/// Families are eliminated one at a time by leading terms: the
/// lex-largest exponent pattern `(2λ_1, 2λ_2, ...)` of a family is removed
/// with `∏ e_i^{λ_i - λ_{i+1}}` in the squared roots, and each `e_k` is
/// rewritten in power sums by Newton's identities. Generators outside all
/// families go to `passthrough`.
pub fn newton_convert(
    f: &FormPolynomial,
    families: &[FamilyMap],
    passthrough: &[(usize, FormPolynomial)],
    target: &Arc<PolyRing>,
) -> Result<FormPolynomial> {
    let source = f.ring().clone();
    let mut covered = vec![false; source.len()];
    for fam in families {
        for &g in &fam.root_generators {
            covered[g] = true;
        }
    }
    for (g, _) in passthrough {
        covered[*g] = true;
    }
    if covered.iter().any(|c| !c) {
        return Err(Error::Conversion("generator not covered by any family".into()));
    }
    convert_rec(f, families, passthrough, target)
}

fn convert_rec(
    f: &FormPolynomial,
    families: &[FamilyMap],
    passthrough: &[(usize, FormPolynomial)],
    target: &Arc<PolyRing>,
) -> Result<FormPolynomial> {
    let source = f.ring().clone();
    let Some((fam, rest)) = families.split_first() else {
        let mut images: Vec<FormPolynomial> = vec![FormPolynomial::zero(target); source.len()];
        for (g, img) in passthrough {
            images[*g] = img.clone();
        }
        return f.map_into(target, &images);
    };
    let n = fam.root_generators.len();
    let e_source = elementary_in_squares(&source, &fam.root_generators);
    let e_target = elementary_from_power_sums(target, &fam.power_sums, n);

    let mut remaining = f.clone();
    let mut out = FormPolynomial::zero(target);
    while !remaining.is_zero() {
        let pattern = |e: &Exponents| -> SmallVec<[u8; 24]> { fam.root_generators.iter().map(|&g| e[g]).collect() };
        let lead = remaining.terms().map(|(e, _)| pattern(e)).max().expect("nonempty");
        if lead.iter().any(|x| x % 2 != 0) {
            return Err(Error::Conversion(format!("odd exponent in family {lead:?}")));
        }
        let lambda: Vec<u8> = lead.iter().map(|x| x / 2).collect();
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Conversion(format!(
                "form is not symmetric (leading pattern {lead:?})"
            )));
        }
        let mut coefficient = FormPolynomial::zero(&source);
        for (e, c) in remaining.terms() {
            if pattern(e) == lead {
                let mut stripped = e.clone();
                for &g in &fam.root_generators {
                    stripped[g] = 0;
                }
                coefficient = &coefficient + &FormPolynomial::monomial(&source, stripped, c.clone());
            }
        }
        let mut e_src = FormPolynomial::one(&source);
        let mut e_tgt = FormPolynomial::one(target);
        for i in 0..n {
            let next = if i + 1 < n { lambda[i + 1] } else { 0 };
            let mult = (lambda[i] - next) as u32;
            if mult > 0 {
                e_src = &e_src * &e_source[i + 1].pow(mult);
                e_tgt = &e_tgt * &e_target[i + 1].pow(mult);
            }
        }
        remaining = &remaining - &(&coefficient * &e_src);
        let converted = convert_rec(&coefficient, rest, passthrough, target)?;
        out = &out + &(&converted * &e_tgt);
    }
    Ok(out)
}

/// `e_0, ..., e_n` of the squares of the given root generators.
fn elementary_in_squares(ring: &Arc<PolyRing>, roots: &[usize]) -> Vec<FormPolynomial> {
    let mut e = vec![FormPolynomial::one(ring)];
    for &g in roots {
        let y = FormPolynomial::generator(ring, g).pow(2);
        let mut next = e.clone();
        next.push(FormPolynomial::zero(ring));
        for j in 1..next.len() {
            let prev = e.get(j).cloned().unwrap_or_else(|| FormPolynomial::zero(ring));
            next[j] = &prev + &(&e[j - 1] * &y);
        }
        e = next;
    }
    e
}

/// `e_0, ..., e_n` in power sums: `k e_k = Σ_{i=1}^k (-1)^{i-1} e_{k-i} P_i`.
fn elementary_from_power_sums(ring: &Arc<PolyRing>, p: &[FormPolynomial], n: usize) -> Vec<FormPolynomial> {
    let power = |i: usize| p.get(i - 1).cloned().unwrap_or_else(|| FormPolynomial::zero(ring));
    let mut e = vec![FormPolynomial::one(ring)];
    for k in 1..=n {
        let mut acc = FormPolynomial::zero(ring);
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            acc = &acc + &(&e[k - i] * &power(i)).scale(&rat(sign));
        }
        e.push(acc.scale(&ratio(1, k as i64)));
    }
    e
}

/// Converts a form of a roots model into the ring of a power-sum model of the
/// same geometry.
pub fn roots_to_power_sums(f: &FormPolynomial, source: &Model, target: &Model) -> Result<FormPolynomial> {
    let src_ring = source.ring();
    let tgt_ring = target.ring();
    let index_of = |p: &FormPolynomial| -> Result<usize> {
        let (e, _) = p.terms().next().ok_or_else(|| Error::Conversion("zero root".into()))?;
        e.iter()
            .position(|&x| x == 1)
            .ok_or_else(|| Error::Conversion("root is not a generator".into()))
    };
    let k = tgt_ring.degree_cap() / 4;
    let mut families = Vec::new();
    let mut pairs = vec![(source.tangent(), target.tangent())];
    pairs.extend(source.bundles().iter().zip(target.bundles()));
    for (s, t) in pairs {
        let roots = s
            .roots()
            .ok_or_else(|| Error::Conversion("source is not a roots model".into()))?;
        families.push(FamilyMap {
            root_generators: roots.iter().map(index_of).collect::<Result<_>>()?,
            power_sums: (1..=k).map(|m| t.power_sum(m)).collect(),
        });
    }
    let mut passthrough = Vec::new();
    if !source.line().is_zero() {
        passthrough.push((index_of(source.line())?, target.line().clone()));
    }
    if !Arc::ptr_eq(src_ring, f.ring()) && **src_ring != **f.ring() {
        return Err(Error::RingMismatch);
    }
    newton_convert(f, &families, &passthrough, tgt_ring)
}
