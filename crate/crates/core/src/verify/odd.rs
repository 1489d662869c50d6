//! Odd-dimensional identities at the symbol level.
//!
//! The transgressed character of `Q(E)` is an opaque graded symbol: its
//! degree `4r - 1` component is modeled as `σ_r · M` with `M` any weight-`2r`
//! modular form. The even form factor's degree `dim + 1 - 4r` component then
//! pairs with it, and every pairing must satisfy the weight-`w` relation with
//! one common constant. `r = 1` drops out since there are no weight-2 forms.

use std::time::Instant;

use num_bigint::BigInt;

use super::certificate::{Certificate, Check};
use super::engine::{convolve, extract, seeds_for, Sample};
use super::expressions::Printed;
use super::registry::Entry;
use super::theorem::{geometry_assumptions, registry_check, relation_checks, solve_constants};
use super::{elapsed_ms, VerifyOptions};
use crate::algebra::Rational;
use crate::bundle::{Atom, BundleExpr};
use crate::charcalc::{expand_qe, geometry_ranks, q_bundle_series, GeometrySpec, Normalization, Side, Variant};
use crate::error::Result;
use crate::modular::{basis, basis_pairs, coefficient_relation};

/// Printed first coefficient of the even factor.
fn even_q1(p: &Printed, spec: &GeometrySpec) -> Result<BundleExpr> {
    match (spec.variant, spec.l) {
        (Variant::QOdd, 1) => p.q_l1_q1(),
        (Variant::QOdd, _) => p.q_l2_q1(),
        (Variant::QOddTwoBundle, _) => p.q_two_q1(),
        (Variant::Q1Odd, 1) => p.q1_l1_q1(),
        (Variant::Q1Odd, _) => p.q1_l2_q1(),
        _ => p.q1_two_q1(),
    }
}

/// q⁰ and q¹ of `(even factor) ⊗ Q(E)` against `Δ(E)` and
/// `Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ) + X ⊗ Δ(E)`, for `rank E = n_rank`.
fn structural_checks(spec: &GeometrySpec, n_rank: u32) -> Result<Vec<Check>> {
    let ranks = geometry_ranks(spec)
        .with(Atom::EC, n_rank)
        .with(Atom::DeltaE, BigInt::from(2u32).pow(n_rank / 2));
    let p = Printed::new(&ranks);
    let series = q_bundle_series(spec, Normalization::UnitLeading)?.mul(&expand_qe(n_rank, spec.q_order)?);
    let delta = BundleExpr::atom(Atom::DeltaE);
    let rhs = delta.clone();
    let lhs = &delta * &p.e_q1()? + &even_q1(&p, spec)? * &delta;
    let mut out = Vec::new();
    for (n, side, expected) in [(0, "right-hand side", rhs), (1, "left-hand side", lhs)] {
        let diff = &series.q_coefficient(n) - &expected;
        out.push(Check::new(
            format!("rank E = {n_rank}: q^{n} is the {side}"),
            diff.is_zero(),
            if diff.is_zero() {
                "0".into()
            } else {
                format!("computed - stated = {diff}")
            },
        ));
    }
    Ok(out)
}

/// Pairings `F^{(dim+1-4r)} ⋆ M` for every `r ≥ 2` and basis form `M` of
/// weight `2r`, each tagged so that their coordinates stay distinct.
fn pairings(spec: &GeometrySpec, seeds: &[u64], side: Side, norm: Normalization) -> Result<(Vec<Sample>, Vec<String>)> {
    let rs: Vec<u32> = (2..=(spec.dimension + 1) / 4).collect();
    let degrees: Vec<u32> = rs.iter().map(|r| spec.dimension + 1 - 4 * r).collect();
    let parts = extract(spec, seeds, side, norm, &degrees)?;
    let mut combined = vec![Sample::default(); spec.q_order as usize + 1];
    let mut used = Vec::new();
    let mut tag = 0u64;
    for (r, f) in rs.iter().zip(&parts) {
        for ((a, b), m) in basis(2 * r, spec.q_order)? {
            tag += 1;
            let m: Vec<Rational> = m.into_iter().map(Rational::from_integer).collect();
            for (acc, s) in combined.iter_mut().zip(convolve(f, &m)) {
                *acc = std::mem::take(acc).merge(&s.tagged(tag));
            }
            used.push(format!("degree {} with E4^{a}E6^{b}", spec.dimension + 1 - 4 * r));
        }
    }
    Ok((combined, used))
}

/// Certifies an odd-dimensional registry entry.
pub fn verify_odd(entry: &Entry, opts: &VerifyOptions) -> Result<Certificate> {
    let start = Instant::now();
    let spec = opts.spec_for(entry);
    let weight = spec.weight()?;
    let rel = coefficient_relation(weight, spec.q_order)?;
    let seeds = seeds_for(spec.backend, spec.seed, opts.seed_count);

    let mut cert = Certificate::new(entry.id);
    cert.dimension = Some(spec.dimension);
    cert.l = Some(entry.l);
    cert.variant = Some(entry.variant.name().into());
    cert.weight = Some(weight);
    cert.basis = basis_pairs(weight).into_iter().map(|(a, b)| [a, b]).collect();
    cert.backend = spec.backend.name().into();
    cert.seeds = seeds.clone();
    let r = entry.expected.first().map(|(_, v)| *v).unwrap_or_default();
    cert.statement = format!(
        "{} = {r} {{Â e^{{c/2}} ch(Δ(E), g, d)}}⁽{}⁾",
        entry.statement, spec.dimension
    );
    cert.assumptions = geometry_assumptions(&spec, weight);
    cert.assumptions.extend([
        "Z simply connected".to_string(),
        "c3(E, g, d) = 0".to_string(),
        "the degree 4r - 1 part of the transgressed character of Q(E) is a weight-2r modular form times a fixed symbol"
            .to_string(),
    ]);
    cert.notes
        .push("ch(Δ(E), g, d) is kept as an opaque graded symbol; its internal normalization is not checked".into());

    for n_rank in [4, 6] {
        cert.checks.extend(structural_checks(&spec, n_rank)?);
    }

    let (a, used) = pairings(&spec, &seeds, Side::Theta, Normalization::Summed)?;
    cert.notes.push(format!("pairings: {}", used.join("; ")));
    relation_checks(&mut cert, &a, &rel);
    solve_constants(&mut cert, &a, &rel, entry.expected);
    cert.checks.push(registry_check(&rel, entry.expected));

    let (bundle, _) = pairings(&spec, &seeds, Side::Bundle, Normalization::Summed)?;
    cert.checks.push(Check::new(
        "bundle side equals theta side",
        bundle == a,
        if bundle == a { "0" } else { "pairings differ" },
    ));

    let (ul, _) = pairings(&spec, &seeds, Side::Bundle, Normalization::UnitLeading)?;
    let d = rel.basis_size;
    let residuals: Vec<Sample> = rel
        .orders()
        .into_iter()
        .map(|n| ul[n as usize].residual(&ul[..d], rel.row(n).expect("order")))
        .collect();
    let holds = residuals.iter().all(Sample::is_zero);
    cert.checks.push(Check::info(
        "relation with leading bracket term 1",
        holds,
        if holds {
            "0".into()
        } else {
            residuals.iter().map(Sample::describe).collect::<Vec<_>>().join("; ")
        },
    ));

    cert.finalize();
    cert.ms = elapsed_ms(start, opts);
    Ok(cert)
}
