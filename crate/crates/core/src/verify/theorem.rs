//! Even-dimensional theorems: coefficient relations on the theta side.

use std::time::Instant;

use num_bigint::BigInt;

use super::certificate::{Certificate, Check, Constant, Corollary};
use super::engine::{extract, first_difference, sample_forms, seeds_for, solve_from_data, Sample, Solution};
use super::expressions::Printed;
use super::registry::{Entry, Literal};
use super::{elapsed_ms, VerifyOptions};
use crate::algebra::{FormPolynomial, Rational};
use crate::charcalc::{Backend, GeometrySpec, Model, Normalization, Side, XiConvention};
use crate::error::Result;
use crate::modular::{basis_pairs, coefficient_relation, CoefficientRelation};

/// `-p1(Z) + a p1(ξ_R) + p1(V) = 0` as stated for the variant.
pub(crate) fn constraint_text(spec: &GeometrySpec) -> String {
    let a = spec.variant.line_coefficient();
    let line = if a == 1 {
        "p1(ξ_R)".to_string()
    } else {
        format!("{a}p1(ξ_R)")
    };
    let gauge = if spec.variant.bundle_count() == 2 {
        "p1(V1) + p1(V2)"
    } else {
        "p1(V)"
    };
    format!("-p1(Z) + {line} + {gauge} = 0")
}

/// Assumptions shared by every certificate of a geometry.
pub(crate) fn geometry_assumptions(spec: &GeometrySpec, weight: u32) -> Vec<String> {
    let mut out = vec![
        format!("anomaly constraint {}", constraint_text(spec)),
        format!("modularity over SL(2,Z) of weight {weight} under the constraint (assumed, not proved)"),
    ];
    if spec.spin {
        out.push("Z spin: c = 0".into());
    }
    out.push(match spec.xi {
        XiConvention::Complexified => "ξ_C = ξ_R ⊗ C, rank 2 with roots ±c".into(),
        XiConvention::Line => "ξ_C read as the line bundle, rank 1 with root c".into(),
    });
    out
}

fn parse_label(label: &str) -> Option<(u32, usize)> {
    let (n, i) = label.split_once(':')?;
    Some((n.strip_prefix('a')?.parse().ok()?, i.strip_prefix('a')?.parse().ok()?))
}

pub(crate) fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Relation residuals `a_n - Σ c_{n,i} a_i` for every constrained order.
pub(crate) fn relation_checks(cert: &mut Certificate, a: &[Sample], rel: &CoefficientRelation) {
    let d = rel.basis_size;
    for n in rel.orders() {
        let row = rel.row(n).expect("order within relation");
        let r = a[n as usize].residual(&a[..d], row);
        cert.checks.push(Check::new(
            format!("weight-{} relation at q^{n}", rel.weight),
            r.is_zero(),
            r.describe(),
        ));
    }
    cert.orders_checked = (0..a.len() as u32).collect();
}

/// Solves the constants from the data and aligns them with the stated ones.
pub(crate) fn solve_constants(
    cert: &mut Certificate,
    a: &[Sample],
    rel: &CoefficientRelation,
    expected: &[(&str, i64)],
) {
    let d = rel.basis_size;
    let stated = |label: &str| {
        expected
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, v)| Constant::integer(*v))
    };
    for n in rel.orders() {
        let labels: Vec<String> = (0..d).map(|i| format!("a{n}:a{i}")).collect();
        match solve_from_data(&a[..d], &a[n as usize]) {
            Solution::Unique(c) => {
                for (label, ci) in labels.iter().zip(c) {
                    cert.constants.push(label.clone(), stated(label), Some(Constant(ci)));
                }
            }
            Solution::Undetermined { .. } => {
                cert.constants.undetermined = true;
                // Stated constants (or the relation where none are stated) must still fit.
                let coeffs: Vec<Rational> = labels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        stated(l)
                            .map(|c| c.0)
                            .unwrap_or_else(|| rel.row(n).expect("order")[i].clone())
                    })
                    .collect();
                let r = a[n as usize].residual(&a[..d], &coeffs);
                cert.checks.push(Check::new(
                    format!("stated constants consistent at q^{n}"),
                    r.is_zero(),
                    format!("data does not determine the constants; residual {}", r.describe()),
                ));
                for label in &labels {
                    cert.constants.push(label.clone(), stated(label), None);
                }
            }
            Solution::Inconsistent => {
                cert.checks.push(Check::new(
                    format!("constants solvable at q^{n}"),
                    false,
                    "no constants fit the data",
                ));
                for label in &labels {
                    cert.constants.push(label.clone(), stated(label), None);
                }
            }
        }
    }
    for (label, v) in expected {
        if !cert.constants.labels.iter().any(|l| l == label) {
            cert.constants.push(*label, Some(Constant::integer(*v)), None);
        }
    }
}

/// Stated constants agree with the relation of the entry's weight.
pub(crate) fn registry_check(rel: &CoefficientRelation, expected: &[(&str, i64)]) -> Check {
    let mismatches: Vec<String> = expected
        .iter()
        .filter(|(label, v)| {
            let Some((n, i)) = parse_label(label) else { return true };
            rel.row(n).and_then(|row| row.get(i)) != Some(&rational(*v))
        })
        .map(|(label, v)| format!("{label} = {v}"))
        .collect();
    Check::new(
        format!("stated constants equal the weight-{} relation", rel.weight),
        mismatches.is_empty(),
        if mismatches.is_empty() {
            "0".into()
        } else {
            format!("not implied by the relation: {}", mismatches.join(", "))
        },
    )
}

fn agreement(name: &str, a: &[Sample], b: &[Sample]) -> Check {
    match first_difference(a, b) {
        None => Check::new(name, true, "0"),
        Some(n) => Check::new(name, false, format!("first difference at q^{n}")),
    }
}

fn top(f: &FormPolynomial, dim: u32) -> FormPolynomial {
    f.degree_component(dim)
}

fn literal_text(lit: &Literal) -> String {
    let mut s = format!("{{F ch({})}} = {} {{F}}", lit.lhs.label(), lit.a);
    if let Some((b, second)) = lit.second {
        s.push_str(&format!(" + {b} {{F ch({})}}", second.label()));
    }
    s
}

/// `{F}`, then for each literal `{F ch(lhs)}` and `{F ch(second)}` when present.
fn literal_samples(spec: &GeometrySpec, seeds: &[u64], literals: &[Literal]) -> Result<Vec<Sample>> {
    let dim = spec.dimension;
    sample_forms(spec, seeds, |model: &Model| {
        let f = &model.ahat()? * &model.exp_half_line();
        let printed = Printed::new(model);
        let mut out = vec![top(&f, dim)];
        for lit in literals {
            out.push(top(&(&f * &model.ch(&printed.coefficient(lit.lhs)?)?), dim));
            if let Some((_, second)) = lit.second {
                out.push(top(&(&f * &model.ch(&printed.coefficient(second)?)?), dim));
            }
        }
        Ok(out)
    })
}

fn describe_solution(sol: &Solution, names: &[&str]) -> String {
    match sol {
        Solution::Unique(c) => {
            let parts: Vec<String> = c.iter().zip(names).map(|(c, n)| format!("{c} {n}")).collect();
            format!("as computed: {}", parts.join(" + "))
        }
        Solution::Undetermined { .. } => "as computed: not determined (forms vanish)".into(),
        Solution::Inconsistent => "as computed: not a combination of the right-hand forms".into(),
    }
}

/// Literal statements with leading bracket term 1, and the measured q⁰ factor.
fn literal_checks(
    cert: &mut Certificate,
    entry: &Entry,
    spec: &GeometrySpec,
    seeds: &[u64],
    a0: &Sample,
) -> Result<()> {
    let samples = literal_samples(spec, seeds, entry.literal)?;
    let f = &samples[0];
    let expected_factor = rational(1 << spec.variant.bundle_count());
    match solve_from_data(std::slice::from_ref(f), a0) {
        Solution::Unique(c) => {
            cert.checks.push(Check::info(
                "as-built q⁰ coefficient",
                c[0] == expected_factor,
                format!(
                    "a0 = {} {{Â e^{{c/2}}}}; expansions with leading term 1 carry factor 1",
                    c[0]
                ),
            ));
            cert.notes.push(format!(
                "q⁰ normalization: the bracket contributes {} at q⁰, so a0 = {} {{Â e^{{c/2}}}}; relations are homogeneous and unaffected",
                c[0], c[0]
            ));
        }
        _ => cert
            .notes
            .push("q⁰ normalization: {Â e^{c/2}} vanishes in this degree, factor not measurable".into()),
    }
    let mut idx = 1;
    for lit in entry.literal {
        let lhs = &samples[idx];
        idx += 1;
        let mut rhs = Sample::default().scaled_add(f, &rational(lit.a));
        let mut basis = vec![f.clone()];
        let mut names = vec!["{F}".to_string()];
        if let Some((b, second)) = lit.second {
            rhs = rhs.scaled_add(&samples[idx], &rational(b));
            basis.push(samples[idx].clone());
            names.push(format!("{{F ch({})}}", second.label()));
            idx += 1;
        }
        let residual = lhs.residual(&[rhs], &[rational(1)]);
        let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let solved = describe_solution(&solve_from_data(&basis, lhs), &name_refs);
        cert.checks.push(Check::info(
            format!("literal: {}", literal_text(lit)),
            residual.is_zero(),
            if residual.is_zero() {
                "0".into()
            } else {
                format!("{solved}; residual {}", residual.describe())
            },
        ));
    }
    Ok(())
}

/// Certifies an even-dimensional registry entry.
pub fn verify_even(entry: &Entry, opts: &VerifyOptions) -> Result<Certificate> {
    let start = Instant::now();
    let spec = opts.spec_for(entry);
    let dim = spec.dimension;
    let weight = spec.weight()?;
    let rel = coefficient_relation(weight, spec.q_order)?;
    let seeds = seeds_for(spec.backend, spec.seed, opts.seed_count);

    let mut cert = Certificate::new(entry.id);
    cert.dimension = Some(dim);
    cert.l = Some(entry.l);
    cert.variant = Some(entry.variant.name().into());
    cert.weight = Some(weight);
    cert.basis = basis_pairs(weight).into_iter().map(|(a, b)| [a, b]).collect();
    cert.backend = spec.backend.name().into();
    cert.seeds = seeds.clone();
    cert.statement = entry.statement.into();
    cert.assumptions = geometry_assumptions(&spec, weight);
    cert.notes = entry.notes.iter().map(|s| s.to_string()).collect();

    let theta = extract(&spec, &seeds, Side::Theta, Normalization::Summed, &[dim])?.remove(0);
    relation_checks(&mut cert, &theta, &rel);
    solve_constants(&mut cert, &theta, &rel, entry.expected);
    cert.checks.push(registry_check(&rel, entry.expected));

    let bundle = extract(&spec, &seeds, Side::Bundle, Normalization::Summed, &[dim])?.remove(0);
    cert.checks
        .push(agreement("bundle side equals theta side", &bundle, &theta));

    if opts.cross_check && spec.backend == Backend::PowerSum && (8..=12).contains(&dim) {
        let roots_spec = spec.clone().with_backend(Backend::Roots);
        let roots = extract(&roots_spec, &[], Side::Theta, Normalization::Summed, &[dim])?.remove(0);
        cert.checks
            .push(agreement("roots backend agrees with power sums", &roots, &theta));
    }

    if theta.iter().all(Sample::is_zero) {
        cert.notes
            .push(format!("degenerate: every coefficient vanishes in degree {dim}"));
    }
    literal_checks(&mut cert, entry, &spec, &seeds, &theta[0])?;

    cert.finalize();
    let status = if cert.is_pass() {
        "implied by the certified form identity; analytic content not checked"
    } else {
        "not established"
    };
    cert.corollaries = entry
        .corollaries
        .iter()
        .map(|s| Corollary {
            statement: s.to_string(),
            status: status.into(),
        })
        .collect();
    cert.ms = elapsed_ms(start, opts);
    Ok(cert)
}
