//! Bundle side against theta side, degree by degree.

use std::time::Instant;

use super::certificate::{Certificate, Check};
use super::engine::{both_sides, default_backend, extract, first_difference, seeds_for, Sample};
use super::theorem::geometry_assumptions;
use super::{elapsed_ms, VerifyOptions};
use crate::algebra::par;
use crate::charcalc::{Backend, GeometrySpec, Normalization, Side, Variant, XiConvention};
use crate::error::Result;

/// Degrees compared for a geometry: the top degree for even variants, and
/// for odd ones every even degree `dim + 1 - 4r` that can pair with a symbol
/// of degree `4r - 1`.
pub fn compared_degrees(spec: &GeometrySpec) -> Vec<u32> {
    if spec.variant.is_odd() {
        (1..=(spec.dimension + 1) / 4)
            .map(|r| spec.dimension + 1 - 4 * r)
            .collect()
    } else {
        vec![spec.dimension]
    }
}

pub fn sides_id(spec: &GeometrySpec) -> String {
    let mut id = format!("sides/{}/d{}/l{}", spec.variant.name(), spec.dimension, spec.l);
    if spec.spin {
        id.push_str("/spin");
    }
    if spec.xi == XiConvention::Line {
        id.push_str("/xi-line");
    }
    id
}

fn compare(degrees: &[u32], a: &[Vec<Sample>], b: &[Vec<Sample>]) -> Option<(u32, usize)> {
    degrees
        .iter()
        .zip(a.iter().zip(b))
        .find_map(|(&d, (x, y))| first_difference(x, y).map(|n| (d, n)))
}

/// Checks that both constructions agree in the compared degrees.
pub fn verify_sides(spec: &GeometrySpec, opts: &VerifyOptions) -> Result<Certificate> {
    let start = Instant::now();
    let seeds = seeds_for(spec.backend, spec.seed, opts.seed_count);
    let degrees = compared_degrees(spec);
    let mut cert = Certificate::new(sides_id(spec));
    cert.dimension = Some(spec.dimension);
    cert.l = Some(spec.l);
    cert.variant = Some(spec.variant.name().into());
    let weight = spec.weight()?;
    cert.weight = Some(weight);
    cert.backend = spec.backend.name().into();
    cert.seeds = seeds.clone();
    cert.orders_checked = (0..=spec.q_order).collect();
    cert.statement = format!(
        "bundle-side and theta-side constructions agree in degree{} {}",
        if degrees.len() > 1 { "s" } else { "" },
        degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
    );
    cert.assumptions = geometry_assumptions(spec, weight);
    cert.assumptions.remove(1);

    let theta = extract(spec, &seeds, Side::Theta, Normalization::Summed, &degrees)?;
    let bundle = extract(spec, &seeds, Side::Bundle, Normalization::Summed, &degrees)?;
    cert.checks.push(match compare(&degrees, &bundle, &theta) {
        None => Check::new("sides agree", true, "0"),
        Some((d, n)) => Check::new("sides agree", false, format!("first difference in degree {d} at q^{n}")),
    });

    if spec.backend != Backend::Random {
        let (_, b, t) = both_sides(spec)?;
        let diff = b.checked_sub(&t)?;
        let ds = diff.degrees();
        let residue = degrees[0] % 4;
        let detail = if ds.is_empty() {
            "full forms agree in every degree".to_string()
        } else {
            format!(
                "full forms differ in degrees {}, none ≡ {residue} mod 4",
                ds.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")
            )
        };
        let concentrated = ds.iter().all(|d| d % 4 != residue);
        cert.checks.push(Check::info(
            "full-form difference off the compared residue",
            concentrated,
            detail,
        ));
    }

    if opts.cross_check && spec.backend == Backend::PowerSum && spec.dimension <= 12 {
        let roots = extract(
            &spec.clone().with_backend(Backend::Roots),
            &[],
            Side::Theta,
            Normalization::Summed,
            &degrees,
        )?;
        cert.checks.push(match compare(&degrees, &roots, &theta) {
            None => Check::new("roots backend agrees with power sums", true, "0"),
            Some((d, n)) => Check::new(
                "roots backend agrees with power sums",
                false,
                format!("first difference in degree {d} at q^{n}"),
            ),
        });
    }

    cert.finalize();
    cert.ms = elapsed_ms(start, opts);
    Ok(cert)
}

/// Geometries of the default side-equality run.
pub fn default_geometries(opts: &VerifyOptions) -> Vec<GeometrySpec> {
    let table: &[(Variant, u32, u32, bool)] = &[
        (Variant::QEven, 8, 1, false),
        (Variant::QEven, 12, 1, false),
        (Variant::QEven, 12, 2, false),
        (Variant::Q1Even, 10, 1, false),
        (Variant::Q1Even, 14, 1, false),
        (Variant::QTwoBundle, 12, 1, false),
        (Variant::Q1TwoBundle, 14, 1, false),
        (Variant::QEven, 16, 1, true),
        (Variant::QEven, 20, 1, false),
        (Variant::Q1Even, 18, 1, false),
        (Variant::Q1Even, 22, 1, false),
        (Variant::QOdd, 7, 1, false),
        (Variant::QOdd, 11, 1, false),
        (Variant::QOdd, 19, 1, false),
        (Variant::Q1Odd, 9, 1, false),
        (Variant::Q1Odd, 13, 1, false),
        (Variant::Q1Odd, 21, 1, false),
    ];
    table
        .iter()
        .map(|&(v, d, l, spin)| {
            GeometrySpec::new(v, d, l, opts.backend.unwrap_or_else(|| default_backend(d)))
                .with_q_order(opts.q_order)
                .with_seed(opts.seed)
                .with_spin(spin)
                .with_xi(opts.xi)
        })
        .collect()
}

/// Side-equality certificates for the default geometries.
pub fn verify_sides_default(opts: &VerifyOptions) -> Result<Vec<Certificate>> {
    opts.validate()?;
    let specs = default_geometries(opts);
    par::map_collect(&specs, |s| verify_sides(s, opts))
        .into_iter()
        .collect()
}

/// Which reading of `ξ_C` passes the cross-check, at `(8, 1)` for `Q` and
/// `(10, 1)` for `Q1`.
pub fn xi_convention_report(opts: &VerifyOptions) -> Result<Vec<Certificate>> {
    let mut out = Vec::new();
    for (variant, dim) in [(Variant::QEven, 8), (Variant::Q1Even, 10)] {
        let start = Instant::now();
        let mut cert = Certificate::new(format!("sides/xi-convention/{}/d{dim}", variant.name()));
        cert.dimension = Some(dim);
        cert.l = Some(1);
        cert.variant = Some(variant.name().into());
        cert.backend = Backend::PowerSum.name().into();
        cert.orders_checked = (0..=opts.q_order).collect();
        cert.statement = "reading of ξ_C under which the two constructions agree".into();
        for xi in [XiConvention::Complexified, XiConvention::Line] {
            let spec = GeometrySpec::new(variant, dim, 1, Backend::PowerSum)
                .with_q_order(opts.q_order)
                .with_xi(xi);
            let sides = verify_sides(
                &spec,
                &VerifyOptions {
                    cross_check: false,
                    ..opts.clone()
                },
            )?;
            let name = match xi {
                XiConvention::Complexified => "ξ_R ⊗ C (rank 2)",
                XiConvention::Line => "line bundle (rank 1)",
            };
            let check = if xi == XiConvention::Complexified {
                Check::new(name, sides.is_pass(), sides.residual.clone())
            } else {
                Check::info(name, sides.is_pass(), sides.residual.clone())
            };
            cert.checks.push(check);
        }
        cert.finalize();
        cert.ms = elapsed_ms(start, opts);
        out.push(cert);
    }
    Ok(out)
}
