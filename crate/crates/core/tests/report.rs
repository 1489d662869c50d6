use anomcert::charcalc::{Backend, GeometrySpec, Normalization, Variant};
use anomcert::report::{
    expand, registry_table, write_report, ExpandSide, Format, Report, RunConfig, TheoremFilter, REPORT_SCHEMA,
};
use anomcert::verify::{verify_theorem, Certificate, Check, Constant, VerifyOptions, REGISTRY};
use anomcert::Error;
use serde_json::Value;

fn schema_errors(report: &Report) -> Vec<String> {
    let schema: Value = serde_json::from_str(REPORT_SCHEMA).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let instance: Value = serde_json::from_slice(&write_report(report, Format::Json).unwrap()).unwrap();
    validator
        .iter_errors(&instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect()
}

fn failing_certificate() -> Certificate {
    let mut c = Certificate::new("T0-fail");
    c.constants.push(
        "a1:a0",
        Some(Constant::integer(480)),
        Some(Constant(anomcert::algebra::ratio(7, 3))),
    );
    c.checks
        .push(Check::new("relation at q^2", false, "residual 5 p1(T)^2"));
    c.finalize();
    c
}

#[test]
fn empty_report_is_valid() {
    let r = Report::new(VerifyOptions::default(), Vec::new());
    assert!(schema_errors(&r).is_empty());
    let v: Value = serde_json::from_slice(&write_report(&r, Format::Json).unwrap()).unwrap();
    assert_eq!(v["certificates"], Value::Array(Vec::new()));
    assert_eq!(v["version"], "1");
    assert!(r.all_pass());
}

#[test]
fn field_order_is_stable() {
    let c = verify_theorem("T2.3-1", &VerifyOptions::default()).unwrap();
    let text = String::from_utf8(write_report(&Report::new(VerifyOptions::default(), vec![c]), Format::Json).unwrap())
        .unwrap();
    let top = ["\"version\"", "\"engine_options\"", "\"certificates\""];
    let fields = [
        "\"id\"",
        "\"dimension\"",
        "\"l\"",
        "\"variant\"",
        "\"weight\"",
        "\"basis\"",
        "\"constants\"",
        "\"orders_checked\"",
        "\"backend\"",
        "\"seeds\"",
        "\"assumptions\"",
        "\"verdict\"",
        "\"residual\"",
        "\"ms\"",
    ];
    let cert = &text[text.find("\"certificates\"").unwrap()..];
    for (keys, body) in [(&top[..], text.as_str()), (&fields[..], cert)] {
        let pos: Vec<usize> = keys
            .iter()
            .map(|k| body.find(k).unwrap_or_else(|| panic!("missing {k}")))
            .collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{keys:?}");
    }
}

#[test]
fn failing_certificate_has_verdict_and_residual() {
    let c = failing_certificate();
    let r = Report::new(VerifyOptions::default(), vec![c]);
    assert!(!r.all_pass());
    assert!(schema_errors(&r).is_empty(), "{:?}", schema_errors(&r));
    let v: Value = serde_json::from_slice(&write_report(&r, Format::Json).unwrap()).unwrap();
    let cert = &v["certificates"][0];
    assert_eq!(cert["verdict"], "fail");
    let residual = cert["residual"].as_str().unwrap();
    assert!(!residual.is_empty() && residual != "0");
    assert_eq!(cert["constants"]["computed"][0], "7/3");
    assert_eq!(cert["constants"]["expected"][0], 480);
}

#[test]
fn minus_264_round_trips_through_json() {
    let c = verify_theorem("T2.3-2", &VerifyOptions::default()).unwrap();
    let r = Report::new(VerifyOptions::default(), vec![c]);
    let v: Value = serde_json::from_slice(&write_report(&r, Format::Json).unwrap()).unwrap();
    let k = &v["certificates"][0]["constants"];
    assert_eq!(k["expected"][0], -264);
    assert_eq!(k["computed"][0], -264);
}

#[test]
fn full_report_validates_and_markdown_lists_every_id() {
    let config = RunConfig {
        lemmas: true,
        ..RunConfig::default()
    };
    config.validate().unwrap();
    let certs = config.execute().unwrap();
    let r = Report::new(config.options(), certs);
    assert!(schema_errors(&r).is_empty(), "{:?}", schema_errors(&r));
    let md = String::from_utf8(write_report(&r, Format::Markdown).unwrap()).unwrap();
    for c in &r.certificates {
        assert!(md.contains(&format!("## {}", c.id)), "{}", c.id);
    }
    let passing = r.certificates.iter().filter(|c| c.is_pass()).count();
    assert!(md.contains(&format!("{passing} of {} certificates pass", r.certificates.len())));
    let json = write_report(&r, Format::Json).unwrap();
    let again = Report::new(config.options(), config.execute().unwrap());
    assert_eq!(json, write_report(&again, Format::Json).unwrap());
}

#[test]
fn run_config_round_trips() {
    let config = RunConfig {
        theorems: TheoremFilter::from_args(&["T2.3-1,T2.5".into()]),
        backend: Some(Backend::Random),
        seed: 7,
        format: Format::Markdown,
        output: Some("out.md".into()),
        ..RunConfig::default()
    };
    let text = serde_json::to_string(&config).unwrap();
    assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), config);
    let default = RunConfig::default();
    let text = serde_json::to_string(&default).unwrap();
    assert!(text.contains("\"theorems\":\"all\""));
    assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), default);
    assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
}

#[test]
fn theorem_filters() {
    assert_eq!(TheoremFilter::from_args(&[]), TheoremFilter::all());
    assert_eq!(
        TheoremFilter::from_args(&["all".into()]).entries().unwrap().len(),
        REGISTRY.len()
    );
    assert!(TheoremFilter::from_args(&["none".into()]).entries().unwrap().is_empty());
    let ids = TheoremFilter::from_args(&["T2.3-1, T2.5".into(), "T3.2-1".into()]);
    assert_eq!(
        ids.entries().unwrap().iter().map(|e| e.id).collect::<Vec<_>>(),
        ["T2.3-1", "T2.5", "T3.2-1"]
    );
    assert!(matches!(
        TheoremFilter::from_args(&["T9.9-9".into()]).entries(),
        Err(Error::UnknownTheorem(_))
    ));
}

#[test]
fn invalid_combinations_are_rejected() {
    let bad = [
        RunConfig {
            q_order: 9,
            ..RunConfig::default()
        },
        RunConfig {
            seed_count: 0,
            ..RunConfig::default()
        },
        RunConfig {
            dimension: Some(12),
            ..RunConfig::default()
        },
        RunConfig {
            theorems: TheoremFilter::from_args(&["T2.3-1".into()]),
            dimension: Some(10),
            ..RunConfig::default()
        },
        RunConfig {
            theorems: TheoremFilter::from_args(&["none".into()]),
            variant: Some(Variant::QEven),
            ..RunConfig::default()
        },
        RunConfig {
            backend: Some(Backend::Roots),
            ..RunConfig::default()
        },
    ];
    for c in bad {
        assert!(c.validate().is_err(), "{c:?}");
    }
    let custom = RunConfig {
        theorems: TheoremFilter::from_args(&["T2.3-1".into()]),
        dimension: Some(12),
        ..RunConfig::default()
    };
    custom.validate().unwrap();
    let g = custom.custom_geometry().unwrap().unwrap();
    assert_eq!((g.variant, g.dimension, g.l), (Variant::QEven, 12, 1));
}

#[test]
fn formats_parse() {
    assert_eq!(Format::parse("json"), Some(Format::Json));
    assert_eq!(Format::parse("md"), Some(Format::Markdown));
    assert_eq!(Format::parse("yaml"), None);
}

#[test]
fn registry_listing_has_every_entry() {
    let table = registry_table();
    for e in REGISTRY {
        assert!(table.contains(e.id), "{}", e.id);
    }
}

#[test]
fn expansion_dump() {
    let spec = GeometrySpec::new(Variant::QEven, 8, 1, Backend::PowerSum).with_q_order(2);
    let text = expand(&spec, ExpandSide::Theta, Normalization::Summed, true).unwrap();
    assert!(text.contains("O(q^3)"), "{text}");
    let bundle = expand(&spec, ExpandSide::BundleExpr, Normalization::UnitLeading, false).unwrap();
    assert!(bundle.lines().count() >= 3, "{bundle}");
    assert!(expand(
        &spec.clone().with_backend(Backend::Roots),
        ExpandSide::Theta,
        Normalization::UnitLeading,
        true
    )
    .is_err());
}
