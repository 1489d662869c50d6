//! One line per acceptance criterion. Criteria that cannot be met are printed
//! as FAIL; the test asserts that exactly the documented ones do.

use std::collections::BTreeSet;
use std::sync::Arc;

use anomcert::algebra::{rat, ratio, FormPolynomial, FormQSeries, Generator, PolyRing, Rational};
use anomcert::charcalc::{q_series, roots_to_power_sums, witten_bracket, Backend, GeometrySpec, Model, Side, Variant};
use anomcert::modular::{basis, coefficient_relation, eisenstein, solve};
use anomcert::theta::{check_t_transform, check_t_transform_prime, theta_prime_at_zero, theta_series, ThetaKind};
use anomcert::verify::expressions::euler_printed;
use anomcert::verify::lemmas::verify_lemmas;
use anomcert::verify::sides::verify_sides_default;
use anomcert::verify::{verify_all, Certificate, Constant, EntryKind, VerifyOptions, REGISTRY};
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Criteria expected to print FAIL, each analysed in the decisions ledger.
const KNOWN_FAILURES: &[u32] = &[5];

/// Lemma certificates failing because the printed coefficient is wrong.
const KNOWN_DEVIATIONS: &[&str] = &["lemma/q1/l1"];

type Outcome = (bool, String);

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn single_relation(w: u32) -> Vec<Rational> {
    let rel = coefficient_relation(w, 3).unwrap();
    rel.orders()
        .into_iter()
        .map(|n| rel.row(n).unwrap()[0].clone())
        .collect()
}

fn eisenstein_regression() -> Outcome {
    let e4 = eisenstein(4, 3).unwrap();
    let e6 = eisenstein(6, 3).unwrap();
    let ok = e4 == ints(&[1, 240, 2160, 6720]) && e6 == ints(&[1, -504, -16632, -122976]);
    (ok, format!("E4 = {e4:?}, E6 = {e6:?}"))
}

fn weight_eight() -> Outcome {
    let r = single_relation(8);
    (
        r[..2] == [rat(480), rat(61920)],
        format!("a1 = {} a0, a2 = {} a0", r[0], r[1]),
    )
}

fn weights_ten_fourteen() -> Outcome {
    let (a, b) = (single_relation(10)[0].clone(), single_relation(14)[0].clone());
    (
        a == rat(-264) && b == rat(-24),
        format!("weight 10: {a}, weight 14: {b}"),
    )
}

fn weight_twelve() -> Outcome {
    let rel = coefficient_relation(12, 3).unwrap();
    let row = rel.row(2).unwrap().to_vec();
    let b = basis(12, 2).unwrap();
    let hand_ok = b[0].1 == ints(&[1, 720, 179280]) && b[1].1 == ints(&[1, -1008, 220752]);
    // a2 = A a0 + B a1 on E4^3 and E6^2
    let oracle = solve(
        &[vec![rat(1), rat(720)], vec![rat(1), rat(-1008)]],
        &[rat(179280), rat(220752)],
    )
    .unwrap();
    let ok = hand_ok && row == [rat(196560), rat(-24)] && oracle == row;
    (
        ok,
        format!(
            "a2 = {} a0 + {} a1, 2x2 oracle {} / {}",
            row[0], row[1], oracle[0], oracle[1]
        ),
    )
}

fn expansion_lemmas(certs: &[Certificate]) -> Outcome {
    let euler_ok = ints(&[1, -8, 20]) == euler_printed(1) && ints(&[1, -16, 104]) == euler_printed(2);
    let failing: Vec<&Certificate> = certs.iter().filter(|c| !c.is_pass()).collect();
    let ids: Vec<&str> = failing.iter().map(|c| c.id.as_str()).collect();
    let corrected = certs
        .iter()
        .find(|c| c.id == "lemma/q1/l1")
        .map(|c| {
            c.checks
                .iter()
                .any(|k| k.informational && k.passed && k.name.contains("cross term"))
        })
        .unwrap_or(false);
    let detail = format!(
        "{} of {} lemmas pass; failing {ids:?}; euler coefficients {}; printed B3 with the cross term restored {}",
        certs.len() - failing.len(),
        certs.len(),
        if euler_ok { "exact" } else { "WRONG" },
        if corrected { "matches" } else { "does not match" },
    );
    (euler_ok && failing.is_empty(), detail)
}

fn side_equality(certs: &[Certificate]) -> Outcome {
    let symbolic: Vec<(u32, u32)> = certs
        .iter()
        .filter(|c| c.backend != "random" && c.orders_checked.contains(&2))
        .map(|c| (c.dimension.unwrap(), c.l.unwrap()))
        .collect();
    let needed = [(8, 1), (12, 1), (12, 2), (10, 1), (14, 1)];
    let covered = needed.iter().all(|g| symbolic.contains(g));
    let random: Vec<&Certificate> = certs.iter().filter(|c| c.backend == "random").collect();
    let dims: BTreeSet<u32> = random.iter().filter_map(|c| c.dimension).collect();
    let random_ok = [16, 20, 22, 19, 21].iter().all(|d| dims.contains(d)) && random.iter().all(|c| c.seeds.len() >= 5);
    let failing: Vec<&str> = certs.iter().filter(|c| !c.is_pass()).map(|c| c.id.as_str()).collect();
    let ok = covered && random_ok && failing.is_empty();
    (
        ok,
        format!(
            "{} geometries ({} randomized, dims {dims:?}); failing {failing:?}",
            certs.len(),
            random.len()
        ),
    )
}

fn constants_match(c: &Certificate) -> bool {
    c.constants
        .labels
        .iter()
        .zip(c.constants.expected.iter().zip(&c.constants.computed))
        .all(|(_, (e, k))| e.is_none() || e == k || c.constants.undetermined)
}

fn registry(certs: &[Certificate]) -> Outcome {
    let even: Vec<&Certificate> = certs
        .iter()
        .filter(|c| REGISTRY.iter().any(|e| e.id == c.id && e.kind == EntryKind::Even))
        .collect();
    let failing: Vec<&str> = even
        .iter()
        .filter(|c| !c.is_pass() || !constants_match(c))
        .map(|c| c.id.as_str())
        .collect();
    let flagged = even
        .iter()
        .all(|c| c.corollaries.iter().all(|k| k.status.contains("not checked")));
    let ok = even.len() == 15 && failing.is_empty() && flagged;
    (
        ok,
        format!("{} even entries certified; failing {failing:?}", even.len()),
    )
}

fn odd_layer(certs: &[Certificate]) -> Outcome {
    let expected = [480, -264, -24, -24, -24, 480, -264, -24, -24, -24];
    let mut bad = Vec::new();
    for (n, k) in (1..=10).zip(expected) {
        let id = format!("T3.2-{n}");
        let ok = certs
            .iter()
            .find(|c| c.id == id)
            .map(|c| c.is_pass() && c.constants.computed("a1:a0") == Some(&Constant::integer(k)))
            .unwrap_or(false);
        if !ok {
            bad.push(id);
        }
    }
    (
        bad.is_empty(),
        format!("10 symbol-level certificates, constants {expected:?}; failing {bad:?}"),
    )
}

fn ring_axioms_fuzz() -> bool {
    let r: Arc<PolyRing> = PolyRing::new(vec![Generator::chern_root("x"), Generator::chern_root("y")], 8).unwrap();
    let poly = move |t: &Vec<(u32, u32, i64)>| {
        let (x, y) = (FormPolynomial::generator(&r, 0), FormPolynomial::generator(&r, 1));
        t.iter().fold(FormPolynomial::zero(&r), |acc, &(a, b, n)| {
            &acc + &(&x.pow(a) * &y.pow(b)).scale(&ratio(n, 3))
        })
    };
    let terms = prop::collection::vec((0u32..4, 0u32..4, -9i64..=9), 0..5);
    let mut runner = TestRunner::new(Config {
        cases: 256,
        ..Config::default()
    });
    runner
        .run(&(terms.clone(), terms.clone(), terms), |(a, b, c)| {
            let (f, g, h) = (poly(&a), poly(&b), poly(&c));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &g, &g * &f);
            Ok(())
        })
        .is_ok()
}

fn property_suites() -> Outcome {
    let mut results: Vec<(&str, bool)> = Vec::new();
    let geometries = [
        (Variant::QEven, 8, 1),
        (Variant::QEven, 12, 2),
        (Variant::Q1Even, 10, 1),
        (Variant::QTwoBundle, 8, 1),
    ];
    let mut concentrated = true;
    let mut cancelled = true;
    for (v, d, l) in geometries {
        let m = Model::new(&GeometrySpec::new(v, d, l, Backend::PowerSum).with_q_order(2)).unwrap();
        let s = witten_bracket(&m, 1).unwrap();
        concentrated &= s.degrees().iter().all(|d| d % 4 == 0);
        cancelled &= s.entries().all(|(k, _)| k % 8 == 0);
    }
    results.push(("mod-4 concentration", concentrated));
    results.push(("half-integral cancellation", cancelled));

    let zr = PolyRing::new(vec![Generator::chern_root("z")], 10).unwrap();
    let z = FormPolynomial::generator(&zr, 0);
    let minus = |s: &FormQSeries| s.map_into(&zr, &[-&z]).unwrap();
    let th = theta_series(ThetaKind::Theta, &z, 2).unwrap();
    let mut parity = minus(&th) == th.neg();
    for k in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let s = theta_series(k, &z, 2).unwrap();
        parity &= minus(&s) == s;
    }
    results.push(("theta parity", parity));

    let r0 = PolyRing::new(vec![], 0).unwrap();
    let zero = FormPolynomial::zero(&r0);
    let collapse = (1..=4).all(|q| {
        let product = [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3]
            .iter()
            .map(|k| theta_series(*k, &zero, q).unwrap())
            .reduce(|a, b| a.checked_mul(&b).unwrap())
            .unwrap();
        product == theta_prime_at_zero(&r0, q).scale(&rat(2))
    });
    results.push(("Euler collapse", collapse));

    let t_ok = ThetaKind::ALL.iter().all(|k| check_t_transform(*k, 4).is_ok()) && check_t_transform_prime(4);
    results.push(("T-transformation", t_ok));

    let spec = GeometrySpec::new(Variant::QEven, 8, 1, Backend::PowerSum).with_q_order(2);
    let ps = Model::new(&spec).unwrap();
    let roots = Model::new(&spec.clone().with_backend(Backend::Roots)).unwrap();
    let agree = [Side::Bundle, Side::Theta].iter().all(|side| {
        let a = q_series(&roots, *side).unwrap();
        let b = q_series(&ps, *side).unwrap();
        (0..=a.t_cap()).all(|k| roots_to_power_sums(&a.coefficient(k), &roots, &ps).unwrap() == b.coefficient(k))
    });
    results.push(("backend cross-agreement", agree));
    results.push(("ring-axiom fuzzing", ring_axioms_fuzz()));

    let failing: Vec<&str> = results.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    (
        failing.is_empty(),
        format!("{} suites sampled; failing {failing:?}", results.len()),
    )
}

fn excluded(certs: &[Certificate]) -> Outcome {
    let corollaries: usize = certs.iter().map(|c| c.corollaries.len()).sum();
    let flagged = certs
        .iter()
        .flat_map(|c| &c.corollaries)
        .all(|k| k.status.contains("not checked"));
    (
        flagged && corollaries > 0,
        format!("excluded by design; {corollaries} index and eta corollaries flagged as not checked"),
    )
}

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let registry_certs = verify_all(&opts).unwrap();
    let lemma_certs = verify_lemmas(&opts).unwrap();
    let side_certs = verify_sides_default(&VerifyOptions {
        q_order: 2,
        ..opts.clone()
    })
    .unwrap();

    let outcomes: Vec<(u32, &str, Outcome)> = vec![
        (1, "Eisenstein regression", eisenstein_regression()),
        (2, "weight-8 relation", weight_eight()),
        (3, "weight-10 and weight-14 relations", weights_ten_fourteen()),
        (4, "weight-12 relation", weight_twelve()),
        (5, "expansion lemmas", expansion_lemmas(&lemma_certs)),
        (6, "side equality", side_equality(&side_certs)),
        (7, "theorem registry", registry(&registry_certs)),
        (8, "odd layer", odd_layer(&registry_certs)),
        (9, "property suites", property_suites()),
        (10, "analytic content excluded", excluded(&registry_certs)),
    ];

    let mut failed = Vec::new();
    for (n, name, (ok, detail)) in &outcomes {
        println!(
            "criterion {n:>2} {}: {name}: {detail}",
            if *ok { "PASS" } else { "FAIL" }
        );
        if !ok {
            failed.push(*n);
        }
    }

    let lemma_failures: Vec<&str> = lemma_certs
        .iter()
        .filter(|c| !c.is_pass())
        .map(|c| c.id.as_str())
        .collect();
    assert_eq!(lemma_failures, KNOWN_DEVIATIONS, "lemma failures changed");
    assert_eq!(failed, KNOWN_FAILURES, "criteria failing outside the documented set");
}
