use anomcert::algebra::{rat, Rational};
use anomcert::charcalc::Variant;
use anomcert::modular::{
    basis, basis_pairs, classical_dimension, coefficient_relation, divisor_sum, eisenstein, solve, weight_of,
};
use anomcert::Error;
use num_bigint::BigInt;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn eisenstein_regression() {
    assert_eq!(eisenstein(4, 3).unwrap(), ints(&[1, 240, 2160, 6720]));
    assert_eq!(eisenstein(6, 3).unwrap(), ints(&[1, -504, -16632, -122976]));
    assert_eq!(eisenstein(4, 4).unwrap()[4], BigInt::from(17520));
    assert_eq!(eisenstein(8, 2), Err(Error::UnsupportedWeight(8)));
}

#[test]
fn divisor_sums() {
    assert_eq!(divisor_sum(3, 6), BigInt::from(1 + 8 + 27 + 216));
    assert_eq!(divisor_sum(0, 12), BigInt::from(6));
    assert_eq!(divisor_sum(5, 1), BigInt::from(1));
}

#[test]
fn basis_pairs_for_small_weights() {
    assert_eq!(basis_pairs(4), vec![(1, 0)]);
    assert_eq!(basis_pairs(12), vec![(3, 0), (0, 2)]);
    assert_eq!(basis_pairs(24), vec![(6, 0), (3, 2), (0, 4)]);
    assert!(basis_pairs(2).is_empty());
    assert!(basis_pairs(7).is_empty());
}

#[test]
fn basis_size_matches_classical_dimension() {
    for w in (4..=24).step_by(2) {
        assert_eq!(basis_pairs(w).len() as u32, classical_dimension(w), "weight {w}");
    }
    assert_eq!(classical_dimension(12), 2);
    assert_eq!(classical_dimension(14), 1);
}

#[test]
fn discriminant_normalization() {
    let b = basis(12, 3).unwrap();
    let diff: Vec<BigInt> = b[0].1.iter().zip(&b[1].1).map(|(x, y)| x - y).collect();
    assert_eq!(diff[0], BigInt::from(0));
    assert_eq!(diff[1], BigInt::from(1728));
    // Δ = q - 24q^2 + 252q^3
    assert_eq!(diff, ints(&[0, 1728, -24 * 1728, 252 * 1728]));
}

fn single(w: u32, n: u32) -> Rational {
    let rel = coefficient_relation(w, 3).unwrap();
    assert_eq!(rel.basis_size, 1);
    rel.row(n).unwrap()[0].clone()
}

#[test]
fn weight_eight_relation() {
    assert_eq!(single(8, 1), rat(480));
    assert_eq!(single(8, 2), rat(61920));
}

#[test]
fn weights_ten_and_fourteen() {
    assert_eq!(single(10, 1), rat(-264));
    assert_eq!(single(14, 1), rat(-24));
    assert_eq!(rat(240 - 504), rat(-264));
    assert_eq!(rat(2 * 240 - 504), rat(-24));
}

#[test]
fn weight_twelve_relation_against_hand_solve() {
    let rel = coefficient_relation(12, 3).unwrap();
    assert_eq!(rel.basis_size, 2);
    assert_eq!(rel.orders(), vec![2, 3]);
    // E4^3 = 1 + 720q + 179280q^2, E6^2 = 1 - 1008q + 220752q^2.
    // a_2 = A a_0 + B a_1 on both:
    //   179280 = A + 720B,  220752 = A - 1008B
    // so B = (179280 - 220752) / 1728 = -24 and A = 179280 + 17280.
    let b = Rational::new(BigInt::from(179280 - 220752), BigInt::from(1728));
    let a = rat(179280) - b.clone() * rat(720);
    assert_eq!((a.clone(), b.clone()), (rat(196560), rat(-24)));
    assert_eq!(rel.row(2).unwrap(), &[a, b]);
    let basis = basis(12, 2).unwrap();
    assert_eq!(basis[0].1, ints(&[1, 720, 179280]));
    assert_eq!(basis[1].1, ints(&[1, -1008, 220752]));
}

#[test]
fn relations_annihilate_basis_expansions() {
    for w in (4..=24).step_by(2) {
        let q = 6;
        let rel = coefficient_relation(w, q).unwrap();
        for (_, expansion) in basis(w, q).unwrap() {
            for n in rel.orders() {
                let row = rel.row(n).unwrap();
                let predicted: Rational = row
                    .iter()
                    .zip(&expansion)
                    .map(|(c, a)| c * Rational::from_integer(a.clone()))
                    .sum();
                assert_eq!(
                    predicted,
                    Rational::from_integer(expansion[n as usize].clone()),
                    "w {w} n {n}"
                );
            }
        }
    }
}

#[test]
fn relation_needs_enough_orders() {
    assert!(matches!(coefficient_relation(24, 1), Err(Error::Domain(_))));
}

#[test]
fn exact_solver() {
    let a = vec![vec![rat(2), rat(1)], vec![rat(1), rat(3)]];
    let x = solve(&a, &[rat(3), rat(5)]).unwrap();
    assert_eq!(
        x,
        vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]
    );
    let singular = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
    assert_eq!(solve(&singular, &[rat(1), rat(2)]), Err(Error::Singular));
}

#[test]
fn weights_by_variant() {
    assert_eq!(weight_of(Variant::QEven, 8, 1).unwrap(), 8);
    assert_eq!(weight_of(Variant::Q1Even, 14, 1).unwrap(), 10);
    assert_eq!(weight_of(Variant::QTwoBundle, 12, 1).unwrap(), 14);
    assert_eq!(weight_of(Variant::QEven, 12, 2).unwrap(), 14);
    assert!(weight_of(Variant::QEven, 10, 1).is_err());
}
