//! The identities the engine certifies, with the constants stated for them.

use crate::charcalc::Variant;

/// Which printed coefficient a literal identity is phrased in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficient {
    /// `X - 8 + 2Λ²V + Δ(V)`.
    QL1Q1,
    /// `B1`.
    QL1Q2,
    /// `X - 16 + 2Λ²V`.
    QL2Q1,
    /// `B2`.
    QL2Q2,
    /// `X - 16 + Σ (2Λ²V_i + Δ(V_i))`.
    QTwoQ1,
    /// `T̃ - ξ̃ - 8 + 2Λ²V + Δ(V)`.
    Q1L1Q1,
    /// `B3`.
    Q1L1Q2,
    /// `T̃ - ξ̃ - 16 + 2Λ²V`.
    Q1L2Q1,
    /// `T̃ - ξ̃ - 16 + Σ (2Λ²V_i + Δ(V_i))`.
    Q1TwoQ1,
    /// `T_C Z - n + 2Λ²V + Δ(V)`.
    IndexTwist(i64),
}

impl Coefficient {
    /// How the coefficient is written in statements.
    pub fn label(self) -> String {
        match self {
            Coefficient::QL1Q1 => "X - 8 + 2Λ²V + Δ(V)".into(),
            Coefficient::QL1Q2 => "B1".into(),
            Coefficient::QL2Q1 => "X - 16 + 2Λ²V".into(),
            Coefficient::QL2Q2 => "B2".into(),
            Coefficient::QTwoQ1 => "X - 16 + Σ(2Λ²V_i + Δ(V_i))".into(),
            Coefficient::Q1L1Q1 => "T̃ - ξ̃ - 8 + 2Λ²V + Δ(V)".into(),
            Coefficient::Q1L1Q2 => "B3".into(),
            Coefficient::Q1L2Q1 => "T̃ - ξ̃ - 16 + 2Λ²V".into(),
            Coefficient::Q1TwoQ1 => "T̃ - ξ̃ - 16 + Σ(2Λ²V_i + Δ(V_i))".into(),
            Coefficient::IndexTwist(n) => format!("T_C Z - {n} + 2Λ²V + Δ(V)"),
        }
    }
}

/// A literal top-degree identity `{F ch(lhs)} = a {F} + b {F ch(second)}`
/// with `F = Â e^{c/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Literal {
    pub lhs: Coefficient,
    pub a: i64,
    pub second: Option<(i64, Coefficient)>,
}

const fn ratio(lhs: Coefficient, a: i64) -> Literal {
    Literal { lhs, a, second: None }
}

const fn two_term(lhs: Coefficient, a: i64, b: i64, second: Coefficient) -> Literal {
    Literal {
        lhs,
        a,
        second: Some((b, second)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// A relation among top-degree coefficients of an even-dimensional series.
    Even,
    /// A symbol-level identity for an odd-dimensional series.
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub variant: Variant,
    pub dimension: u32,
    pub l: u32,
    /// `c = 0`.
    pub spin: bool,
    /// Stated constants by label (`a1:a0` is the coefficient of `a0` in `a1`).
    pub expected: &'static [(&'static str, i64)],
    pub statement: &'static str,
    pub literal: &'static [Literal],
    pub corollaries: &'static [&'static str],
    pub notes: &'static [&'static str],
}

macro_rules! entry {
    ($id:expr, $kind:ident, $variant:ident, $dim:expr, $l:expr, $spin:expr, $expected:expr, $statement:expr,
     $literal:expr, $corollaries:expr, $notes:expr) => {
        Entry {
            id: $id,
            kind: EntryKind::$kind,
            variant: Variant::$variant,
            dimension: $dim,
            l: $l,
            spin: $spin,
            expected: $expected,
            statement: $statement,
            literal: $literal,
            corollaries: $corollaries,
            notes: $notes,
        }
    };
}

const NONE: &[&str] = &[];

const ODD_LHS_Q: &str = "{Â e^{c/2} [ch(Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ), g, d) + ch(X - 8 + 2Λ²V + Δ(V)) ch(Δ(E), g, d)]}";
const ODD_LHS_Q_L2: &str = "{Â e^{c/2} [ch(Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ), g, d) + ch(X - 16 + 2Λ²V) ch(Δ(E), g, d)]}";
const ODD_LHS_Q_TWO: &str =
    "{Â e^{c/2} [ch(Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ), g, d) + ch(X - 16 + Σ(2Λ²V_i + Δ(V_i))) ch(Δ(E), g, d)]}";
const ODD_LHS_Q1: &str = "{Â e^{c/2} [ch(Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ), g, d) + ch(T̃ - ξ̃ - 8 + 2Λ²V + Δ(V)) ch(Δ(E), g, d)]}";
const ODD_LHS_Q1_L2: &str = "{Â e^{c/2} [ch(Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ), g, d) + ch(T̃ - ξ̃ - 16 + 2Λ²V) ch(Δ(E), g, d)]}";
const ODD_LHS_Q1_TWO: &str =
    "{Â e^{c/2} [ch(Δ(E)⊗(Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ), g, d) + ch(T̃ - ξ̃ - 16 + Σ(2Λ²V_i + Δ(V_i))) ch(Δ(E), g, d)]}";

/// All registry entries in report order.
pub static REGISTRY: &[Entry] = &[
    entry!(
        "T2.3-1", Even, QEven, 8, 1, false,
        &[("a1:a0", 480), ("a2:a0", 61920)],
        "{Â e^{c/2} ch(X - 8 + 2Λ²V + Δ(V))}⁽⁸⁾ = 480 {Â e^{c/2}}⁽⁸⁾ and {Â e^{c/2} ch(B1)}⁽⁸⁾ = 61920 {Â e^{c/2}}⁽⁸⁾",
        &[ratio(Coefficient::QL1Q1, 480), ratio(Coefficient::QL1Q2, 61920)],
        &[
            "Z spin: Ind(D⁺ ⊗ (T_C Z - 16 + 2Λ²V + Δ(V))) is divisible by 480",
            "Z spin with product boundary: Ind(D⁺ ⊗ W) ≡ 480 η̃(D_∂Z) - η̃(D_∂Z ⊗ W) mod 480, W = T_C Z - 16 + 2Λ²V + Δ(V)",
        ],
        NONE
    ),
    entry!(
        "T2.3-2", Even, QEven, 12, 1, false,
        &[("a1:a0", -264)],
        "{Â e^{c/2} ch(X - 8 + 2Λ²V + Δ(V))}⁽¹²⁾ = -264 {Â e^{c/2}}⁽¹²⁾",
        &[ratio(Coefficient::QL1Q1, -264)],
        &[
            "Z spin: Ind(D⁺ ⊗ (T_C Z - 20 + 2Λ²V + Δ(V))) is divisible by 264",
            "Z spin with product boundary: Ind(D⁺ ⊗ W) ≡ -264 η̃(D_∂Z) - η̃(D_∂Z ⊗ W) mod 264, W = T_C Z - 20 + 2Λ²V + Δ(V)",
        ],
        NONE
    ),
    entry!(
        "T2.3-3", Even, QEven, 16, 1, true,
        &[("a2:a0", 196560), ("a2:a1", -24)],
        "Z spin: {Â ch(B1)}⁽¹⁶⁾ = 196560 {Â}⁽¹⁶⁾ - 24 {Â ch(T_C Z - 24 + 2Λ²V + Δ(V))}⁽¹⁶⁾",
        &[two_term(Coefficient::QL1Q2, 196560, -24, Coefficient::IndexTwist(24))],
        NONE,
        NONE
    ),
    entry!(
        "T2.3-4", Even, QEven, 20, 1, false,
        &[("a1:a0", -24)],
        "{Â e^{c/2} ch(X - 8 + 2Λ²V + Δ(V))}⁽²⁰⁾ = -24 {Â e^{c/2}}⁽²⁰⁾",
        &[ratio(Coefficient::QL1Q1, -24)],
        &["Z spin: Ind(D⁺ ⊗ (T_C Z - 28 + 2Λ²V + Δ(V))) is divisible by 24"],
        NONE
    ),
    entry!(
        "T2.3-5", Even, QEven, 8, 2, false,
        &[("a2:a0", 196560), ("a2:a1", -24)],
        "{Â e^{c/2} ch(B2)}⁽⁸⁾ = 196560 {Â e^{c/2}}⁽⁸⁾ - 24 {Â e^{c/2} ch(X - 16 + 2Λ²V)}⁽⁸⁾",
        &[two_term(Coefficient::QL2Q2, 196560, -24, Coefficient::QL2Q1)],
        NONE,
        &["spin^c reading: the line class c is kept, as in the printed statement"]
    ),
    entry!(
        "T2.3-5/spin", Even, QEven, 8, 2, true,
        &[("a2:a0", 196560), ("a2:a1", -24)],
        "Z spin: {Â ch(B2)}⁽⁸⁾ = 196560 {Â}⁽⁸⁾ - 24 {Â ch(X - 16 + 2Λ²V)}⁽⁸⁾",
        &[two_term(Coefficient::QL2Q2, 196560, -24, Coefficient::QL2Q1)],
        NONE,
        &["spin reading: c = 0, matching the neighbouring weight-12 statement"]
    ),
    entry!(
        "T2.3-6", Even, QEven, 12, 2, false,
        &[("a1:a0", -24)],
        "{Â e^{c/2} ch(X - 16 + 2Λ²V)}⁽¹²⁾ = -24 {Â e^{c/2}}⁽¹²⁾",
        &[ratio(Coefficient::QL2Q1, -24)],
        NONE,
        NONE
    ),
    entry!(
        "T2.5", Even, QTwoBundle, 12, 1, false,
        &[("a1:a0", -24)],
        "{Â e^{c/2} ch(X - 16 + Σ(2Λ²V_i + Δ(V_i)))}⁽¹²⁾ = -24 {Â e^{c/2}}⁽¹²⁾",
        &[ratio(Coefficient::QTwoQ1, -24)],
        &["Z spin: Ind(D⁺ ⊗ (T_C Z - 28 + Σ(2Λ²V_i + Δ(V_i)))) is divisible by 24"],
        NONE
    ),
    entry!(
        "T2.8-1", Even, Q1Even, 10, 1, false,
        &[("a1:a0", 480), ("a2:a0", 61920)],
        "{Â e^{c/2} ch(T̃ - ξ̃ - 8 + 2Λ²V + Δ(V))}⁽¹⁰⁾ = 480 {Â e^{c/2}}⁽¹⁰⁾ and {Â e^{c/2} ch(B3)}⁽¹⁰⁾ = 61920 {Â e^{c/2}}⁽¹⁰⁾",
        &[ratio(Coefficient::Q1L1Q1, 480), ratio(Coefficient::Q1L1Q2, 61920)],
        &[
            "Z spin: Ind(D⁺ ⊗ (T_C Z - 18 + 2Λ²V + Δ(V))) is divisible by 480",
            "Z spin with product boundary: Ind(D⁺ ⊗ W) ≡ 480 η̃(D_∂Z) - η̃(D_∂Z ⊗ W) mod 480, W = T_C Z - 18 + 2Λ²V + Δ(V)",
        ],
        NONE
    ),
    entry!(
        "T2.8-2", Even, Q1Even, 14, 1, false,
        &[("a1:a0", -264)],
        "{Â e^{c/2} ch(T̃ - ξ̃ - 8 + 2Λ²V + Δ(V))}⁽¹⁴⁾ = -264 {Â e^{c/2}}⁽¹⁴⁾",
        &[ratio(Coefficient::Q1L1Q1, -264)],
        &[
            "Z spin: Ind(D⁺ ⊗ (T_C Z - 22 + 2Λ²V + Δ(V))) is divisible by 264",
            "Z spin with product boundary: Ind(D⁺ ⊗ W) ≡ -264 η̃(D_∂Z) - η̃(D_∂Z ⊗ W) mod 264, W = T_C Z - 22 + 2Λ²V + Δ(V)",
        ],
        NONE
    ),
    entry!(
        "T2.8-3", Even, Q1Even, 18, 1, true,
        &[("a2:a0", 196560), ("a2:a1", -24)],
        "Z spin: {Â ch(B3)}⁽¹⁸⁾ = 196560 {Â}⁽¹⁸⁾ - 24 {Â ch(T_C Z - 26 + 2Λ²V + Δ(V))}⁽¹⁸⁾",
        &[two_term(Coefficient::Q1L1Q2, 196560, -24, Coefficient::IndexTwist(26))],
        NONE,
        &["spin reading: with c = 0 every term lives in degrees divisible by 4, so both sides vanish in degree 18"]
    ),
    entry!(
        "T2.8-3/spinc", Even, Q1Even, 18, 1, false,
        &[("a2:a0", 196560), ("a2:a1", -24)],
        "{Q1}⁽¹⁸⁾ coefficients satisfy a2 = 196560 a0 - 24 a1 with the line class kept",
        NONE_LITERAL,
        NONE,
        &["spin^c reading: the only reading in which the weight-12 relation has content in dimension 18"]
    ),
    entry!(
        "T2.8-4", Even, Q1Even, 22, 1, false,
        &[("a1:a0", -24)],
        "{Â e^{c/2} ch(T̃ - ξ̃ - 8 + 2Λ²V + Δ(V))}⁽²²⁾ = -24 {Â e^{c/2}}⁽²²⁾",
        &[ratio(Coefficient::Q1L1Q1, -24)],
        &["Z spin: Ind(D⁺ ⊗ (T_C Z - 30 + 2Λ²V + Δ(V))) is divisible by 24"],
        NONE
    ),
    entry!(
        "T2.8-5", Even, Q1Even, 14, 2, false,
        &[("a1:a0", -24)],
        "{Â e^{c/2} ch(T̃ - ξ̃ - 16 + 2Λ²V)}⁽¹⁴⁾ = -24 {Â e^{c/2}}⁽¹⁴⁾",
        &[ratio(Coefficient::Q1L2Q1, -24)],
        NONE,
        NONE
    ),
    entry!(
        "T2.9", Even, Q1TwoBundle, 14, 1, false,
        &[("a1:a0", -24)],
        "{Â e^{c/2} ch(T̃ - ξ̃ - 16 + Σ(2Λ²V_i + Δ(V_i)))}⁽¹⁴⁾ = -24 {Â e^{c/2}}⁽¹⁴⁾",
        &[ratio(Coefficient::Q1TwoQ1, -24)],
        &["Z spin: Ind(D⁺ ⊗ (T_C Z - 30 + Σ(2Λ²V_i + Δ(V_i)))) is divisible by 24"],
        NONE
    ),
    entry!("T3.2-1", Odd, QOdd, 7, 1, false, &[("a1:a0", 480)], ODD_LHS_Q, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-2", Odd, QOdd, 11, 1, false, &[("a1:a0", -264)], ODD_LHS_Q, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-3", Odd, QOdd, 19, 1, false, &[("a1:a0", -24)], ODD_LHS_Q, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-4", Odd, QOdd, 11, 2, false, &[("a1:a0", -24)], ODD_LHS_Q_L2, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-5", Odd, QOddTwoBundle, 11, 1, false, &[("a1:a0", -24)], ODD_LHS_Q_TWO, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-6", Odd, Q1Odd, 9, 1, false, &[("a1:a0", 480)], ODD_LHS_Q1, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-7", Odd, Q1Odd, 13, 1, false, &[("a1:a0", -264)], ODD_LHS_Q1, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-8", Odd, Q1Odd, 21, 1, false, &[("a1:a0", -24)], ODD_LHS_Q1, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-9", Odd, Q1Odd, 13, 2, false, &[("a1:a0", -24)], ODD_LHS_Q1_L2, NONE_LITERAL, NONE, NONE),
    entry!("T3.2-10", Odd, Q1OddTwoBundle, 13, 1, false, &[("a1:a0", -24)], ODD_LHS_Q1_TWO, NONE_LITERAL, NONE, NONE),
];

const NONE_LITERAL: &[Literal] = &[];

/// Looks up an entry by id.
pub fn lookup(id: &str) -> Option<&'static Entry> {
    REGISTRY.iter().find(|e| e.id == id)
}

/// Ids in report order.
pub fn ids() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|e| e.id)
}
