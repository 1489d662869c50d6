//! Characteristic-class calculus over three interchangeable backends.
//!
//! - `Roots`: explicit formal Chern roots; every product is computed root by root.
//! - `PowerSum`: even power sums `P_m = Σ x_j^{2m}` as free generators.
//!   Multiplicative classes come from `∏ f(x_j) = exp(Σ κ_m P_m)`.
//! - `Random`: the power-sum forms evaluated under a graded substitution
//!   `P_m ↦ r_m s^{2m}`, `c ↦ r_c s` with seeded rationals. It is exact, so
//!   agreement is bit-for-bit.

mod builders;
mod family;
mod lcg;
mod model;
mod newton;

pub use builders::{
    bracket_bundle_series, euler_integer_series, euler_power, expand_qe, geometry_ranks, q_bundle_series, q_series,
    q_series_with, theta_big_tensor, theta_bundle_series, witten_bracket, Normalization, Side,
};
pub use family::{FamilyRep, RootFamily};
pub use lcg::Lcg;
pub use model::{adams_family_series, ch_with, random_evaluate, Model, Route};
pub use newton::{newton_convert, roots_to_power_sums, FamilyMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which characteristic form is being built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// `Q(TZ, ξ, V)` on a `4k`-manifold.
    QEven,
    /// `Q` with two gauge bundles.
    QTwoBundle,
    /// The second family `Q1` on a `(4k+2)`-manifold.
    Q1Even,
    /// `Q1` with two gauge bundles.
    Q1TwoBundle,
    /// Odd-dimensional layer over `Q`, dimension `4k-1`.
    QOdd,
    QOddTwoBundle,
    /// Odd-dimensional layer over `Q1`, dimension `4k+1`.
    Q1Odd,
    Q1OddTwoBundle,
}

impl Variant {
    pub const ALL: [Variant; 8] = [
        Variant::QEven,
        Variant::QTwoBundle,
        Variant::Q1Even,
        Variant::Q1TwoBundle,
        Variant::QOdd,
        Variant::QOddTwoBundle,
        Variant::Q1Odd,
        Variant::Q1OddTwoBundle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::QEven => "q-even",
            Variant::QTwoBundle => "q-two-bundle",
            Variant::Q1Even => "q1-even",
            Variant::Q1TwoBundle => "q1-two-bundle",
            Variant::QOdd => "q-odd",
            Variant::QOddTwoBundle => "q-odd-two-bundle",
            Variant::Q1Odd => "q1-odd",
            Variant::Q1OddTwoBundle => "q1-odd-two-bundle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }

    /// Whether the line factor is the second family (`θ(c)` instead of `θ1θ2θ3(c)`).
    pub fn is_q1(self) -> bool {
        matches!(
            self,
            Variant::Q1Even | Variant::Q1TwoBundle | Variant::Q1Odd | Variant::Q1OddTwoBundle
        )
    }

    pub fn is_odd(self) -> bool {
        matches!(
            self,
            Variant::QOdd | Variant::QOddTwoBundle | Variant::Q1Odd | Variant::Q1OddTwoBundle
        )
    }

    pub fn bundle_count(self) -> usize {
        match self {
            Variant::QTwoBundle | Variant::Q1TwoBundle | Variant::QOddTwoBundle | Variant::Q1OddTwoBundle => 2,
            _ => 1,
        }
    }

    /// The even variant whose form factor drives an odd variant.
    pub fn even_counterpart(self) -> Self {
        match self {
            Variant::QOdd => Variant::QEven,
            Variant::QOddTwoBundle => Variant::QTwoBundle,
            Variant::Q1Odd => Variant::Q1Even,
            Variant::Q1OddTwoBundle => Variant::Q1TwoBundle,
            v => v,
        }
    }

    /// Coefficient `a` of the anomaly constraint `P1(V) = P1(TZ) - a c^2`.
    pub fn line_coefficient(self) -> i64 {
        if self.is_q1() {
            1
        } else {
            3
        }
    }

    /// `k` with dimension `4k`, `4k+2`, `4k-1` or `4k+1` by variant.
    pub fn k_from_dimension(self, dimension: u32) -> Result<u32> {
        let (residue, shift): (u32, i64) = match self {
            Variant::QEven | Variant::QTwoBundle => (0, 0),
            Variant::Q1Even | Variant::Q1TwoBundle => (2, -2),
            Variant::QOdd | Variant::QOddTwoBundle => (3, 1),
            Variant::Q1Odd | Variant::Q1OddTwoBundle => (1, -1),
        };
        if dimension % 4 != residue || dimension < 3 {
            return Err(Error::Geometry(format!(
                "dimension {dimension} does not fit variant {} (needs ≡ {residue} mod 4)",
                self.name()
            )));
        }
        Ok(((dimension as i64 + shift) / 4) as u32)
    }
}

/// Computation backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    Roots,
    PowerSum,
    Random,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Roots => "roots",
            Backend::PowerSum => "powersum",
            Backend::Random => "random",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "roots" => Some(Backend::Roots),
            "powersum" | "power-sum" => Some(Backend::PowerSum),
            "random" => Some(Backend::Random),
            _ => None,
        }
    }
}

/// Reading of `ξ_C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum XiConvention {
    /// `ξ_R ⊗ C`, rank 2, roots `±c`.
    Complexified,
    /// The line bundle itself, rank 1, root `c`.
    Line,
}

/// A geometry together with the computational choices made for it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeometrySpec {
    pub dimension: u32,
    pub l: u32,
    pub variant: Variant,
    pub backend: Backend,
    pub q_order: u32,
    pub seed: u64,
    /// `c = 0`, the spin reading.
    pub spin: bool,
    pub xi: XiConvention,
}

impl GeometrySpec {
    pub fn new(variant: Variant, dimension: u32, l: u32, backend: Backend) -> Self {
        Self {
            dimension,
            l,
            variant,
            backend,
            q_order: 3,
            seed: 1,
            spin: false,
            xi: XiConvention::Complexified,
        }
    }

    pub fn with_q_order(mut self, q_order: u32) -> Self {
        self.q_order = q_order;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_backend(mut self, backend: Backend) -> Self {
        self.backend = backend;
        self
    }

    pub fn with_spin(mut self, spin: bool) -> Self {
        self.spin = spin;
        self
    }

    pub fn with_xi(mut self, xi: XiConvention) -> Self {
        self.xi = xi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.variant.k_from_dimension(self.dimension)?;
        if !(1..=3).contains(&self.l) {
            return Err(Error::Geometry(format!("l = {} outside 1..=3", self.l)));
        }
        if !(1..=6).contains(&self.q_order) {
            return Err(Error::Geometry(format!("q-order {} outside 1..=6", self.q_order)));
        }
        if self.backend == Backend::Roots && self.dimension > 16 {
            return Err(Error::Geometry(format!(
                "roots backend is limited to dimension 16 (asked {})",
                self.dimension
            )));
        }
        Ok(())
    }

    /// Polynomial degree cap: the dimension for even variants, and the
    /// largest even degree below `dimension - 1` for the even factor of odd ones.
    pub fn degree_cap(&self) -> u32 {
        if self.variant.is_odd() {
            self.dimension - 3
        } else {
            self.dimension
        }
    }

    /// Number of nonzero root pairs of `T_C Z`.
    pub fn tangent_root_count(&self) -> usize {
        (self.dimension / 2) as usize
    }

    /// Number of root pairs of each `V_C`.
    pub fn bundle_root_count(&self) -> usize {
        8 * self.l as usize
    }

    /// Modular weight of the top-degree coefficients.
    pub fn weight(&self) -> Result<u32> {
        crate::modular::weight_of(self.variant, self.dimension, self.l)
    }
}
