//! Printed q-expansion coefficients, rebuilt as canonical bundle expressions.
//!
//! Everything here is written the way the expansions are stated (leading
//! bracket term 1), so each builder can be compared structurally against the
//! series computed by [`crate::charcalc`] under `Normalization::UnitLeading`.

use num_bigint::BigInt;

use crate::bundle::{Atom, BundleExpr, RankContext};
use crate::error::Result;
use crate::verify::registry::Coefficient;

/// Expression builder bound to a set of atom ranks.
pub struct Printed<'a> {
    ranks: &'a dyn RankContext,
}

fn atom(a: Atom) -> BundleExpr {
    BundleExpr::atom(a)
}

fn int(n: i64) -> BundleExpr {
    BundleExpr::integer(n)
}

impl<'a> Printed<'a> {
    pub fn new(ranks: &'a dyn RankContext) -> Self {
        Self { ranks }
    }

    fn tilde(&self, a: Atom) -> Result<BundleExpr> {
        atom(a).tilde(self.ranks)
    }

    /// `T̃`.
    pub fn t(&self) -> Result<BundleExpr> {
        self.tilde(Atom::TangentC)
    }

    /// `ξ̃`.
    pub fn xi(&self) -> Result<BundleExpr> {
        self.tilde(Atom::XiC)
    }

    /// `T̃ + 2Λ²ξ̃ - ξ̃⊗ξ̃ + ξ̃`, the first coefficient of `Θ`.
    pub fn theta_q1(&self) -> Result<BundleExpr> {
        let xi = self.xi()?;
        Ok(self.t()? + xi.lambda(2)?.scale(2) - &xi * &xi + xi)
    }

    /// `B`, the second coefficient of `Θ` as printed.
    pub fn theta_q2(&self) -> Result<BundleExpr> {
        let t = self.t()?;
        let xi = self.xi()?;
        let l2 = xi.lambda(2)?;
        let l3 = xi.lambda(3)?;
        let l4 = xi.lambda(4)?;
        let mixed = l2.scale(2) - &xi * &xi + xi.clone();
        Ok(
            t.sym(2)? + t.clone() + &mixed * &t + &l2 * &l2 + l4.scale(2) - (&xi * &l3).scale(2) + (&xi * &l2).scale(2)
                - xi.pow(3)
                + xi
                + l2,
        )
    }

    /// `2Λ²V_i + Δ(V_i)`.
    pub fn gauge(&self, i: u8) -> Result<BundleExpr> {
        Ok(atom(Atom::VC(i)).lambda(2)?.scale(2) + atom(Atom::DeltaV(i)))
    }

    /// `2Λ²V_i`.
    pub fn gauge_even(&self, i: u8) -> Result<BundleExpr> {
        Ok(atom(Atom::VC(i)).lambda(2)?.scale(2))
    }

    /// `Δ(V)⊗V + 2Λ⁴V + 2V⊗V`, the `q²` part of the `l = 1` bracket.
    pub fn bracket_l1_q2(&self, i: u8) -> Result<BundleExpr> {
        let v = atom(Atom::VC(i));
        Ok(atom(Atom::DeltaV(i)) * v.clone() + v.lambda(4)?.scale(2) + (&v * &v).scale(2))
    }

    /// `Δ(V) + 2Λ⁴V + 2V⊗V`, the `q²` part of the `l = 2` bracket.
    pub fn bracket_l2_q2(&self, i: u8) -> Result<BundleExpr> {
        let v = atom(Atom::VC(i));
        Ok(atom(Atom::DeltaV(i)) + v.lambda(4)?.scale(2) + (&v * &v).scale(2))
    }

    /// `X - 8 + 2Λ²V + Δ(V)` with `X` the first coefficient of `Θ`.
    pub fn q_l1_q1(&self) -> Result<BundleExpr> {
        Ok(self.theta_q1()? - int(8) + self.gauge(1)?)
    }

    /// `B1` as printed.
    pub fn q_l1_q2(&self) -> Result<BundleExpr> {
        let x = self.theta_q1()?;
        let g = self.gauge(1)?;
        Ok(int(20) + self.theta_q2()? - x.scale(8) - g.scale(8) + &g * &x + self.bracket_l1_q2(1)?)
    }

    /// `X - 16 + 2Λ²V`.
    pub fn q_l2_q1(&self) -> Result<BundleExpr> {
        Ok(self.theta_q1()? - int(16) + self.gauge_even(1)?)
    }

    /// `B2` as printed.
    pub fn q_l2_q2(&self) -> Result<BundleExpr> {
        let x = self.theta_q1()?;
        let v = atom(Atom::VC(1));
        let l2 = v.lambda(2)?;
        Ok(int(104) + self.theta_q2()? - x.scale(16) - l2.scale(32)
            + atom(Atom::DeltaV(1))
            + (&l2 * &x).scale(2)
            + v.lambda(4)?.scale(2)
            + (&v * &v).scale(2))
    }

    /// `X - 16 + Σ_i (2Λ²V_i + Δ(V_i))`, two gauge bundles with `l = 1`.
    pub fn q_two_q1(&self) -> Result<BundleExpr> {
        Ok(self.theta_q1()? - int(16) + self.gauge(1)? + self.gauge(2)?)
    }

    /// `T̃ - ξ̃`, the first coefficient of `Θ1`.
    pub fn theta1_q1(&self) -> Result<BundleExpr> {
        Ok(self.t()? - self.xi()?)
    }

    /// `T̃ - ξ̃ - 8 + 2Λ²V + Δ(V)`.
    pub fn q1_l1_q1(&self) -> Result<BundleExpr> {
        Ok(self.theta1_q1()? - int(8) + self.gauge(1)?)
    }

    /// `B3` as printed.
    pub fn q1_l1_q2(&self) -> Result<BundleExpr> {
        let t = self.t()?;
        let xi = self.xi()?;
        Ok(
            int(20) - t.scale(7) + xi.lambda(2)? + xi.scale(7) - &t * &xi + t.sym(2)? - self.gauge(1)?.scale(8)
                + self.bracket_l1_q2(1)?,
        )
    }

    /// The `q²` coefficient of `Q1` for `l = 1` as computed: `B3` plus the
    /// cross term `(T̃ - ξ̃)⊗(2Λ²V + Δ(V))`.
    pub fn q1_l1_q2_full(&self) -> Result<BundleExpr> {
        Ok(self.q1_l1_q2()? + &self.theta1_q1()? * &self.gauge(1)?)
    }

    /// `T̃ - ξ̃ - 16 + 2Λ²V`.
    pub fn q1_l2_q1(&self) -> Result<BundleExpr> {
        Ok(self.theta1_q1()? - int(16) + self.gauge_even(1)?)
    }

    /// `T̃ - ξ̃ - 16 + Σ_i (2Λ²V_i + Δ(V_i))`.
    pub fn q1_two_q1(&self) -> Result<BundleExpr> {
        Ok(self.theta1_q1()? - int(16) + self.gauge(1)? + self.gauge(2)?)
    }

    /// `Ẽ + 2Λ²Ẽ - Ẽ⊗Ẽ`.
    pub fn e_q1(&self) -> Result<BundleExpr> {
        let e = self.tilde(Atom::EC)?;
        Ok(e.clone() + e.lambda(2)?.scale(2) - &e * &e)
    }

    /// `T_C Z - n + 2Λ²V + Δ(V)` with the unreduced tangent bundle.
    pub fn index_twist(&self, n: i64) -> Result<BundleExpr> {
        Ok(atom(Atom::TangentC) - int(n) + self.gauge(1)?)
    }

    /// The expression a registry coefficient names.
    pub fn coefficient(&self, c: Coefficient) -> Result<BundleExpr> {
        match c {
            Coefficient::QL1Q1 => self.q_l1_q1(),
            Coefficient::QL1Q2 => self.q_l1_q2(),
            Coefficient::QL2Q1 => self.q_l2_q1(),
            Coefficient::QL2Q2 => self.q_l2_q2(),
            Coefficient::QTwoQ1 => self.q_two_q1(),
            Coefficient::Q1L1Q1 => self.q1_l1_q1(),
            Coefficient::Q1L1Q2 => self.q1_l1_q2(),
            Coefficient::Q1L2Q1 => self.q1_l2_q1(),
            Coefficient::Q1TwoQ1 => self.q1_two_q1(),
            Coefficient::IndexTwist(n) => self.index_twist(n),
        }
    }
}

/// `[1, -8l, 4l(8l-3)]`, the printed start of `∏(1-q^n)^{8l}`.
pub fn euler_printed(l: u32) -> [BigInt; 3] {
    let l = BigInt::from(l);
    [
        BigInt::from(1),
        BigInt::from(-8) * &l,
        BigInt::from(4) * &l * (BigInt::from(8) * &l - 3),
    ]
}
