use crate::algebra::{ratio, Rational};

/// 64-bit linear congruential generator (Knuth's MMIX constants).
///
/// Kept deliberately simple and documented so random certificates can be
/// reproduced outside this crate: `state ← a·state + c (mod 2^64)`, output the
/// top 31 bits.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

const A: u64 = 6364136223846793005;
const C: u64 = 1442695040888963407;

impl Lcg {
    pub fn new(seed: u64) -> Self {
        let mut g = Self { state: seed };
        g.next_u32();
        g
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(A).wrapping_add(C);
        (self.state >> 33) as u32
    }

    /// A rational `n/d` with `n ∈ [-99, 99]`, `d ∈ [1, 9]`.
    pub fn next_rational(&mut self) -> Rational {
        let n = (self.next_u32() % 199) as i64 - 99;
        let d = (self.next_u32() % 9) as i64 + 1;
        ratio(n, d)
    }
}
