//! Reproducible 64-bit linear congruential generator.
//!
//! x_{n+1} = (6364136223846793005 * x_n + 1442695040888963407) mod 2^64.
//! The constants are part of the external contract: runs with equal seeds
//! must agree across implementations.

#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.state
    }

    /// Uniform in `0..n` from the high bits.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        (self.next_u64() >> 11) % n
    }

    /// Small signed integer in `-bound..=bound`.
    pub fn small_int(&mut self, bound: i64) -> i64 {
        let span = (2 * bound + 1) as u64;
        self.below(span) as i64 - bound
    }
}
