//! Shared test-side oracles, independent of the library's implementation
//! paths. Each integration-test binary uses its own slice of this module.
#![allow(dead_code)]

pub mod pl;
pub mod snf_oracle;

/// Small deterministic generator for reproducible random tests.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u64(&mut self) -> u64 {
        // Numerical Recipes LCG constants.
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}
