//! Fixtures shared by the benchmarks.

use cuspidal_core::genweight::build_f;
use cuspidal_core::random::{random_family, seeded_rng};
use cuspidal_core::{GenModule, NilpotentFamily, Params};

/// A seeded random family of rank `n` and dimension `dim`.
pub fn family(n: usize, dim: usize, seed: u64) -> NilpotentFamily {
    random_family(&mut seeded_rng(seed), n, dim)
}

/// `F V` for a seeded random family with the default parameters.
pub fn module(n: usize, dim: usize, radius: i64, seed: u64) -> GenModule {
    let params = Params::default_for(n).expect("default parameters exist");
    build_f(&family(n, dim, seed), &params, radius).expect("valid family")
}
