//! Reference configurations shipped with the crate (see `fixtures/*.json`).
//!
//! The five bound fixtures all use `w = 0.01`, natural units, and support at
//! least four bound radial levels for `m ∈ {−1, 0, 1}`.

use crate::config::RunConfig;
use crate::model::System;

const BOUND: [&str; 5] = [
    include_str!("../fixtures/bound_1.json"),
    include_str!("../fixtures/bound_2.json"),
    include_str!("../fixtures/bound_3.json"),
    include_str!("../fixtures/bound_4.json"),
    include_str!("../fixtures/bound_5.json"),
];
const UNIFORM: &str = include_str!("../fixtures/uniform.json");
const TABLE: &str = include_str!("../fixtures/table.json");
const MAGNETIC: &str = include_str!("../fixtures/magnetic.json");

pub const BOUND_COUNT: usize = BOUND.len();

fn load(text: &str) -> RunConfig {
    RunConfig::from_json(text).expect("shipped fixture parses")
}

pub fn bound_config(index: usize) -> RunConfig {
    load(BOUND[index])
}

/// Bound fixture `index` in `0..5`.
pub fn bound(index: usize) -> System {
    bound_config(index).system().expect("shipped fixture is valid")
}

pub fn all_bound() -> Vec<System> {
    (0..BOUND_COUNT).map(bound).collect()
}

/// Unit couplings: `v0 = … = v5 = u0 = 2`, `u1 = 1`, `η = 3/4` at `m = 1`.
/// It has no bound states.
pub fn uniform() -> System {
    load(UNIFORM).system().expect("shipped fixture is valid")
}

/// Configuration for the table-pattern checks; its fields section holds
/// the "switched on" values of B and Φ.
pub fn table() -> System {
    load(TABLE).system().expect("shipped fixture is valid")
}

/// Magnetic-response configuration; `run.m` and `run.beta` are set.
pub fn magnetic_config() -> RunConfig {
    load(MAGNETIC)
}
