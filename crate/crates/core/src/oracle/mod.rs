//! Independent exact solvers for small instances and an LP-format exporter.
//!
//! Neither solver shares code with the main solvers beyond the instance
//! type and the window lookup.

mod brute;
mod dp;
mod mip;

use serde::Serialize;

pub use brute::{brute_force_optimum, BRUTE_FORCE_CAP};
pub use dp::{dominance_dp_optimum, DP_CAP};
pub use mip::export_mip;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMethod {
    BruteForce,
    DominanceDp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub objective: i64,
    /// Instance indices.
    pub order: Vec<usize>,
    pub explored: u64,
    pub method: OracleMethod,
}
