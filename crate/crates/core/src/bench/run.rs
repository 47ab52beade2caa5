use serde::Serialize;

use super::generate::{generate_instance, GenSpec};
use crate::oracle::{brute_force_optimum, dominance_dp_optimum, OracleMethod};
use crate::solution::SolverConfig;

/// One benchmark row. `gap_pct` is positive when our objective is lower.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub spec: GenSpec,
    pub objective: Option<i64>,
    pub wall_time_s: f64,
    pub certified: bool,
    pub oracle_objective: Option<i64>,
    pub gap_pct: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub solver: SolverConfig,
    /// Largest instance handed to the oracle; 0 disables it.
    pub oracle_cap: usize,
    pub oracle: OracleMethod,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self { solver: SolverConfig::default(), oracle_cap: 0, oracle: OracleMethod::DominanceDp }
    }
}

/// `100·(other − ours)/other`; `None` when `other` is zero and `ours` is not.
pub fn gap_pct(ours: i64, other: i64) -> Option<f64> {
    match (ours, other) {
        (_, 0) => (ours == 0).then_some(0.0),
        _ => Some(100.0 * (other - ours) as f64 / other as f64),
    }
}

/// Generates and solves each spec in order. Rows run one after another so
/// that wall times are not shared between solves.
pub fn run_benchmark(specs: &[GenSpec], opts: &BenchOptions) -> Vec<BenchRow> {
    specs.iter().map(|spec| run_one(spec, opts)).collect()
}

fn run_one(spec: &GenSpec, opts: &BenchOptions) -> BenchRow {
    let mut row = BenchRow {
        spec: spec.clone(),
        objective: None,
        wall_time_s: 0.0,
        certified: false,
        oracle_objective: None,
        gap_pct: None,
        error: None,
    };
    let inst = match generate_instance(spec) {
        Ok(i) => i,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    let clock = crate::par::Clock::start();
    let solved = crate::solve(&inst, &opts.solver);
    row.wall_time_s = clock.seconds();
    match solved {
        Ok(s) => {
            row.objective = Some(s.objective());
            row.certified = s.certified;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    if opts.oracle_cap > 0 && inst.len() <= opts.oracle_cap {
        let oracle = match opts.oracle {
            OracleMethod::BruteForce => brute_force_optimum(&inst, opts.oracle_cap),
            OracleMethod::DominanceDp => dominance_dp_optimum(&inst, opts.oracle_cap),
        };
        match oracle {
            Ok(o) => row.oracle_objective = Some(o.objective),
            Err(e) => {
                row.error.get_or_insert(format!("oracle: {e}"));
            }
        }
    }
    if let (Some(ours), Some(other)) = (row.objective, row.oracle_objective) {
        row.gap_pct = gap_pct(ours, other);
    }
    row
}
