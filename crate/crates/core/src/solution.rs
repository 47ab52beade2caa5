use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Schedule;
use crate::search::SearchOptions;

/// Solver settings. Loadable from a flat `key = value` file; every key is
/// optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Bound-based eliminations and theory screens.
    pub prune: bool,
    /// Worker threads; 0 uses the library default.
    pub workers: usize,
    /// Single-aircraft relocations in the reorder neighborhood.
    pub relocations: bool,
    /// Monotone re-merges in the reorder neighborhood.
    pub merges: bool,
    /// Budgeted exact search on top of the constructive steps.
    pub exact_search: bool,
    /// Label budget for the final exact search.
    pub search_budget: usize,
    /// Label budget for each intermediate insertion step.
    pub step_budget: usize,
    /// Longest block pattern in the dual-runway catalog.
    pub catalog_max_len: usize,
    /// Directory for the persisted block catalog.
    pub catalog_dir: Option<PathBuf>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            prune: true,
            workers: 0,
            relocations: true,
            merges: true,
            exact_search: true,
            search_budget: 3_000_000,
            step_budget: 150_000,
            catalog_max_len: 6,
            catalog_dir: None,
        }
    }
}

impl SolverConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }

    pub(crate) fn search(&self, budget: usize) -> SearchOptions {
        SearchOptions { budget, prune: self.prune, shift_dominance: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub lower: i64,
    pub upper: i64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolverStats {
    pub candidates_generated: u64,
    pub candidates_pruned: u64,
    /// `(step, objective)` after each step that changed the incumbent.
    pub incumbent_history: Vec<(usize, i64)>,
    /// Candidate counts per case label of the reorder step.
    pub cases: BTreeMap<String, u64>,
    pub search_labels: u64,
    pub search_runs: u64,
    pub search_budget_hits: u64,
    /// Wall time per step in microseconds; excluded from serialized output so
    /// that results are byte-stable.
    #[serde(skip)]
    pub step_micros: Vec<u64>,
}

impl SolverStats {
    pub(crate) fn case(&mut self, label: &str) {
        *self.cases.entry(label.to_string()).or_default() += 1;
    }

    pub(crate) fn absorb(&mut self, other: SolverStats) {
        self.candidates_generated += other.candidates_generated;
        self.candidates_pruned += other.candidates_pruned;
        for (k, v) in other.cases {
            *self.cases.entry(k).or_default() += v;
        }
        self.search_labels += other.search_labels;
        self.search_runs += other.search_runs;
        self.search_budget_hits += other.search_budget_hits;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub schedule: Schedule,
    pub bounds: Option<SearchBounds>,
    /// True when the objective is proven optimal.
    pub certified: bool,
    pub stats: SolverStats,
}

impl Solution {
    pub fn objective(&self) -> i64 {
        self.schedule.objective
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_config_overrides_defaults() {
        let c = SolverConfig::from_toml_str("prune = false\nworkers = 3\n").unwrap();
        assert!(!c.prune);
        assert_eq!(c.workers, 3);
        assert_eq!(c.catalog_max_len, 6);
    }

    #[test]
    fn unknown_key_is_rejected() {
        assert!(SolverConfig::from_toml_str("bogus = 1").is_err());
    }
}
