//! Incremental insertion solver for one runway.
//!
//! Aircraft are taken in scheduled-time order. Each step inserts the next
//! aircraft at its best slot, explores the reorder neighborhood around it,
//! and then runs a budgeted exact search over the placed aircraft with the
//! step's best objective as incumbent. Once an intermediate search exhausts
//! its budget, later intermediate searches are skipped; the final step always
//! searches with the full budget.

mod insertion;
mod reorder;
pub mod theory;

use crate::error::{Error, Result};
use crate::model::{Evaluator, Instance, RunwayMode};
use crate::par;
use crate::search::{dominance_chains, ChainSearch, Outcome};
use crate::solution::{SearchBounds, Solution, SolverConfig, SolverStats};

pub use insertion::best_insertion;
pub(crate) use insertion::{eval_from, Seq};
pub use reorder::reorder_and_insert;
pub use theory::{
    build_context_patterns, class_monotone_order, delta_move, monotone_certificate_premises, monotone_merge_compare,
    monotone_optimal_check, omega_min, ContextPattern, DeltaMove, MergeVerdict, Omega,
};

/// Indices ordered by scheduled time; ties by id.
pub fn sort_by_scheduled(inst: &Instance) -> Vec<usize> {
    let ac = inst.aircraft();
    let mut order: Vec<usize> = (0..inst.len()).collect();
    order.sort_by_key(|&i| (ac[i].scheduled, ac[i].id));
    order
}

/// Sum of each aircraft's delay at its earliest window start.
pub(crate) fn trivial_lower_bound(inst: &Instance) -> i64 {
    (0..inst.len())
        .map(|i| inst.window(i).lo().map_or(0, |lo| inst.aircraft()[i].delay_at(lo)))
        .sum()
}

pub fn solve_single_runway(inst: &Instance, cfg: &SolverConfig) -> Result<Solution> {
    if inst.mode() == RunwayMode::Dual && inst.tasks_present() == (true, true) {
        return Err(Error::Contract("mixed dual-runway instances need the dual-runway solver".into()));
    }
    par::with_workers(cfg.workers, || solve(inst, cfg))
}

fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<Solution> {
    let ev = Evaluator::new(inst);
    let mut stats = SolverStats::default();
    let n = inst.len();
    let infeasible = |a: usize| Error::Infeasible { aircraft_id: inst.aircraft()[a].id, position: None };
    if n == 0 {
        let s = Seq { order: vec![], times: vec![], f: 0 };
        return Ok(finish(inst, s, true, stats));
    }
    if cfg.prune && monotone_certificate_premises(inst) {
        let order = class_monotone_order(inst, &(0..n).collect::<Vec<_>>());
        if monotone_optimal_check(inst, &order) {
            if let Some(s) = Seq::build(&ev, order) {
                stats.case("monotone_certificate");
                return Ok(finish(inst, s, true, stats));
            }
        }
    }
    let sorted = sort_by_scheduled(inst);
    let mut cur = Seq::build(&ev, vec![sorted[0]]).ok_or_else(|| infeasible(sorted[0]))?;
    stats.incumbent_history.push((1, cur.f));
    let mut certified = true;
    let mut blown = false;
    for i in 1..n {
        let clock = par::Clock::start();
        let new = sorted[i];
        let ins = insertion::insertion_scan(&ev, &cur, new, cfg.prune, &mut stats).map(|(_, s)| s);
        let mut best = reorder::improve(&ev, cfg, &cur, new, ins, &mut stats);
        let last = i + 1 == n;
        certified = false;
        if cfg.exact_search && ev.chained() && (last || !blown) {
            let placed = &sorted[..=i];
            let sub = inst.subset(placed);
            let budget = if last { cfg.search_budget } else { cfg.step_budget };
            let all: Vec<usize> = (0..sub.len()).collect();
            if let Some(search) = ChainSearch::new(&sub, dominance_chains(&sub, &all), cfg.search(budget)) {
                let (out, st) = search.run(best.as_ref().map(|b| b.f));
                stats.search_runs += 1;
                stats.search_labels += st.labels as u64;
                match out {
                    Outcome::Found { order, .. } => {
                        let order = order.into_iter().map(|k| placed[k]).collect();
                        best = Seq::build(&ev, order);
                        certified = true;
                    }
                    Outcome::Exhausted => certified = true,
                    Outcome::Budget => {
                        stats.search_budget_hits += 1;
                        blown = true;
                    }
                }
            }
        }
        cur = best.ok_or_else(|| infeasible(new))?;
        if stats.incumbent_history.last().map(|h| h.1) != Some(cur.f) {
            stats.incumbent_history.push((i + 1, cur.f));
        }
        stats.step_micros.push((clock.seconds() * 1e6) as u64);
    }
    Ok(finish(inst, cur, certified || n == 1, stats))
}

fn finish(inst: &Instance, s: Seq, certified: bool, stats: SolverStats) -> Solution {
    let f = s.f;
    let lower = if certified { f } else { trivial_lower_bound(inst) };
    Solution {
        schedule: s.into_schedule(inst),
        bounds: Some(SearchBounds { lower, upper: f }),
        certified,
        stats,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Aircraft, OperationTask, SeparationModel, WakeClass};
    use OperationTask::*;

    fn inst(mode: RunwayMode, spec: &[(&str, OperationTask, i64, i64)]) -> Instance {
        let aircraft = spec
            .iter()
            .enumerate()
            .map(|(i, &(c, t, lo, p))| Aircraft::open(i as u32 + 1, WakeClass::from_letter(c).unwrap(), t, lo, p))
            .collect();
        Instance::new(mode, aircraft, SeparationModel::default(), None).unwrap()
    }

    #[test]
    fn three_landings() {
        let i = inst(RunwayMode::Single, &[("A", Landing, 0, 0), ("B", Landing, 0, 0), ("F", Landing, 0, 0)]);
        let s = solve_single_runway(&i, &SolverConfig::default()).unwrap();
        assert_eq!(s.objective(), 210);
        assert!(s.certified);
        let s = solve_single_runway(&i, &SolverConfig::default().without_pruning()).unwrap();
        assert_eq!(s.objective(), 210);
    }

    #[test]
    fn one_aircraft_waits_for_its_window() {
        let i = inst(RunwayMode::Single, &[("C", Takeoff, 400, 100)]);
        assert_eq!(solve_single_runway(&i, &SolverConfig::default()).unwrap().objective(), 300);
    }

    #[test]
    fn mixed_dual_is_refused() {
        let i = inst(RunwayMode::Dual, &[("C", Takeoff, 0, 0), ("C", Landing, 0, 0)]);
        assert!(matches!(solve_single_runway(&i, &SolverConfig::default()), Err(Error::Contract(_))));
    }

    #[test]
    fn infeasible_names_an_aircraft() {
        let aircraft = vec![
            Aircraft::new(1, WakeClass::from_letter("A").unwrap(), Landing, 0, 10, 0),
            Aircraft::new(2, WakeClass::from_letter("A").unwrap(), Landing, 0, 10, 0),
        ];
        let i = Instance::new(RunwayMode::Single, aircraft, SeparationModel::default(), None).unwrap();
        assert!(matches!(solve_single_runway(&i, &SolverConfig::default()), Err(Error::Infeasible { .. })));
    }
}
