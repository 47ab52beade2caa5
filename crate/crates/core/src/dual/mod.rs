//! Dual-runway solver. Landings and takeoffs are first sequenced
//! separately on one runway each; the two optima are merged both ways,
//! spilled aircraft are reinserted, and the better merge seeds an exact
//! order search.

mod catalog;
mod matching;
mod search;

pub use catalog::{pattern_text, BlockCatalog, CatalogEntry, PairEntry, Pattern};
pub use matching::{interleave, relocate_polish, match_landings_to_takeoffs, match_takeoffs_to_landings, reinsert_spill};
pub use search::{bounded_block_search, tail_exchange, BlockSearchResult, TailExchange};

use crate::error::{Error, Result};
use crate::model::{analyze_sequence, Instance, OperationTask, RunwayMode, Schedule};
use crate::par;
use crate::single::solve_single_runway;
use crate::solution::{Solution, SolverConfig, SolverStats};

/// Solves a dual-runway instance.
pub fn solve_dual_runway(inst: &Instance, cfg: &SolverConfig) -> Result<Solution> {
    if inst.mode() != RunwayMode::Dual {
        return Err(Error::Contract("dual-runway solver needs a dual-runway instance".into()));
    }
    par::with_workers(cfg.workers, || solve(inst, cfg))
}

fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<Solution> {
    let landings = inst.indices_with_task(OperationTask::Landing);
    let takeoffs = inst.indices_with_task(OperationTask::Takeoff);
    if landings.is_empty() || takeoffs.is_empty() {
        return solve_single_runway(inst, cfg);
    }
    let mut stats = SolverStats::default();
    let (phi_a, lower_a) = task_optimum(inst, &landings, cfg, &mut stats)?;
    let (phi_b, lower_b) = task_optimum(inst, &takeoffs, cfg, &mut stats)?;
    let lower = lower_a + lower_b;

    let mut seeds = Vec::new();
    let mut first_err = None;
    for (fixed, movers, label) in [(&phi_a, &takeoffs, "merge_landings_fixed"), (&phi_b, &landings, "merge_takeoffs_fixed")] {
        let merged = matching::match_around(inst, fixed, movers)
            .and_then(|(m, spill)| reinsert_spill(inst, &m, spill).map(|s| (s, spill)));
        match merged {
            Ok((s, spill)) => {
                stats.case(label);
                *stats.cases.entry("spilled".into()).or_default() += spill as u64;
                seeds.push(s);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    if seeds.is_empty() {
        match interleave(inst, &phi_a, &phi_b) {
            Ok(s) => {
                stats.case("merge_interleaved");
                seeds.push(s);
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let seeds: Vec<Schedule> = seeds.iter().map(|s| relocate_polish(inst, s)).collect();
    let r = bounded_block_search(inst, &phi_a.order, &phi_b.order, &seeds, lower, cfg, &mut stats)?;
    let Some(schedule) = r.schedule else {
        return Err(first_err.unwrap_or(Error::Infeasible { aircraft_id: inst.aircraft()[landings[0]].id, position: None }));
    };
    label_blocks(inst, &schedule, cfg, &mut stats)?;
    stats.incumbent_history.push((inst.len(), schedule.objective));
    Ok(Solution { schedule, bounds: Some(r.bounds), certified: r.certified, stats })
}

/// Single-runway optimum of one task, mapped back to global indices, with
/// its lower bound.
fn task_optimum(inst: &Instance, idx: &[usize], cfg: &SolverConfig, stats: &mut SolverStats) -> Result<(Schedule, i64)> {
    let sub = inst.subset(idx);
    let sol = solve_single_runway(&sub, cfg)?;
    let lower = sol.bounds.map_or(0, |b| b.lower);
    stats.absorb(sol.stats);
    let order: Vec<usize> = sol.schedule.order.iter().map(|&k| idx[k]).collect();
    Ok((Schedule::from_times(inst, order, sol.schedule.times), lower))
}

/// Counts final blocks by whether their class/task pattern is catalogued.
fn label_blocks(inst: &Instance, s: &Schedule, cfg: &SolverConfig, stats: &mut SolverStats) -> Result<()> {
    let catalog = BlockCatalog::load_or_build(inst.model(), cfg.catalog_max_len, cfg.catalog_dir.as_deref())?;
    for b in analyze_sequence(inst, s).blocks {
        let pattern: Pattern = (b.span.0..=b.span.1)
            .map(|p| {
                let a = &inst.aircraft()[s.order[p]];
                (a.class, a.task)
            })
            .collect();
        stats.case(if catalog.lookup(&pattern).is_some() { "block_catalogued" } else { "block_uncatalogued" });
    }
    Ok(())
}
