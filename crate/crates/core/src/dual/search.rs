//! Order search over merged dual-runway sequences and the tail exchange
//! check.

use crate::error::Result;
use crate::model::diagnostics::Relevance;
use crate::model::{forward_schedule, Evaluator, Instance, OperationTask, Schedule};
use crate::search::{dominance_chains, ChainSearch, Outcome};
use crate::single::Seq;
use crate::solution::{SearchBounds, SolverConfig, SolverStats};

/// Best schedule found and whether it is proven optimal.
#[derive(Debug, Clone)]
pub struct BlockSearchResult {
    pub schedule: Option<Schedule>,
    pub bounds: SearchBounds,
    pub certified: bool,
}

/// Improves the best of `seeds` by exact order searches: first with the
/// landing sequence `landing_anchor` fixed as one chain, then with the
/// takeoff sequence `takeoff_anchor` fixed, then over all dominance chains
/// under `cfg.search_budget`. Certified when the full search completes or
/// the objective meets `lower`.
pub fn bounded_block_search(
    inst: &Instance,
    landing_anchor: &[usize],
    takeoff_anchor: &[usize],
    seeds: &[Schedule],
    lower: i64,
    cfg: &SolverConfig,
    stats: &mut SolverStats,
) -> Result<BlockSearchResult> {
    let ev = Evaluator::new(inst);
    let mut best: Option<Seq> = seeds
        .iter()
        .filter_map(|s| Seq::build(&ev, s.order.clone()))
        .min_by_key(|s| s.f);
    let done = |b: &Option<Seq>| b.as_ref().is_some_and(|b| b.f <= lower);
    let mut certified = done(&best);
    let landings = inst.indices_with_task(OperationTask::Landing);
    let takeoffs = inst.indices_with_task(OperationTask::Takeoff);
    let anchored = [
        (landing_anchor, &takeoffs, "anchored_landings"),
        (takeoff_anchor, &landings, "anchored_takeoffs"),
    ];
    let side_budget = cfg.step_budget.max(cfg.search_budget / 8);
    for (anchor, others, label) in anchored {
        if certified || anchor.is_empty() || others.is_empty() {
            continue;
        }
        let mut chains = vec![anchor.to_vec()];
        chains.extend(dominance_chains(inst, others));
        if let Some(o) = run(inst, chains, cfg, side_budget, &best, stats) {
            stats.case(label);
            best = Seq::build(&ev, o);
            certified = done(&best);
        }
    }
    if !certified {
        let all: Vec<usize> = (0..inst.len()).collect();
        let chains = dominance_chains(inst, &all);
        let before = stats.search_budget_hits;
        if let Some(o) = run(inst, chains, cfg, cfg.search_budget, &best, stats) {
            best = Seq::build(&ev, o);
        }
        certified = stats.search_budget_hits == before || done(&best);
    }
    let mut schedule = best.map(|b| b.into_schedule(inst));
    if !certified {
        while let Some(x) = schedule.as_ref().and_then(|s| tail_exchange(inst, s)) {
            if x.exchanged.objective >= schedule.as_ref().unwrap().objective {
                break;
            }
            stats.case("tail_exchange");
            schedule = Some(x.exchanged);
        }
    }
    let upper = schedule.as_ref().map_or(i64::MAX, |s| s.objective);
    let lower = if certified { upper } else { lower.min(upper) };
    Ok(BlockSearchResult { schedule, bounds: SearchBounds { lower, upper }, certified })
}

/// Runs one chain search; returns an order strictly better than `best`.
fn run(
    inst: &Instance,
    chains: Vec<Vec<usize>>,
    cfg: &SolverConfig,
    budget: usize,
    best: &Option<Seq>,
    stats: &mut SolverStats,
) -> Option<Vec<usize>> {
    let search = ChainSearch::new(inst, chains, cfg.search(budget))?;
    let (out, st) = search.run(best.as_ref().map(|b| b.f));
    stats.search_runs += 1;
    stats.search_labels += st.labels as u64;
    match out {
        Outcome::Found { order, .. } => Some(order),
        Outcome::Exhausted => None,
        Outcome::Budget => {
            stats.search_budget_hits += 1;
            None
        }
    }
}

/// A tail `T, L, L, T, T, …` whose last landing and first trailing takeoff
/// may be exchanged.
#[derive(Debug, Clone)]
pub struct TailExchange {
    /// Position of the takeoff before the two trailing landings.
    pub position: usize,
    /// Weighted time difference; positive when the exchange is predicted to
    /// reduce the total delay.
    pub score: i64,
    pub exchanged: Schedule,
}

/// Checks the relevance premises of the tail exchange on `phi` and returns
/// the exchanged schedule when its score is positive.
pub fn tail_exchange(inst: &Instance, phi: &Schedule) -> Option<TailExchange> {
    let n = phi.order.len();
    let task = |s: &Schedule, p: usize| inst.aircraft()[s.order[p]].task;
    let l2 = (0..n).rev().find(|&p| task(phi, p) == OperationTask::Landing)?;
    if l2 < 2 || l2 + 1 >= n || task(phi, l2 - 1) != OperationTask::Landing || task(phi, l2 - 2) != OperationTask::Takeoff {
        return None;
    }
    let i = l2 - 2;
    let rel = Relevance::new(inst, phi);
    if rel.is_relevant(i, i + 3) || !rel.is_relevant(i + 2, i + 3) || !(i + 4..n).all(|k| rel.is_relevant(k - 1, k)) {
        return None;
    }
    let mut order = phi.order.clone();
    order.swap(i + 2, i + 3);
    let exchanged = forward_schedule(inst, &order).ok()?;
    let rel_x = Relevance::new(inst, &exchanged);
    // Aircraft identities: the moved takeoff now sits at `i + 2`.
    let lead_x = |k: usize| if k == i + 4 { i + 2 } else { k - 1 };
    if !rel_x.is_relevant(i + 1, i + 2) || !(i + 4..n).all(|k| rel_x.is_relevant(lead_x(k), k)) {
        return None;
    }
    let tail = (n - (i + 3)) as i64;
    let score = tail * (phi.times[i + 3] - exchanged.times[i + 2]) + phi.times[i + 2] - exchanged.times[i + 3];
    (score > 0).then_some(TailExchange { position: i, score, exchanged })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Aircraft, RunwayMode, SeparationModel, WakeClass};
    use OperationTask::*;

    fn inst(spec: &[(&str, OperationTask, i64)]) -> Instance {
        let aircraft = spec
            .iter()
            .enumerate()
            .map(|(i, &(c, t, p))| Aircraft::open(i as u32 + 1, WakeClass::from_letter(c).unwrap(), t, 0, p))
            .collect();
        Instance::new(RunwayMode::Dual, aircraft, SeparationModel::default(), None).unwrap()
    }

    #[test]
    fn full_search_certifies_small_instance() {
        let i = inst(&[("A", Landing, 0), ("B", Landing, 0), ("C", Takeoff, 0)]);
        let seed = forward_schedule(&i, &[0, 1, 2]).unwrap();
        let mut st = SolverStats::default();
        let r = bounded_block_search(&i, &[0, 1], &[2], &[seed], 0, &SolverConfig::default(), &mut st).unwrap();
        assert!(r.certified);
        assert_eq!(r.schedule.unwrap().objective, 90);
    }

    #[test]
    fn tail_needs_two_trailing_landings() {
        let i = inst(&[("C", Takeoff, 0), ("C", Landing, 0), ("C", Takeoff, 0)]);
        let s = forward_schedule(&i, &[0, 1, 2]).unwrap();
        assert!(tail_exchange(&i, &s).is_none());
    }
}
