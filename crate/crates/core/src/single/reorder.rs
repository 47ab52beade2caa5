use crate::error::{Error, Result};
use crate::model::{Evaluator, Instance, Schedule};
use crate::par;
use crate::solution::{SolverConfig, SolverStats};

use super::insertion::{eval_from, insertion_scan, Seq};
use super::theory::{monotone_merge_compare, MergeVerdict};

/// Breakpoints counted within each task's subsequence.
fn breakpoints(ev: &Evaluator, order: &[usize]) -> usize {
    let ac = ev.instance.aircraft();
    let mut last: [Option<u8>; 2] = [None, None];
    let mut n = 0;
    for &a in order {
        let t = ac[a].task.index();
        let c = ac[a].class.ordinal();
        if last[t].is_some_and(|p| p < c) {
            n += 1;
        }
        last[t] = Some(c);
    }
    n
}

fn transitions(ev: &Evaluator, order: &[usize]) -> usize {
    order.windows(2).filter(|w| ev.task(w[0]) != ev.task(w[1])).count()
}

/// Case label of a candidate relative to the prefix it extends.
fn case_label(ev: &Evaluator, prefix: &[usize], cand: &[usize]) -> &'static str {
    let bp_up = breakpoints(ev, cand) > breakpoints(ev, prefix);
    let pure = cand.iter().all(|&a| ev.task(a) == ev.task(cand[0]));
    if pure {
        return if bp_up { "1.2" } else { "1.1" };
    }
    match (transitions(ev, cand) > transitions(ev, prefix), bp_up) {
        (false, false) => "2.1.1",
        (false, true) => "2.1.2",
        (true, false) => "2.2.1",
        (true, true) => "2.2.2",
    }
}

/// Some same-task neighbor pair touching `positions` has classes
/// `(ρ2−1, ρ2)`.
fn rho_adjacency(ev: &Evaluator, order: &[usize], positions: &[usize]) -> bool {
    let ac = ev.instance.aircraft();
    let r2 = ev.instance.model().rho2;
    positions.iter().any(|&p| {
        [p.checked_sub(1).map(|q| (q, p)), (p + 1 < order.len()).then_some((p, p + 1))]
            .into_iter()
            .flatten()
            .any(|(a, b)| {
                let (x, y) = (&ac[order[a]], &ac[order[b]]);
                x.task == y.task && x.class.ordinal() + 1 == r2 && y.class.ordinal() == r2
            })
    })
}

#[derive(Default)]
struct Tally {
    generated: u64,
    pruned: u64,
    cases: Vec<&'static str>,
}

impl Tally {
    fn into_stats(self, stats: &mut SolverStats) {
        stats.candidates_generated += self.generated;
        stats.candidates_pruned += self.pruned;
        for c in self.cases {
            stats.case(c);
        }
    }
}

fn better(a: &Option<Seq>, b: &Option<Seq>) -> bool {
    match (a, b) {
        (Some(a), Some(b)) => a.f < b.f,
        (Some(_), None) => true,
        _ => false,
    }
}

/// Relocations of one representative per `(class, task)` group next to the
/// inserted aircraft, for every insertion slot.
fn pattern_relocations(
    ev: &Evaluator,
    cfg: &SolverConfig,
    prefix: &Seq,
    new: usize,
    cap: i64,
    stats: &mut SolverStats,
) -> Option<Seq> {
    let m = prefix.order.len();
    let ac = ev.instance.aircraft();
    let cum = prefix.cum(ev);
    let group = |a: usize| (ac[a].task.index(), ac[a].class.index());
    let mut groups: Vec<(usize, usize)> = prefix.order.iter().map(|&a| group(a)).collect();
    groups.sort_unstable();
    groups.dedup();
    let bp_prefix = breakpoints(ev, &prefix.order);
    let filter_bp = cfg.prune && !cfg.exact_search;
    let slots: Vec<usize> = (0..=m).collect();
    let rows = par::map_collect(&slots, |&pos| {
        let mut tally = Tally::default();
        let mut best: Option<Seq> = None;
        for &g in &groups {
            let left = (0..pos).rev().find(|&q| group(prefix.order[q]) == g);
            let right = (pos..m).find(|&q| group(prefix.order[q]) == g);
            for q in [left, right].into_iter().flatten() {
                for before_new in [true, false] {
                    if (q + 1 == pos && before_new) || (q == pos && !before_new) {
                        continue;
                    }
                    let x = prefix.order[q];
                    let mut order: Vec<usize> = prefix.order.iter().copied().filter(|&a| a != x).collect();
                    let slot = if q < pos { pos - 1 } else { pos };
                    order.insert(slot, new);
                    let (px, pn) = if before_new { (slot, slot + 1) } else { (slot + 1, slot) };
                    order.insert(px, x);
                    tally.generated += 1;
                    if filter_bp
                        && breakpoints(ev, &order) >= bp_prefix + 2
                        && !rho_adjacency(ev, &order, &[px, pn])
                    {
                        tally.pruned += 1;
                        continue;
                    }
                    tally.cases.push(case_label(ev, &prefix.order, &order));
                    let from = q.min(slot);
                    let c = best.as_ref().map_or(cap, |b| b.f - 1);
                    if let Some(s) = eval_from(ev, order, &prefix.times, from, cum[from], c) {
                        best = Some(s);
                    }
                }
            }
        }
        (best, tally)
    });
    let mut best = None;
    for (cand, tally) in rows {
        tally.into_stats(stats);
        if better(&cand, &best) {
            best = cand;
        }
    }
    best
}

/// Layout facts that gate the theory screens.
struct Layout {
    pure: bool,
    tight: bool,
    delayed: bool,
    monotone: bool,
    starts_at_t0: bool,
}

impl Layout {
    fn of(ev: &Evaluator, s: &Seq) -> Self {
        let ac = ev.instance.aircraft();
        let o = &s.order;
        let pure = o.iter().all(|&a| ev.task(a) == ev.task(o[0]));
        let tight = (1..o.len()).all(|k| s.times[k] == s.times[k - 1] + ev.y(o[k - 1], o[k]));
        let delayed = o.iter().zip(&s.times).all(|(&a, &t)| t > ac[a].scheduled);
        let monotone = o.windows(2).all(|w| ac[w[0]].class >= ac[w[1]].class);
        let starts_at_t0 = s.times.first() == Some(&ev.instance.horizon_start());
        Self { pure, tight, delayed, monotone, starts_at_t0 }
    }
}

/// True when a theory screen rules out moving position `i` to `j`.
fn screened(ev: &Evaluator, s: &Seq, l: &Layout, i: usize, j: usize) -> bool {
    if !(l.pure && l.tight && ev.chained() && ev.instance.interruption().is_none()) {
        return false;
    }
    let o = &s.order;
    let n = o.len();
    let x = o[i];
    let y = |a: usize, b: usize| ev.y(o[a], o[b]);
    if j < i {
        return l.starts_at_t0 && s.times[i] <= ev.instance.aircraft()[x].scheduled;
    }
    if !l.delayed {
        return false;
    }
    if l.monotone && i + 1 < n {
        let e = if i == 0 { y(0, 1) } else { y(i - 1, i) + y(i, i + 1) - y(i - 1, i + 1) };
        if e == ev.instance.model().t0 {
            return true;
        }
    }
    if i >= 1 && j >= i + 2 && j + 1 < n {
        let d1 = y(i - 1, i) + y(i, i + 1) - y(i - 1, i + 1);
        let d2 = d1 + y(j, j + 1) - y(j, i) - y(i, j + 1);
        let s_b = s.times[j] - d1 + y(j, i);
        let m2 = (j - i - 2) as i64;
        return d2 == 0 && d1 * (m2 + 2) <= s_b - s.times[i];
    }
    false
}

/// Best-improvement single relocations until no move helps.
fn local_search(ev: &Evaluator, cfg: &SolverConfig, mut cur: Seq, stats: &mut SolverStats) -> Seq {
    let n = cur.order.len();
    let rows_idx: Vec<usize> = (0..n).collect();
    for _ in 0..(4 * n).max(8) {
        let cum = cur.cum(ev);
        let layout = Layout::of(ev, &cur);
        let rows = par::map_collect(&rows_idx, |&i| {
            let mut tally = Tally::default();
            let mut best: Option<Seq> = None;
            for j in 0..n {
                if j == i || j + 1 == i {
                    continue;
                }
                tally.generated += 1;
                if cfg.prune && screened(ev, &cur, &layout, i, j) {
                    tally.pruned += 1;
                    continue;
                }
                let mut order = cur.order.clone();
                let x = order.remove(i);
                order.insert(j, x);
                let from = i.min(j);
                let cap = best.as_ref().map_or(cur.f, |b| b.f) - 1;
                if let Some(s) = eval_from(ev, order, &cur.times, from, cum[from], cap) {
                    best = Some(s);
                }
            }
            (best, tally)
        });
        let mut best = None;
        for (cand, tally) in rows {
            tally.into_stats(stats);
            if better(&cand, &best) {
                best = cand;
            }
        }
        match best {
            Some(b) if b.f < cur.f => cur = b,
            _ => break,
        }
    }
    cur
}

/// Maximal runs `[start, end)` of one task with nonincreasing classes.
fn monotone_runs(ev: &Evaluator, order: &[usize]) -> Vec<(usize, usize)> {
    let ac = ev.instance.aircraft();
    let mut runs = Vec::new();
    let mut start = 0;
    for k in 1..=order.len() {
        let cut = k == order.len() || {
            let (a, b) = (&ac[order[k - 1]], &ac[order[k]]);
            a.task != b.task || a.class < b.class
        };
        if cut {
            runs.push((start, k));
            start = k;
        }
    }
    runs
}

/// Monotone re-merges of the runs adjacent to the run holding `new`.
fn merges(ev: &Evaluator, cfg: &SolverConfig, cur: &Seq, new: usize, stats: &mut SolverStats) -> Option<Seq> {
    let ac = ev.instance.aircraft();
    let runs = monotone_runs(ev, &cur.order);
    let p = cur.order.iter().position(|&a| a == new)?;
    let r = runs.iter().position(|&(s, e)| s <= p && p < e)?;
    let cum = cur.cum(ev);
    let mut best: Option<Seq> = None;
    for (a, b) in [(r.checked_sub(1), Some(r)), (Some(r), Some(r + 1))] {
        let (Some(a), Some(b)) = (a, b) else { continue };
        let (Some(&(s1, e1)), Some(&(s2, e2))) = (runs.get(a), runs.get(b)) else { continue };
        let task = ac[cur.order[s1]].task;
        if ac[cur.order[s2]].task != task {
            continue;
        }
        stats.candidates_generated += 1;
        let class = |k: usize| ac[cur.order[k]].class;
        let phi1: Vec<_> = (s1..e1).map(class).collect();
        let phi2: Vec<_> = (s2..e2).map(class).collect();
        let verdict = monotone_merge_compare(ev.instance.model(), &phi1, &phi2, task);
        if cfg.prune && matches!(verdict, Ok(MergeVerdict::ConcatenationBetter)) {
            stats.candidates_pruned += 1;
            continue;
        }
        let mut merged: Vec<usize> = cur.order[s1..e2].to_vec();
        merged.sort_by_key(|&x| std::cmp::Reverse(ac[x].class));
        let mut order = cur.order[..s1].to_vec();
        order.extend(merged);
        order.extend_from_slice(&cur.order[e2..]);
        let cap = best.as_ref().map_or(cur.f, |b| b.f) - 1;
        if let Some(s) = eval_from(ev, order, &cur.times, s1, cum[s1], cap) {
            best = Some(s);
        }
    }
    best
}

/// Searches the reorder neighborhood of `prefix + new` starting from
/// `incumbent`; returns the best order found.
pub(crate) fn improve(
    ev: &Evaluator,
    cfg: &SolverConfig,
    prefix: &Seq,
    new: usize,
    incumbent: Option<Seq>,
    stats: &mut SolverStats,
) -> Option<Seq> {
    let mut best = incumbent;
    if cfg.relocations {
        let cap = best.as_ref().map_or(i64::MAX, |b| b.f - 1);
        let cand = pattern_relocations(ev, cfg, prefix, new, cap, stats);
        if better(&cand, &best) {
            best = cand;
        }
    }
    let mut cur = best?;
    loop {
        let f = cur.f;
        if cfg.relocations {
            cur = local_search(ev, cfg, cur, stats);
        }
        if cfg.merges {
            if let Some(m) = merges(ev, cfg, &cur, new, stats) {
                if m.f < cur.f {
                    cur = m;
                }
            }
        }
        if cur.f == f {
            break;
        }
    }
    stats.case(case_label(ev, &prefix.order, &cur.order));
    Some(cur)
}

/// Best schedule of `prefix` plus `new` over plain insertions and the reorder
/// neighborhood. `f_inc` caps the objectives worth considering.
pub fn reorder_and_insert(
    inst: &Instance,
    prefix: &[usize],
    new: usize,
    f_inc: Option<i64>,
    cfg: &SolverConfig,
) -> Result<(Schedule, SolverStats)> {
    let ev = Evaluator::new(inst);
    let base = Seq::build(&ev, prefix.to_vec()).ok_or_else(|| Error::Contract("prefix is infeasible".into()))?;
    let mut stats = SolverStats::default();
    let ins = insertion_scan(&ev, &base, new, cfg.prune, &mut stats).map(|(_, s)| s);
    let ins = ins.filter(|s| f_inc.is_none_or(|f| s.f <= f));
    let best = improve(&ev, cfg, &base, new, ins, &mut stats)
        .ok_or(Error::Infeasible { aircraft_id: inst.aircraft()[new].id, position: None })?;
    Ok((best.into_schedule(inst), stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Aircraft, OperationTask, RunwayMode, SeparationModel, WakeClass};

    fn landings(classes: &[&str], sched: &[i64]) -> Instance {
        let aircraft = classes
            .iter()
            .zip(sched)
            .enumerate()
            .map(|(i, (c, &p))| {
                Aircraft::open(i as u32 + 1, WakeClass::from_letter(c).unwrap(), OperationTask::Landing, 0, p)
            })
            .collect();
        Instance::new(RunwayMode::Single, aircraft, SeparationModel::default(), None).unwrap()
    }

    #[test]
    fn tail_insertion_kept_for_monotone_chain() {
        let inst = landings(&["F", "B", "A"], &[0, 0, 0]);
        let (s, _) = reorder_and_insert(&inst, &[0, 1], 2, None, &SolverConfig::default()).unwrap();
        assert_eq!((s.order, s.objective), (vec![0, 1, 2], 210));
    }

    #[test]
    fn relocation_fixes_a_bad_prefix() {
        let inst = landings(&["A", "F", "B"], &[0, 0, 0]);
        let (s, stats) = reorder_and_insert(&inst, &[0, 1], 2, None, &SolverConfig::default()).unwrap();
        assert_eq!(s.objective, 210);
        assert!(stats.candidates_generated > 0);
    }

    #[test]
    fn runs_split_at_ascents() {
        let inst = landings(&["C", "D", "B", "F", "A"], &[0; 5]);
        let ev = Evaluator::new(&inst);
        assert_eq!(monotone_runs(&ev, &[0, 1, 2, 3, 4]), vec![(0, 1), (1, 3), (3, 5)]);
        assert_eq!(breakpoints(&ev, &[0, 1, 2, 3, 4]), 2);
    }
}
