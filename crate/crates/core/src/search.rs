//! Exact layered search over orders that respect a set of precedence chains.
//!
//! Aircraft are partitioned into chains; within a chain the relative order is
//! fixed. A state after `k` placements is identified by the per-chain counts
//! and the wake class of the most recent landing and takeoff. Under the
//! same-task triangle inequality those two operations are the only binding
//! predecessors, so a state's future depends only on its key and on the
//! times of the two last operations. Each key keeps a Pareto set of
//! `(last landing time, last takeoff time, delay)` labels.
//!
//! Work is bounded by a label budget rather than by wall clock so that results
//! are reproducible.

use crate::model::{Instance, OperationTask, RunwayMode};
use crate::par;

/// Identifies a partial order: mixed-radix chain counts and last classes
/// (`0` when no operation of that task has been placed).
type Key = (u128, u8, u8);

#[derive(Debug, Clone, Copy)]
struct Label {
    times: [i64; 2],
    delay: i64,
    rec: u32,
}

const NO_TIME: i64 = i64::MIN / 4;
const CHUNK: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Best order found, strictly better than the incumbent.
    Found { order: Vec<usize>, objective: i64 },
    /// Search completed: no chain-respecting order beats the incumbent (or
    /// none is feasible when there was no incumbent).
    Exhausted,
    /// The label budget ran out before completion.
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of labels created.
    pub budget: usize,
    /// Bound-based pruning against the incumbent.
    pub prune: bool,
    /// Delay-weighted label dominance; ignored unless the instance has no
    /// interruption and deadlines can never bind.
    pub shift_dominance: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { budget: 2_000_000, prune: true, shift_dominance: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub labels: usize,
    pub pruned: usize,
}

pub struct ChainSearch<'a> {
    inst: &'a Instance,
    chains: Vec<Vec<usize>>,
    radix: Vec<u128>,
    /// `y[lead_task][lead_class][trail_task][trail_class]` flattened.
    y: Vec<i64>,
    eta: usize,
    row_min: Vec<i64>,
    task_min: [i64; 2],
    all_min: i64,
    /// Separation from a leading operation of task `i` to the other task.
    cross: [i64; 2],
    single: bool,
    shift_ok: bool,
    opts: SearchOptions,
}

impl<'a> ChainSearch<'a> {
    /// `chains` must partition the instance and each chain must hold a single
    /// task. Returns `None` when the model lacks the triangle property the
    /// state key relies on, or the instance is too large to pack.
    pub fn new(inst: &'a Instance, chains: Vec<Vec<usize>>, opts: SearchOptions) -> Option<Self> {
        let m = inst.model();
        if !m.within_task_triangle() || inst.len() > 120 {
            return None;
        }
        debug_assert_eq!(chains.iter().map(Vec::len).sum::<usize>(), inst.len());
        debug_assert!(chains
            .iter()
            .all(|c| c.iter().all(|&a| inst.aircraft()[a].task == inst.aircraft()[c[0]].task)));
        let eta = m.eta as usize;
        let mode = inst.mode();
        let mut y = vec![0; 4 * eta * eta];
        for lt in 0..2 {
            for lc in 0..eta {
                for tt in 0..2 {
                    for tc in 0..eta {
                        let lead = (crate::WakeClass::from_ordinal(lc as u8 + 1), task_of(lt));
                        let trail = (crate::WakeClass::from_ordinal(tc as u8 + 1), task_of(tt));
                        y[((lt * eta + lc) * 2 + tt) * eta + tc] = m.separation(mode, lead, trail).unwrap_or(0);
                    }
                }
            }
        }
        let mut row_min = vec![0; 2 * eta];
        for t in 0..2 {
            for c in 0..eta {
                row_min[t * eta + c] = (0..eta).map(|tc| y[((t * eta + c) * 2 + t) * eta + tc]).min().unwrap_or(0);
            }
        }
        let task_min = [m.min_same_task(OperationTask::Landing), m.min_same_task(OperationTask::Takeoff)];
        let cross = match mode {
            RunwayMode::Single => [m.same_runway_td, m.same_runway_dt],
            RunwayMode::Dual => [m.dual_pd, m.dual_dp],
        };
        let all_min = task_min[0].min(task_min[1]).min(cross[0]).min(cross[1]);
        let radix = chains.iter().map(|c| c.len() as u128 + 1).collect();
        let shift_ok = inst.interruption().is_none() && deadlines_never_bind(inst);
        Some(Self {
            inst,
            chains,
            radix,
            y,
            eta,
            row_min,
            task_min,
            all_min,
            cross,
            single: mode == RunwayMode::Single,
            shift_ok,
            opts,
        })
    }

    #[inline]
    fn sep(&self, lead_task: usize, lead_class: usize, trail_task: usize, trail_class: usize) -> i64 {
        self.y[((lead_task * self.eta + lead_class) * 2 + trail_task) * self.eta + trail_class]
    }

    fn counts(&self, packed: u128) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.radix.len());
        let mut rest = packed;
        for &r in &self.radix {
            out.push((rest % r) as usize);
            rest /= r;
        }
        out
    }

    fn place_unit(&self, chain: usize) -> u128 {
        self.radix[..chain].iter().product()
    }

    /// Runs the search; only orders strictly better than `incumbent` are
    /// reported.
    pub fn run(&self, incumbent: Option<i64>) -> (Outcome, SearchStats) {
        let n = self.inst.len();
        let mut stats = SearchStats::default();
        let mut arena: Vec<(u32, u16)> = Vec::new();
        let units: Vec<u128> = (0..self.chains.len()).map(|c| self.place_unit(c)).collect();
        let bound = incumbent.unwrap_or(i64::MAX);
        let mut layer: Vec<(Key, Vec<Label>)> =
            vec![((0, 0, 0), vec![Label { times: [NO_TIME; 2], delay: 0, rec: u32::MAX }])];
        for placed in 0..n {
            let remaining_after = n - placed - 1;
            let chunks: Vec<&[(Key, Vec<Label>)]> = layer.chunks(CHUNK).collect();
            let produced = par::map_collect(&chunks, |chunk| self.expand(chunk, &units));
            let mut cands: Vec<(Key, Label, u32, u16)> = produced.into_iter().flatten().collect();
            cands.sort_by(|a, b| a.0.cmp(&b.0));
            let mut next: Vec<(Key, Vec<Label>)> = Vec::new();
            let mut scratch = Scratch::default();
            let mut i = 0;
            while i < cands.len() {
                let key = cands[i].0;
                let mut j = i;
                while j < cands.len() && cands[j].0 == key {
                    j += 1;
                }
                self.fill_scratch(key.0, &mut scratch);
                let mut labels: Vec<Label> = Vec::new();
                for &(_, label, parent, aircraft) in &cands[i..j] {
                    if !self.feasible_rest(&label, key, &scratch) {
                        continue;
                    }
                    if self.opts.prune && label.delay + self.lower_bound(&label, key, &scratch) >= bound {
                        stats.pruned += 1;
                        continue;
                    }
                    if self.dominated(&labels, &label, remaining_after) {
                        continue;
                    }
                    labels.retain(|l| !self.dominates(&label, l, remaining_after));
                    arena.push((parent, aircraft));
                    labels.push(Label { rec: arena.len() as u32 - 1, ..label });
                    if arena.len() > self.opts.budget {
                        stats.labels = arena.len();
                        return (Outcome::Budget, stats);
                    }
                }
                if !labels.is_empty() {
                    next.push((key, labels));
                }
                i = j;
            }
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        stats.labels = arena.len();
        if n == 0 {
            let out = if bound > 0 { Outcome::Found { order: Vec::new(), objective: 0 } } else { Outcome::Exhausted };
            return (out, stats);
        }
        let mut best: Option<Label> = None;
        for l in layer.iter().flat_map(|(_, ls)| ls.iter()) {
            if best.is_none_or(|b| l.delay < b.delay) {
                best = Some(*l);
            }
        }
        match best {
            Some(l) if l.delay < bound => {
                let mut order = Vec::with_capacity(n);
                let mut rec = l.rec;
                while rec != u32::MAX {
                    let (parent, a) = arena[rec as usize];
                    order.push(a as usize);
                    rec = parent;
                }
                order.reverse();
                (Outcome::Found { order, objective: l.delay }, stats)
            }
            _ => (Outcome::Exhausted, stats),
        }
    }

    fn expand(&self, chunk: &[(Key, Vec<Label>)], units: &[u128]) -> Vec<(Key, Label, u32, u16)> {
        let mut out = Vec::new();
        for &((packed, lc_l, lc_t), ref labels) in chunk {
            let counts = self.counts(packed);
            for (c, chain) in self.chains.iter().enumerate() {
                let Some(&a) = chain.get(counts[c]) else { continue };
                let ac = &self.inst.aircraft()[a];
                let (task, cls) = (ac.task.index(), ac.class.index());
                let key = (
                    packed + units[c],
                    if task == 0 { cls as u8 + 1 } else { lc_l },
                    if task == 1 { cls as u8 + 1 } else { lc_t },
                );
                let last = [lc_l, lc_t];
                for l in labels {
                    let mut t = i64::MIN;
                    for lt in 0..2 {
                        if last[lt] != 0 {
                            t = t.max(l.times[lt] + self.sep(lt, last[lt] as usize - 1, task, cls));
                        }
                    }
                    let Some(t) = self.inst.window(a).earliest_at_or_after(t) else { continue };
                    let mut times = l.times;
                    times[task] = t;
                    let label = Label { times, delay: l.delay + ac.delay_at(t), rec: 0 };
                    out.push((key, label, l.rec, a as u16));
                }
            }
        }
        out
    }

    fn fill_scratch(&self, packed: u128, s: &mut Scratch) {
        let counts = self.counts(packed);
        for t in 0..2 {
            s.p[t].clear();
            s.hi[t].clear();
            s.release[t] = 0;
        }
        for (c, chain) in self.chains.iter().enumerate() {
            for &a in &chain[counts[c]..] {
                let ac = &self.inst.aircraft()[a];
                let t = ac.task.index();
                let w = self.inst.window(a);
                s.p[t].push(ac.scheduled);
                s.hi[t].push(w.hi().unwrap_or(i64::MIN));
                s.release[t] += ac.delay_at(w.lo().unwrap_or(0));
            }
        }
        for t in 0..2 {
            s.p[t].sort_unstable();
            s.hi[t].sort_unstable();
        }
        if self.single {
            s.p_all.clear();
            s.p_all.extend_from_slice(&s.p[0]);
            s.p_all.extend_from_slice(&s.p[1]);
            s.p_all.sort_unstable();
        }
    }

    /// Earliest possible time of the next operation of `task` after `label`.
    fn first_slot(&self, label: &Label, key: Key, task: usize) -> i64 {
        let last = [key.1, key.2];
        let mut s = i64::MIN;
        if last[task] != 0 {
            s = s.max(label.times[task] + self.row_min[task * self.eta + last[task] as usize - 1]);
        }
        let other = 1 - task;
        if last[other] != 0 {
            s = s.max(label.times[other] + self.cross[other]);
        }
        s
    }

    fn feasible_rest(&self, label: &Label, key: Key, s: &Scratch) -> bool {
        for t in 0..2 {
            if s.hi[t].is_empty() {
                continue;
            }
            let s0 = self.first_slot(label, key, t);
            if s0 == i64::MIN {
                continue;
            }
            for (k, &h) in s.hi[t].iter().enumerate() {
                if h < s0 + k as i64 * self.task_min[t] {
                    return false;
                }
            }
        }
        true
    }

    fn lower_bound(&self, label: &Label, key: Key, s: &Scratch) -> i64 {
        let mut per_task = 0;
        let mut firsts = [i64::MAX; 2];
        for t in 0..2 {
            if s.p[t].is_empty() {
                continue;
            }
            let s0 = self.first_slot(label, key, t);
            firsts[t] = s0;
            per_task += slot_bound(s0, self.task_min[t], &s.p[t]).max(s.release[t]);
        }
        if !self.single {
            return per_task;
        }
        let s0 = firsts[0].min(firsts[1]);
        if s0 == i64::MAX || s0 == i64::MIN {
            return per_task;
        }
        per_task.max(slot_bound(s0, self.all_min, &s.p_all))
    }

    fn dominates(&self, a: &Label, b: &Label, remaining: usize) -> bool {
        if a.times[0] <= b.times[0] && a.times[1] <= b.times[1] && a.delay <= b.delay {
            return true;
        }
        if !(self.opts.prune && self.opts.shift_dominance && self.shift_ok) {
            return false;
        }
        let shift = (a.times[0] - b.times[0]).max(a.times[1] - b.times[1]).max(0);
        a.delay.saturating_add(shift.saturating_mul(remaining as i64)) <= b.delay
    }

    fn dominated(&self, set: &[Label], label: &Label, remaining: usize) -> bool {
        set.iter().any(|l| self.dominates(l, label, remaining))
    }
}

#[derive(Default)]
struct Scratch {
    p: [Vec<i64>; 2],
    hi: [Vec<i64>; 2],
    release: [i64; 2],
    p_all: Vec<i64>,
}

fn task_of(i: usize) -> OperationTask {
    if i == 0 {
        OperationTask::Landing
    } else {
        OperationTask::Takeoff
    }
}

/// `Σ max(0, s0 + k·step − p_k)` over sorted `p`: the least total delay of
/// operations whose `k`-th time is at least `s0 + k·step`.
fn slot_bound(s0: i64, step: i64, sorted_p: &[i64]) -> i64 {
    if s0 == i64::MIN {
        return 0;
    }
    sorted_p.iter().enumerate().map(|(k, &p)| (s0 + k as i64 * step - p).max(0)).sum()
}

/// True when no earliest-time schedule of any order can reach a deadline.
pub fn deadlines_never_bind(inst: &Instance) -> bool {
    let n = inst.len() as i64;
    let max_lo = (0..inst.len()).filter_map(|i| inst.window(i).lo()).max().unwrap_or(0);
    let min_hi = (0..inst.len()).filter_map(|i| inst.window(i).hi()).min().unwrap_or(i64::MAX);
    let horizon = max_lo.saturating_add(n.saturating_mul(inst.model().max_separation()));
    min_hi >= horizon
}

/// Splits each `(class, task)` group into chains whose members can keep a
/// fixed relative order in some optimal schedule: a member precedes another
/// when its window start, window end and scheduled time are all no later.
pub fn dominance_chains(inst: &Instance, members: &[usize]) -> Vec<Vec<usize>> {
    let key = |a: usize| {
        let w = inst.window(a);
        let ac = &inst.aircraft()[a];
        (w.lo().unwrap_or(i64::MAX), ac.scheduled, w.hi().unwrap_or(i64::MAX), ac.id)
    };
    let mut groups: Vec<((usize, usize), Vec<usize>)> = Vec::new();
    for &a in members {
        let ac = &inst.aircraft()[a];
        let g = (ac.task.index(), ac.class.index());
        match groups.iter_mut().find(|(k, _)| *k == g) {
            Some((_, v)) => v.push(a),
            None => groups.push((g, vec![a])),
        }
    }
    groups.sort_by_key(|(k, _)| *k);
    let mut chains = Vec::new();
    for (_, mut group) in groups {
        group.sort_by_key(|&a| key(a));
        let mut local: Vec<Vec<usize>> = Vec::new();
        for a in group {
            let (lo, p, hi, _) = key(a);
            let fit = local.iter_mut().find(|c| {
                let (plo, pp, phi, _) = key(*c.last().unwrap());
                plo <= lo && pp <= p && phi <= hi
            });
            match fit {
                Some(c) => c.push(a),
                None => local.push(vec![a]),
            }
        }
        chains.extend(local);
    }
    chains
}

/// Convenience: exact optimum over all orders of `inst` (dominance chains
/// only). `None` when the model is unsupported.
pub fn exact(inst: &Instance, incumbent: Option<i64>, opts: SearchOptions) -> Option<(Outcome, SearchStats)> {
    let all: Vec<usize> = (0..inst.len()).collect();
    let chains = dominance_chains(inst, &all);
    ChainSearch::new(inst, chains, opts).map(|s| s.run(incumbent))
}
