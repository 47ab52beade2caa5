//! Structural analysis of a scheduled sequence: binding separations,
//! breakpoints, resident points, task transitions and block decomposition.
//!
//! All positions are zero-based indices into the schedule order.

use serde::Serialize;

use super::class::OperationTask;
use super::instance::Instance;
use super::schedule::Schedule;
use super::separation::RunwayMode;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum BlockKind {
    /// Ends with a landing followed by a takeoff.
    #[serde(rename = "T_block")]
    T,
    /// Ends with a takeoff followed by a landing.
    #[serde(rename = "D_block")]
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Inclusive position range.
    pub span: (usize, usize),
    /// Unreduced `(numerator, denominator)`; `(0, 0)` for a two-aircraft seed.
    pub length_ratio: (usize, usize),
    pub time_increment: i64,
}

impl Block {
    pub fn len(&self) -> usize {
        self.span.1 - self.span.0 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceDiagnostics {
    pub relevance_edges: Vec<(usize, usize)>,
    pub breakpoints: Vec<usize>,
    pub resident_points: Vec<(usize, i64)>,
    pub transitions: Vec<usize>,
    pub blocks: Vec<Block>,
    /// Positions not covered by any block when the sequence mixes tasks.
    pub block_gaps: Vec<usize>,
    /// Positions relevant to no aircraft among the four before them.
    pub distant_relevance: Vec<usize>,
    /// Third consecutive wide binding gap, where a narrow one is expected.
    pub wide_gap_runs: Vec<usize>,
}

/// Relevance relation for a schedule: `rel[q][p]` for `q < p`.
pub struct Relevance {
    n: usize,
    bits: Vec<bool>,
}

impl Relevance {
    pub fn new(instance: &Instance, schedule: &Schedule) -> Self {
        let n = schedule.order.len();
        let mut bits = vec![false; n * n];
        for p in 0..n {
            for q in 0..p {
                let y = instance.y(schedule.order[q], schedule.order[p]);
                bits[q * n + p] = schedule.times[p] - schedule.times[q] == y;
            }
        }
        Self { n, bits }
    }

    #[inline]
    pub fn is_relevant(&self, lead: usize, trail: usize) -> bool {
        lead < trail && self.bits[lead * self.n + trail]
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.n {
            for q in 0..p {
                if self.is_relevant(q, p) {
                    out.push((q, p));
                }
            }
        }
        out
    }

    /// Whether a chain of relevance edges leads from `from` back to `to`
    /// using only positions in `members` (ascending, containing both ends).
    pub fn path_within(&self, members: &[usize], from: usize, to: usize) -> bool {
        path_in(&|q, p| self.is_relevant(q, p), members, from, to)
    }

    /// Path query over the whole sequence.
    pub fn has_path(&self, from: usize, to: usize) -> bool {
        if to > from {
            return false;
        }
        let members: Vec<usize> = (to..=from).collect();
        self.path_within(&members, from, to)
    }
}

pub fn analyze_sequence(instance: &Instance, schedule: &Schedule) -> SequenceDiagnostics {
    let rel = Relevance::new(instance, schedule);
    let n = schedule.order.len();
    let ac = |p: usize| &instance.aircraft()[schedule.order[p]];
    let t = &schedule.times;

    let mut breakpoints = Vec::new();
    for task in [OperationTask::Landing, OperationTask::Takeoff] {
        let run: Vec<usize> = (0..n).filter(|&p| ac(p).task == task).collect();
        for w in run.windows(2) {
            if ac(w[0]).class < ac(w[1]).class {
                breakpoints.push(w[0]);
            }
        }
    }
    breakpoints.sort_unstable();

    let transitions: Vec<usize> = (0..n.saturating_sub(1)).filter(|&p| ac(p).task != ac(p + 1).task).collect();
    let mixed = !transitions.is_empty();

    let mut resident_points = Vec::new();
    let t0 = instance.horizon_start();
    if n > 0 && t[0] > t0 {
        resident_points.push((0, t[0] - t0));
    }
    let mut last = [None::<usize>; 2];
    if n > 0 {
        last[ac(0).task.index()] = Some(0);
    }
    for p in 1..n {
        let slack = |q: usize| t[p] - t[q] - instance.y(schedule.order[q], schedule.order[p]);
        let s = if mixed {
            last.iter().flatten().map(|&q| slack(q)).min()
        } else {
            Some(slack(p - 1))
        };
        if let Some(s) = s.filter(|&s| s > 0) {
            resident_points.push((p, s));
        }
        last[ac(p).task.index()] = Some(p);
    }

    let (blocks, block_gaps) = if instance.mode() == RunwayMode::Dual {
        match decompose_with(&rel, instance, schedule) {
            Ok(b) => (b, Vec::new()),
            Err(gaps) => (Vec::new(), gaps),
        }
    } else {
        (Vec::new(), Vec::new())
    };

    let distant_relevance = (1..n)
        .filter(|&p| !(p.saturating_sub(4)..p).any(|q| rel.is_relevant(q, p)))
        .collect();

    let wide = instance.model().same_runway_td + instance.model().same_runway_dt;
    let mut wide_gap_runs = Vec::new();
    for p in 3..n {
        let chain = [(p - 3, p - 2), (p - 2, p - 1), (p - 1, p)];
        if chain.iter().all(|&(q, r)| rel.is_relevant(q, r)) {
            let y = |(q, r): (usize, usize)| instance.y(schedule.order[q], schedule.order[r]);
            if y(chain[0]) >= wide && y(chain[1]) >= wide && y(chain[2]) >= wide {
                wide_gap_runs.push(p);
            }
        }
    }

    SequenceDiagnostics {
        relevance_edges: rel.edges(),
        breakpoints,
        resident_points,
        transitions,
        blocks,
        block_gaps,
        distant_relevance,
        wide_gap_runs,
    }
}

/// Splits a mixed dual-runway sequence into T-/D-blocks. Each block after
/// the first starts at the last or second-to-last position of its
/// predecessor.
pub fn decompose_blocks(instance: &Instance, schedule: &Schedule) -> Result<Vec<Block>> {
    if instance.mode() != RunwayMode::Dual {
        return Err(Error::Contract("block decomposition requires dual-runway mode".into()));
    }
    let rel = Relevance::new(instance, schedule);
    decompose_with(&rel, instance, schedule).map_err(Error::BlockPremises)
}

fn decompose_with(rel: &Relevance, instance: &Instance, schedule: &Schedule) -> std::result::Result<Vec<Block>, Vec<usize>> {
    let n = schedule.order.len();
    let task = |p: usize| instance.aircraft()[schedule.order[p]].task;
    if (1..n).all(|p| task(p) == task(0)) {
        return Ok(Vec::new());
    }
    let is_start = |s: usize| s + 1 < n && task(s) != task(s + 1) && rel.is_relevant(s, s + 1);
    let mut blocks = Vec::new();
    let mut covered = vec![false; n];
    let mut from = 0;
    let mut min_end = 1;
    while let Some(s) = (from..n).find(|&s| is_start(s)) {
        match (min_end.max(s + 1)..n).find_map(|e| block_at(rel, instance, schedule, s, e)) {
            Some(b) => {
                covered[b.span.0..=b.span.1].iter_mut().for_each(|c| *c = true);
                from = b.span.1 - 1;
                min_end = b.span.1 + 1;
                blocks.push(b);
            }
            None => from = s + 1,
        }
    }
    let gaps: Vec<usize> = (0..n).filter(|&p| !covered[p]).collect();
    if gaps.is_empty() {
        Ok(blocks)
    } else {
        Err(gaps)
    }
}

/// Path search over an arbitrary relevance relation `rel(lead, trail)`.
pub(crate) fn path_in(rel: &impl Fn(usize, usize) -> bool, members: &[usize], from: usize, to: usize) -> bool {
    if from == to {
        return true;
    }
    let mut reach = vec![false; members.len()];
    let Some(end) = members.iter().position(|&m| m == from) else { return false };
    reach[end] = true;
    for k in (0..end).rev() {
        reach[k] = (k + 1..=end).any(|h| reach[h] && rel(members[k], members[h]));
        if members[k] == to {
            return reach[k];
        }
    }
    false
}

/// Structure of a block without its times.
pub(crate) struct BlockShape {
    pub kind: BlockKind,
    /// Position whose separation to the closing aircraft defines the
    /// increment.
    pub prev: usize,
    pub length_ratio: (usize, usize),
}

/// Checks the block definition on `s..=e` given task and relevance oracles.
pub(crate) fn block_shape(
    task: &impl Fn(usize) -> OperationTask,
    rel: &impl Fn(usize, usize) -> bool,
    s: usize,
    e: usize,
) -> Option<BlockShape> {
    if e <= s || task(s) == task(s + 1) || !rel(s, s + 1) {
        return None;
    }
    if task(e - 1) == task(e) || !rel(e - 1, e) {
        return None;
    }
    if (s..e - 1).any(|q| rel(q, e)) {
        return None;
    }
    let span: Vec<usize> = (s..=e).collect();
    if !path_in(rel, &span, e, s) {
        return None;
    }
    let closing = task(e);
    let same: Vec<usize> = span.iter().copied().filter(|&p| task(p) == closing).collect();
    let other: Vec<usize> = span.iter().copied().filter(|&p| task(p) != closing).collect();
    if !path_in(rel, &other, e - 1, other[0]) {
        return None;
    }
    if same.len() >= 2 && !path_in(rel, &same, same[same.len() - 2], same[0]) {
        return None;
    }
    let prev = if same.len() >= 2 { same[same.len() - 2] } else { e - 1 };
    let kind = match closing {
        OperationTask::Takeoff => BlockKind::T,
        OperationTask::Landing => BlockKind::D,
    };
    Some(BlockShape { kind, prev, length_ratio: (same.len() - 1, other.len() - 1) })
}

/// The block spanning positions `s..=e`, if the block definition holds.
pub fn block_at(rel: &Relevance, instance: &Instance, schedule: &Schedule, s: usize, e: usize) -> Option<Block> {
    let task = |p: usize| instance.aircraft()[schedule.order[p]].task;
    let shape = block_shape(&task, &|q, p| rel.is_relevant(q, p), s, e)?;
    let y = instance.y(schedule.order[shape.prev], schedule.order[e]);
    Some(Block {
        kind: shape.kind,
        span: (s, e),
        length_ratio: shape.length_ratio,
        time_increment: schedule.times[e] - schedule.times[shape.prev] - y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{forward_schedule, Aircraft, SeparationModel, WakeClass};
    use OperationTask::*;

    fn inst(mode: RunwayMode, spec: &[(u8, OperationTask)]) -> Instance {
        let aircraft = spec
            .iter()
            .enumerate()
            .map(|(i, &(c, t))| Aircraft::open(i as u32 + 1, WakeClass::from_ordinal(c), t, 0, 0))
            .collect();
        Instance::new(mode, aircraft, SeparationModel::default(), None).unwrap()
    }

    fn identity(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    #[test]
    fn breakpoint_at_ascent() {
        let i = inst(RunwayMode::Single, &[(3, Landing), (2, Landing), (4, Landing)]);
        let s = forward_schedule(&i, &identity(3)).unwrap();
        assert_eq!(analyze_sequence(&i, &s).breakpoints, vec![1]);
    }

    #[test]
    fn relevance_and_resident_time() {
        let i = inst(RunwayMode::Single, &[(1, Landing), (2, Landing)]);
        let s = Schedule::from_times(&i, vec![0, 1], vec![0, 135]);
        let d = analyze_sequence(&i, &s);
        assert_eq!(d.relevance_edges, vec![(0, 1)]);
        assert!(d.resident_points.is_empty());
        let s = Schedule::from_times(&i, vec![0, 1], vec![0, 140]);
        let d = analyze_sequence(&i, &s);
        assert!(d.relevance_edges.is_empty());
        assert_eq!(d.resident_points, vec![(1, 5)]);
    }

    #[test]
    fn transitions_at_switches() {
        let i = inst(RunwayMode::Single, &[(2, Landing), (3, Takeoff), (2, Landing)]);
        let s = forward_schedule(&i, &identity(3)).unwrap();
        assert_eq!(analyze_sequence(&i, &s).transitions, vec![0, 1]);
    }

    #[test]
    fn seed_block() {
        let i = inst(RunwayMode::Dual, &[(2, Landing), (3, Takeoff)]);
        let s = forward_schedule(&i, &identity(2)).unwrap();
        let b = decompose_blocks(&i, &s).unwrap();
        assert_eq!(b, vec![Block { kind: BlockKind::T, span: (0, 1), length_ratio: (0, 0), time_increment: 0 }]);
    }

    #[test]
    fn overlapping_blocks() {
        let i = inst(RunwayMode::Dual, &[(1, Landing), (3, Takeoff), (3, Takeoff), (1, Landing)]);
        let s = forward_schedule(&i, &identity(4)).unwrap();
        let b = decompose_blocks(&i, &s).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].kind, b[0].span), (BlockKind::T, (0, 1)));
        assert_eq!((b[1].kind, b[1].span), (BlockKind::D, (0, 3)));
        assert_eq!(b[1].length_ratio, (1, 1));
    }

    #[test]
    fn pure_sequence_has_no_blocks() {
        let i = inst(RunwayMode::Dual, &[(1, Landing), (2, Landing)]);
        let s = forward_schedule(&i, &identity(2)).unwrap();
        assert!(decompose_blocks(&i, &s).unwrap().is_empty());
    }

    #[test]
    fn uncovered_tail_is_reported() {
        let i = inst(RunwayMode::Dual, &[(1, Landing), (3, Takeoff), (3, Takeoff)]);
        let s = forward_schedule(&i, &identity(3)).unwrap();
        match decompose_blocks(&i, &s) {
            Err(Error::BlockPremises(p)) => assert_eq!(p, vec![2]),
            other => panic!("{other:?}"),
        }
    }
}
