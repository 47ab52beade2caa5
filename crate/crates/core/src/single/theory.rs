//! Closed forms and comparison rules used as screens by the reorder step.
//!
//! Every rule here has premises (binding separations, all aircraft delayed);
//! callers either verify them or treat the result as a hint whose effect is
//! covered by the exact search.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{forward_schedule, Instance, OperationTask, RunwayMode, Schedule, SeparationModel, WakeClass};
use crate::search::deadlines_never_bind;

pub type Slot = (WakeClass, OperationTask);

/// `(class, task)` of the two aircraft before and the two after an inserted
/// aircraft; absent near sequence ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ContextPattern {
    pub before: [Option<Slot>; 2],
    pub after: [Option<Slot>; 2],
}

impl ContextPattern {
    /// Pattern around position `pos` of `order` (the inserted aircraft).
    pub fn around(inst: &Instance, order: &[usize], pos: usize) -> Self {
        let slot = |p: Option<usize>| {
            p.and_then(|p| order.get(p)).map(|&a| {
                let ac = &inst.aircraft()[a];
                (ac.class, ac.task)
            })
        };
        Self {
            before: [slot(pos.checked_sub(2)), slot(pos.checked_sub(1))],
            after: [slot(Some(pos + 1)), slot(Some(pos + 2))],
        }
    }
}

/// Every context an insertion into `prefix` can produce, up to class and
/// task: slots are filled from the prefix's `(class, task)` groups without
/// exceeding their counts, and absent slots follow the prefix length.
pub fn build_context_patterns(inst: &Instance, prefix: &[usize], new: usize) -> BTreeSet<ContextPattern> {
    let mut groups: BTreeMap<Slot, usize> = BTreeMap::new();
    for &a in prefix.iter().filter(|&&a| a != new) {
        let ac = &inst.aircraft()[a];
        *groups.entry((ac.class, ac.task)).or_default() += 1;
    }
    let k: usize = groups.values().sum();
    let shapes: BTreeSet<(usize, usize)> = (0..=k).map(|pos| (pos.min(2), (k - pos).min(2))).collect();
    let groups: Vec<(Slot, usize)> = groups.into_iter().collect();
    let mut out = BTreeSet::new();
    for (b, a) in shapes {
        let mut left: Vec<usize> = groups.iter().map(|g| g.1).collect();
        let mut picks = Vec::with_capacity(4);
        fill(&groups, &mut left, &mut picks, b + a, &mut |p: &[Slot]| {
            let slot = |i: usize| p.get(i).copied();
            let (before, after) = match b {
                0 => ([None, None], [slot(0), slot(1)]),
                1 => ([None, slot(0)], [slot(1), slot(2)]),
                _ => ([slot(0), slot(1)], [slot(2), slot(3)]),
            };
            out.insert(ContextPattern { before, after });
        });
    }
    out
}

fn fill(groups: &[(Slot, usize)], left: &mut [usize], picks: &mut Vec<Slot>, want: usize, emit: &mut impl FnMut(&[Slot])) {
    if picks.len() == want {
        emit(picks);
        return;
    }
    for g in 0..groups.len() {
        if left[g] > 0 {
            left[g] -= 1;
            picks.push(groups[g].0);
            fill(groups, left, picks, want, emit);
            picks.pop();
            left[g] += 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Omega {
    Exact(i64),
    AtLeast(i64),
}

impl Omega {
    pub fn value(self) -> i64 {
        match self {
            Omega::Exact(v) | Omega::AtLeast(v) => v,
        }
    }
}

/// Least downstream time increment from inserting `inserted` between the
/// second and third aircraft of `window` on a single runway.
pub fn omega_min(model: &SeparationModel, window: [Option<Slot>; 4], inserted: Slot) -> Result<Omega> {
    let y = |a: Slot, b: Slot| model.separation(RunwayMode::Single, a, b);
    let (Some(h2), Some(h3)) = (window[1], window[2]) else {
        return Ok(if window[2].is_none() { Omega::Exact(0) } else { Omega::AtLeast(0) });
    };
    let turn = model.same_runway_td + model.same_runway_dt;
    let side = |a: Option<Slot>, b: Option<Slot>| -> Result<i64> {
        match (a, b) {
            (Some(a), Some(b)) => Ok(turn - y(a, b)?),
            _ => Ok(i64::MAX),
        }
    };
    let t5 = inserted.1;
    Ok(if h2.1 == t5 && h3.1 == t5 {
        Omega::Exact(y(h2, inserted)? + y(inserted, h3)? - y(h2, h3)?)
    } else if h2.1 == t5 {
        let m = side(window[0], Some(h3))?.min(side(Some(h2), window[3])?).min(0);
        Omega::AtLeast(m + y(h2, inserted)?)
    } else if h3.1 == t5 {
        let m = side(window[0], Some(h3))?.min(side(Some(h2), window[3])?).min(0);
        Omega::AtLeast(m + y(inserted, h3)?)
    } else {
        Omega::AtLeast((turn - y(h2, h3)?).max(0))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaMove {
    /// `F(Φa) − F(Φb)`.
    pub delta_f: i64,
    pub d1: i64,
    pub d2: i64,
    pub m2: usize,
    pub m3: usize,
    /// `d2 = 0` and `d1·(m2 + 2) ≤ s_b − s_a`, which forces `ΔF ≤ 0`. With
    /// `m2 + 1` the closed form only bounds `ΔF` by `d1`.
    pub no_gain: bool,
    pub moved_time_a: i64,
    pub moved_time_b: i64,
}

/// Closed-form delay change from moving the aircraft at position `from`
/// (with neighbors at `from − 1` and `from + 1`) to just after position
/// `after` (followed by `after + 1`).
///
/// Requires every aircraft but the first to bind on its immediate
/// predecessor and every aircraft to be delayed, in both layouts.
pub fn delta_move(inst: &Instance, a: &Schedule, from: usize, after: usize) -> Result<DeltaMove> {
    let n = a.order.len();
    if from == 0 || after < from + 2 || after + 1 >= n {
        return Err(Error::PremiseFailure("layout needs i0, i2 before i3 and a trailing i4".into()));
    }
    let mut b_order = a.order.clone();
    let moved = b_order.remove(from);
    b_order.insert(after, moved);
    let b = forward_schedule(inst, &b_order)?;
    for (name, s) in [("original", a), ("moved", &b)] {
        premises_hold(inst, s).map_err(|p| Error::PremiseFailure(format!("{name} layout, position {p}")))?;
    }
    let o = &a.order;
    let y = |i: usize, j: usize| inst.y(i, j);
    let (i0, i1, i2, i3, i4) = (o[from - 1], o[from], o[from + 1], o[after], o[after + 1]);
    let d1 = y(i0, i1) + y(i1, i2) - y(i0, i2);
    let d2 = y(i0, i1) + y(i1, i2) + y(i3, i4) - y(i0, i2) - y(i3, i1) - y(i1, i4);
    let m2 = after - from - 2;
    let m3 = n - after - 2;
    let s_a = a.times[from];
    let s_b = b.times[after];
    let delta_f = s_a - s_b + d1 * (m2 as i64 + 2) + d2 * (m3 as i64 + 1);
    let no_gain = d2 == 0 && d1 * (m2 as i64 + 2) <= s_b - s_a;
    Ok(DeltaMove { delta_f, d1, d2, m2, m3, no_gain, moved_time_a: s_a, moved_time_b: s_b })
}

/// First position violating "delayed and binding on its predecessor".
fn premises_hold(inst: &Instance, s: &Schedule) -> std::result::Result<(), usize> {
    for p in 0..s.order.len() {
        let ac = &inst.aircraft()[s.order[p]];
        if s.times[p] <= ac.scheduled {
            return Err(p);
        }
        if p > 0 && s.times[p] - s.times[p - 1] != inst.y(s.order[p - 1], s.order[p]) {
            return Err(p);
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeVerdict {
    ConcatenationBetter,
    MergeBetter,
    Equal,
    CaseSpecific,
}

fn nonincreasing(c: &[WakeClass]) -> bool {
    c.windows(2).all(|w| w[0] >= w[1])
}

/// Compares `⟨φ1, φ2⟩` with the class-monotone merge of the two runs.
pub fn monotone_merge_compare(
    model: &SeparationModel,
    phi1: &[WakeClass],
    phi2: &[WakeClass],
    task: OperationTask,
) -> Result<MergeVerdict> {
    if !nonincreasing(phi1) || !nonincreasing(phi2) {
        return Err(Error::Contract("merge inputs must be class-monotonically-decreasing".into()));
    }
    let (Some(&last1), Some(&first2)) = (phi1.last(), phi2.first()) else {
        return Ok(MergeVerdict::Equal);
    };
    if last1 >= first2 {
        return Ok(MergeVerdict::Equal);
    }
    let (e, r2) = (model.eta, model.rho2);
    let cl = |c: WakeClass| c.ordinal();
    let head = &phi1[..phi1.len() - 1];
    match task {
        OperationTask::Landing => {
            let pattern = cl(last1) + 1 == r2 && cl(first2) == r2 && head.iter().any(|&c| cl(c) == r2);
            Ok(if pattern { MergeVerdict::ConcatenationBetter } else { MergeVerdict::MergeBetter })
        }
        OperationTask::Takeoff => {
            if phi1.len() < 2 || phi2.len() < 2 {
                return Ok(MergeVerdict::CaseSpecific);
            }
            let pair = (cl(last1), cl(first2));
            let last = cl(*phi2.last().unwrap());
            Ok(if pair == (r2 - 1, r2) {
                MergeVerdict::Equal
            } else if pair == (3, 4) && phi2[1..].iter().any(|&c| cl(c) == 3) {
                MergeVerdict::MergeBetter
            } else if pair == (e - 1, e) && head.iter().any(|&c| cl(c) == e) {
                MergeVerdict::ConcatenationBetter
            } else if last <= 2 && pair == (2, 3) && head.iter().any(|&c| cl(c) == 3) {
                MergeVerdict::Equal
            } else {
                MergeVerdict::CaseSpecific
            })
        }
    }
}

/// Class-monotone order with a nondecreasing chain of consecutive
/// separations. Premises on delays are the caller's.
pub fn monotone_optimal_check(inst: &Instance, order: &[usize]) -> bool {
    let ac = inst.aircraft();
    let Some(&first) = order.first() else { return true };
    if order.iter().any(|&a| ac[a].task != ac[first].task) {
        return false;
    }
    let classes: Vec<WakeClass> = order.iter().map(|&a| ac[a].class).collect();
    if !nonincreasing(&classes) {
        return false;
    }
    let ys: Vec<i64> = order.windows(2).map(|w| inst.y(w[0], w[1])).collect();
    ys.windows(2).all(|w| w[0] <= w[1])
}

/// Premises under which [`monotone_optimal_check`] certifies optimality:
/// one task, a common window start no earlier than any scheduled time,
/// no interruption and no deadline that can bind.
pub fn monotone_certificate_premises(inst: &Instance) -> bool {
    let n = inst.len();
    if n == 0 || inst.interruption().is_some() {
        return false;
    }
    let (l, t) = inst.tasks_present();
    if l && t {
        return false;
    }
    let lo: Vec<i64> = (0..n).filter_map(|i| inst.window(i).lo()).collect();
    if lo.len() != n || lo.iter().any(|&x| x != lo[0]) {
        return false;
    }
    inst.aircraft().iter().all(|a| a.scheduled <= lo[0]) && deadlines_never_bind(inst)
}

/// The class-monotone order: classes nonincreasing, ties by scheduled time
/// then id.
pub fn class_monotone_order(inst: &Instance, members: &[usize]) -> Vec<usize> {
    let ac = inst.aircraft();
    let mut order = members.to_vec();
    order.sort_by_key(|&a| (std::cmp::Reverse(ac[a].class), ac[a].scheduled, ac[a].id));
    order
}
