//! Steps that merge one task's optimal sequence with the other task's
//! aircraft: greedy matching around fixed times, then reinsertion of the
//! aircraft that spilled past the fixed sequence.

use crate::error::{Error, Result};
use crate::model::{Evaluator, Instance, OperationTask, Schedule};
use crate::single::Seq;

/// Places `movers` (all of the other task) around the fixed times of
/// `fixed`, in scheduled-time order, each at its earliest conflict-free
/// time. Returns the merged schedule and how many movers end up after the
/// last fixed operation.
pub(super) fn match_around(inst: &Instance, fixed: &Schedule, movers: &[usize]) -> Result<(Schedule, usize)> {
    let ac = inst.aircraft();
    let Some(&f0) = fixed.order.first() else {
        let s = crate::model::forward_schedule(inst, &sorted(inst, movers))?;
        return Ok((s, 0));
    };
    let fixed_task = ac[f0].task;
    let mut placed: Vec<(usize, i64)> = Vec::with_capacity(movers.len());
    for &x in &sorted(inst, movers) {
        let mut t = placed.iter().map(|&(q, tq)| tq + inst.y(q, x)).max().unwrap_or(i64::MIN);
        loop {
            t = inst
                .window(x)
                .earliest_at_or_after(t)
                .ok_or(Error::Infeasible { aircraft_id: ac[x].id, position: None })?;
            // A fixed operation at `s` forbids `(s − Y(x, f), s + Y(f, x))`.
            let clash = fixed
                .order
                .iter()
                .zip(&fixed.times)
                .find(|&(&f, &s)| s - inst.y(x, f) < t && t < s + inst.y(f, x));
            match clash {
                Some((&f, &s)) => t = s + inst.y(f, x),
                None => break,
            }
        }
        placed.push((x, t));
    }
    let last = *fixed.times.last().expect("nonempty");
    let spill = placed.iter().filter(|p| p.1 > last).count();
    let mut all: Vec<(i64, bool, usize)> = fixed
        .order
        .iter()
        .zip(&fixed.times)
        .map(|(&f, &s)| (s, false, f))
        .chain(placed.iter().map(|&(x, t)| (t, true, x)))
        .collect();
    // At equal times the aircraft with a zero separation to the other leads.
    let fixed_leads = inst.model().dual_pd == 0 && fixed_task == OperationTask::Landing
        || inst.model().dual_dp == 0 && fixed_task == OperationTask::Takeoff;
    all.sort_by_key(|&(t, mover, _)| (t, mover == fixed_leads));
    let order: Vec<usize> = all.iter().map(|a| a.2).collect();
    let times: Vec<i64> = all.iter().map(|a| a.0).collect();
    Ok((Schedule::from_times(inst, order, times), spill))
}

fn sorted(inst: &Instance, idx: &[usize]) -> Vec<usize> {
    let ac = inst.aircraft();
    let mut v = idx.to_vec();
    v.sort_by_key(|&i| (ac[i].scheduled, ac[i].id));
    v
}

/// Takeoffs matched into the fixed landing timeline of `landing_optimum`.
pub fn match_takeoffs_to_landings(
    inst: &Instance,
    landing_optimum: &Schedule,
    takeoffs: &[usize],
) -> Result<(Schedule, usize)> {
    match_around(inst, landing_optimum, takeoffs)
}

/// Landings matched into the fixed takeoff timeline of `takeoff_optimum`.
pub fn match_landings_to_takeoffs(
    inst: &Instance,
    takeoff_optimum: &Schedule,
    landings: &[usize],
) -> Result<(Schedule, usize)> {
    match_around(inst, takeoff_optimum, landings)
}

/// Removes the last `spill` aircraft of `merged` and reinserts each, in
/// scheduled-time order, at its best position; the other aircraft keep
/// their relative order. Ties keep the earliest position.
pub fn reinsert_spill(inst: &Instance, merged: &Schedule, spill: usize) -> Result<Schedule> {
    if spill == 0 {
        return Ok(merged.clone());
    }
    let ev = Evaluator::new(inst);
    let n = merged.order.len();
    let body = Seq::build(&ev, merged.order[..n - spill].to_vec())
        .ok_or_else(|| Error::Contract("merged body is infeasible".into()))?;
    Ok(insert_each(inst, &ev, body, &sorted(inst, &merged.order[n - spill..]))?.into_schedule(inst))
}

/// Inserts the takeoffs of `takeoff_optimum` one at a time, in its order,
/// at their best positions in `landing_optimum`. Both task orders are kept.
pub fn interleave(inst: &Instance, landing_optimum: &Schedule, takeoff_optimum: &Schedule) -> Result<Schedule> {
    let ev = Evaluator::new(inst);
    let body = Seq::build(&ev, landing_optimum.order.clone())
        .ok_or_else(|| Error::Contract("landing order is infeasible".into()))?;
    let mut cur = body;
    let mut floor = 0;
    for &x in &takeoff_optimum.order {
        let (pos, next) = best_position(inst, &ev, &cur, x, floor)?;
        floor = pos + 1;
        cur = next;
    }
    Ok(cur.into_schedule(inst))
}

/// Single-aircraft relocations, first improvement, to a fixed point.
pub fn relocate_polish(inst: &Instance, start: &Schedule) -> Schedule {
    let ev = Evaluator::new(inst);
    let Some(mut cur) = Seq::build(&ev, start.order.clone()) else {
        return start.clone();
    };
    let mut improved = true;
    while improved {
        improved = false;
        for from in 0..cur.order.len() {
            let mut rest = cur.order.clone();
            let x = rest.remove(from);
            let Some(base) = Seq::build(&ev, rest) else { continue };
            if let Ok((_, s)) = best_position(inst, &ev, &base, x, 0) {
                if s.f < cur.f {
                    cur = s;
                    improved = true;
                }
            }
        }
    }
    cur.into_schedule(inst)
}

fn insert_each(inst: &Instance, ev: &Evaluator, mut cur: Seq, items: &[usize]) -> Result<Seq> {
    for &x in items {
        cur = best_position(inst, ev, &cur, x, 0)?.1;
    }
    Ok(cur)
}

/// Best insertion of `x` at a position `>= floor`; ties keep the earliest.
fn best_position(inst: &Instance, ev: &Evaluator, cur: &Seq, x: usize, floor: usize) -> Result<(usize, Seq)> {
    let cum = cur.cum(ev);
    let mut best: Option<(usize, Seq)> = None;
    for pos in floor..=cur.order.len() {
        let mut order = cur.order.clone();
        order.insert(pos, x);
        let cap = best.as_ref().map_or(i64::MAX, |b| b.1.f - 1);
        if let Some(s) = crate::single::eval_from(ev, order, &cur.times, pos, cum[pos], cap) {
            best = Some((pos, s));
        }
    }
    best.ok_or(Error::Infeasible { aircraft_id: inst.aircraft()[x].id, position: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{forward_schedule, Aircraft, RunwayMode, SeparationModel, WakeClass};
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
    fn takeoff_shares_time_with_landing() {
        let i = inst(&[("C", Landing, 0), ("C", Takeoff, 0)]);
        let a = forward_schedule(&i, &[0]).unwrap();
        let (c, z) = match_takeoffs_to_landings(&i, &a, &[1]).unwrap();
        assert_eq!((c.order, c.times, z), (vec![0, 1], vec![0, 0], 0));
    }

    #[test]
    fn landing_leads_takeoff_at_equal_time() {
        let i = inst(&[("C", Takeoff, 0), ("C", Landing, 0)]);
        let b = forward_schedule(&i, &[0]).unwrap();
        let (d, z) = match_landings_to_takeoffs(&i, &b, &[1]).unwrap();
        assert_eq!((d.order, d.times, z), (vec![1, 0], vec![0, 0], 0));
    }

    #[test]
    fn landing_waits_out_takeoff_gap() {
        let late = Aircraft::open(2, WakeClass::from_ordinal(3), Landing, 30, 30);
        let i = Instance::new(RunwayMode::Dual, vec![inst(&[("C", Takeoff, 0)]).aircraft()[0].clone(), late], SeparationModel::default(), None).unwrap();
        let b = forward_schedule(&i, &[0]).unwrap();
        let (d, z) = match_landings_to_takeoffs(&i, &b, &[1]).unwrap();
        assert_eq!((d.times, z), (vec![0, 60], 1));
    }

    #[test]
    fn landing_times_are_conserved() {
        let i = inst(&[("A", Landing, 0), ("B", Landing, 0), ("C", Takeoff, 0), ("D", Takeoff, 100)]);
        let a = forward_schedule(&i, &[1, 0]).unwrap();
        let (c, _) = match_takeoffs_to_landings(&i, &a, &[2, 3]).unwrap();
        assert!(c.is_feasible(&i));
        let landing_times: Vec<i64> =
            c.order.iter().zip(&c.times).filter(|(&x, _)| x < 2).map(|(_, &t)| t).collect();
        assert_eq!(landing_times, a.times);
    }

    #[test]
    fn late_takeoffs_spill() {
        let i = inst(&[("A", Landing, 0), ("C", Takeoff, 500), ("D", Takeoff, 600)]);
        let a = forward_schedule(&i, &[0]).unwrap();
        let aircraft: Vec<Aircraft> = i.aircraft().iter().cloned().map(|mut x| {
            if x.task == Takeoff {
                x.window_min = x.scheduled;
            }
            x
        }).collect();
        let i = Instance::new(RunwayMode::Dual, aircraft, SeparationModel::default(), None).unwrap();
        let (c, z) = match_takeoffs_to_landings(&i, &a, &[1, 2]).unwrap();
        assert_eq!(z, 2);
        assert_eq!(reinsert_spill(&i, &c, z).unwrap().objective, c.objective);
    }
}
