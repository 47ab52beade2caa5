use crate::error::{Error, Result};
use crate::model::{Evaluator, Instance, LastOps, Schedule};
use crate::solution::SolverStats;

/// An evaluated order: earliest times and total delay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Seq {
    pub order: Vec<usize>,
    pub times: Vec<i64>,
    pub f: i64,
}

impl Seq {
    pub fn build(ev: &Evaluator, order: Vec<usize>) -> Option<Seq> {
        eval_from(ev, order, &[], 0, 0, i64::MAX)
    }

    /// `cum[p]` is the delay of the first `p` aircraft.
    pub fn cum(&self, ev: &Evaluator) -> Vec<i64> {
        let mut cum = Vec::with_capacity(self.order.len() + 1);
        let mut s = 0;
        cum.push(0);
        for (&a, &t) in self.order.iter().zip(&self.times) {
            s += ev.delay(a, t);
            cum.push(s);
        }
        cum
    }

    pub fn into_schedule(self, inst: &Instance) -> Schedule {
        Schedule::from_times(inst, self.order, self.times)
    }
}

/// Evaluates `order` whose first `from` aircraft match a base with times
/// `base_times` and total delay `head`. `None` when infeasible or when the
/// total delay exceeds `cap`.
pub(crate) fn eval_from(
    ev: &Evaluator,
    order: Vec<usize>,
    base_times: &[i64],
    from: usize,
    head: i64,
    cap: i64,
) -> Option<Seq> {
    let mut times = Vec::with_capacity(order.len());
    times.extend_from_slice(&base_times[..from]);
    let mut f = head;
    if ev.chained() {
        let mut last = LastOps::default();
        for p in 0..from {
            ev.push(&mut last, order[p], times[p]);
        }
        for &a in &order[from..] {
            let t = ev.next_time(&last, a)?;
            f += ev.delay(a, t);
            if f > cap {
                return None;
            }
            ev.push(&mut last, a, t);
            times.push(t);
        }
    } else {
        ev.extend_times(&order, from, &mut times).ok()?;
        f = head + order[from..].iter().zip(&times[from..]).map(|(&a, &t)| ev.delay(a, t)).sum::<i64>();
        if f > cap {
            return None;
        }
    }
    Some(Seq { order, times, f })
}

/// Best plain insertion of `new` into `prefix`; ties keep the earliest slot.
pub(crate) fn insertion_scan(
    ev: &Evaluator,
    prefix: &Seq,
    new: usize,
    prune: bool,
    stats: &mut SolverStats,
) -> Option<(usize, Seq)> {
    let m = prefix.order.len();
    let cum = prefix.cum(ev);
    let task = ev.task(new);
    let pure = ev.chained() && prefix.order.iter().all(|&a| ev.task(a) == task);
    // run[k]: consecutive aircraft from k on that bind on their predecessor
    // and are delayed; each absorbs the full downstream shift.
    let run = if prune && pure {
        let ac = ev.instance.aircraft();
        let mut run = vec![0i64; m + 1];
        for k in (1..m).rev() {
            let (a, b) = (prefix.order[k - 1], prefix.order[k]);
            let tight = prefix.times[k] == prefix.times[k - 1] + ev.y(a, b);
            if tight && prefix.times[k] >= ac[b].scheduled {
                run[k] = run[k + 1] + 1;
            }
        }
        Some(run)
    } else {
        None
    };
    let mut best: Option<(usize, Seq)> = None;
    for pos in 0..=m {
        stats.candidates_generated += 1;
        let cap = best.as_ref().map_or(i64::MAX, |b| b.1.f - 1);
        if let (Some(run), Some((_, b))) = (&run, &best) {
            if pos >= 1 && pos < m {
                let (h2, h3) = (prefix.order[pos - 1], prefix.order[pos]);
                let t = ev.instance.window(new).earliest_at_or_after(prefix.times[pos - 1] + ev.y(h2, new));
                let omega = ev.y(h2, new) + ev.y(new, h3) - ev.y(h2, h3);
                let skip = match t {
                    None => true,
                    Some(t) => prefix.f + ev.delay(new, t) + omega * run[pos] >= b.f,
                };
                if skip {
                    stats.candidates_pruned += 1;
                    continue;
                }
            }
        }
        let mut order = Vec::with_capacity(m + 1);
        order.extend_from_slice(&prefix.order[..pos]);
        order.push(new);
        order.extend_from_slice(&prefix.order[pos..]);
        if let Some(s) = eval_from(ev, order, &prefix.times, pos, cum[pos], cap) {
            best = Some((pos, s));
        }
    }
    best
}

/// Inserts aircraft `new` into `prefix` at the position minimizing total
/// delay. Returns the schedule and the chosen position.
pub fn best_insertion(inst: &Instance, prefix: &[usize], new: usize) -> Result<(Schedule, usize)> {
    let ev = Evaluator::new(inst);
    let base = Seq::build(&ev, prefix.to_vec()).ok_or_else(|| Error::Contract("prefix is infeasible".into()))?;
    let mut stats = SolverStats::default();
    let (pos, s) = insertion_scan(&ev, &base, new, true, &mut stats)
        .ok_or(Error::Infeasible { aircraft_id: inst.aircraft()[new].id, position: None })?;
    Ok((s.into_schedule(inst), pos))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Aircraft, OperationTask, RunwayMode, SeparationModel, WakeClass};

    fn landings(classes: &[&str]) -> Instance {
        let aircraft = classes
            .iter()
            .enumerate()
            .map(|(i, c)| Aircraft::open(i as u32 + 1, WakeClass::from_letter(c).unwrap(), OperationTask::Landing, 0, 0))
            .collect();
        Instance::new(RunwayMode::Single, aircraft, SeparationModel::default(), None).unwrap()
    }

    #[test]
    fn heavy_goes_last() {
        let inst = landings(&["F", "B", "A"]);
        let (s, pos) = best_insertion(&inst, &[0, 1], 2).unwrap();
        assert_eq!((s.order, s.objective, pos), (vec![0, 1, 2], 210, 2));
    }

    #[test]
    fn light_goes_first() {
        let inst = landings(&["A", "F"]);
        let (s, pos) = best_insertion(&inst, &[0], 1).unwrap();
        assert_eq!((pos, s.objective), (0, 60));
    }

    #[test]
    fn pruned_scan_matches_full_scan() {
        let inst = landings(&["C", "A", "E", "B", "D", "F", "C"]);
        let ev = Evaluator::new(&inst);
        let base = Seq::build(&ev, vec![5, 4, 2, 0, 3, 1]).unwrap();
        let mut st = SolverStats::default();
        let a = insertion_scan(&ev, &base, 6, true, &mut st).unwrap();
        let b = insertion_scan(&ev, &base, 6, false, &mut SolverStats::default()).unwrap();
        assert_eq!(a, b);
    }
}
