//! Precomputed separation tables and earliest-time evaluation used by the
//! solvers' inner loops.

use super::class::OperationTask;
use super::instance::Instance;

/// Most recent operation of each task: `(aircraft index, time)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LastOps {
    pub slots: [Option<(u16, i64)>; 2],
}

impl LastOps {
    pub fn current_time(&self) -> Option<i64> {
        self.slots.iter().flatten().map(|s| s.1).max()
    }
}

pub struct Evaluator<'a> {
    pub instance: &'a Instance,
    n: usize,
    y: Vec<i64>,
    /// `true` when the most recent operation of each task is always the
    /// binding predecessor (same-task triangle inequality).
    chained: bool,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        let n = instance.len();
        let mut y = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                y[i * n + j] = instance.y(i, j);
            }
        }
        let chained = instance.model().within_task_triangle();
        Self { instance, n, y, chained }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn chained(&self) -> bool {
        self.chained
    }

    #[inline]
    pub fn y(&self, lead: usize, trail: usize) -> i64 {
        self.y[lead * self.n + trail]
    }

    #[inline]
    pub fn task(&self, i: usize) -> OperationTask {
        self.instance.aircraft()[i].task
    }

    #[inline]
    pub fn delay(&self, i: usize, t: i64) -> i64 {
        self.instance.aircraft()[i].delay_at(t)
    }

    /// Earliest time for `next` after the operations summarized by `last`.
    #[inline]
    pub fn next_time(&self, last: &LastOps, next: usize) -> Option<i64> {
        let mut t = i64::MIN;
        for &(i, ti) in last.slots.iter().flatten() {
            t = t.max(ti + self.y(i as usize, next));
        }
        self.instance.window(next).earliest_at_or_after(t)
    }

    #[inline]
    pub fn push(&self, last: &mut LastOps, next: usize, t: i64) {
        last.slots[self.task(next).index()] = Some((next as u16, t));
    }

    /// Earliest times for `order`; `Err(position)` at the first aircraft that
    /// cannot be placed. Uses the all-pairs rule when the model is not chained.
    pub fn times(&self, order: &[usize]) -> Result<Vec<i64>, usize> {
        let mut out = Vec::with_capacity(order.len());
        self.extend_times(order, 0, &mut out)?;
        Ok(out)
    }

    /// Recomputes `times[from..]` for `order`, reusing `times[..from]`.
    pub fn extend_times(&self, order: &[usize], from: usize, times: &mut Vec<i64>) -> Result<(), usize> {
        times.truncate(from);
        if self.chained {
            let mut last = LastOps::default();
            for p in 0..from {
                self.push(&mut last, order[p], times[p]);
            }
            for (p, &a) in order.iter().enumerate().skip(from) {
                let t = self.next_time(&last, a).ok_or(p)?;
                self.push(&mut last, a, t);
                times.push(t);
            }
        } else {
            for p in from..order.len() {
                let a = order[p];
                let mut t = i64::MIN;
                for q in 0..p {
                    t = t.max(times[q] + self.y(order[q], a));
                }
                let t = self.instance.window(a).earliest_at_or_after(t).ok_or(p)?;
                times.push(t);
            }
        }
        Ok(())
    }

    pub fn objective_of_times(&self, order: &[usize], times: &[i64]) -> i64 {
        order.iter().zip(times).map(|(&a, &t)| self.delay(a, t)).sum()
    }

    pub fn objective(&self, order: &[usize]) -> Option<i64> {
        let times = self.times(order).ok()?;
        Some(self.objective_of_times(order, &times))
    }
}
