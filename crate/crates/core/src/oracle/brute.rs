use super::{OracleMethod, OracleResult};
use crate::error::{Error, Result};
use crate::model::Instance;
use crate::par;

pub const BRUTE_FORCE_CAP: usize = 10;

/// Exhaustive search over every order. Returns the lexicographically
/// smallest optimal order by aircraft id.
pub fn brute_force_optimum(inst: &Instance, cap: usize) -> Result<OracleResult> {
    let n = inst.len();
    if n > cap {
        return Err(Error::OracleCap { n, cap });
    }
    if n == 0 {
        return Ok(OracleResult { objective: 0, order: Vec::new(), explored: 1, method: OracleMethod::BruteForce });
    }
    let mut by_id: Vec<usize> = (0..n).collect();
    by_id.sort_by_key(|&i| inst.aircraft()[i].id);
    let y: Vec<i64> = (0..n * n).map(|k| inst.y(k / n, k % n)).collect();
    let results = par::map_collect(&by_id, |&first| {
        let mut dfs = Dfs { inst, y: &y, n, by_id: &by_id, order: Vec::with_capacity(n), times: Vec::with_capacity(n), used: vec![false; n], best: None, explored: 0 };
        dfs.push(first, 0);
        (dfs.best, dfs.explored)
    });
    let explored = results.iter().map(|r| r.1).sum();
    let mut best: Option<(i64, Vec<usize>)> = None;
    for (candidate, _) in results.into_iter() {
        if let Some((obj, order)) = candidate {
            if best.as_ref().is_none_or(|b| obj < b.0) {
                best = Some((obj, order));
            }
        }
    }
    match best {
        Some((objective, order)) => Ok(OracleResult { objective, order, explored, method: OracleMethod::BruteForce }),
        None => Err(Error::Infeasible { aircraft_id: inst.aircraft()[by_id[0]].id, position: None }),
    }
}

struct Dfs<'a> {
    inst: &'a Instance,
    y: &'a [i64],
    n: usize,
    by_id: &'a [usize],
    order: Vec<usize>,
    times: Vec<i64>,
    used: Vec<bool>,
    best: Option<(i64, Vec<usize>)>,
    explored: u64,
}

impl Dfs<'_> {
    /// Places `a` next (all earlier positions checked) and recurses.
    fn push(&mut self, a: usize, delay: i64) {
        self.explored += 1;
        let mut t = i64::MIN;
        for (q, &b) in self.order.iter().enumerate() {
            t = t.max(self.times[q] + self.y[b * self.n + a]);
        }
        let Some(t) = self.inst.window(a).earliest_at_or_after(t) else { return };
        let delay = delay + self.inst.aircraft()[a].delay_at(t);
        if self.best.as_ref().is_some_and(|b| delay >= b.0) {
            return;
        }
        self.order.push(a);
        self.times.push(t);
        self.used[a] = true;
        if self.order.len() == self.n {
            if self.best.as_ref().is_none_or(|b| delay < b.0) {
                self.best = Some((delay, self.order.clone()));
            }
        } else {
            for k in 0..self.n {
                let b = self.by_id[k];
                if !self.used[b] {
                    self.push(b, delay);
                }
            }
        }
        self.order.pop();
        self.times.pop();
        self.used[a] = false;
    }
}
