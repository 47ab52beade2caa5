use rustc_hash::FxHashMap;

use super::{OracleMethod, OracleResult};
use crate::error::{Error, Result};
use crate::model::Instance;

pub const DP_CAP: usize = 16;

#[derive(Clone, Copy)]
struct Entry {
    times: [i64; 2],
    delay: i64,
    parent: u32,
    aircraft: u16,
}

/// Dynamic program over (placed set, last landing, last takeoff) with a
/// Pareto frontier of (last landing time, last takeoff time, delay).
///
/// Exact when the most recent operation of each task is the only binding
/// predecessor, which holds under the same-task triangle inequality; other
/// models are refused.
pub fn dominance_dp_optimum(inst: &Instance, cap: usize) -> Result<OracleResult> {
    let n = inst.len();
    if n > cap || n > 63 {
        return Err(Error::OracleCap { n, cap: cap.min(63) });
    }
    if !inst.model().within_task_triangle() {
        return Err(Error::UnsupportedModel("same-task triangle inequality fails".into()));
    }
    const NONE: u16 = u16::MAX;
    let mut arena: Vec<Entry> = Vec::new();
    let mut layer: FxHashMap<(u64, u16, u16), Vec<u32>> = FxHashMap::default();
    arena.push(Entry { times: [i64::MIN; 2], delay: 0, parent: u32::MAX, aircraft: NONE });
    layer.insert((0, NONE, NONE), vec![0]);
    let mut explored = 1u64;
    for _ in 0..n {
        let mut keys: Vec<_> = layer.keys().copied().collect();
        keys.sort_unstable();
        let mut next: FxHashMap<(u64, u16, u16), Vec<u32>> = FxHashMap::default();
        for key in keys {
            let (mask, last_l, last_t) = key;
            for &e in &layer[&key] {
                let entry = arena[e as usize];
                for a in 0..n {
                    if mask & (1 << a) != 0 {
                        continue;
                    }
                    explored += 1;
                    let mut t = i64::MIN;
                    for last in [last_l, last_t] {
                        if last != NONE {
                            let task = inst.aircraft()[last as usize].task.index();
                            t = t.max(entry.times[task] + inst.y(last as usize, a));
                        }
                    }
                    let Some(t) = inst.window(a).earliest_at_or_after(t) else { continue };
                    let task = inst.aircraft()[a].task.index();
                    let mut times = entry.times;
                    times[task] = t;
                    let cand = Entry { times, delay: entry.delay + inst.aircraft()[a].delay_at(t), parent: e, aircraft: a as u16 };
                    let nk = (mask | 1 << a, if task == 0 { a as u16 } else { last_l }, if task == 1 { a as u16 } else { last_t });
                    let front = next.entry(nk).or_default();
                    let dominated = |x: &Entry, y: &Entry| x.times[0] <= y.times[0] && x.times[1] <= y.times[1] && x.delay <= y.delay;
                    if front.iter().any(|&f| dominated(&arena[f as usize], &cand)) {
                        continue;
                    }
                    front.retain(|&f| !dominated(&cand, &arena[f as usize]));
                    arena.push(cand);
                    front.push(arena.len() as u32 - 1);
                }
            }
        }
        layer = next;
    }
    let best = layer.values().flatten().copied().min_by_key(|&e| (arena[e as usize].delay, e));
    let Some(best) = best else {
        return Err(Error::Infeasible { aircraft_id: inst.aircraft().first().map_or(0, |a| a.id), position: None });
    };
    let objective = arena[best as usize].delay;
    let mut order = Vec::with_capacity(n);
    let mut e = best;
    while arena[e as usize].aircraft != NONE {
        order.push(arena[e as usize].aircraft as usize);
        e = arena[e as usize].parent;
    }
    order.reverse();
    Ok(OracleResult { objective, order, explored, method: OracleMethod::DominanceDp })
}
