use std::fmt::Write;

use crate::error::{Error, Result};
use crate::model::{Instance, OPEN_WINDOW_END};

/// Renders a disjunctive big-M model in LP format.
///
/// Variables: `s_<id>` operation time, `h_<id>` delay, binary `x_<a>_<b>`
/// (1 when `a` precedes `b`, one per unordered pair with `a < b` by id) and,
/// for split windows, binary `g_<id>` selecting the part after the gap.
/// Open windows are capped at `horizon`; without one they are an error.
pub fn export_mip(inst: &Instance, horizon: Option<i64>) -> Result<String> {
    let n = inst.len();
    let ac = inst.aircraft();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by_key(|&i| ac[i].id);
    let mut lo = vec![0i64; n];
    let mut hi = vec![0i64; n];
    for &i in &idx {
        let w = inst.window(i);
        lo[i] = w.lo().unwrap_or(0);
        let h = w.hi().unwrap_or(lo[i] - 1);
        hi[i] = if h >= OPEN_WINDOW_END {
            horizon.ok_or(Error::MissingHorizon(ac[i].id))?
        } else {
            h
        };
    }
    let min_lo = lo.iter().copied().min().unwrap_or(0);
    let max_hi = hi.iter().copied().max().unwrap_or(0);
    let big_m = (max_hi - min_lo).max(0) + inst.model().max_separation();

    let mut out = String::new();
    let _ = writeln!(out, "\\ runway sequencing, {n} aircraft, big-M {big_m}");
    out.push_str("Minimize\n obj:");
    if n == 0 {
        out.push_str(" 0");
    }
    for (k, &i) in idx.iter().enumerate() {
        let _ = write!(out, "{} h_{}", if k == 0 { "" } else { " +" }, ac[i].id);
    }
    out.push_str("\nSubject To\n");
    for &i in &idx {
        let id = ac[i].id;
        let _ = writeln!(out, " delay_{id}: h_{id} - s_{id} >= {}", -ac[i].scheduled);
    }
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            let (a, b) = (ac[i].id, ac[j].id);
            let _ = writeln!(out, " sep_{a}_{b}: s_{b} - s_{a} - {big_m} x_{a}_{b} >= {}", inst.y(i, j) - big_m);
            let _ = writeln!(out, " sep_{b}_{a}: s_{a} - s_{b} + {big_m} x_{a}_{b} >= {}", inst.y(j, i));
        }
    }
    let split: Vec<usize> = idx.iter().copied().filter(|&i| inst.window(i).parts().len() == 2).collect();
    for &i in &split {
        let id = ac[i].id;
        let parts = inst.window(i).parts();
        let (gap_lo, gap_hi) = (parts[0].1, parts[1].0);
        let _ = writeln!(out, " before_{id}: s_{id} - {big_m} g_{id} <= {gap_lo}");
        let _ = writeln!(out, " after_{id}: s_{id} - {big_m} g_{id} >= {}", gap_hi - big_m);
    }
    out.push_str("Bounds\n");
    for &i in &idx {
        let id = ac[i].id;
        let _ = writeln!(out, " {} <= s_{id} <= {}", lo[i], hi[i]);
        let _ = writeln!(out, " h_{id} >= 0");
    }
    out.push_str("Binary\n");
    for (p, &i) in idx.iter().enumerate() {
        for &j in &idx[p + 1..] {
            let _ = writeln!(out, " x_{}_{}", ac[i].id, ac[j].id);
        }
    }
    for &i in &split {
        let _ = writeln!(out, " g_{}", ac[i].id);
    }
    out.push_str("End\n");
    Ok(out)
}
