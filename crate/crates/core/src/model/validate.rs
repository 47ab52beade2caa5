//! Matrix-level assumption predicates for a separation model.
//!
//! Each predicate is evaluated independently and reports every violated
//! inequality. Fractional thresholds are compared after scaling both sides
//! to integers.

use serde::Serialize;

use super::separation::SeparationModel;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub description: &'static str,
    pub violations: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!("{mark} {:<8} {}\n", c.id, c.description));
            for v in &c.violations {
                out.push_str(&format!("       {v}\n"));
            }
        }
        out
    }
}

struct Ctx<'a> {
    m: &'a SeparationModel,
    eta: usize,
}

impl Ctx<'_> {
    /// Landing entry, 1-based classes.
    fn t(&self, i: usize, j: usize) -> i64 {
        self.m.landing[i - 1][j - 1]
    }

    fn d(&self, i: usize, j: usize) -> i64 {
        self.m.takeoff[i - 1][j - 1]
    }

    fn has(&self, i: usize) -> bool {
        (1..=self.eta).contains(&i)
    }
}

type Predicate = fn(&Ctx, &mut Vec<String>);

macro_rules! need {
    ($v:expr, $cond:expr, $($fmt:tt)+) => {
        if !$cond {
            $v.push(format!($($fmt)+));
        }
    };
}

const PREDICATES: &[(&str, &str, Predicate)] = &[
    ("A1(1)", "T_ii = 1.5 T0 for i = 1, 2", |c, v| {
        for i in [1, 2].into_iter().filter(|&i| c.has(i)) {
            need!(v, 2 * c.t(i, i) == 3 * c.m.t0, "T_{i}{i} = {} != 1.5 T0 = {}", c.t(i, i), 1.5 * c.m.t0 as f64);
        }
    }),
    ("A1(2)", "T_ii = T0 + delta for i = rho1, rho2", |c, v| {
        for i in [c.m.rho1 as usize, c.m.rho2 as usize] {
            if !c.has(i) {
                v.push(format!("class {i} outside 1..={}", c.eta));
                continue;
            }
            need!(v, c.t(i, i) == c.m.t0 + c.m.delta, "T_{i}{i} = {} != T0 + delta = {}", c.t(i, i), c.m.t0 + c.m.delta);
        }
    }),
    ("A1(2)d", "T0/8 < delta < T0/6, delta a positive integer", |c, v| {
        let (t0, d) = (c.m.t0, c.m.delta);
        need!(v, 8 * d > t0, "delta = {d} <= T0/8 = {}", t0 as f64 / 8.0);
        need!(v, 6 * d < t0, "delta = {d} >= T0/6 = {}", t0 as f64 / 6.0);
        need!(v, d > 0, "delta = {d} is not positive");
    }),
    ("A1(3)", "T_ii = T0 for the remaining classes", |c, v| {
        for i in 1..=c.eta {
            if [1, 2, c.m.rho1 as usize, c.m.rho2 as usize].contains(&i) {
                continue;
            }
            need!(v, c.t(i, i) == c.m.t0, "T_{i}{i} = {} != T0 = {}", c.t(i, i), c.m.t0);
        }
    }),
    ("A2(1)", "T_21 = 1.5 T0", |c, v| {
        if c.has(2) {
            need!(v, 2 * c.t(2, 1) == 3 * c.m.t0, "T_21 = {} != 1.5 T0", c.t(2, 1));
        }
    }),
    ("A2(2)", "T_ij = T0 for i > j, i != 2", |c, v| {
        for i in 1..=c.eta {
            for j in 1..i {
                if i != 2 {
                    need!(v, c.t(i, j) == c.m.t0, "T_{i}{j} = {} != T0", c.t(i, j));
                }
            }
        }
    }),
    ("A3(1)", "T_ik <= T_ij <= 3 T0 and T_kj < T_ij <= 3 T0 for i < k < j", |c, v| {
        let cap = 3 * c.m.t0;
        for i in 1..=c.eta {
            for j in i..=c.eta {
                need!(v, c.t(i, j) <= cap, "T_{i}{j} = {} > 3 T0", c.t(i, j));
                for k in i + 1..j {
                    need!(v, c.t(i, k) <= c.t(i, j), "T_{i}{k} = {} > T_{i}{j} = {}", c.t(i, k), c.t(i, j));
                    need!(v, c.t(k, j) < c.t(i, j), "T_{k}{j} = {} >= T_{i}{j} = {}", c.t(k, j), c.t(i, j));
                }
            }
        }
        for i in 1..=c.eta {
            for j in 1..i {
                need!(v, c.t(i, j) <= cap, "T_{i}{j} = {} > 3 T0", c.t(i, j));
            }
        }
    }),
    ("A3(2)", "T_ik < T_ij + T_jk and T_ki < T_ji + T_kj for k <= j <= i", |c, v| {
        for i in 1..=c.eta {
            for j in 1..=i {
                for k in 1..=j {
                    need!(v, c.t(i, k) < c.t(i, j) + c.t(j, k), "T_{i}{k} = {} >= T_{i}{j} + T_{j}{k} = {}", c.t(i, k), c.t(i, j) + c.t(j, k));
                    need!(v, c.t(k, i) < c.t(j, i) + c.t(k, j), "T_{k}{i} = {} >= T_{j}{i} + T_{k}{j} = {}", c.t(k, i), c.t(j, i) + c.t(k, j));
                }
            }
        }
    }),
    ("A4(1)", "T_(k-1)k = T0 + delta for k = rho2, else >= 1.5 T0", |c, v| {
        for k in 2..=c.eta {
            if k == c.m.rho2 as usize {
                need!(v, c.t(k - 1, k) == c.m.t0 + c.m.delta, "T_{}{k} = {} != T0 + delta", k - 1, c.t(k - 1, k));
            } else {
                need!(v, 2 * c.t(k - 1, k) >= 3 * c.m.t0, "T_{}{k} = {} < 1.5 T0", k - 1, c.t(k - 1, k));
            }
        }
    }),
    ("A4(2)", "T_(i-1)k - T_ik > 2 delta for i <= k, (i,k) != (rho2,rho2)", |c, v| {
        let r2 = c.m.rho2 as usize;
        for k in 2..=c.eta {
            for i in 2..=k {
                if (i, k) == (r2, r2) {
                    continue;
                }
                let diff = c.t(i - 1, k) - c.t(i, k);
                need!(v, diff > 2 * c.m.delta, "T_{}{k} - T_{i}{k} = {diff} <= 2 delta", i - 1);
            }
        }
    }),
    ("A4(3)", "T_12 > 2 T0 and T_23 > 1.5 T0 + 2 delta", |c, v| {
        if c.has(2) {
            need!(v, c.t(1, 2) > 2 * c.m.t0, "T_12 = {} <= 2 T0", c.t(1, 2));
        }
        if c.has(3) {
            need!(v, 2 * c.t(2, 3) > 3 * c.m.t0 + 4 * c.m.delta, "T_23 = {} <= 1.5 T0 + 2 delta", c.t(2, 3));
        }
    }),
    ("A4(4)", "T_1j - T_hj > 0.5 T0 for 3 <= h <= j", |c, v| {
        for h in 3..=c.eta {
            for j in h..=c.eta {
                let diff = c.t(1, j) - c.t(h, j);
                need!(v, 2 * diff > c.m.t0, "T_1{j} - T_{h}{j} = {diff} <= 0.5 T0");
            }
        }
    }),
    ("A4(5)", "exception set E bounds on T_2j - T_kj", |c, v| {
        let e: Vec<(usize, usize)> = c.m.exception_set.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
        let (t0, d) = (c.m.t0, c.m.delta);
        for &(k, j) in &e {
            if !c.has(k) || !c.has(j) || !c.has(2) {
                v.push(format!("pair ({k},{j}) outside the class range"));
                continue;
            }
            let diff = c.t(2, j) - c.t(k, j);
            need!(v, 2 * diff >= t0 - 2 * d && 2 * diff < t0, "({k},{j}) in E: T_2{j} - T_{k}{j} = {diff} outside [0.5 T0 - delta, 0.5 T0)");
        }
        for k in 3..=c.eta {
            for j in k + 1..=c.eta {
                if e.contains(&(k, j)) {
                    continue;
                }
                let diff = c.t(2, j) - c.t(k, j);
                need!(v, 2 * diff > t0, "({k},{j}) not in E: T_2{j} - T_{k}{j} = {diff} <= 0.5 T0");
            }
        }
    }),
    ("A5(1)", "D_ii = (4/3) T0 for i = 1, 2, 3, eta", |c, v| {
        for i in [1, 2, 3, c.eta].into_iter().filter(|&i| c.has(i)) {
            need!(v, 3 * c.d(i, i) == 4 * c.m.t0, "D_{i}{i} = {} != (4/3) T0", c.d(i, i));
        }
    }),
    ("A5(2)", "D_ii = T0 for the remaining classes", |c, v| {
        for i in 4..c.eta {
            need!(v, c.d(i, i) == c.m.t0, "D_{i}{i} = {} != T0", c.d(i, i));
        }
    }),
    ("A6(1)", "D_21 = (4/3) T0", |c, v| {
        if c.has(2) {
            need!(v, 3 * c.d(2, 1) == 4 * c.m.t0, "D_21 = {} != (4/3) T0", c.d(2, 1));
        }
    }),
    ("A6(2)", "D_ij = T0 for i > j, i >= 3", |c, v| {
        for i in 3..=c.eta {
            for j in 1..i {
                need!(v, c.d(i, j) == c.m.t0, "D_{i}{j} = {} != T0", c.d(i, j));
            }
        }
    }),
    ("A7(1)", "D_ij <= D_kj <= 3 T0 and D_ki <= D_kj <= 3 T0 for k <= i <= j", |c, v| {
        let cap = 3 * c.m.t0;
        for i in 1..=c.eta {
            for j in 1..=c.eta {
                need!(v, c.d(i, j) <= cap, "D_{i}{j} = {} > 3 T0", c.d(i, j));
            }
        }
        for k in 1..=c.eta {
            for i in k..=c.eta {
                for j in i..=c.eta {
                    need!(v, c.d(i, j) <= c.d(k, j), "D_{i}{j} = {} > D_{k}{j} = {}", c.d(i, j), c.d(k, j));
                    need!(v, c.d(k, i) <= c.d(k, j), "D_{k}{i} = {} > D_{k}{j} = {}", c.d(k, i), c.d(k, j));
                }
            }
        }
    }),
    ("A7(2)", "D_ik < D_ij + D_jk and D_ki < D_ji + D_kj for k <= j <= i", |c, v| {
        for i in 1..=c.eta {
            for j in 1..=i {
                for k in 1..=j {
                    need!(v, c.d(i, k) < c.d(i, j) + c.d(j, k), "D_{i}{k} = {} >= D_{i}{j} + D_{j}{k}", c.d(i, k));
                    need!(v, c.d(k, i) < c.d(j, i) + c.d(k, j), "D_{k}{i} = {} >= D_{j}{i} + D_{k}{j}", c.d(k, i));
                }
            }
        }
    }),
    ("A8(1)", "D_k(k+1) = D_kk + T0/3 for k = 1, 2", |c, v| {
        for k in [1, 2].into_iter().filter(|&k| c.has(k + 1)) {
            need!(v, 3 * c.d(k, k + 1) == 3 * c.d(k, k) + c.m.t0, "D_{k}{} = {} != D_{k}{k} + T0/3", k + 1, c.d(k, k + 1));
        }
    }),
    ("A8(2)", "D_k(k+1) = D_kk for k = 3, rho2 - 1", |c, v| {
        for k in [3, c.m.rho2 as usize - 1].into_iter().filter(|&k| k >= 1 && c.has(k + 1)) {
            need!(v, c.d(k, k + 1) == c.d(k, k), "D_{k}{} = {} != D_{k}{k} = {}", k + 1, c.d(k, k + 1), c.d(k, k));
        }
    }),
    ("A8(3)", "D_13 = D_23 + T0/3 and D_1j - D_2j = (2/3) T0 for j >= 4", |c, v| {
        if c.has(3) {
            need!(v, 3 * c.d(1, 3) == 3 * c.d(2, 3) + c.m.t0, "D_13 = {} != D_23 + T0/3", c.d(1, 3));
        }
        for j in 4..=c.eta {
            let diff = c.d(1, j) - c.d(2, j);
            need!(v, 3 * diff == 2 * c.m.t0, "D_1{j} - D_2{j} = {diff} != (2/3) T0");
        }
    }),
    ("A8(4)", "D_3eta = D_4eta and D_(rho2-1)eta = D_rho2rho2 + T0", |c, v| {
        let eta = c.eta;
        if c.has(4) {
            need!(v, c.d(3, eta) == c.d(4, eta), "D_3{eta} = {} != D_4{eta} = {}", c.d(3, eta), c.d(4, eta));
        }
        let r2 = c.m.rho2 as usize;
        if r2 >= 2 && c.has(r2) {
            need!(v, c.d(r2 - 1, eta) == c.d(r2, r2) + c.m.t0, "D_{}{eta} = {} != D_{r2}{r2} + T0", r2 - 1, c.d(r2 - 1, eta));
        }
    }),
    ("A8(5)", "D_kj = D_(k+1)j + T0/3 off the listed exceptions", |c, v| {
        let (eta, r2) = (c.eta, c.m.rho2 as usize);
        for j in 3..=eta {
            for k in 2..j {
                if (k, j) == (3, eta) || (k + 1, j) == (r2, r2) || (k + 2, j) == (r2, r2) {
                    continue;
                }
                need!(v, 3 * c.d(k, j) == 3 * c.d(k + 1, j) + c.m.t0, "D_{k}{j} = {} != D_{}{j} + T0/3", c.d(k, j), k + 1);
            }
        }
    }),
    ("A9", "T0 <= T_D < 1.5 T0 and T0 <= D_T < 1.5 T0", |c, v| {
        let t0 = c.m.t0;
        for (name, x) in [("T_D", c.m.same_runway_td), ("D_T", c.m.same_runway_dt)] {
            need!(v, x >= t0 && 2 * x < 3 * t0, "{name} = {x} outside [T0, 1.5 T0)");
        }
    }),
    ("A11", "D_P = T0 and P_D = 0", |c, v| {
        need!(v, c.m.dual_dp == c.m.t0, "D_P = {} != T0", c.m.dual_dp);
        need!(v, c.m.dual_pd == 0, "P_D = {} != 0", c.m.dual_pd);
    }),
];

/// Evaluates every matrix-level predicate. Expects a structurally valid model.
pub fn validate_separation_model(model: &SeparationModel) -> ValidationReport {
    let ctx = Ctx { m: model, eta: model.eta as usize };
    let checks = PREDICATES
        .iter()
        .map(|&(id, description, f)| {
            let mut violations = Vec::new();
            f(&ctx, &mut violations);
            Check { id, description, violations }
        })
        .collect();
    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failing(m: &SeparationModel) -> Vec<&'static str> {
        validate_separation_model(m).failures().map(|c| c.id).collect()
    }

    #[test]
    fn bundled_model_passes() {
        let r = validate_separation_model(&SeparationModel::default());
        assert!(r.all_passed(), "{}", r.render());
    }

    #[test]
    fn diagonal_override_trips_a1() {
        let mut m = SeparationModel::default();
        m.landing[2][2] = 60;
        assert!(failing(&m).contains(&"A1(2)"));
    }

    #[test]
    fn delta_at_upper_limit() {
        let mut m = SeparationModel::default();
        m.delta = 10;
        assert!(failing(&m).contains(&"A1(2)d"));
    }
}
