use serde::{Deserialize, Serialize};

use super::instance::Instance;
use crate::error::{Error, Result};

/// An order with its operation times and delays. `order` holds instance
/// indices, not aircraft ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub order: Vec<usize>,
    pub times: Vec<i64>,
    pub delays: Vec<i64>,
    pub objective: i64,
}

impl Schedule {
    /// Builds a schedule from explicit times; does not check feasibility.
    pub fn from_times(instance: &Instance, order: Vec<usize>, times: Vec<i64>) -> Self {
        let delays: Vec<i64> = order
            .iter()
            .zip(&times)
            .map(|(&a, &t)| instance.aircraft()[a].delay_at(t))
            .collect();
        let objective = delays.iter().sum();
        Self { order, times, delays, objective }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn ids(&self, instance: &Instance) -> Vec<u32> {
        self.order.iter().map(|&i| instance.aircraft()[i].id).collect()
    }

    /// Every constraint of the problem, listed as violations.
    pub fn violations(&self, instance: &Instance) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.order.len();
        if self.times.len() != n || self.delays.len() != n {
            out.push("order, times and delays differ in length".into());
            return out;
        }
        let mut seen = vec![false; instance.len()];
        for &a in &self.order {
            if a >= instance.len() || std::mem::replace(&mut seen[a], true) {
                out.push(format!("order entry {a} is out of range or repeated"));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for p in 0..n {
            let a = self.order[p];
            if !instance.window(a).contains(self.times[p]) {
                out.push(format!("position {p}: time {} outside window", self.times[p]));
            }
            if self.delays[p] != instance.aircraft()[a].delay_at(self.times[p]) {
                out.push(format!("position {p}: delay mismatch"));
            }
            for q in 0..p {
                let y = instance.y(self.order[q], a);
                if self.times[p] - self.times[q] < y {
                    out.push(format!("positions {q},{p}: gap {} < {y}", self.times[p] - self.times[q]));
                }
            }
        }
        if self.objective != self.delays.iter().sum::<i64>() {
            out.push("objective is not the sum of delays".into());
        }
        out
    }

    pub fn is_feasible(&self, instance: &Instance) -> bool {
        self.violations(instance).is_empty()
    }
}

/// Earliest feasible times for `order`, checking every earlier position.
pub fn forward_schedule(instance: &Instance, order: &[usize]) -> Result<Schedule> {
    let mut times: Vec<i64> = Vec::with_capacity(order.len());
    for (p, &a) in order.iter().enumerate() {
        let mut t = i64::MIN;
        for q in 0..p {
            t = t.max(times[q] + instance.y(order[q], a));
        }
        match instance.window(a).earliest_at_or_after(t) {
            Some(s) => times.push(s),
            None => {
                return Err(Error::Infeasible { aircraft_id: instance.aircraft()[a].id, position: Some(p) })
            }
        }
    }
    Ok(Schedule::from_times(instance, order.to_vec(), times))
}

/// `Σ max(0, S_i − P_i)` over the schedule.
pub fn total_delay(schedule: &Schedule, instance: &Instance) -> i64 {
    schedule
        .order
        .iter()
        .zip(&schedule.times)
        .map(|(&a, &t)| instance.aircraft()[a].delay_at(t))
        .sum()
}
