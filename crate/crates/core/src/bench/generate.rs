use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Aircraft, Instance, OperationTask, RunwayMode, SeparationModel, WakeClass};

/// Class shares used throughout the experiments, heaviest class first.
pub const DEFAULT_PROPORTIONS: [f64; 6] = [0.10, 0.20, 0.25, 0.15, 0.20, 0.10];

/// Landings are scheduled this long after their earliest time.
pub const LANDING_LEAD_S: i64 = 300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskMix {
    TakeoffOnly,
    LandingOnly,
    /// Both tasks on one runway.
    Mixed,
    /// Both tasks on dual runways.
    Dual,
}

impl TaskMix {
    pub fn mode(self) -> RunwayMode {
        match self {
            TaskMix::Dual => RunwayMode::Dual,
            _ => RunwayMode::Single,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TaskMix::TakeoffOnly => "takeoff_only",
            TaskMix::LandingOnly => "landing_only",
            TaskMix::Mixed => "mixed",
            TaskMix::Dual => "dual",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub count: usize,
    pub mix: TaskMix,
    /// Earliest times are drawn from `[0, t_e_min]` minutes.
    pub t_e_min: u32,
    /// Window length in minutes.
    pub t_w_min: u32,
    pub proportions: Vec<f64>,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(count: usize, mix: TaskMix, t_e_min: u32, t_w_min: u32, seed: u64) -> Self {
        Self { count, mix, t_e_min, t_w_min, proportions: DEFAULT_PROPORTIONS.to_vec(), seed }
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidInstance(format!("generator: {m}")));
        if self.count == 0 {
            return bad("count must be at least 1");
        }
        if self.proportions.is_empty() || self.proportions.iter().any(|&p| !(p >= 0.0)) {
            return bad("proportions must be nonnegative");
        }
        if (self.proportions.iter().sum::<f64>() - 1.0).abs() > 1e-6 {
            return bad("proportions must sum to 1");
        }
        if self.mix != TaskMix::TakeoffOnly && i64::from(self.t_w_min) * 60 < LANDING_LEAD_S {
            return bad("windows shorter than 5 minutes cannot hold a landing's scheduled time");
        }
        Ok(())
    }
}

/// Per-class counts by largest remainder; equal remainders favor the
/// heavier (lower-ordinal) class.
pub fn class_counts(count: usize, proportions: &[f64]) -> Vec<usize> {
    let quotas: Vec<f64> = proportions.iter().map(|p| p * count as f64).collect();
    let mut counts: Vec<usize> = quotas.iter().map(|q| (q + 1e-9).floor() as usize).collect();
    let assigned: usize = counts.iter().sum();
    let mut by_rem: Vec<(i64, usize)> = quotas
        .iter()
        .enumerate()
        .map(|(k, q)| (-((q - q.floor()) * 1e6).round() as i64, k))
        .collect();
    by_rem.sort();
    for &(_, k) in by_rem.iter().take(count.saturating_sub(assigned)) {
        counts[k] += 1;
    }
    counts
}

pub fn generate_instance(spec: &GenSpec) -> Result<Instance> {
    generate_with_model(spec, SeparationModel::default())
}

pub fn generate_with_model(spec: &GenSpec, model: SeparationModel) -> Result<Instance> {
    spec.check()?;
    if spec.proportions.len() != model.eta as usize {
        return Err(Error::InvalidInstance(format!(
            "generator: {} proportions for {} classes",
            spec.proportions.len(),
            model.eta
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut classes: Vec<WakeClass> = class_counts(spec.count, &spec.proportions)
        .iter()
        .enumerate()
        .flat_map(|(k, &c)| std::iter::repeat_n(WakeClass::from_ordinal(k as u8 + 1), c))
        .collect();
    classes.shuffle(&mut rng);
    let landings = match spec.mix {
        TaskMix::TakeoffOnly => 0,
        TaskMix::LandingOnly => spec.count,
        TaskMix::Mixed | TaskMix::Dual => spec.count / 2,
    };
    let mut tasks: Vec<OperationTask> = (0..spec.count)
        .map(|k| if k < landings { OperationTask::Landing } else { OperationTask::Takeoff })
        .collect();
    tasks.shuffle(&mut rng);
    let horizon = i64::from(spec.t_e_min) * 60;
    let width = i64::from(spec.t_w_min) * 60;
    let aircraft = (0..spec.count)
        .map(|k| {
            let lo = rng.random_range(0..=horizon);
            let p = match tasks[k] {
                OperationTask::Landing => lo + LANDING_LEAD_S,
                OperationTask::Takeoff => lo,
            };
            Aircraft::new(k as u32 + 1, classes[k], tasks[k], lo, lo + width, p)
        })
        .collect();
    Instance::new(spec.mix.mode(), aircraft, model, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn largest_remainder_for_ten() {
        assert_eq!(class_counts(10, &DEFAULT_PROPORTIONS), vec![1, 2, 3, 1, 2, 1]);
        assert_eq!(class_counts(100, &DEFAULT_PROPORTIONS), vec![10, 20, 25, 15, 20, 10]);
    }

    #[test]
    fn dual_split_and_window_length() {
        let inst = generate_instance(&GenSpec::new(30, TaskMix::Dual, 20, 60, 7)).unwrap();
        let landings = inst.indices_with_task(OperationTask::Landing).len();
        assert_eq!((inst.len(), landings, inst.mode()), (30, 15, RunwayMode::Dual));
        assert!(inst.aircraft().iter().all(|a| a.window_max - a.window_min == 3600));
    }

    #[test]
    fn same_seed_same_instance() {
        let s = GenSpec::new(12, TaskMix::Mixed, 20, 30, 99);
        assert_eq!(generate_instance(&s).unwrap().aircraft(), generate_instance(&s).unwrap().aircraft());
    }

    #[test]
    fn short_windows_refused_with_landings() {
        assert!(generate_instance(&GenSpec::new(5, TaskMix::Mixed, 20, 4, 1)).is_err());
        assert!(generate_instance(&GenSpec::new(5, TaskMix::TakeoffOnly, 20, 4, 1)).is_ok());
    }
}
