mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use runway_core::dual::{match_takeoffs_to_landings, solve_dual_runway, tail_exchange, BlockCatalog};
use runway_core::model::diagnostics::{block_at, Relevance};
use runway_core::model::forward_schedule;
use runway_core::oracle::brute_force_optimum;
use runway_core::{Aircraft, Instance, OperationTask, RunwayMode, SeparationModel, SolverConfig};

fn task_optimum(inst: &Instance, task: OperationTask) -> (Vec<usize>, i64) {
    let idx = inst.indices_with_task(task);
    if idx.is_empty() {
        return (idx, 0);
    }
    let o = brute_force_optimum(&inst.subset(&idx), 10).unwrap();
    (o.order.iter().map(|&k| idx[k]).collect(), o.objective)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn separate_optima_bound_the_joint_optimum(s in spec(2..=8)) {
        let inst = build(RunwayMode::Dual, &s, mixed);
        let (_, fa) = task_optimum(&inst, OperationTask::Landing);
        let (_, fb) = task_optimum(&inst, OperationTask::Takeoff);
        let joint = brute_force_optimum(&inst, 10).unwrap().objective;
        prop_assert!(joint >= fa + fb);
        let sol = solve_dual_runway(&inst, &SolverConfig::default()).unwrap();
        prop_assert_eq!(sol.objective(), joint);
        prop_assert!(sol.bounds.unwrap().lower <= joint);
    }

    #[test]
    fn matching_keeps_landing_times(s in spec(2..=10)) {
        let inst = build(RunwayMode::Dual, &s, mixed);
        let (la, _) = task_optimum(&inst, OperationTask::Landing);
        let a = forward_schedule(&inst, &la).unwrap();
        let takeoffs = inst.indices_with_task(OperationTask::Takeoff);
        if let Ok((c, _)) = match_takeoffs_to_landings(&inst, &a, &takeoffs) {
            prop_assert!(c.is_feasible(&inst));
            let landing: Vec<(usize, i64, i64)> = (0..c.len())
                .filter(|&p| inst.aircraft()[c.order[p]].task == OperationTask::Landing)
                .map(|p| (c.order[p], c.times[p], c.delays[p]))
                .collect();
            let expected: Vec<(usize, i64, i64)> = (0..a.len()).map(|p| (a.order[p], a.times[p], a.delays[p])).collect();
            prop_assert_eq!(landing, expected);
        }
    }

    #[test]
    fn worker_count_does_not_change_output(s in spec(2..=10)) {
        let inst = build(RunwayMode::Dual, &s, mixed);
        let one = solve_dual_runway(&inst, &SolverConfig { workers: 1, ..SolverConfig::default() }).unwrap();
        let two = solve_dual_runway(&inst, &SolverConfig { workers: 2, ..SolverConfig::default() }).unwrap();
        prop_assert_eq!(one.schedule, two.schedule);
    }
}

#[test]
fn catalog_increments_rederive_from_schedules() {
    let catalog = BlockCatalog::build(&SeparationModel::default(), 5).unwrap();
    assert!(!catalog.entries.is_empty());
    for e in &catalog.entries {
        let aircraft = e.pattern.iter().enumerate().map(|(k, &(c, t))| Aircraft::open(k as u32 + 1, c, t, 0, 0)).collect();
        let inst = Instance::new(RunwayMode::Dual, aircraft, SeparationModel::default(), None).unwrap();
        let order: Vec<usize> = (0..e.pattern.len()).collect();
        let s = forward_schedule(&inst, &order).unwrap();
        let b = block_at(&Relevance::new(&inst, &s), &inst, &s, 0, order.len() - 1).expect("catalogued pattern is a block");
        assert_eq!((b.kind, b.length_ratio, b.time_increment), (e.kind, e.length_ratio, e.time_increment));
    }
}

#[test]
fn tail_exchange_only_fires_when_it_helps() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut fired, mut wrong) = (0, Vec::new());
    for _ in 0..200_000 {
        let n = rng.random_range(5..=9);
        let aircraft: Vec<Aircraft> = (0..n)
            .map(|k| {
                let landing = rng.random_bool(0.5);
                let task = if landing { OperationTask::Landing } else { OperationTask::Takeoff };
                let c = runway_core::WakeClass::from_ordinal(rng.random_range(1..=6));
                Aircraft::open(k as u32 + 1, c, task, 0, rng.random_range(0..60))
            })
            .collect();
        let inst = Instance::new(RunwayMode::Dual, aircraft, SeparationModel::default(), None).unwrap();
        let mut order: Vec<usize> = (0..n).collect();
        for k in (1..n).rev() {
            order.swap(k, rng.random_range(0..=k));
        }
        let phi = forward_schedule(&inst, &order).unwrap();
        if let Some(x) = tail_exchange(&inst, &phi) {
            fired += 1;
            if x.exchanged.objective >= phi.objective {
                wrong.push((phi.ids(&inst), x.score, phi.objective, x.exchanged.objective));
            }
        }
    }
    println!("{fired} tails met the premises");
    assert!(fired >= 20, "only {fired} tails met the premises");
    assert!(wrong.is_empty(), "{} of {fired} exchanges did not reduce delay: {:?}", wrong.len(), &wrong[..wrong.len().min(3)]);
}
