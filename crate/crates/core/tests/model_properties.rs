mod common;

use common::*;
use proptest::prelude::*;
use runway_core::model::diagnostics::Relevance;
use runway_core::model::{analyze_sequence, forward_schedule};
use runway_core::{Aircraft, Instance, RunwayMode};

fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

proptest! {
    #[test]
    fn forward_schedule_meets_every_constraint(s in spec(1..=10), dual in any::<bool>(), order in Just(identity(10)).prop_shuffle()) {
        let mode = if dual { RunwayMode::Dual } else { RunwayMode::Single };
        let inst = build(mode, &s, mixed);
        let order: Vec<usize> = order.into_iter().filter(|&k| k < s.len()).collect();
        let sched = forward_schedule(&inst, &order).unwrap();
        prop_assert!(sched.violations(&inst).is_empty(), "{:?}", sched.violations(&inst));
    }

    #[test]
    fn pure_relevance_joins_neighbors(s in spec(2..=10), landing in any::<bool>()) {
        let inst = build_open(RunwayMode::Single, &s, if landing { landings } else { takeoffs });
        let sched = forward_schedule(&inst, &identity(s.len())).unwrap();
        for (q, p) in Relevance::new(&inst, &sched).edges() {
            prop_assert_eq!(p, q + 1);
        }
    }

    #[test]
    fn cross_task_relevance_joins_neighbors(s in spec(2..=10)) {
        let inst = build_open(RunwayMode::Single, &s, mixed);
        let sched = forward_schedule(&inst, &identity(s.len())).unwrap();
        let task = |p: usize| inst.aircraft()[sched.order[p]].task;
        for (q, p) in Relevance::new(&inst, &sched).edges() {
            if task(q) != task(p) {
                prop_assert_eq!(p, q + 1);
            }
        }
    }

    #[test]
    fn breakpoints_count_class_ascents(s in spec(1..=10), dual in any::<bool>()) {
        let mode = if dual { RunwayMode::Dual } else { RunwayMode::Single };
        let inst = build(mode, &s, mixed);
        let sched = forward_schedule(&inst, &identity(s.len())).unwrap();
        let mut ascents = 0;
        for want in [true, false] {
            let classes: Vec<_> = s.iter().filter(|a| a.1 == want).map(|a| a.0).collect();
            ascents += classes.windows(2).filter(|w| w[0] < w[1]).count();
        }
        prop_assert_eq!(analyze_sequence(&inst, &sched).breakpoints.len(), ascents);
    }

    #[test]
    fn blocks_cover_the_sequence(s in spec(2..=9)) {
        let inst = build_open(RunwayMode::Dual, &s, mixed);
        let sched = forward_schedule(&inst, &identity(s.len())).unwrap();
        let d = analyze_sequence(&inst, &sched);
        if d.block_gaps.is_empty() && !d.blocks.is_empty() {
            let mut covered = 0;
            let mut end = None;
            for b in &d.blocks {
                let fresh = end.map_or(b.span.0, |e: usize| e + 1);
                prop_assert!(b.span.0 <= fresh && b.span.1 >= fresh);
                covered += b.span.1 + 1 - fresh;
                end = Some(b.span.1);
            }
            prop_assert_eq!(d.blocks[0].span.0, 0);
            prop_assert_eq!(covered, s.len());
        }
    }

    #[test]
    fn later_window_start_never_helps(s in spec(1..=9), pick in 0usize..9, push in 1i64..400) {
        let inst = build(RunwayMode::Single, &s, mixed);
        let k = pick % s.len();
        let mut aircraft: Vec<Aircraft> = inst.aircraft().to_vec();
        aircraft[k].window_min += push;
        let later = Instance::new(RunwayMode::Single, aircraft, inst.model().clone(), None).unwrap();
        let order = identity(s.len());
        prop_assert!(forward_schedule(&later, &order).unwrap().objective >= forward_schedule(&inst, &order).unwrap().objective);
    }
}
