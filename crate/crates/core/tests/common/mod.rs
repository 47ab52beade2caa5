#![allow(dead_code)]

use proptest::prelude::*;
use runway_core::{Aircraft, Instance, OperationTask, RunwayMode, SeparationModel, WakeClass};

pub fn task(landing: bool) -> OperationTask {
    if landing {
        OperationTask::Landing
    } else {
        OperationTask::Takeoff
    }
}

/// `(class ordinal, landing?, window start, scheduled offset)` per aircraft.
pub type Spec = Vec<(u8, bool, i64, i64)>;

pub fn spec(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Spec> {
    prop::collection::vec((1u8..=6, any::<bool>(), 0i64..600, -300i64..300), n)
}

pub fn build(mode: RunwayMode, spec: &Spec, map: impl Fn(bool) -> OperationTask) -> Instance {
    let aircraft = spec
        .iter()
        .enumerate()
        .map(|(k, &(c, l, lo, off))| Aircraft::open(k as u32 + 1, WakeClass::from_ordinal(c), map(l), lo, (lo + off).max(0)))
        .collect();
    Instance::new(mode, aircraft, SeparationModel::default(), None).unwrap()
}

/// Aircraft with a common window start at 0.
pub fn build_open(mode: RunwayMode, spec: &Spec, map: impl Fn(bool) -> OperationTask) -> Instance {
    let aircraft = spec
        .iter()
        .enumerate()
        .map(|(k, &(c, l, lo, _))| Aircraft::open(k as u32 + 1, WakeClass::from_ordinal(c), map(l), 0, lo))
        .collect();
    Instance::new(mode, aircraft, SeparationModel::default(), None).unwrap()
}

pub fn mixed(l: bool) -> OperationTask {
    task(l)
}

pub fn landings(_: bool) -> OperationTask {
    OperationTask::Landing
}

pub fn takeoffs(_: bool) -> OperationTask {
    OperationTask::Takeoff
}
