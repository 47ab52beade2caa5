use std::collections::HashSet;

use super::aircraft::{apply_interruption, Aircraft, Interruption, Window};
use super::class::OperationTask;
use super::separation::{RunwayMode, SeparationModel};
use crate::error::{Error, Result};

/// A scheduling problem. Immutable once built; windows already carry the
/// interruption transform.
#[derive(Debug, Clone)]
pub struct Instance {
    mode: RunwayMode,
    aircraft: Vec<Aircraft>,
    model: SeparationModel,
    interruption: Option<Interruption>,
    windows: Vec<Window>,
}

impl Instance {
    pub fn new(
        mode: RunwayMode,
        aircraft: Vec<Aircraft>,
        model: SeparationModel,
        interruption: Option<Interruption>,
    ) -> Result<Self> {
        model.check_structure()?;
        let mut ids = HashSet::with_capacity(aircraft.len());
        for a in &aircraft {
            if !ids.insert(a.id) {
                return Err(Error::InvalidInstance(format!("duplicate aircraft id {}", a.id)));
            }
            if a.window_min > a.window_max {
                return Err(Error::InvalidInstance(format!(
                    "aircraft {}: window_min {} > window_max {}",
                    a.id, a.window_min, a.window_max
                )));
            }
            if a.scheduled < 0 {
                return Err(Error::InvalidInstance(format!("aircraft {}: negative scheduled time", a.id)));
            }
            if a.class.ordinal() == 0 || a.class.ordinal() > model.eta {
                return Err(Error::ModelMismatch { ordinal: a.class.ordinal(), eta: model.eta });
            }
        }
        if aircraft.len() > u16::MAX as usize {
            return Err(Error::InvalidInstance("too many aircraft".into()));
        }
        let windows = aircraft
            .iter()
            .map(|a| match &interruption {
                Some(i) => apply_interruption(a, i),
                None => a.base_window(),
            })
            .collect();
        Ok(Self { mode, aircraft, model, interruption, windows })
    }

    pub fn mode(&self) -> RunwayMode {
        self.mode
    }

    pub fn aircraft(&self) -> &[Aircraft] {
        &self.aircraft
    }

    pub fn len(&self) -> usize {
        self.aircraft.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aircraft.is_empty()
    }

    pub fn model(&self) -> &SeparationModel {
        &self.model
    }

    pub fn interruption(&self) -> Option<Interruption> {
        self.interruption
    }

    pub fn window(&self, index: usize) -> &Window {
        &self.windows[index]
    }

    /// `Y` between aircraft at indices `lead` and `trail`.
    pub fn y(&self, lead: usize, trail: usize) -> i64 {
        let (a, b) = (&self.aircraft[lead], &self.aircraft[trail]);
        self.model
            .separation(self.mode, (a.class, a.task), (b.class, b.task))
            .expect("classes validated at construction")
    }

    /// Earliest window start over all aircraft (`t_0`).
    pub fn horizon_start(&self) -> i64 {
        self.windows.iter().filter_map(|w| w.lo()).min().unwrap_or(0)
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.aircraft.iter().position(|a| a.id == id)
    }

    pub fn tasks_present(&self) -> (bool, bool) {
        let l = self.aircraft.iter().any(|a| a.task == OperationTask::Landing);
        let t = self.aircraft.iter().any(|a| a.task == OperationTask::Takeoff);
        (l, t)
    }

    /// Instance restricted to `indices` (kept in the given order).
    pub fn subset(&self, indices: &[usize]) -> Instance {
        Instance {
            mode: self.mode,
            aircraft: indices.iter().map(|&i| self.aircraft[i].clone()).collect(),
            model: self.model.clone(),
            interruption: self.interruption,
            windows: indices.iter().map(|&i| self.windows[i].clone()).collect(),
        }
    }

    pub fn with_mode(&self, mode: RunwayMode) -> Instance {
        Instance { mode, ..self.clone() }
    }

    pub fn indices_with_task(&self, task: OperationTask) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.aircraft[i].task == task).collect()
    }
}
