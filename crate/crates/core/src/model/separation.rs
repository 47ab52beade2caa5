use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::class::{OperationTask, WakeClass};
use crate::error::{Error, Result};

/// Runway configuration. On dual runways landings use one runway and
/// takeoffs the other; cross-task separations switch to the dual constants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunwayMode {
    Single,
    Dual,
}

/// Minimum separation data, all values in integer seconds.
///
/// `landing[i][j]` is the separation between a leading landing of class
/// `i + 1` and a trailing landing of class `j + 1`; `takeoff` likewise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationModel {
    pub eta: u8,
    pub t0: i64,
    pub delta: i64,
    pub rho1: u8,
    pub rho2: u8,
    pub landing: Vec<Vec<i64>>,
    pub takeoff: Vec<Vec<i64>>,
    /// Landing followed by takeoff on one runway.
    pub same_runway_td: i64,
    /// Takeoff followed by landing on one runway.
    pub same_runway_dt: i64,
    /// Landing followed by takeoff on dual runways.
    pub dual_pd: i64,
    /// Takeoff followed by landing on dual runways.
    pub dual_dp: i64,
    /// Class pairs with the narrower class-2 margin in the landing matrix.
    pub exception_set: Vec<(u8, u8)>,
}

/// Heathrow landing separations, leading class by row.
pub const HEATHROW_LANDING: [[i64; 6]; 6] = [
    [90, 135, 158, 158, 158, 180],
    [90, 90, 113, 113, 135, 158],
    [60, 60, 68, 90, 90, 135],
    [60, 60, 60, 60, 68, 113],
    [60, 60, 60, 60, 68, 90],
    [60, 60, 60, 60, 60, 60],
];

/// RECAT-EU takeoff separations, leading class by row.
pub const RECAT_EU_TAKEOFF: [[i64; 6]; 6] = [
    [80, 100, 120, 140, 160, 180],
    [80, 80, 100, 100, 120, 140],
    [60, 60, 80, 80, 100, 120],
    [60, 60, 60, 60, 60, 120],
    [60, 60, 60, 60, 60, 100],
    [60, 60, 60, 60, 60, 80],
];

impl Default for SeparationModel {
    fn default() -> Self {
        Self::heathrow_recat_eu()
    }
}

impl SeparationModel {
    /// Six-class model: Heathrow landings, RECAT-EU takeoffs, `T_D = 75`,
    /// `D_T = D_P = 60`, `P_D = 0`.
    pub fn heathrow_recat_eu() -> Self {
        Self {
            eta: 6,
            t0: 60,
            delta: 8,
            rho1: 3,
            rho2: 5,
            landing: HEATHROW_LANDING.iter().map(|r| r.to_vec()).collect(),
            takeoff: RECAT_EU_TAKEOFF.iter().map(|r| r.to_vec()).collect(),
            same_runway_td: 75,
            same_runway_dt: 60,
            dual_pd: 0,
            dual_dp: 60,
            exception_set: vec![(3, 4), (3, 6)],
        }
    }

    /// Structural invariants; assumption checks live in [`super::validate`].
    pub fn check_structure(&self) -> Result<()> {
        let eta = self.eta as usize;
        if eta == 0 {
            return Err(Error::InvalidModel("eta must be positive".into()));
        }
        if self.t0 <= 0 {
            return Err(Error::InvalidModel("t0 must be positive".into()));
        }
        for (name, m) in [("landing", &self.landing), ("takeoff", &self.takeoff)] {
            if m.len() != eta || m.iter().any(|r| r.len() != eta) {
                return Err(Error::InvalidModel(format!("{name} matrix is not {eta}x{eta}")));
            }
            if let Some(v) = m.iter().flatten().find(|&&v| v < self.t0) {
                return Err(Error::InvalidModel(format!("{name} entry {v} below t0")));
            }
        }
        for (name, v) in [
            ("same_runway_td", self.same_runway_td),
            ("same_runway_dt", self.same_runway_dt),
            ("dual_dp", self.dual_dp),
        ] {
            if v < self.t0 {
                return Err(Error::InvalidModel(format!("{name}={v} below t0")));
            }
        }
        if self.dual_pd < 0 {
            return Err(Error::InvalidModel("dual_pd must be non-negative".into()));
        }
        for &(a, b) in &self.exception_set {
            if a == 0 || b == 0 || a > self.eta || b > self.eta {
                return Err(Error::InvalidModel(format!("exception pair ({a},{b}) out of range")));
            }
        }
        Ok(())
    }

    fn check_class(&self, c: WakeClass) -> Result<usize> {
        if c.ordinal() == 0 || c.ordinal() > self.eta {
            return Err(Error::ModelMismatch { ordinal: c.ordinal(), eta: self.eta });
        }
        Ok(c.index())
    }

    /// Minimum separation `Y` between a leading and a trailing operation.
    pub fn separation(
        &self,
        mode: RunwayMode,
        leading: (WakeClass, OperationTask),
        trailing: (WakeClass, OperationTask),
    ) -> Result<i64> {
        let i = self.check_class(leading.0)?;
        let j = self.check_class(trailing.0)?;
        use OperationTask::*;
        Ok(match (leading.1, trailing.1, mode) {
            (Landing, Landing, _) => self.landing[i][j],
            (Takeoff, Takeoff, _) => self.takeoff[i][j],
            (Landing, Takeoff, RunwayMode::Single) => self.same_runway_td,
            (Takeoff, Landing, RunwayMode::Single) => self.same_runway_dt,
            (Landing, Takeoff, RunwayMode::Dual) => self.dual_pd,
            (Takeoff, Landing, RunwayMode::Dual) => self.dual_dp,
        })
    }

    /// Same-task matrix for `task`.
    pub fn matrix(&self, task: OperationTask) -> &[Vec<i64>] {
        match task {
            OperationTask::Landing => &self.landing,
            OperationTask::Takeoff => &self.takeoff,
        }
    }

    /// True when `Y(a,c) <= Y(a,b) + Y(b,c)` for every same-task class
    /// triple. Under this property the binding predecessor of any operation
    /// is the most recent operation of each task, which the fast evaluators
    /// and the dynamic programs rely on.
    pub fn within_task_triangle(&self) -> bool {
        let eta = self.eta as usize;
        [&self.landing, &self.takeoff].iter().all(|m| {
            (0..eta).all(|a| {
                (0..eta).all(|b| (0..eta).all(|c| m[a][c] <= m[a][b] + m[b][c]))
            })
        })
    }

    pub fn min_same_task(&self, task: OperationTask) -> i64 {
        self.matrix(task).iter().flatten().copied().min().unwrap_or(self.t0)
    }

    pub fn max_separation(&self) -> i64 {
        self.landing
            .iter()
            .chain(self.takeoff.iter())
            .flatten()
            .copied()
            .chain([self.same_runway_td, self.same_runway_dt, self.dual_pd, self.dual_dp])
            .max()
            .unwrap_or(self.t0)
    }

    /// Hex SHA-256 of the canonical JSON encoding.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("model serializes");
        let hash = Sha256::digest(&bytes);
        hash.iter().map(|b| format!("{b:02x}")).collect()
    }
}
