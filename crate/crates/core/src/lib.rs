//! Total-delay minimizing aircraft sequencing.
//!
//! The crate covers three problem variants that share one data model:
//! pure landing or pure takeoff sequences on one runway, mixed landings and
//! takeoffs on one runway, and mixed operations on two closely spaced
//! runways where landings use one runway and takeoffs the other.
//!
//! - [`model`] holds the domain types, separation lookup, earliest-time
//!   scheduling, sequence diagnostics and the separation-model validator.
//! - [`single`] is the incremental insertion solver for one runway.
//! - [`dual`] is the block-decomposition solver for dual runways.
//! - [`oracle`] contains independent exact solvers and the MIP exporter.
//! - [`bench`] generates seeded instances and writes benchmark reports.

pub mod bench;
pub mod dual;
pub mod error;
pub mod io;
pub mod model;
pub mod oracle;
mod par;
pub mod search;
pub mod single;
pub mod solution;

pub use error::{Error, Result};
pub use model::{
    Aircraft, Instance, Interruption, OperationTask, RunwayMode, Schedule, SeparationModel,
    WakeClass, Window,
};
pub use solution::{SearchBounds, Solution, SolverConfig, SolverStats};

/// Solves `inst` with the solver matching its runway mode.
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<Solution> {
    match inst.mode() {
        RunwayMode::Single => single::solve_single_runway(inst, cfg),
        RunwayMode::Dual => dual::solve_dual_runway(inst, cfg),
    }
}
