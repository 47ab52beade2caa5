//! Domain types, separation lookup, earliest-time scheduling, sequence
//! diagnostics and separation-model validation.

mod aircraft;
mod class;
pub mod diagnostics;
mod eval;
mod instance;
mod schedule;
mod separation;
pub mod validate;

pub use aircraft::{apply_interruption, Aircraft, Interruption, Window, OPEN_WINDOW_END};
pub use class::{OperationTask, WakeClass};
pub use diagnostics::{analyze_sequence, decompose_blocks, Block, BlockKind, SequenceDiagnostics};
pub use eval::{Evaluator, LastOps};
pub use instance::Instance;
pub use schedule::{forward_schedule, total_delay, Schedule};
pub use separation::{RunwayMode, SeparationModel, HEATHROW_LANDING, RECAT_EU_TAKEOFF};
pub use validate::{validate_separation_model, ValidationReport};

/// `Y` between two aircraft under `mode`.
pub fn y_lookup(model: &SeparationModel, mode: RunwayMode, leading: &Aircraft, trailing: &Aircraft) -> crate::Result<i64> {
    model.separation(mode, (leading.class, leading.task), (trailing.class, trailing.task))
}
