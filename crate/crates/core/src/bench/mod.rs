//! Seeded instance generation, benchmark runs and CSV reports.

mod generate;
mod report;
mod run;

pub use generate::{class_counts, generate_instance, generate_with_model, GenSpec, TaskMix, DEFAULT_PROPORTIONS, LANDING_LEAD_S};
pub use report::{report_csv, report_summary, summary_path, write_report, REPORT_COLUMNS};
pub use run::{gap_pct, run_benchmark, BenchOptions, BenchRow};
