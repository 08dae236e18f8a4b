//! Configuration, experiment orchestration, snapshots and reports.
//!
//! Each study takes an [`ExperimentConfig`] and returns a [`Report`] whose
//! counted verdicts decide the outcome; [`Report::write`] persists the JSON
//! summary and CSV series.

mod audit_study;
mod blowup;
mod common;
pub mod config;
mod norms_study;
pub mod report;
mod simulate;
mod smoothing;
pub mod snapshot;
mod snapshot_study;
pub mod tolerances;

pub use audit_study::run_estimate_audit;
pub use blowup::{run_blowup_study, BlowupSample};
pub use common::boundary_ratio;
pub use config::{ExperimentConfig, Study};
pub use norms_study::{run_norms, FieldNorms};
pub use report::{Relation, Report, Series, Verdict};
pub use simulate::run_simulate;
pub use smoothing::{run_smoothing_study, SmoothingLevel};
pub use snapshot::{load_field, save_field, Snapshot};
pub use snapshot_study::run_snapshot;
