//! Core library for a headlight-based animal deterrent pipeline.
//!
//! The crate is organized around the stages of the pipeline:
//!
//! * [`photometry`] — synthesizes per-channel ambient-light-sensor traces
//!   (lux vs. time) for configurable road scenes.
//! * [`detector`] — dual inertial-moving-average change detection with
//!   ratio triggering, holdoff, and saturation suppression.
//! * [`deterrent`] — maps detections to randomized, non-repeating
//!   audio-visual deterrent actions.
//! * [`eval`] — scenario runner, detection/ground-truth matching,
//!   recall/precision/trigger-distance metrics, and a parameter tuner.
//! * [`io`] — the CSV and JSON formats shared by the CLI and the tests.
//!
//! Everything is deterministic given a scenario seed; no global state.

pub mod detector;
pub mod deterrent;
pub mod error;
pub mod eval;
pub mod io;
pub mod photometry;
pub mod units;

pub use detector::{DetectionEvent, Detector, DetectorConfig, ImaState};
pub use deterrent::{DeterrentEvent, Sound, SoundPool, VisualConfig};
pub use error::{Error, Result};
pub use eval::{
    GroundTruthPass, MatchResult, MetricsReport, ParamGrid, ScenarioRun, TruePositive,
};
pub use photometry::{
    AmbientModel, Channel, RoadGeometry, ScenarioSpec, TraceSample, VehicleClass, VehicleSpec,
};
