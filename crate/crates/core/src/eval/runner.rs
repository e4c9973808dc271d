//! End-to-end scenario execution: photometry -> detector -> deterrent,
//! plus kinematic ground truth. Deterministic given the scenario seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::detector::{run_trace, DetectionEvent, DetectorConfig};
use crate::deterrent::{schedule_deterrents, DeterrentEvent, SoundPool, VisualConfig};
use crate::error::Result;
use crate::eval::ground_truth::{ground_truth_passes, GroundTruthPass};
use crate::eval::matching::{match_detections, quiet_negative_count, MatchResult};
use crate::eval::metrics::{compute_metrics, MetricsReport};
use crate::photometry::{synthesize_trace, ScenarioSpec, TraceSample};

/// Salt separating the deterrent rng stream from the trace-noise stream;
/// replaying a recorded trace must reproduce the same sound choices even
/// though it never draws the noise stream.
const DETERRENT_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

/// The rng that drives sound selection for a given run seed.
pub fn deterrent_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ DETERRENT_SEED_SALT)
}

/// Everything one scenario run produces.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub trace: Vec<TraceSample>,
    pub detections: Vec<DetectionEvent>,
    pub deterrents: Vec<DeterrentEvent>,
    pub passes: Vec<GroundTruthPass>,
}

/// Runs the full pipeline for one scenario.
pub fn run_scenario(
    scenario: &ScenarioSpec,
    config: &DetectorConfig,
    pool: &SoundPool,
    visual: &VisualConfig,
) -> Result<ScenarioRun> {
    pool.validate()?;
    let trace = synthesize_trace(scenario)?;
    let detections = run_trace(&trace, *config)?;
    let mut pool = pool.clone();
    let mut rng = deterrent_rng(scenario.seed);
    let deterrents = schedule_deterrents(&detections, &mut pool, visual, &mut rng)?;
    let passes = ground_truth_passes(scenario);
    Ok(ScenarioRun {
        trace,
        detections,
        deterrents,
        passes,
    })
}

/// Matches one scenario's detections and reports its metrics.
pub fn evaluate_scenario(
    scenario: &ScenarioSpec,
    config: &DetectorConfig,
    bin_edges_ft: &[f64],
) -> Result<(MatchResult, MetricsReport)> {
    let trace = synthesize_trace(scenario)?;
    let detections = run_trace(&trace, *config)?;
    let passes = ground_truth_passes(scenario);
    let result = match_detections(&detections, &passes);
    let negatives = quiet_negative_count(&passes, scenario.duration_s, config.holdoff_s);
    let report = compute_metrics(&result, bin_edges_ft, negatives)?;
    Ok((result, report))
}

/// Evaluates a whole suite under one config, merging per-scenario counts
/// associatively.
pub fn evaluate_suite(
    suite: &[ScenarioSpec],
    config: &DetectorConfig,
    bin_edges_ft: &[f64],
) -> Result<MetricsReport> {
    let mut merged: Option<MetricsReport> = None;
    for scenario in suite {
        let (_, report) = evaluate_scenario(scenario, config, bin_edges_ft)?;
        merged = Some(match merged {
            Some(m) => m.merge(&report)?,
            None => report,
        });
    }
    merged.ok_or(crate::error::Error::EmptySuite)
}
