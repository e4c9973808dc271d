//! Exhaustive grid search over the detector's main thresholds.
//!
//! Ranking is lexicographic: configs with zero false-positive rate come
//! first, then higher recall, then longer mean trigger distance. Ties
//! keep grid order, so identical inputs always produce identical
//! rankings.

use serde::{Deserialize, Serialize};

use crate::detector::DetectorConfig;
use crate::error::{Error, Result};
use crate::eval::metrics::MetricsReport;
use crate::eval::runner::evaluate_suite;
use crate::photometry::ScenarioSpec;

/// Axes of the search. The cartesian product of the four lists is
/// evaluated; combinations that violate the config invariants (for
/// example a baseline alpha at or below the instant alpha) are skipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamGrid {
    pub alpha_baseline: Vec<f64>,
    pub alpha_instant: Vec<f64>,
    pub trigger_ratio: Vec<f64>,
    pub holdoff_s: Vec<f64>,
}

impl ParamGrid {
    /// All valid configs in deterministic grid order, derived from `base`
    /// for the fields the grid does not sweep.
    pub fn configs(&self, base: &DetectorConfig) -> Vec<DetectorConfig> {
        let mut out = Vec::new();
        for &alpha_baseline in &self.alpha_baseline {
            for &alpha_instant in &self.alpha_instant {
                for &trigger_ratio in &self.trigger_ratio {
                    for &holdoff_s in &self.holdoff_s {
                        let candidate = DetectorConfig {
                            alpha_baseline,
                            alpha_instant,
                            trigger_ratio,
                            holdoff_s,
                            // keep hysteresis well-formed while sweeping
                            // the trigger threshold
                            release_ratio: base.release_ratio.min(0.5 + trigger_ratio / 2.0),
                            ..*base
                        };
                        if candidate.validate().is_ok() {
                            out.push(candidate);
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankedConfig {
    pub config: DetectorConfig,
    pub report: MetricsReport,
}

fn ranking_key(report: &MetricsReport) -> (bool, f64, f64) {
    let fpr = report.false_positive_rate.unwrap_or(0.0);
    (
        fpr > 0.0, // false sorts first: zero-FPR configs lead
        -report.recall.unwrap_or(0.0),
        -report.mean_trigger_distance_ft.unwrap_or(0.0),
    )
}

/// Evaluates every grid point over the suite and returns the ranked list,
/// best first.
pub fn tune_parameters(
    grid: &ParamGrid,
    base: &DetectorConfig,
    suite: &[ScenarioSpec],
    bin_edges_ft: &[f64],
) -> Result<Vec<RankedConfig>> {
    if suite.is_empty() {
        return Err(Error::EmptySuite);
    }
    let configs = grid.configs(base);
    if configs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut ranked = Vec::with_capacity(configs.len());
    for config in configs {
        let report = evaluate_suite(suite, &config, bin_edges_ft)?;
        ranked.push(RankedConfig { config, report });
    }
    // stable sort keeps grid order on ties
    ranked.sort_by(|a, b| {
        ranking_key(&a.report)
            .partial_cmp(&ranking_key(&b.report))
            .expect("metrics are finite")
    });
    Ok(ranked)
}
