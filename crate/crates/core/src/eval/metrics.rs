//! Detection metrics: recall, precision, false-positive rate, trigger
//! time/distance statistics, and the per-class trigger-distance histogram.
//!
//! Reports carry their raw counts so that reports from disjoint scenario
//! sets merge associatively: counts add, rates are recomputed from the
//! summed counts, never averaged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photometry::VehicleClass;

use super::matching::MatchResult;

/// Default histogram bins: 60 ft wide from 0 to 600 ft, matching the
/// failure-rule granularity.
pub fn default_bin_edges() -> Vec<f64> {
    (0..=10).map(|i| i as f64 * 60.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ClassAggregate {
    pub count: u64,
    pub sum_distance_ft: f64,
}

/// Raw tallies behind a report.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct EvalCounts {
    pub true_positives: u64,
    pub false_negatives: u64,
    pub false_positives: u64,
    /// Holdoff-sized vehicle-free slices: the negative class for the FPR.
    pub quiet_negatives: u64,
    pub sum_trigger_lead_s: f64,
    pub sum_trigger_distance_ft: f64,
    pub per_class: BTreeMap<VehicleClass, ClassAggregate>,
}

/// True-positive trigger distances binned per vehicle class. Bins are
/// half-open [lo, hi); the outermost bins absorb anything beyond the
/// edges so the counts always total |TP|.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceHistogram {
    pub bin_edges_ft: Vec<f64>,
    pub counts: BTreeMap<VehicleClass, Vec<u64>>,
}

impl DistanceHistogram {
    fn new(bin_edges_ft: Vec<f64>) -> Self {
        Self {
            bin_edges_ft,
            counts: BTreeMap::new(),
        }
    }

    fn bin_count(&self) -> usize {
        self.bin_edges_ft.len() - 1
    }

    fn bin_index(&self, distance_ft: f64) -> usize {
        let edges = &self.bin_edges_ft;
        let last = self.bin_count() - 1;
        for i in 0..self.bin_count() {
            if distance_ft < edges[i + 1] {
                return i;
            }
        }
        last
    }

    fn add(&mut self, class: VehicleClass, distance_ft: f64) {
        let idx = self.bin_index(distance_ft);
        let bins = self.bin_count();
        self.counts.entry(class).or_insert_with(|| vec![0; bins])[idx] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.values().flatten().sum()
    }
}

fn validate_bins(bin_edges_ft: &[f64]) -> Result<()> {
    if bin_edges_ft.len() < 2 {
        return Err(Error::BadBins("need at least two edges".into()));
    }
    if bin_edges_ft.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::BadBins(format!(
            "edges must be strictly increasing, got {bin_edges_ft:?}"
        )));
    }
    Ok(())
}

/// The Table-I-style report. Rate fields are absent (never 0 or 1 by
/// fiat) when their denominator is empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub recall: Option<f64>,
    pub precision: Option<f64>,
    pub false_positive_rate: Option<f64>,
    pub mean_trigger_time_s: Option<f64>,
    pub mean_trigger_distance_ft: Option<f64>,
    pub per_class_mean_distance_ft: BTreeMap<VehicleClass, f64>,
    pub histogram: DistanceHistogram,
    pub counts: EvalCounts,
}

impl MetricsReport {
    /// Recomputes every derived field from raw counts.
    pub fn from_counts(counts: EvalCounts, histogram: DistanceHistogram) -> Self {
        let ratio = |num: u64, den: u64| (den > 0).then(|| num as f64 / den as f64);
        let tp = counts.true_positives;
        let recall = ratio(tp, tp + counts.false_negatives);
        let precision = ratio(tp, tp + counts.false_positives);
        let false_positive_rate = ratio(
            counts.false_positives,
            counts.false_positives + counts.quiet_negatives,
        );
        let mean_trigger_time_s = (tp > 0).then(|| counts.sum_trigger_lead_s / tp as f64);
        let mean_trigger_distance_ft =
            (tp > 0).then(|| counts.sum_trigger_distance_ft / tp as f64);
        let per_class_mean_distance_ft = counts
            .per_class
            .iter()
            .filter(|(_, agg)| agg.count > 0)
            .map(|(class, agg)| (*class, agg.sum_distance_ft / agg.count as f64))
            .collect();
        Self {
            recall,
            precision,
            false_positive_rate,
            mean_trigger_time_s,
            mean_trigger_distance_ft,
            per_class_mean_distance_ft,
            histogram,
            counts,
        }
    }

    /// Combines reports from disjoint scenario sets. Bin edges must
    /// agree; rates are recomputed from the summed counts.
    pub fn merge(&self, other: &MetricsReport) -> Result<MetricsReport> {
        if self.histogram.bin_edges_ft != other.histogram.bin_edges_ft {
            return Err(Error::BadBins(format!(
                "cannot merge reports with different bin edges ({:?} vs {:?})",
                self.histogram.bin_edges_ft, other.histogram.bin_edges_ft
            )));
        }
        let mut counts = self.counts.clone();
        counts.true_positives += other.counts.true_positives;
        counts.false_negatives += other.counts.false_negatives;
        counts.false_positives += other.counts.false_positives;
        counts.quiet_negatives += other.counts.quiet_negatives;
        counts.sum_trigger_lead_s += other.counts.sum_trigger_lead_s;
        counts.sum_trigger_distance_ft += other.counts.sum_trigger_distance_ft;
        for (class, agg) in &other.counts.per_class {
            let entry = counts.per_class.entry(*class).or_default();
            entry.count += agg.count;
            entry.sum_distance_ft += agg.sum_distance_ft;
        }
        let mut histogram = self.histogram.clone();
        for (class, bins) in &other.histogram.counts {
            let entry = histogram
                .counts
                .entry(*class)
                .or_insert_with(|| vec![0; bins.len()]);
            for (a, b) in entry.iter_mut().zip(bins) {
                *a += b;
            }
        }
        Ok(MetricsReport::from_counts(counts, histogram))
    }
}

/// Computes the report for one matching result. `quiet_negatives` is the
/// scenario's vehicle-free slice count (see
/// [`super::matching::quiet_negative_count`]).
pub fn compute_metrics(
    result: &MatchResult,
    bin_edges_ft: &[f64],
    quiet_negatives: u64,
) -> Result<MetricsReport> {
    validate_bins(bin_edges_ft)?;
    let mut histogram = DistanceHistogram::new(bin_edges_ft.to_vec());
    let mut counts = EvalCounts {
        true_positives: result.true_positives.len() as u64,
        false_negatives: result.false_negatives.len() as u64,
        false_positives: result.false_positives.len() as u64,
        quiet_negatives,
        ..EvalCounts::default()
    };
    for tp in &result.true_positives {
        counts.sum_trigger_lead_s += tp.trigger_lead_s;
        counts.sum_trigger_distance_ft += tp.trigger_distance_ft;
        let agg = counts.per_class.entry(tp.class).or_default();
        agg.count += 1;
        agg.sum_distance_ft += tp.trigger_distance_ft;
        histogram.add(tp.class, tp.trigger_distance_ft);
    }
    Ok(MetricsReport::from_counts(counts, histogram))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detector::DetectionEvent;
    use crate::eval::matching::TruePositive;
    use crate::photometry::Channel;
    use approx::assert_relative_eq;

    fn tp(class: VehicleClass, distance: f64) -> TruePositive {
        TruePositive {
            vehicle_index: 0,
            class,
            event: DetectionEvent {
                t: 1.0,
                channel: Channel::A,
                ratio_at_trigger: 2.0,
                instant_lux: 2.0,
                baseline_lux: 1.0,
            },
            trigger_distance_ft: distance,
            trigger_lead_s: distance / 66.0,
        }
    }

    fn fp() -> DetectionEvent {
        DetectionEvent {
            t: 0.5,
            channel: Channel::B,
            ratio_at_trigger: 2.0,
            instant_lux: 2.0,
            baseline_lux: 1.0,
        }
    }

    #[test]
    fn reproduces_reference_table() {
        // 193 detected of 200, no false positives
        let result = MatchResult {
            true_positives: (0..193).map(|_| tp(VehicleClass::SedanLed, 244.0)).collect(),
            false_negatives: (0..7).collect(),
            false_positives: vec![],
        };
        let report = compute_metrics(&result, &default_bin_edges(), 100).unwrap();
        assert_relative_eq!(report.recall.unwrap(), 0.965, max_relative = 1e-12);
        assert_eq!(report.precision.unwrap(), 1.0);
        assert_eq!(report.false_positive_rate.unwrap(), 0.0);
        assert_eq!(report.histogram.total(), 193);
    }

    #[test]
    fn empty_result_leaves_rates_absent() {
        let report =
            compute_metrics(&MatchResult::default(), &default_bin_edges(), 0).unwrap();
        assert_eq!(report.recall, None);
        assert_eq!(report.precision, None);
        assert_eq!(report.false_positive_rate, None);
        assert_eq!(report.mean_trigger_time_s, None);
        assert_eq!(report.mean_trigger_distance_ft, None);
        assert!(report.per_class_mean_distance_ft.is_empty());
    }

    #[test]
    fn binning_matches_hand_count() {
        let result = MatchResult {
            true_positives: vec![
                tp(VehicleClass::SedanLed, 100.0),
                tp(VehicleClass::SedanLed, 150.0),
                tp(VehicleClass::SedanLed, 250.0),
            ],
            false_negatives: vec![],
            false_positives: vec![],
        };
        let edges = [0.0, 60.0, 120.0, 180.0, 240.0, 300.0];
        let report = compute_metrics(&result, &edges, 0).unwrap();
        assert_eq!(
            report.histogram.counts[&VehicleClass::SedanLed],
            vec![0, 1, 1, 0, 1]
        );
    }

    #[test]
    fn rejects_unsorted_bins() {
        let result = MatchResult::default();
        assert!(compute_metrics(&result, &[0.0, 60.0, 60.0], 0).is_err());
        assert!(compute_metrics(&result, &[100.0], 0).is_err());
    }

    #[test]
    fn per_class_means_are_separate() {
        let result = MatchResult {
            true_positives: vec![
                tp(VehicleClass::SedanLed, 240.0),
                tp(VehicleClass::SedanLed, 260.0),
                tp(VehicleClass::Semi, 500.0),
            ],
            false_negatives: vec![],
            false_positives: vec![],
        };
        let report = compute_metrics(&result, &default_bin_edges(), 0).unwrap();
        assert_eq!(report.per_class_mean_distance_ft[&VehicleClass::SedanLed], 250.0);
        assert_eq!(report.per_class_mean_distance_ft[&VehicleClass::Semi], 500.0);
        assert_relative_eq!(
            report.mean_trigger_distance_ft.unwrap(),
            1000.0 / 3.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn merge_recomputes_rates_from_counts() {
        let r1 = compute_metrics(
            &MatchResult {
                true_positives: vec![tp(VehicleClass::SedanLed, 200.0)],
                false_negatives: vec![1],
                false_positives: vec![],
            },
            &default_bin_edges(),
            10,
        )
        .unwrap();
        let r2 = compute_metrics(
            &MatchResult {
                true_positives: vec![tp(VehicleClass::Suv, 300.0)],
                false_negatives: vec![],
                false_positives: vec![fp()],
            },
            &default_bin_edges(),
            30,
        )
        .unwrap();
        let merged = r1.merge(&r2).unwrap();
        // 2 TP, 1 FN, 1 FP: recall 2/3 (not the average of 1/2 and 1)
        assert_relative_eq!(merged.recall.unwrap(), 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(merged.precision.unwrap(), 2.0 / 3.0, max_relative = 1e-12);
        assert_relative_eq!(
            merged.false_positive_rate.unwrap(),
            1.0 / 41.0,
            max_relative = 1e-12
        );
        assert_eq!(merged.histogram.total(), 2);
        // merge order must not matter
        assert_eq!(merged, r2.merge(&r1).unwrap());
    }

    #[test]
    fn merge_rejects_conflicting_bins() {
        let r1 = compute_metrics(&MatchResult::default(), &default_bin_edges(), 0).unwrap();
        let r2 = compute_metrics(&MatchResult::default(), &[0.0, 100.0, 200.0], 0).unwrap();
        assert!(r1.merge(&r2).is_err());
    }

    #[test]
    fn outermost_bins_absorb_outliers() {
        let result = MatchResult {
            true_positives: vec![tp(VehicleClass::Semi, 2000.0)],
            false_negatives: vec![],
            false_positives: vec![],
        };
        let report = compute_metrics(&result, &default_bin_edges(), 0).unwrap();
        assert_eq!(report.histogram.total(), 1);
        assert_eq!(*report.histogram.counts[&VehicleClass::Semi].last().unwrap(), 1);
    }
}
