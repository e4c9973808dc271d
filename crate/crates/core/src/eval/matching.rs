//! Attribution of detection events to ground-truth passes.
//!
//! Each event, in time order, is attributed to the nearest not-yet-matched
//! vehicle on its channel whose approach window contains the event time.
//! A vehicle is a true positive only if its matched event fired at or
//! beyond the 60 ft failure distance; a match inside the failure zone is
//! recorded as a false negative. Events with no vehicle to claim are
//! false positives.

use serde::{Deserialize, Serialize};

use crate::detector::DetectionEvent;
use crate::error::{Error, Result};
use crate::photometry::VehicleClass;

use super::ground_truth::{GroundTruthPass, FAILURE_DISTANCE_FT};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruePositive {
    pub vehicle_index: usize,
    pub class: VehicleClass,
    pub event: DetectionEvent,
    pub trigger_distance_ft: f64,
    pub trigger_lead_s: f64,
}

/// The outcome of matching one scenario's events against its passes.
/// Every vehicle lands in exactly one of TP/FN; every event in at most
/// one TP.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct MatchResult {
    pub true_positives: Vec<TruePositive>,
    pub false_negatives: Vec<usize>,
    pub false_positives: Vec<DetectionEvent>,
}

/// Lead time and distance for an event already paired with a pass:
/// lead = t_passby - t, distance = speed * lead. The distance equals
/// `pass.distance_ft_at(event.t)` exactly; both are the same expression.
pub fn trigger_lead(event: &DetectionEvent, pass: &GroundTruthPass) -> Result<(f64, f64)> {
    if !pass.window_contains(event.t) {
        return Err(Error::EventOutsideWindow {
            event_t: event.t,
            start: pass.entry_time_s,
            end: pass.t_passby_s,
        });
    }
    let lead_s = pass.t_passby_s - event.t;
    let distance_ft = pass.speed_fps * lead_s;
    Ok((lead_s, distance_ft))
}

/// Matches time-ordered events against passes.
pub fn match_detections(events: &[DetectionEvent], passes: &[GroundTruthPass]) -> MatchResult {
    debug_assert!(
        events.windows(2).all(|w| w[0].t <= w[1].t),
        "events must be time-ordered"
    );
    let mut matched: Vec<Option<(DetectionEvent, f64, f64)>> = vec![None; passes.len()];
    let mut false_positives = Vec::new();

    for event in events {
        let candidate = passes
            .iter()
            .enumerate()
            .filter(|(i, p)| {
                matched[*i].is_none()
                    && p.channel == event.channel
                    && p.window_contains(event.t)
            })
            .min_by(|(_, a), (_, b)| {
                a.distance_ft_at(event.t)
                    .total_cmp(&b.distance_ft_at(event.t))
            });
        match candidate {
            Some((i, pass)) => {
                let (lead_s, distance_ft) =
                    trigger_lead(event, pass).expect("window checked above");
                matched[i] = Some((*event, distance_ft, lead_s));
            }
            None => false_positives.push(*event),
        }
    }

    let mut result = MatchResult {
        false_positives,
        ..MatchResult::default()
    };
    for (pass, slot) in passes.iter().zip(matched) {
        match slot {
            Some((event, trigger_distance_ft, trigger_lead_s))
                if trigger_distance_ft >= FAILURE_DISTANCE_FT =>
            {
                result.true_positives.push(TruePositive {
                    vehicle_index: pass.vehicle_index,
                    class: pass.class,
                    event,
                    trigger_distance_ft,
                    trigger_lead_s,
                });
            }
            // matched only inside the failure zone, or never matched
            _ => result.false_negatives.push(pass.vehicle_index),
        }
    }
    result
}

/// Number of holdoff-sized time slices of the scenario that contain no
/// approaching vehicle: the negative class for the false-positive rate.
pub fn quiet_negative_count(passes: &[GroundTruthPass], duration_s: f64, holdoff_s: f64) -> u64 {
    if holdoff_s <= 0.0 || duration_s <= 0.0 {
        return 0;
    }
    let slices = (duration_s / holdoff_s).floor() as u64;
    (0..slices)
        .filter(|&i| {
            let start = i as f64 * holdoff_s;
            let end = start + holdoff_s;
            !passes
                .iter()
                .any(|p| p.entry_time_s < end && p.t_passby_s > start)
        })
        .count() as u64
}
