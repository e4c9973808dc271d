//! Ground truth derived purely from scenario kinematics: position is
//! entry_distance - speed * (t - entry_time), nothing is measured.

use serde::{Deserialize, Serialize};

use crate::photometry::{Channel, ScenarioSpec, VehicleClass};

/// A detection closer than this gives the animal too little time to
/// react and counts as a failure.
pub const FAILURE_DISTANCE_FT: f64 = 60.0;

/// One vehicle's pass, as the evaluation sees it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroundTruthPass {
    pub vehicle_index: usize,
    pub class: VehicleClass,
    pub channel: Channel,
    pub speed_fps: f64,
    /// Start of the vehicle's contribution to the trace.
    pub entry_time_s: f64,
    /// When the vehicle crosses the failure distance.
    pub t_at_60ft_s: f64,
    pub t_passby_s: f64,
}

impl GroundTruthPass {
    /// Distance from the device at `t`, ft. Defined as
    /// speed * (t_passby - t) so that lead-time and distance are the same
    /// expression and agree exactly.
    pub fn distance_ft_at(&self, t: f64) -> f64 {
        self.speed_fps * (self.t_passby_s - t)
    }

    /// The matching window: from the start of the vehicle's contribution
    /// until pass-by.
    pub fn window_contains(&self, t: f64) -> bool {
        t >= self.entry_time_s && t <= self.t_passby_s
    }
}

/// Builds the pass list for a scenario, in vehicle order.
pub fn ground_truth_passes(scenario: &ScenarioSpec) -> Vec<GroundTruthPass> {
    scenario
        .vehicles
        .iter()
        .enumerate()
        .map(|(vehicle_index, v)| {
            let speed_fps = v.speed_fps();
            let t_passby_s = v.passby_time_s();
            // vehicles entering inside the failure zone are failures from
            // the start: the 60 ft mark collapses onto entry
            let t_at_60ft_s = v.entry_time_s
                + (v.entry_distance_ft - FAILURE_DISTANCE_FT).max(0.0) / speed_fps;
            GroundTruthPass {
                vehicle_index,
                class: v.class,
                channel: v.direction.channel(),
                speed_fps,
                entry_time_s: v.entry_time_s,
                t_at_60ft_s,
                t_passby_s,
            }
        })
        .collect()
}
