//! Forward photometric model: a headlight is a point source with a
//! cos^p beam gain inside a hard half-angle cutoff, and illuminance at
//! the sensor falls off with the inverse square of the 3-D distance.
//! No road-surface reflection, no atmosphere.

use crate::error::{Error, Result};
use crate::units::ft_to_m;

use super::types::{RoadGeometry, VehicleSpec};

/// Illuminance at `distance_m` from a point source of `intensity_cd`
/// seen through a directional gain `gain`, in lux.
pub fn point_source_lux(intensity_cd: f64, distance_m: f64, gain: f64) -> f64 {
    intensity_cd * gain / (distance_m * distance_m)
}

/// Directional gain of the beam: max(0, cos theta)^p inside the
/// half-angle, 0 outside.
pub fn beam_gain(cos_theta: f64, half_angle_deg: f64, falloff_exponent: f64) -> f64 {
    if cos_theta <= 0.0 {
        return 0.0;
    }
    let theta_deg = cos_theta.clamp(-1.0, 1.0).acos().to_degrees();
    if theta_deg > half_angle_deg {
        return 0.0;
    }
    cos_theta.powf(falloff_exponent)
}

/// True when the divider blocks the straight line between headlight and
/// sensor: both endpoints sit below the divider top and the divider lies
/// laterally between them.
fn divider_occludes(vehicle: &VehicleSpec, geometry: &RoadGeometry) -> bool {
    if geometry.divider_height_ft <= 0.0 {
        return false;
    }
    let divider_x = geometry.divider_lateral_offset_ft();
    let headlight_x = geometry.lane_lateral_offset_ft(vehicle.lane_index);
    // device sits at lateral 0 in this frame
    let between = divider_x > 0.0 && divider_x < headlight_x;
    between
        && vehicle.headlight_height_ft < geometry.divider_height_ft
        && geometry.device_height_ft < geometry.divider_height_ft
}

/// Illuminance contributed by one vehicle at longitudinal distance
/// `distance_ft` (positive = still approaching), in lux.
///
/// The beam axis points along the direction of travel; the off-axis
/// angle combines the lane's lateral offset and the height difference
/// between headlight and sensor.
pub fn illuminance_at(
    vehicle: &VehicleSpec,
    distance_ft: f64,
    geometry: &RoadGeometry,
) -> Result<f64> {
    if distance_ft <= 0.0 {
        return Err(Error::NonPositiveDistance { value: distance_ft });
    }
    Ok(headlight_contribution(vehicle, distance_ft, geometry))
}

/// Total-function core of [`illuminance_at`]; used by the trace
/// synthesizer which has already excluded passed vehicles.
pub(crate) fn headlight_contribution(
    vehicle: &VehicleSpec,
    distance_ft: f64,
    geometry: &RoadGeometry,
) -> f64 {
    if divider_occludes(vehicle, geometry) {
        return 0.0;
    }
    let lateral_ft = geometry.lane_lateral_offset_ft(vehicle.lane_index);
    let vertical_ft = geometry.device_height_ft - vehicle.headlight_height_ft;
    let dist3d_ft =
        (distance_ft * distance_ft + lateral_ft * lateral_ft + vertical_ft * vertical_ft).sqrt();
    let cos_theta = distance_ft / dist3d_ft;
    let gain = beam_gain(
        cos_theta,
        vehicle.beam_half_angle_deg,
        vehicle.beam_falloff_exponent,
    );
    if gain == 0.0 {
        return 0.0;
    }
    point_source_lux(vehicle.luminous_intensity_cd, ft_to_m(dist3d_ft), gain)
}
