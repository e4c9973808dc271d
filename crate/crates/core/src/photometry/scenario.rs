//! Scenario description: geometry + ambient model + vehicle schedule.
//! A scenario plus its seed fully determines a synthetic trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::types::{AmbientModel, RoadGeometry, VehicleSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub geometry: RoadGeometry,
    pub ambient: AmbientModel,
    pub vehicles: Vec<VehicleSpec>,
    pub duration_s: f64,
    pub seed: u64,
}

impl ScenarioSpec {
    /// An empty scene (no vehicles) over the given ambient model.
    pub fn quiet(ambient: AmbientModel, duration_s: f64, seed: u64) -> Self {
        Self {
            geometry: RoadGeometry::four_lane_highway(),
            ambient,
            vehicles: Vec::new(),
            duration_s,
            seed,
        }
    }

    /// Checks every invariant the synthesizer relies on; error messages
    /// name the offending field.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        let g = &self.geometry;
        if g.num_lanes < 1 {
            return bad("geometry.num_lanes must be at least 1".into());
        }
        if g.lane_width_ft <= 0.0 {
            return bad(format!("geometry.lane_width_ft must be positive, got {}", g.lane_width_ft));
        }
        if g.device_height_ft <= 0.0 {
            return bad(format!(
                "geometry.device_height_ft must be positive, got {}",
                g.device_height_ft
            ));
        }
        if g.divider_height_ft < 0.0 {
            return bad(format!(
                "geometry.divider_height_ft must be nonnegative, got {}",
                g.divider_height_ft
            ));
        }
        if g.divider_position > g.num_lanes {
            return bad(format!(
                "geometry.divider_position {} is off the road ({} lanes)",
                g.divider_position, g.num_lanes
            ));
        }
        if g.device_lateral_offset_ft < 0.0 {
            return bad(format!(
                "geometry.device_lateral_offset_ft must be nonnegative, got {}",
                g.device_lateral_offset_ft
            ));
        }
        let a = &self.ambient;
        if a.base_night_lux < 0.0 || a.streetlight_lux < 0.0 {
            return bad("ambient lux contributions must be nonnegative".into());
        }
        if a.noise_sigma < 0.0 {
            return bad(format!("ambient.noise_sigma must be nonnegative, got {}", a.noise_sigma));
        }
        if a.sample_rate_hz <= 0.0 {
            return bad(format!(
                "ambient.sample_rate_hz must be positive, got {}",
                a.sample_rate_hz
            ));
        }
        if self.duration_s <= 0.0 {
            return bad(format!("duration_s must be positive, got {}", self.duration_s));
        }
        for (i, v) in self.vehicles.iter().enumerate() {
            let field = |name: &str| format!("vehicles[{i}].{name}");
            if v.luminous_intensity_cd <= 0.0 {
                return bad(format!(
                    "{} must be positive, got {}",
                    field("luminous_intensity_cd"),
                    v.luminous_intensity_cd
                ));
            }
            if v.speed_mph <= 0.0 {
                return bad(format!("{} must be positive, got {}", field("speed_mph"), v.speed_mph));
            }
            if !(v.beam_half_angle_deg > 0.0 && v.beam_half_angle_deg < 90.0) {
                return bad(format!(
                    "{} must lie in (0, 90), got {}",
                    field("beam_half_angle_deg"),
                    v.beam_half_angle_deg
                ));
            }
            if v.beam_falloff_exponent < 0.0 {
                return bad(format!(
                    "{} must be nonnegative, got {}",
                    field("beam_falloff_exponent"),
                    v.beam_falloff_exponent
                ));
            }
            if v.headlight_height_ft <= 0.0 {
                return bad(format!(
                    "{} must be positive, got {}",
                    field("headlight_height_ft"),
                    v.headlight_height_ft
                ));
            }
            if v.entry_distance_ft <= 0.0 {
                return bad(format!(
                    "{} must be positive, got {}",
                    field("entry_distance_ft"),
                    v.entry_distance_ft
                ));
            }
            if v.entry_time_s < 0.0 {
                return bad(format!(
                    "{} must be nonnegative, got {}",
                    field("entry_time_s"),
                    v.entry_time_s
                ));
            }
            if v.lane_index >= g.num_lanes {
                return bad(format!(
                    "{} = {} places the vehicle off a {}-lane road",
                    field("lane_index"),
                    v.lane_index,
                    g.num_lanes
                ));
            }
            if v.passby_time_s() > self.duration_s {
                return bad(format!(
                    "duration_s = {} does not cover vehicles[{i}]'s pass-by at {:.2}",
                    self.duration_s,
                    v.passby_time_s()
                ));
            }
        }
        Ok(())
    }

    /// Number of samples per channel: one every 1/rate seconds over
    /// [0, duration).
    pub fn samples_per_channel(&self) -> usize {
        (self.duration_s * self.ambient.sample_rate_hz).floor() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::photometry::types::{Direction, VehicleClass};

    fn base() -> ScenarioSpec {
        let mut s = ScenarioSpec::quiet(AmbientModel::street_lit(), 60.0, 1);
        s.vehicles.push(VehicleSpec::from_class(
            VehicleClass::SedanLed,
            0,
            Direction::TowardChannelA,
            45.0,
            5.0,
            660.0,
        ));
        s
    }

    #[test]
    fn valid_scenario_passes() {
        base().validate().unwrap();
    }

    #[test]
    fn rejects_off_road_lane() {
        let mut s = base();
        s.vehicles[0].lane_index = 4;
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("lane_index"));
    }

    #[test]
    fn rejects_negative_speed_naming_field() {
        let mut s = base();
        s.vehicles[0].speed_mph = -45.0;
        let err = s.validate().unwrap_err();
        assert!(err.to_string().contains("vehicles[0].speed_mph"));
    }

    #[test]
    fn rejects_duration_shorter_than_passby() {
        let mut s = base();
        s.duration_s = 10.0; // pass-by is at 15 s
        assert!(s.validate().is_err());
    }
}
