//! Domain types for road scenes: vehicles, road geometry, ambient light,
//! and the discretized sensor trace.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::units::mph_to_fps;

/// The two sensor channels, one facing each direction of the road.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    A,
    B,
}

impl Channel {
    pub const BOTH: [Channel; 2] = [Channel::A, Channel::B];

    pub fn as_str(&self) -> &'static str {
        match self {
            Channel::A => "a",
            Channel::B => "b",
        }
    }

    pub fn parse(s: &str) -> Option<Channel> {
        match s {
            "a" => Some(Channel::A),
            "b" => Some(Channel::B),
            _ => None,
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which sensor a vehicle is driving toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    TowardChannelA,
    TowardChannelB,
}

impl Direction {
    /// The channel that sees this vehicle's headlights.
    pub fn channel(&self) -> Channel {
        match self {
            Direction::TowardChannelA => Channel::A,
            Direction::TowardChannelB => Channel::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VehicleClass {
    SedanLed,
    SedanIncandescent,
    Suv,
    Bus,
    Semi,
}

impl VehicleClass {
    pub const ALL: [VehicleClass; 5] = [
        VehicleClass::SedanLed,
        VehicleClass::SedanIncandescent,
        VehicleClass::Suv,
        VehicleClass::Bus,
        VehicleClass::Semi,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            VehicleClass::SedanLed => "sedan_led",
            VehicleClass::SedanIncandescent => "sedan_incandescent",
            VehicleClass::Suv => "suv",
            VehicleClass::Bus => "bus",
            VehicleClass::Semi => "semi",
        }
    }

    /// Default headlight intensity, candela. These are free parameters of
    /// the simulator, calibrated once so that the default detector config
    /// reproduces the reference trigger distances (sedans near 244 ft
    /// under street lighting, incandescent 30-45% shorter, large vehicles
    /// past 500 ft). Old incandescent lamps sit well below modern LEDs.
    pub fn default_intensity_cd(&self) -> f64 {
        match self {
            VehicleClass::SedanLed => 55_000.0,
            VehicleClass::SedanIncandescent => 28_000.0,
            VehicleClass::Suv => 70_000.0,
            VehicleClass::Bus => 120_000.0,
            VehicleClass::Semi => 260_000.0,
        }
    }

    /// Default headlight height, ft. Buses and semis carry their light
    /// cones noticeably higher than passenger cars.
    pub fn default_headlight_height_ft(&self) -> f64 {
        match self {
            VehicleClass::SedanLed | VehicleClass::SedanIncandescent => 2.5,
            VehicleClass::Suv => 3.0,
            VehicleClass::Bus => 4.5,
            VehicleClass::Semi => 5.0,
        }
    }

    /// Default beam half-angle, degrees. Low beams are narrow by design;
    /// the long-haul classes are narrower still.
    pub fn default_beam_half_angle_deg(&self) -> f64 {
        match self {
            VehicleClass::SedanLed | VehicleClass::SedanIncandescent | VehicleClass::Suv => 12.0,
            VehicleClass::Bus => 10.0,
            VehicleClass::Semi => 8.0,
        }
    }

    /// Default exponent of the cos^p beam gain. Passenger beams spread
    /// softly inside the cutoff; the long-haul classes are hotter on
    /// axis.
    pub fn default_beam_falloff_exponent(&self) -> f64 {
        match self {
            VehicleClass::SedanLed | VehicleClass::SedanIncandescent | VehicleClass::Suv => 12.0,
            VehicleClass::Bus | VehicleClass::Semi => 35.0,
        }
    }
}

impl fmt::Display for VehicleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One vehicle in a scenario. Longitudinal position over time is
/// `entry_distance - speed * (t - entry_time)`, positive while the
/// vehicle is still approaching the device.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleSpec {
    pub class: VehicleClass,
    pub luminous_intensity_cd: f64,
    pub headlight_height_ft: f64,
    pub beam_half_angle_deg: f64,
    pub beam_falloff_exponent: f64,
    pub speed_mph: f64,
    /// 0 = lane nearest the device.
    pub lane_index: u32,
    pub direction: Direction,
    pub entry_time_s: f64,
    /// Longitudinal distance from the device at entry, ft; positive means
    /// approaching.
    pub entry_distance_ft: f64,
}

impl VehicleSpec {
    /// A vehicle with the class defaults for all photometric fields.
    pub fn from_class(
        class: VehicleClass,
        lane_index: u32,
        direction: Direction,
        speed_mph: f64,
        entry_time_s: f64,
        entry_distance_ft: f64,
    ) -> Self {
        Self {
            class,
            luminous_intensity_cd: class.default_intensity_cd(),
            headlight_height_ft: class.default_headlight_height_ft(),
            beam_half_angle_deg: class.default_beam_half_angle_deg(),
            beam_falloff_exponent: class.default_beam_falloff_exponent(),
            speed_mph,
            lane_index,
            direction,
            entry_time_s,
            entry_distance_ft,
        }
    }

    pub fn speed_fps(&self) -> f64 {
        mph_to_fps(self.speed_mph)
    }

    /// Longitudinal distance from the device at time `t`, ft. Negative
    /// once the vehicle has passed.
    pub fn distance_ft_at(&self, t: f64) -> f64 {
        self.entry_distance_ft - self.speed_fps() * (t - self.entry_time_s)
    }

    /// The instant the vehicle passes the device.
    pub fn passby_time_s(&self) -> f64 {
        self.entry_time_s + self.entry_distance_ft / self.speed_fps()
    }
}

/// Straight road cross-section and device placement. The device sits off
/// the road edge; lane centers are at `offset + (lane + 0.5) * width`
/// laterally from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RoadGeometry {
    pub num_lanes: u32,
    pub lane_width_ft: f64,
    /// 0 = no divider.
    pub divider_height_ft: f64,
    /// Lane boundary index the divider sits on (0 = road edge nearest the
    /// device, `num_lanes` = far edge).
    pub divider_position: u32,
    pub device_lateral_offset_ft: f64,
    pub device_height_ft: f64,
}

impl RoadGeometry {
    /// A four-lane highway with the device 6 ft off the edge at 3.5 ft,
    /// no divider.
    pub fn four_lane_highway() -> Self {
        Self {
            num_lanes: 4,
            lane_width_ft: 12.0,
            divider_height_ft: 0.0,
            divider_position: 2,
            device_lateral_offset_ft: 6.0,
            device_height_ft: 3.5,
        }
    }

    /// Lateral separation between the device and the center of a lane, ft.
    pub fn lane_lateral_offset_ft(&self, lane_index: u32) -> f64 {
        self.device_lateral_offset_ft + (lane_index as f64 + 0.5) * self.lane_width_ft
    }

    /// Lateral position of the divider measured from the device, ft.
    pub fn divider_lateral_offset_ft(&self) -> f64 {
        self.device_lateral_offset_ft + self.divider_position as f64 * self.lane_width_ft
    }
}

/// Ambient light model: a constant night level plus optional street
/// lighting, under multiplicative lognormal sensor noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientModel {
    pub base_night_lux: f64,
    /// 0 for completely dark conditions.
    pub streetlight_lux: f64,
    /// Sigma of the multiplicative lognormal noise; 0 disables noise.
    pub noise_sigma: f64,
    pub sample_rate_hz: f64,
}

impl AmbientModel {
    pub fn dark() -> Self {
        Self {
            base_night_lux: 0.05,
            streetlight_lux: 0.0,
            noise_sigma: 0.04,
            sample_rate_hz: 20.0,
        }
    }

    pub fn street_lit() -> Self {
        Self {
            streetlight_lux: 7.95,
            ..Self::dark()
        }
    }

    /// Noise-free mean level.
    pub fn mean_lux(&self) -> f64 {
        self.base_night_lux + self.streetlight_lux
    }
}

/// One ambient-light-sensor reading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceSample {
    pub t: f64,
    pub channel: Channel,
    pub lux: f64,
}
