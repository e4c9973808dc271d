//! Unit conversions. Road dimensions stay in feet and speeds in mph to
//! match how the scenarios are written; illuminance needs metric distance.

pub const METERS_PER_FOOT: f64 = 0.3048;
pub const FEET_PER_MILE: f64 = 5280.0;
pub const SECONDS_PER_HOUR: f64 = 3600.0;

/// Miles per hour to feet per second. 45 mph is exactly 66 ft/s.
pub fn mph_to_fps(mph: f64) -> f64 {
    mph * FEET_PER_MILE / SECONDS_PER_HOUR
}

pub fn ft_to_m(ft: f64) -> f64 {
    ft * METERS_PER_FOOT
}
