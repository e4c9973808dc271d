//! Detector tuning knobs. Every field is sweepable by the tuner.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Floor of the sensor's detection range: 188 uLux.
pub const SENSOR_MIN_LUX: f64 = 1.88e-4;
/// Ceiling of the sensor's detection range: 88 kLux.
pub const SENSOR_MAX_LUX: f64 = 8.8e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    /// Inertia of the slow baseline filter. 0.9995 at 20 Hz gives a time
    /// constant near 100 s, slow enough to hold the ambient level through
    /// a vehicle pass.
    pub alpha_baseline: f64,
    /// Inertia of the fast filter that tracks the raw signal (~0.3 s at
    /// 20 Hz with the default 0.85).
    pub alpha_instant: f64,
    /// A detection fires when instant / baseline reaches this ratio.
    pub trigger_ratio: f64,
    /// Suppression clears once the ratio falls below this; must sit
    /// strictly between 1 and `trigger_ratio` for the hysteresis to be
    /// well-formed.
    pub release_ratio: f64,
    pub sensor_min_lux: f64,
    pub sensor_max_lux: f64,
    /// Refractory period between detections on one channel, seconds.
    pub holdoff_s: f64,
    /// Once the ratio has been continuously at or above `trigger_ratio`
    /// for this long, the channel suppresses further detections until the
    /// ratio drops below `release_ratio` (caravans, parked high beams).
    pub max_continuous_active_s: f64,
    /// Disable only for scale-invariance experiments; the ratio test is
    /// unit-free but the physical sensor is not.
    pub clamp_enabled: bool,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            alpha_baseline: 0.9995,
            alpha_instant: 0.85,
            trigger_ratio: 2.0,
            release_ratio: 1.3,
            sensor_min_lux: SENSOR_MIN_LUX,
            sensor_max_lux: SENSOR_MAX_LUX,
            holdoff_s: 5.0,
            max_continuous_active_s: 30.0,
            clamp_enabled: true,
        }
    }
}

impl DetectorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if !(0.0..=1.0).contains(&self.alpha_baseline) || !(0.0..=1.0).contains(&self.alpha_instant)
        {
            return bad(format!(
                "alphas must lie in [0, 1], got baseline {} instant {}",
                self.alpha_baseline, self.alpha_instant
            ));
        }
        if self.alpha_baseline <= self.alpha_instant {
            return bad(format!(
                "alpha_baseline ({}) must exceed alpha_instant ({}): the baseline is the high-inertia filter",
                self.alpha_baseline, self.alpha_instant
            ));
        }
        if self.trigger_ratio <= 1.0 {
            return bad(format!("trigger_ratio must exceed 1, got {}", self.trigger_ratio));
        }
        if self.release_ratio <= 1.0 || self.release_ratio >= self.trigger_ratio {
            return bad(format!(
                "release_ratio ({}) must lie in (1, trigger_ratio = {})",
                self.release_ratio, self.trigger_ratio
            ));
        }
        if !(self.sensor_min_lux > 0.0 && self.sensor_min_lux < self.sensor_max_lux) {
            return bad(format!(
                "sensor range [{}, {}] is not well-formed",
                self.sensor_min_lux, self.sensor_max_lux
            ));
        }
        if self.holdoff_s < 0.0 || self.max_continuous_active_s <= 0.0 {
            return bad("holdoff must be >= 0 and max_continuous_active > 0".into());
        }
        Ok(())
    }

    /// Clamps a raw reading into the sensor's physical detection range.
    pub fn clamp_to_sensor_range(&self, lux_in: f64) -> f64 {
        lux_in.max(self.sensor_min_lux).min(self.sensor_max_lux)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamps_to_documented_range() {
        let cfg = DetectorConfig::default();
        assert_eq!(cfg.clamp_to_sensor_range(100_000.0), 88_000.0);
        assert_eq!(cfg.clamp_to_sensor_range(1e-6), 1.88e-4);
        assert_eq!(cfg.clamp_to_sensor_range(50.0), 50.0);
    }

    #[test]
    fn default_config_is_valid() {
        DetectorConfig::default().validate().unwrap();
    }

    #[test]
    fn rejects_inverted_alphas() {
        let cfg = DetectorConfig {
            alpha_baseline: 0.5,
            alpha_instant: 0.9,
            ..DetectorConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn rejects_degenerate_hysteresis() {
        let cfg = DetectorConfig {
            trigger_ratio: 1.2,
            release_ratio: 1.3,
            ..DetectorConfig::default()
        };
        assert!(cfg.validate().is_err());
    }
}
