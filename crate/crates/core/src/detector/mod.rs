//! Change detection over ambient-light traces.
//!
//! Each channel runs two inertial moving averages over the same clamped
//! signal: a high-inertia baseline that adapts to the ambient level and a
//! low-inertia instantaneous level that follows headlights. A detection
//! fires when their ratio reaches the trigger threshold, subject to a
//! per-channel holdoff and to saturation suppression under prolonged
//! bright light. Because the statistic is a ratio, no per-site
//! normalization of the sensor's signal range is needed.

mod config;
mod ima;

pub use config::{DetectorConfig, SENSOR_MAX_LUX, SENSOR_MIN_LUX};
pub use ima::ImaState;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::photometry::{Channel, TraceSample};

/// A positive detection: the instantaneous level reached `trigger_ratio`
/// times the baseline on one channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionEvent {
    pub t: f64,
    pub channel: Channel,
    pub ratio_at_trigger: f64,
    pub instant_lux: f64,
    pub baseline_lux: f64,
}

/// Per-channel filter pair plus trigger/suppression bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelState {
    pub baseline: ImaState,
    pub instant: ImaState,
    /// Start of the current run of samples with ratio >= trigger_ratio.
    pub active_since: Option<f64>,
    pub suppressed: bool,
    pub last_trigger_t: Option<f64>,
    last_t: Option<f64>,
}

impl ChannelState {
    fn new(config: &DetectorConfig, seed_lux: f64) -> Self {
        Self {
            baseline: ImaState::new(config.alpha_baseline, seed_lux),
            instant: ImaState::new(config.alpha_instant, seed_lux),
            active_since: None,
            suppressed: false,
            last_trigger_t: None,
            last_t: None,
        }
    }
}

/// The detector state machine. Owns its config; channels are independent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detector {
    config: DetectorConfig,
    channel_a: ChannelState,
    channel_b: ChannelState,
}

impl Detector {
    /// Seeds both filters on both channels with the (clamped) first
    /// sample, so the ratio starts at exactly 1 and no detection can fire
    /// until the signal actually moves.
    pub fn new(config: DetectorConfig, first_sample_lux: f64) -> Result<Self> {
        config.validate()?;
        let seed = if config.clamp_enabled {
            config.clamp_to_sensor_range(first_sample_lux)
        } else {
            first_sample_lux
        };
        Ok(Self {
            config,
            channel_a: ChannelState::new(&config, seed),
            channel_b: ChannelState::new(&config, seed),
        })
    }

    pub fn config(&self) -> &DetectorConfig {
        &self.config
    }

    pub fn channel(&self, channel: Channel) -> &ChannelState {
        match channel {
            Channel::A => &self.channel_a,
            Channel::B => &self.channel_b,
        }
    }

    /// Current instant/baseline ratio on a channel. The denominator is
    /// floored at the sensor minimum so the ratio is always finite.
    pub fn ratio(&self, channel: Channel) -> f64 {
        let ch = self.channel(channel);
        ch.instant.value() / ch.baseline.value().max(self.config.sensor_min_lux)
    }

    /// Feeds one sample, returning a detection if one fired.
    ///
    /// Samples must arrive in nondecreasing time order per channel.
    /// Suppression latches once the ratio has been continuously at or
    /// above the trigger threshold for `max_continuous_active_s`
    /// (boundary inclusive, checked before emission) and clears when the
    /// ratio drops below `release_ratio`.
    pub fn step(&mut self, sample: &TraceSample) -> Result<Option<DetectionEvent>> {
        let config = self.config;
        let ch = match sample.channel {
            Channel::A => &mut self.channel_a,
            Channel::B => &mut self.channel_b,
        };

        if let Some(prev) = ch.last_t {
            if sample.t < prev {
                return Err(Error::OutOfOrderSample {
                    channel: sample.channel,
                    t: sample.t,
                    prev,
                });
            }
        }
        ch.last_t = Some(sample.t);

        let lux = if config.clamp_enabled {
            config.clamp_to_sensor_range(sample.lux)
        } else {
            sample.lux
        };
        ch.baseline.update(lux)?;
        ch.instant.update(lux)?;

        let ratio = ch.instant.value() / ch.baseline.value().max(config.sensor_min_lux);

        if ratio >= config.trigger_ratio {
            let since = *ch.active_since.get_or_insert(sample.t);
            if sample.t - since >= config.max_continuous_active_s {
                ch.suppressed = true;
            }
        } else {
            ch.active_since = None;
            if ratio < config.release_ratio {
                ch.suppressed = false;
            }
        }

        let holdoff_clear = match ch.last_trigger_t {
            Some(last) => sample.t - last >= config.holdoff_s,
            None => true,
        };
        if ratio >= config.trigger_ratio && !ch.suppressed && holdoff_clear {
            ch.last_trigger_t = Some(sample.t);
            return Ok(Some(DetectionEvent {
                t: sample.t,
                channel: sample.channel,
                ratio_at_trigger: ratio,
                instant_lux: ch.instant.value(),
                baseline_lux: ch.baseline.value(),
            }));
        }
        Ok(None)
    }

    /// Folds [`Detector::step`] over a trace. Errors carry the index of
    /// the offending sample. Streaming and batch use are equivalent: this
    /// is nothing but the step loop.
    pub fn run(&mut self, trace: &[TraceSample]) -> Result<Vec<DetectionEvent>> {
        let mut events = Vec::new();
        for (index, sample) in trace.iter().enumerate() {
            if let Some(event) = self.step(sample).map_err(|e| e.at_sample(index))? {
                events.push(event);
            }
        }
        Ok(events)
    }
}

/// Runs a fresh detector over a whole trace, seeding from its first
/// sample. An empty trace yields no events.
pub fn run_trace(trace: &[TraceSample], config: DetectorConfig) -> Result<Vec<DetectionEvent>> {
    let Some(first) = trace.first() else {
        return Ok(Vec::new());
    };
    let mut detector = Detector::new(config, first.lux)?;
    detector.run(trace)
}
