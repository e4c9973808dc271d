//! Deterrent scheduling: each detection triggers a blinking light plus a
//! randomly chosen sound, never repeating the previous sound so animals
//! do not habituate to any one trigger. Sounds are metadata records only;
//! playback hardware is someone else's problem.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::detector::DetectionEvent;
use crate::error::{Error, Result};

/// One deterrent sound, as it would sit on the device's SD card.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sound {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub duration_s: f64,
}

/// The pool of deterrent sounds with the anti-habituation bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SoundPool {
    pub sounds: Vec<Sound>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_played: Option<String>,
    /// When false, selection is plain uniform over the whole pool.
    #[serde(default = "default_true")]
    pub exclude_last: bool,
}

fn default_true() -> bool {
    true
}

impl SoundPool {
    pub fn new(sounds: Vec<Sound>) -> Self {
        Self {
            sounds,
            last_played: None,
            exclude_last: true,
        }
    }

    /// A small pool of natural sounds; wolf howls are the classic
    /// non-habituating deterrent.
    pub fn default_pool() -> Self {
        let entry = |id: &str, duration_s: f64| Sound {
            id: id.to_string(),
            file: Some(format!("{id}.wav")),
            duration_s,
        };
        Self::new(vec![
            entry("wolf_howl", 3.2),
            entry("coyote_yip", 2.4),
            entry("hawk_screech", 1.8),
            entry("hound_bark", 2.9),
        ])
    }

    pub fn validate(&self) -> Result<()> {
        if self.sounds.is_empty() {
            return Err(Error::EmptyPool);
        }
        let mut ids: Vec<&str> = self.sounds.iter().map(|s| s.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        if ids.len() != self.sounds.len() {
            return Err(Error::InvalidScenario("sound pool ids must be unique".into()));
        }
        if let Some(s) = self.sounds.iter().find(|s| s.duration_s <= 0.0) {
            return Err(Error::InvalidScenario(format!(
                "sound '{}' must have a positive duration",
                s.id
            )));
        }
        Ok(())
    }

    /// Picks the next sound: uniform over the pool, excluding the
    /// previous pick when the pool has more than one sound. Deterministic
    /// given the rng.
    pub fn select_sound<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<&Sound> {
        if self.sounds.is_empty() {
            return Err(Error::EmptyPool);
        }
        let excluded = if self.exclude_last && self.sounds.len() > 1 {
            self.last_played.clone()
        } else {
            None
        };
        let candidates: Vec<usize> = (0..self.sounds.len())
            .filter(|&i| Some(&self.sounds[i].id) != excluded.as_ref())
            .collect();
        let pick = candidates[rng.random_range(0..candidates.len())];
        self.last_played = Some(self.sounds[pick].id.clone());
        Ok(&self.sounds[pick])
    }
}

/// Visual signal parameters. The default 520 nm sits inside the 450-542
/// nm band deer see best.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VisualConfig {
    pub wavelength_nm: f64,
    pub blink_hz: f64,
    /// None = blink for the duration of the selected sound.
    pub duration_s: Option<f64>,
}

impl Default for VisualConfig {
    fn default() -> Self {
        Self {
            wavelength_nm: 520.0,
            blink_hz: 2.0,
            duration_s: None,
        }
    }
}

/// The audio-visual action taken for one detection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeterrentEvent {
    pub t: f64,
    pub sound_id: String,
    pub wavelength_nm: f64,
    pub blink_hz: f64,
    pub duration_s: f64,
}

impl DeterrentEvent {
    pub fn end_s(&self) -> f64 {
        self.t + self.duration_s
    }
}

/// Maps one detection to a deterrent action.
pub fn on_detection<R: Rng + ?Sized>(
    event: &DetectionEvent,
    pool: &mut SoundPool,
    visual: &VisualConfig,
    rng: &mut R,
) -> Result<DeterrentEvent> {
    let sound = pool.select_sound(rng)?;
    Ok(DeterrentEvent {
        t: event.t,
        sound_id: sound.id.clone(),
        wavelength_nm: visual.wavelength_nm,
        blink_hz: visual.blink_hz,
        duration_s: visual.duration_s.unwrap_or(sound.duration_s),
    })
}

/// Folds detections into a deterrent log. A detection arriving while the
/// previous deterrent is still active extends that deterrent's window
/// instead of opening a new row (the sound stream keeps rotating either
/// way).
pub fn schedule_deterrents<R: Rng + ?Sized>(
    detections: &[DetectionEvent],
    pool: &mut SoundPool,
    visual: &VisualConfig,
    rng: &mut R,
) -> Result<Vec<DeterrentEvent>> {
    let mut out: Vec<DeterrentEvent> = Vec::new();
    for det in detections {
        let next = on_detection(det, pool, visual, rng)?;
        match out.last_mut() {
            Some(prev) if next.t < prev.end_s() => {
                prev.duration_s = prev.duration_s.max(next.end_s() - prev.t);
            }
            _ => out.push(next),
        }
    }
    Ok(out)
}
