//! Crate-wide error type.

use crate::photometry::Channel;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A lux sample below zero reached a filter update.
    #[error("negative lux sample {value}")]
    NegativeSample { value: f64 },

    /// Per-channel timestamps must be nondecreasing; anything else means
    /// the trace is corrupt.
    #[error("out-of-order timestamp on channel {channel}: {t} after {prev}")]
    OutOfOrderSample { channel: Channel, t: f64, prev: f64 },

    /// Wraps an error with the index of the offending trace sample.
    #[error("sample {index}: {source}")]
    AtSample {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// Illuminance is only defined for a vehicle still approaching.
    #[error("vehicle distance must be positive, got {value}")]
    NonPositiveDistance { value: f64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid detector config: {0}")]
    InvalidConfig(String),

    #[error("sound pool is empty")]
    EmptyPool,

    #[error("parameter grid is empty")]
    EmptyGrid,

    #[error("scenario suite is empty")]
    EmptySuite,

    /// A detection event fell outside the ground-truth pass it was paired
    /// with, so no lead time exists.
    #[error("event at t={event_t} outside pass window [{start}, {end}]")]
    EventOutsideWindow { event_t: f64, start: f64, end: f64 },

    #[error("histogram bins: {0}")]
    BadBins(String),

    /// A malformed row or header in a CSV input; `line` is 1-based.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn at_sample(self, index: usize) -> Error {
        Error::AtSample {
            index,
            source: Box::new(self),
        }
    }
}
