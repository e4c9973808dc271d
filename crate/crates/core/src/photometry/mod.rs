//! Photometric traffic simulator: synthesizes the per-channel lux traces
//! an ambient light sensor would record for a configurable road scene.

mod illuminance;
mod scenario;
mod trace;
mod types;

pub use illuminance::{beam_gain, illuminance_at, point_source_lux};
pub use scenario::ScenarioSpec;
pub use trace::{ambient_lux, synthesize_trace};
pub use types::{
    AmbientModel, Channel, Direction, RoadGeometry, TraceSample, VehicleClass, VehicleSpec,
};
