//! Geometry and link-budget primitives for directional cross-link interference
//! in LEO constellations.
//!
//! Everything in this crate is a pure function of its inputs. Angles are in
//! radians, distances in kilometres, powers in linear watts. Degrees and dB
//! only appear at the configuration and output boundaries, which live in
//! other crates.

mod error;
pub mod geometry;
pub mod link;
pub mod scenario;

pub use error::{Error, Result};
pub use geometry::{EarthModel, Mat3, OrbitSpec, SatelliteState, Vec3};
pub use link::{LinkBudget, RadioParams, Sir};
pub use scenario::{Scenario, ScenarioKind};
