//! Closed-form interference models for three orbit configurations:
//!
//! * [`single`]: interferers in the receiver's own orbit,
//! * [`coplanar`]: a second orbit in the same plane at another altitude,
//! * [`shifted`]: a second orbit of the same shell with a shifted RAAN.
//!
//! In every model the receiver is satellite 0 of its orbit, it is served by
//! satellite 1, and every satellite transmits toward its in-orbit neighbour
//! with the next lower index.

pub mod coplanar;
pub mod shifted;
pub mod single;

pub use coplanar::{CoplanarGeometry, CoplanarResult, Visibility};
pub use shifted::{ShiftedGeometry, ShiftedResult};
pub use single::SingleOrbitResult;

/// Signal over interference, `+∞` when nothing interferes.
pub(crate) fn ratio_or_infinite(signal: f64, interference: f64) -> f64 {
    if interference == 0.0 {
        f64::INFINITY
    } else {
        signal / interference
    }
}
