//! Brute-force geometric simulator used as the reference for the closed-form
//! models.
//!
//! Every satellite of every orbit is propagated in 3D, and each candidate
//! transmitter is tested directly against the Earth sphere and both antenna
//! cones. Nothing here knows about the per-scenario interferer formulas.

mod interference;
mod propagate;
mod sampling;

pub use interference::{
    aggregate_interference, Contribution, InterferenceSample, Side, COINCIDENT_KM,
};
pub use propagate::{propagate, LinkAssignment};
pub use sampling::{
    monte_carlo_average, time_average, time_sweep, MonteCarloStats, TimeAverage, TimeGrid,
};
