use xlink_core::geometry::{angle_between, segment_blocked_oracle};
use xlink_core::link::within_cone;
use xlink_core::{EarthModel, RadioParams, Result, SatelliteState, Vec3};

use crate::propagate::{find, LinkAssignment};

/// Candidates this close to the receiver or its transmitter are treated as
/// sharing their slot and are skipped.
pub const COINCIDENT_KM: f64 = 1e-6;

/// Which half-space around the receiver a contributor sits in, split by the
/// plane through the receiver orthogonal to its direction of motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Ahead of the receiver, where its serving transmitter is.
    Forward,
    Rear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contribution {
    pub orbit: usize,
    pub index: usize,
    pub side: Side,
    pub distance_km: f64,
    pub power_w: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InterferenceSample {
    pub time_s: f64,
    pub signal_w: f64,
    pub interference_w: f64,
    pub sir_linear: f64,
    pub contributions: Vec<Contribution>,
}

impl InterferenceSample {
    pub fn interferer_ids(&self) -> Vec<(usize, usize)> {
        self.contributions
            .iter()
            .map(|c| (c.orbit, c.index))
            .collect()
    }

    /// Interference from one side only.
    pub fn side_subtotal(&self, side: Side) -> f64 {
        self.subtotal(|c| c.side == side)
    }

    /// Interference from one orbit only.
    pub fn orbit_subtotal(&self, orbit: usize) -> f64 {
        self.subtotal(|c| c.orbit == orbit)
    }

    pub fn subtotal(&self, keep: impl Fn(&Contribution) -> bool) -> f64 {
        self.contributions
            .iter()
            .filter(|c| keep(c))
            .map(|c| c.power_w)
            .sum()
    }

    /// Serving power over the interference that passes `keep`.
    pub fn restricted_sir(&self, keep: impl Fn(&Contribution) -> bool) -> f64 {
        ratio(self.signal_w, self.subtotal(keep))
    }

    /// Sorted indices of the contributors from `orbit`.
    pub fn indices_in_orbit(&self, orbit: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .contributions
            .iter()
            .filter(|c| c.orbit == orbit)
            .map(|c| c.index)
            .collect();
        v.sort_unstable();
        v
    }
}

pub(crate) fn ratio(signal: f64, interference: f64) -> f64 {
    if interference == 0.0 {
        f64::INFINITY
    } else {
        signal / interference
    }
}

/// Sums the power of every transmitter that clears the Earth, lies inside the
/// receiver's cone and has the receiver inside its own cone.
pub fn aggregate_interference(
    time_s: f64,
    states: &[SatelliteState],
    link: &LinkAssignment,
    radio: &RadioParams,
    earth: &EarthModel,
) -> Result<InterferenceSample> {
    let rx = find(states, link.orbit, link.rx_index)?;
    let tx = find(states, link.orbit, link.tx_index)?;
    let alpha = radio.beamwidth_rad;
    let signal_w = radio.rx_power_w((tx.position - rx.position).norm())?;

    let forward = forward_direction(states, link, rx)?;

    let mut contributions = Vec::new();
    for cand in states {
        let same =
            |s: &SatelliteState| s.orbit_index == cand.orbit_index && s.sat_index == cand.sat_index;
        if same(rx) || same(tx) {
            continue;
        }
        let to_cand = cand.position - rx.position;
        let d = to_cand.norm();
        if d < COINCIDENT_KM || (cand.position - tx.position).norm() < COINCIDENT_KM {
            continue;
        }
        if segment_blocked_oracle(&rx.position, &cand.position, earth) {
            continue;
        }
        if !within_cone(angle_between(&link.rx_pointing, &to_cand)?, alpha) {
            continue;
        }
        if !within_cone(angle_between(&cand.tx_pointing, &(-to_cand))?, alpha) {
            continue;
        }
        contributions.push(Contribution {
            orbit: cand.orbit_index,
            index: cand.sat_index,
            side: if to_cand.dot(&forward) > 0.0 {
                Side::Forward
            } else {
                Side::Rear
            },
            distance_km: d,
            power_w: radio.rx_power_w(d)?,
        });
    }
    let interference_w = contributions.iter().map(|c| c.power_w).sum();
    Ok(InterferenceSample {
        time_s,
        signal_w,
        interference_w,
        sir_linear: ratio(signal_w, interference_w),
        contributions,
    })
}

fn forward_direction(
    states: &[SatelliteState],
    link: &LinkAssignment,
    rx: &SatelliteState,
) -> Result<Vec3> {
    // satellite indices grow along the direction of motion
    let n = states
        .iter()
        .filter(|s| s.orbit_index == link.orbit)
        .count();
    let ahead = find(states, link.orbit, (rx.sat_index + 1) % n)?;
    let chord = ahead.position - rx.position;
    // drop the radial part so the split plane contains the radius
    let radial = rx.position.normalize();
    Ok(chord - radial * chord.dot(&radial))
}
