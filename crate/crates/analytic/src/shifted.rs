//! Interference from a second orbit of the same shell (equal altitude and
//! inclination) whose RAAN is shifted by `ΔΩ`.
//!
//! The two orbits are not coplanar, so every position and pointing direction
//! is a 3D vector in the GEC frame. Both orbits share one period, so the
//! relative phase `Δβ` between their satellite patterns is constant.

use std::f64::consts::{PI, TAU};

use xlink_core::geometry::{angle_between, gec_position, rise_set_metric};
use xlink_core::link::within_cone;
use xlink_core::{EarthModel, Error, OrbitSpec, RadioParams, Result, SatelliteState, Vec3};

use crate::ratio_or_infinite;

/// Candidates closer than this to the receiver or its transmitter are treated
/// as occupying the same slot and never count as interferers.
pub const COINCIDENT_KM: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedGeometry {
    pub h_km: f64,
    pub inclination_rad: f64,
    /// RAAN of the interfering orbit minus that of the receiver's orbit,
    /// wrapped into `(−π, π]`.
    pub delta_omega: f64,
    /// Satellites on the receiver's orbit.
    pub n: usize,
    /// Satellites on the interfering orbit.
    pub n_s: usize,
    /// Phase of the interfering pattern relative to the receiver's orbit.
    pub delta_beta: f64,
    /// RAAN of the receiver's orbit. Only `ΔΩ` affects results.
    pub reference_raan: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftedResult {
    pub interferer_set: Vec<usize>,
    pub mean_interference_w: f64,
    pub sir_linear: f64,
    /// Receiver-to-interferer distances in km, in set order.
    pub interferer_distances_km: Vec<f64>,
}

fn wrap_signed(angle: f64) -> f64 {
    let w = angle.rem_euclid(TAU);
    if w > PI {
        w - TAU
    } else {
        w
    }
}

impl ShiftedGeometry {
    pub fn new(
        h_km: f64,
        inclination_rad: f64,
        delta_omega: f64,
        n: usize,
        n_s: usize,
        delta_beta: f64,
    ) -> Result<Self> {
        let geom = ShiftedGeometry {
            h_km,
            inclination_rad,
            delta_omega: wrap_signed(delta_omega),
            n,
            n_s,
            delta_beta,
            reference_raan: 0.0,
        };
        // orbit construction performs the range checks
        geom.orbits()?;
        Ok(geom)
    }

    pub fn with_reference_raan(mut self, raan: f64) -> Self {
        self.reference_raan = raan;
        self
    }

    /// The receiver's orbit and the interfering orbit.
    pub fn orbits(&self) -> Result<(OrbitSpec, OrbitSpec)> {
        let rx = OrbitSpec::new(
            self.h_km,
            self.inclination_rad,
            self.reference_raan,
            self.n,
            0.0,
        )?;
        let other = OrbitSpec::new(
            self.h_km,
            self.inclination_rad,
            self.reference_raan + self.delta_omega,
            self.n_s,
            self.delta_beta,
        )?;
        Ok((rx, other))
    }
}

fn orbit_states(
    orbit: &OrbitSpec,
    orbit_index: usize,
    t_s: f64,
    earth: &EarthModel,
) -> Result<Vec<SatelliteState>> {
    let n = orbit.num_satellites;
    let positions = (0..n)
        .map(|j| gec_position(orbit, j, t_s, earth))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..n)
        .map(|j| {
            let target = positions[(j + n - 1) % n];
            SatelliteState {
                position: positions[j],
                tx_pointing: (target - positions[j]).normalize(),
                orbit_index,
                sat_index: j,
            }
        })
        .collect())
}

/// States of both orbits at `t_s`: the receiver's orbit first, then the
/// interfering orbit. Each satellite points at its neighbour `j − 1`.
pub fn shifted_states(
    geom: &ShiftedGeometry,
    t_s: f64,
    earth: &EarthModel,
) -> Result<Vec<SatelliteState>> {
    let (rx, other) = geom.orbits()?;
    let mut states = orbit_states(&rx, 0, t_s, earth)?;
    states.extend(orbit_states(&other, 1, t_s, earth)?);
    Ok(states)
}

/// Satellites of the interfering orbit with their distance to the receiver.
fn interferers(
    geom: &ShiftedGeometry,
    alpha: f64,
    t_s: f64,
    earth: &EarthModel,
) -> Result<Vec<(usize, f64)>> {
    let states = shifted_states(geom, t_s, earth)?;
    let (own, other) = states.split_at(geom.n);
    let r_rx = own[0].position;
    let r_tx = own[1].position;
    let rx_to_tx = r_tx - r_rx;

    let mut found = Vec::new();
    for sat in other {
        let r_j = sat.position;
        let rx_to_j = r_j - r_rx;
        if rx_to_j.norm() < COINCIDENT_KM || (r_j - r_tx).norm() < COINCIDENT_KM {
            continue;
        }
        if rise_set_metric(&r_j, &r_rx, earth)? > 0.0 {
            continue;
        }
        let psi = angle_between(&rx_to_j, &rx_to_tx)?;
        if !within_cone(psi, alpha) {
            continue;
        }
        let j_to_prev: Vec3 = other[(sat.sat_index + geom.n_s - 1) % geom.n_s].position - r_j;
        let psi_prime = angle_between(&j_to_prev, &(-rx_to_j))?;
        if within_cone(psi_prime, alpha) {
            found.push((sat.sat_index, rx_to_j.norm()));
        }
    }
    Ok(found)
}

/// Indices (in the interfering orbit) of satellites that are visible, inside
/// the receiver's beam and have the receiver inside their own beam.
pub fn shifted_interferer_set(
    geom: &ShiftedGeometry,
    alpha: f64,
    t_s: f64,
    earth: &EarthModel,
) -> Result<Vec<usize>> {
    Ok(interferers(geom, alpha, t_s, earth)?
        .into_iter()
        .map(|(j, _)| j)
        .collect())
}

pub fn mean_interference_shifted(
    geom: &ShiftedGeometry,
    radio: &RadioParams,
    t_s: f64,
    earth: &EarthModel,
) -> Result<f64> {
    Ok(evaluate_shifted(geom, radio, t_s, earth)?.mean_interference_w)
}

pub fn sir_shifted(
    geom: &ShiftedGeometry,
    radio: &RadioParams,
    t_s: f64,
    earth: &EarthModel,
) -> Result<f64> {
    Ok(evaluate_shifted(geom, radio, t_s, earth)?.sir_linear)
}

pub fn evaluate_shifted(
    geom: &ShiftedGeometry,
    radio: &RadioParams,
    t_s: f64,
    earth: &EarthModel,
) -> Result<ShiftedResult> {
    if !t_s.is_finite() {
        return Err(Error::Domain {
            what: "time",
            requirement: "finite",
            value: t_s,
        });
    }
    let found = interferers(geom, radio.beamwidth_rad, t_s, earth)?;
    let inv_sq: f64 = found.iter().map(|(_, d)| 1.0 / (d * d)).sum();

    let edge = 1.0 - (radio.beamwidth_rad / 2.0).cos();
    let scale =
        radio.wavelength_m * radio.wavelength_m * radio.tx_power_w / (4.0 * PI * PI * edge * edge);
    let a = earth.orbit_radius_km(geom.h_km);
    let d1_sq = 2.0 * a * a * (1.0 - (TAU / geom.n as f64).cos());

    Ok(ShiftedResult {
        interferer_set: found.iter().map(|(j, _)| *j).collect(),
        // km⁻² → m⁻²
        mean_interference_w: scale * inv_sq * 1e-6,
        sir_linear: ratio_or_infinite(1.0, d1_sq * inv_sq),
        interferer_distances_km: found.iter().map(|(_, d)| *d).collect(),
    })
}
