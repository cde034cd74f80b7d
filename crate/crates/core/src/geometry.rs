//! Circular-orbit propagation and 3D geometry in the Geocentric Equatorial
//! Coordinate (GEC) frame.
//!
//! The GEC frame is inertial: z along the Earth's rotation axis, x toward the
//! vernal equinox. Earth rotation is never modelled because no ground nodes
//! take part in any scenario.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Vec3 = nalgebra::Vector3<f64>;
pub type Mat3 = nalgebra::Matrix3<f64>;

/// Mean Earth radius in km.
pub const DEFAULT_EARTH_RADIUS_KM: f64 = 6371.0;
/// Standard gravitational parameter of the Earth in m^3/s^2.
pub const DEFAULT_MU_M3_S2: f64 = 3.986004418e14;

/// Wraps an angle into `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EarthModel {
    pub radius_km: f64,
    #[serde(rename = "mu_m3_s2")]
    pub mu: f64,
}

impl Default for EarthModel {
    fn default() -> Self {
        EarthModel {
            radius_km: DEFAULT_EARTH_RADIUS_KM,
            mu: DEFAULT_MU_M3_S2,
        }
    }
}

impl EarthModel {
    pub fn new(radius_km: f64, mu: f64) -> Result<Self> {
        let earth = EarthModel { radius_km, mu };
        earth.validate()?;
        Ok(earth)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius_km.is_finite() && self.radius_km > 0.0) {
            return Err(Error::domain("Earth radius", "positive", self.radius_km));
        }
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::domain(
                "gravitational parameter",
                "positive",
                self.mu,
            ));
        }
        Ok(())
    }

    /// Geocentric radius of a circular orbit at altitude `h_km`.
    pub fn orbit_radius_km(&self, h_km: f64) -> f64 {
        self.radius_km + h_km
    }
}

/// One circular orbit with evenly spaced satellites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec {
    pub altitude_km: f64,
    pub inclination_rad: f64,
    pub raan_rad: f64,
    pub num_satellites: usize,
    /// True anomaly of satellite 0 at t = 0.
    pub phase_offset_rad: f64,
}

impl OrbitSpec {
    /// Validates the orbit and normalizes RAAN and phase offset into `[0, 2π)`.
    pub fn new(
        altitude_km: f64,
        inclination_rad: f64,
        raan_rad: f64,
        num_satellites: usize,
        phase_offset_rad: f64,
    ) -> Result<Self> {
        if !(altitude_km.is_finite() && altitude_km > 0.0) {
            return Err(Error::domain("altitude", "positive", altitude_km));
        }
        if !(0.0..=PI).contains(&inclination_rad) {
            return Err(Error::domain(
                "inclination",
                "within [0, π]",
                inclination_rad,
            ));
        }
        if num_satellites < 3 {
            return Err(Error::domain(
                "satellites per orbit",
                "at least 3",
                num_satellites as f64,
            ));
        }
        if !raan_rad.is_finite() || !phase_offset_rad.is_finite() {
            return Err(Error::domain(
                "RAAN and phase offset",
                "finite",
                if raan_rad.is_finite() {
                    phase_offset_rad
                } else {
                    raan_rad
                },
            ));
        }
        Ok(OrbitSpec {
            altitude_km,
            inclination_rad,
            raan_rad: normalize_angle(raan_rad),
            num_satellites,
            phase_offset_rad: normalize_angle(phase_offset_rad),
        })
    }

    /// Equatorial orbit with no phase offset.
    pub fn equatorial(altitude_km: f64, num_satellites: usize) -> Result<Self> {
        Self::new(altitude_km, 0.0, 0.0, num_satellites, 0.0)
    }

    pub fn semi_major_axis_km(&self, earth: &EarthModel) -> f64 {
        earth.orbit_radius_km(self.altitude_km)
    }

    pub fn to_gec(&self) -> Mat3 {
        plane_to_gec_matrix(self.raan_rad, self.inclination_rad)
    }
}

/// Position and transmit pointing of one satellite at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SatelliteState {
    pub position: Vec3,
    /// Unit vector along the satellite's transmit beam axis.
    pub tx_pointing: Vec3,
    pub orbit_index: usize,
    pub sat_index: usize,
}

/// Orbital period from Kepler's third law, in seconds.
pub fn orbital_period(h_km: f64, earth: &EarthModel) -> Result<f64> {
    if !(h_km.is_finite() && h_km > 0.0) {
        return Err(Error::domain("altitude", "positive", h_km));
    }
    let a_m = earth.orbit_radius_km(h_km) * 1000.0;
    Ok(TAU * (a_m.powi(3) / earth.mu).sqrt())
}

/// Mean motion in rad/s.
pub fn mean_motion(h_km: f64, earth: &EarthModel) -> Result<f64> {
    Ok(TAU / orbital_period(h_km, earth)?)
}

/// Time for the relative phase of two co-planar orbits to repeat. Infinite
/// for equal altitudes.
pub fn synodic_period(h1_km: f64, h2_km: f64, earth: &EarthModel) -> Result<f64> {
    let dw = (mean_motion(h1_km, earth)? - mean_motion(h2_km, earth)?).abs();
    Ok(if dw == 0.0 { f64::INFINITY } else { TAU / dw })
}

/// True anomaly of satellite `j` out of `n` evenly spaced satellites.
pub fn true_anomaly(j: usize, n: usize, delta_beta: f64) -> Result<f64> {
    if j >= n {
        return Err(Error::Index {
            what: "satellite",
            index: j,
            len: n,
        });
    }
    Ok(normalize_angle(delta_beta + TAU * j as f64 / n as f64))
}

/// Position inside the orbital plane (x toward the ascending node).
pub fn in_plane_position(phi: f64, a_km: f64) -> Vec3 {
    Vec3::new(a_km * phi.cos(), a_km * phi.sin(), 0.0)
}

/// Rotation taking orbital-plane coordinates to GEC for an orbit with the
/// given RAAN and inclination.
pub fn plane_to_gec_matrix(raan: f64, inclination: f64) -> Mat3 {
    let (so, co) = raan.sin_cos();
    let (sg, cg) = inclination.sin_cos();
    #[rustfmt::skip]
    let m = Mat3::new(
        co, -so * cg,  so * sg,
        so,  co * cg, -co * sg,
        0.0,      sg,       cg,
    );
    m
}

/// In-plane phase of satellite `j` at time `t_s`, unwrapped.
pub fn phase_at(orbit: &OrbitSpec, j: usize, t_s: f64, earth: &EarthModel) -> Result<f64> {
    let phi0 = true_anomaly(j, orbit.num_satellites, orbit.phase_offset_rad)?;
    Ok(phi0 + mean_motion(orbit.altitude_km, earth)? * t_s)
}

/// GEC position of satellite `j` of `orbit` at time `t_s`.
pub fn gec_position(orbit: &OrbitSpec, j: usize, t_s: f64, earth: &EarthModel) -> Result<Vec3> {
    let phi = normalize_angle(phase_at(orbit, j, t_s, earth)?);
    Ok(orbit.to_gec() * in_plane_position(phi, orbit.semi_major_axis_km(earth)))
}

fn check_above_surface(r: &Vec3, earth: &EarthModel) -> Result<()> {
    let norm = r.norm();
    if norm <= earth.radius_km {
        return Err(Error::InsideEarth {
            norm_km: norm,
            radius_km: earth.radius_km,
        });
    }
    Ok(())
}

/// Rise/set metric between a candidate and the receiver; `<= 0` means the
/// straight line between them clears the Earth.
///
/// Algebraically this equals `R_e²‖r_j − r_rx‖² − ‖r_j × r_rx‖²`, i.e. it
/// tests the distance from the geocentre to the infinite line through both
/// points. For two points at the same altitude the closest point of that line
/// lies between them, so the test is exact for intra-shell links.
pub fn rise_set_metric(r_j: &Vec3, r_rx: &Vec3, earth: &EarthModel) -> Result<f64> {
    check_above_surface(r_j, earth)?;
    check_above_surface(r_rx, earth)?;
    let re2 = earth.radius_km * earth.radius_km;
    let dot = r_j.dot(r_rx);
    let nj2 = r_j.norm_squared();
    let nrx2 = r_rx.norm_squared();
    Ok(dot * dot - nj2 * nrx2 + (nj2 + nrx2) * re2 - 2.0 * re2 * dot)
}

/// Whether the closed segment between two points outside the Earth passes
/// through the Earth sphere, found by projecting the geocentre onto the
/// segment. Grazing contact counts as clear, matching a zero rise/set metric.
pub fn segment_blocked_oracle(r1: &Vec3, r2: &Vec3, earth: &EarthModel) -> bool {
    debug_assert!(r1.norm() > earth.radius_km && r2.norm() > earth.radius_km);
    let seg = r2 - r1;
    let len2 = seg.norm_squared();
    let closest = if len2 == 0.0 {
        *r1
    } else {
        let s = (-r1.dot(&seg) / len2).clamp(0.0, 1.0);
        r1 + seg * s
    };
    closest.norm() < earth.radius_km
}

/// Angle between two vectors in `[0, π]`; the cosine is clamped to absorb
/// rounding.
pub fn angle_between(u: &Vec3, v: &Vec3) -> Result<f64> {
    let nu = u.norm();
    let nv = v.norm();
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok((u.dot(v) / (nu * nv)).clamp(-1.0, 1.0).acos())
}

/// Phase of the other orbit's satellite pattern relative to the receiver's
/// orbit at time `t_s`, normalized to `[0, 2π)`.
///
/// `Δβ(t) = Δβ₀ + (ω(h_other) − ω(h_rx))·t`. For equal altitudes the offset
/// is constant.
pub fn relative_angular_offset(
    t_s: f64,
    h_rx_km: f64,
    h_other_km: f64,
    delta_beta0: f64,
    earth: &EarthModel,
) -> Result<f64> {
    let rate = mean_motion(h_other_km, earth)? - mean_motion(h_rx_km, earth)?;
    Ok(normalize_angle(delta_beta0 + rate * t_s))
}
