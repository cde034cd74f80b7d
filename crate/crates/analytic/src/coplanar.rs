//! Interference from a second orbit in the receiver's orbital plane.
//!
//! Everything is worked out in the 2D orbital plane. The receiver sits at
//! `A = (0, R_e+h)`, angles around the geocentre are measured from `A` toward
//! the serving transmitter, and satellite `j` of the other orbit sits at
//! `B = (R_e+h_c)(sin Ô, cos Ô)` with `Ô = Δβ + 2πj/N_c`.
//!
//! The receiver may be on either the lower or the higher orbit; the vector
//! form does not depend on which.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::Vector2;
use xlink_core::geometry::{angle_between, relative_angular_offset, segment_blocked_oracle};
use xlink_core::link::within_cone;
use xlink_core::{EarthModel, Error, RadioParams, Result, Vec3};

use crate::ratio_or_infinite;

type Vec2 = Vector2<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoplanarGeometry {
    /// Receiver orbit altitude.
    pub h_km: f64,
    /// Interfering orbit altitude.
    pub h_c_km: f64,
    pub n: usize,
    pub n_c: usize,
    /// Relative angular offset of the interfering pattern at this instant.
    pub delta_beta: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoplanarResult {
    pub interferer_set: Vec<usize>,
    pub mean_interference_w: f64,
    pub sir_linear: f64,
}

impl CoplanarGeometry {
    pub fn new(h_km: f64, h_c_km: f64, n: usize, n_c: usize, delta_beta: f64) -> Result<Self> {
        for (what, h) in [("receiver altitude", h_km), ("interferer altitude", h_c_km)] {
            if !(h.is_finite() && h > 0.0) {
                return Err(Error::Domain {
                    what,
                    requirement: "positive",
                    value: h,
                });
            }
        }
        if h_km == h_c_km {
            return Err(Error::Scenario(format!(
                "co-planar orbits need different altitudes (both {h_km} km)"
            )));
        }
        for count in [n, n_c] {
            if count < 3 {
                return Err(Error::Domain {
                    what: "satellites per orbit",
                    requirement: "at least 3",
                    value: count as f64,
                });
            }
        }
        Ok(CoplanarGeometry {
            h_km,
            h_c_km,
            n,
            n_c,
            delta_beta,
        })
    }

    /// Geometry at time `t_s` for an initial offset `delta_beta0`.
    pub fn at_time(
        h_km: f64,
        h_c_km: f64,
        n: usize,
        n_c: usize,
        delta_beta0: f64,
        t_s: f64,
        earth: &EarthModel,
    ) -> Result<Self> {
        let db = relative_angular_offset(t_s, h_km, h_c_km, delta_beta0, earth)?;
        Self::new(h_km, h_c_km, n, n_c, db)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j >= self.n_c {
            return Err(Error::Index {
                what: "interfering satellite",
                index: j,
                len: self.n_c,
            });
        }
        Ok(())
    }

    /// `Ô_j`, the angular position of interferer `j` seen from the geocentre.
    pub fn interferer_angle(&self, j: usize) -> f64 {
        self.delta_beta + TAU * j as f64 / self.n_c as f64
    }

    /// Angular position of the neighbour that interferer `j` points at.
    pub fn pointing_target_angle(&self, j: usize) -> f64 {
        let target = (j + self.n_c - 1) % self.n_c;
        self.delta_beta + TAU * target as f64 / self.n_c as f64
    }

    fn rx(&self, earth: &EarthModel) -> Vec2 {
        Vec2::new(0.0, earth.orbit_radius_km(self.h_km))
    }

    fn on_interfering_orbit(&self, angle: f64, earth: &EarthModel) -> Vec2 {
        earth.orbit_radius_km(self.h_c_km) * Vec2::new(angle.sin(), angle.cos())
    }

    /// Unit vector from the receiver toward its serving transmitter.
    fn serving_direction(&self) -> Vec2 {
        let a_hat = FRAC_PI_2 - PI / self.n as f64;
        Vec2::new(a_hat.sin(), -a_hat.cos())
    }

    /// Receiver-to-interferer vector `AB`, in km.
    pub fn rx_to_interferer(&self, j: usize, earth: &EarthModel) -> Result<Vec2> {
        self.check_index(j)?;
        Ok(self.on_interfering_orbit(self.interferer_angle(j), earth) - self.rx(earth))
    }
}

fn angle2(u: &Vec2, v: &Vec2) -> Result<f64> {
    angle_between(&Vec3::new(u.x, u.y, 0.0), &Vec3::new(v.x, v.y, 0.0))
}

/// Off-axis angle of interferer `j` in the receiver's beam.
pub fn psi_j(j: usize, geom: &CoplanarGeometry, earth: &EarthModel) -> Result<f64> {
    let ab = geom.rx_to_interferer(j, earth)?;
    angle2(&ab, &geom.serving_direction())
}

/// Off-axis angle of the receiver in interferer `j`'s beam.
pub fn psi_j_prime(j: usize, geom: &CoplanarGeometry, earth: &EarthModel) -> Result<f64> {
    geom.check_index(j)?;
    let b = geom.on_interfering_orbit(geom.interferer_angle(j), earth);
    let d = geom.on_interfering_orbit(geom.pointing_target_angle(j), earth);
    angle2(&(d - b), &(geom.rx(earth) - b))
}

/// Receiver-to-interferer distance `‖AB‖`, in km.
pub fn interferer_distance(j: usize, geom: &CoplanarGeometry, earth: &EarthModel) -> Result<f64> {
    Ok(geom.rx_to_interferer(j, earth)?.norm())
}

/// How `C₁` (visibility) is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Visibility {
    /// The linearized angular test `ψ_j > π/N − arccos(R_e/(R_e+h))`.
    #[default]
    Angular,
    /// The straight segment from the receiver to the interferer must not
    /// enter the Earth.
    Exact,
}

/// Indices of interfering satellites: visible, inside the receiver's beam and
/// with the receiver inside their beam. Visibility uses the angular test.
pub fn interferer_set_coplanar(
    geom: &CoplanarGeometry,
    alpha: f64,
    earth: &EarthModel,
) -> Result<Vec<usize>> {
    interferer_set_coplanar_with(geom, alpha, Visibility::Angular, earth)
}

pub fn interferer_set_coplanar_with(
    geom: &CoplanarGeometry,
    alpha: f64,
    visibility: Visibility,
    earth: &EarthModel,
) -> Result<Vec<usize>> {
    let visibility_floor =
        PI / geom.n as f64 - (earth.radius_km / earth.orbit_radius_km(geom.h_km)).acos();
    let rx = geom.rx(earth);
    let mut set = Vec::new();
    for j in 0..geom.n_c {
        let psi = psi_j(j, geom, earth)?;
        let visible = match visibility {
            Visibility::Angular => psi > visibility_floor,
            Visibility::Exact => {
                let b = geom.on_interfering_orbit(geom.interferer_angle(j), earth);
                !segment_blocked_oracle(
                    &Vec3::new(rx.x, rx.y, 0.0),
                    &Vec3::new(b.x, b.y, 0.0),
                    earth,
                )
            }
        };
        if visible && within_cone(psi, alpha) && within_cone(psi_j_prime(j, geom, earth)?, alpha) {
            set.push(j);
        }
    }
    Ok(set)
}

fn power_scale(radio: &RadioParams) -> f64 {
    let edge = 1.0 - (radio.beamwidth_rad / 2.0).cos();
    radio.wavelength_m * radio.wavelength_m * radio.tx_power_w / (4.0 * PI * PI * edge * edge)
}

/// Sum of `1/d_j²` (km⁻²) over the interferer set.
fn inverse_square_sum(set: &[usize], geom: &CoplanarGeometry, earth: &EarthModel) -> Result<f64> {
    set.iter()
        .map(|&j| Ok(1.0 / geom.rx_to_interferer(j, earth)?.norm_squared()))
        .sum()
}

/// Mean interference power from the co-planar orbit, in watts.
pub fn mean_interference_coplanar(
    geom: &CoplanarGeometry,
    radio: &RadioParams,
    earth: &EarthModel,
) -> Result<f64> {
    Ok(evaluate_coplanar(geom, radio, earth)?.mean_interference_w)
}

/// SIR against the co-planar orbit only; the serving link is the intra-orbit
/// neighbour at chord distance `d₁² = 2(R_e+h)²(1 − cos 2π/N)`.
pub fn sir_coplanar(
    geom: &CoplanarGeometry,
    radio: &RadioParams,
    earth: &EarthModel,
) -> Result<f64> {
    Ok(evaluate_coplanar(geom, radio, earth)?.sir_linear)
}

pub fn evaluate_coplanar(
    geom: &CoplanarGeometry,
    radio: &RadioParams,
    earth: &EarthModel,
) -> Result<CoplanarResult> {
    evaluate_coplanar_with(geom, radio, Visibility::Angular, earth)
}

pub fn evaluate_coplanar_with(
    geom: &CoplanarGeometry,
    radio: &RadioParams,
    visibility: Visibility,
    earth: &EarthModel,
) -> Result<CoplanarResult> {
    let interferer_set =
        interferer_set_coplanar_with(geom, radio.beamwidth_rad, visibility, earth)?;
    let inv_sq = inverse_square_sum(&interferer_set, geom, earth)?;
    let a = earth.orbit_radius_km(geom.h_km);
    let d1_sq = 2.0 * a * a * (1.0 - (TAU / geom.n as f64).cos());
    Ok(CoplanarResult {
        interferer_set,
        // km⁻² → m⁻²
        mean_interference_w: power_scale(radio) * inv_sq * 1e-6,
        sir_linear: ratio_or_infinite(1.0, d1_sq * inv_sq),
    })
}
