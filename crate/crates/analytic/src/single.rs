//! Interference from satellites of the receiver's own orbit.
//!
//! Satellites are numbered `i = 0..N` around the orbit: `0` is the receiver,
//! `1` its serving transmitter, and `i = 2..=N_i+1` the interferers on the
//! transmitter side. An interferer `i` must clear the Earth and sit inside
//! both beams; both beam conditions reduce to `π(i−1)/N < α/2` and the
//! blockage condition to `i < (N/π)·arccos(R_e/(R_e+h))`.

use std::f64::consts::{PI, TAU};

use xlink_core::link::{cone_gain, BEAM_EDGE_TOLERANCE_RAD};
use xlink_core::{EarthModel, Error, RadioParams, Result};

use crate::ratio_or_infinite;

#[derive(Debug, Clone, PartialEq)]
pub struct SingleOrbitResult {
    pub n_interferers: usize,
    pub mean_interference_w: f64,
    pub sir_linear: f64,
    /// Distances to interferers `i = 2..=N_i+1`, in km.
    pub interferer_distances_km: Vec<f64>,
}

fn check_inputs(n: usize, h_km: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::Domain {
            what: "satellites per orbit",
            requirement: "at least 3",
            value: n as f64,
        });
    }
    if !(h_km.is_finite() && h_km > 0.0) {
        return Err(Error::Domain {
            what: "altitude",
            requirement: "positive",
            value: h_km,
        });
    }
    Ok(())
}

/// Angle between the receiver's local horizontal and the chord to satellite
/// `i`, for `1 ≤ i ≤ N`.
pub fn theta_i(i: usize, n: usize) -> Result<f64> {
    if i == 0 || i > n {
        return Err(Error::Index {
            what: "satellite",
            index: i,
            len: n + 1,
        });
    }
    Ok(PI / 2.0 - i as f64 * PI / n as f64)
}

/// `(N/π)·arccos(R_e/(R_e+h))`: satellites with a lower index clear the Earth.
pub fn blockage_bound(n: usize, h_km: f64, earth: &EarthModel) -> f64 {
    n as f64 / PI * (earth.radius_km / earth.orbit_radius_km(h_km)).acos()
}

/// `1 + Nα/(2π)`: satellites with a lower index are inside both beams.
pub fn beam_bound(n: usize, alpha: f64) -> f64 {
    1.0 + n as f64 * alpha / TAU
}

/// Number of integers `i ≥ 2` strictly below `bound`.
fn count_from_two_below(bound: f64) -> usize {
    if bound <= 2.0 {
        0
    } else {
        bound.ceil() as usize - 2
    }
}

/// Number of interfering satellites `N_i`.
///
/// A satellite whose beam angle sits exactly on the cone edge is not counted.
/// The result is clamped to `N − 2`.
pub fn num_interferers(n: usize, h_km: f64, alpha: f64, earth: &EarthModel) -> Result<usize> {
    check_inputs(n, h_km)?;
    cone_gain(alpha)?;
    // the edge tolerance is expressed on the index axis so that this count
    // agrees with an angle-by-angle cone test
    let beam = beam_bound(n, alpha) - n as f64 * BEAM_EDGE_TOLERANCE_RAD / PI;
    let blocked = blockage_bound(n, h_km, earth);
    let count = count_from_two_below(beam).min(count_from_two_below(blocked));
    Ok(count.min(n - 2))
}

/// Chord length between the receiver and satellite `i`, in km.
pub fn interferer_distance(i: usize, n: usize, h_km: f64, earth: &EarthModel) -> Result<f64> {
    if i == 0 || i >= n {
        return Err(Error::Index {
            what: "satellite",
            index: i,
            len: n,
        });
    }
    let a = earth.orbit_radius_km(h_km);
    Ok((2.0 * a * a * (1.0 - (TAU * i as f64 / n as f64).cos())).sqrt())
}

/// Mean interference power at the receiver, in watts.
pub fn mean_interference_single(
    n: usize,
    h_km: f64,
    radio: &RadioParams,
    earth: &EarthModel,
) -> Result<f64> {
    let n_i = num_interferers(n, h_km, radio.beamwidth_rad, earth)?;
    let a_m = earth.orbit_radius_km(h_km) * 1000.0;
    let edge = 1.0 - (radio.beamwidth_rad / 2.0).cos();
    let scale = radio.wavelength_m * radio.wavelength_m * radio.tx_power_w
        / (8.0 * PI * PI * edge * edge * a_m * a_m);
    Ok((2..=n_i + 1)
        .map(|i| scale / (1.0 - (TAU * i as f64 / n as f64).cos()))
        .sum())
}

/// Mean SIR (linear). Independent of power and wavelength, and of altitude
/// except through `N_i`.
pub fn sir_single(n: usize, h_km: f64, alpha: f64, earth: &EarthModel) -> Result<f64> {
    let n_i = num_interferers(n, h_km, alpha, earth)?;
    let nf = n as f64;
    let signal = 1.0 / (1.0 - (TAU / nf).cos());
    let interference: f64 = (2..=n_i + 1)
        .map(|i| 1.0 / (1.0 - (TAU * i as f64 / nf).cos()))
        .sum();
    Ok(ratio_or_infinite(signal, interference))
}

pub fn evaluate_single(
    n: usize,
    h_km: f64,
    radio: &RadioParams,
    earth: &EarthModel,
) -> Result<SingleOrbitResult> {
    let n_interferers = num_interferers(n, h_km, radio.beamwidth_rad, earth)?;
    let interferer_distances_km = (2..=n_interferers + 1)
        .map(|i| interferer_distance(i, n, h_km, earth))
        .collect::<Result<Vec<_>>>()?;
    Ok(SingleOrbitResult {
        n_interferers,
        mean_interference_w: mean_interference_single(n, h_km, radio, earth)?,
        sir_linear: sir_single(n, h_km, radio.beamwidth_rad, earth)?,
        interferer_distances_km,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use xlink_core::link::to_db;

    fn earth() -> EarthModel {
        EarthModel::default()
    }

    fn deg(x: f64) -> f64 {
        x.to_radians()
    }

    #[test]
    fn theta_examples() {
        assert!((theta_i(1, 4).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!(theta_i(5, 10).unwrap().abs() < 1e-15);
        assert!((theta_i(7, 7).unwrap() + PI / 2.0).abs() < 1e-15);
        assert!(theta_i(0, 7).is_err());
        assert!(theta_i(8, 7).is_err());
    }

    #[test]
    fn interferer_count_examples() {
        let e = earth();
        assert!((blockage_bound(100, 500.0, &e) - 12.218267535461852).abs() < 1e-9);
        assert!((beam_bound(100, deg(30.0)) - 9.333333333333334).abs() < 1e-12);
        assert_eq!(num_interferers(100, 500.0, deg(30.0), &e).unwrap(), 8);
        assert_eq!(num_interferers(100, 500.0, 1e-9, &e).unwrap(), 0);
        assert_eq!(num_interferers(24, 500.0, deg(30.0), &e).unwrap(), 1);
        assert_eq!(num_interferers(25, 500.0, deg(30.0), &e).unwrap(), 2);
    }

    #[test]
    fn beam_bound_on_an_integer_excludes_the_edge_satellite() {
        // 1 + 36·20/360 = 3 exactly: satellite 3 sits on the cone edge
        assert_eq!(num_interferers(36, 2000.0, deg(20.0), &earth()).unwrap(), 1);
    }

    #[test]
    fn interferer_count_is_clamped() {
        let e = earth();
        let n = num_interferers(5, 20_000.0, TAU, &e).unwrap();
        assert!(n <= 3);
        assert!(num_interferers(2, 500.0, 0.5, &e).is_err());
        assert!(num_interferers(10, 500.0, 0.0, &e).is_err());
    }

    #[test]
    fn distance_examples() {
        let e = earth();
        let a = e.orbit_radius_km(500.0);
        assert!((interferer_distance(5, 10, 500.0, &e).unwrap() - 2.0 * a).abs() < 1e-9);
        assert!((interferer_distance(1, 6, 500.0, &e).unwrap() - a).abs() < 1e-9);
        assert!(interferer_distance(10, 10, 500.0, &e).is_err());
    }

    #[test]
    fn no_interferers_means_zero_power_and_infinite_sir() {
        let e = earth();
        let radio = RadioParams::new(1.0, 1e-3, deg(5.0)).unwrap();
        assert_eq!(
            mean_interference_single(20, 500.0, &radio, &e).unwrap(),
            0.0
        );
        assert!(sir_single(20, 500.0, deg(5.0), &e).unwrap().is_infinite());
    }

    #[test]
    fn mean_interference_is_sum_of_friis_terms() {
        let e = earth();
        for (n, alpha) in [(100, 30.0), (37, 20.0), (80, 10.0)] {
            let radio = RadioParams::new(2.5, 1e-3, deg(alpha)).unwrap();
            let n_i = num_interferers(n, 500.0, radio.beamwidth_rad, &e).unwrap();
            let friis: f64 = (2..=n_i + 1)
                .map(|i| {
                    let d = interferer_distance(i, n, 500.0, &e).unwrap();
                    radio.rx_power_w(d).unwrap()
                })
                .sum();
            let closed = mean_interference_single(n, 500.0, &radio, &e).unwrap();
            assert!((closed / friis - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_interferer_sir_tends_to_four() {
        // S = 2(1 + cos(2π/N)) for N_i = 1
        let e = earth();
        let s = sir_single(73, 500.0, deg(5.0), &e).unwrap();
        assert!((s - 2.0 * (1.0 + (TAU / 73.0).cos())).abs() < 1e-12);
        assert!((to_db(s) - 6.02).abs() < 0.02);
    }

    #[test]
    fn drop_points_at_thirty_degrees() {
        let e = earth();
        let s = |n| to_db(sir_single(n, 500.0, deg(30.0), &e).unwrap());
        assert!(s(24) - s(25) > 1.5);
        assert!(s(95) - s(96) < 0.2);
    }

    #[test]
    fn evaluate_collects_distances() {
        let e = earth();
        let radio = RadioParams::new(1.0, 1e-3, deg(30.0)).unwrap();
        let r = evaluate_single(100, 500.0, &radio, &e).unwrap();
        assert_eq!(r.n_interferers, 8);
        assert_eq!(r.interferer_distances_km.len(), 8);
        assert!(r.interferer_distances_km.windows(2).all(|w| w[0] < w[1]));
    }
}
