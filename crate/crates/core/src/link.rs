//! Cone antenna model, free-space received power and SIR arithmetic.
//!
//! The cone pattern has uniform gain inside a cone of full angle α and exactly
//! zero gain outside it. All arithmetic stays in linear watts; dB conversion
//! is only offered for output.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Angles closer than this to the beam edge are treated as on the edge, and
/// the edge itself is outside the beam.
pub const BEAM_EDGE_TOLERANCE_RAD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    pub tx_power_w: f64,
    pub wavelength_m: f64,
    /// Full cone angle α.
    pub beamwidth_rad: f64,
}

impl RadioParams {
    pub fn new(tx_power_w: f64, wavelength_m: f64, beamwidth_rad: f64) -> Result<Self> {
        let radio = RadioParams {
            tx_power_w,
            wavelength_m,
            beamwidth_rad,
        };
        radio.validate()?;
        Ok(radio)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tx_power_w.is_finite() && self.tx_power_w > 0.0) {
            return Err(Error::domain("transmit power", "positive", self.tx_power_w));
        }
        if !(self.wavelength_m.is_finite() && self.wavelength_m > 0.0) {
            return Err(Error::domain("wavelength", "positive", self.wavelength_m));
        }
        check_beamwidth(self.beamwidth_rad)
    }

    pub fn with_beamwidth(&self, beamwidth_rad: f64) -> Result<Self> {
        RadioParams::new(self.tx_power_w, self.wavelength_m, beamwidth_rad)
    }

    pub fn gain(&self) -> f64 {
        // validated on construction
        2.0 / (1.0 - (self.beamwidth_rad / 2.0).cos())
    }

    /// Received power between two satellites using this radio on both ends.
    pub fn rx_power_w(&self, distance_km: f64) -> Result<f64> {
        let g = self.gain();
        friis_rx_power(self, g, g, distance_km * 1000.0)
    }
}

fn check_beamwidth(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha <= 0.0 || alpha > TAU {
        return Err(Error::domain("beamwidth", "within (0, 2π]", alpha));
    }
    Ok(())
}

/// Main-lobe gain of a cone pattern with full angle `alpha`.
pub fn cone_gain(alpha: f64) -> Result<f64> {
    check_beamwidth(alpha)?;
    Ok(2.0 / (1.0 - (alpha / 2.0).cos()))
}

/// Solid angle of a cone with full angle `alpha`, in steradians.
pub fn cone_solid_angle(alpha: f64) -> f64 {
    TAU * (1.0 - (alpha / 2.0).cos())
}

/// Whether a direction `off_axis` radians from the beam axis falls strictly
/// inside a cone of full angle `alpha`.
pub fn within_cone(off_axis: f64, alpha: f64) -> bool {
    off_axis < alpha / 2.0 - BEAM_EDGE_TOLERANCE_RAD
}

/// Free-space received power in watts.
pub fn friis_rx_power(radio: &RadioParams, g_tx: f64, g_rx: f64, d_m: f64) -> Result<f64> {
    if !(d_m.is_finite() && d_m > 0.0) {
        return Err(Error::domain("link distance", "positive", d_m));
    }
    let spreading = radio.wavelength_m / (4.0 * PI * d_m);
    Ok(radio.tx_power_w * g_tx * g_rx * spreading * spreading)
}

pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sir {
    pub linear: f64,
    pub db: f64,
}

impl Sir {
    pub fn is_infinite(&self) -> bool {
        self.linear.is_infinite()
    }
}

/// Signal-to-interference ratio; zero interference gives +∞.
pub fn sir(signal_w: f64, interference_w: f64) -> Result<Sir> {
    if signal_w.is_nan() || signal_w <= 0.0 {
        return Err(Error::domain("signal power", "positive", signal_w));
    }
    if interference_w.is_nan() || interference_w < 0.0 {
        return Err(Error::domain(
            "interference power",
            "non-negative",
            interference_w,
        ));
    }
    let linear = if interference_w == 0.0 {
        f64::INFINITY
    } else {
        signal_w / interference_w
    };
    Ok(Sir {
        linear,
        db: to_db(linear),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkBudget {
    pub signal_w: f64,
    pub interference_w: f64,
    pub sir_linear: f64,
}

impl LinkBudget {
    pub fn new(signal_w: f64, interference_w: f64) -> Result<Self> {
        let s = sir(signal_w, interference_w)?;
        Ok(LinkBudget {
            signal_w,
            interference_w,
            sir_linear: s.linear,
        })
    }

    pub fn sir_db(&self) -> f64 {
        to_db(self.sir_linear)
    }
}
