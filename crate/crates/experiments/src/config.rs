//! JSON scenario configuration.
//!
//! Parsing is strict: unknown keys are rejected. Angles may be written as a
//! number of radians or as a string with a unit (`"30 deg"`, `"30°"`,
//! `"0.5 rad"`). Every field filled in from a default is recorded in
//! [`ScenarioConfig::assumed`], alongside any names flagged by the file.
//! [`ScenarioConfig::emit`] writes the fully resolved document, angles in
//! radians, and parsing that text gives back the same config.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use xlink_analytic::Visibility;
use xlink_core::geometry::{DEFAULT_EARTH_RADIUS_KM, DEFAULT_MU_M3_S2};
use xlink_core::{EarthModel, OrbitSpec, RadioParams, Scenario, ScenarioKind};

use crate::error::{Error, Result};

pub const DEFAULT_TX_POWER_W: f64 = 1.0;
/// 1 mm, i.e. 300 GHz.
pub const DEFAULT_WAVELENGTH_M: f64 = 1e-3;
pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SHIFTED_SAMPLES_PER_PERIOD: usize = 2000;
pub const DEFAULT_COPLANAR_SAMPLES: usize = 10_000;

/// A number or a string carrying a unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Quantity {
    Number(f64),
    Text(String),
}

impl Quantity {
    /// Value in the unit it was written in, and that unit's factor to radians.
    fn angle_parts(&self, field: &str) -> Result<(f64, f64)> {
        match self {
            Quantity::Number(x) => Ok((*x, 1.0)),
            Quantity::Text(s) => {
                let s = s.trim();
                let (num, factor) = if let Some(v) = s.strip_suffix('°') {
                    (v, std::f64::consts::PI / 180.0)
                } else if let Some(v) = s.strip_suffix("deg") {
                    (v, std::f64::consts::PI / 180.0)
                } else if let Some(v) = s.strip_suffix("rad") {
                    (v, 1.0)
                } else {
                    return Err(Error::config(
                        field,
                        format!("angle {s:?} needs a unit (deg, ° or rad)"),
                    ));
                };
                let value: f64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::config(field, format!("cannot read angle {s:?}")))?;
                Ok((value, factor))
            }
        }
    }

    fn angle(&self, field: &str) -> Result<f64> {
        let (v, f) = self.angle_parts(field)?;
        finite(field, v * f)
    }

    fn plain(&self, field: &str) -> Result<f64> {
        match self {
            Quantity::Number(x) => finite(field, *x),
            Quantity::Text(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::config(field, format!("expected a number, got {s:?}"))),
        }
    }
}

fn finite(field: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::config(field, "must be finite"))
    }
}

/// Quantity swept along the rows of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    /// Satellites per orbit, applied to every orbit.
    NumSatellites,
    /// Rows are the instants of the time window.
    Time,
    /// Altitude of the second orbit above the receiver's orbit, in km.
    SeparationKm,
    Beamwidth,
    /// Inclination of every orbit.
    Inclination,
}

impl AxisName {
    pub fn is_angle(&self) -> bool {
        matches!(self, AxisName::Beamwidth | AxisName::Inclination)
    }

    /// Column header of the axis in CSV output.
    pub fn column(&self) -> &'static str {
        match self {
            AxisName::NumSatellites => "num_satellites",
            AxisName::Time => "time_s",
            AxisName::SeparationKm => "separation_km",
            AxisName::Beamwidth => "beamwidth_deg",
            AxisName::Inclination => "inclination_deg",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VisibilityConfig {
    Angular,
    #[default]
    Exact,
}

impl From<VisibilityConfig> for Visibility {
    fn from(v: VisibilityConfig) -> Self {
        match v {
            VisibilityConfig::Angular => Visibility::Angular,
            VisibilityConfig::Exact => Visibility::Exact,
        }
    }
}

// ---- document as written ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    scenario: ScenarioKind,
    earth: Option<RawEarth>,
    orbits: Vec<RawOrbit>,
    radio: RawRadio,
    time: Option<RawTime>,
    sweep: Option<RawSweep>,
    model: Option<RawModel>,
    seed: Option<u64>,
    output: Option<String>,
    assumed: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEarth {
    radius_km: Option<f64>,
    mu_m3_s2: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    altitude_km: f64,
    num_satellites: usize,
    inclination: Option<Quantity>,
    raan: Option<Quantity>,
    phase_offset: Option<Quantity>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRadio {
    beamwidth: Quantity,
    tx_power_w: Option<f64>,
    wavelength_m: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    duration_s: Option<f64>,
    periods: Option<f64>,
    samples: Option<usize>,
    draws: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    axis: AxisName,
    values: Option<Vec<Quantity>>,
    range: Option<RawRange>,
    series: Option<RawSeries>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRange {
    start: Quantity,
    stop: Quantity,
    step: Quantity,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    num_satellites: Option<Vec<usize>>,
    beamwidth: Option<Vec<Quantity>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    coplanar_visibility: Option<VisibilityConfig>,
}

// ---- resolved config ----

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitConfig {
    pub altitude_km: f64,
    pub num_satellites: usize,
    /// Radians.
    pub inclination: f64,
    /// Radians.
    pub raan: f64,
    /// Radians.
    pub phase_offset: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadioConfig {
    /// Full cone angle in radians.
    pub beamwidth: f64,
    pub tx_power_w: f64,
    pub wavelength_m: f64,
}

/// Time window. Exactly one of `duration_s` and `periods` is set; periods
/// count orbital periods of the receiver's orbit, or synodic periods for
/// co-planar scenarios.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TimeConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub duration_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periods: Option<f64>,
    pub samples: usize,
    /// Random initial offsets for `simulate`; 0 runs a single trace.
    pub draws: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesConfig {
    pub num_satellites: Vec<usize>,
    /// Radians.
    pub beamwidth: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub axis: AxisName,
    /// Axis values in canonical units (radians for angles, km, counts).
    /// Empty for the time axis.
    pub values: Vec<f64>,
    pub series: SeriesConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModelConfig {
    pub coplanar_visibility: VisibilityConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub scenario: ScenarioKind,
    pub earth: EarthModel,
    pub orbits: Vec<OrbitConfig>,
    pub radio: RadioConfig,
    pub time: TimeConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    pub model: ModelConfig,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    /// Parameters not taken from the file or flagged by it as assumptions,
    /// sorted.
    pub assumed: Vec<String>,
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(Error::Json)?;
    resolve(raw)
}

fn resolve(raw: RawConfig) -> Result<ScenarioConfig> {
    let mut assumed: Vec<String> = raw.assumed.unwrap_or_default();
    let mut default = |name: &str| assumed.push(name.to_string());

    let earth = match raw.earth {
        None => {
            default("earth.radius_km");
            default("earth.mu_m3_s2");
            EarthModel::default()
        }
        Some(e) => EarthModel {
            radius_km: e.radius_km.unwrap_or_else(|| {
                default("earth.radius_km");
                DEFAULT_EARTH_RADIUS_KM
            }),
            mu: e.mu_m3_s2.unwrap_or_else(|| {
                default("earth.mu_m3_s2");
                DEFAULT_MU_M3_S2
            }),
        },
    };
    earth
        .validate()
        .map_err(|e| Error::config("earth", e.to_string()))?;

    let mut orbits = Vec::new();
    for (k, o) in raw.orbits.into_iter().enumerate() {
        let mut angle = |q: Option<Quantity>, name: &str| -> Result<f64> {
            let field = format!("orbits[{k}].{name}");
            match q {
                Some(q) => q.angle(&field),
                None => {
                    default(&field);
                    Ok(0.0)
                }
            }
        };
        orbits.push(OrbitConfig {
            altitude_km: o.altitude_km,
            num_satellites: o.num_satellites,
            inclination: angle(o.inclination, "inclination")?,
            raan: angle(o.raan, "raan")?,
            phase_offset: angle(o.phase_offset, "phase_offset")?,
        });
    }

    let radio = RadioConfig {
        beamwidth: raw.radio.beamwidth.angle("radio.beamwidth")?,
        tx_power_w: raw.radio.tx_power_w.unwrap_or_else(|| {
            default("radio.tx_power_w");
            DEFAULT_TX_POWER_W
        }),
        wavelength_m: raw.radio.wavelength_m.unwrap_or_else(|| {
            default("radio.wavelength_m");
            DEFAULT_WAVELENGTH_M
        }),
    };

    let default_samples = match raw.scenario {
        ScenarioKind::Single => 1,
        ScenarioKind::Coplanar => DEFAULT_COPLANAR_SAMPLES,
        ScenarioKind::Shifted => DEFAULT_SHIFTED_SAMPLES_PER_PERIOD,
    };
    let time = match raw.time {
        None => {
            default("time.periods");
            default("time.samples");
            default("time.draws");
            TimeConfig {
                duration_s: None,
                periods: Some(1.0),
                samples: default_samples,
                draws: 0,
            }
        }
        Some(t) => {
            let (duration_s, periods) = match (t.duration_s, t.periods) {
                (Some(_), Some(_)) => {
                    return Err(Error::config(
                        "time",
                        "give either duration_s or periods, not both",
                    ))
                }
                (None, None) => {
                    default("time.periods");
                    (None, Some(1.0))
                }
                other => other,
            };
            let samples = t.samples.unwrap_or_else(|| {
                default("time.samples");
                default_samples
            });
            let draws = t.draws.unwrap_or_else(|| {
                default("time.draws");
                0
            });
            TimeConfig {
                duration_s,
                periods,
                samples,
                draws,
            }
        }
    };

    let sweep = raw.sweep.map(resolve_sweep).transpose()?;

    let model = ModelConfig {
        coplanar_visibility: match raw.model.and_then(|m| m.coplanar_visibility) {
            Some(v) => v,
            None => {
                default("model.coplanar_visibility");
                VisibilityConfig::default()
            }
        },
    };

    let seed = raw.seed.unwrap_or_else(|| {
        default("seed");
        DEFAULT_SEED
    });

    assumed.sort();
    assumed.dedup();
    let config = ScenarioConfig {
        scenario: raw.scenario,
        earth,
        orbits,
        radio,
        time,
        sweep,
        model,
        seed,
        output: raw.output,
        assumed,
    };
    config.validate()?;
    Ok(config)
}

fn resolve_sweep(raw: RawSweep) -> Result<SweepConfig> {
    let axis = raw.axis;
    let read = |q: &Quantity| {
        if axis.is_angle() {
            q.angle("sweep.values")
        } else {
            q.plain("sweep.values")
        }
    };
    let values = match (raw.values, raw.range) {
        (Some(_), Some(_)) => {
            return Err(Error::config(
                "sweep",
                "give either values or range, not both",
            ))
        }
        (Some(v), None) => v.iter().map(read).collect::<Result<Vec<_>>>()?,
        (None, Some(r)) => expand_range(axis, &r)?,
        (None, None) => Vec::new(),
    };
    if axis == AxisName::Time && !values.is_empty() {
        return Err(Error::config(
            "sweep.values",
            "the time axis takes its rows from the time window",
        ));
    }
    if axis != AxisName::Time && values.is_empty() {
        return Err(Error::config(
            "sweep.values",
            "at least one value is needed",
        ));
    }
    if axis == AxisName::NumSatellites && values.iter().any(|v| v.fract() != 0.0 || *v < 3.0) {
        return Err(Error::config(
            "sweep.values",
            "satellite counts must be integers ≥ 3",
        ));
    }
    let series = raw.series.unwrap_or(RawSeries {
        num_satellites: None,
        beamwidth: None,
    });
    Ok(SweepConfig {
        axis,
        values,
        series: SeriesConfig {
            num_satellites: series.num_satellites.unwrap_or_default(),
            beamwidth: series
                .beamwidth
                .unwrap_or_default()
                .iter()
                .map(|q| q.angle("sweep.series.beamwidth"))
                .collect::<Result<_>>()?,
        },
    })
}

/// Inclusive range, stepped in the unit it is written in so that e.g. a
/// 0.25° grid lands on exact multiples before conversion.
fn expand_range(axis: AxisName, r: &RawRange) -> Result<Vec<f64>> {
    let parts = |q: &Quantity| {
        if axis.is_angle() {
            q.angle_parts("sweep.range")
        } else {
            q.plain("sweep.range").map(|v| (v, 1.0))
        }
    };
    let (start, f0) = parts(&r.start)?;
    let (stop, f1) = parts(&r.stop)?;
    let (step, f2) = parts(&r.step)?;
    if f0 != f1 || f1 != f2 {
        return Err(Error::config(
            "sweep.range",
            "start, stop and step need the same unit",
        ));
    }
    if step.is_nan() || step <= 0.0 || stop < start {
        return Err(Error::config(
            "sweep.range",
            "need step > 0 and stop ≥ start",
        ));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::config("sweep.range", "more than 10⁶ points"));
    }
    Ok((0..count).map(|k| (start + k as f64 * step) * f0).collect())
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        self.to_scenario()?;
        if self.time.samples == 0 {
            return Err(Error::config("time.samples", "must be at least 1"));
        }
        let window = self.time.duration_s.or(self.time.periods).unwrap_or(-1.0);
        if !(window.is_finite() && window >= 0.0) {
            return Err(Error::config(
                "time",
                "window length must be finite and ≥ 0",
            ));
        }
        if let Some(sweep) = &self.sweep {
            let s = &sweep.series;
            if sweep.axis == AxisName::Beamwidth && !s.beamwidth.is_empty() {
                return Err(Error::config(
                    "sweep.series.beamwidth",
                    "already swept along the axis",
                ));
            }
            if sweep.axis == AxisName::NumSatellites && !s.num_satellites.is_empty() {
                return Err(Error::config(
                    "sweep.series.num_satellites",
                    "already swept along the axis",
                ));
            }
            if sweep.axis == AxisName::SeparationKm && self.scenario != ScenarioKind::Coplanar {
                return Err(Error::config(
                    "sweep.axis",
                    "separation needs a co-planar scenario",
                ));
            }
            if sweep.axis == AxisName::SeparationKm && sweep.values.iter().any(|v| *v <= 0.0) {
                return Err(Error::config(
                    "sweep.values",
                    "separations must be positive",
                ));
            }
            if let Some(n) = s.num_satellites.iter().find(|n| **n < 3) {
                return Err(Error::config(
                    "sweep.series.num_satellites",
                    format!("{n} is below 3"),
                ));
            }
            if s.beamwidth
                .iter()
                .any(|a| !(*a > 0.0 && *a <= std::f64::consts::TAU))
            {
                return Err(Error::config(
                    "sweep.series.beamwidth",
                    "beamwidths must lie in (0, 2π]",
                ));
            }
        }
        Ok(())
    }

    pub fn to_scenario(&self) -> Result<Scenario> {
        let mut orbits = Vec::new();
        for (k, o) in self.orbits.iter().enumerate() {
            orbits.push(
                OrbitSpec::new(
                    o.altitude_km,
                    o.inclination,
                    o.raan,
                    o.num_satellites,
                    o.phase_offset,
                )
                .map_err(|e| Error::config(&format!("orbits[{k}]"), e.to_string()))?,
            );
        }
        let radio = RadioParams::new(
            self.radio.tx_power_w,
            self.radio.wavelength_m,
            self.radio.beamwidth,
        )
        .map_err(|e| Error::config("radio", e.to_string()))?;
        Scenario::new(self.scenario, self.earth, orbits, radio)
            .map_err(|e| Error::config("orbits", e.to_string()))
    }

    /// Fully resolved JSON document.
    pub fn emit(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// SHA-256 of the emitted document, hex encoded.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.emit().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}
