//! Parameter sweeps evaluated along both the closed-form and the simulated
//! path.
//!
//! A sweep varies one quantity along the rows (the axis) and draws one curve
//! per series (a satellite count and/or beamwidth override). Rows on the time
//! axis are single instants; on every other axis a row is an average over the
//! configured time window: mean signal over mean interference.

use rayon::prelude::*;
use xlink_analytic::coplanar::{evaluate_coplanar_with, interferer_set_coplanar_with};
use xlink_analytic::shifted::evaluate_shifted;
use xlink_analytic::single::{interferer_distance, mean_interference_single, sir_single};
use xlink_analytic::{CoplanarGeometry, ShiftedGeometry, Visibility};
use xlink_core::geometry::{mean_motion, orbital_period, synodic_period};
use xlink_core::{EarthModel, OrbitSpec, RadioParams, Scenario, ScenarioKind};
use xlink_oracle::{time_sweep, InterferenceSample, Side, TimeGrid};

use crate::config::{AxisName, ScenarioConfig};
use crate::error::{Error, Result};
use crate::table::{format_float, Point, Series, SweepTable};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Window {
    DurationS(f64),
    /// Orbital periods of the receiver's orbit, or synodic periods for
    /// co-planar scenarios.
    Periods(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Axis {
    NumSatellites(Vec<usize>),
    Time,
    SeparationKm(Vec<f64>),
    /// Radians.
    Beamwidth(Vec<f64>),
    /// Radians.
    Inclination(Vec<f64>),
}

impl Axis {
    fn name(&self) -> AxisName {
        match self {
            Axis::NumSatellites(_) => AxisName::NumSatellites,
            Axis::Time => AxisName::Time,
            Axis::SeparationKm(_) => AxisName::SeparationKm,
            Axis::Beamwidth(_) => AxisName::Beamwidth,
            Axis::Inclination(_) => AxisName::Inclination,
        }
    }

    fn len(&self) -> usize {
        match self {
            Axis::NumSatellites(v) => v.len(),
            Axis::Time => 0,
            Axis::SeparationKm(v) | Axis::Beamwidth(v) | Axis::Inclination(v) => v.len(),
        }
    }

    /// Value written in the axis column (degrees for angles).
    fn display(&self, row: usize) -> f64 {
        match self {
            Axis::NumSatellites(v) => v[row] as f64,
            Axis::Time => unreachable!("time rows come from the grid"),
            Axis::SeparationKm(v) => v[row],
            Axis::Beamwidth(v) | Axis::Inclination(v) => round_degrees(v[row]),
        }
    }

    fn apply(&self, row: usize, sc: &mut Scenario) {
        match self {
            Axis::NumSatellites(v) => sc.orbits.iter_mut().for_each(|o| o.num_satellites = v[row]),
            Axis::Time => {}
            Axis::SeparationKm(v) => sc.orbits[1].altitude_km = sc.orbits[0].altitude_km + v[row],
            Axis::Beamwidth(v) => sc.radio.beamwidth_rad = v[row],
            Axis::Inclination(v) => sc
                .orbits
                .iter_mut()
                .for_each(|o| o.inclination_rad = v[row]),
        }
    }
}

/// Overrides that define one curve.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SeriesSpec {
    /// Applied to every orbit.
    pub num_satellites: Option<usize>,
    pub beamwidth: Option<f64>,
}

impl SeriesSpec {
    pub fn label(&self) -> String {
        let mut parts = Vec::new();
        if let Some(n) = self.num_satellites {
            parts.push(format!("N={n}"));
        }
        if let Some(a) = self.beamwidth {
            parts.push(format!("alpha={}deg", degree_label(a)));
        }
        if parts.is_empty() {
            "base".into()
        } else {
            parts.join(";")
        }
    }

    fn apply(&self, sc: &mut Scenario) {
        if let Some(n) = self.num_satellites {
            sc.orbits.iter_mut().for_each(|o| o.num_satellites = n);
        }
        if let Some(a) = self.beamwidth {
            sc.radio.beamwidth_rad = a;
        }
    }

    /// Every combination of the given counts and beamwidths, counts outermost.
    pub fn grid(counts: &[usize], beamwidths: &[f64]) -> Vec<SeriesSpec> {
        let counts: Vec<Option<usize>> = if counts.is_empty() {
            vec![None]
        } else {
            counts.iter().copied().map(Some).collect()
        };
        let alphas: Vec<Option<f64>> = if beamwidths.is_empty() {
            vec![None]
        } else {
            beamwidths.iter().copied().map(Some).collect()
        };
        counts
            .iter()
            .flat_map(|&n| {
                alphas.iter().map(move |&a| SeriesSpec {
                    num_satellites: n,
                    beamwidth: a,
                })
            })
            .collect()
    }
}

/// Degrees rounded to 1e-9 so that converted grid values label cleanly.
/// Degrees rounded to 1e-9, which drops the noise of the radian round trip.
fn round_degrees(rad: f64) -> f64 {
    (rad.to_degrees() * 1e9).round() / 1e9
}

pub fn degree_label(rad: f64) -> String {
    format!("{}", round_degrees(rad))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: Scenario,
    pub axis: Axis,
    pub series: Vec<SeriesSpec>,
    pub window: Window,
    pub samples: usize,
    pub visibility: Visibility,
}

/// Shared settings for the figure sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepContext {
    pub earth: EarthModel,
    /// Power and wavelength; the beamwidth is overridden by each sweep.
    pub radio: RadioParams,
    /// Samples per time window.
    pub samples: usize,
    pub visibility: Visibility,
}

impl SweepContext {
    pub fn new(radio: RadioParams, samples: usize) -> Self {
        SweepContext {
            earth: EarthModel::default(),
            radio,
            samples,
            visibility: Visibility::Exact,
        }
    }
}

/// Two orbits of one shell: same altitude and inclination, RAANs `ΔΩ` apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Shell {
    pub altitude_km: f64,
    pub inclination_rad: f64,
    pub delta_omega_rad: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Sample {
    pub(crate) signal_w: f64,
    pub(crate) interference_w: f64,
    pub(crate) sir_linear: f64,
}

impl Sample {
    fn point(&self) -> Point {
        Point {
            interference_w: self.interference_w,
            sir_linear: self.sir_linear,
        }
    }
}

fn ratio(signal: f64, interference: f64) -> f64 {
    if interference == 0.0 {
        f64::INFINITY
    } else {
        signal / interference
    }
}

/// Length of one period of the scenario's geometry.
pub fn base_period(sc: &Scenario) -> Result<f64> {
    let h0 = sc.orbits[0].altitude_km;
    Ok(match sc.kind {
        ScenarioKind::Single | ScenarioKind::Shifted => orbital_period(h0, &sc.earth)?,
        ScenarioKind::Coplanar => synodic_period(h0, sc.orbits[1].altitude_km, &sc.earth)?,
    })
}

pub(crate) fn grid_for(sc: &Scenario, window: Window, samples: usize) -> Result<TimeGrid> {
    let duration = match window {
        Window::DurationS(d) => d,
        Window::Periods(p) => p * base_period(sc)?,
    };
    Ok(TimeGrid::new(0.0, duration, samples)?)
}

/// Closed-form values at `t_s`, and whether the angular and exact visibility
/// tests disagree there (co-planar only).
pub(crate) fn analytic_sample(sc: &Scenario, t_s: f64, vis: Visibility) -> Result<(Sample, bool)> {
    let e = &sc.earth;
    let o0 = &sc.orbits[0];
    let radio = &sc.radio;
    let n = o0.num_satellites;
    let h = o0.altitude_km;
    let signal_w = radio.rx_power_w(interferer_distance(1, n, h, e)?)?;
    Ok(match sc.kind {
        ScenarioKind::Single => (
            Sample {
                signal_w,
                interference_w: mean_interference_single(n, h, radio, e)?,
                sir_linear: sir_single(n, h, radio.beamwidth_rad, e)?,
            },
            false,
        ),
        ScenarioKind::Coplanar => {
            let o1 = &sc.orbits[1];
            let geom = CoplanarGeometry::at_time(
                h,
                o1.altitude_km,
                n,
                o1.num_satellites,
                o1.phase_offset_rad - o0.phase_offset_rad,
                t_s,
                e,
            )?;
            let res = evaluate_coplanar_with(&geom, radio, vis, e)?;
            let other = match vis {
                Visibility::Angular => Visibility::Exact,
                Visibility::Exact => Visibility::Angular,
            };
            let alt = interferer_set_coplanar_with(&geom, radio.beamwidth_rad, other, e)?;
            (
                Sample {
                    signal_w,
                    interference_w: res.mean_interference_w,
                    sir_linear: res.sir_linear,
                },
                alt != res.interferer_set,
            )
        }
        ScenarioKind::Shifted => {
            let o1 = &sc.orbits[1];
            let geom = ShiftedGeometry::new(
                h,
                o0.inclination_rad,
                o1.raan_rad - o0.raan_rad,
                n,
                o1.num_satellites,
                o1.phase_offset_rad - o0.phase_offset_rad,
            )?
            .with_reference_raan(o0.raan_rad);
            // the model starts the receiver at phase 0; shift time instead
            let t_model = t_s + o0.phase_offset_rad / mean_motion(h, e)?;
            let res = evaluate_shifted(&geom, radio, t_model, e)?;
            (
                Sample {
                    signal_w,
                    interference_w: res.mean_interference_w,
                    sir_linear: res.sir_linear,
                },
                false,
            )
        }
    })
}

/// Oracle interference restricted to what the closed form covers: the
/// forward side for a single orbit, the second orbit otherwise.
pub(crate) fn oracle_sample(sc: &Scenario, s: &InterferenceSample) -> Sample {
    let interference_w = match sc.kind {
        ScenarioKind::Single => s.side_subtotal(Side::Forward),
        _ => s.orbit_subtotal(1),
    };
    Sample {
        signal_w: s.signal_w,
        interference_w,
        sir_linear: ratio(s.signal_w, interference_w),
    }
}

struct Traces {
    analytic: Vec<Sample>,
    oracle: Vec<Sample>,
    disagreements: usize,
}

fn traces(sc: &Scenario, grid: &TimeGrid, vis: Visibility) -> Result<Traces> {
    let analytic = grid
        .times()
        .into_par_iter()
        .map(|t| analytic_sample(sc, t, vis))
        .collect::<Result<Vec<_>>>()?;
    let oracle = time_sweep(sc, grid)?
        .iter()
        .map(|s| oracle_sample(sc, s))
        .collect();
    Ok(Traces {
        disagreements: analytic.iter().filter(|(_, d)| *d).count(),
        analytic: analytic.into_iter().map(|(s, _)| s).collect(),
        oracle,
    })
}

fn average(samples: &[Sample]) -> Point {
    if samples.len() == 1 {
        return samples[0].point();
    }
    let n = samples.len() as f64;
    let signal = samples.iter().map(|s| s.signal_w).sum::<f64>() / n;
    let interference = samples.iter().map(|s| s.interference_w).sum::<f64>() / n;
    Point {
        interference_w: interference,
        sir_linear: ratio(signal, interference),
    }
}

fn row_scenario(spec: &SweepSpec, series: &SeriesSpec, row: Option<usize>) -> Result<Scenario> {
    let mut sc = spec.base.clone();
    series.apply(&mut sc);
    if let Some(r) = row {
        spec.axis.apply(r, &mut sc);
    }
    sc.validate()?;
    Ok(sc)
}

/// Evaluates every row and series of `spec` along both paths.
pub fn run_spec(spec: &SweepSpec) -> Result<SweepTable> {
    if spec.samples == 0 {
        return Err(Error::config("time.samples", "must be at least 1"));
    }
    spec.base.validate()?;
    let mut disagreements = 0;
    let (axis_values, series) = if spec.axis == Axis::Time {
        let grid = grid_for(&spec.base, spec.window, spec.samples)?;
        let mut out = Vec::new();
        for s in &spec.series {
            let sc = row_scenario(spec, s, None)?;
            let tr = traces(&sc, &grid, spec.visibility)?;
            disagreements += tr.disagreements;
            out.push(Series {
                label: s.label(),
                analytic: tr.analytic.iter().map(Sample::point).collect(),
                oracle: tr.oracle.iter().map(Sample::point).collect(),
            });
        }
        (grid.times(), out)
    } else {
        let rows = spec.axis.len();
        let tasks: Vec<(usize, usize)> = (0..spec.series.len())
            .flat_map(|s| (0..rows).map(move |r| (s, r)))
            .collect();
        let cells = tasks
            .par_iter()
            .map(|&(s, r)| {
                let sc = row_scenario(spec, &spec.series[s], Some(r))?;
                let grid = grid_for(&sc, spec.window, spec.samples)?;
                let tr = traces(&sc, &grid, spec.visibility)?;
                Ok((average(&tr.analytic), average(&tr.oracle), tr.disagreements))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for (s, chunk) in spec.series.iter().zip(cells.chunks(rows.max(1))) {
            disagreements += chunk.iter().map(|c| c.2).sum::<usize>();
            out.push(Series {
                label: s.label(),
                analytic: chunk.iter().map(|c| c.0).collect(),
                oracle: chunk.iter().map(|c| c.1).collect(),
            });
        }
        let values = (0..rows).map(|r| spec.axis.display(r)).collect();
        (values, out)
    };

    let mut table = SweepTable {
        axis: spec.axis.name().column().to_string(),
        axis_values,
        series,
        metadata: Vec::new(),
    };
    table.set_meta("tool", format!("xlink {}", env!("CARGO_PKG_VERSION")));
    table.set_meta("scenario", spec.base.kind.name());
    table.set_meta("time_window", describe_window(spec));
    table.set_meta("conventions", conventions(spec));
    table.set_meta(
        "max_abs_db_discrepancy",
        format_float(table.max_db_discrepancy()),
    );
    table.set_meta(
        "max_relative_interference_discrepancy",
        format_float(table.max_relative_power_discrepancy()),
    );
    if spec.base.kind == ScenarioKind::Coplanar {
        table.set_meta("visibility_rule_disagreements", disagreements.to_string());
    }
    Ok(table)
}

fn describe_window(spec: &SweepSpec) -> String {
    let unit = match spec.base.kind {
        ScenarioKind::Coplanar => "synodic periods",
        _ => "orbital periods",
    };
    let length = match spec.window {
        Window::DurationS(d) => format!("{} s", format_float(d)),
        Window::Periods(p) => format!("{} {unit}", format_float(p)),
    };
    format!("{length}; {} samples from t=0, end excluded", spec.samples)
}

fn conventions(spec: &SweepSpec) -> String {
    let scope = match spec.base.kind {
        ScenarioKind::Single => "oracle counts forward-side interferers",
        _ => "oracle counts interferers on the second orbit",
    };
    let mut c = vec![
        "sir_db=10log10(signal/interference)".to_string(),
        "time average=mean signal/mean interference".to_string(),
        scope.to_string(),
        "beam edge excluded (1e-9 rad)".to_string(),
        "grazing links visible".to_string(),
    ];
    if spec.base.kind == ScenarioKind::Coplanar {
        let v = match spec.visibility {
            Visibility::Angular => "angular",
            Visibility::Exact => "exact",
        };
        c.push(format!("coplanar visibility={v}"));
    }
    c.join("; ")
}

// ---- figure sweeps ----

fn check_counts(values: &[usize]) -> Result<()> {
    if values.iter().any(|n| !(3..=10_000).contains(n)) {
        return Err(Error::config(
            "num_satellites",
            "counts must lie in [3, 10⁴]",
        ));
    }
    Ok(())
}

fn check_beamwidths(values: &[f64]) -> Result<()> {
    if values
        .iter()
        .any(|a| !(*a > 0.0 && *a <= std::f64::consts::PI))
    {
        return Err(Error::config("beamwidth", "beamwidths must lie in (0, π]"));
    }
    Ok(())
}

fn first<T: Copy>(values: &[T], what: &str) -> Result<T> {
    values
        .first()
        .copied()
        .ok_or_else(|| Error::config(what, "at least one value is needed"))
}

/// Mean SIR against the receiver's own orbit versus the satellite count.
pub fn sweep_single_orbit(
    ctx: &SweepContext,
    h_km: f64,
    n_values: &[usize],
    alphas: &[f64],
) -> Result<SweepTable> {
    check_counts(n_values)?;
    check_beamwidths(alphas)?;
    let base = Scenario::new(
        ScenarioKind::Single,
        ctx.earth,
        vec![OrbitSpec::equatorial(
            h_km,
            first(n_values, "num_satellites")?,
        )?],
        ctx.radio.with_beamwidth(first(alphas, "beamwidth")?)?,
    )?;
    run_spec(&SweepSpec {
        base,
        axis: Axis::NumSatellites(n_values.to_vec()),
        series: SeriesSpec::grid(&[], alphas),
        window: Window::Periods(1.0),
        samples: ctx.samples,
        visibility: ctx.visibility,
    })
}

fn coplanar_base(
    ctx: &SweepContext,
    h_km: f64,
    h_c_km: f64,
    n: usize,
    alpha: f64,
) -> Result<Scenario> {
    Ok(Scenario::new(
        ScenarioKind::Coplanar,
        ctx.earth,
        vec![
            OrbitSpec::equatorial(h_km, n)?,
            OrbitSpec::equatorial(h_c_km, n)?,
        ],
        ctx.radio.with_beamwidth(alpha)?,
    )?)
}

/// SIR trace against a co-planar orbit, one curve per `(N, α)` with
/// `N = N_c`.
pub fn sweep_coplanar_time(
    ctx: &SweepContext,
    h_km: f64,
    h_c_km: f64,
    n_values: &[usize],
    alphas: &[f64],
    window: Window,
) -> Result<SweepTable> {
    check_counts(n_values)?;
    check_beamwidths(alphas)?;
    let base = coplanar_base(
        ctx,
        h_km,
        h_c_km,
        first(n_values, "num_satellites")?,
        first(alphas, "beamwidth")?,
    )?;
    run_spec(&SweepSpec {
        base,
        axis: Axis::Time,
        series: SeriesSpec::grid(n_values, alphas),
        window,
        samples: ctx.samples,
        visibility: ctx.visibility,
    })
}

/// Time-averaged interference from a co-planar orbit versus its altitude
/// above the receiver's orbit, averaged over one synodic period per row.
pub fn sweep_coplanar_separation(
    ctx: &SweepContext,
    h_km: f64,
    separations_km: &[f64],
    n_values: &[usize],
    alpha: f64,
) -> Result<SweepTable> {
    check_counts(n_values)?;
    check_beamwidths(&[alpha])?;
    if separations_km.iter().any(|s| s.is_nan() || *s <= 0.0) {
        return Err(Error::config(
            "separation_km",
            "separations must be positive",
        ));
    }
    let base = coplanar_base(
        ctx,
        h_km,
        h_km + first(separations_km, "separation_km")?,
        first(n_values, "num_satellites")?,
        alpha,
    )?;
    run_spec(&SweepSpec {
        base,
        axis: Axis::SeparationKm(separations_km.to_vec()),
        series: SeriesSpec::grid(n_values, &[]),
        window: Window::Periods(1.0),
        samples: ctx.samples,
        visibility: ctx.visibility,
    })
}

fn shifted_base(ctx: &SweepContext, shell: &Shell, n: usize, alpha: f64) -> Result<Scenario> {
    let o = |raan| OrbitSpec::new(shell.altitude_km, shell.inclination_rad, raan, n, 0.0);
    Ok(Scenario::new(
        ScenarioKind::Shifted,
        ctx.earth,
        vec![o(0.0)?, o(shell.delta_omega_rad)?],
        ctx.radio.with_beamwidth(alpha)?,
    )?)
}

/// SIR trace against a RAAN-shifted orbit over `periods` orbital periods.
/// `ctx.samples` is the total number of samples.
pub fn sweep_shifted_time(
    ctx: &SweepContext,
    shell: &Shell,
    n_values: &[usize],
    alphas: &[f64],
    periods: f64,
) -> Result<SweepTable> {
    check_counts(n_values)?;
    check_beamwidths(alphas)?;
    if periods.is_nan() || periods < 1.0 {
        return Err(Error::config(
            "time.periods",
            "at least one period is needed",
        ));
    }
    let base = shifted_base(
        ctx,
        shell,
        first(n_values, "num_satellites")?,
        first(alphas, "beamwidth")?,
    )?;
    run_spec(&SweepSpec {
        base,
        axis: Axis::Time,
        series: SeriesSpec::grid(n_values, alphas),
        window: Window::Periods(periods),
        samples: ctx.samples,
        visibility: ctx.visibility,
    })
}

/// Time-averaged SIR against a RAAN-shifted orbit versus beamwidth.
pub fn sweep_shifted_beamwidth(
    ctx: &SweepContext,
    shell: &Shell,
    alphas: &[f64],
    n_values: &[usize],
) -> Result<SweepTable> {
    check_counts(n_values)?;
    check_beamwidths(alphas)?;
    let base = shifted_base(
        ctx,
        shell,
        first(n_values, "num_satellites")?,
        first(alphas, "beamwidth")?,
    )?;
    run_spec(&SweepSpec {
        base,
        axis: Axis::Beamwidth(alphas.to_vec()),
        series: SeriesSpec::grid(n_values, &[]),
        window: Window::Periods(1.0),
        samples: ctx.samples,
        visibility: ctx.visibility,
    })
}

/// Time-averaged SIR against a RAAN-shifted orbit versus inclination.
pub fn sweep_shifted_inclination(
    ctx: &SweepContext,
    h_km: f64,
    delta_omega_rad: f64,
    gammas: &[f64],
    alphas: &[f64],
    n_values: &[usize],
) -> Result<SweepTable> {
    check_counts(n_values)?;
    check_beamwidths(alphas)?;
    if gammas
        .iter()
        .any(|g| !(*g > 0.0 && *g <= std::f64::consts::FRAC_PI_2))
    {
        return Err(Error::config(
            "inclination",
            "inclinations must lie in (0°, 90°]",
        ));
    }
    let shell = Shell {
        altitude_km: h_km,
        inclination_rad: first(gammas, "inclination")?,
        delta_omega_rad,
    };
    let base = shifted_base(
        ctx,
        &shell,
        first(n_values, "num_satellites")?,
        first(alphas, "beamwidth")?,
    )?;
    run_spec(&SweepSpec {
        base,
        axis: Axis::Inclination(gammas.to_vec()),
        series: SeriesSpec::grid(n_values, alphas),
        window: Window::Periods(1.0),
        samples: ctx.samples,
        visibility: ctx.visibility,
    })
}

pub fn config_window(config: &ScenarioConfig) -> Window {
    match (config.time.duration_s, config.time.periods) {
        (Some(d), _) => Window::DurationS(d),
        (None, Some(p)) => Window::Periods(p),
        (None, None) => Window::Periods(1.0),
    }
}

/// Builds the sweep described by a config file.
pub fn spec_from_config(config: &ScenarioConfig) -> Result<SweepSpec> {
    let sweep = config
        .sweep
        .as_ref()
        .ok_or_else(|| Error::config("sweep", "missing"))?;
    let v = &sweep.values;
    let axis = match sweep.axis {
        AxisName::NumSatellites => Axis::NumSatellites(v.iter().map(|x| *x as usize).collect()),
        AxisName::Time => Axis::Time,
        AxisName::SeparationKm => Axis::SeparationKm(v.clone()),
        AxisName::Beamwidth => Axis::Beamwidth(v.clone()),
        AxisName::Inclination => Axis::Inclination(v.clone()),
    };
    let window = config_window(config);
    Ok(SweepSpec {
        base: config.to_scenario()?,
        axis,
        series: SeriesSpec::grid(&sweep.series.num_satellites, &sweep.series.beamwidth),
        window,
        samples: config.time.samples,
        visibility: config.model.coplanar_visibility.into(),
    })
}

/// Runs the sweep of a config and records its provenance in the metadata.
pub fn run_sweep(config: &ScenarioConfig) -> Result<SweepTable> {
    let mut table = run_spec(&spec_from_config(config)?)?;
    let mut meta = vec![
        ("config_sha256".to_string(), config.hash()),
        ("seed".to_string(), config.seed.to_string()),
        ("assumed".to_string(), config.assumed.join(", ")),
    ];
    meta.append(&mut table.metadata);
    table.metadata = meta;
    Ok(table)
}
