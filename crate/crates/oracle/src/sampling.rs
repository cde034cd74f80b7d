use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use xlink_core::{Error, Result, Scenario};

use crate::interference::{aggregate_interference, ratio, InterferenceSample};
use crate::propagate::{propagate, LinkAssignment};

/// `samples` uniform instants over `[start, start + duration)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub start_s: f64,
    pub duration_s: f64,
    pub samples: usize,
}

impl TimeGrid {
    pub fn new(start_s: f64, duration_s: f64, samples: usize) -> Result<Self> {
        if samples == 0 {
            return Err(Error::Domain {
                what: "time samples",
                requirement: "at least 1",
                value: 0.0,
            });
        }
        if !(start_s.is_finite() && duration_s.is_finite() && duration_s >= 0.0) {
            return Err(Error::Domain {
                what: "time window",
                requirement: "finite, non-negative duration",
                value: duration_s,
            });
        }
        Ok(TimeGrid {
            start_s,
            duration_s,
            samples,
        })
    }

    /// A single instant.
    pub fn instant(t_s: f64) -> Self {
        TimeGrid {
            start_s: t_s,
            duration_s: 0.0,
            samples: 1,
        }
    }

    pub fn step_s(&self) -> f64 {
        self.duration_s / self.samples as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        self.start_s + self.duration_s * k as f64 / self.samples as f64
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.samples).map(|k| self.time(k)).collect()
    }
}

/// One sample per grid point for the reference link (receiver 0 of orbit 0
/// served by satellite 1). Points are evaluated in parallel but returned in
/// grid order.
pub fn time_sweep(scenario: &Scenario, grid: &TimeGrid) -> Result<Vec<InterferenceSample>> {
    scenario.validate()?;
    (0..grid.samples)
        .into_par_iter()
        .map(|k| sample_at(scenario, grid.time(k)))
        .collect()
}

fn sample_at(scenario: &Scenario, t_s: f64) -> Result<InterferenceSample> {
    let states = propagate(scenario, t_s)?;
    let link = LinkAssignment::reference(&states)?;
    aggregate_interference(t_s, &states, &link, &scenario.radio, &scenario.earth)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeAverage {
    pub mean_signal_w: f64,
    pub mean_interference_w: f64,
    /// Mean signal over mean interference.
    pub sir_linear: f64,
}

pub fn time_average(samples: &[InterferenceSample]) -> Result<TimeAverage> {
    if samples.is_empty() {
        return Err(Error::Domain {
            what: "sample count",
            requirement: "at least 1",
            value: 0.0,
        });
    }
    let n = samples.len() as f64;
    let mean_signal_w = samples.iter().map(|s| s.signal_w).sum::<f64>() / n;
    let mean_interference_w = samples.iter().map(|s| s.interference_w).sum::<f64>() / n;
    Ok(TimeAverage {
        mean_signal_w,
        mean_interference_w,
        sir_linear: ratio(mean_signal_w, mean_interference_w),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloStats {
    pub draws: usize,
    /// Initial offsets used, one per draw.
    pub offsets_rad: Vec<f64>,
    pub mean_interference_w: f64,
    /// Sample standard deviation across draws (0 for a single draw).
    pub std_interference_w: f64,
    pub mean_signal_w: f64,
    /// Pooled ratio of mean signal to mean interference.
    pub sir_linear: f64,
}

impl MonteCarloStats {
    pub fn standard_error_w(&self) -> f64 {
        self.std_interference_w / (self.draws as f64).sqrt()
    }
}

/// Averages [`time_average`] over random initial offsets `Δβ₀`, drawn
/// uniformly over one angular slot `[0, 2π/N)` of the interfering orbit (the
/// only orbit for single-orbit scenarios).
///
/// Draw `k` uses its own ChaCha stream derived from `seed`, so results do not
/// depend on evaluation order or thread count.
pub fn monte_carlo_average(
    scenario: &Scenario,
    grid: &TimeGrid,
    draws: usize,
    seed: u64,
) -> Result<MonteCarloStats> {
    if draws == 0 {
        return Err(Error::Domain {
            what: "draw count",
            requirement: "at least 1",
            value: 0.0,
        });
    }
    scenario.validate()?;
    let target = scenario.orbits.len() - 1;
    let slot = TAU / scenario.orbits[target].num_satellites as f64;

    let results = (0..draws)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let offset = rng.gen_range(0.0..slot);
            let mut drawn = scenario.clone();
            drawn.orbits[target].phase_offset_rad += offset;
            let avg = time_average(&time_sweep(&drawn, grid)?)?;
            Ok((offset, avg))
        })
        .collect::<Result<Vec<_>>>()?;

    let n = draws as f64;
    let mean_interference_w = results
        .iter()
        .map(|(_, a)| a.mean_interference_w)
        .sum::<f64>()
        / n;
    let mean_signal_w = results.iter().map(|(_, a)| a.mean_signal_w).sum::<f64>() / n;
    let var = if draws > 1 {
        results
            .iter()
            .map(|(_, a)| (a.mean_interference_w - mean_interference_w).powi(2))
            .sum::<f64>()
            / (n - 1.0)
    } else {
        0.0
    };
    Ok(MonteCarloStats {
        draws,
        offsets_rad: results.iter().map(|(o, _)| *o).collect(),
        mean_interference_w,
        std_interference_w: var.sqrt(),
        mean_signal_w,
        sir_linear: ratio(mean_signal_w, mean_interference_w),
    })
}
