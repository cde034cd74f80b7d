//! Single evaluations and oracle traces behind the `analyze` and `simulate`
//! commands.

use xlink_core::link::to_db;
use xlink_oracle::{monte_carlo_average, time_sweep, MonteCarloStats};

use crate::config::ScenarioConfig;
use crate::error::{Error, Result};
use crate::sweeps::{analytic_sample, config_window, grid_for, oracle_sample};
use crate::table::format_float;

/// Closed-form values for the config's scenario at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub time_s: f64,
    pub signal_w: f64,
    pub interference_w: f64,
    pub sir_linear: f64,
}

impl Evaluation {
    pub fn report(&self, config: &ScenarioConfig) -> String {
        let sir = if self.sir_linear.is_infinite() {
            "inf (no interference)".to_string()
        } else {
            format_float(to_db(self.sir_linear))
        };
        format!(
            "scenario: {}\ntime_s: {}\nsignal_w: {}\ninterference_w: {}\nsir_db: {sir}\n",
            config.scenario.name(),
            format_float(self.time_s),
            format_float(self.signal_w),
            format_float(self.interference_w),
        )
    }
}

pub fn analyze(config: &ScenarioConfig, time_s: f64) -> Result<Evaluation> {
    if !time_s.is_finite() {
        return Err(Error::config("time", "must be finite"));
    }
    let sc = config.to_scenario()?;
    let (s, _) = analytic_sample(&sc, time_s, config.model.coplanar_visibility.into())?;
    Ok(Evaluation {
        time_s,
        signal_w: s.signal_w,
        interference_w: s.interference_w,
        sir_linear: s.sir_linear,
    })
}

/// Oracle time trace over the config's window as CSV text. Besides the
/// totals, each row lists the interference covered by the closed form and
/// the interfering satellites as `orbit:index` pairs.
pub fn simulate_csv(config: &ScenarioConfig) -> Result<String> {
    let sc = config.to_scenario()?;
    let grid = grid_for(&sc, config_window(config), config.time.samples)?;
    let samples = time_sweep(&sc, &grid)?;
    let mut out = format!(
        "# config_sha256: {}\n# seed: {}\n# scenario: {}\n# tool: xlink {}\n",
        config.hash(),
        config.seed,
        sc.kind.name(),
        env!("CARGO_PKG_VERSION")
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "time_s",
        "signal_w",
        "interference_w",
        "sir_db",
        "modelled_interference_w",
        "interferers",
    ])?;
    for s in &samples {
        let modelled = oracle_sample(&sc, s);
        let sir = if s.sir_linear.is_infinite() {
            String::new()
        } else {
            format_float(to_db(s.sir_linear))
        };
        let ids: Vec<String> = s
            .interferer_ids()
            .iter()
            .map(|(o, j)| format!("{o}:{j}"))
            .collect();
        w.write_record([
            format_float(s.time_s),
            format_float(s.signal_w),
            format_float(s.interference_w),
            sir,
            format_float(modelled.interference_w),
            ids.join(" "),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::io("<csv buffer>", e.into_error()))?;
    out.push_str(std::str::from_utf8(&bytes).expect("csv output is UTF-8"));
    Ok(out)
}

/// Time averages over `draws` random initial offsets of the last orbit.
pub fn monte_carlo(config: &ScenarioConfig, draws: usize) -> Result<MonteCarloStats> {
    let sc = config.to_scenario()?;
    let grid = grid_for(&sc, config_window(config), config.time.samples)?;
    Ok(monte_carlo_average(&sc, &grid, draws, config.seed)?)
}
