use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use xlink_experiments::figures::FIGURES;
use xlink_experiments::runs::{analyze, monte_carlo, simulate_csv};
use xlink_experiments::table::format_float;
use xlink_experiments::{parse_config, run_sweep, write_csv, Error, Result, ScenarioConfig};

/// Largest analytic-vs-oracle SIR gap, in dB, that `verify` accepts.
const VERIFY_TOLERANCE_DB: f64 = 1e-6;

#[derive(Parser)]
#[command(
    name = "xlink",
    version,
    about = "Cross-link interference between LEO satellites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form model once
    Analyze {
        #[command(flatten)]
        common: Common,
        /// Evaluation time in seconds
        #[arg(long, default_value_t = 0.0)]
        time: f64,
    },
    /// Run the geometric simulator over the configured time window
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Also average over this many random initial offsets
        #[arg(long)]
        draws: Option<usize>,
    },
    /// Run the configured sweep and write its CSV
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Compare the closed form against the simulator along the configured sweep
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Regenerate every figure CSV into a directory
    Figures {
        /// Output directory
        #[arg(long, default_value = "figures")]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Samples per time window, overriding each figure's setting
        #[arg(long)]
        samples: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: PathBuf,
    /// Output path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
}

impl Common {
    fn load(&self) -> Result<ScenarioConfig> {
        let text = std::fs::read_to_string(&self.config).map_err(|e| Error::io(&self.config, e))?;
        let config = parse_config(&text)?;
        override_config(config, self.seed, self.samples)
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path, e)),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn override_config(
    mut config: ScenarioConfig,
    seed: Option<u64>,
    samples: Option<usize>,
) -> Result<ScenarioConfig> {
    if let Some(seed) = seed {
        config.seed = seed;
    }
    if let Some(samples) = samples {
        config.time.samples = samples;
    }
    config.validate()?;
    Ok(config)
}

fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var("XLINK_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Error::config("XLINK_THREADS", format!("not a thread count: {value:?}")))?;
    // 0 keeps rayon's automatic choice
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Error::config("XLINK_THREADS", e.to_string()))
}

fn run(cli: Cli) -> Result<bool> {
    init_threads()?;
    match cli.command {
        Command::Analyze { common, time } => {
            let config = common.load()?;
            common.emit(&analyze(&config, time)?.report(&config))?;
        }
        Command::Simulate { common, draws } => {
            let config = common.load()?;
            common.emit(&simulate_csv(&config)?)?;
            if let Some(draws) = draws {
                let mc = monte_carlo(&config, draws)?;
                eprintln!(
                    "monte carlo: draws={} mean_interference_w={} std_error_w={} sir_db={}",
                    mc.draws,
                    format_float(mc.mean_interference_w),
                    format_float(mc.standard_error_w()),
                    format_float(10.0 * mc.sir_linear.log10()),
                );
            }
        }
        Command::Sweep { common } => {
            let config = common.load()?;
            let table = run_sweep(&config)?;
            match &common.out {
                Some(path) => write_csv(&table, path)?,
                None => print!("{}", table.to_csv_string()?),
            }
        }
        Command::Verify { common } => {
            let config = common.load()?;
            let table = run_sweep(&config)?;
            let db = table.max_db_discrepancy();
            let rel = table.max_relative_power_discrepancy();
            let ok = db < VERIFY_TOLERANCE_DB;
            let report = format!(
                "scenario: {}\nrows: {}\nseries: {}\nmax_abs_db_discrepancy: {}\n\
                 max_relative_interference_discrepancy: {}\ntolerance_db: {}\nresult: {}\n",
                config.scenario.name(),
                table.axis_values.len(),
                table.series.len(),
                format_float(db),
                format_float(rel),
                format_float(VERIFY_TOLERANCE_DB),
                if ok { "PASS" } else { "FAIL" },
            );
            common.emit(&report)?;
            return Ok(ok);
        }
        Command::Figures { out, seed, samples } => {
            std::fs::create_dir_all(&out).map_err(|e| Error::io(&out, e))?;
            for (name, text) in FIGURES {
                let config = override_config(parse_config(text)?, seed, samples)?;
                let file = config
                    .output
                    .clone()
                    .unwrap_or_else(|| format!("{name}.csv"));
                let path: &Path = &out.join(file);
                write_csv(&run_sweep(&config)?, path)?;
                eprintln!("wrote {}", path.display());
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
