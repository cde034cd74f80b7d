//! Figure-reproduction sweeps over the closed-form models and the geometric
//! simulator, with JSON configuration and CSV output.

pub mod analysis;
pub mod config;
mod error;
pub mod figures;
pub mod runs;
pub mod sweeps;
pub mod table;

pub use config::{parse_config, ScenarioConfig};
pub use error::{Error, Result};
pub use sweeps::{run_sweep, SweepContext, SweepSpec};
pub use table::{read_csv, write_csv, Point, Series, SweepTable};
