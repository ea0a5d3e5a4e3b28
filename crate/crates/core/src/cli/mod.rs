//! Command-line front end.

pub mod config;
pub mod report;
pub mod run;

pub use config::{load_config, parse_config, ConfigError, RunConfig};
pub use report::Report;
pub use run::{cmd_census, cmd_check, run_census, CensusOutcome, CheckOutput};
