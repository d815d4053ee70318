//! Front end for the `modone` experiments: flat config files, experiment
//! dispatch and CSV/JSON emission.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;

pub use config::Config;
pub use error::{CliError, CliResult};
pub use experiments::{run_experiment, EXPERIMENTS};
pub use output::{fmt_sig, Artifact, Format, Table};
