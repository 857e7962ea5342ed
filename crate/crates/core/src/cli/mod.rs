//! Experiment driver: configuration, problem setup, runners and output files.

pub mod config;
pub mod experiments;
pub mod output;
pub mod slab;

use std::path::Path;

pub use config::{Experiment, ExperimentConfig, OutflowBc, RawConfig, RefParams};
pub use experiments::run;
pub use output::Artifacts;

use crate::stability::Scheme;
use crate::Error;

/// Reads the configuration, runs the experiment and writes its files to `out`.
pub fn run_from_file(
    experiment: Experiment,
    config: &Path,
    out: &Path,
    scheme: Option<Scheme>,
) -> Result<Artifacts, Error> {
    let text = std::fs::read_to_string(config)?;
    let cfg = ExperimentConfig::resolve(experiment, &RawConfig::parse(&text)?, scheme)?;
    let art = run(&cfg)?;
    art.write_to(out)?;
    Ok(art)
}
