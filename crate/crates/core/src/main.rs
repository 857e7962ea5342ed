use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use mcfem::cli::{run_from_file, Experiment};
use mcfem::stability::Scheme;

/// Moving-conductor edge-element experiments.
#[derive(Parser, Debug)]
#[command(name = "mcfem", version)]
struct Args {
    /// analyze1d, analyze2d, solve1d, solve2d, pe-sweep, converge or avg3d-check
    experiment: Experiment,
    /// Flat key = value configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory; defaults to results/<experiment>.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict to one scheme: galerkin or stabilized.
    #[arg(long)]
    scheme: Option<Scheme>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out = args
        .out
        .unwrap_or_else(|| PathBuf::from("results").join(args.experiment.name()));
    match run_from_file(args.experiment, &args.config, &out, args.scheme) {
        Ok(art) => {
            for (name, _) in &art.files {
                println!("{}", out.join(name).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("mcfem: {e}");
            ExitCode::FAILURE
        }
    }
}
