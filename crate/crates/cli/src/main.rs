//! Command-line front end for the spectrum laboratory.
//!
//! Commands: spectrum, phase, diagram, testfn, verify, simulate,
//! fit-beta, validate-red. Configuration comes from built-in defaults, an
//! optional `key=value` file (`--config`), command-line flags, and the
//! seed-override environment variable `SLELAB_SEED`, in that order.
//!
//! Exit codes: 0 success, 1 statistical or runtime failure, 2 invalid
//! usage or precondition, 3 sub-solution construction failure, 4 I/O
//! error.

mod commands;
mod config;
mod report;
mod svg;

use config::{CliError, RunConfig};
use std::process::ExitCode;

const USAGE: &str = "usage: slelab <command> [flags]

commands:
  spectrum      exponent roots, spectrum values, phase and validity at a point
  phase         region / validity / proof-zone / wedge classification
  diagram       transition curves, landmarks and a region raster (SVG + CSV)
  testfn        build a test-function profile and report its certificates
  verify        construct a sub-solution and verify its sign on an annulus
  simulate      Monte-Carlo moment estimate at a disk point
  fit-beta      integral-means slope fit over a radius ladder
  validate-red  Monte-Carlo against the exact red-parabola moment

flags (each command uses the relevant subset):
  --kappa X --p X --q X --m N --gamma X --z-re X --z-im X
  --seed N --dt X --t-cap X --samples N --angles N --radii a,b,c
  --grid N --r0 X --eta X --delta X --window pmin,pmax,qmin,qmax
  --resolution N --mode phase|validity --super --allow-fail N
  --threads N --config FILE --out PATH
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help" {
        print!("{USAGE}");
        return ExitCode::from(if args.is_empty() { 2 } else { 0 });
    }
    let command = args[0].clone();
    let config = match RunConfig::from_args(&args[1..]) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("slelab: {e}");
            return ExitCode::from(e.code());
        }
    };
    if let Some(threads) = config.threads {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let result = match command.as_str() {
        "spectrum" => commands::spectrum::run(&config),
        "phase" => commands::phase::run(&config),
        "diagram" => commands::diagram::run(&config),
        "testfn" => commands::testfn::run(&config),
        "verify" => commands::verify::run(&config),
        "simulate" => commands::simulate::run(&config),
        "fit-beta" => commands::fit::run(&config),
        "validate-red" => commands::validate::run(&config),
        other => Err(CliError::Usage(format!("unknown command `{other}`"))),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("slelab {command}: {e}");
            ExitCode::from(e.code())
        }
    }
}
