pub mod diagram;
pub mod fit;
pub mod phase;
pub mod simulate;
pub mod spectrum;
pub mod testfn;
pub mod validate;
pub mod verify;

use crate::config::{usage, CliError, RunConfig};
use slelab_core::spectrum::{Kappa, MomentPoint};

pub fn kappa_of(config: &RunConfig) -> Result<Kappa, CliError> {
    Kappa::new(config.kappa).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn point_of(config: &RunConfig) -> Result<MomentPoint, CliError> {
    MomentPoint::new(config.p, config.q).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn opt_fmt(v: Option<f64>) -> String {
    match v {
        Some(x) => slelab_core::csvfmt::fmt_f64(x),
        None => String::new(),
    }
}

pub fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        usage(msg)
    }
}
