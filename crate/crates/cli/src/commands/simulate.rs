//! `slelab simulate`: Monte-Carlo estimate of the mixed moment at one
//! disk point.

use super::{kappa_of, point_of, require};
use crate::config::{CliError, RunConfig};
use crate::report::{emit, fmt_f64, header, Csv};
use num_complex::Complex64;
use slelab_core::flow::{estimate_moment, FlowError, SimConfig};

pub fn sim_config(config: &RunConfig) -> SimConfig {
    SimConfig {
        dt: config.dt,
        t_cap: config.t_cap,
        ..SimConfig::default()
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    let pt = point_of(config)?;
    let z = Complex64::new(config.z_re, config.z_im);
    require(config.samples >= 100, "simulate needs --samples >= 100")?;
    let sim = sim_config(config);
    sim.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let est =
        estimate_moment(kappa, pt, z, config.samples, &sim, config.seed, 0).map_err(
            |e| match e {
                FlowError::InvalidConfig(_) | FlowError::InvalidStart(_) => {
                    CliError::Usage(e.to_string())
                }
                other => CliError::Runtime(other.to_string()),
            },
        )?;

    let mut text = header("simulate", config);
    text.push_str(&format!(
        "mean={} stderr={} n={} failed={}\n",
        fmt_f64(est.mean),
        fmt_f64(est.stderr),
        est.n,
        est.failed
    ));
    print!("{text}");

    if config.out.is_some() {
        let mut csv = Csv::new(
            "simulate",
            config,
            &["kappa", "p", "q", "z_re", "z_im", "n", "mean", "stderr"],
        );
        csv.row(&[
            fmt_f64(config.kappa),
            fmt_f64(pt.p),
            fmt_f64(pt.q),
            fmt_f64(z.re),
            fmt_f64(z.im),
            est.n.to_string(),
            fmt_f64(est.mean),
            fmt_f64(est.stderr),
        ]);
        emit(&config.out, &csv.into_string())?;
    }
    Ok(())
}
