//! `slelab fit-beta`: least-squares growth exponent of circle means over
//! a radius ladder; per-radius rows plus a summary row. Exits 1 when the
//! slope uncertainty exceeds the signal threshold.

use super::{kappa_of, point_of};
use crate::commands::simulate::sim_config;
use crate::config::{CliError, RunConfig};
use crate::report::{emit, fmt_f64, header, Csv};
use slelab_core::flow::{fit_beta, FlowError};

const STDERR_THRESHOLD: f64 = 0.25;

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    let pt = point_of(config)?;
    let sim = sim_config(config);
    let per_angle = (config.samples / config.angles.max(1)).max(1);
    let fit = fit_beta(
        kappa,
        pt,
        &config.radii,
        config.angles,
        per_angle,
        &sim,
        config.seed,
        STDERR_THRESHOLD,
    )
    .map_err(|e| match e {
        FlowError::InvalidConfig(_) => CliError::Usage(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    })?;

    let mut text = header("fit-beta", config);
    text.push_str(&format!(
        "slope={} slope_stderr={} intercept={} sufficient={}\n",
        fmt_f64(fit.slope),
        fmt_f64(fit.slope_stderr),
        fmt_f64(fit.intercept),
        fit.sufficient
    ));
    print!("{text}");

    if config.out.is_some() {
        let mut csv = Csv::new(
            "fit-beta",
            config,
            &["row", "radius", "circle_mean", "circle_stderr"],
        );
        for (i, r) in fit.radii.iter().enumerate() {
            csv.row(&[
                "radius".into(),
                fmt_f64(*r),
                fmt_f64(fit.circle_means[i]),
                fmt_f64(fit.circle_stderrs[i]),
            ]);
        }
        csv.row(&[
            "summary".into(),
            fmt_f64(fit.slope),
            fmt_f64(fit.slope_stderr),
            fmt_f64(fit.intercept),
        ]);
        emit(&config.out, &csv.into_string())?;
    }
    if !fit.sufficient {
        return Err(CliError::Runtime(format!(
            "insufficient signal: slope stderr {} beyond {STDERR_THRESHOLD}",
            fit.slope_stderr
        )));
    }
    Ok(())
}
