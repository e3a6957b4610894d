//! `slelab verify`: construct the zone sub-solution at the point and
//! verify its sign on the sampled annulus. The report embeds the full
//! `r, theta, value` scan with a one-line verdict footer. `--super`
//! instead reports super-solution feasibility.
//!
//! Exits 0 on a strictly negative report, 2 when the point is outside
//! the supported zones, 3 when the construction loop fails.

use super::{kappa_of, point_of};
use crate::config::{CliError, RunConfig};
use crate::report::{emit, fmt_f64, header, Csv};
use slelab_core::operator::{
    action_terms, choose_subsolution, supersolution_feasibility, AnnulusGrid, DiskPoint,
    LogModifiedTestFunction, OperatorError, SignVerdict, SupersolutionFeasibility,
};
use slelab_core::phase::proof_zone;

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    let pt = point_of(config)?;
    if config.supersolution {
        let verdict =
            supersolution_feasibility(kappa, pt).map_err(|e| CliError::Usage(e.to_string()))?;
        let mut text = header("verify", config);
        match verdict {
            SupersolutionFeasibility::Feasible { gamma_lo, gamma_hi } => {
                text.push_str(&format!(
                    "supersolution=Feasible gamma_lo={} gamma_hi={}\n",
                    fmt_f64(gamma_lo),
                    fmt_f64(gamma_hi)
                ));
            }
            SupersolutionFeasibility::Infeasible { gap } => {
                text.push_str(&format!("supersolution=Infeasible gap={}\n", fmt_f64(gap)));
            }
        }
        print!("{text}");
        if config.out.is_some() {
            emit(&config.out, &text)?;
        }
        return Ok(());
    }

    let grid = AnnulusGrid {
        r_lo: config.r0,
        r_hi: 1.0 - config.eta,
        n_r: config.grid,
        n_theta: config.grid,
    };
    let choice = choose_subsolution(kappa, pt, grid).map_err(|e| match e {
        OperatorError::UnsupportedZone => CliError::Usage(format!(
            "point is in {}, not a supported sub-solution zone",
            proof_zone(kappa, pt).name()
        )),
        OperatorError::ConstructionFailed { .. } => CliError::Construction(e.to_string()),
        other => CliError::Runtime(other.to_string()),
    })?;

    let mut text = header("verify", config);
    text.push_str(&format!(
        "zone={} gamma={} delta={} verdict={} min={} max={} min_phi={}\n",
        choice.zone.name(),
        fmt_f64(choice.gamma),
        fmt_f64(choice.delta),
        choice.report.verdict.name(),
        fmt_f64(choice.report.min),
        fmt_f64(choice.report.max),
        fmt_f64(choice.report.min_phi),
    ));
    print!("{text}");

    if config.out.is_some() {
        // embed the full scan
        let lf = LogModifiedTestFunction {
            base: choice
                .mixed
                .function()
                .map_err(|e| CliError::Runtime(e.to_string()))?,
            delta: choice.delta,
        };
        let mut csv = Csv::new("verify", config, &["r", "theta", "value"]);
        for i in 0..grid.n_r {
            for j in 0..grid.n_theta {
                let r = grid.r(i);
                let theta = grid.theta(j);
                let dp = DiskPoint::from_polar(r, theta)
                    .map_err(|e| CliError::Runtime(e.to_string()))?;
                let terms = action_terms(&lf, &dp).map_err(|e| CliError::Runtime(e.to_string()))?;
                csv.row(&[fmt_f64(r), fmt_f64(theta), fmt_f64(terms.ratio)]);
            }
        }
        csv.footer(&format!(
            "verdict={} min={} at=({},{}) max={} at=({},{}) min_phi={} zone={} gamma={} delta={}",
            choice.report.verdict.name(),
            fmt_f64(choice.report.min),
            fmt_f64(choice.report.min_at.0),
            fmt_f64(choice.report.min_at.1),
            fmt_f64(choice.report.max),
            fmt_f64(choice.report.max_at.0),
            fmt_f64(choice.report.max_at.1),
            fmt_f64(choice.report.min_phi),
            choice.zone.name(),
            fmt_f64(choice.gamma),
            fmt_f64(choice.delta),
        ));
        emit(&config.out, &csv.into_string())?;
    }
    if choice.report.verdict != SignVerdict::StrictlyNegative {
        return Err(CliError::Runtime(format!(
            "sign verification ended {}",
            choice.report.verdict.name()
        )));
    }
    Ok(())
}
