//! `slelab spectrum`: exponent roots, spectrum values, conjectured phase
//! and validity at one moment point, plus the m-fold value when `--m` is
//! given.

use super::{kappa_of, opt_fmt, point_of};
use crate::config::{CliError, RunConfig};
use crate::report::{emit, fmt_f64, header, Csv};
use slelab_core::phase::{classify_conjecture, classify_validity, conjectured_beta, m_fold_beta};
use slelab_core::spectrum::{gamma_roots, spectrum_functions};

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    let pt = point_of(config)?;
    let roots = gamma_roots(kappa, pt);
    let bundle = spectrum_functions(kappa, pt);
    let region = classify_conjecture(kappa, pt).map_err(|e| CliError::Usage(e.to_string()))?;
    let validity = classify_validity(kappa, pt).map_err(|e| CliError::Usage(e.to_string()))?;
    let beta = conjectured_beta(kappa, pt).map_err(|e| CliError::Usage(e.to_string()))?;
    let m_fold = match config.m {
        Some(m) => Some(m_fold_beta(kappa, m, pt).map_err(|e| CliError::Usage(e.to_string()))?),
        None => None,
    };

    let mut text = header("spectrum", config);
    let fmt_opt = |v: Option<f64>| match v {
        Some(x) => fmt_f64(x),
        None => "absent".into(),
    };
    text.push_str(&format!(
        "gamma_0={} gamma_0_plus={} gamma_1_minus={} gamma_1={} gamma_lin={}\n",
        fmt_opt(roots.gamma_0),
        fmt_opt(roots.gamma_0_plus),
        fmt_opt(roots.gamma_1_minus),
        fmt_opt(roots.gamma_1),
        fmt_f64(roots.gamma_lin)
    ));
    text.push_str(&format!(
        "beta_tip={} beta_0={} beta_1={} beta_lin={}\n",
        fmt_opt(bundle.beta_tip),
        fmt_opt(bundle.beta_0),
        fmt_opt(bundle.beta_1),
        fmt_f64(bundle.beta_lin)
    ));
    text.push_str(&format!(
        "conjectured_beta={} region={} validity={}\n",
        fmt_f64(beta),
        region.name(),
        validity.name()
    ));
    if let Some(v) = m_fold {
        text.push_str(&format!("m_fold_beta={}\n", fmt_f64(v)));
    }
    print!("{text}");

    if config.out.is_some() {
        let mut csv = Csv::new(
            "spectrum",
            config,
            &[
                "kappa",
                "p",
                "q",
                "gamma_0",
                "gamma_0_plus",
                "gamma_1_minus",
                "gamma_1",
                "gamma_lin",
                "beta_tip",
                "beta_0",
                "beta_1",
                "beta_lin",
                "conjectured_beta",
                "region",
                "validity",
                "m_fold_beta",
            ],
        );
        csv.row(&[
            fmt_f64(config.kappa),
            fmt_f64(pt.p),
            fmt_f64(pt.q),
            opt_fmt(roots.gamma_0),
            opt_fmt(roots.gamma_0_plus),
            opt_fmt(roots.gamma_1_minus),
            opt_fmt(roots.gamma_1),
            fmt_f64(roots.gamma_lin),
            opt_fmt(bundle.beta_tip),
            opt_fmt(bundle.beta_0),
            opt_fmt(bundle.beta_1),
            fmt_f64(bundle.beta_lin),
            fmt_f64(beta),
            region.name().into(),
            validity.name().into(),
            opt_fmt(m_fold),
        ]);
        emit(&config.out, &csv.into_string())?;
    }
    Ok(())
}
