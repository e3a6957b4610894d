//! `slelab phase`: every classifier at one point.

use super::{kappa_of, point_of};
use crate::config::{CliError, RunConfig};
use crate::report::{emit, fmt_f64, header, Csv};
use slelab_core::phase::{
    classify_conjecture, classify_validity, partition_eie, proof_zone, MFoldTransform,
};

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    let mut pt = point_of(config)?;
    // with --m the point is classified through the m-fold transform
    if let Some(m) = config.m {
        let t = MFoldTransform::new(m).map_err(|e| CliError::Usage(e.to_string()))?;
        pt = t.forward(pt);
    }
    let region = classify_conjecture(kappa, pt).map_err(|e| CliError::Usage(e.to_string()))?;
    let validity = classify_validity(kappa, pt).map_err(|e| CliError::Usage(e.to_string()))?;
    let zone = proof_zone(kappa, pt);
    let wedge = partition_eie(kappa, pt);

    let mut text = header("phase", config);
    text.push_str(&format!(
        "point=({}, {}) region={} validity={} zone={} wedge={}\n",
        fmt_f64(pt.p),
        fmt_f64(pt.q),
        region.name(),
        validity.name(),
        zone.name(),
        wedge.name()
    ));
    print!("{text}");

    if config.out.is_some() {
        let mut csv = Csv::new(
            "phase",
            config,
            &["kappa", "p", "q", "region", "validity", "zone", "wedge"],
        );
        csv.row(&[
            fmt_f64(config.kappa),
            fmt_f64(pt.p),
            fmt_f64(pt.q),
            region.name().into(),
            validity.name().into(),
            zone.name().into(),
            wedge.name().into(),
        ]);
        emit(&config.out, &csv.into_string())?;
    }
    Ok(())
}
