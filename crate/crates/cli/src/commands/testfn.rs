//! `slelab testfn`: build the standard profile at `--gamma`, report its
//! case, endpoint defect and positivity certificate, and emit the
//! serialized `key=value` block.

use super::{kappa_of, point_of};
use crate::config::{CliError, RunConfig};
use crate::report::{emit, fmt_f64, header};
use slelab_core::special::{build_test_profile, positivity_certificate, regularity_defect};

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let kappa = kappa_of(config)?;
    let pt = point_of(config)?;
    let gamma = config
        .gamma
        .ok_or_else(|| CliError::Usage("testfn needs --gamma".into()))?;
    let profile =
        build_test_profile(kappa, pt, gamma).map_err(|e| CliError::Usage(e.to_string()))?;
    let defect = regularity_defect(&profile);
    let positivity =
        positivity_certificate(&profile).map_err(|e| CliError::Runtime(e.to_string()))?;
    let ev = profile
        .evaluator()
        .map_err(|e| CliError::Runtime(e.to_string()))?;

    let mut text = header("testfn", config);
    text.push_str(&profile.to_kv());
    text.push_str(&format!("regularity_defect={}\n", fmt_f64(defect)));
    text.push_str(&format!("positivity={}\n", positivity.name()));
    text.push_str(&format!("g0_at_4={}\n", fmt_f64(ev.g4())));
    text.push_str(&format!("endpoint_log_slope={}\n", fmt_f64(ev.h4())));
    print!("{text}");
    if config.out.is_some() {
        emit(&config.out, &text)?;
    }
    Ok(())
}
