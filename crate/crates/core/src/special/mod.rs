//! Gauss hypergeometric machinery and the standard test-function
//! profiles.

mod gamma;
mod hyp2f1;
mod profile;

pub use gamma::{gamma_fn, ln_gamma_abs, reciprocal_gamma, GammaValue};
pub use hyp2f1::{gauss_2f1, Hyp2f1Series};
pub use profile::{
    build_test_profile, hyper_params, positivity_certificate, regularity_defect,
    regularity_defect_coeffs, G0Eval, HyperParams, Positivity, ProfileEvaluator, RegularityCase,
    TestProfile,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("c = {0} is a non-positive integer and the series does not terminate first")]
    CPole(f64),
    #[error("loss of precision: tail bound {bound} exceeds tolerance {tol}")]
    PrecisionLoss { bound: f64, tol: f64 },
    #[error("argument {0} outside supported range")]
    OutOfRange(f64),
    #[error("gamma_1 root pair does not exist at this moment point")]
    MissingRoots,
    #[error("exponent matches a terminating case in both slots but the moment point is off the case line by {0}")]
    AmbiguousCase(f64),
    #[error("no standard profile with leading exponent gamma: {0}")]
    NotRepresentable(String),
    #[error("degenerate profile: gamma equals its dual")]
    Degenerate,
    #[error("series and endpoint expansion disagree by {0} at the switch point")]
    EvaluationPrecision(f64),
}
