//! Numerical action of the moment differential operator on test
//! functions, finite-difference verification, sign reports on annuli and
//! the zone-wise sub-solution construction.

mod action;
mod fd;
mod subsolution;

pub use action::{
    action_closed_form, action_log_modified, action_terms, ActionTerms, LogModifiedTestFunction,
    MixedProfile, TestFunction,
};
pub use fd::{apply_fd, check_resolution, potential, FdGrid, PolarMesh};
pub use subsolution::{
    choose_subsolution, exponent_of, verify_sign, AnnulusGrid, SignReport, SignVerdict,
    SubsolutionChoice,
};

// feasibility of super-solutions is pure exponent geometry and lives with
// the phase classifiers; re-exported here next to its sub-solution dual
pub use crate::phase::{supersolution_feasibility, SupersolutionFeasibility};

use crate::spectrum::MomentPoint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("operator is singular at z = 1 (u = 0)")]
    SingularPoint,
    #[error("disk point needs 0 <= r < 1, got {0}")]
    InvalidRadius(f64),
    #[error("profile inadmissible for the sign construction: {0}")]
    Inadmissible(String),
    #[error("sub-solution construction failed after {attempts} refinements in {zone}")]
    ConstructionFailed { zone: &'static str, attempts: u32 },
    #[error("point not in a supported proof zone")]
    UnsupportedZone,
    #[error("mesh too coarse: estimated truncation error {estimate} exceeds {tol}")]
    MeshTooCoarse { estimate: f64, tol: f64 },
    #[error("mixed profile components disagree on (kappa, p, q)")]
    MismatchedComponents,
    #[error(transparent)]
    Special(#[from] crate::special::SpecialError),
}

/// A point of the unit disk in polar and complex views, with
/// `u = |1 - z|^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    pub r: f64,
    pub theta: f64,
    pub u: f64,
}

impl DiskPoint {
    pub fn from_polar(r: f64, theta: f64) -> Result<Self, OperatorError> {
        if !(0.0..1.0).contains(&r) {
            return Err(OperatorError::InvalidRadius(r));
        }
        let u = 1.0 - 2.0 * r * theta.cos() + r * r;
        Ok(DiskPoint { r, theta, u })
    }

    /// `z zbar = r^2`.
    #[inline]
    pub fn zz(&self) -> f64 {
        self.r * self.r
    }

    /// `1 - z zbar`.
    #[inline]
    pub fn one_minus_zz(&self) -> f64 {
        1.0 - self.r * self.r
    }

    pub fn z(&self) -> num_complex::Complex64 {
        num_complex::Complex64::from_polar(self.r, self.theta)
    }
}

/// Exact singular solution on the red parabola:
/// `(1 - z zbar)^(-kappa gamma^2 / 2) |1 - z|^(2 gamma)` evaluated at a
/// disk point. The moment point is implied by the curve parameter.
pub fn red_parabola_solution(kappa: crate::spectrum::Kappa, gamma: f64, pt: &DiskPoint) -> f64 {
    let k = kappa.get();
    pt.one_minus_zz().powf(-0.5 * k * gamma * gamma) * pt.u.powf(gamma)
}

/// Moment point of the red parabola at `gamma` (curve coordinates).
pub fn red_moment_point(kappa: crate::spectrum::Kappa, gamma: f64) -> MomentPoint {
    let cp = crate::phase::red_point(kappa, gamma);
    MomentPoint { p: cp.p, q: cp.q }
}
