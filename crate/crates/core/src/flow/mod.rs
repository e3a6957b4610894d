//! Reverse radial Loewner flow Monte-Carlo.
//!
//! The time-T map of the reverse flow, renormalized by `e^T`, has the law
//! of the whole-plane map at time zero; mixed moments of the latter are
//! therefore estimated by integrating the reverse flow to stabilization.
//! Sample streams are deterministic functions of `(seed, stream index)`,
//! so estimates are bitwise reproducible for any number of worker
//! threads.

mod driving;
mod moments;
mod stepper;

pub use driving::{sample_driving, BrownianSource, DrivingPath, DrivingStream, FrozenDriving};
pub use moments::{
    estimate_moment, fit_beta, pairwise_sum, validate_red_parabola, BetaFit, MomentEstimate,
    RedCheckRow, RedParabolaReport,
};
pub use stepper::{evolve_reverse_flow, evolve_to_horizon, FlowSample};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlowError {
    #[error("starting point must satisfy 0 < |z| < 1, got |z| = {0}")]
    InvalidStart(f64),
    #[error("step collapse at t = {t}: refinement depth exhausted near the driving singularity")]
    StepCollapse { t: f64 },
    #[error("renormalized flow did not stabilize within the horizon cap t = {t_cap}")]
    NonConvergence { t_cap: f64 },
    #[error("modulus monotonicity violated at checkpoint t = {t}")]
    MonotonicityViolation { t: f64 },
    #[error("{failed} of {total} samples failed, beyond the budget of {budget}")]
    BudgetExceeded {
        failed: usize,
        total: usize,
        budget: f64,
    },
    #[error("invalid simulation configuration: {0}")]
    InvalidConfig(String),
}

/// Integration controls. The defaults match the validation suite:
/// `dt = 1e-3`, horizon cap 30, stabilization probe `1e-6` over two
/// consecutive unit-time checkpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Base time step of the driving grid.
    pub dt: f64,
    /// Horizon cap; the flow normally stops earlier via the probe.
    pub t_cap: f64,
    /// Stabilization tolerance on successive renormalized values,
    /// relative to their magnitude.
    pub probe_tol: f64,
    /// Consecutive stable checkpoints required.
    pub probe_window: u32,
    /// A step is bisected while `dt > guard |f - lambda|^2`.
    pub guard: f64,
    /// Maximum bisection depth before a step collapse is reported.
    pub max_depth: u32,
    /// Largest tolerated fraction of failed samples in an estimate.
    pub failure_budget: f64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            dt: 1e-3,
            t_cap: 30.0,
            probe_tol: 1e-6,
            probe_window: 2,
            guard: 0.5,
            max_depth: 24,
            failure_budget: 1e-3,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), FlowError> {
        if !(self.dt > 0.0 && self.t_cap > 0.0 && self.dt <= self.t_cap) {
            return Err(FlowError::InvalidConfig(format!(
                "need 0 < dt <= t_cap, got dt = {}, t_cap = {}",
                self.dt, self.t_cap
            )));
        }
        if !(self.probe_tol > 0.0 && self.guard > 0.0) {
            return Err(FlowError::InvalidConfig(
                "probe_tol and guard must be positive".into(),
            ));
        }
        Ok(())
    }
}
