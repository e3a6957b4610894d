//! Adaptive Heun integration of the reverse radial flow in renormalized
//! variables.
//!
//! The raw flow `df/dt = f (f + lambda)/(f - lambda)` contracts like
//! `e^-t`, so integrating it directly and multiplying by `e^t` at the end
//! turns the scheme's decay-rate bias into a linear drift of the
//! renormalized value. Instead the stepper evolves
//!
//! ```text
//! v = e^t f,                dv/dt = 2 e^-t v^2 / (e^-t v - lambda)
//! M = log f' + t,           dM/dt = 2 f (f - 2 lambda)/(f - lambda)^2
//! ```
//!
//! whose right sides vanish exponentially; `v` and `M` then stabilize to
//! the whole-plane values in law. A step is bisected (with
//! Brownian-bridge refinement of the driving, keeping the path one
//! consistent realization) while `dt > guard |f - lambda|^2`, since the
//! right side stiffens near the driving point.

use super::{BrownianSource, FlowError, SimConfig};
use crate::spectrum::Kappa;
use num_complex::Complex64;

/// One integrated realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowSample {
    pub z: Complex64,
    /// `f_T(z)` at the stopping time.
    pub f_tilde: Complex64,
    /// `log f_T'(z)`.
    pub log_deriv: Complex64,
    /// `e^T f_T(z)`, the whole-plane value in law.
    pub renormalized: Complex64,
    /// `log` of the renormalized derivative, `log f_T' + T`.
    pub renorm_log_deriv: Complex64,
    pub t_final: f64,
    pub converged: bool,
}

/// Right side in renormalized variables; `scale = e^-t`.
#[inline]
fn rhs(scale: f64, v: Complex64, lambda: Complex64) -> (Complex64, Complex64) {
    let f = scale * v;
    let d = f - lambda;
    let dv = 2.0 * scale * v * v / d;
    let dm = 2.0 * f * (f - 2.0 * lambda) / (d * d);
    (dv, dm)
}

struct Stepper<'a, S: BrownianSource> {
    source: &'a mut S,
    sqrt_kappa: f64,
    guard: f64,
    max_depth: u32,
}

impl<S: BrownianSource> Stepper<'_, S> {
    #[inline]
    fn lambda(&self, b: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.sqrt_kappa * b)
    }

    /// Heun update over `[t, t + h]` given precomputed endpoint scales
    /// and driving values. `None` when the predictor would jump across
    /// the singularity and the step must be refined.
    #[inline]
    #[allow(clippy::too_many_arguments)]
    fn heun(
        &self,
        v: Complex64,
        m: Complex64,
        h: f64,
        s0: f64,
        lam0: Complex64,
        s1: f64,
        lam1: Complex64,
        d0: f64,
    ) -> Option<(Complex64, Complex64)> {
        let (k1v, k1m) = rhs(s0, v, lam0);
        let ve = v + h * k1v;
        if (s1 * ve - lam1).norm_sqr() < 0.25 * d0 {
            return None;
        }
        let (k2v, k2m) = rhs(s1, ve, lam1);
        Some((v + 0.5 * h * (k1v + k2v), m + 0.5 * h * (k1m + k2m)))
    }

    /// Refining path: advance over `[t, t + h]` with displacement `db`,
    /// bisecting the step and the Brownian increment as needed.
    #[allow(clippy::too_many_arguments)]
    fn step_refined(
        &mut self,
        v: Complex64,
        m: Complex64,
        t: f64,
        h: f64,
        b: f64,
        db: f64,
        depth: u32,
    ) -> Result<(Complex64, Complex64), FlowError> {
        let s0 = (-t).exp();
        let lam0 = self.lambda(b);
        let d0 = (s0 * v - lam0).norm_sqr();
        let needs_split = h > self.guard * d0;
        if !needs_split {
            let s1 = (-(t + h)).exp();
            let lam1 = self.lambda(b + db);
            if let Some(next) = self.heun(v, m, h, s0, lam0, s1, lam1, d0) {
                return Ok(next);
            }
        }
        if depth >= self.max_depth {
            return Err(FlowError::StepCollapse { t });
        }
        // Brownian-bridge midpoint over [b, b + db]
        let mid = 0.5 * db + 0.5 * h.sqrt() * self.source.bridge_normal();
        let (v1, m1) = self.step_refined(v, m, t, 0.5 * h, b, mid, depth + 1)?;
        self.step_refined(v1, m1, t + 0.5 * h, 0.5 * h, b + mid, db - mid, depth + 1)
    }
}

/// Integrate the reverse flow from `z` until the renormalized value
/// stabilizes (or the horizon cap is exhausted, which is an error).
pub fn evolve_reverse_flow<S: BrownianSource>(
    z: Complex64,
    source: &mut S,
    kappa: Kappa,
    config: &SimConfig,
) -> Result<FlowSample, FlowError> {
    evolve_impl(z, source, kappa, config, true)
}

/// Integrate to the horizon cap exactly, without the stabilization stop.
/// The scheme-order and renormalization-consistency checks compare states
/// at matched times.
pub fn evolve_to_horizon<S: BrownianSource>(
    z: Complex64,
    source: &mut S,
    kappa: Kappa,
    config: &SimConfig,
) -> Result<FlowSample, FlowError> {
    evolve_impl(z, source, kappa, config, false)
}

fn evolve_impl<S: BrownianSource>(
    z: Complex64,
    source: &mut S,
    kappa: Kappa,
    config: &SimConfig,
    stop_when_stable: bool,
) -> Result<FlowSample, FlowError> {
    config.validate()?;
    let r0 = z.norm();
    if !(r0 > 0.0 && r0 < 1.0) {
        return Err(FlowError::InvalidStart(r0));
    }
    let mut stepper = Stepper {
        source,
        sqrt_kappa: kappa.get().sqrt(),
        guard: config.guard,
        max_depth: config.max_depth,
    };
    let mut v = z;
    let mut m = Complex64::new(0.0, 0.0);
    let mut b = 0.0f64;
    let mut t = 0.0f64;
    let dt = config.dt;
    let exp_neg_dt = (-dt).exp();
    let steps_per_unit = (1.0 / dt).ceil() as usize;
    let mut s = 1.0f64;
    let mut lam = Complex64::new(1.0, 0.0);
    let mut prev_mod = r0;
    let mut prev_probe: Option<Complex64> = None;
    let mut stable = 0u32;
    let mut converged = false;
    'outer: while t < config.t_cap - 0.5 * dt {
        for _ in 0..steps_per_unit {
            let db = stepper.source.next_increment();
            let b1 = b + db;
            let lam1 = stepper.lambda(b1);
            let s1 = s * exp_neg_dt;
            let d0 = (s * v - lam).norm_sqr();
            let fast = if dt > config.guard * d0 {
                None
            } else {
                stepper.heun(v, m, dt, s, lam, s1, lam1, d0)
            };
            match fast {
                Some((nv, nm)) => {
                    v = nv;
                    m = nm;
                }
                None => {
                    let (nv, nm) = stepper.step_refined(v, m, t, dt, b, db, 0)?;
                    v = nv;
                    m = nm;
                }
            }
            b = b1;
            lam = lam1;
            s = s1;
            t += dt;
        }
        // unit-time checkpoint: the flow modulus must decrease and the
        // renormalized value must settle
        let f_mod = s * v.norm();
        if f_mod > prev_mod * (1.0 + 1e-9) {
            return Err(FlowError::MonotonicityViolation { t });
        }
        prev_mod = f_mod;
        if let Some(pv) = prev_probe {
            if (v - pv).norm() < config.probe_tol * (1.0 + v.norm()) {
                stable += 1;
                if stop_when_stable && stable >= config.probe_window {
                    converged = true;
                    break 'outer;
                }
            } else {
                stable = 0;
            }
        }
        prev_probe = Some(v);
    }
    if !stop_when_stable {
        converged = stable >= config.probe_window;
    } else if !converged {
        return Err(FlowError::NonConvergence {
            t_cap: config.t_cap,
        });
    }
    Ok(FlowSample {
        z,
        f_tilde: s * v,
        log_deriv: m - Complex64::new(t, 0.0),
        renormalized: v,
        renorm_log_deriv: m,
        t_final: t,
        converged,
    })
}
