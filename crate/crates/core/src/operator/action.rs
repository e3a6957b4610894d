//! Closed-form action of the operator on standard, mixed and
//! log-modified test functions.
//!
//! For a standard test function `psi = (1-zz)^(-beta(g)) u^g g0(u)` the
//! ratio `P(D)[psi]/psi` is the sum of two blocks,
//!
//! ```text
//! (1-zz)   [ -(C+A)/u + 2A/(4-u) + (kappa/2 - 1 - 2 kappa/(4-u)) h ]
//! (1-zz)^2/u^2 [ (4A - kappa u h)/(4-u) + (q-2p) + (kappa/2+1)(g + u h) ]
//! ```
//!
//! with `h = g0'/g0`. The apparent poles at `u = 4` cancel against
//! `h(4) = A/kappa`; near the endpoint both blocks are rewritten through
//! the removable quantity `S = (A - kappa h)/(4 - u)`.
//!
//! The factor `l = (-log(1-zz))^delta` adds
//! `-2 delta zz / (u (-log(1-zz)))` to the ratio and nothing else.

use super::{DiskPoint, OperatorError};
use crate::special::{build_test_profile, ProfileEvaluator, SpecialError, TestProfile};
use crate::spectrum::{beta_gamma, dual_gamma, gamma_roots, quad_c, Kappa, MomentPoint};

const NEAR_ENDPOINT_U: f64 = 3.0;

/// A single or two-component test function, ready for evaluation.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum TestFunction {
    Single(ProfileEvaluator),
    Mixed {
        psi0: ProfileEvaluator,
        psi1: ProfileEvaluator,
    },
}

impl TestFunction {
    pub fn single(profile: &TestProfile) -> Result<Self, SpecialError> {
        Ok(TestFunction::Single(profile.evaluator()?))
    }

    pub fn kappa(&self) -> Kappa {
        match self {
            TestFunction::Single(ev) => ev.profile().kappa,
            TestFunction::Mixed { psi0, .. } => psi0.profile().kappa,
        }
    }

    pub fn moment_point(&self) -> MomentPoint {
        match self {
            TestFunction::Single(ev) => ev.profile().pt,
            TestFunction::Mixed { psi0, .. } => psi0.profile().pt,
        }
    }

    /// Signed value of the test function at a disk point.
    pub fn value(&self, pt: &DiskPoint) -> f64 {
        match self {
            TestFunction::Single(ev) => component_value(ev, pt),
            TestFunction::Mixed { psi0, psi1 } => {
                component_value(psi0, pt) + component_value(psi1, pt)
            }
        }
    }
}

/// A mixed test function `psi0 + psi1` where `psi1` carries the dominant
/// exponent (default `gamma_1`, whose profile is the constant one).
#[derive(Debug, Clone, PartialEq)]
pub struct MixedProfile {
    pub psi0: TestProfile,
    pub psi1: TestProfile,
}

impl MixedProfile {
    /// Build from two profiles over the same moment point; validates the
    /// admissibility inequalities `t' < gamma < min(t, t' + 2/kappa)`
    /// where `t` is the dominant exponent.
    pub fn new(psi0: TestProfile, psi1: TestProfile) -> Result<Self, OperatorError> {
        if psi0.kappa != psi1.kappa || psi0.pt != psi1.pt {
            return Err(OperatorError::MismatchedComponents);
        }
        let m = MixedProfile { psi0, psi1 };
        m.check_admissible()?;
        Ok(m)
    }

    /// The construction used throughout: `psi0` at `gamma`, `psi1` the
    /// constant profile at `gamma_1`.
    pub fn with_gamma_one(
        kappa: Kappa,
        pt: MomentPoint,
        gamma: f64,
    ) -> Result<Self, OperatorError> {
        let roots = gamma_roots(kappa, pt);
        let g1 = roots
            .gamma_1
            .ok_or(OperatorError::Special(SpecialError::MissingRoots))?;
        let psi0 = build_test_profile(kappa, pt, gamma)?;
        let psi1 = build_test_profile(kappa, pt, g1)?;
        MixedProfile::new(psi0, psi1)
    }

    /// `t' < gamma < min(t, t' + 2/kappa)` for the dominant exponent `t`.
    pub fn check_admissible(&self) -> Result<(), OperatorError> {
        let kappa = self.psi0.kappa;
        let g = self.psi0.gamma;
        let t = self.psi1.gamma;
        let td = dual_gamma(kappa, t);
        // negated forms so NaN exponents fail admissibility
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(td < g) {
            return Err(OperatorError::Inadmissible(format!(
                "need dominant dual {td} < gamma {g}"
            )));
        }
        let cap = t.min(td + 2.0 / kappa.get());
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(g < cap) {
            return Err(OperatorError::Inadmissible(format!(
                "need gamma {g} < min(dominant {t}, dual + 2/kappa {})",
                td + 2.0 / kappa.get()
            )));
        }
        Ok(())
    }

    pub fn function(&self) -> Result<TestFunction, SpecialError> {
        Ok(TestFunction::Mixed {
            psi0: self.psi0.evaluator()?,
            psi1: self.psi1.evaluator()?,
        })
    }
}

/// Log-modified test function `psi * (-log(1 - z zbar))^delta`.
#[derive(Debug, Clone)]
pub struct LogModifiedTestFunction {
    pub base: TestFunction,
    pub delta: f64,
}

/// Ratio and magnitude bookkeeping for one component.
struct ComponentAction {
    /// `P(D)[psi_i]/psi_i` split into the two blocks.
    usq_block: f64,
    u_block: f64,
    /// `ln |psi_i|` and its sign.
    ln_mag: f64,
    sign: f64,
}

fn component_action(ev: &ProfileEvaluator, pt: &DiskPoint) -> ComponentAction {
    let profile = ev.profile();
    let kappa = profile.kappa;
    let k = kappa.get();
    let g = profile.gamma;
    let m = profile.pt;
    let u = pt.u;
    let one_minus = pt.one_minus_zz();
    let a = ev.a_sigma();
    let c = quad_c(kappa, m, g);
    let e = ev.derivs(u);
    let h = e.du / e.value;
    let (u_inner, usq_inner) = if u > NEAR_ENDPOINT_U {
        let s = ev.s_block(u);
        (
            -(c + a) / u + (0.5 * k - 1.0) * h + 2.0 * s,
            4.0 * s + k * h + (m.q - 2.0 * m.p) + (0.5 * k + 1.0) * (g + u * h),
        )
    } else {
        (
            -(c + a) / u + 2.0 * a / (4.0 - u) + (0.5 * k - 1.0 - 2.0 * k / (4.0 - u)) * h,
            (4.0 * a - k * u * h) / (4.0 - u) + (m.q - 2.0 * m.p) + (0.5 * k + 1.0) * (g + u * h),
        )
    };
    let beta = beta_gamma(kappa, m, g);
    let ln_mag = -beta * one_minus.ln() + g * u.ln() + e.value.abs().ln();
    ComponentAction {
        usq_block: one_minus * one_minus / (u * u) * usq_inner,
        u_block: one_minus * u_inner,
        ln_mag,
        sign: if e.value < 0.0 { -1.0 } else { 1.0 },
    }
}

fn component_value(ev: &ProfileEvaluator, pt: &DiskPoint) -> f64 {
    let profile = ev.profile();
    let beta = beta_gamma(profile.kappa, profile.pt, profile.gamma);
    let g0 = ev.value(pt.u);
    pt.one_minus_zz().powf(-beta) * pt.u.powf(profile.gamma) * g0
}

/// Blocks of the ratio at one point, with the total.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionTerms {
    /// The `(1-zz)^2/u^2` block (sign `C(gamma)` in the `u -> 0` limit).
    pub usq_term: f64,
    /// The `(1-zz)/u`-scale block.
    pub u_term: f64,
    /// Logarithmic-modification term `-2 delta zz / (u (-log(1-zz)))`.
    pub log_term: f64,
    /// `P(D)[phi]/phi`.
    pub ratio: f64,
    /// Signed value of the unmodified test function.
    pub phi_base: f64,
}

/// `P(D)[psi]/psi` for an unmodified test function.
pub fn action_closed_form(tf: &TestFunction, pt: &DiskPoint) -> Result<f64, OperatorError> {
    Ok(action_terms_delta(tf, pt, 0.0)?.ratio)
}

/// `P(D)[psi l_delta]/(psi l_delta)`.
pub fn action_log_modified(
    lf: &LogModifiedTestFunction,
    pt: &DiskPoint,
) -> Result<f64, OperatorError> {
    Ok(action_terms_delta(&lf.base, pt, lf.delta)?.ratio)
}

/// Decomposed action, for dominance diagnostics.
pub fn action_terms(
    lf: &LogModifiedTestFunction,
    pt: &DiskPoint,
) -> Result<ActionTerms, OperatorError> {
    action_terms_delta(&lf.base, pt, lf.delta)
}

fn action_terms_delta(
    tf: &TestFunction,
    pt: &DiskPoint,
    delta: f64,
) -> Result<ActionTerms, OperatorError> {
    if pt.u <= 1e-280 {
        return Err(OperatorError::SingularPoint);
    }
    if delta != 0.0 && pt.r == 0.0 {
        return Err(OperatorError::SingularPoint);
    }
    let (usq, ub, phi) = match tf {
        TestFunction::Single(ev) => {
            let act = component_action(ev, pt);
            let phi = act.sign * act.ln_mag.exp();
            (act.usq_block, act.u_block, phi)
        }
        TestFunction::Mixed { psi0, psi1 } => {
            let a0 = component_action(psi0, pt);
            let a1 = component_action(psi1, pt);
            // weights relative to the larger magnitude keep the ratio
            // finite when the raw psi values overflow
            let lm = a0.ln_mag.max(a1.ln_mag);
            let w0 = a0.sign * (a0.ln_mag - lm).exp();
            let w1 = a1.sign * (a1.ln_mag - lm).exp();
            let denom = w0 + w1;
            let usq = (a0.usq_block * w0 + a1.usq_block * w1) / denom;
            let ub = (a0.u_block * w0 + a1.u_block * w1) / denom;
            (usq, ub, denom * lm.exp())
        }
    };
    let log_term = if delta == 0.0 {
        0.0
    } else {
        let zz = pt.zz();
        -2.0 * delta * zz / (pt.u * (-(1.0 - zz).ln()))
    };
    Ok(ActionTerms {
        usq_term: usq,
        u_term: ub,
        log_term,
        ratio: usq + ub + log_term,
        phi_base: phi,
    })
}

/// Integral means exponent of a test function: the piecewise
/// `beta`/`beta - 2 gamma - 1` value of the leading exponent, maximized
/// over components; a logarithmic factor contributes nothing.
pub fn exponent_single(profile: &TestProfile) -> f64 {
    crate::spectrum::beta_from_pair(profile.beta(), profile.gamma)
}
