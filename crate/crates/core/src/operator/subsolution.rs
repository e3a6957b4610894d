//! Sign verification on annuli and the zone-wise sub-solution
//! construction.

use super::action::{
    action_terms, exponent_single, LogModifiedTestFunction, MixedProfile, TestFunction,
};
use super::{DiskPoint, OperatorError};
use crate::phase::{proof_zone, ProofZone};
use crate::spectrum::{
    beta_from_pair, beta_gamma, dual_gamma, gamma_lin, gamma_roots, quad_c, Kappa, MomentPoint,
};
use rayon::prelude::*;

/// Rectangular evaluation grid over an annulus, uniform in `r` and
/// `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusGrid {
    pub r_lo: f64,
    pub r_hi: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl Default for AnnulusGrid {
    fn default() -> Self {
        AnnulusGrid {
            r_lo: 0.9,
            r_hi: 1.0 - 1e-5,
            n_r: 512,
            n_theta: 512,
        }
    }
}

impl AnnulusGrid {
    pub fn r(&self, i: usize) -> f64 {
        self.r_lo + (self.r_hi - self.r_lo) * i as f64 / (self.n_r - 1) as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / self.n_theta as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignVerdict {
    StrictlyNegative,
    StrictlyPositive,
    MixedSign,
}

impl SignVerdict {
    pub fn name(self) -> &'static str {
        match self {
            SignVerdict::StrictlyNegative => "StrictlyNegative",
            SignVerdict::StrictlyPositive => "StrictlyPositive",
            SignVerdict::MixedSign => "MixedSign",
        }
    }
}

/// Extrema of `P(D)[phi]/phi` over a sampled annulus, with the verdict.
/// The verdict speaks for the sampled grid only, never for the open
/// annulus.
///
/// A point counts as significantly signed when its ratio clears
/// `1e-12` of the local term magnitude, so values that vanish within
/// roundoff (an exact solution, say) yield `MixedSign` rather than a
/// spurious strict verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct SignReport {
    pub grid: AnnulusGrid,
    pub min: f64,
    pub max: f64,
    pub min_at: (f64, f64),
    pub max_at: (f64, f64),
    /// Smallest signed value of the (unmodified) test function seen on
    /// the grid; positivity of `phi` is required for the ratio verdict to
    /// speak about `P(D)[phi]` itself.
    pub min_phi: f64,
    pub verdict: SignVerdict,
}

impl SignReport {
    fn from_extrema(grid: AnnulusGrid, rows: Vec<RowSummary>) -> Self {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        let mut min_at = (0.0, 0.0);
        let mut max_at = (0.0, 0.0);
        let mut min_phi = f64::INFINITY;
        let mut max_shifted_up = f64::NEG_INFINITY;
        let mut min_shifted_down = f64::INFINITY;
        for row in rows {
            if row.min < min {
                min = row.min;
                min_at = row.min_at;
            }
            if row.max > max {
                max = row.max;
                max_at = row.max_at;
            }
            min_phi = min_phi.min(row.min_phi);
            max_shifted_up = max_shifted_up.max(row.max_shifted_up);
            min_shifted_down = min_shifted_down.min(row.min_shifted_down);
        }
        let verdict = if max_shifted_up < 0.0 {
            SignVerdict::StrictlyNegative
        } else if min_shifted_down > 0.0 {
            SignVerdict::StrictlyPositive
        } else {
            SignVerdict::MixedSign
        };
        SignReport {
            grid,
            min,
            max,
            min_at,
            max_at,
            min_phi,
            verdict,
        }
    }
}

struct RowSummary {
    min: f64,
    max: f64,
    min_at: (f64, f64),
    max_at: (f64, f64),
    min_phi: f64,
    /// `max(ratio + 1e-12 local_scale)`: negative iff every point is
    /// significantly below zero.
    max_shifted_up: f64,
    /// `min(ratio - 1e-12 local_scale)`: positive iff every point is
    /// significantly above zero.
    min_shifted_down: f64,
}

fn admissibility(lf: &LogModifiedTestFunction) -> Result<(), OperatorError> {
    let kappa = lf.base.kappa();
    let pt = lf.base.moment_point();
    let gamma = match &lf.base {
        TestFunction::Single(ev) => ev.profile().gamma,
        TestFunction::Mixed { psi0, psi1 } => {
            // the mixed admissibility inequalities, re-checked here since
            // the function may have been assembled directly
            let g = psi0.profile().gamma;
            let t = psi1.profile().gamma;
            let td = dual_gamma(kappa, t);
            if !(td < g && g < t.min(td + 2.0 / kappa.get())) {
                return Err(OperatorError::Inadmissible(format!(
                    "mixed condition violated: need {td} < {g} < min({t}, {})",
                    td + 2.0 / kappa.get()
                )));
            }
            g
        }
    };
    let c = quad_c(kappa, pt, gamma);
    let roots = gamma_roots(kappa, pt);
    let on_gamma_0 = roots
        .gamma_0
        .is_some_and(|g0| (gamma - g0).abs() <= 1e-9 * (1.0 + g0.abs()));
    if on_gamma_0 {
        if lf.delta == 0.0 {
            return Err(OperatorError::Inadmissible(
                "gamma = gamma_0 requires a nonzero log exponent".into(),
            ));
        }
        return Ok(());
    }
    if c < 0.0 && lf.delta <= 0.0 {
        return Err(OperatorError::Inadmissible(format!(
            "C(gamma) = {c} < 0 requires delta > 0, got {}",
            lf.delta
        )));
    }
    if c > 0.0 && lf.delta >= 0.0 {
        return Err(OperatorError::Inadmissible(format!(
            "C(gamma) = {c} > 0 requires delta < 0, got {}",
            lf.delta
        )));
    }
    Ok(())
}

/// Evaluate the sign of `P(D)[phi]/phi` over the grid.
///
/// Rows are scanned in parallel and merged in a fixed order, so the
/// report is bitwise reproducible for any worker count.
pub fn verify_sign(
    lf: &LogModifiedTestFunction,
    grid: AnnulusGrid,
) -> Result<SignReport, OperatorError> {
    admissibility(lf)?;
    let rows: Result<Vec<RowSummary>, OperatorError> = (0..grid.n_r)
        .into_par_iter()
        .map(|i| {
            let r = grid.r(i);
            let mut min = f64::INFINITY;
            let mut max = f64::NEG_INFINITY;
            let mut min_at = (r, 0.0);
            let mut max_at = (r, 0.0);
            let mut min_phi = f64::INFINITY;
            let mut max_shifted_up = f64::NEG_INFINITY;
            let mut min_shifted_down = f64::INFINITY;
            for j in 0..grid.n_theta {
                let theta = grid.theta(j);
                let pt =
                    DiskPoint::from_polar(r, theta).map_err(|_| OperatorError::SingularPoint)?;
                let terms = action_terms(lf, &pt)?;
                if terms.ratio < min {
                    min = terms.ratio;
                    min_at = (r, theta);
                }
                if terms.ratio > max {
                    max = terms.ratio;
                    max_at = (r, theta);
                }
                min_phi = min_phi.min(terms.phi_base);
                let local = terms.usq_term.abs() + terms.u_term.abs() + terms.log_term.abs();
                max_shifted_up = max_shifted_up.max(terms.ratio + 1e-12 * local);
                min_shifted_down = min_shifted_down.min(terms.ratio - 1e-12 * local);
            }
            Ok(RowSummary {
                min,
                max,
                min_at,
                max_at,
                min_phi,
                max_shifted_up,
                min_shifted_down,
            })
        })
        .collect();
    Ok(SignReport::from_extrema(grid, rows?))
}

/// A constructed sub-solution: the mixed profile and the log exponent,
/// plus the sign report that certified it on the sampled annulus.
#[derive(Debug, Clone)]
pub struct SubsolutionChoice {
    pub mixed: MixedProfile,
    pub delta: f64,
    pub gamma: f64,
    pub zone: ProofZone,
    pub report: SignReport,
}

/// Zone-wise exponent recipe with an epsilon-refinement loop: the chosen
/// `gamma` walks toward the zone's prescribed limit until the sign report
/// comes back strictly negative, up to ten refinements.
pub fn choose_subsolution(
    kappa: Kappa,
    pt: MomentPoint,
    grid: AnnulusGrid,
) -> Result<SubsolutionChoice, OperatorError> {
    let zone = proof_zone(kappa, pt);
    let roots = gamma_roots(kappa, pt);
    let (g0, g1) = match (roots.gamma_0, roots.gamma_1) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(OperatorError::UnsupportedZone),
    };
    let g1d = dual_gamma(kappa, g1);
    let shift = g1d + 2.0 / kappa.get();
    let glin = gamma_lin(kappa);
    let zone_name = zone.name();
    let candidates: Box<dyn Fn(u32) -> f64> = match zone {
        ProofZone::ZoneI => {
            let lo = g1d.max(-0.5);
            let hi = g0.min(glin);
            Box::new(move |k| lo + (hi - lo) / f64::powi(2.0, k as i32 + 1))
        }
        ProofZone::ZoneII => Box::new(move |k| g0 - 1e-3 / f64::powi(2.0, k as i32)),
        ProofZone::ZoneIII => Box::new(move |k| shift - 1e-3 / f64::powi(2.0, k as i32)),
        ProofZone::ZoneIV => {
            let lo = g1d.max(-0.5);
            let hi = shift.min(g1).min(glin);
            Box::new(move |k| lo + (hi - lo) / f64::powi(2.0, k as i32 + 1))
        }
        ProofZone::Outside => return Err(OperatorError::UnsupportedZone),
    };
    let beta_dominant = beta_gamma(kappa, pt, g1);
    let mut attempts = 0;
    for k in 0..10u32 {
        attempts = k + 1;
        let gamma = candidates(k);
        // the sub-solution interval, strictly
        let lo = g1d;
        let hi = g0.min(g1).min(shift).min(glin);
        if !(lo < gamma && gamma < hi) {
            continue;
        }
        let mixed = match MixedProfile::with_gamma_one(kappa, pt, gamma) {
            Ok(m) => m,
            Err(_) => continue,
        };
        // dominant-exponent condition: the companion must carry the
        // integral means exponent
        if exponent_single(&mixed.psi0) >= beta_dominant {
            continue;
        }
        let lf = LogModifiedTestFunction {
            base: match mixed.function() {
                Ok(f) => f,
                Err(_) => continue,
            },
            delta: 1.0,
        };
        let report = verify_sign(&lf, grid)?;
        if report.verdict == SignVerdict::StrictlyNegative && report.min_phi > 0.0 {
            return Ok(SubsolutionChoice {
                mixed,
                delta: 1.0,
                gamma,
                zone,
                report,
            });
        }
    }
    Err(OperatorError::ConstructionFailed {
        zone: zone_name,
        attempts,
    })
}

/// Integral means exponent of a (possibly log-modified) test function:
/// the maximum of the component exponents; the log factor contributes
/// zero.
pub fn exponent_of(lf: &LogModifiedTestFunction) -> f64 {
    match &lf.base {
        TestFunction::Single(ev) => {
            let p = ev.profile();
            beta_from_pair(beta_gamma(p.kappa, p.pt, p.gamma), p.gamma)
        }
        TestFunction::Mixed { psi0, psi1 } => {
            let e0 = {
                let p = psi0.profile();
                beta_from_pair(beta_gamma(p.kappa, p.pt, p.gamma), p.gamma)
            };
            let e1 = {
                let p = psi1.profile();
                beta_from_pair(beta_gamma(p.kappa, p.pt, p.gamma), p.gamma)
            };
            e0.max(e1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::build_test_profile;

    fn k(v: f64) -> Kappa {
        Kappa::new(v).unwrap()
    }

    fn small_grid() -> AnnulusGrid {
        AnnulusGrid {
            r_lo: 0.9,
            r_hi: 1.0 - 1e-5,
            n_r: 48,
            n_theta: 64,
        }
    }

    #[test]
    fn zone_i_subsolution_is_negative() {
        let pt = MomentPoint { p: 1.5, q: 1.0 };
        let choice = choose_subsolution(k(2.0), pt, small_grid()).unwrap();
        assert_eq!(choice.zone, ProofZone::ZoneI);
        assert_eq!(choice.report.verdict, SignVerdict::StrictlyNegative);
        assert!(choice.report.min_phi > 0.0);
        // exponent of the mixed function equals beta(gamma_1)
        let lf = LogModifiedTestFunction {
            base: choice.mixed.function().unwrap(),
            delta: choice.delta,
        };
        let g1 = gamma_roots(k(2.0), pt).gamma_1.unwrap();
        let expect = beta_gamma(k(2.0), pt, g1);
        assert!((exponent_of(&lf) - expect).abs() < 1e-12);
    }

    #[test]
    fn unsupported_zone_is_rejected() {
        // linear-phase point
        let pt = MomentPoint { p: 2.0, q: 3.0 };
        assert!(matches!(
            choose_subsolution(k(2.0), pt, small_grid()),
            Err(OperatorError::UnsupportedZone)
        ));
    }

    #[test]
    fn single_profile_sign_rules() {
        // C(gamma) < 0 with delta > 0 gives a strictly negative report;
        // gamma below the dual of gamma_1 keeps the profile positive
        let kappa = k(2.0);
        let pt = MomentPoint { p: 1.0, q: 0.0 };
        let roots = gamma_roots(kappa, pt);
        let g1d = dual_gamma(kappa, roots.gamma_1.unwrap());
        let gamma = g1d - 0.05;
        let profile = build_test_profile(kappa, pt, gamma).unwrap();
        assert!(quad_c(kappa, pt, gamma) < 0.0);
        let tf = TestFunction::single(&profile).unwrap();
        let neg = verify_sign(
            &LogModifiedTestFunction {
                base: tf.clone(),
                delta: 1.0,
            },
            small_grid(),
        )
        .unwrap();
        assert_eq!(neg.verdict, SignVerdict::StrictlyNegative);
        // wrong delta sign is inadmissible
        assert!(matches!(
            verify_sign(
                &LogModifiedTestFunction {
                    base: tf,
                    delta: -1.0
                },
                small_grid()
            ),
            Err(OperatorError::Inadmissible(_))
        ));
    }

    #[test]
    fn gamma_zero_profile_both_signs() {
        // at gamma = gamma_0 the log exponent controls the sign; the
        // point sits left of the green left branch so the profile is
        // positive
        let kappa = k(2.0);
        let pt = MomentPoint { p: 0.5, q: 0.5 };
        let g0 = gamma_roots(kappa, pt).gamma_0.unwrap();
        let profile = build_test_profile(kappa, pt, g0).unwrap();
        let tf = TestFunction::single(&profile).unwrap();
        let neg = verify_sign(
            &LogModifiedTestFunction {
                base: tf.clone(),
                delta: 1.0,
            },
            small_grid(),
        )
        .unwrap();
        assert_eq!(neg.verdict, SignVerdict::StrictlyNegative);
        let pos = verify_sign(
            &LogModifiedTestFunction {
                base: tf,
                delta: -1.0,
            },
            small_grid(),
        )
        .unwrap();
        assert_eq!(pos.verdict, SignVerdict::StrictlyPositive);
    }
}
