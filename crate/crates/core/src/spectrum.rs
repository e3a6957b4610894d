//! Closed-form quadratics, exponent roots, duality and the spectrum
//! functions.
//!
//! All spectra handled by this crate are built from three quadratic
//! functions of a real exponent `gamma` at a fixed parameter point
//! `(kappa, p, q)`:
//!
//! ```text
//! A(gamma) = -kappa/2 gamma^2 + gamma + p - q
//! C(gamma) = -kappa/2 gamma^2 + (2 + kappa/2) gamma - p
//! beta(gamma) = kappa/2 gamma^2 - C(gamma)
//! ```
//!
//! `beta` is invariant under the dual map `gamma -> 2/kappa + 1/2 - gamma`
//! and is minimized at the fixed point `gamma_lin = 1/kappa + 1/4`. The
//! real roots of `C` (`gamma_0 <= gamma_0_plus`) and of `A`
//! (`gamma_1_minus <= gamma_1`) drive the four spectrum functions
//! `beta_tip`, `beta_0`, `beta_1`, `beta_lin`.

use thiserror::Error;

/// Errors from domain-type construction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("kappa must be a finite positive real, got {0}")]
    InvalidKappa(f64),
    #[error("moment point coordinates must be finite, got ({0}, {1})")]
    NonFinitePoint(f64, f64),
}

/// The SLE parameter. Strictly positive and finite; the closed forms all
/// contain `1/kappa`, so zero is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kappa(f64);

impl Kappa {
    pub fn new(value: f64) -> Result<Self, SpectrumError> {
        if value.is_finite() && value > 0.0 {
            Ok(Kappa(value))
        } else {
            Err(SpectrumError::InvalidKappa(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// `2/kappa + 1/2`, the sum of any dual exponent pair.
    #[inline]
    pub fn dual_sum(self) -> f64 {
        2.0 / self.0 + 0.5
    }
}

/// A point of the `(p, q)` moment plane: `p` is the derivative-moment
/// exponent, `q` the modulus-moment exponent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentPoint {
    pub p: f64,
    pub q: f64,
}

impl MomentPoint {
    pub fn new(p: f64, q: f64) -> Result<Self, SpectrumError> {
        if p.is_finite() && q.is_finite() {
            Ok(MomentPoint { p, q })
        } else {
            Err(SpectrumError::NonFinitePoint(p, q))
        }
    }
}

/// Values of the three quadratics at one `gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumQuadratics {
    pub a_sigma: f64,
    pub c: f64,
    pub beta: f64,
}

/// `A(gamma) = -kappa/2 gamma^2 + gamma + p - q`.
///
/// Total function; `sigma = q/p - 1` never appears so `p = 0` is regular.
#[inline]
pub fn quad_a(kappa: Kappa, pt: MomentPoint, gamma: f64) -> f64 {
    let k = kappa.get();
    -0.5 * k * gamma * gamma + gamma + pt.p - pt.q
}

/// `C(gamma) = -kappa/2 gamma^2 + (2 + kappa/2) gamma - p`.
#[inline]
pub fn quad_c(kappa: Kappa, pt: MomentPoint, gamma: f64) -> f64 {
    let k = kappa.get();
    -0.5 * k * gamma * gamma + (2.0 + 0.5 * k) * gamma - pt.p
}

/// `beta(gamma) = kappa gamma^2 - (2 + kappa/2) gamma + p`.
#[inline]
pub fn beta_gamma(kappa: Kappa, pt: MomentPoint, gamma: f64) -> f64 {
    let k = kappa.get();
    k * gamma * gamma - (2.0 + 0.5 * k) * gamma + pt.p
}

/// All three quadratics at once.
pub fn quadratics(kappa: Kappa, pt: MomentPoint, gamma: f64) -> SpectrumQuadratics {
    SpectrumQuadratics {
        a_sigma: quad_a(kappa, pt, gamma),
        c: quad_c(kappa, pt, gamma),
        beta: beta_gamma(kappa, pt, gamma),
    }
}

/// The dual exponent `gamma' = 2/kappa + 1/2 - gamma`.
///
/// Involution; `beta` takes equal values on dual pairs. The fixed point is
/// [`gamma_lin`].
#[inline]
pub fn dual_gamma(kappa: Kappa, gamma: f64) -> f64 {
    kappa.dual_sum() - gamma
}

/// The self-dual exponent `1/kappa + 1/4`, the minimizer of `beta`.
#[inline]
pub fn gamma_lin(kappa: Kappa) -> f64 {
    1.0 / kappa.get() + 0.25
}

/// Real roots of `C` and `A` at a moment point, when they exist.
///
/// Absent root pairs are `None`, never NaN. The `C`-pair exists iff
/// `(4+kappa)^2 - 8 kappa p >= 0`; the `A`-pair iff
/// `1 + 2 kappa (p - q) >= 0`. Double roots are reported as equal pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRoots {
    pub gamma_0: Option<f64>,
    pub gamma_0_plus: Option<f64>,
    pub gamma_1_minus: Option<f64>,
    pub gamma_1: Option<f64>,
    pub gamma_lin: f64,
}

impl GammaRoots {
    /// Both `gamma_0` and `gamma_1` present.
    pub fn in_sector(&self) -> bool {
        self.gamma_0.is_some() && self.gamma_1.is_some()
    }
}

/// Discriminant of the `C`-quadratic: `(4+kappa)^2 - 8 kappa p`.
#[inline]
pub fn disc_c(kappa: Kappa, p: f64) -> f64 {
    let k = kappa.get();
    (4.0 + k) * (4.0 + k) - 8.0 * k * p
}

/// Discriminant of the `A`-quadratic: `1 + 2 kappa (p - q)`.
#[inline]
pub fn disc_a(kappa: Kappa, pt: MomentPoint) -> f64 {
    1.0 + 2.0 * kappa.get() * (pt.p - pt.q)
}

/// Snap a discriminant within roundoff of zero to an exact double root;
/// the bare square root would otherwise amplify the rounding to
/// `sqrt(eps)` noise in the exponents at the tangency lines.
fn clamp_disc(d: f64, scale: f64) -> f64 {
    if d != 0.0 && d.abs() <= 64.0 * f64::EPSILON * scale {
        0.0
    } else {
        d
    }
}

/// Solve `C(gamma) = 0` and `A(gamma) = 0` for the exponent roots.
///
/// The smaller root of each pair is recovered from the product of roots to
/// avoid cancellation (`gamma_0 * gamma_0_plus = 2p/kappa`,
/// `gamma_1_minus * gamma_1 = -2(p-q)/kappa`).
pub fn gamma_roots(kappa: Kappa, pt: MomentPoint) -> GammaRoots {
    let k = kappa.get();
    let dc = clamp_disc(
        disc_c(kappa, pt.p),
        (4.0 + k) * (4.0 + k) + (8.0 * k * pt.p).abs(),
    );
    let (g0, g0p) = if dc >= 0.0 {
        let s = dc.sqrt();
        let plus = ((4.0 + k) + s) / (2.0 * k);
        // plus > 0 always, so the product form is stable
        let minus = (2.0 * pt.p / k) / plus;
        (Some(minus), Some(plus))
    } else {
        (None, None)
    };
    let da = clamp_disc(disc_a(kappa, pt), 1.0 + (2.0 * k * (pt.p - pt.q)).abs());
    let (g1m, g1) = if da >= 0.0 {
        let s = da.sqrt();
        let plus = (1.0 + s) / k;
        let minus = (-2.0 * (pt.p - pt.q) / k) / plus;
        (Some(minus), Some(plus))
    } else {
        (None, None)
    };
    GammaRoots {
        gamma_0: g0,
        gamma_0_plus: g0p,
        gamma_1_minus: g1m,
        gamma_1: g1,
        gamma_lin: gamma_lin(kappa),
    }
}

/// The four spectrum functions at a moment point; a field is present
/// exactly when its underlying root exists.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumBundle {
    pub beta_tip: Option<f64>,
    pub beta_0: Option<f64>,
    pub beta_1: Option<f64>,
    pub beta_lin: f64,
}

/// Evaluate `beta_tip = beta(gamma_0) - 2 gamma_0 - 1`,
/// `beta_0 = beta(gamma_0)`, `beta_1 = beta(gamma_1)` and
/// `beta_lin = beta(gamma_lin) = p - (4+kappa)^2/(16 kappa)`.
pub fn spectrum_functions(kappa: Kappa, pt: MomentPoint) -> SpectrumBundle {
    let roots = gamma_roots(kappa, pt);
    let k = kappa.get();
    let beta_0 = roots.gamma_0.map(|g| beta_gamma(kappa, pt, g));
    let beta_tip = roots
        .gamma_0
        .map(|g| beta_gamma(kappa, pt, g) - 2.0 * g - 1.0);
    let beta_1 = roots.gamma_1.map(|g| beta_gamma(kappa, pt, g));
    let beta_lin = pt.p - (4.0 + k) * (4.0 + k) / (16.0 * k);
    SpectrumBundle {
        beta_tip,
        beta_0,
        beta_1,
        beta_lin,
    }
}

/// Piecewise rule turning a `(beta, gamma)` pair into the spectrum value:
/// `beta` when `gamma >= -1/2`, else `beta - 2 gamma - 1`. Continuous at
/// the knee `gamma = -1/2`.
#[inline]
pub fn beta_from_pair(beta: f64, gamma: f64) -> f64 {
    if gamma >= -0.5 {
        beta
    } else {
        beta - 2.0 * gamma - 1.0
    }
}

/// Landmark points and threshold abscissas of the phase diagram at a
/// given `kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landmarks {
    /// Left intersection of the red and green parabolas.
    pub p0: f64,
    pub q0: f64,
    /// Abscissa of the right intersection `P_1` (its ordinate is `q0`).
    pub p1: f64,
    /// Abscissa of the vertical line through `Q_0`.
    pub p_prime0: f64,
    /// Intersection of the blue quartic with the green left branch.
    pub q0_point: MomentPoint,
    /// Intersection of the green right branch with the slope-1 line
    /// through it at the same abscissa as `Q_0`.
    pub q0_prime_point: MomentPoint,
    /// Tangency of the red parabola with the vertical line `p = p(T_0)`.
    pub t0: MomentPoint,
    /// Tangency of the red parabola with the slope-1 line `q = p + 1/(2kappa)`.
    pub t1: MomentPoint,
    pub p_star: f64,
    pub p_hat: f64,
    pub p_kappa: f64,
}

/// Closed forms for every landmark.
pub fn landmarks(kappa: Kappa) -> Landmarks {
    let k = kappa.get();
    let p0 = 3.0 * (4.0 + k) * (4.0 + k) / (32.0 * k);
    let q0 = (4.0 + k) * (8.0 + k) / (16.0 * k);
    let p1 = (8.0 + k) * (8.0 + 3.0 * k) / (32.0 * k);
    let p_prime0 = -1.0 - 3.0 * k / 8.0;
    let q0_point = MomentPoint {
        p: p_prime0,
        q: -2.0 - 7.0 * k / 8.0,
    };
    // Q_0' sits on the green parabola at parameter -(1 + 2/kappa).
    let gq = -(1.0 + 2.0 / k);
    let pg = (4.0 + k) * (4.0 + k) / (8.0 * k) - 0.5 * k * gq * gq;
    let qg = (4.0 + k) * (4.0 + k) / (8.0 * k) + gq - k * gq * gq;
    let q0_prime_point = MomentPoint { p: pg, q: qg };
    // T_0: vertex of the red parabola in p, at gamma = 2/kappa + 1/2.
    let gt0 = 2.0 / k + 0.5;
    let t0 = MomentPoint {
        p: (2.0 + 0.5 * k) * gt0 - 0.5 * k * gt0 * gt0,
        q: (3.0 + 0.5 * k) * gt0 - k * gt0 * gt0,
    };
    // T_1: red-parabola point at gamma = 1/kappa.
    let gt1 = 1.0 / k;
    let t1 = MomentPoint {
        p: (2.0 + 0.5 * k) * gt1 - 0.5 * k * gt1 * gt1,
        q: (3.0 + 0.5 * k) * gt1 - k * gt1 * gt1,
    };
    let root = (2.0 * (4.0 + k) * (4.0 + k) + 4.0).sqrt();
    let p_star = (root - 6.0) * (root + 2.0) / (32.0 * k);
    let p_hat = 1.0 + 0.5 * k;
    let p_kappa = (6.0 + k) * (2.0 + k) / (8.0 * k);
    Landmarks {
        p0,
        q0,
        p1,
        p_prime0,
        q0_point,
        q0_prime_point,
        t0,
        t1,
        p_star,
        p_hat,
        p_kappa,
    }
}
