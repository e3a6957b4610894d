//! Exact rational mirrors of the closed forms.
//!
//! When `kappa`, `p`, `q` are rational every quadratic, landmark and curve
//! point below is an exact rational, except where a square root enters; in
//! that case the value is returned only when the radicand is a perfect
//! square of a rational. These paths back the test oracles and cross-check
//! the `f64` implementations without shared rounding.

use num_bigint::BigInt;
use num_rational::BigRational;
#[cfg(test)]
use num_traits::Zero;
use num_traits::{One, Signed};

pub type Rat = BigRational;

/// Rational from an integer pair `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Exact square root of a nonnegative rational, when it is itself
/// rational (numerator and denominator both perfect squares).
pub fn sqrt_exact(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let num = x.numer().sqrt();
    let den = x.denom().sqrt();
    if &num * &num == *x.numer() && &den * &den == *x.denom() {
        Some(BigRational::new(num, den))
    } else {
        None
    }
}

pub fn quad_a(kappa: &Rat, p: &Rat, q: &Rat, gamma: &Rat) -> Rat {
    -kappa / rat(2, 1) * gamma * gamma + gamma + p - q
}

pub fn quad_c(kappa: &Rat, p: &Rat, gamma: &Rat) -> Rat {
    -kappa / rat(2, 1) * gamma * gamma + (rat(2, 1) + kappa / rat(2, 1)) * gamma - p
}

pub fn beta_gamma(kappa: &Rat, p: &Rat, gamma: &Rat) -> Rat {
    kappa * gamma * gamma - (rat(2, 1) + kappa / rat(2, 1)) * gamma + p
}

pub fn dual_gamma(kappa: &Rat, gamma: &Rat) -> Rat {
    rat(2, 1) / kappa + rat(1, 2) - gamma
}

pub fn gamma_lin(kappa: &Rat) -> Rat {
    kappa.recip() + rat(1, 4)
}

/// `beta_lin(p) = p - (4+kappa)^2 / (16 kappa)`.
pub fn beta_lin(kappa: &Rat, p: &Rat) -> Rat {
    let s = rat(4, 1) + kappa;
    p - &s * &s / (rat(16, 1) * kappa)
}

/// Roots of the `C` quadratic when the discriminant is a perfect square.
pub fn gamma_0_pair(kappa: &Rat, p: &Rat) -> Option<(Rat, Rat)> {
    let s = rat(4, 1) + kappa;
    let disc = &s * &s - rat(8, 1) * kappa * p;
    let root = sqrt_exact(&disc)?;
    let half = (&s - &root) / (rat(2, 1) * kappa);
    let plus = (&s + &root) / (rat(2, 1) * kappa);
    Some((half, plus))
}

/// Roots of the `A` quadratic when the discriminant is a perfect square.
pub fn gamma_1_pair(kappa: &Rat, p: &Rat, q: &Rat) -> Option<(Rat, Rat)> {
    let disc = Rat::one() + rat(2, 1) * kappa * (p - q);
    let root = sqrt_exact(&disc)?;
    let minus = (Rat::one() - &root) / kappa;
    let plus = (Rat::one() + &root) / kappa;
    Some((minus, plus))
}

pub fn beta_tip(kappa: &Rat, p: &Rat) -> Option<Rat> {
    let (g0, _) = gamma_0_pair(kappa, p)?;
    Some(beta_gamma(kappa, p, &g0) - rat(2, 1) * &g0 - Rat::one())
}

pub fn beta_0(kappa: &Rat, p: &Rat) -> Option<Rat> {
    let (g0, _) = gamma_0_pair(kappa, p)?;
    Some(beta_gamma(kappa, p, &g0))
}

pub fn beta_1(kappa: &Rat, p: &Rat, q: &Rat) -> Option<Rat> {
    let (_, g1) = gamma_1_pair(kappa, p, q)?;
    Some(beta_gamma(kappa, p, &g1))
}

/// Red parabola point at parameter `gamma`.
pub fn red_point(kappa: &Rat, gamma: &Rat) -> (Rat, Rat) {
    let p = (rat(2, 1) + kappa / rat(2, 1)) * gamma - kappa / rat(2, 1) * gamma * gamma;
    let q = (rat(3, 1) + kappa / rat(2, 1)) * gamma - kappa * gamma * gamma;
    (p, q)
}

/// Green parabola point at parameter `gamma'`.
pub fn green_point(kappa: &Rat, gamma_p: &Rat) -> (Rat, Rat) {
    let s = rat(4, 1) + kappa;
    let head = &s * &s / (rat(8, 1) * kappa);
    let p = &head - kappa / rat(2, 1) * gamma_p * gamma_p;
    let q = &head + gamma_p - kappa * gamma_p * gamma_p;
    (p, q)
}

/// Quartic radicand `4 kappa^2 g^2 - 2 kappa (4+kappa) g + (8+kappa)^2/4 + 4 kappa`.
pub fn quartic_disc(kappa: &Rat, gamma: &Rat) -> Rat {
    let s8 = rat(8, 1) + kappa;
    rat(4, 1) * kappa * kappa * gamma * gamma - rat(2, 1) * kappa * (rat(4, 1) + kappa) * gamma
        + &s8 * &s8 / rat(4, 1)
        + rat(4, 1) * kappa
}

/// Blue quartic point at parameter `gamma`, exact when the radicand is a
/// perfect square.
pub fn quartic_point(kappa: &Rat, gamma: &Rat) -> Option<(Rat, Rat)> {
    let root = sqrt_exact(&quartic_disc(kappa, gamma))?;
    let p = kappa / rat(16, 1) + (Rat::one() + kappa / rat(4, 1)) * gamma
        - kappa / rat(2, 1) * gamma * gamma
        - root / rat(8, 1);
    let q = &p + gamma - kappa / rat(2, 1) * gamma * gamma;
    Some((p, q))
}

/// Exact landmark points; square-root-bearing thresholds (`p_star`) are
/// omitted here and covered by the float path.
pub struct LandmarksExact {
    pub p0: Rat,
    pub q0: Rat,
    pub p1: Rat,
    pub p_prime0: Rat,
    pub q0_point: (Rat, Rat),
    pub q0_prime_point: (Rat, Rat),
    pub t0: (Rat, Rat),
    pub t1: (Rat, Rat),
    pub p_hat: Rat,
    pub p_kappa: Rat,
}

pub fn landmarks(kappa: &Rat) -> LandmarksExact {
    let s4 = rat(4, 1) + kappa;
    let s8 = rat(8, 1) + kappa;
    let p0 = rat(3, 1) * &s4 * &s4 / (rat(32, 1) * kappa);
    let q0 = &s4 * &s8 / (rat(16, 1) * kappa);
    let p1 = &s8 * (rat(8, 1) + rat(3, 1) * kappa) / (rat(32, 1) * kappa);
    let p_prime0 = -Rat::one() - rat(3, 8) * kappa;
    let q0_point = (p_prime0.clone(), rat(-2, 1) - rat(7, 8) * kappa);
    let q0_prime_point = green_point(kappa, &-(Rat::one() + rat(2, 1) / kappa));
    let t0 = red_point(kappa, &(rat(2, 1) / kappa + rat(1, 2)));
    let t1 = red_point(kappa, &kappa.recip());
    let p_hat = Rat::one() + kappa / rat(2, 1);
    let p_kappa = (rat(6, 1) + kappa) * (rat(2, 1) + kappa) / (rat(8, 1) * kappa);
    LandmarksExact {
        p0,
        q0,
        p1,
        p_prime0,
        q0_point,
        q0_prime_point,
        t0,
        t1,
        p_hat,
        p_kappa,
    }
}

/// m-fold transform `(p, q) -> (p, (1 - 1/m) p + q/m)` and its inverse,
/// exact in rational arithmetic.
pub fn m_fold_forward(m: i64, p: &Rat, q: &Rat) -> (Rat, Rat) {
    let mr = rat(m, 1);
    (p.clone(), (Rat::one() - mr.recip()) * p + q / &mr)
}

pub fn m_fold_inverse(m: i64, p: &Rat, q: &Rat) -> (Rat, Rat) {
    let mr = rat(m, 1);
    (p.clone(), (Rat::one() - &mr) * p + &mr * q)
}

/// Transition-line constants: `(D0' abscissa, D0 abscissa, D1 offset,
/// D3 offset, D4 offset, Delta0 abscissa, Delta1 offset)`.
pub fn line_constants(kappa: &Rat) -> (Rat, Rat, Rat, Rat, Rat, Rat, Rat) {
    let s4 = rat(4, 1) + kappa;
    let lm = landmarks(kappa);
    let d1 = (rat(16, 1) - kappa * kappa) / (rat(32, 1) * kappa);
    let d3 = -Rat::one() - kappa / rat(2, 1);
    let d4 = -(rat(2, 1) + kappa) * &s4 / (rat(2, 1) * kappa);
    let delta0 = &s4 * &s4 / (rat(8, 1) * kappa);
    let delta1 = (rat(2, 1) * kappa).recip();
    (lm.p_prime0, lm.p0, d1, d3, d4, delta0, delta1)
}

/// Rational to nearest f64 (numerator/denominator division).
pub fn to_f64(x: &Rat) -> f64 {
    let num = x.numer();
    let den = x.denom();
    // split to keep precision for moderate magnitudes
    let nf: f64 = num.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = den.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_detects_perfect_squares() {
        assert_eq!(sqrt_exact(&rat(25, 16)), Some(rat(5, 4)));
        assert_eq!(sqrt_exact(&rat(2, 1)), None);
        assert_eq!(sqrt_exact(&rat(-1, 1)), None);
        assert_eq!(sqrt_exact(&Rat::zero()), Some(Rat::zero()));
    }

    #[test]
    fn landmark_rationals_at_kappa_2() {
        let k = rat(2, 1);
        let lm = landmarks(&k);
        assert_eq!(lm.p0, rat(27, 16));
        assert_eq!(lm.q0, rat(15, 8));
        assert_eq!(lm.p1, rat(35, 16));
        assert_eq!(lm.q0_point, (rat(-7, 4), rat(-15, 4)));
        assert_eq!(lm.q0_prime_point, (rat(-7, 4), rat(-31, 4)));
        assert_eq!(lm.t0, (rat(9, 4), rat(3, 2)));
        assert_eq!(lm.t1, (rat(5, 4), rat(3, 2)));
    }

    #[test]
    fn quartic_exact_points_at_kappa_2() {
        let k = rat(2, 1);
        assert_eq!(quartic_disc(&k, &rat(2, 1)), rat(49, 1));
        let q0 = quartic_point(&k, &rat(2, 1)).unwrap();
        assert_eq!(q0, (rat(-7, 4), rat(-15, 4)));
        let at_half = quartic_point(&k, &rat(1, 2)).unwrap();
        assert_eq!(at_half, (rat(0, 1), rat(1, 4)));
    }

    #[test]
    fn m_fold_inverse_is_exact() {
        for m in [-30i64, -2, 1, 2, 5] {
            let p = rat(7, 3);
            let q = rat(-11, 5);
            let (fp, fq) = m_fold_forward(m, &p, &q);
            let (bp, bq) = m_fold_inverse(m, &fp, &fq);
            assert_eq!((bp, bq), (p, q));
        }
    }

    #[test]
    fn duality_exact() {
        let k = rat(2, 1);
        let p = rat(3, 7);
        let g = rat(1, 3);
        let gd = dual_gamma(&k, &g);
        assert_eq!(beta_gamma(&k, &p, &g), beta_gamma(&k, &p, &gd));
    }
}
