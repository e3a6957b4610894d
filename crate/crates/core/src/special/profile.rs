//! Standard test-function profiles.
//!
//! A test function is `psi = (1 - z zbar)^(-beta(gamma)) u^gamma g0(u)`
//! with `g0(0) = 1` and `g0` free of singularities at `u = 4`. Writing
//! `x = u/4`, the regular solutions of the boundary equation are
//!
//! ```text
//! g0(x) = C1 F(a,b;c;x) + C2 x^(gamma'-gamma) F(a',b';c';x)
//! ```
//!
//! and endpoint regularity at `u = 4` forces one of four coefficient
//! patterns: a terminating primed series with `C1 = 0` (case I), a
//! terminating unprimed series with `C2 = 0` (case II), two terminating
//! series combined with a free constant (case III), or the generic
//! two-term combination with `C2/C1` pinned by a gamma-function ratio
//! (case IV).
//!
//! A case-I request is honoured by building the dual orientation (the
//! terminating series carries the exponent `gamma'`, which then leads);
//! the requested exponent is kept in [`TestProfile::requested_gamma`].

use super::gamma::{gamma_fn, reciprocal_gamma};
use super::hyp2f1::Hyp2f1Series;
use super::SpecialError;
use crate::csvfmt::fmt_f64;
use crate::spectrum::{beta_gamma, dual_gamma, gamma_roots, quad_a, Kappa, MomentPoint};

const INT_TOL: f64 = 1e-9;
const FROBENIUS_SWITCH_U: f64 = 3.0;
const FROBENIUS_TERMS: usize = 64;

/// Hypergeometric parameters of both orientations of a profile.
///
/// `a = gamma - gamma_1`, `b = gamma - gamma_1_minus`,
/// `c = 1 + gamma - gamma'`, and the primed triple with `gamma'` in place
/// of `gamma`. The identity `c - a - b = 1/2` holds for every input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub a_prime: f64,
    pub b_prime: f64,
    pub c_prime: f64,
}

pub fn hyper_params(
    kappa: Kappa,
    pt: MomentPoint,
    gamma: f64,
) -> Result<HyperParams, SpecialError> {
    let roots = gamma_roots(kappa, pt);
    let (g1m, g1) = match (roots.gamma_1_minus, roots.gamma_1) {
        (Some(m), Some(p)) => (m, p),
        _ => return Err(SpecialError::MissingRoots),
    };
    let gd = dual_gamma(kappa, gamma);
    let hp = HyperParams {
        a: gamma - g1,
        b: gamma - g1m,
        c: 1.0 + gamma - gd,
        a_prime: gd - g1,
        b_prime: gd - g1m,
        c_prime: 1.0 + gd - gamma,
    };
    debug_assert!((hp.c - hp.a - hp.b - 0.5).abs() < 1e-9 * (1.0 + hp.c.abs()));
    Ok(hp)
}

/// Which endpoint-regularity pattern a profile realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityCase {
    I,
    II,
    III,
    IV,
}

impl RegularityCase {
    pub fn name(self) -> &'static str {
        match self {
            RegularityCase::I => "I",
            RegularityCase::II => "II",
            RegularityCase::III => "III",
            RegularityCase::IV => "IV",
        }
    }
}

/// A standard test-function profile, normalized to `g0(0) = 1` and
/// endpoint-regular.
#[derive(Debug, Clone, PartialEq)]
pub struct TestProfile {
    pub kappa: Kappa,
    pub pt: MomentPoint,
    /// Leading exponent: `psi ~ u^gamma` as `u -> 0`.
    pub gamma: f64,
    pub gamma_dual: f64,
    /// The exponent the caller asked for; differs from `gamma` only in
    /// case I, where the regular solution leads with the dual exponent.
    pub requested_gamma: f64,
    pub case: RegularityCase,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub c1: f64,
    pub c2: f64,
    /// Parameters in the leading orientation.
    pub params: HyperParams,
    pub normalized: bool,
}

fn near_nonpos_int(x: f64) -> Option<u32> {
    let r = x.round();
    if r <= 0.0 && (x - r).abs() <= INT_TOL * (1.0 + x.abs()) && r >= -1e6 {
        Some((-r) as u32)
    } else {
        None
    }
}

/// `C0 = -gamma(c) gamma(a') gamma(b') / (gamma(a) gamma(b) gamma(c'))`.
fn case_iv_ratio(hp: &HyperParams) -> f64 {
    let gc = gamma_fn(hp.c);
    let gap = gamma_fn(hp.a_prime);
    let gbp = gamma_fn(hp.b_prime);
    if gc.pole || gap.pole || gbp.pole {
        return f64::NAN;
    }
    -gc.value
        * gap.value
        * gbp.value
        * reciprocal_gamma(hp.a)
        * reciprocal_gamma(hp.b)
        * reciprocal_gamma(hp.c_prime)
}

/// Build the standard profile with leading exponent `gamma`.
///
/// On a coincidence line where both hypergeometric slots terminate
/// (`a = -n` and `a' = -m`) the exponents differ by the integer `n - m`
/// and the hypergeometric bases degenerate: the series led by the lower
/// exponent hits a Pochhammer pole of `(c)_k` at order `n - m` before
/// terminating, and the resonance condition for a log-free companion
/// fails wherever `A(gamma)` is nonzero. The only standard function on
/// such a line is therefore the single polynomial led by the higher
/// exponent; requesting the lower exponent is refused.
pub fn build_test_profile(
    kappa: Kappa,
    pt: MomentPoint,
    gamma: f64,
) -> Result<TestProfile, SpecialError> {
    let hp = hyper_params(kappa, pt, gamma)?;
    let gd = dual_gamma(kappa, gamma);
    let unprimed = near_nonpos_int(hp.a).or(near_nonpos_int(hp.b));
    let primed = near_nonpos_int(hp.a_prime).or(near_nonpos_int(hp.b_prime));

    match (unprimed, primed) {
        (Some(_n), Some(_m)) => {
            // both series terminate; legitimate only via a = -n, a' = -m
            if near_nonpos_int(hp.a).is_none() || near_nonpos_int(hp.a_prime).is_none() {
                let defect = hp.a.min(hp.a_prime).fract().abs();
                return Err(SpecialError::AmbiguousCase(defect));
            }
            let n = near_nonpos_int(hp.a).unwrap();
            let m = near_nonpos_int(hp.a_prime).unwrap();
            if n == m {
                return Err(SpecialError::Degenerate);
            }
            if n > m {
                return Err(SpecialError::NotRepresentable(format!(
                    "the series led by gamma = {gamma} meets a (c)_k pole at order {} \
                     before terminating; only the dual exponent {gd} leads a profile here",
                    n - m
                )));
            }
            // the requested exponent is the higher one: a single valid
            // polynomial of degree n, tagged with the line indices
            Ok(TestProfile {
                kappa,
                pt,
                gamma,
                gamma_dual: gd,
                requested_gamma: gamma,
                case: RegularityCase::III,
                n: Some(n),
                m: Some(m),
                c1: 1.0,
                c2: 0.0,
                params: hp,
                normalized: true,
            })
        }
        (Some(n), None) => finish_case_ii(kappa, pt, gamma, gd, hp, n),
        (None, Some(m)) => {
            // case I: regularity forces C1 = 0 and the profile leads with
            // the dual exponent; reorient so the terminating series sits
            // in the main slot
            let reoriented = HyperParams {
                a: hp.a_prime,
                b: hp.b_prime,
                c: hp.c_prime,
                a_prime: hp.a,
                b_prime: hp.b,
                c_prime: hp.c,
            };
            Ok(TestProfile {
                kappa,
                pt,
                gamma: gd,
                gamma_dual: gamma,
                requested_gamma: gamma,
                case: RegularityCase::I,
                n: Some(m),
                m: None,
                c1: 1.0,
                c2: 0.0,
                params: reoriented,
                normalized: true,
            })
        }
        (None, None) => {
            if (gamma - gd).abs() <= INT_TOL {
                return Err(SpecialError::Degenerate);
            }
            if gamma > gd {
                return Err(SpecialError::NotRepresentable(format!(
                    "gamma = {gamma} exceeds its dual {gd} and no series terminates"
                )));
            }
            if near_nonpos_int(hp.c).is_some() {
                return Err(SpecialError::NotRepresentable(
                    "integer exponent gap without terminating series".into(),
                ));
            }
            let c0 = case_iv_ratio(&hp);
            if !c0.is_finite() {
                return Err(SpecialError::NotRepresentable(
                    "gamma-function pole in the coefficient ratio".into(),
                ));
            }
            Ok(TestProfile {
                kappa,
                pt,
                gamma,
                gamma_dual: gd,
                requested_gamma: gamma,
                case: RegularityCase::IV,
                n: None,
                m: None,
                c1: 1.0,
                c2: c0,
                params: hp,
                normalized: true,
            })
        }
    }
}

fn finish_case_ii(
    kappa: Kappa,
    pt: MomentPoint,
    gamma: f64,
    gd: f64,
    hp: HyperParams,
    n: u32,
) -> Result<TestProfile, SpecialError> {
    Ok(TestProfile {
        kappa,
        pt,
        gamma,
        gamma_dual: gd,
        requested_gamma: gamma,
        case: RegularityCase::II,
        n: Some(n),
        m: None,
        c1: 1.0,
        c2: 0.0,
        params: hp,
        normalized: true,
    })
}

/// Coefficient of the square-root branch at `u = 4`:
/// `C1 sqrt(pi) gamma(c) / (gamma(a) gamma(b)) + C2 sqrt(pi) gamma(c') /
/// (gamma(a') gamma(b'))`, with `1/gamma = 0` at poles. Zero iff the
/// combination is regular at the endpoint. A terminating slot is a
/// polynomial and contributes exactly zero, whatever `gamma(c)` does.
pub fn regularity_defect_coeffs(hp: &HyperParams, c1: f64, c2: f64) -> f64 {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let slot = |cw: f64, a: f64, b: f64, c: f64| -> f64 {
        if cw == 0.0 || near_nonpos_int(a).is_some() || near_nonpos_int(b).is_some() {
            return 0.0;
        }
        let gc = gamma_fn(c);
        if gc.pole {
            return f64::INFINITY * cw.signum();
        }
        cw * sqrt_pi * gc.value * reciprocal_gamma(a) * reciprocal_gamma(b)
    };
    slot(c1, hp.a, hp.b, hp.c) + slot(c2, hp.a_prime, hp.b_prime, hp.c_prime)
}

/// Defect of a built profile (zero for every constructible case).
pub fn regularity_defect(profile: &TestProfile) -> f64 {
    regularity_defect_coeffs(&profile.params, profile.c1, profile.c2)
}

fn snap_int(x: f64) -> f64 {
    match near_nonpos_int(x) {
        Some(n) => -(n as f64),
        None => x,
    }
}

/// Evaluation engine for `g0` of a profile: direct Gauss series away from
/// the endpoint, an expansion around `u = 4` (seeded by the connection
/// constant and recursed through the boundary equation) beyond
/// `u = 3`.
#[derive(Debug, Clone)]
pub struct ProfileEvaluator {
    profile: TestProfile,
    main: Hyp2f1Series,
    /// Second block: exponent gap `gamma' - gamma` and its series.
    second: Option<(f64, Hyp2f1Series)>,
    /// Coefficients in `t = 4 - u` around the endpoint.
    frob: Vec<f64>,
    g4: f64,
    h4: f64,
    a_sigma: f64,
}

/// `g0` value with first and second `u`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct G0Eval {
    pub value: f64,
    pub du: f64,
    pub ddu: f64,
}

impl TestProfile {
    pub fn evaluator(&self) -> Result<ProfileEvaluator, SpecialError> {
        ProfileEvaluator::build(self.clone())
    }

    pub fn regularity_defect(&self) -> f64 {
        regularity_defect(self)
    }

    /// `beta(gamma)` of the leading exponent.
    pub fn beta(&self) -> f64 {
        beta_gamma(self.kappa, self.pt, self.gamma)
    }

    /// Serialize as a plain `key=value` block.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let mut push = |k: &str, v: String| {
            s.push_str(k);
            s.push('=');
            s.push_str(&v);
            s.push('\n');
        };
        push("kappa", fmt_f64(self.kappa.get()));
        push("p", fmt_f64(self.pt.p));
        push("q", fmt_f64(self.pt.q));
        push("requested_gamma", fmt_f64(self.requested_gamma));
        push("gamma", fmt_f64(self.gamma));
        push("gamma_dual", fmt_f64(self.gamma_dual));
        push("case", self.case.name().into());
        push("n", self.n.map_or("-".into(), |v| v.to_string()));
        push("m", self.m.map_or("-".into(), |v| v.to_string()));
        push("c1", fmt_f64(self.c1));
        push("c2", fmt_f64(self.c2));
        push("a", fmt_f64(self.params.a));
        push("b", fmt_f64(self.params.b));
        push("c", fmt_f64(self.params.c));
        push("a_prime", fmt_f64(self.params.a_prime));
        push("b_prime", fmt_f64(self.params.b_prime));
        push("c_prime", fmt_f64(self.params.c_prime));
        push("normalized", "1".into());
        s
    }

    /// Rebuild a profile from a `key=value` block written by
    /// [`TestProfile::to_kv`].
    pub fn from_kv(block: &str) -> Result<TestProfile, SpecialError> {
        let mut kappa = None;
        let mut p = None;
        let mut q = None;
        let mut g = None;
        for line in block.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some((k, v)) = line.split_once('=') {
                match k.trim() {
                    "kappa" => kappa = v.trim().parse().ok(),
                    "p" => p = v.trim().parse().ok(),
                    "q" => q = v.trim().parse().ok(),
                    "requested_gamma" => g = v.trim().parse().ok(),
                    _ => {}
                }
            }
        }
        let (kappa, p, q, g) = match (kappa, p, q, g) {
            (Some(k), Some(p), Some(q), Some(g)) => (k, p, q, g),
            _ => {
                return Err(SpecialError::NotRepresentable(
                    "missing kappa/p/q/requested_gamma keys".into(),
                ))
            }
        };
        let kappa = Kappa::new(kappa).map_err(|e| SpecialError::NotRepresentable(e.to_string()))?;
        let pt =
            MomentPoint::new(p, q).map_err(|e| SpecialError::NotRepresentable(e.to_string()))?;
        build_test_profile(kappa, pt, g)
    }
}

impl ProfileEvaluator {
    pub fn build(profile: TestProfile) -> Result<Self, SpecialError> {
        let hp = &profile.params;
        let main = Hyp2f1Series::build(snap_int(hp.a), snap_int(hp.b), hp.c)?;
        let second = match profile.case {
            RegularityCase::IV => {
                let gap = profile.gamma_dual - profile.gamma;
                let s = Hyp2f1Series::build(hp.a_prime, hp.b_prime, hp.c_prime)?;
                Some((gap, s))
            }
            _ => None,
        };
        let kappa = profile.kappa.get();
        let a_sigma = quad_a(profile.kappa, profile.pt, profile.gamma);
        let sqrt_pi = std::f64::consts::PI.sqrt();
        // endpoint value: terminating blocks are polynomials evaluated at
        // x = 1; otherwise the connection constant in gamma functions
        let all_terminating =
            main.is_terminating() && second.as_ref().is_none_or(|(_, s)| s.is_terminating());
        let g4 = if all_terminating {
            let mut v = profile.c1 * main.value(1.0);
            if let Some((_, s)) = &second {
                v += profile.c2 * s.value(1.0);
            }
            v
        } else {
            let gc = gamma_fn(hp.c);
            if gc.pole {
                return Err(SpecialError::CPole(hp.c));
            }
            let mut v = profile.c1
                * sqrt_pi
                * gc.value
                * reciprocal_gamma(0.5 + hp.a)
                * reciprocal_gamma(0.5 + hp.b);
            if profile.c2 != 0.0 {
                let gcp = gamma_fn(hp.c_prime);
                if gcp.pole {
                    return Err(SpecialError::CPole(hp.c_prime));
                }
                v += profile.c2
                    * sqrt_pi
                    * gcp.value
                    * reciprocal_gamma(0.5 + hp.a_prime)
                    * reciprocal_gamma(0.5 + hp.b_prime);
            }
            v
        };
        let h4 = a_sigma / kappa;
        // endpoint expansion g0(4 - t) = sum c_k t^k from the boundary
        // equation: kappa (k+1)(1+2k) c_{k+1} =
        //   [(kappa/2 + kappa g - 1) k + kappa/2 k(k-1) - A] c_k
        let g = profile.gamma;
        let mut frob = Vec::with_capacity(FROBENIUS_TERMS);
        frob.push(g4);
        for k in 0..FROBENIUS_TERMS - 1 {
            let kf = k as f64;
            let num =
                (0.5 * kappa + kappa * g - 1.0) * kf + 0.5 * kappa * kf * (kf - 1.0) - a_sigma;
            let den = kappa * (kf + 1.0) * (1.0 + 2.0 * kf);
            let next = frob[k] * num / den;
            frob.push(next);
        }
        let ev = ProfileEvaluator {
            profile,
            main,
            second,
            frob,
            g4,
            h4,
            a_sigma,
        };
        // the two branches must agree where they meet
        let direct = ev.eval_direct(FROBENIUS_SWITCH_U);
        let endpoint = ev.eval_frobenius(FROBENIUS_SWITCH_U);
        let scale = 1.0 + direct.value.abs();
        let gap = (direct.value - endpoint.value).abs();
        if gap > 1e-9 * scale {
            return Err(SpecialError::EvaluationPrecision(gap));
        }
        Ok(ev)
    }

    pub fn profile(&self) -> &TestProfile {
        &self.profile
    }

    pub fn g4(&self) -> f64 {
        self.g4
    }

    /// `g0'(4)/g0(4) = A(gamma)/kappa`.
    pub fn h4(&self) -> f64 {
        self.h4
    }

    pub fn a_sigma(&self) -> f64 {
        self.a_sigma
    }

    fn eval_direct(&self, u: f64) -> G0Eval {
        let x = 0.25 * u;
        let (f, f1, f2) = self.main.value_d1_d2(x);
        let (mut v, mut d1, mut d2) = (
            self.profile.c1 * f,
            self.profile.c1 * f1 * 0.25,
            self.profile.c1 * f2 * 0.0625,
        );
        if let Some((gap, s)) = &self.second {
            let e = *gap;
            let (g, g1, g2) = s.value_d1_d2(x);
            // d/du [x^e G(x)] with x = u/4
            let xe = x.powf(e);
            let xe1 = if e == 0.0 { 0.0 } else { e * x.powf(e - 1.0) };
            let xe2 = if e == 0.0 || e == 1.0 {
                0.0
            } else {
                e * (e - 1.0) * x.powf(e - 2.0)
            };
            v += self.profile.c2 * xe * g;
            d1 += self.profile.c2 * 0.25 * (xe1 * g + xe * g1);
            d2 += self.profile.c2 * 0.0625 * (xe2 * g + 2.0 * xe1 * g1 + xe * g2);
        }
        G0Eval {
            value: v,
            du: d1,
            ddu: d2,
        }
    }

    fn eval_frobenius(&self, u: f64) -> G0Eval {
        let t = 4.0 - u;
        let (mut f, mut d1, mut d2) = (0.0f64, 0.0f64, 0.0f64);
        for &ck in self.frob.iter().rev() {
            d2 = d2 * t + 2.0 * d1;
            d1 = d1 * t + f;
            f = f * t + ck;
        }
        // d/du = -d/dt
        G0Eval {
            value: f,
            du: -d1,
            ddu: d2,
        }
    }

    /// `g0` and its `u`-derivatives anywhere on `(0, 4]`; at `u = 0` the
    /// value is exact but derivatives may be unbounded for case IV
    /// profiles with an exponent gap below one.
    pub fn derivs(&self, u: f64) -> G0Eval {
        if u > FROBENIUS_SWITCH_U {
            self.eval_frobenius(u)
        } else {
            self.eval_direct(u)
        }
    }

    /// Value only; total on `[0, 4]`.
    pub fn value(&self, u: f64) -> f64 {
        if u == 0.0 {
            return self.profile.c1;
        }
        self.derivs(u).value
    }

    /// Logarithmic derivative `h = g0'/g0`.
    pub fn h(&self, u: f64) -> f64 {
        let e = self.derivs(u);
        e.du / e.value
    }

    /// The removable block `(A - kappa h(u)) / (4 - u)`, finite up to the
    /// endpoint where it tends to `kappa h'(4)`.
    pub fn s_block(&self, u: f64) -> f64 {
        let kappa = self.profile.kappa.get();
        if u <= FROBENIUS_SWITCH_U {
            let e = self.derivs(u);
            let h = e.du / e.value;
            return (self.a_sigma - kappa * h) / (4.0 - u);
        }
        let t = 4.0 - u;
        // kappa (h4 g0 - g0') / (t g0) with the identically-zero constant
        // coefficient dropped
        let mut num = 0.0f64;
        for k in (1..self.frob.len()).rev() {
            let ck =
                self.h4 * self.frob[k] + self.frob.get(k + 1).map_or(0.0, |c| (k as f64 + 1.0) * c);
            num = num * t + ck;
        }
        let g = self.eval_frobenius(u).value;
        kappa * num / g
    }
}

/// Positivity certificate for the profile's `g0` on `[0, 4]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Positivity {
    /// Sufficient criterion `min(gamma, gamma') < gamma_1'` holds.
    ProvedPositive,
    /// Grid scan of 4096 points found no value below `-1e-12`.
    NumericallyPositive,
    /// The scan found a sign change.
    Indefinite,
}

impl Positivity {
    pub fn name(self) -> &'static str {
        match self {
            Positivity::ProvedPositive => "ProvedPositive",
            Positivity::NumericallyPositive => "NumericallyPositive",
            Positivity::Indefinite => "Indefinite",
        }
    }
}

pub fn positivity_certificate(profile: &TestProfile) -> Result<Positivity, SpecialError> {
    let roots = gamma_roots(profile.kappa, profile.pt);
    let g1 = roots.gamma_1.ok_or(SpecialError::MissingRoots)?;
    let g1_dual = dual_gamma(profile.kappa, g1);
    if profile.gamma.min(profile.gamma_dual) < g1_dual {
        return Ok(Positivity::ProvedPositive);
    }
    let ev = profile.evaluator()?;
    let n = 4096;
    for i in 0..=n {
        let u = 4.0 * i as f64 / n as f64;
        if ev.value(u) < -1e-12 {
            return Ok(Positivity::Indefinite);
        }
    }
    Ok(Positivity::NumericallyPositive)
}
