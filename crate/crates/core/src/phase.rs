//! Transition curves, region classification, validity status, proof
//! zones and the m-fold transform on the `(p, q)` moment plane.
//!
//! The phase diagram at fixed `kappa` is bounded by five curves: the red
//! and green parabolas (parametric in the exponent), a branch of a blue
//! quartic, and the straight lines `D0'`, `D0`, `D1`. Region membership
//! is decided through the root inequalities (`gamma_1' < gamma_0` iff the
//! point is right of the green left branch, and so on); where roots do
//! not exist the region is determined by the lines alone.
//!
//! Boundary convention: classifiers are deterministic on boundaries and
//! break ties in the order `Tip < Bulk < Linear < One`, i.e. a point on a
//! shared boundary belongs to the earlier region. Wedge boundaries in
//! [`partition_eie`] are closed on the `EMinus` side.

use crate::spectrum::{
    beta_gamma, disc_a, disc_c, dual_gamma, gamma_lin, gamma_roots, landmarks, quad_a, quad_c,
    spectrum_functions, Kappa, MomentPoint,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error("point cannot be classified: {0}")]
    Unclassifiable(String),
    #[error("m-fold radicand 1 + (2 kappa / m)(p - q) = {0} is negative")]
    MFoldDomain(f64),
    #[error("m must be a nonzero integer")]
    ZeroFold,
    #[error("quartic identity defect {defect} at gamma = {gamma} exceeds 1e-9")]
    QuarticDefect { gamma: f64, defect: f64 },
}

/// Which transition curve a sampled point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveTag {
    Red,
    Green,
    BlueQuartic,
}

impl CurveTag {
    pub fn name(self) -> &'static str {
        match self {
            CurveTag::Red => "red",
            CurveTag::Green => "green",
            CurveTag::BlueQuartic => "blue_quartic",
        }
    }
}

/// A point on one of the transition curves, tagged with its parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub curve: CurveTag,
    pub gamma: f64,
    pub p: f64,
    pub q: f64,
}

/// Red parabola: `p = (2 + kappa/2) g - kappa/2 g^2`,
/// `q = (3 + kappa/2) g - kappa g^2`.
pub fn red_point(kappa: Kappa, gamma: f64) -> CurvePoint {
    let k = kappa.get();
    CurvePoint {
        curve: CurveTag::Red,
        gamma,
        p: (2.0 + 0.5 * k) * gamma - 0.5 * k * gamma * gamma,
        q: (3.0 + 0.5 * k) * gamma - k * gamma * gamma,
    }
}

/// Green parabola: `p = (4+kappa)^2/(8 kappa) - kappa/2 g'^2`,
/// `q = p + g' - kappa/2 g'^2`.
pub fn green_point(kappa: Kappa, gamma_prime: f64) -> CurvePoint {
    let k = kappa.get();
    let head = (4.0 + k) * (4.0 + k) / (8.0 * k);
    CurvePoint {
        curve: CurveTag::Green,
        gamma: gamma_prime,
        p: head - 0.5 * k * gamma_prime * gamma_prime,
        q: head + gamma_prime - k * gamma_prime * gamma_prime,
    }
}

/// Radicand of the blue quartic parametrization; positive for every real
/// `gamma` and `kappa > 0`.
pub fn quartic_disc(kappa: Kappa, gamma: f64) -> f64 {
    let k = kappa.get();
    4.0 * k * k * gamma * gamma - 2.0 * k * (4.0 + k) * gamma
        + 0.25 * (8.0 + k) * (8.0 + k)
        + 4.0 * k
}

/// Blue quartic branch:
/// `p = kappa/16 + (1 + kappa/4) g - kappa/2 g^2 - sqrt(disc)/8`,
/// `q = p + g - kappa/2 g^2`.
///
/// The returned point satisfies `A(g) = 0` and `beta(g) = beta_tip(p)`;
/// both identities are verified to 1e-9 and a defect is reported
/// otherwise.
pub fn blue_quartic_point(kappa: Kappa, gamma: f64) -> Result<CurvePoint, PhaseError> {
    let k = kappa.get();
    let disc = quartic_disc(kappa, gamma);
    debug_assert!(disc >= 0.0);
    let p = k / 16.0 + (1.0 + 0.25 * k) * gamma - 0.5 * k * gamma * gamma - disc.sqrt() / 8.0;
    let q = p + gamma - 0.5 * k * gamma * gamma;
    let pt = MomentPoint { p, q };
    let scale = 1.0 + p.abs() + q.abs() + k * gamma * gamma;
    let a_defect = quad_a(kappa, pt, gamma).abs();
    let bundle = spectrum_functions(kappa, pt);
    let tip_defect = match bundle.beta_tip {
        Some(bt) => (beta_gamma(kappa, pt, gamma) - bt).abs(),
        None => f64::INFINITY,
    };
    let defect = a_defect.max(tip_defect);
    if defect > 1e-9 * scale {
        return Err(PhaseError::QuarticDefect { gamma, defect });
    }
    Ok(CurvePoint {
        curve: CurveTag::BlueQuartic,
        gamma,
        p,
        q,
    })
}

/// Uniformly sample a curve over a closed parameter range.
pub fn sample_curve(
    kappa: Kappa,
    tag: CurveTag,
    gamma_lo: f64,
    gamma_hi: f64,
    n: usize,
) -> Result<Vec<CurvePoint>, PhaseError> {
    assert!(n >= 2 && gamma_hi > gamma_lo);
    let step = (gamma_hi - gamma_lo) / (n - 1) as f64;
    (0..n)
        .map(|i| {
            let g = gamma_lo + step * i as f64;
            match tag {
                CurveTag::Red => Ok(red_point(kappa, g)),
                CurveTag::Green => Ok(green_point(kappa, g)),
                CurveTag::BlueQuartic => blue_quartic_point(kappa, g),
            }
        })
        .collect()
}

/// The straight transition lines at a given `kappa`. Vertical lines are
/// stored as the abscissa, slope-1 lines as the offset `q - p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionLines {
    /// `D0'`: vertical through `Q_0`, `p = -1 - 3 kappa / 8`.
    pub d0_prime: f64,
    /// `D0`: vertical through `P_0`.
    pub d0: f64,
    /// `D1`: slope 1 through `P_0`, `q - p = (16 - kappa^2)/(32 kappa)`.
    pub d1_offset: f64,
    /// `D3`: slope 1 through `Q_0`, `q - p = -1 - kappa/2`.
    pub d3_offset: f64,
    /// `D4`: slope 1 through `Q_0'`, `q - p = -(2+kappa)(4+kappa)/(2 kappa)`.
    pub d4_offset: f64,
    /// Vertical reality threshold of the `gamma_0` pair,
    /// `p = (4+kappa)^2/(8 kappa)`, tangent to the red parabola at `T_0`.
    pub delta0: f64,
    /// Slope-1 reality threshold of the `gamma_1` pair, `q - p = 1/(2 kappa)`.
    pub delta1_offset: f64,
}

pub fn transition_lines(kappa: Kappa) -> TransitionLines {
    let k = kappa.get();
    let lm = landmarks(kappa);
    TransitionLines {
        d0_prime: lm.p_prime0,
        d0: lm.p0,
        d1_offset: (16.0 - k * k) / (32.0 * k),
        d3_offset: -1.0 - 0.5 * k,
        d4_offset: -(2.0 + k) * (4.0 + k) / (2.0 * k),
        delta0: (4.0 + k) * (4.0 + k) / (8.0 * k),
        delta1_offset: 0.5 / k,
    }
}

/// A named line descriptor for export.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LineKind {
    Vertical { p: f64 },
    Slope1 { offset: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineDescriptor {
    pub name: &'static str,
    pub kind: LineKind,
}

impl TransitionLines {
    pub fn descriptors(&self) -> Vec<LineDescriptor> {
        vec![
            LineDescriptor {
                name: "D0_prime",
                kind: LineKind::Vertical { p: self.d0_prime },
            },
            LineDescriptor {
                name: "D0",
                kind: LineKind::Vertical { p: self.d0 },
            },
            LineDescriptor {
                name: "D1",
                kind: LineKind::Slope1 {
                    offset: self.d1_offset,
                },
            },
            LineDescriptor {
                name: "D3",
                kind: LineKind::Slope1 {
                    offset: self.d3_offset,
                },
            },
            LineDescriptor {
                name: "D4",
                kind: LineKind::Slope1 {
                    offset: self.d4_offset,
                },
            },
            LineDescriptor {
                name: "Delta0",
                kind: LineKind::Vertical { p: self.delta0 },
            },
            LineDescriptor {
                name: "Delta1",
                kind: LineKind::Slope1 {
                    offset: self.delta1_offset,
                },
            },
        ]
    }
}

/// Conjectured phase of the spectrum at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseRegion {
    Tip,
    Bulk,
    Linear,
    One,
}

impl PhaseRegion {
    pub fn name(self) -> &'static str {
        match self {
            PhaseRegion::Tip => "Tip",
            PhaseRegion::Bulk => "Bulk",
            PhaseRegion::Linear => "Linear",
            PhaseRegion::One => "One",
        }
    }
}

/// Strictly inside the red parabola. The abscissas of the parabola at a
/// given `p` are exactly the roots of `C`, so the test compares `q`
/// against the two parametric ordinates.
pub fn is_inside_red(kappa: Kappa, pt: MomentPoint) -> bool {
    let roots = gamma_roots(kappa, pt);
    match (roots.gamma_0, roots.gamma_0_plus) {
        (Some(g0), Some(g0p)) => {
            if g0 == g0p {
                return false;
            }
            let upper = red_point(kappa, g0).q;
            let lower = red_point(kappa, g0p).q;
            pt.q > lower && pt.q < upper
        }
        _ => false,
    }
}

/// Strictly inside the green parabola.
pub fn is_inside_green(kappa: Kappa, pt: MomentPoint) -> bool {
    let k = kappa.get();
    let head = (4.0 + k) * (4.0 + k) / (8.0 * k);
    let rad = 2.0 * (head - pt.p) / k;
    if rad <= 0.0 {
        return false;
    }
    let g = rad.sqrt();
    let upper = green_point(kappa, g).q;
    let lower = green_point(kappa, -g).q;
    pt.q > lower && pt.q < upper
}

fn above_delta1(kappa: Kappa, pt: MomentPoint) -> bool {
    pt.q - pt.p > transition_lines(kappa).delta1_offset
}

/// Classify the conjectured phase.
///
/// Left of `D0'` the tip/one boundary is the quartic branch, decided by
/// the sign of `beta_tip - beta_1`; between `D0'` and `D0` the bulk/one
/// boundary is the green left branch, decided by `gamma_1'` against
/// `gamma_0`; right of `D0` the linear/one boundary is the line `D1`.
/// Points above the `gamma_1` reality line are always Tip, Bulk or
/// Linear.
pub fn classify_conjecture(kappa: Kappa, pt: MomentPoint) -> Result<PhaseRegion, PhaseError> {
    if !pt.p.is_finite() || !pt.q.is_finite() {
        return Err(PhaseError::Unclassifiable("non-finite input".into()));
    }
    let lines = transition_lines(kappa);
    if pt.p <= lines.d0_prime {
        if above_delta1(kappa, pt) {
            return Ok(PhaseRegion::Tip);
        }
        let bundle = spectrum_functions(kappa, pt);
        match (bundle.beta_tip, bundle.beta_1) {
            (Some(bt), Some(b1)) => {
                if bt >= b1 {
                    Ok(PhaseRegion::Tip)
                } else {
                    Ok(PhaseRegion::One)
                }
            }
            _ => Err(PhaseError::Unclassifiable(
                "missing roots left of D0'".into(),
            )),
        }
    } else if pt.p <= lines.d0 {
        if above_delta1(kappa, pt) {
            return Ok(PhaseRegion::Bulk);
        }
        let roots = gamma_roots(kappa, pt);
        match (roots.gamma_0, roots.gamma_1) {
            (Some(g0), Some(g1)) => {
                let g1_dual = dual_gamma(kappa, g1);
                if g1_dual >= g0 {
                    Ok(PhaseRegion::Bulk)
                } else {
                    Ok(PhaseRegion::One)
                }
            }
            _ => Err(PhaseError::Unclassifiable(
                "missing roots between D0' and D0".into(),
            )),
        }
    } else if pt.q - pt.p >= lines.d1_offset {
        Ok(PhaseRegion::Linear)
    } else {
        Ok(PhaseRegion::One)
    }
}

/// Value of the conjectured spectrum: the phase's spectrum function.
pub fn conjectured_beta(kappa: Kappa, pt: MomentPoint) -> Result<f64, PhaseError> {
    let region = classify_conjecture(kappa, pt)?;
    let bundle = spectrum_functions(kappa, pt);
    let missing = |what: &str| PhaseError::Unclassifiable(format!("missing {what} in its phase"));
    match region {
        PhaseRegion::Tip => bundle.beta_tip.ok_or_else(|| missing("beta_tip")),
        PhaseRegion::Bulk => bundle.beta_0.ok_or_else(|| missing("beta_0")),
        PhaseRegion::Linear => Ok(bundle.beta_lin),
        PhaseRegion::One => bundle.beta_1.ok_or_else(|| missing("beta_1")),
    }
}

/// How much of the conjecture is established at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidityStatus {
    /// Tip and bulk phases.
    ProvedDhlzI,
    /// Linear phase.
    ProvedDhlzII,
    /// Interior of the green parabola left of `D0`.
    ProvedDhlzIII,
    /// Racket-shaped domain between the green left branch and the red
    /// right part, above `D3`.
    ProvedDhlzIV,
    /// The one-phase value inside the red parabola interior.
    ProvedNew,
    UpperBoundOnly,
    LowerBoundOnly,
    Unknown,
}

impl ValidityStatus {
    pub fn name(self) -> &'static str {
        match self {
            ValidityStatus::ProvedDhlzI => "ProvedDHLZ_I",
            ValidityStatus::ProvedDhlzII => "ProvedDHLZ_II",
            ValidityStatus::ProvedDhlzIII => "ProvedDHLZ_III",
            ValidityStatus::ProvedDhlzIV => "ProvedDHLZ_IV",
            ValidityStatus::ProvedNew => "ProvedNew",
            ValidityStatus::UpperBoundOnly => "UpperBoundOnly",
            ValidityStatus::LowerBoundOnly => "LowerBoundOnly",
            ValidityStatus::Unknown => "Unknown",
        }
    }
}

/// Partition of the half-plane below the `gamma_1` reality line by the
/// red parabola.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EiePartition {
    EMinus,
    Interior,
    EPlus,
    AboveDelta1,
}

impl EiePartition {
    pub fn name(self) -> &'static str {
        match self {
            EiePartition::EMinus => "E_minus",
            EiePartition::Interior => "I",
            EiePartition::EPlus => "E_plus",
            EiePartition::AboveDelta1 => "AboveDelta1",
        }
    }
}

/// Split a point into interior / left wedge / right wedge of the red
/// parabola (below the reality line of `gamma_1`).
///
/// The wedge side is the sign of `C(gamma_1)`: on each slope-1 line the
/// parabola is crossed at `gamma_1`, and `C(gamma_1) = p_red(gamma_1) - p`
/// measures which side of that crossing the point falls on. Points on the
/// parabola itself are assigned to `EMinus`.
pub fn partition_eie(kappa: Kappa, pt: MomentPoint) -> EiePartition {
    if above_delta1(kappa, pt) {
        return EiePartition::AboveDelta1;
    }
    if is_inside_red(kappa, pt) {
        return EiePartition::Interior;
    }
    let roots = gamma_roots(kappa, pt);
    let g1 = roots
        .gamma_1
        .expect("gamma_1 exists on or below the reality line");
    if quad_c(kappa, pt, g1) >= 0.0 {
        EiePartition::EMinus
    } else {
        EiePartition::EPlus
    }
}

/// Classify how the spectrum value at a point is known.
pub fn classify_validity(kappa: Kappa, pt: MomentPoint) -> Result<ValidityStatus, PhaseError> {
    let region = classify_conjecture(kappa, pt)?;
    match region {
        PhaseRegion::Tip | PhaseRegion::Bulk => Ok(ValidityStatus::ProvedDhlzI),
        PhaseRegion::Linear => Ok(ValidityStatus::ProvedDhlzII),
        PhaseRegion::One => {
            if is_inside_red(kappa, pt) {
                return Ok(ValidityStatus::ProvedNew);
            }
            let lines = transition_lines(kappa);
            if is_inside_green(kappa, pt) && pt.p < lines.d0 {
                return Ok(ValidityStatus::ProvedDhlzIII);
            }
            // racket between green left branch and red right part, above D3;
            // its interior is inside the red parabola, so only boundary
            // points reach this test
            if pt.q - pt.p >= lines.d3_offset && !is_strictly_outside_red(kappa, pt) {
                return Ok(ValidityStatus::ProvedDhlzIV);
            }
            match partition_eie(kappa, pt) {
                EiePartition::EPlus => Ok(ValidityStatus::UpperBoundOnly),
                EiePartition::EMinus | EiePartition::Interior => Ok(ValidityStatus::LowerBoundOnly),
                EiePartition::AboveDelta1 => Ok(ValidityStatus::Unknown),
            }
        }
    }
}

fn is_strictly_outside_red(kappa: Kappa, pt: MomentPoint) -> bool {
    let roots = gamma_roots(kappa, pt);
    match (roots.gamma_0, roots.gamma_0_plus) {
        (Some(g0), Some(g0p)) => {
            let upper = red_point(kappa, g0).q;
            let lower = red_point(kappa, g0p).q;
            pt.q > upper || pt.q < lower
        }
        _ => true,
    }
}

/// Proof zones of the sub-solution construction. They partition the
/// one-phase region intersected with the sector where both root pairs
/// exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProofZone {
    ZoneI,
    ZoneII,
    ZoneIII,
    ZoneIV,
    Outside,
}

impl ProofZone {
    pub fn name(self) -> &'static str {
        match self {
            ProofZone::ZoneI => "ZoneI",
            ProofZone::ZoneII => "ZoneII",
            ProofZone::ZoneIII => "ZoneIII",
            ProofZone::ZoneIV => "ZoneIV",
            ProofZone::Outside => "Outside",
        }
    }
}

/// Zone classification by the root inequalities:
///
/// ```text
/// I:   max(-1/2, g1') < g0 < min(g1' + 2/kappa, g1)
/// II:  g1' < g0 < min(-1/2, g1' + 2/kappa) < g1
/// III: g1' + 2/kappa < min(-1/2, g0) < g1
/// IV:  max(-1/2, g1') < min(g1' + 2/kappa, g1) < g0
/// ```
///
/// Returns `Outside` when a root pair is missing, the point is not in the
/// one-phase region, or no block matches (boundary points).
pub fn proof_zone(kappa: Kappa, pt: MomentPoint) -> ProofZone {
    let roots = gamma_roots(kappa, pt);
    let (g0, g1) = match (roots.gamma_0, roots.gamma_1) {
        (Some(a), Some(b)) => (a, b),
        _ => return ProofZone::Outside,
    };
    if classify_conjecture(kappa, pt) != Ok(PhaseRegion::One) {
        return ProofZone::Outside;
    }
    let g1d = dual_gamma(kappa, g1);
    let shift = g1d + 2.0 / kappa.get();
    let zone_i = g1d.max(-0.5) < g0 && g0 < shift.min(g1);
    let zone_ii = {
        let cap = (-0.5f64).min(shift);
        g1d < g0 && g0 < cap && cap < g1
    };
    let zone_iii = {
        let cap = (-0.5f64).min(g0);
        shift < cap && cap < g1
    };
    let zone_iv = {
        let cap = shift.min(g1);
        g1d.max(-0.5) < cap && cap < g0
    };
    match (zone_i, zone_ii, zone_iii, zone_iv) {
        (true, false, false, false) => ProofZone::ZoneI,
        (false, true, false, false) => ProofZone::ZoneII,
        (false, false, true, false) => ProofZone::ZoneIII,
        (false, false, false, true) => ProofZone::ZoneIV,
        _ => ProofZone::Outside,
    }
}

/// `beta_1` of the m-fold transform:
/// `(1 + 2/m) p - (2/m) q - 1/2 - sqrt(1 + (2 kappa / m)(p - q)) / 2`.
pub fn m_fold_beta(kappa: Kappa, m: i32, pt: MomentPoint) -> Result<f64, PhaseError> {
    if m == 0 {
        return Err(PhaseError::ZeroFold);
    }
    let mf = f64::from(m);
    let radicand = 1.0 + 2.0 * kappa.get() / mf * (pt.p - pt.q);
    if radicand < 0.0 {
        return Err(PhaseError::MFoldDomain(radicand));
    }
    Ok((1.0 + 2.0 / mf) * pt.p - 2.0 / mf * pt.q - 0.5 - 0.5 * radicand.sqrt())
}

/// The m-fold moment transform `(p, q) -> (p, (1 - 1/m) p + q/m)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MFoldTransform {
    pub m: i32,
}

impl MFoldTransform {
    pub fn new(m: i32) -> Result<Self, PhaseError> {
        if m == 0 {
            Err(PhaseError::ZeroFold)
        } else {
            Ok(MFoldTransform { m })
        }
    }

    pub fn forward(&self, pt: MomentPoint) -> MomentPoint {
        let mf = f64::from(self.m);
        MomentPoint {
            p: pt.p,
            q: (1.0 - 1.0 / mf) * pt.p + pt.q / mf,
        }
    }

    pub fn inverse(&self, pt: MomentPoint) -> MomentPoint {
        let mf = f64::from(self.m);
        MomentPoint {
            p: pt.p,
            q: (1.0 - mf) * pt.p + mf * pt.q,
        }
    }
}

/// Both root pairs exist (point in the sector bounded by the two reality
/// lines).
pub fn in_sector(kappa: Kappa, pt: MomentPoint) -> bool {
    disc_c(kappa, pt.p) >= 0.0 && disc_a(kappa, pt) >= 0.0
}

/// Nonempty super-solution exponent interval
/// `(gamma_0, min(gamma_0^+, gamma_1, gamma_1' + 2/kappa, gamma_lin))`,
/// which exists exactly on the proved green-interior domain.
#[derive(Debug, Clone, PartialEq)]
pub enum SupersolutionFeasibility {
    Feasible { gamma_lo: f64, gamma_hi: f64 },
    Infeasible { gap: f64 },
}

pub fn supersolution_feasibility(
    kappa: Kappa,
    pt: MomentPoint,
) -> Result<SupersolutionFeasibility, PhaseError> {
    let roots = gamma_roots(kappa, pt);
    let (g0, g0p, g1) = match (roots.gamma_0, roots.gamma_0_plus, roots.gamma_1) {
        (Some(a), Some(b), Some(c)) => (a, b, c),
        _ => {
            return Err(PhaseError::Unclassifiable(
                "super-solution interval needs both root pairs".into(),
            ))
        }
    };
    let g1d = dual_gamma(kappa, g1);
    let hi = g0p
        .min(g1)
        .min(g1d + 2.0 / kappa.get())
        .min(gamma_lin(kappa));
    if g0 < hi {
        Ok(SupersolutionFeasibility::Feasible {
            gamma_lo: g0,
            gamma_hi: hi,
        })
    } else {
        Ok(SupersolutionFeasibility::Infeasible { gap: g0 - hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(v: f64) -> Kappa {
        Kappa::new(v).unwrap()
    }

    fn pt(p: f64, q: f64) -> MomentPoint {
        MomentPoint { p, q }
    }

    #[test]
    fn red_green_examples() {
        let r = red_point(k(2.0), 0.75);
        assert!((r.p - 1.6875).abs() < 1e-15);
        assert!((r.q - 1.875).abs() < 1e-15);
        let r0 = red_point(k(2.0), 0.0);
        assert_eq!((r0.p, r0.q), (0.0, 0.0));
        let g = green_point(k(2.0), -2.0);
        assert!((g.p + 1.75).abs() < 1e-15);
        assert!((g.q + 7.75).abs() < 1e-15);
    }

    #[test]
    fn quartic_examples() {
        assert!((quartic_disc(k(2.0), 2.0) - 49.0).abs() < 1e-12);
        let q0 = blue_quartic_point(k(2.0), 2.0).unwrap();
        assert!((q0.p + 1.75).abs() < 1e-12);
        assert!((q0.q + 3.75).abs() < 1e-12);
        let half = blue_quartic_point(k(2.0), 0.5).unwrap();
        assert!(half.p.abs() < 1e-12);
        assert!((half.q - 0.25).abs() < 1e-12);
        let b = spectrum_functions(k(2.0), pt(half.p, half.q));
        assert!((b.beta_tip.unwrap() + 1.0).abs() < 1e-12);
        assert!((b.beta_1.unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn line_constants() {
        let lines = transition_lines(k(2.0));
        assert!((lines.d1_offset - 3.0 / 16.0).abs() < 1e-15);
        assert!((lines.d4_offset + 6.0).abs() < 1e-15);
        assert!((lines.delta0 - 2.25).abs() < 1e-15);
        assert!((lines.d3_offset + 2.0).abs() < 1e-15);
        let lm = landmarks(k(2.0));
        assert!((lines.d1_offset - (lm.q0 - lm.p0)).abs() < 1e-15);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify_conjecture(k(2.0), pt(1.0, 0.0)).unwrap(),
            PhaseRegion::One
        );
        assert_eq!(
            classify_conjecture(k(2.0), pt(-3.0, 10.0)).unwrap(),
            PhaseRegion::Tip
        );
        assert_eq!(
            classify_conjecture(k(2.0), pt(2.0, 2.0)).unwrap(),
            PhaseRegion::One
        );
        assert_eq!(
            classify_conjecture(k(2.0), pt(2.0, 3.0)).unwrap(),
            PhaseRegion::Linear
        );
        assert_eq!(
            classify_conjecture(k(2.0), pt(1.0, 2.0)).unwrap(),
            PhaseRegion::Bulk
        );
    }

    #[test]
    fn conjectured_beta_on_transitions() {
        // on D1 the linear and one-phase values agree
        let on_d1 = pt(2.0, 2.0 + 3.0 / 16.0);
        let b = conjectured_beta(k(2.0), on_d1).unwrap();
        assert!((b - 0.875).abs() < 1e-12);
        let bundle = spectrum_functions(k(2.0), on_d1);
        assert!((bundle.beta_1.unwrap() - 0.875).abs() < 1e-12);

        // triple coincidence at P_0
        let lm = landmarks(k(2.0));
        let p0 = pt(lm.p0, lm.q0);
        let bundle = spectrum_functions(k(2.0), p0);
        assert!((bundle.beta_0.unwrap() - 0.5625).abs() < 1e-12);
        assert!((bundle.beta_1.unwrap() - 0.5625).abs() < 1e-12);
        assert!((bundle.beta_lin - 0.5625).abs() < 1e-12);

        // concurrency at Q_0
        let q0 = pt(lm.q0_point.p, lm.q0_point.q);
        let bundle = spectrum_functions(k(2.0), q0);
        let bt = bundle.beta_tip.unwrap();
        assert!((bundle.beta_0.unwrap() - bt).abs() < 1e-12);
        assert!((bundle.beta_1.unwrap() - bt).abs() < 1e-12);
    }

    #[test]
    fn eie_partition_examples() {
        assert_eq!(partition_eie(k(2.0), pt(1.0, 1.0)), EiePartition::Interior);
        assert_eq!(partition_eie(k(2.0), pt(5.0, 0.0)), EiePartition::EPlus);
        assert_eq!(
            partition_eie(k(2.0), pt(1.0, 2.0)),
            EiePartition::AboveDelta1
        );
        assert_eq!(partition_eie(k(2.0), pt(0.0, 0.2)), EiePartition::EMinus);
    }

    #[test]
    fn validity_examples() {
        assert_eq!(
            classify_validity(k(2.0), pt(1.0, 0.0)).unwrap(),
            ValidityStatus::ProvedNew
        );
        assert_eq!(
            classify_validity(k(2.0), pt(2.0, 3.0)).unwrap(),
            ValidityStatus::ProvedDhlzII
        );
        // far right, below Delta1, outside every proved region
        assert_eq!(
            classify_validity(k(2.0), pt(5.0, 0.0)).unwrap(),
            ValidityStatus::UpperBoundOnly
        );
    }

    #[test]
    fn zone_examples() {
        assert_eq!(proof_zone(k(2.0), pt(1.5, 1.0)), ProofZone::ZoneI);
        // just right of the quartic below Q_0
        assert_eq!(proof_zone(k(2.0), pt(-2.0, -4.3)), ProofZone::ZoneII);
        // below D4, left of the gamma_0 reality line
        assert_eq!(proof_zone(k(2.0), pt(1.0, -5.5)), ProofZone::ZoneIII);
        assert_eq!(proof_zone(k(2.0), pt(2.0, 2.1)), ProofZone::ZoneIV);
        // linear-phase point is outside
        assert_eq!(proof_zone(k(2.0), pt(2.0, 3.0)), ProofZone::Outside);
    }

    #[test]
    fn m_fold_values() {
        let b = m_fold_beta(k(2.0), 2, pt(1.0, 0.0)).unwrap();
        assert!((b - (1.5 - 0.5 * 3f64.sqrt())).abs() < 1e-12);
        // m = 1 reduces to beta_1
        let direct = spectrum_functions(k(2.0), pt(1.0, 0.0)).beta_1.unwrap();
        let b1 = m_fold_beta(k(2.0), 1, pt(1.0, 0.0)).unwrap();
        assert!((b1 - direct).abs() < 1e-14);
        // p = q gives p - 1 for every m
        for m in [-7, -1, 1, 3, 12] {
            let b = m_fold_beta(k(3.0), m, pt(0.4, 0.4)).unwrap();
            assert!((b - (-0.6)).abs() < 1e-14);
        }
        assert!(m_fold_beta(k(2.0), 0, pt(1.0, 0.0)).is_err());
        assert!(m_fold_beta(k(2.0), 1, pt(0.0, 1.0)).is_err());
    }

    #[test]
    fn m_fold_transform_consistency() {
        let t = MFoldTransform::new(2).unwrap();
        let x = pt(1.0, 0.0);
        let fwd = t.forward(x);
        assert!((fwd.q - 0.5).abs() < 1e-15);
        let beta_via_transform = spectrum_functions(k(2.0), fwd).beta_1.unwrap();
        let beta_direct = m_fold_beta(k(2.0), 2, x).unwrap();
        assert!((beta_via_transform - beta_direct).abs() < 1e-13);
    }

    #[test]
    fn supersolution_examples() {
        // one-phase point inside the green interior left of D0: feasible
        match supersolution_feasibility(k(2.0), pt(1.5, 1.0)).unwrap() {
            SupersolutionFeasibility::Feasible { gamma_lo, gamma_hi } => {
                assert!(gamma_lo < gamma_hi)
            }
            other => panic!("expected feasible, got {other:?}"),
        }
        // zone III point: infeasible
        match supersolution_feasibility(k(2.0), pt(1.0, -5.5)).unwrap() {
            SupersolutionFeasibility::Infeasible { gap } => assert!(gap > 0.0),
            other => panic!("expected infeasible, got {other:?}"),
        }
        // on D0 the interval degenerates
        let lm = landmarks(k(2.0));
        match supersolution_feasibility(k(2.0), pt(lm.p0, lm.q0 - 0.8)).unwrap() {
            SupersolutionFeasibility::Infeasible { gap } => assert!(gap.abs() < 1e-9),
            other => panic!("expected boundary-infeasible, got {other:?}"),
        }
    }

    #[test]
    fn insideness() {
        assert!(is_inside_red(k(2.0), pt(1.0, 1.0)));
        assert!(!is_inside_red(k(2.0), pt(5.0, 0.0)));
        assert!(is_inside_green(k(2.0), pt(1.0, 0.0)));
        assert!(!is_inside_green(k(2.0), pt(1.0, 1.0)));
    }
}
