//! Acceptance suite. One test per criterion; each prints a PASS line
//! with its elapsed time, and any failure panics with the offending
//! values. Criteria 5 and 6 are the heavy ones (sign verification on the
//! full annulus grid and the Monte-Carlo validation at N = 20000);
//! criterion 7 reruns both bitwise across worker pools of 1, 4 and 8.

mod common;

use common::dd_gauss_2f1;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slelab_core::flow::*;
use slelab_core::operator::*;
use slelab_core::phase::*;
use slelab_core::rational::{self, rat, Rat};
use slelab_core::special::*;
use slelab_core::spectrum::*;
use std::time::Instant;

const KAPPAS: [f64; 5] = [1.0, 2.0, 4.0, 6.0, 8.0];

fn k(v: f64) -> Kappa {
    Kappa::new(v).unwrap()
}

fn pt(p: f64, q: f64) -> MomentPoint {
    MomentPoint::new(p, q).unwrap()
}

fn rel_ok(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1.0f64.max(a.abs()).max(b.abs())
}

#[test]
fn criterion_1_closed_form_identity_suite() {
    let t0 = Instant::now();
    let tol = 1e-10;
    for &kv in &KAPPAS {
        let kappa = k(kv);
        let lm = landmarks(kappa);
        // duality over a deterministic sample
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let p: f64 = rng.gen_range(-6.0..6.0);
            let g: f64 = rng.gen_range(-4.0..4.0);
            let m = pt(p, 0.0);
            assert!(
                rel_ok(
                    beta_gamma(kappa, m, g),
                    beta_gamma(kappa, m, dual_gamma(kappa, g)),
                    tol
                ),
                "duality kappa={kv} p={p} gamma={g}"
            );
        }
        // root certification
        for _ in 0..200 {
            let p: f64 = rng.gen_range(-8.0..8.0);
            let q: f64 = rng.gen_range(-8.0..8.0);
            let m = pt(p, q);
            let roots = gamma_roots(kappa, m);
            for g in [roots.gamma_0, roots.gamma_0_plus].into_iter().flatten() {
                assert!(
                    quad_c(kappa, m, g).abs() <= tol * (1.0 + g * g) * (1.0 + p.abs()),
                    "C-root kappa={kv} ({p},{q})"
                );
            }
            for g in [roots.gamma_1_minus, roots.gamma_1].into_iter().flatten() {
                assert!(
                    quad_a(kappa, m, g).abs() <= tol * (1.0 + g * g) * (1.0 + (p - q).abs()),
                    "A-root kappa={kv} ({p},{q})"
                );
            }
        }
        // beta_0 = beta_lin at p0; beta_tip = beta_0 at p0'
        let b_at_p0 = spectrum_functions(kappa, pt(lm.p0, 0.0));
        assert!(rel_ok(b_at_p0.beta_0.unwrap(), b_at_p0.beta_lin, tol));
        let b_at_pp0 = spectrum_functions(kappa, pt(lm.p_prime0, 0.0));
        assert!(rel_ok(
            b_at_pp0.beta_tip.unwrap(),
            b_at_pp0.beta_0.unwrap(),
            tol
        ));
        // coincidence along the middle red part and the green left branch
        for i in 0..50 {
            let g = 1.0 / kv + (1.0 / kv + 0.5) * i as f64 / 49.0;
            let cp = red_point(kappa, g);
            let b = spectrum_functions(kappa, pt(cp.p, cp.q));
            assert!(
                rel_ok(b.beta_0.unwrap(), b.beta_1.unwrap(), tol),
                "middle red kappa={kv} gamma={g}"
            );
        }
        for i in 0..50 {
            let gp = 1.0 / kv + 3.0 * i as f64 / 49.0;
            let cp = green_point(kappa, gp);
            let b = spectrum_functions(kappa, pt(cp.p, cp.q));
            assert!(
                rel_ok(b.beta_0.unwrap(), b.beta_1.unwrap(), tol),
                "left green kappa={kv} gamma'={gp}"
            );
        }
        // quartic coincidence for gamma >= 1/kappa
        for i in 0..50 {
            let g = 1.0 / kv + 4.0 * i as f64 / 49.0;
            let cp = blue_quartic_point(kappa, g).unwrap();
            let b = spectrum_functions(kappa, pt(cp.p, cp.q));
            assert!(
                rel_ok(b.beta_tip.unwrap(), b.beta_1.unwrap(), tol),
                "quartic kappa={kv} gamma={g}"
            );
        }
        // triple coincidence at P_0
        let b = spectrum_functions(kappa, pt(lm.p0, lm.q0));
        assert!(rel_ok(b.beta_0.unwrap(), b.beta_1.unwrap(), tol));
        assert!(rel_ok(b.beta_0.unwrap(), b.beta_lin, tol));
    }
    println!(
        "criterion 1 (closed-form identity suite): PASS [{:?}]",
        t0.elapsed()
    );
}

#[test]
fn criterion_2_landmark_reproduction_exact() {
    let t0 = Instant::now();
    let kappa = rat(2, 1);
    let lm = rational::landmarks(&kappa);
    assert_eq!((lm.p0.clone(), lm.q0.clone()), (rat(27, 16), rat(15, 8)));
    assert_eq!(lm.q0_point, (rat(-7, 4), rat(-15, 4)));
    assert_eq!(lm.q0_prime_point, (rat(-7, 4), rat(-31, 4)));
    assert_eq!(lm.t0, (rat(9, 4), rat(3, 2)));
    assert_eq!(lm.t1, (rat(5, 4), rat(3, 2)));
    // quartic point at gamma = 1/kappa, exact
    let qp = rational::quartic_point(&kappa, &rat(1, 2)).unwrap();
    assert_eq!(qp, (rat(0, 1), rat(1, 4)));
    // beta_tip = beta_1 = -1 there, exact
    let bt = rational::beta_tip(&kappa, &qp.0).unwrap();
    assert_eq!(bt, rat(-1, 1));
    let b1 = rational::beta_1(&kappa, &qp.0, &qp.1).unwrap();
    assert_eq!(b1, rat(-1, 1));
    // float route agrees bit-for-bit with the rational values where the
    // arithmetic is dyadic
    let lmf = landmarks(k(2.0));
    assert_eq!(lmf.p0, 27.0 / 16.0);
    assert_eq!(lmf.t0.p, 2.25);
    assert_eq!(lmf.t1.p, 1.25);
    let one: Rat = rat(1, 1);
    assert_eq!(&qp.0 + &qp.1 + &one, rat(5, 4));
    println!(
        "criterion 2 (landmark reproduction, rational mode): PASS [{:?}]",
        t0.elapsed()
    );
}

#[test]
fn criterion_3_hypergeometric_suite() {
    let t0 = Instant::now();
    // series against quadruple-precision summation on 1000 draws
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut accepted = 0usize;
    while accepted < 1000 {
        let a: f64 = rng.gen_range(-4.0..4.0);
        let b: f64 = rng.gen_range(-4.0..4.0);
        let c: f64 = rng.gen_range(0.3..5.0);
        let x: f64 = rng.gen_range(0.0..0.9);
        let near_int = |v: f64| (v - v.round()).abs() < 1e-3;
        if (a <= 0.0 && near_int(a)) || (b <= 0.0 && near_int(b)) || near_int(c) {
            continue;
        }
        let mut term = 1.0f64;
        let mut abs_sum = 1.0f64;
        for kk in 0..400 {
            let kf = kk as f64;
            term *= (a + kf) * (b + kf) * x / ((c + kf) * (kf + 1.0));
            abs_sum += term.abs();
            if term.abs() < 1e-18 * abs_sum {
                break;
            }
        }
        let oracle = dd_gauss_2f1(a, b, c, x, 4000);
        if abs_sum > 100.0 * (1.0 + oracle.abs()) {
            continue;
        }
        let mine = gauss_2f1(a, b, c, x).unwrap();
        assert!(
            (mine - oracle).abs() <= 1e-12 * 1.0f64.max(abs_sum),
            "2F1({a},{b};{c};{x})"
        );
        accepted += 1;
    }
    // endpoint identity and boundary residual on all buildable profiles
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut profiles = 0usize;
    for &kv in &[2.0, 6.0] {
        let kappa = k(kv);
        for &(p, q) in &[(1.0, 0.0), (1.5, 1.0), (0.5, -1.0), (-2.0, -4.5)] {
            let m = pt(p, q);
            let roots = gamma_roots(kappa, m);
            let Some(g1) = roots.gamma_1 else { continue };
            let g1d = dual_gamma(kappa, g1);
            for g in [g1, g1 - 1.0, g1d - 0.05, g1d - 0.4] {
                let Ok(profile) = build_test_profile(kappa, m, g) else {
                    continue;
                };
                profiles += 1;
                let hp = &profile.params;
                // g0'(4)/g0(4) = A/kappa via the connection constants
                let (g4, dg4) = match profile.case {
                    RegularityCase::IV => {
                        let k1 = gamma_fn(hp.c).value
                            * sqrt_pi
                            * reciprocal_gamma(hp.c - hp.a)
                            * reciprocal_gamma(hp.c - hp.b);
                        let k1p = gamma_fn(hp.c_prime).value
                            * sqrt_pi
                            * reciprocal_gamma(hp.c_prime - hp.a_prime)
                            * reciprocal_gamma(hp.c_prime - hp.b_prime);
                        let e = profile.gamma_dual - profile.gamma;
                        let a0 = profile.c1 * k1 + profile.c2 * k1p;
                        let a1 = profile.c1 * k1 * 2.0 * hp.a * hp.b
                            + profile.c2 * k1p * (2.0 * hp.a_prime * hp.b_prime - e);
                        (a0, -0.25 * a1)
                    }
                    _ => {
                        // terminating: raw polynomial value and derivative
                        let snap = |x: f64| {
                            if (x - x.round()).abs() < 1e-9 {
                                x.round()
                            } else {
                                x
                            }
                        };
                        let (a, b, c) = (snap(hp.a), snap(hp.b), hp.c);
                        let (mut t, mut v, mut d) = (1.0f64, 1.0f64, 0.0f64);
                        for kk in 0..200 {
                            let kf = kk as f64;
                            let nt = t * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0));
                            if nt == 0.0 {
                                break;
                            }
                            t = nt;
                            v += t;
                            d += t * (kf + 1.0);
                        }
                        (profile.c1 * v, profile.c1 * d * 0.25)
                    }
                };
                let expect = quad_a(kappa, m, profile.gamma) / kv;
                assert!(
                    (dg4 / g4 - expect).abs() <= 1e-8 * (1.0 + expect.abs()),
                    "endpoint identity kappa={kv} gamma={g}"
                );
                // boundary-equation residual
                let ev = profile.evaluator().unwrap();
                let beta = beta_gamma(kappa, m, profile.gamma);
                let gl = profile.gamma;
                for i in 1..128 {
                    let u = 0.05 + 3.9 * i as f64 / 128.0;
                    let e = ev.derivs(u);
                    let ug = u.powf(gl);
                    let gv = ug * e.value;
                    let gd = ug * (e.du + gl / u * e.value);
                    let gdd =
                        ug * (e.ddu + 2.0 * gl / u * e.du + gl * (gl - 1.0) / (u * u) * e.value);
                    let c0 = 2.0 * m.p - (m.q - m.p) * u - 2.0 * beta;
                    let c1 = (0.5 * kv * (2.0 - u) - (4.0 - u)) * u;
                    let c2 = 0.5 * kv * (4.0 - u) * u * u;
                    let res = c0 * gv + c1 * gd + c2 * gdd;
                    let floor = 1e-7 * (1.0 + beta.abs() + m.p.abs() + m.q.abs()) * ug;
                    let scale = (c0 * gv).abs() + (c1 * gd).abs() + (c2 * gdd).abs() + 1e-30;
                    assert!(
                        res.abs() <= 1e-8 * scale.max(floor),
                        "boundary residual kappa={kv} gamma={g} u={u}"
                    );
                }
            }
        }
    }
    assert!(profiles >= 20, "only {profiles} profiles built");
    println!(
        "criterion 3 (hypergeometric suite, {profiles} profiles): PASS [{:?}]",
        t0.elapsed()
    );
}

#[test]
fn criterion_4_operator_suite() {
    let t0 = Instant::now();
    // exact red-parabola solution annihilated on the sampled annulus
    for &kv in &[2.0, 6.0] {
        let kappa = k(kv);
        for &g in &[0.25, 0.5, 1.0] {
            let m = red_moment_point(kappa, g);
            let profile = build_test_profile(kappa, m, g).unwrap();
            let tf = TestFunction::single(&profile).unwrap();
            for i in 0..12 {
                let r = 0.5 + 0.499 * i as f64 / 11.0;
                for j in 0..32 {
                    let theta =
                        -std::f64::consts::PI + 2.0 * std::f64::consts::PI * j as f64 / 32.0;
                    let dp = DiskPoint::from_polar(r, theta).unwrap();
                    let ratio = action_closed_form(&tf, &dp).unwrap();
                    assert!(
                        ratio.abs() <= 1e-10,
                        "annihilation kappa={kv} gamma={g} r={r} theta={theta}: {ratio}"
                    );
                }
            }
        }
    }
    // closed form vs finite differences at order >= 1.9 (shared nodes,
    // away from the theta = 0 derivative blow-up)
    for &kv in &[2.0, 6.0] {
        let kappa = k(kv);
        let m = pt(1.0, 0.0);
        let roots = gamma_roots(kappa, m);
        let g1d = dual_gamma(kappa, roots.gamma_1.unwrap());
        let profile = build_test_profile(kappa, m, g1d - 0.07).unwrap();
        let tf = TestFunction::single(&profile).unwrap();
        let sampler = |r: f64, theta: f64| {
            let dp = DiskPoint::from_polar(r, theta).unwrap();
            tf.value(&dp)
        };
        let base = PolarMesh::new(0.3, 0.7, 33, 64);
        let mut errs = Vec::new();
        for level in 0..3u32 {
            let mesh = PolarMesh::new(0.3, 0.7, 32 * (1usize << level) + 1, 64 << level);
            let field = mesh.sample(sampler);
            let grid = apply_fd(kappa, m, &mesh, &field);
            let mut total = 0.0;
            let mut count = 0usize;
            for i0 in 1..base.n_r - 1 {
                for j0 in 0..base.n_theta {
                    if base.theta(j0).abs() < 0.35 {
                        continue;
                    }
                    let i = i0 << level;
                    let j = j0 << level;
                    let dp = DiskPoint::from_polar(mesh.r(i), mesh.theta(j)).unwrap();
                    let exact = action_closed_form(&tf, &dp).unwrap() * tf.value(&dp);
                    total += (grid.values[(i - 1) * mesh.n_theta + j] - exact).abs();
                    count += 1;
                }
            }
            errs.push(total / count as f64);
        }
        let order = (errs[1] / errs[2]).log2();
        assert!(order >= 1.9, "kappa={kv}: errs {errs:?} order {order:.2}");
    }
    // dominance ratios beyond 10 at r = 1 - 1e-6 on paths inside each
    // regime
    {
        let kappa = k(2.0);
        let m = pt(1.0, 0.0);
        let roots = gamma_roots(kappa, m);
        let g1d = dual_gamma(kappa, roots.gamma_1.unwrap());
        let profile = build_test_profile(kappa, m, g1d - 0.05).unwrap();
        let lf = LogModifiedTestFunction {
            base: TestFunction::single(&profile).unwrap(),
            delta: 1.0,
        };
        let r: f64 = 1.0 - 1e-6;
        // case I: u of order one
        let dp = DiskPoint::from_polar(r, std::f64::consts::PI / 2.0).unwrap();
        let terms = action_terms(&lf, &dp).unwrap();
        assert!(terms.log_term.abs() > 10.0 * terms.usq_term.abs());
        assert!(terms.log_term.abs() > 10.0 * terms.u_term.abs());
        // case II: u = (1 - r)^(1/2)
        let u = (1.0 - r).powf(0.5);
        let cos_theta = (1.0 + r * r - u) / (2.0 * r);
        let dp = DiskPoint::from_polar(r, cos_theta.acos()).unwrap();
        let terms = action_terms(&lf, &dp).unwrap();
        assert!(terms.log_term.abs() > 10.0 * terms.usq_term.abs());
        assert!(terms.log_term.abs() > 10.0 * terms.u_term.abs());
        // case III: the u = (1 - r)^2 corner, sign C(gamma)
        let dp = DiskPoint::from_polar(r, 0.0).unwrap();
        let terms = action_terms(&lf, &dp).unwrap();
        assert!(terms.usq_term.abs() > 10.0 * terms.log_term.abs());
        assert!(terms.usq_term.abs() > 10.0 * terms.u_term.abs());
        assert!(terms.usq_term < 0.0 && quad_c(kappa, m, profile.gamma) < 0.0);
    }
    println!("criterion 4 (operator suite): PASS [{:?}]", t0.elapsed());
}

/// Three robust interior points per proof zone at kappa = 2.
fn zone_points() -> [(f64, f64, ProofZone); 12] {
    use ProofZone::*;
    [
        (1.5, 1.0, ZoneI),
        (1.2, 0.5, ZoneI),
        (0.8, 0.1, ZoneI),
        (-2.0, -4.3, ZoneII),
        (-2.5, -5.5, ZoneII),
        (-3.0, -6.5, ZoneII),
        (1.0, -5.5, ZoneIII),
        (0.0, -7.0, ZoneIII),
        (2.0, -6.0, ZoneIII),
        (2.0, -2.0, ZoneIV),
        (2.2, -3.0, ZoneIV),
        (1.8, -4.0, ZoneIV),
    ]
}

fn run_criterion_5() -> Vec<SignReport> {
    let kappa = k(2.0);
    let grid = AnnulusGrid::default();
    let mut reports = Vec::new();
    for (p, q, zone) in zone_points() {
        let m = pt(p, q);
        assert_eq!(proof_zone(kappa, m), zone, "zone of ({p}, {q})");
        let choice = choose_subsolution(kappa, m, grid).unwrap_or_else(|e| {
            panic!("construction at ({p}, {q}): {e}");
        });
        assert_eq!(
            choice.report.verdict,
            SignVerdict::StrictlyNegative,
            "verdict at ({p}, {q})"
        );
        assert!(choice.report.min_phi > 0.0, "positivity at ({p}, {q})");
        assert_eq!(choice.delta, 1.0);
        // the integral means exponent of the construction is beta(gamma_1)
        let lf = LogModifiedTestFunction {
            base: choice.mixed.function().unwrap(),
            delta: choice.delta,
        };
        let g1 = gamma_roots(kappa, m).gamma_1.unwrap();
        let expect = beta_gamma(kappa, m, g1);
        assert!(
            (exponent_of(&lf) - expect).abs() <= 1e-12 * (1.0 + expect.abs()),
            "exponent at ({p}, {q})"
        );
        // super-solution feasibility matches membership in the proved
        // green-interior domain
        let lines = transition_lines(kappa);
        let in_domain = is_inside_green(kappa, m) && p < lines.d0;
        match supersolution_feasibility(kappa, m).unwrap() {
            SupersolutionFeasibility::Feasible { .. } => {
                assert!(in_domain, "({p}, {q}) super-solution should be infeasible")
            }
            SupersolutionFeasibility::Infeasible { .. } => {
                assert!(!in_domain, "({p}, {q}) super-solution should be feasible")
            }
        }
        reports.push(choice.report);
    }
    reports
}

#[test]
fn criterion_5_subsolution_mechanization() {
    let t0 = Instant::now();
    let reports = run_criterion_5();
    assert_eq!(reports.len(), 12);
    println!(
        "criterion 5 (sub-solution mechanization, 12 points, {}x{} grid): PASS [{:?}]",
        reports[0].grid.n_r,
        reports[0].grid.n_theta,
        t0.elapsed()
    );
}

fn validation_z_list() -> [Complex64; 6] {
    [
        Complex64::new(0.5, 0.0),
        Complex64::new(0.3, 0.0),
        Complex64::new(0.7, 0.0),
        Complex64::from_polar(0.3, std::f64::consts::PI / 3.0),
        Complex64::from_polar(0.5, 2.0 * std::f64::consts::PI / 3.0),
        Complex64::from_polar(0.6, -std::f64::consts::PI / 4.0),
    ]
}

fn run_criterion_6() -> (Vec<RedParabolaReport>, BetaFit) {
    let kappa = k(2.0);
    let cfg = SimConfig::default();
    let mut reports = Vec::new();
    for (gi, gamma) in [0.25f64, 0.5].iter().enumerate() {
        let rep = validate_red_parabola(
            kappa,
            *gamma,
            &validation_z_list(),
            20_000,
            &cfg,
            42 + 1000 * gi as u64,
        )
        .unwrap();
        reports.push(rep);
    }
    let radii: Vec<f64> = (2..=7).map(|e| 1.0 - 0.5f64.powi(e)).collect();
    let fit = fit_beta(kappa, pt(1.25, 1.5), &radii, 64, 100, &cfg, 4242, 0.25).unwrap();
    (reports, fit)
}

fn assert_criterion_6(reports: &[RedParabolaReport], fit: &BetaFit) {
    let total: usize = reports.iter().map(|r| r.rows.len()).sum();
    let passed: usize = reports.iter().map(|r| r.n_pass).sum();
    assert_eq!(total, 12);
    assert!(
        passed as f64 >= 0.95 * total as f64,
        "{passed}/{total} cells within 4 standard errors"
    );
    // the z = 0.5 cell at gamma = 0.5 against the exact value
    let z_half = &reports[1].rows[0];
    let exact = 0.75f64.powf(-0.25) * 0.5;
    assert!((z_half.exact - exact).abs() < 1e-12);
    assert!(
        (z_half.mean - exact).abs() <= 4.0 * z_half.stderr,
        "z = 0.5: {} +- {} vs {exact}",
        z_half.mean,
        z_half.stderr
    );
    // beta fit at the red point
    assert!(
        (fit.slope - 0.25).abs() <= 0.15,
        "slope {} +- {}",
        fit.slope,
        fit.slope_stderr
    );
    assert!(fit.sufficient);
}

#[test]
fn criterion_6_monte_carlo_validation() {
    let t0 = Instant::now();
    let (reports, fit) = run_criterion_6();
    assert_criterion_6(&reports, &fit);
    let passed: usize = reports.iter().map(|r| r.n_pass).sum();
    println!(
        "criterion 6 (Monte-Carlo validation, {passed}/12 cells, slope {:.3} +- {:.3}): PASS [{:?}]",
        fit.slope,
        fit.slope_stderr,
        t0.elapsed()
    );
}

#[test]
fn criterion_7_determinism_across_workers() {
    let t0 = Instant::now();
    fn with_pool<R: Send>(n: usize, f: impl FnOnce() -> R + Send) -> R {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(f)
    }
    let job = || {
        let (reports, fit) = run_criterion_6();
        let signs = run_criterion_5();
        (reports, fit, signs)
    };
    let runs: Vec<_> = [1usize, 4, 8].iter().map(|&n| with_pool(n, job)).collect();
    for pair in runs.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        for (ra, rb) in a.0.iter().zip(&b.0) {
            for (rowa, rowb) in ra.rows.iter().zip(&rb.rows) {
                assert_eq!(rowa.mean.to_bits(), rowb.mean.to_bits());
                assert_eq!(rowa.stderr.to_bits(), rowb.stderr.to_bits());
            }
        }
        assert_eq!(a.1.slope.to_bits(), b.1.slope.to_bits());
        assert_eq!(a.1.slope_stderr.to_bits(), b.1.slope_stderr.to_bits());
        for (sa, sb) in a.2.iter().zip(&b.2) {
            assert_eq!(sa.min.to_bits(), sb.min.to_bits());
            assert_eq!(sa.max.to_bits(), sb.max.to_bits());
            assert_eq!(sa.min_at, sb.min_at);
            assert_eq!(sa.max_at, sb.max_at);
            assert_eq!(sa.verdict, sb.verdict);
        }
    }
    // and the statistical assertions hold on the (identical) results
    assert_criterion_6(&runs[0].0, &runs[0].1);
    println!(
        "criterion 7 (bitwise determinism across 1/4/8 workers): PASS [{:?}]",
        t0.elapsed()
    );
}
