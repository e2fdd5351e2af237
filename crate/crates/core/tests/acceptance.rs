//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test --test acceptance -- --nocapture`) and asserting
//! both the numerical bound and the runtime budget.

use num_complex::Complex64;
use std::time::Instant;

use frkt_core::arith::{self, build_table, friable_stats, SieveMode};
use frkt_core::asymptotics::{self, moments, moments_basic, solve_r_for_k};
use frkt_core::coeffs;
use frkt_core::dde::{self, Kind, SolutionTable};
use frkt_core::quad;
use frkt_core::specfun;
use frkt_core::{Config, ZParams, EULER_GAMMA};

fn cfg() -> Config {
    Config::default()
}

fn zp(re: f64, im: f64) -> ZParams {
    ZParams::from_parts(re, im).unwrap()
}

fn report(id: &str, started: Instant, budget_s: f64, ok: bool, detail: &str) {
    let elapsed = started.elapsed().as_secs_f64();
    println!(
        "acceptance {id}: {} ({elapsed:.2} s / budget {budget_s:.0} s) {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "{id}: {detail}");
    assert!(
        elapsed < budget_s,
        "{id}: runtime {elapsed:.2} s over budget {budget_s} s"
    );
}

/// Dickman oracle independent of the solver: closed forms to 2, quadrature
/// of closed forms on (2, 4].
fn dickman_oracle(v: f64) -> f64 {
    if v <= 0.0 {
        return 0.0;
    }
    if v <= 1.0 {
        return 1.0;
    }
    if v <= 2.0 {
        return 1.0 - v.ln();
    }
    let rule = quad::gauss_legendre(64);
    if v <= 3.0 {
        let tail = quad::gl_integrate(2.0, v, &rule, |t| {
            Complex64::new((1.0 - (t - 1.0).ln()) / t, 0.0)
        });
        return 1.0 - 2.0f64.ln() - tail.re;
    }
    let rho3 = dickman_oracle(3.0);
    let tail = quad::gl_integrate(3.0, v.min(4.0), &rule, |t| {
        Complex64::new(dickman_oracle(t - 1.0) / t, 0.0)
    });
    rho3 - tail.re
}

#[test]
fn acceptance_01_dickman_values() {
    let t0 = Instant::now();
    let c = cfg();
    let tab = SolutionTable::solve(Kind::G, zp(1.0, 0.0), 4.0, &c).unwrap();
    let rho2 = tab.eval(2.0).unwrap().re;
    let rho3 = tab.eval(3.0).unwrap().re;
    let e2 = (rho2 - (1.0 - 2.0f64.ln())).abs();
    let oracle3 = dickman_oracle(3.0);
    let e3 = (rho3 - oracle3).abs();
    let pinned = (rho3 - 0.048_608_39).abs();
    let ok = e2 <= 1e-10 && e3 <= 1e-8 && pinned <= 1e-8;
    report(
        "01 dickman values",
        t0,
        1.0,
        ok,
        &format!("|rho(2)-(1-log2)|={e2:.2e}, |rho(3)-oracle|={e3:.2e}"),
    );
}

#[test]
fn acceptance_02_convolution_power() {
    let t0 = Instant::now();
    let c = cfg();
    let tab2 = SolutionTable::solve(Kind::Rho, zp(2.0, 0.0), 4.0, &c).unwrap();
    // Chebyshev fits of the closed-form/quadrature oracle per unit interval
    // (still fully independent of the delay solver).
    let fits: Vec<Vec<Complex64>> = (0..4)
        .map(|h| {
            let pts = quad::lobatto_points(40, h as f64, h as f64 + 1.0);
            quad::cheb_coeffs(
                &pts.iter()
                    .map(|&v| Complex64::new(dickman_oracle(v), 0.0))
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let oracle = |v: f64| -> f64 {
        if v <= 0.0 {
            return 0.0;
        }
        if v <= 1.0 {
            return 1.0;
        }
        let h = (v.floor() as usize).min(3);
        quad::cheb_eval(&fits[h], h as f64, h as f64 + 1.0, v).re
    };
    let mut sup = 0.0f64;
    for i in 0..=160 {
        let v = i as f64 * 0.025;
        let conv = if v == 0.0 {
            0.0
        } else {
            let breaks = [1.0, 2.0, 3.0, v - 1.0, v - 2.0, v - 3.0, 0.5 * v];
            quad::adaptive_with_breaks(0.0, v, &breaks, 1e-10, &mut |t| {
                Complex64::new(oracle(t) * oracle(v - t), 0.0)
            })
            .re
        };
        sup = sup.max((tab2.eval(v).unwrap().re - conv).abs());
    }
    report(
        "02 convolution power",
        t0,
        10.0,
        sup <= 1e-6,
        &format!("sup |rho_2 - rho*rho| = {sup:.2e}"),
    );
}

#[test]
fn acceptance_03_laplace_identities() {
    let t0 = Instant::now();
    let c = cfg();
    let svals = [
        Complex64::new(1.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 1.0),
    ];
    let zvals = [(0.7, 0.0), (1.0, 0.0), (1.6, 0.5), (-0.8, 0.0)];
    let mut worst: f64 = 0.0;
    let mut ok = true;
    for &(re, im) in &zvals {
        let z = zp(re, im);
        let g = SolutionTable::solve(Kind::G, z, 40.0, &c).unwrap();
        let phi = SolutionTable::solve(Kind::Phi, z, 40.0, &c).unwrap();
        for &s in &svals {
            let (gt, gtail) = g.laplace_transform(s, 40.0).unwrap();
            let want_g = (s.ln() * (z.z - 1.0)).exp()
                * ((EULER_GAMMA + specfun::exp_integral_i(-s).unwrap()) * z.z).exp();
            let eg = (gt - want_g).norm();
            ok &= eg <= 1e-6 + gtail;
            worst = worst.max(eg - gtail);
            let (pt, ptail) = phi.laplace_transform(s, 40.0).unwrap();
            let want_p = (s.ln() * (z.theta_z - 1.0)).exp()
                * (-z.z * specfun::exp_integral_e1(s).unwrap()).exp();
            let ep = (pt - want_p).norm();
            ok &= ep <= 1e-6 + ptail;
            worst = worst.max(ep - ptail);
        }
    }
    report(
        "03 laplace identities",
        t0,
        30.0,
        ok,
        &format!("worst error beyond tail = {worst:.2e} (12 z,s pairs x 2 kinds)"),
    );
}

#[test]
fn acceptance_04_saddle_solvers() {
    let t0 = Instant::now();
    let c = cfg();
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut u = 1.0001f64;
    while u <= 1e6 {
        let (xi, _) = specfun::solve_xi(u).unwrap();
        let res = (xi.exp() - 1.0 - u * xi).abs() / (1.0 + (u * xi).abs());
        worst = worst.max(res);
        ok &= res <= 1e-12;
        u *= 1.35;
    }
    for &(r, phi) in &[(5.0, 0.0), (100.0, -std::f64::consts::FRAC_PI_4), (40.0, 2.5)] {
        let w = Complex64::from_polar(r, phi);
        let s = specfun::solve_zeta0(w, c.newton_tol).unwrap();
        ok &= s.residual <= 1e-12;
        worst = worst.max(s.residual);
    }
    // second-order expansion agreement improving through v = 50/100/200
    let t = std::f64::consts::PI / 4.0;
    let mut prev = f64::INFINITY;
    for &v in &[50.0, 100.0, 200.0] {
        let w = Complex64::from_polar(v, -t);
        let root = specfun::solve_zeta0(w, c.newton_tol).unwrap().root;
        let (xi, _) = specfun::solve_xi(v).unwrap();
        let expansion = Complex64::new(xi + t * t / (2.0 * xi * xi), -xi * t / (xi - 1.0));
        let d = (root - expansion).norm();
        ok &= d < prev;
        prev = d;
    }
    report(
        "04 saddle solvers",
        t0,
        5.0,
        ok,
        &format!("worst scaled residual = {worst:.2e}; expansion gap monotone"),
    );
}

#[test]
fn acceptance_05_sieve_exactness() {
    let t0 = Instant::now();
    let tab = build_table(100, 5.0, SieveMode::SpfSieve).unwrap();
    let st = friable_stats(&tab, None, None).unwrap();
    let mut ok = st.psi == 34 && st.histogram[0..4] == [1, 12, 18, 3];
    let tabx = build_table(10_000, 10_000.0, SieveMode::SpfSieve).unwrap();
    ok &= friable_stats(&tabx, None, None).unwrap().psi == 10_000;
    // first-moment identity at (1e6, 1e3), exact integers
    let tab6 = build_table(1_000_000, 1000.0, SieveMode::SpfSieve).unwrap();
    let lhs = tab6.omega_sum();
    let rhs: u64 = frkt_core::primes::primes_up_to(1000)
        .into_iter()
        .map(|p| tab6.psi_count_upto(1_000_000.0 / p as f64))
        .sum();
    ok &= lhs == rhs;
    // Psi(1e7, 1e3) inside the budget
    let tab7 = build_table(10_000_000, 1000.0, SieveMode::SpfSieve).unwrap();
    let psi7 = friable_stats(&tab7, None, None).unwrap().psi;
    ok &= psi7 > 0;
    report(
        "05 sieve exactness",
        t0,
        30.0,
        ok,
        &format!("psi(100,5)=34, psi_k=(1,12,18,3), sum-omega identity exact, Psi(1e7,1e3)={psi7}"),
    );
}

#[test]
fn acceptance_06_euler_products() {
    let t0 = Instant::now();
    let one = Complex64::new(1.0, 0.0);
    let b1 = coeffs::euler_b(one, one, 100_000).unwrap();
    let b2 = coeffs::euler_b(Complex64::new(2.0, 0.0), one, 100_000).unwrap();
    let basel = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
    let mut ok = (b1.value - one).norm() <= 1e-9 && (b2.value.re - basel).abs() <= 1e-6;
    for &(re, im) in &[(1.5, 0.0), (0.7, 0.4), (-0.8, 0.0)] {
        let z = Complex64::new(re, im);
        let a = coeffs::euler_b(z, one, 100_000).unwrap();
        let b = coeffs::euler_b(z, one, 200_000).unwrap();
        ok &= (a.value - b.value).norm() <= a.tail_bound;
    }
    report(
        "06 euler products",
        t0,
        10.0,
        ok,
        &format!(
            "B(1) err {:.1e}, B(2)-6/pi^2 err {:.1e}, tails honest under doubling",
            (b1.value - one).norm(),
            (b2.value.re - basel).abs()
        ),
    );
}

#[test]
fn acceptance_07_leading_term_at_z2() {
    let t0 = Instant::now();
    let c = cfg();
    let z2 = Complex64::new(2.0, 0.0);
    let a0 = coeffs::a_coeffs(z2, 0, &c).unwrap().coeff(0);
    let x = 10_000_000u64;
    let tabs = arith::build_tables_multi_y(x, &[200.0, 500.0, 2000.0]).unwrap();
    let mut devs = Vec::new();
    for tab in &tabs {
        let u = (x as f64).ln() / tab.y.ln();
        let rho2 = SolutionTable::solve(Kind::Rho, zp(2.0, 0.0), u + 1.0, &c).unwrap();
        let psi_f2 = friable_stats(tab, Some(z2), None).unwrap().psi_f.re;
        let main = a0.re * x as f64 * rho2.eval(u).unwrap().re * tab.y.ln();
        devs.push((psi_f2 / main - 1.0).abs());
    }
    let ok = devs[0] > devs[1] && devs[1] > devs[2] && devs[2] <= 0.5;
    report(
        "07 leading-term law at z=2",
        t0,
        120.0,
        ok,
        &format!("relative deviations through y=200/500/2000: {devs:.3?}"),
    );
}

#[test]
fn acceptance_08_lambda_beats_main_term() {
    let t0 = Instant::now();
    let c = cfg();
    let x_int = 1_000_000u64;
    let y = ((x_int as f64).ln().powf(0.7)).exp();
    let x = x_int as f64 + 0.5; // half-integer normalization
    let u = x.ln() / y.ln();
    let z1 = zp(1.0, 0.0);
    let tab = build_table(x_int, y, SieveMode::SpfSieve).unwrap();
    let psi = friable_stats(&tab, None, None).unwrap().psi as f64;
    let g = SolutionTable::solve(Kind::G, z1, u + 1.0, &c).unwrap();
    let profile = arith::OmegaProfile::build(x_int).unwrap();
    let lambda = asymptotics::lambda_f(x, y, z1, &g, &profile).unwrap().re;
    let rho = SolutionTable::solve(Kind::Rho, z1, u + 1.0, &c).unwrap();
    let main = x * rho.eval(u).unwrap().re; // a_0(f_1) = 1
    let e_lambda = (psi - lambda).abs();
    let e_main = (psi - main).abs();
    let ok = e_lambda <= e_main;
    report(
        "08 Lambda beats the bare main term",
        t0,
        60.0,
        ok,
        &format!("|Psi-Lambda| = {e_lambda:.1} vs |Psi - x rho(u)| = {e_main:.1} (y={y:.1}, u={u:.3})"),
    );
}

#[test]
fn acceptance_09_omega_statistics() {
    let t0 = Instant::now();
    let c = cfg();
    let (x, y) = (10_000_000u64, 1000.0);
    let xf = x as f64;
    let tab = build_table(x, y, SieveMode::SpfSieve).unwrap();
    let st = friable_stats(&tab, None, None).unwrap();
    let (mu, sigma2, _) = moments_basic(xf, y, 1.0).unwrap();
    let sigma = sigma2.sqrt();
    // Kolmogorov distance at half-integer thresholds (the lattice-aware
    // comparison; sigma < 1 puts the raw sup at the mode's jump size, which
    // no distribution on the integers can beat).
    let ks_lattice = arith::kolmogorov_vs_normal(&st.histogram, mu, sigma, true);
    let ks_plain = arith::kolmogorov_vs_normal(&st.histogram, mu, sigma, false);
    let mut ok = ks_lattice <= 0.25;
    // Gaussian local law within a factor 2 around the mode.
    let kmid = mu.floor() as u32;
    let mut gauss_ratios = Vec::new();
    for k in [kmid - 1, kmid, kmid + 1] {
        let exact = st.histogram[k as usize] as f64 / st.psi as f64;
        let pred = asymptotics::predict_local_gauss(xf, y, k).unwrap();
        let ratio = pred / exact;
        gauss_ratios.push(ratio);
        ok &= (0.5..=2.0).contains(&ratio);
    }
    // Tilted law at k = round(mu_r) for r in {0.8, 1, 1.3}.
    let rho1 = SolutionTable::solve(Kind::Rho, zp(1.0, 0.0), 4.0, &c).unwrap();
    let mut tilted_ratios = Vec::new();
    for &r0 in &[0.8, 1.0, 1.3] {
        let (mu_r, _, _) = moments_basic(xf, y, r0).unwrap();
        let k = mu_r.round() as u32;
        let r = solve_r_for_k(xf, y, k as f64, (0.25, 4.0)).unwrap();
        let rho_r = SolutionTable::solve(Kind::Rho, zp(r, 0.0), 4.0, &c).unwrap();
        let pred = asymptotics::predict_local_tilted(xf, y, k, &rho_r, &rho1, r, &c).unwrap();
        let exact = st.histogram[k as usize] as f64 / st.psi as f64;
        let ratio = pred / exact;
        tilted_ratios.push(ratio);
        ok &= (0.5..=2.0).contains(&ratio);
    }
    // Large deviations dominated by the envelope with c = 1/100.
    for &v in &[1.0, 1.5, 2.0] {
        let freq = arith::tail_frequency(&st.histogram, mu, sigma, v);
        let bound = asymptotics::large_dev(xf, y, v, &c).unwrap();
        ok &= freq <= bound;
    }
    report(
        "09 omega statistics",
        t0,
        180.0,
        ok,
        &format!(
            "KS(lattice)={ks_lattice:.3} (plain {ks_plain:.3}), gauss ratios {gauss_ratios:.2?}, tilted {tilted_ratios:.2?}"
        ),
    );
}

#[test]
fn acceptance_10_zeta_y_factorization() {
    let t0 = Instant::now();
    let s = Complex64::new(1.1, 0.0);
    let y = 10_000.0f64;
    let zeta_y = specfun::zeta_y(s, y).unwrap();
    let zeta_s = specfun::zeta(s).unwrap();
    let s_y = (s - 1.0) * y.ln();
    let mut ok = true;
    let mut worst = 0.0f64;
    for &(re, im) in &[(1.0, 0.0), (1.3, 0.4)] {
        let z = Complex64::new(re, im);
        let lhs = (z * zeta_y.ln()).exp();
        let rhs = (z * ((s - 1.0) * zeta_s).ln()).exp()
            * (z * y.ln().ln()).exp()
            * (z * (EULER_GAMMA + specfun::exp_integral_i(-s_y).unwrap())).exp();
        let rel = (lhs / rhs - 1.0).norm();
        worst = worst.max(rel);
        ok &= rel <= 0.05;
    }
    report(
        "10 zeta(s,y) factorization",
        t0,
        10.0,
        ok,
        &format!("worst relative error {worst:.2e}"),
    );
}

#[test]
fn acceptance_11_phi_limit() {
    let t0 = Instant::now();
    let c = cfg();
    let z = zp(-0.8, 0.0);
    let tab = SolutionTable::solve(Kind::Phi, z, 21.0, &c).unwrap();
    // m = 0 at z = -0.8: the function itself tends to e^{gamma z}.
    let got = tab.eval(20.0).unwrap();
    let want = (z.z * EULER_GAMMA).exp();
    let gap = (got - want).norm();
    report(
        "11 phi deep-range limit",
        t0,
        5.0,
        gap <= 1e-3,
        &format!("|phi_z^(m)(20) - e^(gamma z)| = {gap:.2e}"),
    );
}

#[test]
fn acceptance_moments_and_k_r_consistency() {
    // Secondary sanity tied to criterion 9's machinery: mu_r = r L and
    // K_1 = sqrt(mu)/sigma.
    let c = cfg();
    let rho1 = SolutionTable::solve(Kind::Rho, zp(1.0, 0.0), 4.0, &c).unwrap();
    let ms = moments(1e7, 1e3, 1.0, &rho1, &rho1, &c).unwrap();
    assert!((ms.mu_r - ms.big_l).abs() < 1e-12);
    assert!((ms.k_r - ms.mu_r.sqrt() / ms.sigma_r2.sqrt()).abs() < 1e-9);
}

#[test]
fn lambda_beats_main_term_at_three_points() {
    // The smoothed approximation outperforms the bare main term across a
    // spread of (x, y) with u in [1.5, 3].
    let c = cfg();
    for &(x_int, y) in &[(200_000u64, 60.0f64), (500_000, 300.0), (1_000_000, 533.0)] {
        let x = x_int as f64 + 0.5;
        let u = x.ln() / y.ln();
        assert!((1.5..=3.0).contains(&u), "u = {u}");
        let z1 = zp(1.0, 0.0);
        let tab = build_table(x_int, y, SieveMode::SpfSieve).unwrap();
        let psi = friable_stats(&tab, None, None).unwrap().psi as f64;
        let g = SolutionTable::solve(Kind::G, z1, u + 1.0, &c).unwrap();
        let profile = arith::OmegaProfile {
            x_max: x_int,
            omega: tab.omega.clone(),
        };
        let lambda = asymptotics::lambda_f(x, y, z1, &g, &profile).unwrap().re;
        let rho = SolutionTable::solve(Kind::Rho, z1, u + 1.0, &c).unwrap();
        let main = x * rho.eval(u).unwrap().re;
        assert!(
            (psi - lambda).abs() <= (psi - main).abs(),
            "({x_int}, {y}): Lambda err {} vs main err {}",
            (psi - lambda).abs(),
            (psi - main).abs()
        );
    }
}

#[test]
fn expansion_at_u_one_reduces_to_partial_sum() {
    // Psi(x, x; f) = M(x; f) exactly, and the assembled J=0 expansion at
    // u = 1 lands within its own envelope of that count.
    let c = cfg();
    let x = 50_000u64;
    let z2 = Complex64::new(2.0, 0.0);
    let tab = build_table(x, x as f64, SieveMode::SpfSieve).unwrap();
    let psi_f = friable_stats(&tab, Some(z2), None).unwrap().psi_f;
    let profile = arith::OmegaProfile {
        x_max: x,
        omega: tab.omega.clone(),
    };
    let m = profile.partial_m(x as f64, z2).unwrap();
    assert_eq!(psi_f.re as i64, m.re as i64, "Psi(x,x;f) = M(x;f)");
    let x_eff = x as f64 + 0.5;
    let zp2 = zp(2.0, 0.0);
    let psi_eval = dde::PsiEvaluator::new(zp2, 3.0, &c).unwrap();
    let a = coeffs::a_coeffs(z2, 1, &c).unwrap();
    let e = asymptotics::main_expansion(x_eff, x_eff, zp2, 1, &psi_eval, &a, None, &c).unwrap();
    let rel = (e.total().re / m.re - 1.0).abs();
    assert!(rel < 0.25, "Selberg-Delange shape at u = 1: rel dev {rel}");
}

#[test]
fn correction_terms_direct() {
    // z = 1, u in (1, 2): U_J at J = 1 reduces to the single term
    // (-1)^2 delta_{1,1,1} W_1(u-1) = -W_1(u-1); z = 2 at the same u has no
    // eligible jumps at all.
    let c = cfg();
    let y = 80.0f64;
    let x = y.powf(1.4);
    let u = x.ln() / y.ln();
    let profile = arith::OmegaProfile::build(300_000).unwrap();
    let z1 = zp(1.0, 0.0);
    let psi1 = dde::PsiEvaluator::new(z1, 4.0, &c).unwrap();
    let a1 = coeffs::a_coeffs(z1.z, 3, &c).unwrap();
    let (u1, _) = asymptotics::correction_terms(x, y, z1, 1, &psi1, &a1, &profile, &c).unwrap();
    let w = asymptotics::w_weighted_moments(u - 1.0, y, z1, 1, &a1, &profile, &c).unwrap();
    assert!(
        (u1 + w[1].0).norm() <= 1e-12 + 1e-9 * w[1].0.norm(),
        "U_1 = {u1} vs -W_1(u-1) = {}",
        -w[1].0
    );
    let z2 = zp(2.0, 0.0);
    let psi2 = dde::PsiEvaluator::new(z2, 4.0, &c).unwrap();
    let a2 = coeffs::a_coeffs(z2.z, 3, &c).unwrap();
    let (u2, _) = asymptotics::correction_terms(x, y, z2, 2, &psi2, &a2, &profile, &c).unwrap();
    assert!(u2.norm() < 1e-14, "no jumps are eligible for z=2 at l=1, J_z=1");
}
