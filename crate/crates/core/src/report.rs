//! Runtime self-checks mirroring the acceptance suite, for the `report`
//! command: each check returns a pass/fail with the measured value and its
//! bound, so a deployment can re-verify the numerical stack in place.

use num_complex::Complex64;
use std::time::Instant;

use crate::arith::{self, build_table, friable_stats, SieveMode};
use crate::asymptotics::{self, moments_basic, solve_r_for_k};
use crate::coeffs;
use crate::config::Config;
use crate::dde::{Kind, SolutionTable};
use crate::quad;
use crate::specfun;
use crate::zparams::ZParams;
use crate::EULER_GAMMA;

/// Outcome of one self-check.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_s: f64,
}

fn zp(re: f64, im: f64) -> ZParams {
    ZParams::from_parts(re, im).unwrap()
}

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

fn timed<F: FnOnce() -> (bool, String)>(id: &str, f: F) -> Check {
    let t0 = Instant::now();
    let (pass, detail) = f();
    Check {
        id: id.to_string(),
        pass,
        detail,
        elapsed_s: t0.elapsed().as_secs_f64(),
    }
}

/// Runs every check; `full` includes the 1e7-scale sieve comparisons.
pub fn run_all(cfg: &Config, full: bool) -> Vec<Check> {
    let mut out = Vec::new();
    out.push(timed("01 dickman values", || {
        let tab = SolutionTable::solve(Kind::G, zp(1.0, 0.0), 4.0, cfg).unwrap();
        let e2 = (tab.eval(2.0).unwrap().re - (1.0 - 2.0f64.ln())).abs();
        let e3 = (tab.eval(3.0).unwrap().re - dickman_oracle(3.0)).abs();
        (
            e2 <= 1e-10 && e3 <= 1e-8,
            format!("rho(2) err {e2:.2e} (<=1e-10), rho(3) err {e3:.2e} (<=1e-8)"),
        )
    }));
    out.push(timed("02 convolution power", || {
        let tab2 = SolutionTable::solve(Kind::Rho, zp(2.0, 0.0), 4.0, cfg).unwrap();
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
        for i in 1..=160 {
            let v = i as f64 * 0.025;
            let breaks = [1.0, 2.0, 3.0, v - 1.0, v - 2.0, v - 3.0, 0.5 * v];
            let conv = quad::adaptive_with_breaks(0.0, v, &breaks, 1e-10, &mut |t| {
                Complex64::new(oracle(t) * oracle(v - t), 0.0)
            })
            .re;
            sup = sup.max((tab2.eval(v).unwrap().re - conv).abs());
        }
        (sup <= 1e-6, format!("sup on [0,4]: {sup:.2e} (<=1e-6)"))
    }));
    out.push(timed("03 laplace identities", || {
        let svals = [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(1.0, 1.0),
        ];
        let mut ok = true;
        let mut worst: f64 = 0.0;
        for &(re, im) in &[(0.7, 0.0), (1.0, 0.0), (1.6, 0.5), (-0.8, 0.0)] {
            let z = zp(re, im);
            let g = SolutionTable::solve(Kind::G, z, 40.0, cfg).unwrap();
            let phi = SolutionTable::solve(Kind::Phi, z, 40.0, cfg).unwrap();
            for &s in &svals {
                let (gt, gtail) = g.laplace_transform(s, 40.0).unwrap();
                let want_g = (s.ln() * (z.z - 1.0)).exp()
                    * ((EULER_GAMMA + specfun::exp_integral_i(-s).unwrap()) * z.z).exp();
                ok &= (gt - want_g).norm() <= 1e-6 + gtail;
                worst = worst.max((gt - want_g).norm() - gtail);
                let (pt, ptail) = phi.laplace_transform(s, 40.0).unwrap();
                let want_p = (s.ln() * (z.theta_z - 1.0)).exp()
                    * (-z.z * specfun::exp_integral_e1(s).unwrap()).exp();
                ok &= (pt - want_p).norm() <= 1e-6 + ptail;
                worst = worst.max((pt - want_p).norm() - ptail);
            }
        }
        (ok, format!("worst error beyond tail {worst:.2e} (<=1e-6)"))
    }));
    out.push(timed("04 saddle solvers", || {
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
        let t = std::f64::consts::PI / 4.0;
        let mut prev = f64::INFINITY;
        for &v in &[50.0, 100.0, 200.0] {
            let w = Complex64::from_polar(v, -t);
            let s = specfun::solve_zeta0(w, cfg.newton_tol).unwrap();
            ok &= s.residual <= 1e-12;
            let (xi, _) = specfun::solve_xi(v).unwrap();
            let expansion = Complex64::new(xi + t * t / (2.0 * xi * xi), -xi * t / (xi - 1.0));
            let d = (s.root - expansion).norm();
            ok &= d < prev;
            prev = d;
        }
        (ok, format!("worst scaled residual {worst:.2e} (<=1e-12)"))
    }));
    out.push(timed("05 sieve exactness", || {
        let tab = build_table(100, 5.0, SieveMode::SpfSieve).unwrap();
        let st = friable_stats(&tab, None, None).unwrap();
        let mut ok = st.psi == 34 && st.histogram[0..4] == [1, 12, 18, 3];
        let tabx = build_table(10_000, 10_000.0, SieveMode::SpfSieve).unwrap();
        ok &= friable_stats(&tabx, None, None).unwrap().psi == 10_000;
        let tab6 = build_table(1_000_000, 1000.0, SieveMode::SpfSieve).unwrap();
        let lhs = tab6.omega_sum();
        let rhs: u64 = crate::primes::primes_up_to(1000)
            .into_iter()
            .map(|p| tab6.psi_count_upto(1_000_000.0 / p as f64))
            .sum();
        ok &= lhs == rhs;
        (ok, "hand counts, Psi(x,x), first-moment identity".to_string())
    }));
    out.push(timed("06 euler products", || {
        let one = Complex64::new(1.0, 0.0);
        let b1 = coeffs::euler_b(one, one, cfg.euler_p).unwrap();
        let b2 = coeffs::euler_b(Complex64::new(2.0, 0.0), one, cfg.euler_p).unwrap();
        let basel = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        let mut ok = (b1.value - one).norm() <= 1e-9 && (b2.value.re - basel).abs() <= 1e-6;
        let z = Complex64::new(1.5, 0.0);
        let a = coeffs::euler_b(z, one, cfg.euler_p).unwrap();
        let b = coeffs::euler_b(z, one, 2 * cfg.euler_p).unwrap();
        ok &= (a.value - b.value).norm() <= a.tail_bound;
        (
            ok,
            format!("B(1) err {:.1e}, B(2) err {:.1e}", (b1.value - one).norm(), (b2.value.re - basel).abs()),
        )
    }));
    if full {
        out.push(timed("07 leading-term law at z=2", || {
            let z2 = Complex64::new(2.0, 0.0);
            let a0 = coeffs::a_coeffs(z2, 0, cfg).unwrap().coeff(0);
            let x = 10_000_000u64;
            let tabs = arith::build_tables_multi_y(x, &[200.0, 500.0, 2000.0]).unwrap();
            let mut devs = Vec::new();
            for tab in &tabs {
                let u = (x as f64).ln() / tab.y.ln();
                let rho2 = SolutionTable::solve(Kind::Rho, zp(2.0, 0.0), u + 1.0, cfg).unwrap();
                let psi_f2 = friable_stats(tab, Some(z2), None).unwrap().psi_f.re;
                let main = a0.re * x as f64 * rho2.eval(u).unwrap().re * tab.y.ln();
                devs.push((psi_f2 / main - 1.0).abs());
            }
            (
                devs[0] > devs[1] && devs[1] > devs[2] && devs[2] <= 0.5,
                format!("deviations {devs:.3?} decreasing, last <= 0.5"),
            )
        }));
        out.push(timed("08 lambda beats main term", || {
            let x_int = 1_000_000u64;
            let y = ((x_int as f64).ln().powf(0.7)).exp();
            let x = x_int as f64 + 0.5;
            let u = x.ln() / y.ln();
            let z1 = zp(1.0, 0.0);
            let tab = build_table(x_int, y, SieveMode::SpfSieve).unwrap();
            let psi = friable_stats(&tab, None, None).unwrap().psi as f64;
            let g = SolutionTable::solve(Kind::G, z1, u + 1.0, cfg).unwrap();
            let profile = arith::OmegaProfile::build(x_int).unwrap();
            let lambda = asymptotics::lambda_f(x, y, z1, &g, &profile).unwrap().re;
            let rho = SolutionTable::solve(Kind::Rho, z1, u + 1.0, cfg).unwrap();
            let main = x * rho.eval(u).unwrap().re;
            let (el, em) = ((psi - lambda).abs(), (psi - main).abs());
            (el <= em, format!("|Psi-Lambda| {el:.0} <= |Psi-main| {em:.0}"))
        }));
        out.push(timed("09 omega statistics", || {
            let (x, y) = (10_000_000u64, 1000.0);
            let xf = x as f64;
            let tab = build_table(x, y, SieveMode::SpfSieve).unwrap();
            let st = friable_stats(&tab, None, None).unwrap();
            let (mu, sigma2, _) = moments_basic(xf, y, 1.0).unwrap();
            let sigma = sigma2.sqrt();
            let ks = arith::kolmogorov_vs_normal(&st.histogram, mu, sigma, true);
            let mut ok = ks <= 0.25;
            let kmid = mu.floor() as u32;
            for k in [kmid - 1, kmid, kmid + 1] {
                let exact = st.histogram[k as usize] as f64 / st.psi as f64;
                let ratio = asymptotics::predict_local_gauss(xf, y, k).unwrap() / exact;
                ok &= (0.5..=2.0).contains(&ratio);
            }
            let rho1 = SolutionTable::solve(Kind::Rho, zp(1.0, 0.0), 4.0, cfg).unwrap();
            for &r0 in &[0.8, 1.0, 1.3] {
                let (mu_r, _, _) = moments_basic(xf, y, r0).unwrap();
                let k = mu_r.round() as u32;
                let r = solve_r_for_k(xf, y, k as f64, (0.25, 4.0)).unwrap();
                let rho_r = SolutionTable::solve(Kind::Rho, zp(r, 0.0), 4.0, cfg).unwrap();
                let pred =
                    asymptotics::predict_local_tilted(xf, y, k, &rho_r, &rho1, r, cfg).unwrap();
                let exact = st.histogram[k as usize] as f64 / st.psi as f64;
                ok &= (0.5..=2.0).contains(&(pred / exact));
            }
            for &v in &[1.0, 1.5, 2.0] {
                let freq = arith::tail_frequency(&st.histogram, mu, sigma, v);
                ok &= freq <= asymptotics::large_dev(xf, y, v, cfg).unwrap();
            }
            (ok, format!("KS(lattice) {ks:.3} (<=0.25), local laws in factor 2, tails enveloped"))
        }));
    }
    out.push(timed("10 zeta(s,y) factorization", || {
        let s = Complex64::new(1.1, 0.0);
        let y = 10_000.0f64;
        let zeta_y = specfun::zeta_y(s, y).unwrap();
        let zeta_s = specfun::zeta(s).unwrap();
        let s_y = (s - 1.0) * y.ln();
        let mut worst = 0.0f64;
        for &(re, im) in &[(1.0, 0.0), (1.3, 0.4)] {
            let z = Complex64::new(re, im);
            let lhs = (z * zeta_y.ln()).exp();
            let rhs = (z * ((s - 1.0) * zeta_s).ln()).exp()
                * (z * y.ln().ln()).exp()
                * (z * (EULER_GAMMA + specfun::exp_integral_i(-s_y).unwrap())).exp();
            worst = worst.max((lhs / rhs - 1.0).norm());
        }
        (worst <= 0.05, format!("worst relative error {worst:.2e} (<=0.05)"))
    }));
    out.push(timed("11 phi limit", || {
        let z = zp(-0.8, 0.0);
        let tab = SolutionTable::solve(Kind::Phi, z, 21.0, cfg).unwrap();
        let gap = (tab.eval(20.0).unwrap() - (z.z * EULER_GAMMA).exp()).norm();
        (gap <= 1e-3, format!("|phi(20) - e^(gamma z)| = {gap:.2e} (<=1e-3)"))
    }));
    out
}
