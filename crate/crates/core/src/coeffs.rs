//! Selberg-Delange coefficient machinery for the family `f_z(n) = z^omega(n)`.
//!
//! The Dirichlet series factors as `F(s) = zeta(s)^z B_z(s)` with
//! `B_z(s) = prod_p (1 - p^{-s})^z (1 + z/(p^s - 1))`, convergent for
//! `Re s > 1/2`. The expansion coefficients `a_j` of
//! `s^z F(s+1)/(s+1) = sum a_j s^j` combine the Laurent data of
//! `s zeta(s+1)` (Stieltjes constants) with the Taylor coefficients of
//! `B_z(s+1)` extracted by Cauchy's formula on a small circle.

use num_complex::Complex64;

use crate::config::Config;
use crate::error::{Error, Result};
use crate::primes::primes_up_to;
use crate::series::SeriesPoly;
use crate::specfun;
use crate::EULER_GAMMA;

fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// A truncated Euler product value with an explicit tail majorant.
#[derive(Debug, Clone, Copy)]
pub struct EulerProductValue {
    pub z: Complex64,
    pub s: Complex64,
    pub prime_cutoff: u64,
    pub value: Complex64,
    /// Majorant of `sum_{p > P} |log factor|`; the factor's second-order
    /// expansion gives `|z - z^2|/2 p^{-2 sigma} + O(p^{-3 sigma})`.
    pub tail_bound: f64,
}

/// One factor of `B_z(s)`: `(1 - p^{-s})^z (1 + z/(p^s - 1))`.
fn b_factor(z: Complex64, s: Complex64, p: u64) -> Result<Complex64> {
    let lp = (p as f64).ln();
    let pms = (-s * lp).exp(); // p^{-s}
    let ps = (s * lp).exp(); // p^{s}
    let second = cone() + z / (ps - 1.0);
    if second.norm() < 1e-14 {
        return Err(Error::SingularFactor {
            p,
            detail: format!("1 + z/(p^s - 1) vanishes at z = {z}, s = {s}"),
        });
    }
    Ok((cone() - pms).powc(z) * second)
}

/// Truncated Euler product `B_z(s) = prod_{p <= P}` of the factor above,
/// with a tail bound. Requires `Re s > 1/2`.
pub fn euler_b(z: Complex64, s: Complex64, prime_cutoff: u64) -> Result<EulerProductValue> {
    if !(s.re > 0.5) {
        return Err(Error::Domain(format!(
            "the Euler product needs Re s > 1/2, got {}",
            s.re
        )));
    }
    if prime_cutoff < 1000 {
        return Err(Error::Domain("prime cutoff must be at least 10^3".into()));
    }
    let mut value = cone();
    for p in primes_up_to(prime_cutoff) {
        value *= b_factor(z, s, p)?;
    }
    let sigma = s.re;
    let pf = prime_cutoff as f64;
    // |log factor| <= (|z - z^2|/2) x^2 + D x^3 with x = p^{-sigma};
    // sum_{p > P} p^{-k sigma} <= P^{1 - k sigma} / (k sigma - 1).
    let c2 = (z - z * z).norm() / 2.0;
    let d3 = z.norm() * (1.0 + z.norm()) * (1.0 + z.norm());
    let tail2 = pf.powf(1.0 - 2.0 * sigma) / (2.0 * sigma - 1.0);
    let tail3 = if 3.0 * sigma > 1.0 {
        pf.powf(1.0 - 3.0 * sigma) / (3.0 * sigma - 1.0)
    } else {
        f64::INFINITY
    };
    Ok(EulerProductValue {
        z,
        s,
        prime_cutoff,
        value,
        tail_bound: c2 * tail2 + d3 * tail3,
    })
}

/// Zeta-accelerated evaluation of `B_z(s)`: pulls out
/// `zeta(2s)^{d2} zeta(3s)^{d3} zeta(4s)^{d4}` so the remaining product
/// converges like `sum p^{-5 sigma}`. Used where plain truncation at the
/// Cauchy-circle abscissa `Re s ~ 3/4` would leave a 1e-4 error.
pub fn euler_b_accelerated(z: Complex64, s: Complex64, prime_cutoff: u64) -> Result<Complex64> {
    if !(s.re > 0.5) {
        return Err(Error::Domain(format!(
            "the Euler product needs Re s > 1/2, got {}",
            s.re
        )));
    }
    // log factor = e2 x^2 + e3 x^3 + e4 x^4 + O(x^5), x = p^{-s}:
    let e2 = (z - z * z) / 2.0;
    let e3 = z * (2.0 / 3.0) - z * z + z * z * z / 3.0;
    let e4 = z * 0.75 - z * z * 1.5 + z * z * z - z * z * z * z * 0.25;
    // -sum_k d_k log(1 - x^k) matches through x^4 with:
    let d2 = e2;
    let d3 = e3;
    let d4 = e4 - e2 / 2.0;
    let mut value = specfun::zeta(s * 2.0)?.powc(d2)
        * specfun::zeta(s * 3.0)?.powc(d3)
        * specfun::zeta(s * 4.0)?.powc(d4);
    for p in primes_up_to(prime_cutoff) {
        let lp = (p as f64).ln();
        let x2 = (-s * 2.0 * lp).exp();
        let x3 = (-s * 3.0 * lp).exp();
        let x4 = (-s * 4.0 * lp).exp();
        let correction = (cone() - x2).powc(d2) * (cone() - x3).powc(d3) * (cone() - x4).powc(d4);
        value *= b_factor(z, s, p)? * correction;
    }
    Ok(value)
}

// Stieltjes constants gamma_0..gamma_10. Shipped as data; re-verified at
// test time against an Euler-Maclaurin Cauchy-circle oracle to 1e-10.
pub const STIELTJES: [f64; 11] = [
    EULER_GAMMA,
    -0.072_815_845_483_676_72,
    -0.009_690_363_192_872_318,
    0.002_053_834_420_303_346,
    0.002_325_370_065_467_300,
    0.000_793_323_817_301_062_7,
    -0.000_238_769_345_430_199_6,
    -0.000_527_289_567_057_751,
    -0.000_352_123_353_803_039_5,
    -0.000_034_394_774_418_088_05,
    0.000_205_332_814_909_064_8,
];

/// Laurent data of `s zeta(s+1) = 1 + gamma s + sum_{n>=1} (-1)^n gamma_n
/// s^{n+1} / n!` as a truncated series.
pub fn szeta_series(order: usize) -> Result<SeriesPoly> {
    if order > STIELTJES.len() {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: STIELTJES.len(),
        });
    }
    let mut coeffs = vec![czero(); order + 1];
    coeffs[0] = cone();
    if order >= 1 {
        coeffs[1] = Complex64::new(STIELTJES[0], 0.0);
    }
    let mut fact = 1.0f64;
    for n in 1..STIELTJES.len() {
        if n + 1 > order {
            break;
        }
        fact *= n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        coeffs[n + 1] = Complex64::new(sign * STIELTJES[n] / fact, 0.0);
    }
    Ok(SeriesPoly::new(coeffs, czero()))
}

/// Taylor coefficients of `B_z(s+1)` at `s = 0` by Cauchy extraction on a
/// circle of radius 1/4 with `cauchy_m` nodes, each node evaluated by the
/// accelerated product.
pub fn b_taylor(z: Complex64, order: usize, cfg: &Config) -> Result<SeriesPoly> {
    let m = cfg.cauchy_m.max(8);
    let radius = 0.25;
    let mut node_values = Vec::with_capacity(m);
    for k in 0..m {
        let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
        let s = Complex64::from_polar(radius, theta);
        node_values.push(euler_b_accelerated(z, s + 1.0, cfg.euler_p.min(20_000))?);
    }
    let mut coeffs = vec![czero(); order + 1];
    for (j, c) in coeffs.iter_mut().enumerate() {
        let mut acc = czero();
        for (k, val) in node_values.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            acc += val * Complex64::from_polar(1.0, -(j as f64) * theta);
        }
        *c = acc / (m as f64 * radius.powi(j as i32));
    }
    Ok(SeriesPoly::new(coeffs, czero()))
}

/// The expansion coefficients `a_0..a_J` of `s^z F(s+1)/(s+1)` for the
/// family `f_z`: `(s zeta(s+1))^z * B_z(s+1) / (1+s)` as a series product.
/// By convention `a_j = 0` for negative j.
pub fn a_coeffs(z: Complex64, order: usize, cfg: &Config) -> Result<SeriesPoly> {
    if z == czero() {
        return Err(Error::Domain("a_j(f_z) needs z != 0".into()));
    }
    if order > 8 {
        return Err(Error::UnsupportedOrder {
            requested: order,
            max: 8,
        });
    }
    let szeta = szeta_series(order)?;
    let zpow = szeta.powz(z)?;
    let b = b_taylor(z, order, cfg)?;
    // 1/(1+s) = sum (-s)^k
    let mut inv = vec![czero(); order + 1];
    for (k, c) in inv.iter_mut().enumerate() {
        *c = Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
    }
    let inv = SeriesPoly::new(inv, czero());
    Ok(zpow.mul(&b).mul(&inv))
}

/// The local-law prefactor `prod_p (1 - 1/p)^{r-1} (1 + (r-1)/p)`,
/// truncated at `prime_cutoff` (the log factor is `O(p^{-2})`).
pub fn local_law_prefactor(r: f64, prime_cutoff: u64) -> f64 {
    let mut value = 1.0f64;
    for p in primes_up_to(prime_cutoff) {
        let pf = p as f64;
        value *= (1.0 - 1.0 / pf).powf(r - 1.0) * (1.0 + (r - 1.0) / pf);
    }
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn euler_b_at_one_is_trivial() {
        let v = euler_b(cone(), cone(), 1000).unwrap();
        // Mathematically every factor is exactly 1; powc leaves rounding.
        assert!((v.value - cone()).norm() < 1e-12, "every factor is 1");
    }

    #[test]
    fn euler_b_at_two_simplifies_to_basel() {
        // (1 - 1/p)^2 (1 + 2/(p-1)) = 1 - p^{-2}, so B(2) = 6/pi^2.
        let v = euler_b(Complex64::new(2.0, 0.0), cone(), 100_000).unwrap();
        let want = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!((v.value.re - want).abs() < 1e-6, "{} vs {want}", v.value.re);
        assert!(v.value.im.abs() < 1e-12);
    }

    #[test]
    fn tail_bound_is_honest_under_doubling() {
        for &(re, im) in &[(1.5, 0.0), (0.7, 0.4), (-0.8, 0.0)] {
            let z = Complex64::new(re, im);
            let s = Complex64::new(1.0, 0.0);
            let a = euler_b(z, s, 100_000).unwrap();
            let b = euler_b(z, s, 200_000).unwrap();
            assert!(
                (a.value - b.value).norm() <= a.tail_bound,
                "z=({re},{im}): moved {} vs bound {}",
                (a.value - b.value).norm(),
                a.tail_bound
            );
        }
    }

    #[test]
    fn accelerated_product_agrees_with_plain() {
        for &(re, im) in &[(2.0, 0.0), (1.5, 0.0), (1.3, 0.4)] {
            let z = Complex64::new(re, im);
            let s = Complex64::new(1.25, 0.1);
            let plain = euler_b(z, s, 200_000).unwrap();
            let fast = euler_b_accelerated(z, s, 5_000).unwrap();
            assert!(
                (plain.value - fast).norm() < 1e-6 + plain.tail_bound,
                "z=({re},{im}): {} vs {}",
                plain.value,
                fast
            );
        }
    }

    #[test]
    fn stieltjes_constants_against_euler_maclaurin_oracle() {
        // gamma_n = (-1)^n n! [s^n] (zeta(1+s) - 1/s): Cauchy integral on a
        // circle of radius 1/2 with the crate's Euler-Maclaurin zeta.
        // Radius 3 keeps n!/r^n amplification small; 32 direct terms keep
        // the Euler-Maclaurin sum well conditioned left of the line Re = 1.
        let m = 256usize;
        let radius = 3.0;
        let mut fact = 1.0f64;
        for n in 0..=10usize {
            if n > 0 {
                fact *= n as f64;
            }
            let mut acc = czero();
            for k in 0..m {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                let s = Complex64::from_polar(radius, theta);
                let f = specfun::zeta_em(s + 1.0, 32).unwrap() - s.finv();
                acc += f * Complex64::from_polar(1.0, -(n as f64) * theta);
            }
            let coeff = acc / (m as f64 * radius.powi(n as i32));
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let gamma_n = sign * fact * coeff.re;
            assert!(
                (gamma_n - STIELTJES[n]).abs() < 1e-10,
                "gamma_{n}: oracle {gamma_n} vs table {}",
                STIELTJES[n]
            );
            assert!(coeff.im.abs() < 1e-12);
        }
    }

    #[test]
    fn szeta_series_basics() {
        let s = szeta_series(6).unwrap();
        assert!((s.coeff(0) - cone()).norm() < 1e-15);
        assert!((s.coeff(1).re - EULER_GAMMA).abs() < 1e-14);
        let back = s.log().unwrap().exp();
        for j in 0..=6 {
            assert!((back.coeff(j) - s.coeff(j)).norm() < 1e-12);
        }
        assert!(szeta_series(12).is_err());
    }

    #[test]
    fn a0_of_f1_is_one() {
        let a = a_coeffs(cone(), 3, &cfg()).unwrap();
        assert!((a.coeff(0) - cone()).norm() < 1e-9, "a_0 = {}", a.coeff(0));
        // a_1(f_1) = gamma - 1 (B_1 is identically 1).
        assert!((a.coeff(1).re - (EULER_GAMMA - 1.0)).abs() < 1e-8);
    }

    #[test]
    fn a0_matches_euler_b() {
        let z = Complex64::new(1.5, 0.0);
        let a = a_coeffs(z, 2, &cfg()).unwrap();
        let b = euler_b(z, cone(), 100_000).unwrap();
        assert!(
            (a.coeff(0) - b.value).norm() < 1e-6,
            "a_0 = {} vs B(z) = {}",
            a.coeff(0),
            b.value
        );
    }

    #[test]
    fn a1_matches_finite_differences() {
        // Centered differences of s -> s zeta(s+1) B_1(s+1)/(1+s) at 0;
        // B_1 is identically 1.
        let h = 1e-3;
        let f = |s: f64| {
            let sc = Complex64::new(s, 0.0);
            (sc * specfun::zeta(sc + 1.0).unwrap() / (cone() + sc)).re
        };
        let fd = (f(h) - f(-h)) / (2.0 * h);
        let a = a_coeffs(cone(), 1, &cfg()).unwrap();
        assert!((a.coeff(1).re - fd).abs() < 1e-6, "{} vs {fd}", a.coeff(1).re);
    }

    #[test]
    fn cauchy_extraction_stable_under_node_doubling() {
        let z = Complex64::new(1.3, 0.4);
        let mut c1 = cfg();
        c1.cauchy_m = 64;
        let mut c2 = cfg();
        c2.cauchy_m = 128;
        let a1 = a_coeffs(z, 4, &c1).unwrap();
        let a2 = a_coeffs(z, 4, &c2).unwrap();
        for j in 0..=4 {
            assert!(
                (a1.coeff(j) - a2.coeff(j)).norm() <= 1e-8,
                "a_{j} moved {} under M doubling",
                (a1.coeff(j) - a2.coeff(j)).norm()
            );
        }
    }

    #[test]
    fn prefactor_at_r_one() {
        assert_eq!(local_law_prefactor(1.0, 10_000), 1.0);
        let v = local_law_prefactor(1.3, 100_000);
        assert!(v.is_finite() && v > 0.0);
    }

    #[test]
    fn b_taylor_matches_direct_values() {
        let z = Complex64::new(1.5, 0.0);
        let b = b_taylor(z, 6, &cfg()).unwrap();
        for &x in &[0.05, -0.08] {
            let s = Complex64::new(x, 0.03);
            let direct = euler_b_accelerated(z, s + 1.0, 20_000).unwrap();
            assert!(
                (b.eval(s) - direct).norm() < 1e-7,
                "at s={s}: {} vs {}",
                b.eval(s),
                direct
            );
        }
    }

    #[test]
    fn singular_factor_detected() {
        // 1 + z/(p^s - 1) = 0 at p = 2, s = 1 when z = -1.
        let z = Complex64::new(-1.0, 0.0);
        let r = euler_b(z, cone(), 1000);
        assert!(matches!(r, Err(Error::SingularFactor { p: 2, .. })));
    }

    #[test]
    fn series_power_law() {
        let z = Complex64::new(0.8, -0.3);
        let w = Complex64::new(-1.1, 0.7);
        let s = szeta_series(8).unwrap();
        let lhs = s.powz(z + w).unwrap();
        let rhs = s.powz(z).unwrap().mul(&s.powz(w).unwrap());
        for j in 0..=8 {
            assert!((lhs.coeff(j) - rhs.coeff(j)).norm() < 1e-12, "j={j}");
        }
    }
}
