use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quad;
use crate::EULER_GAMMA;

/// Crossover radius between the entire series and segment quadrature for `I`.
const SERIES_RADIUS: f64 = 20.0;

/// The entire function `I(w) = int_0^w (e^v - 1) dv/v = sum_{n>=1} w^n/(n n!)`.
///
/// Below `|w| = 20` the series converges fast; beyond, the alternating terms
/// cancel catastrophically for `Re w << 0`, so the integral is evaluated
/// along the straight segment from 0 to w instead.
pub fn exp_integral_i(w: Complex64) -> Result<Complex64> {
    if w.re > 700.0 {
        return Err(Error::Range(format!(
            "I(w) overflows for Re w = {} (e^w not representable)",
            w.re
        )));
    }
    if w.norm() <= SERIES_RADIUS {
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 1..200 {
            term *= w / n as f64;
            let add = term / n as f64;
            sum += add;
            if add.norm() < 1e-18 * (1.0 + sum.norm()) {
                break;
            }
        }
        return Ok(sum);
    }
    // I(w) = int_0^1 (e^{t w} - 1)/t dt along the segment.
    let scale = w.re.max(0.0).exp().max(1.0);
    let val = quad::adaptive(0.0, 1.0, 1e-14 * scale, &mut |t| {
        if t == 0.0 {
            w
        } else {
            ((w * t).exp() - 1.0) / t
        }
    });
    Ok(val)
}

/// The exponential integral `E1(s) = int_s^infty e^{-u}/u du` for `Re s > 0`,
/// which is the function `J` of the Laplace-transform identity
/// `I(-s) + log s = -gamma - J(s)`.
pub fn exp_integral_e1(s: Complex64) -> Result<Complex64> {
    if !(s.re > 0.0) {
        return Err(Error::Domain(format!(
            "E1 requires Re s > 0, got {}",
            s.re
        )));
    }
    if s.norm() <= 2.5 {
        // E1(s) = -gamma - log s + sum (-1)^{n+1} s^n / (n n!)
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for n in 1..120 {
            term *= -s / n as f64;
            sum -= term / n as f64;
            if term.norm() / n as f64 * 1e17 < 1.0 + sum.norm() {
                break;
            }
        }
        Ok(-EULER_GAMMA - s.ln() + sum)
    } else {
        // Lentz continued fraction: E1(s) = e^{-s} / (s + 1 - 1/(s + 3 - 4/(s + 5 - ...)))
        let mut b = s + 1.0;
        let mut c = Complex64::new(1e300, 0.0);
        let mut d = b.finv();
        let mut h = d;
        for i in 1..300 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = b + a * d;
            if d.norm() < 1e-290 {
                d = Complex64::new(1e-290, 0.0);
            }
            c = b + a * c.finv();
            if c.norm() < 1e-290 {
                c = Complex64::new(1e-290, 0.0);
            }
            d = d.finv();
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).norm() < 1e-16 {
                break;
            }
        }
        Ok((-s).exp() * h)
    }
}

/// Laplace transform of the Dickman function: `rho_hat(s) = e^{gamma + I(-s)}`.
/// Entire and nonvanishing.
pub fn dickman_laplace(s: Complex64) -> Result<Complex64> {
    Ok((EULER_GAMMA + exp_integral_i(-s)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn series_values() {
        assert_eq!(exp_integral_i(c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        // Frozen partial-sum oracles of sum 1/(n n!) and sum (-1)^n/(n n!).
        assert!((exp_integral_i(c(1.0, 0.0)).unwrap().re - 1.317_902_151_454_404).abs() < 1e-12);
        assert!((exp_integral_i(c(-1.0, 0.0)).unwrap().re + 0.796_599_599_297_053_1).abs() < 1e-12);
    }

    #[test]
    fn series_quadrature_agree_at_crossover() {
        for &w in &[c(19.0, 4.0), c(-19.0, 6.0), c(-14.0, -14.0)] {
            let by_series = {
                let mut term = c(1.0, 0.0);
                let mut sum = c(0.0, 0.0);
                for n in 1..300 {
                    term *= w / n as f64;
                    sum += term / n as f64;
                }
                sum
            };
            let by_quad = quad::adaptive(0.0, 1.0, 1e-15 * w.re.max(0.0).exp().max(1.0), &mut |t| {
                if t == 0.0 {
                    w
                } else {
                    ((w * t).exp() - 1.0) / t
                }
            });
            let got = exp_integral_i(w).unwrap();
            assert!((got - by_series).norm() < 1e-9 * (1.0 + by_series.norm()));
            assert!((got - by_quad).norm() < 1e-9 * (1.0 + by_quad.norm()));
        }
    }

    #[test]
    fn large_argument_matches_asymptotic_envelope() {
        // I(s) = e^s/s (1 + 1/s + 2/s^2) + O(e^s/s^4) for sigma >= 1; the
        // relative difference stays within the e^s/s^4 envelope, and the
        // absolute defect tracks the next series term 6 e^s/s^4.
        let s = 10.0f64;
        let i10 = exp_integral_i(c(s, 0.0)).unwrap().re;
        let t = (1.0 + 1.0 / s + 2.0 / (s * s)) * s.exp() / s;
        assert!((i10 / t - 1.0).abs() <= s.exp() / s.powi(4));
        assert!((i10 - t).abs() <= 25.0 * s.exp() / s.powi(4));
    }

    #[test]
    fn e1_reference_and_decay() {
        // Frozen from adaptive quadrature of int_1^infty e^{-u}/u du.
        assert!((exp_integral_e1(c(1.0, 0.0)).unwrap().re - 0.219_383_934_395_520_27).abs() < 1e-12);
        assert!(exp_integral_e1(c(50.0, 0.0)).unwrap().norm() <= (-50.0f64).exp());
        assert!(exp_integral_e1(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn transform_identity_3_5() {
        // I(-s) + log s + gamma + J(s) = 0 on a small grid.
        for &re in &[0.1, 1.0, 5.0] {
            for &im in &[0.0, 1.0, -1.0] {
                let s = c(re, im);
                let lhs = exp_integral_i(-s).unwrap() + s.ln() + EULER_GAMMA
                    + exp_integral_e1(s).unwrap();
                assert!(lhs.norm() < 1e-10, "s = {s}: residual {}", lhs.norm());
            }
        }
    }

    #[test]
    fn dickman_laplace_normalizations() {
        let e_gamma = EULER_GAMMA.exp();
        assert!((dickman_laplace(c(0.0, 0.0)).unwrap().re - e_gamma).abs() < 1e-12);
        // s rho_hat(s) -> 1: |20 rho_hat(20) - 1| = |e^{-J(20)} - 1| ~ J(20)
        let v = dickman_laplace(c(20.0, 0.0)).unwrap() * 20.0;
        assert!((v - 1.0).norm() < 1e-9);
    }
}
