use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Outcome of a saddle-point solve of `e^zeta = 1 + w zeta`.
///
/// `residual` is the scaled defect `|e^root - 1 - w root| / (1 + |w root|)`;
/// an unscaled tolerance below one ulp of `e^root` is not representable in
/// doubles once `w` is large. `derivative` is `d zeta_0 / d w`.
#[derive(Debug, Clone, Copy)]
pub struct SaddleResult {
    pub argument: Complex64,
    pub root: Complex64,
    pub residual: f64,
    pub derivative: Complex64,
}

fn defect(w: Complex64, z: Complex64) -> Complex64 {
    z.exp() - 1.0 - w * z
}

fn scaled_residual(w: Complex64, z: Complex64) -> f64 {
    defect(w, z).norm() / (1.0 + (w * z).norm())
}

/// Solves `e^xi = 1 + u xi` for the nonzero real root, with `xi(1) = 0` by
/// convention. Returns `(xi, xi')` where `xi' = xi / (1 + u xi - u)`;
/// at `u = 1` the analytic limit `xi'(1) = 2` is used.
pub fn solve_xi(u: f64) -> Result<(f64, f64)> {
    if !(u > 0.0) || !u.is_finite() {
        return Err(Error::Domain(format!("xi(u) needs u > 0, got {u}")));
    }
    if u == 1.0 {
        return Ok((0.0, 2.0));
    }
    let f = |x: f64| x.exp() - 1.0 - u * x;
    // Seed from the local Taylor branch near u = 1 and the log(u log u)
    // asymptote elsewhere; Newton is quadratic from either.
    let mut x = if u > 1.0 {
        let seed = if u <= 4.0 {
            2.0 * (u - 1.0) / (1.0 + 2.0 * (u - 1.0) / 3.0)
        } else {
            (u * u.ln()).ln()
        };
        // Stay on the convex increasing branch (right of log u).
        seed.max(u.ln() + 1e-3)
    } else if u >= 0.7 {
        2.0 * (u - 1.0)
    } else {
        -1.0 / u
    };
    for _ in 0..200 {
        let fx = f(x);
        let dfx = x.exp() - u;
        if dfx == 0.0 {
            x += 1e-8;
            continue;
        }
        let mut step = fx / dfx;
        // Damping: e^x is stiff, keep steps moderate.
        if step.abs() > 2.0 {
            step = 2.0 * step.signum();
        }
        let next = x - step;
        if (next - x).abs() <= 1e-16 * x.abs().max(1.0) {
            x = next;
            break;
        }
        x = next;
    }
    let xi = x;
    let denom = 1.0 + u * xi - u;
    let xi_prime = if denom != 0.0 { xi / denom } else { 2.0 };
    Ok((xi, xi_prime))
}

/// Solves `e^zeta = 1 + w zeta` for the principal saddle `zeta_0(w)`:
/// the continuation of `xi` from the positive real axis, reached by homotopy
/// in `arg w` with Newton steps of at most pi/32, using the second-order
/// asymptotic expansion as the starting seed. Conjugate symmetry
/// `zeta_0(conj w) = conj zeta_0(w)` handles `arg w < 0`; the trivial root
/// `zeta = 0` is excluded throughout.
pub fn solve_zeta0(w: Complex64, tol: f64) -> Result<SaddleResult> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("zeta_0(0) is undefined".into()));
    }
    if w.im == 0.0 && w.re < 0.0 {
        return Err(Error::Domain(
            "zeta_0 requires |arg w| < pi (cut on the negative real axis)".into(),
        ));
    }
    if w.im == 0.0 {
        let (xi, _) = solve_xi(w.re)?;
        let root = Complex64::new(xi, 0.0);
        let derivative = root / (root.exp() - w);
        return Ok(SaddleResult {
            argument: w,
            root,
            residual: scaled_residual(w, root),
            derivative,
        });
    }
    if w.im < 0.0 {
        let conj = solve_zeta0(w.conj(), tol)?;
        return Ok(SaddleResult {
            argument: w,
            root: conj.root.conj(),
            residual: conj.residual,
            derivative: conj.derivative.conj(),
        });
    }
    let phase = w.arg(); // in (0, pi)
    let radius = w.norm();
    let (xi, _) = solve_xi(radius)?;
    let steps = (phase / (PI / 32.0)).ceil().max(1.0) as usize;
    // Second-order expansion seed (in terms of phi = arg w = -t):
    // zeta_0 ~ xi + phi^2/(2 xi^2) + i xi phi/(xi - 1), useful once xi > 1.
    let mut root = Complex64::new(xi, 0.0);
    for k in 1..=steps {
        let phi = phase * k as f64 / steps as f64;
        let wk = Complex64::from_polar(radius, phi);
        let mut guess = root;
        if k == 1 && xi > 1.5 {
            let expansion = Complex64::new(
                xi + phi * phi / (2.0 * xi * xi),
                xi * phi / (xi - 1.0),
            );
            guess = expansion;
        }
        root = newton_zeta(wk, guess, tol)?;
    }
    let derivative = root / (root.exp() - w);
    Ok(SaddleResult {
        argument: w,
        root,
        residual: scaled_residual(w, root),
        derivative,
    })
}

fn newton_zeta(w: Complex64, seed: Complex64, tol: f64) -> Result<Complex64> {
    let mut z = seed;
    let mut best = seed;
    let mut best_res = f64::INFINITY;
    for _ in 0..80 {
        let fz = defect(w, z);
        let res = fz.norm() / (1.0 + (w * z).norm());
        if res < best_res {
            best_res = res;
            best = z;
        }
        if res < tol * 1e-2 {
            return Ok(z);
        }
        let dfz = z.exp() - w;
        if dfz.norm() < 1e-280 {
            break;
        }
        let mut step = fz / dfz;
        // Damping: e^zeta is stiff, keep steps moderate.
        if step.norm() > 1.0 {
            step = step / step.norm();
        }
        // Keep the iterate off the trivial root zeta = 0.
        let next = z - step;
        if next.norm() < 1e-8 && seed.norm() > 1e-6 {
            step *= 0.5;
        }
        z -= step;
    }
    if best_res < tol {
        return Ok(best);
    }
    Err(Error::Convergence {
        what: format!("zeta_0 Newton at w = {w}"),
        last: best,
        residual: best_res,
    })
}
