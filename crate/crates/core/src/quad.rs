//! Quadrature and Chebyshev utilities.
//!
//! Gauss-Legendre and Gauss-Jacobi rules are generated at runtime by Newton
//! iteration on the orthogonal-polynomial recurrences; Chebyshev pieces use
//! Chebyshev-Lobatto sampling with the classical coefficient and
//! antiderivative recurrences.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P'_n(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Integrates a complex-valued function over [a, b] with a fixed n-point
/// Gauss-Legendre rule.
pub fn gl_integrate<F: FnMut(f64) -> Complex64>(
    a: f64,
    b: f64,
    rule: &(Vec<f64>, Vec<f64>),
    mut f: F,
) -> Complex64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

/// Adaptive integration by interval bisection with a GL-15 rule per panel,
/// accepting a panel when doubling leaves it within `tol` (absolute, scaled
/// by the running magnitude).
pub fn adaptive<F: FnMut(f64) -> Complex64>(a: f64, b: f64, tol: f64, f: &mut F) -> Complex64 {
    let rule = gauss_legendre(15);
    fn rec<F: FnMut(f64) -> Complex64>(
        a: f64,
        b: f64,
        whole: Complex64,
        tol: f64,
        depth: usize,
        rule: &(Vec<f64>, Vec<f64>),
        f: &mut F,
    ) -> Complex64 {
        let m = 0.5 * (a + b);
        let left = gl_integrate(a, m, rule, &mut *f);
        let right = gl_integrate(m, b, rule, &mut *f);
        let err = (left + right - whole).norm();
        if err < tol || depth >= 24 {
            return left + right;
        }
        rec(a, m, left, 0.5 * tol, depth + 1, rule, f) + rec(m, b, right, 0.5 * tol, depth + 1, rule, f)
    }
    let whole = gl_integrate(a, b, &rule, &mut *f);
    rec(a, b, whole, tol, 0, &rule, f)
}

/// Adaptive integration honoring a sorted list of interior breakpoints.
pub fn adaptive_with_breaks<F: FnMut(f64) -> Complex64>(
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
    f: &mut F,
) -> Complex64 {
    let mut pts: Vec<f64> = vec![a];
    for &t in breaks {
        if t > a && t < b {
            pts.push(t);
        }
    }
    pts.push(b);
    pts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    pts.dedup();
    let mut acc = Complex64::new(0.0, 0.0);
    for w in pts.windows(2) {
        acc += adaptive(w[0], w[1], tol, f);
    }
    acc
}

fn ln_gamma_real(x: f64) -> f64 {
    // Lanczos g = 7, n = 9, enough for the weight normalizations here.
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return (PI / (PI * x).sin()).ln() - ln_gamma_real(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = C[0];
    for (i, c) in C.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// Nodes and weights for the Gauss-Jacobi rule with weight
/// `(1-x)^alpha (1+x)^beta` on [-1, 1], via Golub-Welsch: the nodes are the
/// eigenvalues of the Jacobi recurrence matrix, the weights come from the
/// first eigenvector components.
pub fn gauss_jacobi(n: usize, alpha: f64, beta: f64) -> (Vec<f64>, Vec<f64>) {
    let ab = alpha + beta;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n]; // off[k] couples k-1 and k (off[0] unused)
    for k in 0..n {
        let kf = k as f64;
        let denom = (2.0 * kf + ab) * (2.0 * kf + ab + 2.0);
        diag[k] = if denom != 0.0 {
            (beta * beta - alpha * alpha) / denom
        } else {
            (beta - alpha) / (ab + 2.0)
        };
    }
    for k in 1..n {
        let kf = k as f64;
        let num = 4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab);
        let den = (2.0 * kf + ab).powi(2) * (2.0 * kf + ab + 1.0) * (2.0 * kf + ab - 1.0);
        off[k] = (num / den).sqrt();
    }
    // mu0 = int (1-x)^a (1+x)^b dx = 2^{a+b+1} B(a+1, b+1)
    let mu0 = (ab + 1.0) * 2f64.ln() + ln_gamma_real(alpha + 1.0) + ln_gamma_real(beta + 1.0)
        - ln_gamma_real(ab + 2.0);
    let mu0 = mu0.exp();
    let (nodes, first) = tridiagonal_eigen(&mut diag, &mut off);
    let weights = first.iter().map(|q| mu0 * q * q).collect();
    (nodes, weights)
}

/// Symmetric tridiagonal eigensolver (QL with implicit shifts) tracking only
/// the first component of each eigenvector. Returns eigenvalues ascending.
fn tridiagonal_eigen(diag: &mut [f64], off: &mut [f64]) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    // e[i] couples i and i+1 internally.
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(&off[1..n]);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if e[m].abs() <= 1e-16 * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                break;
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                // first-component rotation
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            diag[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| diag[a].partial_cmp(&diag[b]).unwrap());
    let nodes: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
    let first: Vec<f64> = idx.iter().map(|&i| z[i]).collect();
    (nodes, first)
}

/// Chebyshev-Lobatto points of degree n on [a, b], ordered left to right.
pub fn lobatto_points(n: usize, a: f64, b: f64) -> Vec<f64> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (0..=n)
        .map(|i| mid - half * (PI * i as f64 / n as f64).cos())
        .collect()
}

/// Chebyshev coefficients from values at the Lobatto points returned by
/// [`lobatto_points`] (left-to-right order).
pub fn cheb_coeffs(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len() - 1;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, v) in values.iter().enumerate() {
            // values[i] sits at angle pi*(n-i)/n, i.e. T_k argument cos(theta_{n-i}).
            let theta = PI * (n - i) as f64 / n as f64;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += v * (w * (k as f64 * theta).cos());
        }
        *c = acc * (2.0 / n as f64);
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    coeffs
}

/// Clenshaw evaluation of a Chebyshev series at `x` in [a, b].
pub fn cheb_eval(coeffs: &[Complex64], a: f64, b: f64, x: f64) -> Complex64 {
    let t = (2.0 * x - a - b) / (b - a);
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        let tmp = b1;
        b1 = b1 * (2.0 * t) - b2 + c;
        b2 = tmp;
    }
    b1 - b2 * t
}

/// Coefficients of the antiderivative vanishing at the left endpoint `a`.
pub fn cheb_antiderivative(coeffs: &[Complex64], a: f64, b: f64) -> Vec<Complex64> {
    let n = coeffs.len();
    let half = 0.5 * (b - a);
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in 1..=n {
        // int T_{k-1} contributes +1/(2k), int T_{k+1} contributes -1/(2k);
        // the T_0 coefficient enters doubled.
        let prev = if k == 1 { coeffs[0] * 2.0 } else { coeffs[k - 1] };
        let next = if k + 1 < n {
            coeffs[k + 1]
        } else {
            Complex64::new(0.0, 0.0)
        };
        out[k] = (prev - next) * (half / (2.0 * k as f64));
    }
    // Fix the constant so the antiderivative vanishes at x = a (t = -1).
    let mut at_a = Complex64::new(0.0, 0.0);
    let mut sign = -1.0;
    for c in out.iter().skip(1) {
        at_a += c * sign;
        sign = -sign;
    }
    out[0] = -at_a;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_rule_integrates_polynomials() {
        let rule = gauss_legendre(8);
        let exact = 2.0 / 3.0; // int_{-1}^{1} x^2
        let got = gl_integrate(-1.0, 1.0, &rule, |x| Complex64::new(x * x, 0.0));
        assert!((got.re - exact).abs() < 1e-14);
        // degree 15 still exact with 8 nodes
        let got = gl_integrate(0.0, 1.0, &rule, |x| Complex64::new(x.powi(15), 0.0));
        assert!((got.re - 1.0 / 16.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let got = adaptive(0.0, 10.0, 1e-12, &mut |x| Complex64::new((5.0 * x).sin(), 0.0));
        let exact = (1.0 - (50.0_f64).cos()) / 5.0;
        assert!((got.re - exact).abs() < 1e-10);
    }

    #[test]
    fn jacobi_rule_matches_beta_integrals() {
        // int_{-1}^1 (1+x)^b dx = 2^{b+1}/(b+1)
        for &b in &[-0.5, -0.8, 0.3] {
            let (x, w) = gauss_jacobi(24, 0.0, b);
            let got: f64 = w.iter().sum();
            let exact = 2f64.powf(b + 1.0) / (b + 1.0);
            assert!((got - exact).abs() < 1e-10, "beta={b}: {got} vs {exact}");
            // weighted polynomial: int (1+x)^b x dx = 2^{b+1} (b/( (b+1)(b+2) ))... check numerically
            let got2: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi).sum();
            let exact2 = 2f64.powf(b + 1.0) * (1.0 / (b + 2.0) - 1.0 / (b + 1.0)) + 2f64.powf(b + 1.0) / (b + 2.0);
            // exact: int (1+x)^b x dx over [-1,1] = 2^{b+1} ( 2/(b+2) - 1/(b+1) )
            let exact2b = 2f64.powf(b + 1.0) * (2.0 / (b + 2.0) - 1.0 / (b + 1.0));
            assert!((exact2 - exact2b).abs() < 1e-12);
            assert!((got2 - exact2b).abs() < 1e-10, "beta={b} moment1");
        }
    }

    #[test]
    fn cheb_roundtrip_and_integral() {
        let (a, b) = (0.5, 2.0);
        let f = |x: f64| Complex64::new((2.0 * x).sin(), (x * x).cos());
        let pts = lobatto_points(32, a, b);
        let vals: Vec<Complex64> = pts.iter().map(|&x| f(x)).collect();
        let c = cheb_coeffs(&vals);
        for &x in &[0.5, 0.77, 1.3, 1.99] {
            assert!((cheb_eval(&c, a, b, x) - f(x)).norm() < 1e-12);
        }
        let anti = cheb_antiderivative(&c, a, b);
        let q = cheb_eval(&anti, a, b, b);
        let exact = adaptive(a, b, 1e-13, &mut |x| f(x));
        assert!((q - exact).norm() < 1e-11);
        assert!(cheb_eval(&anti, a, b, a).norm() < 1e-13);
    }
}
