use std::f64::consts::PI;

/// Standard normal CDF to about 1e-14 absolute.
///
/// Built on erfc: a Maclaurin series for small arguments and the Lentz
/// continued fraction for the upper incomplete gamma elsewhere.
pub fn normal_cdf(v: f64) -> f64 {
    0.5 * erfc(-v / std::f64::consts::SQRT_2)
}

fn erf_series(x: f64) -> f64 {
    // erf(x) = 2/sqrt(pi) sum (-1)^n x^{2n+1} / (n! (2n+1))
    let mut term = x;
    let mut sum = x;
    let x2 = x * x;
    let mut n = 0usize;
    loop {
        n += 1;
        term *= -x2 / n as f64;
        let add = term / (2 * n + 1) as f64;
        sum += add;
        if add.abs() < 1e-18 * sum.abs().max(1e-300) || n > 200 {
            break;
        }
    }
    sum * 2.0 / PI.sqrt()
}

fn erfc_cf(x: f64) -> f64 {
    // erfc(x) = Q(1/2, x^2): Legendre continued fraction for the regularized
    // upper incomplete gamma, evaluated by modified Lentz.
    let a = 0.5;
    let xx = x * x;
    let mut b = xx + 1.0 - a;
    let mut c = 1e308;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..400 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < 1e-300 {
            d = 1e-300;
        }
        c = b + an / c;
        if c.abs() < 1e-300 {
            c = 1e-300;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    // Q = exp(-x^2 + a ln x^2 - ln Gamma(1/2)) * h
    (-xx).exp() * x / PI.sqrt() * h
}

/// Complementary error function on the real line.
pub fn erfc(x: f64) -> f64 {
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.0 {
        1.0 - erf_series(x)
    } else if x > 27.0 {
        0.0
    } else {
        erfc_cf(x)
    }
}
