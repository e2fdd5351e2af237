use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
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

/// Complex Gamma function, relative accuracy about 1e-13 away from poles.
/// Reflection handles `Re s < 1/2`; non-positive integers are poles.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    if s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round() {
        return Err(Error::Pole(format!("Gamma pole at s = {}", s.re)));
    }
    Ok(gamma_unchecked(s))
}

fn gamma_unchecked(s: Complex64) -> Complex64 {
    if s.re < 0.5 {
        // Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
        let pis = s * PI;
        return PI / (pis.sin() * gamma_unchecked(Complex64::new(1.0, 0.0) - s));
    }
    let z = s - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += Complex64::new(*c, 0.0) / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let sqrt_2pi = (2.0 * PI).sqrt();
    sqrt_2pi * t.powc(z + 0.5) * (-t).exp() * acc
}
