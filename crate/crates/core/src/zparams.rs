use num_complex::Complex64;

use crate::error::{Error, Result};

/// The complex parameter `z` with its derived integer offsets.
///
/// With `m_z = ceil(Re z)` one has `theta = m_z - Re z` in `[0, 1)`,
/// `theta_z = theta - i Im z`, and `z = m_z - theta_z` exactly (to rounding).
/// `eps_z` is the sign of `Re z` (`+1` when `Re z > 0`), and `m = eps_z * m_z`
/// is a non-negative integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZParams {
    pub z: Complex64,
    pub eps_z: i32,
    pub m: u32,
    pub m_z: i32,
    pub theta: f64,
    pub theta_z: Complex64,
}

impl ZParams {
    pub fn new(z: Complex64) -> Result<Self> {
        if z == Complex64::new(0.0, 0.0) || !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::Domain("z must be a nonzero finite complex number".into()));
        }
        let m_z = z.re.ceil() as i32;
        let eps_z = if z.re > 0.0 { 1 } else { -1 };
        let m = (eps_z * m_z) as u32;
        let theta = m_z as f64 - z.re;
        let theta_z = Complex64::new(theta, -z.im);
        Ok(ZParams {
            z,
            eps_z,
            m,
            m_z,
            theta,
            theta_z,
        })
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        ZParams::new(Complex64::new(re, im))
    }

    /// `z` is an integer (and real).
    pub fn is_integer(&self) -> bool {
        self.z.im == 0.0 && self.z.re == self.z.re.round()
    }

    /// `z` is a positive integer.
    pub fn is_positive_integer(&self) -> bool {
        self.is_integer() && self.z.re > 0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(re: f64, im: f64, eps: i32, m: u32, m_z: i32, theta: f64) {
        let zp = ZParams::from_parts(re, im).unwrap();
        assert_eq!(zp.eps_z, eps, "eps for {re}+{im}i");
        assert_eq!(zp.m, m, "m for {re}+{im}i");
        assert_eq!(zp.m_z, m_z, "m_z for {re}+{im}i");
        assert!((zp.theta - theta).abs() < 1e-15, "theta for {re}+{im}i");
        // z = m_z - theta_z
        let back = Complex64::new(zp.m_z as f64, 0.0) - zp.theta_z;
        assert!((back - zp.z).norm() < 1e-15);
        assert!(zp.theta >= 0.0 && zp.theta < 1.0);
    }

    #[test]
    fn parameter_splitting() {
        check(1.0, 0.0, 1, 1, 1, 0.0);
        check(1.5, 0.0, 1, 2, 2, 0.5);
        check(2.0, 0.0, 1, 2, 2, 0.0);
        check(-0.8, 0.0, -1, 0, 0, 0.8);
        check(-1.5, 0.0, -1, 1, -1, 0.5);
        check(-2.0, 0.0, -1, 2, -2, 0.0);
        check(0.0, 1.0, -1, 0, 0, 0.0);
        check(1.6, 0.5, 1, 2, 2, 0.4);
        check(0.7, 0.0, 1, 1, 1, 0.3);
    }

    #[test]
    fn zero_rejected() {
        assert!(ZParams::from_parts(0.0, 0.0).is_err());
    }
}
