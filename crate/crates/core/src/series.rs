use num_complex::Complex64;

use crate::error::{Error, Result};

/// Truncated power series with complex coefficients.
///
/// All arithmetic is closed at a fixed truncation order: products are Cauchy
/// products cut at the shorter order, and the analytic operations (exp, log,
/// complex power) use the standard coefficient recurrences.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoly {
    /// Coefficients, index 0..=J.
    pub coefficients: Vec<Complex64>,
    /// Expansion point.
    pub center: Complex64,
}

impl SeriesPoly {
    pub fn new(coefficients: Vec<Complex64>, center: Complex64) -> Self {
        SeriesPoly {
            coefficients,
            center,
        }
    }

    pub fn zero(order: usize, center: Complex64) -> Self {
        SeriesPoly::new(vec![Complex64::new(0.0, 0.0); order + 1], center)
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coefficients
            .get(j)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Truncates (or zero-extends) to order `j`.
    pub fn truncated(&self, j: usize) -> SeriesPoly {
        let mut c = self.coefficients.clone();
        c.resize(j + 1, Complex64::new(0.0, 0.0));
        SeriesPoly::new(c, self.center)
    }

    pub fn add(&self, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coefficients.len().min(other.coefficients.len());
        let c = (0..n).map(|i| self.coefficients[i] + other.coefficients[i]).collect();
        SeriesPoly::new(c, self.center)
    }

    pub fn scale(&self, k: Complex64) -> SeriesPoly {
        SeriesPoly::new(self.coefficients.iter().map(|c| c * k).collect(), self.center)
    }

    /// Cauchy product truncated at the shorter order.
    pub fn mul(&self, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coefficients.len().min(other.coefficients.len());
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n - i {
                c[i + j] += self.coefficients[i] * other.coefficients[j];
            }
        }
        SeriesPoly::new(c, self.center)
    }

    /// exp of the series: `E' = S' E` coefficient recurrence.
    pub fn exp(&self) -> SeriesPoly {
        let n = self.coefficients.len();
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = self.coefficients[0].exp();
        for k in 1..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 1..=k {
                acc += self.coefficients[i] * (i as f64) * e[k - i];
            }
            e[k] = acc / k as f64;
        }
        SeriesPoly::new(e, self.center)
    }

    /// log of a series with nonzero constant term.
    pub fn log(&self) -> Result<SeriesPoly> {
        let a0 = self.coefficients[0];
        if a0.norm() == 0.0 {
            return Err(Error::Domain("log of a series with zero constant term".into()));
        }
        let n = self.coefficients.len();
        let mut l = vec![Complex64::new(0.0, 0.0); n];
        l[0] = a0.ln();
        // l' = a'/a  =>  k a_0 l_k = k a_k - sum_{i=1}^{k-1} i l_i a_{k-i}
        for k in 1..n {
            let mut acc = self.coefficients[k] * (k as f64);
            for i in 1..k {
                acc -= l[i] * (i as f64) * self.coefficients[k - i];
            }
            l[k] = acc / (a0 * k as f64);
        }
        Ok(SeriesPoly::new(l, self.center))
    }

    /// Complex power `self^z` via `exp(z log self)`; requires a nonzero
    /// constant term (principal branch).
    pub fn powz(&self, z: Complex64) -> Result<SeriesPoly> {
        Ok(self.log()?.scale(z).exp())
    }

    /// Division `self / other` (other has nonzero constant term).
    pub fn div(&self, other: &SeriesPoly) -> Result<SeriesPoly> {
        let b0 = other.coefficients[0];
        if b0.norm() == 0.0 {
            return Err(Error::Domain("division by a series with zero constant term".into()));
        }
        let n = self.coefficients.len().min(other.coefficients.len());
        let mut q = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            let mut acc = self.coefficients[k];
            for i in 0..k {
                acc -= q[i] * other.coefficients[k - i];
            }
            q[k] = acc / b0;
        }
        Ok(SeriesPoly::new(q, self.center))
    }

    /// Horner evaluation at offset `s` from the center.
    pub fn eval(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coefficients.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn exp_log_roundtrip() {
        let s = SeriesPoly::new(vec![c(1.0), c(0.3), c(-0.2), c(0.05)], c(0.0));
        let back = s.log().unwrap().exp();
        for j in 0..=3 {
            assert!((back.coeff(j) - s.coeff(j)).norm() < 1e-14);
        }
    }

    #[test]
    fn geometric_division() {
        // 1 / (1 - s) = 1 + s + s^2 + ...
        let one = SeriesPoly::new(vec![c(1.0), c(0.0), c(0.0), c(0.0), c(0.0)], c(0.0));
        let denom = SeriesPoly::new(vec![c(1.0), c(-1.0), c(0.0), c(0.0), c(0.0)], c(0.0));
        let q = one.div(&denom).unwrap();
        for j in 0..=4 {
            assert!((q.coeff(j) - c(1.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn complex_power_splits() {
        let s = SeriesPoly::new(vec![c(1.0), c(0.4), c(0.1), c(0.0), c(0.0)], c(0.0));
        let z = Complex64::new(0.7, 0.3);
        let w = Complex64::new(-1.2, 0.5);
        let lhs = s.powz(z + w).unwrap();
        let rhs = s.powz(z).unwrap().mul(&s.powz(w).unwrap());
        for j in 0..=4 {
            assert!((lhs.coeff(j) - rhs.coeff(j)).norm() < 1e-13);
        }
    }
}
