use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numerical knobs shared by every module.
///
/// The defaults are the values the acceptance checks are pinned to. All
/// fields are plain numbers so a config round-trips through JSON bit-exactly;
/// nothing here is seeded or randomized.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Residual tolerance for Newton iterations (xi, zeta_0). Residuals are
    /// scaled: |e^z - 1 - wz| / (1 + |w z|).
    pub newton_tol: f64,
    /// Target tolerance for adaptive quadrature.
    pub quad_tol: f64,
    /// Chebyshev degree of the dense pieces in delay-equation tables.
    pub cheb_degree: usize,
    /// Prime cutoff for truncated Euler products.
    pub euler_p: u64,
    /// Node count for Cauchy coefficient extraction.
    pub cauchy_m: usize,
    /// Range parameter beta of G_beta; also enters e_y.
    pub beta: f64,
    /// Companion parameter delta; beta + delta < 3/5 is enforced.
    pub delta: f64,
    /// Named absolute constants the source formulas leave unspecified.
    /// Keys: `c_28` (large-deviation exponent), `c1_26`/`c2_26`/`c3_26`
    /// (tilted-law range), `c0_14` (reserved).
    pub constants: BTreeMap<String, f64>,
}

impl Default for Config {
    fn default() -> Self {
        let mut constants = BTreeMap::new();
        constants.insert("c_28".to_string(), 0.01);
        constants.insert("c0_14".to_string(), 1.0);
        constants.insert("c1_26".to_string(), 0.05);
        constants.insert("c2_26".to_string(), 10.0);
        constants.insert("c3_26".to_string(), 10.0);
        Config {
            newton_tol: 1e-12,
            quad_tol: 1e-10,
            cheb_degree: 32,
            euler_p: 100_000,
            cauchy_m: 64,
            beta: 0.3,
            delta: 0.2,
            constants,
        }
    }
}

impl Config {
    /// Checks the standing hypotheses; call after deserializing.
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0) || !(self.delta > 0.0) {
            return Err(Error::Config("beta and delta must be positive".into()));
        }
        if self.beta + self.delta >= 0.6 {
            return Err(Error::Config(format!(
                "beta + delta = {} violates beta + delta < 3/5",
                self.beta + self.delta
            )));
        }
        if self.newton_tol <= 0.0 || self.quad_tol <= 0.0 {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.cheb_degree < 4 {
            return Err(Error::Config("cheb_degree must be at least 4".into()));
        }
        if self.euler_p < 1000 {
            return Err(Error::Config("euler_p must be at least 1000".into()));
        }
        Ok(())
    }

    /// Named constant with fallback to the built-in default.
    pub fn constant(&self, name: &str) -> f64 {
        if let Some(v) = self.constants.get(name) {
            return *v;
        }
        *Config::default()
            .constants
            .get(name)
            .unwrap_or(&f64::NAN)
    }

    /// `e_y = (log_2 y)^{1/beta} / log y`, the exclusion radius around
    /// integers used by the validity sets `V_J(y)`.
    pub fn e_y(&self, y: f64) -> f64 {
        let ly = y.ln();
        ly.ln().max(1e-12).powf(1.0 / self.beta) / ly
    }

    /// Is `(x, y)` in the range `G_beta`: `exp((log x)^{1-beta}) <= y <= x`?
    pub fn in_g_beta(&self, x: f64, y: f64) -> bool {
        if !(x >= 3.0) || y > x {
            return false;
        }
        y.ln() >= x.ln().powf(1.0 - self.beta)
    }
}
