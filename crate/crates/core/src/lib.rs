//! Numerical machinery for friable-integer asymptotics.
//!
//! The crate evaluates the objects that govern weighted counts of y-friable
//! integers `Psi(x, y; f)` for the family `f_z(n) = z^omega(n)`:
//!
//! - special functions (`specfun`): the entire integral `I`, the exponential
//!   integral `E1`, the Dickman Laplace transform, the saddle points `xi` and
//!   `zeta_0`, complex `Gamma`, the Riemann zeta function and its partial
//!   Euler products, and the normal CDF;
//! - delay differential solutions (`dde`): Dickman-type functions `g_z`,
//!   `rho_z`, `phi_z` with dense piecewise representations, derivative and
//!   jump tables, asymptotic forms, and Taylor coefficients of `rho_hat^z`;
//! - Selberg-Delange coefficients (`coeffs`): Euler products `B(z)`, the
//!   Laurent data of `s zeta(s+1)`, and the expansion coefficients `a_j`;
//! - an exact sieve oracle (`arith`): friability flags and `omega(n)` for
//!   every `n <= x`, twisted sums, and local counts;
//! - assembled predictions (`asymptotics`): the smoothed approximation
//!   `Lambda_f`, the main-term expansions with correction terms, moment sets,
//!   local laws and large-deviation envelopes for `omega(n)` on friables.
//!
//! All floating point work is double precision; tolerances are carried by
//! [`Config`]. Everything is a pure function of its inputs, so finished
//! tables can be shared freely across threads.

// `!(x > 0.0)`-style guards are deliberate: they reject NaN along with the
// out-of-domain sign, which `x <= 0.0` would let through. Index-based loops
// are kept where they mirror the recurrences they implement.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]
#![allow(clippy::excessive_precision)]

pub mod arith;
pub mod asymptotics;
pub mod coeffs;
pub mod config;
pub mod dde;
pub mod error;
pub mod primes;
pub mod quad;
pub mod report;
pub mod series;
pub mod specfun;
pub mod zparams;

pub use config::Config;
pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use series::SeriesPoly;
pub use zparams::ZParams;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
