//! Core special functions: the entire integral `I`, the exponential integral
//! `E1`, the Dickman Laplace transform, the saddle points `xi`/`zeta_0`,
//! complex Gamma, the Riemann zeta function with its partial Euler products,
//! and the normal CDF.
//!
//! Everything here is a pure function of its arguments.

mod erf;
mod expint;
mod gamma;
mod saddle;
mod zeta;

pub use erf::{erfc, normal_cdf};
pub use expint::{dickman_laplace, exp_integral_e1, exp_integral_i};
pub use gamma::gamma;
pub use saddle::{solve_xi, solve_zeta0, SaddleResult};
pub use zeta::{zeta, zeta_em, zeta_y};
