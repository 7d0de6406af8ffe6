//! Orbital stability of proportional solitary waves in coupled BBM systems
//!
//! `U_t + U_x - U_xxt + (grad H(U))_x = 0`, `U = (u, v)`, with `H` homogeneous of
//! degree `p + 2`. The pipeline goes
//! ratios `mu` -> criterion matrix `M` -> linearised spectra -> `d''(omega)` -> verdict,
//! with a pseudo-spectral time stepper to confirm verdicts dynamically.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod criterion;
pub mod error;
pub mod fourier;
pub mod moment;
pub mod nonlinearity;
pub mod profile;
pub mod quadrature;
pub mod roots;
pub mod simulator;
pub mod spectral;

pub use error::{Error, Result};
