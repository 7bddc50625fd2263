//! Contraction of `gl_n(R)` to `R^n⋊m_n` and strong contraction of the unitary
//! dual of `R²⋊M₂`.
//!
//! - [`lie`]: exact deformed brackets, Jacobi certification and the mirabolic group law.
//! - [`ops`]: differential operators with Gaussian-rational Laurent coefficients.
//! - [`catalog`]: operator and group-level forms of every representation family.
//! - [`lab`]: defects, quadrature norms and convergence sweeps of contraction scenarios.
//! - [`cli`]: the `mirabolic` command-line front end.

pub mod catalog;
pub mod cli;
pub mod lab;
pub mod lie;
pub mod ops;
pub mod params;
pub mod rational;
