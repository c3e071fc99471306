//! Numerical laboratory for the computable content of complex Tauberian theory.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`] – Γ, digamma/polygamma and the derivatives of the reciprocal
//!   gamma function that appear in the log-power transfer coefficients.
//! * [`asymptotics`] – boundary singular parts of Laplace transforms and the
//!   transfer map to asymptotic expansions (and back).
//! * [`signal`] – sampled functions, Stieltjes data, Fejér test kernels,
//!   Laplace quadrature, convolution averages and the boundary classifier.
//! * [`taubcheck`] – windowed estimators of the Tauberian side conditions,
//!   Ingham averages and smoothing representations.
//! * [`experiments`] – end-to-end harnesses (finite-form constant, transfer
//!   soundness, Wiener–Ikehara, exceptional sets, power series).
//! * [`acceptance`] – the acceptance criteria, shared by the test suite and
//!   the `suite` command of the CLI.

pub mod acceptance;
pub mod asymptotics;
mod complex_serde;
pub mod error;
pub mod experiments;
pub mod gallery;
pub mod quad;
pub mod signal;
pub mod specfun;
pub mod taubcheck;

pub use error::{Error, Result};
pub use num_complex::Complex64;
