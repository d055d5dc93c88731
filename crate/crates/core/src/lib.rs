//! Exact Jacobians of incidence schemes of rational curves on hypersurfaces.
//!
//! * [`algebra`]: rationals, dense matrices, exact rank/kernel/determinant
//!   and a tolerance-based numeric rank.
//! * [`poly`]: sparse forms and univariate polynomials.
//! * [`incidence`]: the parameter space of curves, the coefficient equations
//!   `k_j(c, f)` and the Jacobian in coefficient and evaluation form.
//! * [`clemens`]: the special quintic `l q + z4 p` through a curve on a
//!   quartic surface, its block-structured Jacobian and a verification report.

pub mod algebra;
pub mod clemens;
pub mod error;
pub mod incidence;
pub mod poly;

pub use error::{Error, Result};
