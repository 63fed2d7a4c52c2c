//! Simultaneous numerical differentiation via explicit Vandermonde inversion.
//!
//! Given N+1 samples of a smooth function around a point, solving the
//! Vandermonde system of the truncated Taylor expansion yields estimates of
//! *all* derivatives of order 0..=N at once. This crate implements:
//!
//! - [`vandermonde`]: the closed-form inverse through elementary symmetric
//!   polynomials, plus the product-form determinant;
//! - [`diffop1d`]: sample plans on equidistant stencils and the coefficient /
//!   derivative estimators;
//! - [`bounds`]: closed-form truncation-error bounds for the coefficients,
//!   the derivatives, and the reconstructed function, with bound-vs-count
//!   curves;
//! - [`localrep`]: local truncated-Taylor models fitted on sampled signals,
//!   evaluation, and grid refinement (resampling);
//! - [`pyramid`]: a difference-pyramid (multi-resolution) variant of the
//!   estimator;
//! - [`diffop2d`]: the two-dimensional extension on a ZigZag monomial basis;
//! - [`baselines`]: forward finite differences, natural cubic splines, and
//!   piecewise-linear interpolation for comparison;
//! - [`functions`]: built-in analytic test functions with exact derivatives.
//!
//! All numerics are plain `f64`; every fallible operation returns
//! [`error::Error`].

pub mod baselines;
pub mod bounds;
pub mod diffop1d;
pub mod diffop2d;
pub mod error;
pub mod functions;
pub mod localrep;
pub mod pyramid;
pub mod vandermonde;

pub use error::{Error, Result};
