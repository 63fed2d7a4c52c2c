//! Library-wide error type.
//!
//! Every fallible operation returns [`Error`]; variants carry enough structure
//! for callers (and tests) to match on the exact failure rather than parsing
//! message strings.

use thiserror::Error;

/// Errors produced by the vandiff library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two offsets coincide, so the Vandermonde system is singular.
    #[error("offsets {first} and {second} coincide (value {value}); the Vandermonde matrix is singular")]
    DuplicateOffsets {
        /// Index of the first colliding offset.
        first: usize,
        /// Index of the second colliding offset.
        second: usize,
        /// The shared offset value.
        value: f64,
    },

    /// A parameter violates its documented constraint.
    #[error("invalid parameter `{name}`: requires {constraint}, got {got}")]
    InvalidParameter {
        /// Parameter name as written in the API.
        name: &'static str,
        /// The constraint that was violated, in source notation.
        constraint: &'static str,
        /// Offending value (integers are converted for reporting).
        got: f64,
    },

    /// Two containers that must agree in length do not.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch {
        /// Required length.
        expected: usize,
        /// Supplied length.
        got: usize,
    },

    /// An evaluation point lies outside the representable span.
    #[error("x = {x} is outside the domain [{min}, {max}]")]
    OutOfDomain {
        /// Requested abscissa.
        x: f64,
        /// Smallest representable abscissa.
        min: f64,
        /// Largest representable abscissa.
        max: f64,
    },

    /// A least-squares/design system is numerically rank-deficient.
    #[error("design matrix is numerically singular; singular values: {singular_values:?}")]
    SingularSystem {
        /// Full singular-value spectrum, largest first.
        singular_values: Vec<f64>,
    },

    /// A requested partial-derivative term is not spanned by the basis.
    #[error("partial derivative of total order {total_order} with x-order {x_order} is not in the basis")]
    NotInBasis {
        /// Total differentiation order i.
        total_order: usize,
        /// Order taken in x (the rest is taken in y).
        x_order: usize,
    },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
