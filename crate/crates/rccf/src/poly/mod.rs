//! Exact integer polynomials.
//!
//! Two representations are provided:
//!
//! * [`IntPoly`] — dense univariate polynomials over ℤ, coefficients stored
//!   in ascending degree order with no trailing zeros.
//! * [`BiPoly`] — sparse bivariate polynomials over ℤ in the fixed variable
//!   pair `(x, y)`, stored as a sorted term map `(i, j) → coefficient`.
//!
//! On top of these, [`resultant`] implements exact resultants (subresultant
//! pseudo-remainder sequences for the univariate case, evaluation plus
//! Newton interpolation for bivariate elimination) and discriminants, and
//! [`serial`] defines the line-oriented text format used to persist
//! polynomials to disk.

mod bi;
mod int;
pub mod resultant;
pub mod serial;

pub use bi::BiPoly;
pub use int::IntPoly;

use thiserror::Error;

/// Errors arising from exact polynomial arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// `div_exact` was asked to divide by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// `div_exact` found a nonzero remainder; the division is not exact
    /// over ℤ.
    #[error("inexact polynomial division: {0}")]
    NonExactDivision(String),
    /// An operation that requires a nonzero polynomial received zero.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    /// `reduce_mod` was called with modulus < 2.
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),
    /// Exact interpolation produced a non-integer coefficient; this means a
    /// degree bound was violated and indicates an internal bug.
    #[error("interpolation produced a non-integer coefficient: {0}")]
    InexactInterpolation(String),
}
