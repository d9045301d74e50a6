//! High-precision fixed-point real and complex arithmetic.
//!
//! Numbers are big-integer mantissas with an explicit binary scale: a
//! [`Real`] stores `mant * 2^(-scale)`.  The scale is chosen by the caller
//! (target precision plus guard bits) and is preserved exactly through all
//! operations; each operation rounds once, to nearest, at the last retained
//! bit.  On top of the ring operations the module provides the constant
//! [`pi`], the elementary functions `exp` and `sin_cos` by argument
//! reduction plus Taylor series, real square roots via integer Newton, and
//! principal complex square and cube roots via Newton iteration seeded from
//! `f64` polar form.
//!
//! Everything here is deterministic: the same inputs at the same scale give
//! bit-identical results on every platform.

mod complex;
mod real;

pub use complex::Complex;
pub use real::{pi, Real};
