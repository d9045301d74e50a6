//! Value and discriminant diagnostics for periodic-point factors.
//!
//! The roots of a factor `q` of some `C_d(x)` are algebraic integers whose
//! norms are visible in the coefficients: `q(0)` is `±` the norm of a root,
//! `q(-2)` and `q(1)` are the norms of translates, and the three values are
//! tied together by the product law `q(-2) = q(1) * q(0)`.  This module
//! reports those values, decides when the roots are units, checks the
//! odd-prime containment law between `disc q` and `disc p_d`, and computes
//! the degrees of the extended ring class fields involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::resultant::discriminant;
use crate::poly::IntPoly;

use super::ClassFieldError;

/// Degrees of the ring class fields of conductor `6f`, `2f`, and `3f` over
/// the ring class field of conductor `f`, for the imaginary quadratic order
/// of discriminant `-d = d_K f^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeIndices {
    /// Degree of the conductor-`6f` ring class field over the conductor-`f`
    /// one.
    pub idx6: u64,
    /// Degree of the conductor-`2f` ring class field over the conductor-`f`
    /// one.
    pub idx2: u64,
    /// Degree of the conductor-`3f` ring class field over the conductor-`f`
    /// one (always 2 when `-d = 1 mod 3`).
    pub idx3: u64,
}

/// Compute the class-field degree indices for the order of discriminant
/// `-d`, which must satisfy `-d = 1 mod 3`.
///
/// The three cases are governed by the splitting of 2: `idx6/idx2 = 4/2`
/// when `d` is even, `2/1` when `-d = 1 mod 8`, and `6/3` when
/// `-d = 5 mod 8`; `idx3` is always 2.
pub fn degree_indices(d: u64) -> Result<DegreeIndices, ClassFieldError> {
    if d < 3 || !matches!(d % 4, 0 | 3) {
        return Err(ClassFieldError::BadDiscriminant(d));
    }
    if d % 3 != 2 {
        return Err(ClassFieldError::WrongResidueMod3(d));
    }
    let (idx6, idx2) = if d % 2 == 0 {
        (4, 2)
    } else if d % 8 == 7 {
        // -d = 1 mod 8
        (2, 1)
    } else {
        // -d = 5 mod 8 (d odd and valid forces d = 3 mod 8 here)
        (6, 3)
    };
    Ok(DegreeIndices { idx6, idx2, idx3: 2 })
}

/// Values of a factor at the distinguished points `0`, `1`, `-2`, together
/// with the laws they satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormCheckReport {
    /// `q(0)`, which is `±` the norm of a root.
    pub at_zero: BigInt,
    /// `q(1)`.
    pub at_one: BigInt,
    /// `q(-2)`.
    pub at_minus_two: BigInt,
    /// Whether the product law `q(-2) = q(1) * q(0)` holds.
    pub product_rule: bool,
    /// Whether `|q(0)| = 1`, i.e. the roots of `q` are algebraic units.
    pub unit: bool,
}

/// Evaluate a factor at `0`, `1`, and `-2` and report the norm laws.
pub fn unit_and_norm_checks(q: &IntPoly) -> NormCheckReport {
    let at_zero = q.eval(&BigInt::zero());
    let at_one = q.eval(&BigInt::one());
    let at_minus_two = q.eval(&BigInt::from(-2));
    let product_rule = at_minus_two == &at_one * &at_zero;
    let unit = at_zero.abs().is_one();
    NormCheckReport {
        at_zero,
        at_one,
        at_minus_two,
        product_rule,
        unit,
    }
}

/// Test whether every odd prime dividing `disc q` also divides `disc p`.
///
/// Works without factoring either discriminant: the odd part of `disc q` is
/// repeatedly divided by its gcd with `disc p` until the two are coprime;
/// the containment holds exactly when the leftover is 1.
pub fn odd_disc_divisors_contained(q: &IntPoly, p: &IntPoly) -> Result<bool, ClassFieldError> {
    let dq = discriminant(q)?;
    let dp = discriminant(p)?;
    if dq.is_zero() {
        // Every prime divides 0, so containment needs disc p = 0 too.
        return Ok(dp.is_zero());
    }
    let mut r = dq.abs();
    let two = BigInt::from(2);
    while r.is_even() {
        r /= &two;
    }
    if dp.is_zero() {
        return Ok(true);
    }
    let dp = dp.abs();
    loop {
        let g = r.gcd(&dp);
        if g.is_one() {
            break;
        }
        r /= &g;
    }
    Ok(r.is_one())
}
