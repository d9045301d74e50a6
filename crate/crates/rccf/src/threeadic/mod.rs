//! 3-adic structure of the cubic dynamics.
//!
//! The map behaves like the cube `x -> x^3` modulo 3, so the exact period
//! of a periodic point is visible in the residue field it generates over
//! the 3-adic integers.  This module reads periods off reductions mod 3
//! ([`period_of_factor`]) and, in the submodule [`zq`], lifts factors into
//! unramified extensions `Z_q / 3^k` to verify orbits and the algebraic
//! value of the attached series directly.

mod zq;

pub use zq::{
    lift_factor_roots, orbit_period, t_newton, t_series, ZqContext, ZqElem,
    MAX_PRECISION, MAX_RESIDUE_DEGREE,
};

use thiserror::Error;

use crate::factor::{factor_mod_p, DEFAULT_SEED};
use crate::poly::IntPoly;

/// Errors from 3-adic computations.
#[derive(Debug, Error)]
pub enum ThreeAdicError {
    /// The factor's non-unit-root irreducible parts mod 3 have different
    /// degrees, so no single period is attached to it.
    #[error("mixed residue degrees {0:?} mod 3")]
    MixedResidueDegrees(Vec<usize>),

    /// The requested residue degree is outside the supported range.
    #[error("unsupported residue degree {0}")]
    UnsupportedDegree(usize),

    /// The requested precision exponent is outside the supported range.
    #[error("unsupported precision exponent {0}")]
    BadPrecision(u32),

    /// Attempted to invert an element that is 0 in the residue field.
    #[error("element is not a unit")]
    NonUnit,

    /// A residue factor other than `x - 1` is repeated mod 3, so its
    /// roots are not simple and do not lift.
    #[error("residue factor of degree {0} has multiplicity {1} mod 3")]
    RamifiedResidue(usize, u32),

    /// The period read off the residue factorization disagrees with the
    /// period measured by iterating on a lifted root.  An `orbit` value
    /// one past `algebraic` means the orbit failed to close within
    /// `algebraic` steps.
    #[error("residue factorization gives period {algebraic} but the orbit closes after {orbit}")]
    InconsistentPeriods { algebraic: u32, orbit: usize },

    /// The lift target must be a unit with the right residue for the
    /// series or Newton iteration to converge.
    #[error("element is not in the convergence domain: {0}")]
    OutsideDomain(String),

    /// No root of the polynomial exists in the requested residue field.
    #[error("polynomial has no root in F_{{3^{0}}}")]
    NoResidueRoot(usize),

    /// Iteration failed to close up within the allowed number of steps.
    #[error("orbit did not close within {0} iterations")]
    NoPeriodFound(usize),
}

/// Precision exponent used for the orbit cross-check: the residue
/// dynamics already separates orbit points, so a modest precision is
/// plenty for exact first-return detection.
const CHECK_PRECISION: u32 = 16;

/// Exact period of the periodic points that are roots of `q`, read off the
/// factorization of `q` mod 3 and confirmed by iterating on a lifted root.
///
/// The dynamics reduces to the cube map mod 3, so a point of exact period
/// `n` generates the degree-`n` unramified extension: every irreducible
/// factor of `q` mod 3 other than the unit-root factor `x - 1` has degree
/// exactly `n`.  When such a factor exists, one of its roots is lifted
/// 3-adically and its orbit under the function is closed explicitly; a
/// mismatch reports [`ThreeAdicError::InconsistentPeriods`].
pub fn period_of_factor(q: &IntPoly) -> Result<u32, ThreeAdicError> {
    let (_, factors) = factor_mod_p(q, 3, DEFAULT_SEED);
    let mut degree: Option<usize> = None;
    for (g, _) in &factors {
        if g.coeffs() == [2, 1] {
            // x + 2 = x - 1 (mod 3): the ramified unit-root part.
            continue;
        }
        let d = g.degree().expect("factors are nonconstant");
        match degree {
            None => degree = Some(d),
            Some(prev) if prev == d => {}
            Some(prev) => {
                return Err(ThreeAdicError::MixedResidueDegrees(vec![prev, d]));
            }
        }
    }
    // A factor that is purely a power of (x - 1) mod 3 belongs to a fixed
    // point (period 1).
    let algebraic = degree.unwrap_or(1) as u32;
    if let Some((ctx, root)) = zq::lift_first_root(q, CHECK_PRECISION)? {
        let orbit = orbit_period(&ctx, &root, algebraic as usize)
            .map_err(|e| match e {
                ThreeAdicError::NoPeriodFound(n) => {
                    ThreeAdicError::InconsistentPeriods { algebraic, orbit: n + 1 }
                }
                other => other,
            })?;
        if orbit != algebraic as usize {
            return Err(ThreeAdicError::InconsistentPeriods { algebraic, orbit });
        }
    }
    Ok(algebraic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn fixed_point_factors_have_period_one() {
        assert_eq!(period_of_factor(&p(&[0, 1])).unwrap(), 1); // x
        assert_eq!(period_of_factor(&p(&[-1, 1])).unwrap(), 1); // x - 1
        assert_eq!(period_of_factor(&p(&[2, 1])).unwrap(), 1); // x + 2
        assert_eq!(period_of_factor(&p(&[2, 0, 1])).unwrap(), 1); // x^2 + 2
    }

    #[test]
    fn known_higher_periods() {
        // Period 2: x^4 + 2x^2 + 4x + 2 = (x-1)^2 (x^2+2x+2) mod 3.
        assert_eq!(period_of_factor(&p(&[2, 4, 2, 0, 1])).unwrap(), 2);
        // Period 2: x^4 - 4x^3 + 4x^2 + 8 = (x-1)^2 (x^2+x+2) mod 3.
        assert_eq!(period_of_factor(&p(&[8, 0, 4, -4, 1])).unwrap(), 2);
        // Period 3: the sextic generating the ring class field of -11.
        assert_eq!(period_of_factor(&p(&[4, 4, 12, 4, 2, 0, 1])).unwrap(), 3);
    }

    #[test]
    fn mixed_degrees_are_rejected() {
        // (x^2+2)(x^4+2x^2+4x+2) mixes residue degrees 1 and 2.
        let q = &p(&[2, 0, 1]) * &p(&[2, 4, 2, 0, 1]);
        assert!(matches!(
            period_of_factor(&q),
            Err(ThreeAdicError::MixedResidueDegrees(_))
        ));
    }
}
