//! High-precision evaluation of the eta-quotient functions behind the
//! cubic continued fraction, and numeric verification of their identities.
//!
//! Everything here evaluates on the upper half-plane at a caller-chosen
//! binary precision:
//!
//! * the Dedekind eta function as a truncated `q`-product, and the derived
//!   functions `c`, `c1`, `alpha`, `beta`, and the `j`-invariant
//!   ([`eta`], [`c_eval`], [`c1_eval`], [`alpha_eval`], [`beta_eval`],
//!   [`j_eval`]);
//! * a registry of twenty function equations relating those evaluators —
//!   transformation laws, the modular polynomials linking `c(t)` to
//!   `c(2t)` and `c(3t)`, the Fermat-cubic relation, and the `j`-formulas
//!   — each checked numerically on sampled points ([`verify_identities`],
//!   [`sample_taus`]);
//! * class-field spot checks: for a discriminant `-d` with `-d = 1 mod 3`
//!   a witness point `w` is chosen with `9 | N(w)`, and the values
//!   `beta(w/3)` and `2c(w/3)` are confirmed to be roots of the expected
//!   integer polynomials, together with their two companion roots
//!   ([`w_for_d`], [`verify_class_value`]);
//! * closed radical forms for the singular values at `-d = -8, -11, -23`,
//!   with the cube-root branch selected by proximity to the function value
//!   ([`radical_value_d8`], [`cardan_value_d11`], [`radical_value_d23`]).

mod eval;
mod identities;
mod values;

pub use eval::{
    alpha_eval, beta_eval, c1_eval, c_eval, c_product, eta, eval_poly_complex, j_eval,
    j_triple_via_c, j_via_c, PrecCtx, Tau, DEFAULT_PREC_BITS, ETA_TERM_CAP,
};
pub use identities::{sample_taus, verify_identities, IdentityRecord, REGISTRY_IDS};
pub use values::{
    cardan_value_d11, radical_value_d23, radical_value_d8, verify_class_value, w_for_d,
    ClassValueReport, Witness,
};

use thiserror::Error;

/// Errors from upper-half-plane evaluation and class-value checks.
#[derive(Debug, Error)]
pub enum ModularError {
    /// The point has imaginary part `<= 0` and is not a valid argument.
    #[error("imaginary part {0:.6} is not positive")]
    NotUpperHalfPlane(f64),

    /// The argument sits below the evaluation floor, where the `q`-product
    /// would need excessive terms for the requested precision.
    #[error("imaginary part {im:.6} is below the evaluation floor {floor:.3}")]
    ImaginaryTooSmall { im: f64, floor: f64 },

    /// The truncation length needed for the requested precision exceeds the
    /// hard cap on product terms.
    #[error("q-product needs {needed} terms, above the cap {cap}")]
    PrecisionUnreachable { needed: u64, cap: u64 },

    /// `j` evaluated too close to the pole of `x (x-24)^3 / (x-27)`.
    #[error("j-invariant pole: |alpha^3 - 27| = {dist:.3e} is below threshold")]
    NearPole { dist: f64 },

    /// The discriminant is not `-d = 0 or 1 mod 4` with `-d = 1 mod 3`.
    #[error("-{0} is not a discriminant compatible with the cube map")]
    InvalidDiscriminant(u64),

    /// No witness numerator `k = 1 mod 6` with `9 | N(w)` below the bound.
    #[error("no witness k <= {cap} found for discriminant -{d}")]
    NoWitness { d: u64, cap: u64 },

    /// A class value failed to vanish at its expected polynomial.
    #[error("{what}: residual {residual:.3e} exceeds tolerance")]
    ResidualTooLarge { what: String, residual: f64 },
}
