//! Imaginary quadratic class-field arithmetic attached to the cubic dynamics.
//!
//! The irreducible factors of the periodic-point polynomials generate ring
//! class fields of imaginary quadratic orders.  This module provides the
//! number-theoretic side of that correspondence:
//!
//! * Kronecker symbols, class numbers of orders `O(-d)` (by reduced-form
//!   counting and by the conductor product formula), and discriminant
//!   splitting `-d = d_K f^2` ([`kronecker`], [`class_number`],
//!   [`class_number_product`], [`split_disc`]);
//! * the push-forward map sending a periodic-point factor `q` to the monic
//!   minimal polynomial `p` of the images `(b^3 + 2)/b` of its roots
//!   ([`recover_p_from_q`]);
//! * the reverse construction `C(x) = x^deg(p) * p((x^3 + 2)/x)` whose
//!   irreducible factors are exactly the periodic-point factors attached to
//!   the same order ([`build_cd`], [`factor_shape`]);
//! * a search procedure that pins down the unique discriminant `-d` whose
//!   ring class field is generated by a given factor, with a full audit
//!   trail of every candidate examined ([`determine_d`]);
//! * factor diagnostics: norms at distinguished points, unit detection,
//!   odd-prime discriminant containment, and the degrees of the extended
//!   ring class fields ([`unit_and_norm_checks`],
//!   [`odd_disc_divisors_contained`], [`degree_indices`]).

mod arith;
mod checks;
mod determine;
pub mod table;

pub use arith::{
    class_number, class_number_product, factor_below_bound, factor_u64, is_prime_u64, kronecker,
    split_disc, TRIAL_DIVISION_BOUND,
};
pub use checks::{
    degree_indices, odd_disc_divisors_contained, unit_and_norm_checks, DegreeIndices,
    NormCheckReport,
};
pub use determine::{
    build_cd, determine_d, factor_shape, recover_p_from_q, Candidate, DetermineOpts, DiscClass,
    DiscriminantSearch, Fate,
};
pub use table::{build_table, format_disc_factorization, TableError, TableRow};

use num_bigint::BigInt;
use thiserror::Error;

/// Errors from class-field computations.
#[derive(Debug, Error)]
pub enum ClassFieldError {
    /// The argument is not `-disc` for an imaginary quadratic order
    /// (requires `d >= 3` and `-d = 0 or 1 mod 4`).
    #[error("{0} is not the negative of an imaginary quadratic discriminant")]
    BadDiscriminant(u64),

    /// The discriminant `-d` must be `1 mod 3` for the cubic dynamics to
    /// attach class invariants to the order.
    #[error("-{0} is not 1 mod 3")]
    WrongResidueMod3(u64),

    /// A discriminant exceeded the supported size for exact form counting.
    #[error("discriminant {0} exceeds the supported search bound")]
    DiscriminantTooLarge(u64),

    /// An integer to be factored completely has a prime factor above the
    /// trial-division bound; the unfactored cofactor is reported.
    #[error("integer has a prime factor above {TRIAL_DIVISION_BOUND} (unfactored cofactor {0})")]
    IncompleteFactorization(BigInt),

    /// The input polynomial must have a nonzero constant term.
    #[error("polynomial has a zero constant term")]
    ZeroConstantTerm,

    /// The input polynomial must be monic.
    #[error("polynomial is not monic")]
    NotMonic,

    /// The push-forward resultant did not normalize to a monic polynomial.
    #[error("push-forward did not produce a monic polynomial")]
    BadPushForward,

    /// The input is inconsistent with a periodic-point factor (e.g. it does
    /// not divide the reconstructed polynomial `C(x)`, or `C(x)` has an
    /// impossible number of irreducible factors).
    #[error("input is not a periodic-point factor: {0}")]
    NotAPeriodicFactor(String),

    /// The discriminant search eliminated every candidate.
    #[error("discriminant search eliminated all {0} candidates")]
    NoSurvivor(usize),

    /// The discriminant search left more than one candidate standing.
    #[error("discriminant search is ambiguous between {0:?}")]
    Ambiguous(Vec<u64>),

    /// The splitting test ran out of usable test primes.
    #[error("could not find enough split-test primes below the search limit")]
    SplitPrimesExhausted,

    /// An underlying polynomial operation failed.
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}
