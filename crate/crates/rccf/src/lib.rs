//! Exact computational toolkit for the periodic points of the algebraic
//! function attached to Ramanujan's cubic continued fraction.
//!
//! The continued fraction `c(τ)` satisfies the algebraic relation
//! `f(c(τ), c(3τ)) = 0` where
//!
//! ```text
//! f(x, y) = x³(y² + y + 1) − y(y² − 2y + 4).
//! ```
//!
//! Iterating this relation and eliminating intermediate variables yields the
//! polynomials `R_n(x)` whose roots are the points of period dividing `n`,
//! and the quotients `P_n(x)` isolating exact period `n`.  The irreducible
//! factors of `P_n` turn out to be minimal polynomials of values `2c(w/3)`
//! generating ring class fields of imaginary quadratic orders, which is what
//! the rest of the crate computes around:
//!
//! * [`poly`] — dense univariate and sparse bivariate integer polynomials,
//!   resultants (subresultant PRS and evaluation–interpolation), and the
//!   text serialization used by the on-disk cache and the CLI.
//! * [`factor`] — squarefree decomposition, factorization mod p, and
//!   factorization over ℤ by Hensel lifting and subset recombination.
//! * [`dynamics`] — the iterated resultants `R⁽ⁿ⁾`, `R_n`, `P_n`, the
//!   structure checks on them, the H-group transforms, and the period table.
//! * [`threeadic`] — unramified extensions of the 3-adic integers and the
//!   lift `T(x)` of the Frobenius that realizes the dynamics 3-adically.
//! * [`hp`] — fixed-point high-precision real/complex arithmetic.
//! * [`modular`] — Dedekind eta, `c(τ)`, the level-3 Hauptmoduln `α, β`,
//!   the j-invariant, a registry of verifiable identities between them, and
//!   numeric verification of class-field values.
//! * [`classfield`] — class numbers, discriminant splitting, the `C_d(x)`
//!   construction, and the search that identifies the discriminant `−d`
//!   attached to a factor.
//! * [`acceptance`] — the end-to-end acceptance suite the CLI and the
//!   integration tests share.

pub mod acceptance;
pub mod classfield;
pub mod dynamics;
pub mod factor;
pub mod hp;
pub mod modular;
pub mod poly;
pub mod threeadic;

pub use poly::{BiPoly, IntPoly};
