//! The periodic-point table: every irreducible factor of the cycle
//! polynomials up to a given period, with its discriminant, the quadratic
//! order it belongs to, and the periods of its reconstruction cofactors.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::classfield::arith::factor_below_bound;
use crate::classfield::{determine_d, ClassFieldError, DetermineOpts};
use crate::dynamics::{p_n, DynError};
use crate::factor::factor_over_z_seeded;
use crate::poly::resultant::discriminant;
use crate::poly::{IntPoly, PolyError};
use crate::threeadic::{period_of_factor, ThreeAdicError};

/// Errors from table construction.
#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Dynamics(#[from] DynError),

    #[error(transparent)]
    ClassField(#[from] ClassFieldError),

    #[error(transparent)]
    ThreeAdic(#[from] ThreeAdicError),

    #[error(transparent)]
    Poly(#[from] PolyError),

    /// A factor discriminant has a prime factor beyond the trial-division
    /// bound, so its factorization cannot be reported exactly.
    #[error("discriminant has an unfactored cofactor {0}")]
    IncompleteDiscFactorization(BigInt),

    /// The cycle polynomial for the given period is not squarefree; its
    /// factors must all be simple.
    #[error("cycle polynomial for period {0} has a repeated factor")]
    RepeatedFactor(u32),
}

/// One row of the table: an irreducible factor of the period-`n` cycle
/// polynomial and everything determined about it.
#[derive(Debug, Clone)]
pub struct TableRow {
    /// Exact period of the factor's roots.
    pub n: u32,
    /// The irreducible factor itself (monic).
    pub factor: IntPoly,
    /// Discriminant of the factor, with sign.
    pub disc: BigInt,
    /// Factorization of `|disc|` into primes, ascending.
    pub disc_factors: Vec<(u64, u32)>,
    /// Positive `d` with the factor generating the ring class field of the
    /// order of discriminant `-d`; `None` for the linear factors, whose
    /// roots are rational.
    pub d: Option<u64>,
    /// Periods of the other irreducible factors of the reconstruction
    /// `C_d(x)` that exceed the table bound and so appear on no row of
    /// their own; ascending, deduplicated.
    pub cofactor_periods: Vec<u32>,
}

/// Build the table for all periods `1..=max_n`.
///
/// Every factor of degree at least 2 gets its discriminant determined by
/// the five-screen search and its reconstruction cofactors period-checked;
/// rows appear in period order, factors within a period in the order the
/// factorization returns them.
pub fn build_table(
    max_n: u32,
    cache_dir: Option<&Path>,
    opts: &DetermineOpts,
) -> Result<Vec<TableRow>, TableError> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let cycle = p_n(n, cache_dir)?;
        let factorization = factor_over_z_seeded(&cycle, opts.seed)?;
        for (factor, mult) in factorization.factors {
            if mult != 1 {
                return Err(TableError::RepeatedFactor(n));
            }
            let disc = discriminant(&factor)?;
            let (disc_factors, leftover) = factor_below_bound(&disc);
            if !leftover.is_one() {
                return Err(TableError::IncompleteDiscFactorization(leftover));
            }
            let deg = factor.degree().expect("irreducible factors are nonconstant");
            let (d, cofactor_periods) = if deg >= 2 {
                let search = determine_d(&factor, opts)?;
                let mut periods = Vec::new();
                for cofactor in &search.c_factors {
                    if *cofactor == factor {
                        continue;
                    }
                    let r = period_of_factor(cofactor)?;
                    if r > max_n {
                        periods.push(r);
                    }
                }
                periods.sort_unstable();
                periods.dedup();
                (Some(search.d), periods)
            } else {
                (None, Vec::new())
            };
            rows.push(TableRow {
                n,
                factor,
                disc,
                disc_factors,
                d,
                cofactor_periods,
            });
        }
    }
    Ok(rows)
}

/// Render a signed discriminant factorization like `-2^14 * 3^2`, or `1`
/// / `-1` / `0` when there are no prime factors.
pub fn format_disc_factorization(disc: &BigInt, factors: &[(u64, u32)]) -> String {
    use num_traits::Zero;
    if disc.is_zero() {
        return "0".into();
    }
    let sign = if disc.sign() == num_bigint::Sign::Minus {
        "-"
    } else {
        ""
    };
    if factors.is_empty() {
        return format!("{sign}1");
    }
    let body = factors
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join(" * ");
    format!("{sign}{body}")
}
