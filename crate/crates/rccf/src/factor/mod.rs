//! Exact factorization of integer polynomials.
//!
//! `factor_over_z` writes `f = c · ∏ fᵢ^(eᵢ)` with `c` the signed content
//! and each `fᵢ` primitive, irreducible over ℚ, with positive leading
//! coefficient, listed in a canonical order (degree, then coefficient
//! sequence).  Squarefree multiplicity structure comes from Yun's
//! algorithm; each squarefree part is then factored by modular
//! factorization plus Hensel lifting and subset recombination.

pub mod hensel;
pub mod modp;
mod zassenhaus;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Signed;

pub use modp::{factor_mod_p, is_irreducible_mod_p, ModPoly};

use crate::poly::{IntPoly, PolyError};

/// Seed used by [`factor_over_z`]; splitting is randomized internally but
/// reproducible run to run.
pub const DEFAULT_SEED: u64 = 0x5243_4346;

/// A complete factorization `f = content · ∏ factors[i].0 ^ factors[i].1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    /// Multiply the factorization back out.
    pub fn expand(&self) -> IntPoly {
        let mut acc = IntPoly::constant(self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e as usize);
        }
        acc
    }
}

/// Canonical ordering of primitive factors: lower degree first, then by
/// the coefficient sequence from the constant term up.
pub(crate) fn canonical_order(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().cmp(b.coeffs()))
}

/// Squarefree decomposition over ℤ of a primitive polynomial with
/// positive leading coefficient: pairwise-coprime squarefree parts with
/// their multiplicities.
fn yun_squarefree(f: &IntPoly) -> Vec<(IntPoly, u32)> {
    let df = f.derivative();
    let a0 = f.gcd(&df);
    if a0.degree() == Some(0) {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut i = 1u32;
    while b.degree().map_or(false, |d| d >= 1) {
        let d = &c - &b.derivative();
        let a = b.gcd(&d);
        if a.degree().map_or(false, |k| k >= 1) {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        i += 1;
    }
    out
}

/// Factor an integer polynomial into irreducibles over ℚ with a caller
/// supplied seed for the internal equal-degree splitting.
pub fn factor_over_z_seeded(f: &IntPoly, seed: u64) -> Result<Factorization, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut content = f.content();
    if f.lc().expect("nonzero").is_negative() {
        content = -content;
    }
    let mut g = f.primitive_normalized();
    let mut factors: Vec<(IntPoly, u32)> = Vec::new();
    let k = g.trailing_zero_count();
    if k > 0 {
        factors.push((IntPoly::x(), k as u32));
        g = g.shift_down(k).expect("k within trailing zeros");
    }
    if g.degree().map_or(false, |d| d >= 1) {
        for (part, mult) in yun_squarefree(&g) {
            for irr in zassenhaus::factor_squarefree_primitive(&part, seed) {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| canonical_order(&a.0, &b.0));
    Ok(Factorization { content, factors })
}

/// Factor with the default seed.
pub fn factor_over_z(f: &IntPoly) -> Result<Factorization, PolyError> {
    factor_over_z_seeded(f, DEFAULT_SEED)
}

/// Is the primitive part of `f` irreducible over ℚ?
pub fn is_irreducible(f: &IntPoly) -> bool {
    match factor_over_z(f) {
        Ok(fac) => fac.factors.len() == 1 && fac.factors[0].1 == 1,
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn factors_fixed_point_quintic() {
        // x⁵ + x⁴ + 2x² − 4x = x(x − 1)(x + 2)(x² + 2)
        let f = p(&[0, -4, 2, 0, 1, 1]);
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(1));
        assert_eq!(
            fac.factors,
            vec![
                (p(&[-1, 1]), 1),
                (p(&[0, 1]), 1),
                (p(&[2, 1]), 1),
                (p(&[2, 0, 1]), 1),
            ]
        );
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn multiplicities_via_squarefree_structure() {
        let f = &p(&[1, 1]).pow(2) * &p(&[1, 0, 2]).pow(3);
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(
            fac.factors,
            vec![(p(&[1, 1]), 2), (p(&[1, 0, 2]), 3)]
        );
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn content_and_sign_extraction() {
        let f = p(&[-6, -6]); // −6(x + 1)
        let fac = factor_over_z(&f).unwrap();
        assert_eq!(fac.content, BigInt::from(-6));
        assert_eq!(fac.factors, vec![(p(&[1, 1]), 1)]);
        let c = factor_over_z(&p(&[7])).unwrap();
        assert_eq!(c.content, BigInt::from(7));
        assert!(c.factors.is_empty());
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        assert!(factor_over_z(&IntPoly::zero()).is_err());
    }

    #[test]
    fn irreducibility_judgments() {
        assert!(is_irreducible(&p(&[1, 0, 1])));
        assert!(is_irreducible(&p(&[2, 1])));
        assert!(is_irreducible(&p(&[-1, -1, 0, 0, 1])));
        assert!(!is_irreducible(&p(&[-1, 0, 1])));
        assert!(!is_irreducible(&p(&[1, 2, 1])));
        assert!(!is_irreducible(&p(&[4])));
    }

    #[test]
    fn cyclotomic_like_products() {
        // x⁶ − 1 = (x−1)(x+1)(x²+x+1)(x²−x+1)
        let f = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let fac = factor_over_z(&f).unwrap();
        let degs: Vec<usize> = fac
            .factors
            .iter()
            .map(|(g, _)| g.degree().expect("nonzero"))
            .collect();
        assert_eq!(degs, vec![1, 1, 2, 2]);
        assert_eq!(fac.expand(), f);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn factor_then_expand_round_trips(coeffs in proptest::collection::vec(-9i64..=9, 1..=7)) {
            let f = IntPoly::from_i64(&coeffs);
            prop_assume!(!f.is_zero());
            let fac = factor_over_z(&f).unwrap();
            prop_assert_eq!(fac.expand(), f);
            for (g, _) in &fac.factors {
                prop_assert!(g.lc().unwrap().is_positive());
                prop_assert_eq!(g.content(), BigInt::from(1));
            }
        }
    }
}
