//! Sparse bivariate polynomials over ℤ.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, PolyError};

/// A polynomial in the fixed variable pair `(x, y)` with integer
/// coefficients, stored sparsely as `(i, j) → coefficient of x^i y^j` with
/// all stored coefficients nonzero.
///
/// The variable names are purely positional: elimination routines document
/// which slot they treat as which.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds from `(i, j, coefficient)` triples; repeated exponent pairs
    /// accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, BigInt)>,
    {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Convenience constructor from `i64` coefficients.
    pub fn from_terms_i64(terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(i, j, c)| (i, j, BigInt::from(c))))
    }

    /// Adds `c·x^i y^j` in place.
    pub fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    /// Sorted nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Degree in `x`, `None` for zero.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    /// Degree in `y`, `None` for zero.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Embeds a univariate polynomial as a polynomial in `x`.
    pub fn from_uni_x(p: &IntPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as u32, 0, c.clone())),
        )
    }

    /// Embeds a univariate polynomial as a polynomial in `y`.
    pub fn from_uni_y(p: &IntPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| (0, j as u32, c.clone())),
        )
    }

    /// Swaps the two variables.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Collects coefficients with respect to `y`: entry `j` is the
    /// coefficient of `y^j` as a polynomial in `x`.  Empty for zero.
    pub fn coeffs_wrt_y(&self) -> Vec<IntPoly> {
        let Some(dy) = self.deg_y() else {
            return Vec::new();
        };
        let mut out = vec![Vec::new(); dy as usize + 1];
        for (&(i, j), c) in &self.terms {
            let v = &mut out[j as usize];
            if v.len() <= i as usize {
                v.resize(i as usize + 1, BigInt::zero());
            }
            v[i as usize] = c.clone();
        }
        out.into_iter().map(IntPoly::new).collect()
    }

    /// Collects coefficients with respect to `x`.
    pub fn coeffs_wrt_x(&self) -> Vec<IntPoly> {
        self.swap_vars().coeffs_wrt_y()
    }

    /// Substitutes `x = a`, producing a univariate polynomial in `y`.
    pub fn eval_x(&self, a: &BigInt) -> IntPoly {
        let Some(dy) = self.deg_y() else {
            return IntPoly::zero();
        };
        let mut out = vec![BigInt::zero(); dy as usize + 1];
        // Group terms by y-power, Horner over cached powers of `a`.
        let dx = self.deg_x().unwrap_or(0);
        let powers = power_table(a, dx);
        for (&(i, j), c) in &self.terms {
            out[j as usize] += c * &powers[i as usize];
        }
        IntPoly::new(out)
    }

    /// Substitutes `y = b`, producing a univariate polynomial in `x`.
    pub fn eval_y(&self, b: &BigInt) -> IntPoly {
        self.swap_vars().eval_x(b)
    }

    /// Full evaluation at `(a, b)`.
    pub fn eval_xy(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.eval_x(a).eval(b)
    }

    /// Substitutes `y = x`, collapsing to a univariate polynomial.
    pub fn diagonal(&self) -> IntPoly {
        let Some(dx) = self.deg_x() else {
            return IntPoly::zero();
        };
        let dy = self.deg_y().unwrap_or(0);
        let mut out = vec![BigInt::zero(); (dx + dy) as usize + 1];
        for (&(i, j), c) in &self.terms {
            out[(i + j) as usize] += c;
        }
        IntPoly::new(out)
    }

    /// Reduces every coefficient into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<BiPoly, PolyError> {
        if m < &BigInt::from(2) {
            return Err(PolyError::BadModulus(m.to_string()));
        }
        Ok(BiPoly::from_terms(
            self.terms
                .iter()
                .map(|(&(i, j), c)| (i, j, c.mod_floor(m))),
        ))
    }

    /// Content: gcd of all coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, k: &BigInt) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&ij, c)| (ij, c * k))
                .collect(),
        }
    }
}

fn power_table(a: &BigInt, up_to: u32) -> Vec<BigInt> {
    let mut powers = Vec::with_capacity(up_to as usize + 1);
    powers.push(BigInt::one());
    for _ in 0..up_to {
        let next = powers.last().unwrap() * a;
        powers.push(next);
    }
    powers
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c);
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&ij, c)| (ij, -c)).collect(),
        }
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Descending in total degree, then x-degree, for readability.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&(i, j), _)| (std::cmp::Reverse(i + j), std::cmp::Reverse(i)));
        for (&(i, j), c) in terms {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if !mag.is_one() || (i, j) == (0, 0) {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "y")?,
                _ => write!(f, "y^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_accumulation_and_degrees() {
        let p = BiPoly::from_terms_i64(&[(3, 2, 1), (3, 2, -1), (0, 1, 4)]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.deg_x(), Some(0));
        assert_eq!(p.deg_y(), Some(1));
        assert!(BiPoly::zero().deg_x().is_none());
    }

    #[test]
    fn mul_matches_hand_expansion() {
        // (x + y)(x - y) = x^2 - y^2
        let a = BiPoly::from_terms_i64(&[(1, 0, 1), (0, 1, 1)]);
        let b = BiPoly::from_terms_i64(&[(1, 0, 1), (0, 1, -1)]);
        let prod = &a * &b;
        assert_eq!(prod, BiPoly::from_terms_i64(&[(2, 0, 1), (0, 2, -1)]));
    }

    #[test]
    fn evaluation_and_diagonal() {
        // f(x,y) = x^3 y^2 + x^3 y + x^3 - y^3 + 2y^2 - 4y
        let f = BiPoly::from_terms_i64(&[
            (3, 2, 1),
            (3, 1, 1),
            (3, 0, 1),
            (0, 3, -1),
            (0, 2, 2),
            (0, 1, -4),
        ]);
        // f(x, x) = x^5 + x^4 + x^3 - x^3 + 2x^2 - 4x
        assert_eq!(f.diagonal(), IntPoly::from_i64(&[0, -4, 2, 0, 1, 1]));
        // f(1, y) = -y^3 + 3y^2 - 3y + 1 = (1 - y)^3
        assert_eq!(f.eval_x(&BigInt::from(1)), IntPoly::from_i64(&[1, -3, 3, -1]));
        // f(x, 1) = 3x^3 - 3
        assert_eq!(f.eval_y(&BigInt::from(1)), IntPoly::from_i64(&[-3, 0, 0, 3]));
        assert_eq!(
            f.eval_xy(&BigInt::from(2), &BigInt::from(1)),
            BigInt::from(21)
        );
    }

    #[test]
    fn coefficient_collection() {
        let f = BiPoly::from_terms_i64(&[(3, 2, 1), (1, 2, -2), (0, 0, 7)]);
        let by_y = f.coeffs_wrt_y();
        assert_eq!(by_y.len(), 3);
        assert_eq!(by_y[0], IntPoly::from_i64(&[7]));
        assert!(by_y[1].is_zero());
        assert_eq!(by_y[2], IntPoly::from_i64(&[0, -2, 0, 1]));
    }

    #[test]
    fn swap_and_embed() {
        let p = IntPoly::from_i64(&[1, 0, 3]);
        let bx = BiPoly::from_uni_x(&p);
        let by = BiPoly::from_uni_y(&p);
        assert_eq!(bx.swap_vars(), by);
        assert_eq!(bx.deg_x(), Some(2));
        assert_eq!(bx.deg_y(), Some(0));
    }

    #[test]
    fn display_rendering() {
        let f = BiPoly::from_terms_i64(&[(3, 1, 1), (0, 1, -4), (0, 0, 2)]);
        assert_eq!(f.to_string(), "x^3y - 4y + 2");
    }
}
