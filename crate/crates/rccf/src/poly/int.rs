//! Dense univariate polynomials over ℤ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::PolyError;

/// A univariate polynomial with arbitrary-precision integer coefficients.
///
/// Coefficients are stored in ascending degree order (`coeffs[i]` is the
/// coefficient of `x^i`).  The representation is kept normalized: the
/// leading stored coefficient is nonzero, and the zero polynomial is the
/// empty vector, with degree `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending `i64` coefficients.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// A constant polynomial.
    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficient slice (empty for zero).
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Leading coefficient; `None` for the zero polynomial.
    pub fn lc(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(One::is_one)
    }

    /// Horner evaluation at an integer point.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Content: the gcd of the coefficients, non-negative, `0` for the zero
    /// polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part `self / content`.  Keeps the sign of the leading
    /// coefficient; the zero polynomial stays zero.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_normalized(&self) -> IntPoly {
        let p = self.primitive_part();
        match p.lc() {
            Some(l) if l.is_negative() => -&p,
            _ => p,
        }
    }

    /// Multiplies by the scalar `c`.
    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides every coefficient by `c`, which must divide exactly.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Result<IntPoly, PolyError> {
        if c.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(c);
            if !r.is_zero() {
                return Err(PolyError::NonExactDivision(format!(
                    "coefficient {a} is not divisible by {c}"
                )));
            }
            out.push(q);
        }
        Ok(IntPoly { coeffs: out })
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// The multiplicity of the root 0, i.e. the largest `v` with `x^v`
    /// dividing `self` (0 for the zero polynomial).
    pub fn trailing_zero_count(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Divides by `x^k`, which must divide exactly.
    pub fn shift_down(&self, k: usize) -> Result<IntPoly, PolyError> {
        if k == 0 {
            return Ok(self.clone());
        }
        if self.trailing_zero_count() < k {
            return Err(PolyError::NonExactDivision(format!(
                "x^{k} does not divide the polynomial"
            )));
        }
        Ok(IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `self^e` by binary powering.
    pub fn pow(&self, e: usize) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: returns `q` with `self = q·d`, or
    /// [`PolyError::NonExactDivision`] if `d` does not divide `self` in
    /// ℤ[x].
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly, PolyError> {
        if d.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let dn = d.degree().expect("nonzero divisor");
        let n = self.degree().expect("nonzero dividend");
        if n < dn {
            return Err(PolyError::NonExactDivision(format!(
                "degree {n} dividend vs degree {dn} divisor"
            )));
        }
        let dl = d.lc().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dn + 1];
        for k in (0..=n - dn).rev() {
            let (q, r) = rem[k + dn].div_rem(dl);
            if !r.is_zero() {
                return Err(PolyError::NonExactDivision(format!(
                    "leading coefficient {lc} does not divide {c}",
                    lc = dl,
                    c = rem[k + dn]
                )));
            }
            if !q.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    let prod = dc * &q;
                    rem[k + i] -= prod;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NonExactDivision(
                "nonzero remainder".to_string(),
            ));
        }
        Ok(IntPoly::new(quot))
    }

    /// Pseudo-remainder: the unique `R` with
    /// `lc(d)^(deg self − deg d + 1) · self = Q·d + R` and `deg R < deg d`.
    ///
    /// Requires `deg self ≥ deg d ≥ 0`; callers uphold this.
    pub(crate) fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        let dn = d.degree().expect("nonzero divisor");
        let n = self.degree().expect("nonzero dividend");
        debug_assert!(n >= dn);
        let l = d.lc().expect("nonzero divisor").clone();
        let mut r = self.clone();
        // Each step multiplies the remainder by lc(d) and cancels one
        // leading term; `e` tracks how many multiplications by lc(d) are
        // still owed so that the advertised identity holds exactly.
        let mut e = (n - dn + 1) as i64;
        while let Some(rn) = r.degree() {
            if rn < dn {
                break;
            }
            let top = r.lc().expect("nonzero").clone();
            let shifted = d.scale(&top).shift_up(rn - dn);
            r = &r.scale(&l) - &shifted;
            e -= 1;
        }
        let mut mult = BigInt::one();
        for _ in 0..e {
            mult *= &l;
        }
        r.scale(&mult)
    }

    /// Polynomial gcd over ℤ, normalized primitive with positive leading
    /// coefficient (`gcd(0, 0) = 0`).
    ///
    /// Uses a primitive pseudo-remainder sequence; contents are treated
    /// separately so the result is `gcd(cont a, cont b) · gcd(pp a, pp b)`.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_normalized().scale(&other.content()).abs_lc();
        }
        if other.is_zero() {
            return self.primitive_normalized().scale(&self.content()).abs_lc();
        }
        let cont = self.content().gcd(&other.content());
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_normalized().scale(&cont)
    }

    fn abs_lc(self) -> IntPoly {
        match self.lc() {
            Some(l) if l.is_negative() => -&self,
            _ => self,
        }
    }

    /// Reduces every coefficient into `[0, m)`.
    pub fn reduce_mod(&self, m: &BigInt) -> Result<IntPoly, PolyError> {
        if m < &BigInt::from(2) {
            return Err(PolyError::BadModulus(m.to_string()));
        }
        Ok(IntPoly::new(
            self.coeffs.iter().map(|c| c.mod_floor(m)).collect(),
        ))
    }

    /// Substitutes `x ↦ c·x` .
    pub fn scale_arg(&self, c: &BigInt) -> IntPoly {
        let mut p = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &p);
            p *= c;
        }
        IntPoly::new(out)
    }

    /// Composition `self(g(x))` by Horner on polynomials.
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &IntPoly::constant(c.clone());
        }
        acc
    }

    /// Largest absolute value among the coefficients (zero for zero).
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (i, c) in short.coeffs.iter().enumerate() {
            out[i] += c;
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    /// Classic descending-degree rendering, e.g. `x^4 - 4x^3 + 4x^2 + 8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
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
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn normalization_trims_trailing_zeros() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.degree(), Some(1));
        assert_eq!(IntPoly::from_i64(&[0, 0]).degree(), None);
        assert!(IntPoly::from_i64(&[]).is_zero());
    }

    #[test]
    fn arithmetic_basics() {
        let a = p(&[1, 1]); // x + 1
        let b = p(&[-1, 1]); // x - 1
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &b, p(&[2]));
        assert_eq!(-&a, p(&[-1, -1]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
    }

    #[test]
    fn eval_and_derivative() {
        let q = p(&[0, -4, 2, 0, 1, 1]); // x^5 + x^4 + 2x^2 - 4x
        assert_eq!(q.eval(&BigInt::from(1)), BigInt::from(0));
        assert_eq!(q.eval(&BigInt::from(-2)), BigInt::from(0));
        assert_eq!(q.derivative(), p(&[-4, 4, 0, 4, 5]));
        assert_eq!(p(&[7]).derivative(), IntPoly::zero());
    }

    #[test]
    fn content_and_primitive() {
        let q = p(&[-6, 0, 10]);
        assert_eq!(q.content(), BigInt::from(2));
        assert_eq!(q.primitive_part(), p(&[-3, 0, 5]));
        let r = p(&[6, 0, -10]).primitive_normalized();
        assert_eq!(r, p(&[-3, 0, 5]));
        assert_eq!(IntPoly::zero().content(), BigInt::zero());
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = p(&[2, 3, 1]); // (x+1)(x+2)
        let b = p(&[1, 1]);
        assert_eq!(a.div_exact(&b).unwrap(), p(&[2, 1]));
        assert!(matches!(
            p(&[1, 1, 1]).div_exact(&b),
            Err(PolyError::NonExactDivision(_))
        ));
        assert!(matches!(
            a.div_exact(&IntPoly::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn pseudo_rem_identity() {
        // lc(d)^(deg a - deg d + 1) * a = q*d + r must hold for some q.
        let a = p(&[1, 0, 0, 2, 1]);
        let d = p(&[3, 1, 2]);
        let r = a.pseudo_rem(&d);
        // Verify by exact division of (lc^k * a - r) by d.
        let k = a.degree().unwrap() - d.degree().unwrap() + 1;
        let lhs = &a.scale(&d.lc().unwrap().pow(k as u32)) - &r;
        assert!(lhs.div_exact(&d).is_ok());
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn gcd_basics() {
        let a = &p(&[1, 1]) * &p(&[-2, 1]); // (x+1)(x-2)
        let b = &p(&[1, 1]) * &p(&[5, 3]); // (x+1)(3x+5)
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        // Content interacts with polynomial part.
        let a2 = a.scale(&BigInt::from(6));
        let b2 = b.scale(&BigInt::from(10));
        assert_eq!(a2.gcd(&b2), p(&[2, 2]));
        assert_eq!(IntPoly::zero().gcd(&a), a);
        // gcd of coprime equals 1 (up to sign normalization).
        assert_eq!(p(&[1, 1]).gcd(&p(&[-1, 1])), IntPoly::one());
    }

    #[test]
    fn reduce_mod_into_range() {
        let q = p(&[-4, 5, -1]);
        let r = q.reduce_mod(&BigInt::from(3)).unwrap();
        assert_eq!(r, p(&[2, 2, 2]));
        assert!(q.reduce_mod(&BigInt::from(1)).is_err());
    }

    #[test]
    fn compose_and_scale_arg() {
        let q = p(&[1, 0, 1]); // x^2 + 1
        let g = p(&[1, 1]); // x + 1
        assert_eq!(q.compose(&g), p(&[2, 2, 1]));
        assert_eq!(q.scale_arg(&BigInt::from(3)), p(&[1, 0, 9]));
    }

    #[test]
    fn display_rendering() {
        assert_eq!(p(&[8, 0, 4, -4, 1]).to_string(), "x^4 - 4x^3 + 4x^2 + 8");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(p(&[2]).to_string(), "2");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[0, 1, 1]).to_string(), "x^2 + x");
    }

    #[test]
    fn shifts_and_trailing_zeros() {
        let q = p(&[0, 0, 3, 1]);
        assert_eq!(q.trailing_zero_count(), 2);
        assert_eq!(q.shift_down(2).unwrap(), p(&[3, 1]));
        assert!(q.shift_down(3).is_err());
        assert_eq!(p(&[3, 1]).shift_up(2), q);
    }
}
