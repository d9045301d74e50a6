//! Arithmetic in unramified extensions of the 3-adic integers at finite
//! precision, and the lift `T` of the cube map that the cubic dynamics
//! induces on them.
//!
//! A context fixes a residue degree `m` and a precision exponent `k`;
//! elements are polynomials of degree < `m` over `Z / 3^k`, multiplied
//! modulo a fixed monic polynomial that is irreducible mod 3.  On the
//! domain of elements whose residue differs from 1, the degree-3 algebraic
//! function attached to the dynamics has a unique root congruent to `x^3`,
//! and [`t_series`] / [`t_newton`] compute it by two independent routes: a
//! pair of binomial series, and a Newton iteration on the defining
//! equation.  [`lift_factor_roots`] embeds the roots of an integer
//! polynomial into these rings, and [`orbit_period`] measures their exact
//! period under `T`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::factor::{factor_mod_p, is_irreducible_mod_p, ModPoly, DEFAULT_SEED};
use crate::poly::IntPoly;

use super::ThreeAdicError;

/// Largest supported residue degree.  Residue-root scans enumerate all
/// `3^m` residue classes, so the bound keeps them instantaneous.
pub const MAX_RESIDUE_DEGREE: usize = 8;

/// Largest supported precision exponent.
pub const MAX_PRECISION: u32 = 4096;

/// An unramified extension `Z_q` of the 3-adic integers with residue field
/// `F_{3^m}`, truncated at precision `3^k`.
///
/// The defining modulus is the lexicographically least monic polynomial of
/// degree `m` that is irreducible mod 3 (ordered by the coefficient tuple
/// of constant term first), so contexts with equal parameters are
/// interchangeable.  Contexts are immutable and all operations are pure.
#[derive(Debug, Clone)]
pub struct ZqContext {
    m: usize,
    k: u32,
    /// Monic defining modulus, ascending coefficients in {0, 1, 2},
    /// length `m + 1`.
    modulus: Vec<u8>,
    three_k: BigUint,
}

/// Element of a [`ZqContext`]: `m` coefficients, each reduced mod `3^k`.
///
/// Elements carry no back-reference to their context; combining elements
/// from different contexts is a caller error.  Mixing residue degrees is
/// caught by an assertion, and equality is meaningful only within one
/// context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZqElem {
    coeffs: Vec<BigUint>,
}

impl ZqElem {
    /// Coefficients with respect to the power basis of the defining
    /// modulus, ascending, each in `[0, 3^k)`.
    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }
}

/// Lexicographically least monic irreducible of degree `m` over `F_3`,
/// ascending coefficients (length `m + 1`, top coefficient 1).
fn least_irreducible(m: usize) -> Vec<u8> {
    for counter in 0..3u64.pow(m as u32) {
        let mut c = counter;
        let mut coeffs: Vec<i64> = Vec::with_capacity(m + 1);
        for _ in 0..m {
            coeffs.push((c % 3) as i64);
            c /= 3;
        }
        coeffs.push(1);
        if is_irreducible_mod_p(&IntPoly::from_i64(&coeffs), 3) {
            return coeffs.into_iter().map(|v| v as u8).collect();
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_3")
}

impl ZqContext {
    /// Context with residue degree `m` (1 ≤ m ≤ 8) and precision `3^k`
    /// (k ≥ 1).
    pub fn new(m: usize, k: u32) -> Result<Self, ThreeAdicError> {
        if m == 0 || m > MAX_RESIDUE_DEGREE {
            return Err(ThreeAdicError::UnsupportedDegree(m));
        }
        if k == 0 || k > MAX_PRECISION {
            return Err(ThreeAdicError::BadPrecision(k));
        }
        Ok(ZqContext {
            m,
            k,
            modulus: least_irreducible(m),
            three_k: BigUint::from(3u32).pow(k),
        })
    }

    pub fn residue_degree(&self) -> usize {
        self.m
    }

    pub fn precision(&self) -> u32 {
        self.k
    }

    /// The defining modulus as an integer polynomial.
    pub fn modulus(&self) -> IntPoly {
        IntPoly::from_i64(&self.modulus.iter().map(|&v| v as i64).collect::<Vec<_>>())
    }

    fn check(&self, a: &ZqElem) {
        assert_eq!(
            a.coeffs.len(),
            self.m,
            "element belongs to a context of residue degree {}, not {}",
            a.coeffs.len(),
            self.m
        );
    }

    pub fn zero(&self) -> ZqElem {
        ZqElem {
            coeffs: vec![BigUint::zero(); self.m],
        }
    }

    pub fn one(&self) -> ZqElem {
        self.from_i64(1)
    }

    pub fn from_bigint(&self, v: &BigInt) -> ZqElem {
        let mut coeffs = vec![BigUint::zero(); self.m];
        coeffs[0] = v
            .mod_floor(&BigInt::from(self.three_k.clone()))
            .to_biguint()
            .expect("mod_floor of a positive modulus is nonnegative");
        ZqElem { coeffs }
    }

    pub fn from_i64(&self, v: i64) -> ZqElem {
        self.from_bigint(&BigInt::from(v))
    }

    /// Element with the given residue coefficients (entries reduced mod 3).
    pub fn from_residue(&self, residue: &[u8]) -> ZqElem {
        assert_eq!(residue.len(), self.m, "residue vector has wrong length");
        ZqElem {
            coeffs: residue.iter().map(|&v| BigUint::from(v % 3)).collect(),
        }
    }

    fn reduce(&self, v: &BigUint) -> BigUint {
        v % &self.three_k
    }

    pub fn add(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.check(a);
        self.check(b);
        ZqElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.reduce(&(x + y)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.check(a);
        self.check(b);
        ZqElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| self.reduce(&(x + &self.three_k - y)))
                .collect(),
        }
    }

    pub fn neg(&self, a: &ZqElem) -> ZqElem {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &ZqElem, b: &ZqElem) -> ZqElem {
        self.check(a);
        self.check(b);
        let m = self.m;
        let mut prod = vec![BigUint::zero(); 2 * m - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] = self.reduce(&(&prod[i + j] + x * y));
            }
        }
        // Reduce by the monic modulus: replace x^m by minus its tail.
        for d in (m..2 * m - 1).rev() {
            let top = std::mem::take(&mut prod[d]);
            if top.is_zero() {
                continue;
            }
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                if mc == 0 {
                    continue;
                }
                let sub = self.reduce(&(&top * BigUint::from(mc)));
                prod[d - m + i] = self.reduce(&(&prod[d - m + i] + &self.three_k - &sub));
            }
        }
        prod.truncate(m);
        ZqElem { coeffs: prod }
    }

    /// Multiplicative inverse.  Errors with [`ThreeAdicError::NonUnit`] if
    /// the element reduces to 0 in the residue field.
    pub fn inv(&self, a: &ZqElem) -> Result<ZqElem, ThreeAdicError> {
        self.check(a);
        let res = self.residue(a);
        if res.iter().all(|&v| v == 0) {
            return Err(ThreeAdicError::NonUnit);
        }
        // Invert the residue in F_{3^m} via the extended Euclidean
        // algorithm, then lift by Newton doubling: b <- b(2 - ab) squares
        // the precision of the congruence ab = 1 each step.
        let a0 = ModPoly::new(3, res.iter().map(|&v| v as u64).collect());
        let m0 = ModPoly::new(3, self.modulus.iter().map(|&v| v as u64).collect());
        let (g, s, _) = a0.xgcd(&m0);
        debug_assert_eq!(g.degree(), Some(0), "modulus is irreducible mod 3");
        let s = s.rem(&m0);
        let mut inv_res = vec![0u8; self.m];
        for (i, &c) in s.coeffs().iter().enumerate() {
            inv_res[i] = c as u8;
        }
        let mut b = self.from_residue(&inv_res);
        let two = self.from_i64(2);
        let mut settled = 1u32;
        while settled < self.k {
            let ab = self.mul(a, &b);
            b = self.mul(&b, &self.sub(&two, &ab));
            settled *= 2;
        }
        debug_assert_eq!(self.mul(a, &b), self.one());
        Ok(b)
    }

    /// Evaluate an integer polynomial at `x` by Horner's rule.
    pub fn eval_int_poly(&self, p: &IntPoly, x: &ZqElem) -> ZqElem {
        self.check(x);
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.from_bigint(c));
        }
        acc
    }

    /// Image of `a` in the residue field: coefficients mod 3.
    pub fn residue(&self, a: &ZqElem) -> Vec<u8> {
        self.check(a);
        let three = BigUint::from(3u32);
        a.coeffs
            .iter()
            .map(|c| (c % &three).to_u32_digits().first().copied().unwrap_or(0) as u8)
            .collect()
    }

    /// Whether `a` lies in the convergence domain: residue different
    /// from 1.
    pub fn in_domain(&self, a: &ZqElem) -> bool {
        let res = self.residue(a);
        !(res[0] == 1 && res[1..].iter().all(|&v| v == 0))
    }

    /// Uniformly random element of the convergence domain.
    pub fn sample_domain<R: RngCore>(&self, rng: &mut R) -> ZqElem {
        let bytes = (2 * self.k as usize) / 8 + 9;
        let mut buf = vec![0u8; bytes];
        let coeffs = (0..self.m)
            .map(|_| {
                rng.fill_bytes(&mut buf);
                BigUint::from_bytes_le(&buf) % &self.three_k
            })
            .collect();
        let mut x = ZqElem { coeffs };
        if !self.in_domain(&x) {
            x = self.add(&x, &self.one());
        }
        x
    }

    fn domain_check(&self, x: &ZqElem) -> Result<(), ThreeAdicError> {
        if self.in_domain(x) {
            Ok(())
        } else {
            Err(ThreeAdicError::OutsideDomain(
                "residue is 1 mod 3; the algebraic function ramifies there".into(),
            ))
        }
    }
}

/// Residue of a rational number with 3-free denominator, mod `modulus`.
fn rational_mod(r: &BigRational, modulus: &BigUint) -> BigUint {
    let m = BigInt::from(modulus.clone());
    let num = r.numer().mod_floor(&m);
    let den = r.denom().mod_floor(&m);
    debug_assert!(!r.denom().is_multiple_of(&BigInt::from(3)));
    let gcd = den.extended_gcd(&m);
    debug_assert!(gcd.gcd.is_one());
    let inv = gcd.x.mod_floor(&m);
    (num * inv)
        .mod_floor(&m)
        .to_biguint()
        .expect("mod_floor of a positive modulus is nonnegative")
}

/// The algebraic function `T` evaluated by its binomial series.
///
/// For `x` with residue different from 1, `x^3 + 8` is a unit and
///
/// ```text
/// 3 T(x) = (x^3 + 2) + (x^3 + 8) A(x) + (x^3 - 1) B(x),
/// A(x) = sum_n C(1/3, n)  (-9)^n / (x^3 + 8)^n,
/// B(x) = sum_n C(-1/3, n) (-9)^n / (x^3 + 8)^n,
/// ```
///
/// where term `n` of either series has 3-adic valuation at least
/// `ceil(n/2)`, so truncating both sums after `2k + 2` terms and working
/// at precision `3^(k+1)` determines `T(x)` exactly mod `3^k`.
pub fn t_series(ctx: &ZqContext, x: &ZqElem) -> Result<ZqElem, ThreeAdicError> {
    ctx.domain_check(x)?;
    // One guard digit: the final division by 3 costs one power.
    let wide = ZqContext::new(ctx.m, ctx.k + 1)?;
    let xw = ZqElem {
        coeffs: x.coeffs.clone(),
    };
    let cube = wide.mul(&wide.mul(&xw, &xw), &xw);
    let c8 = wide.add(&cube, &wide.from_i64(8));
    let u = wide.inv(&c8).map_err(|_| {
        ThreeAdicError::OutsideDomain("x^3 + 8 is not a unit; series diverges".into())
    })?;

    // Term coefficients a_n = C(1/3, n) (-9)^n and b_n = C(-1/3, n) (-9)^n
    // satisfy a_n / a_{n-1} = 3(3n-4)/n and b_n / b_{n-1} = 3(3n-2)/n;
    // both are 3-adic integers.  Carry them as exact rationals and reduce.
    let terms = (2 * ctx.k + 2) as usize;
    let mut a = BigRational::one();
    let mut b = BigRational::one();
    let mut a_res = Vec::with_capacity(terms + 1);
    let mut b_res = Vec::with_capacity(terms + 1);
    for n in 0..=terms as i64 {
        if n > 0 {
            a *= BigRational::new(BigInt::from(3 * (3 * n - 4)), BigInt::from(n));
            b *= BigRational::new(BigInt::from(3 * (3 * n - 2)), BigInt::from(n));
        }
        a_res.push(wide.from_bigint(&BigInt::from(rational_mod(&a, &wide.three_k))));
        b_res.push(wide.from_bigint(&BigInt::from(rational_mod(&b, &wide.three_k))));
    }
    let horner = |res: &[ZqElem]| {
        let mut acc = wide.zero();
        for c in res.iter().rev() {
            acc = wide.add(&wide.mul(&acc, &u), c);
        }
        acc
    };
    let sum_a = horner(&a_res);
    let sum_b = horner(&b_res);

    let mut bracket = wide.add(&cube, &wide.from_i64(2));
    bracket = wide.add(&bracket, &wide.mul(&c8, &sum_a));
    let c1 = wide.sub(&cube, &wide.one());
    bracket = wide.add(&bracket, &wide.mul(&c1, &sum_b));

    // 3 T(x) is what we computed; each coefficient must be divisible by 3.
    let three = BigUint::from(3u32);
    let mut coeffs = Vec::with_capacity(ctx.m);
    for c in &bracket.coeffs {
        let (q, r) = c.div_rem(&three);
        if !r.is_zero() {
            return Err(ThreeAdicError::OutsideDomain(
                "series sum is not divisible by 3".into(),
            ));
        }
        coeffs.push(q % &ctx.three_k);
    }
    Ok(ZqElem { coeffs })
}

/// The algebraic function `T` evaluated by Newton iteration on its
/// defining equation.
///
/// `T(x)` is the unique root congruent to `x^3` mod 3 of
/// `f(y) = -y^3 + (x^3+2) y^2 + (x^3-4) y + x^3`; the derivative there is
/// congruent to `2 (x^3 - 1)^2`, a unit exactly on the domain, so the
/// iteration from `y = x^3` converges quadratically.
pub fn t_newton(ctx: &ZqContext, x: &ZqElem) -> Result<ZqElem, ThreeAdicError> {
    ctx.domain_check(x)?;
    let cube = ctx.mul(&ctx.mul(x, x), x);
    let a2 = ctx.add(&cube, &ctx.from_i64(2));
    let a1 = ctx.sub(&cube, &ctx.from_i64(4));
    let a0 = cube.clone();
    let two = ctx.from_i64(2);
    let three = ctx.from_i64(3);

    let f = |y: &ZqElem| {
        let mut t = ctx.sub(&a2, y);
        t = ctx.add(&ctx.mul(&t, y), &a1);
        ctx.add(&ctx.mul(&t, y), &a0)
    };
    let fprime = |y: &ZqElem| {
        let t = ctx.sub(&ctx.mul(&two, &a2), &ctx.mul(&three, y));
        ctx.add(&ctx.mul(&t, y), &a1)
    };

    let mut y = cube.clone();
    for _ in 0..(ctx.k + 8) {
        let step = ctx.mul(&f(&y), &ctx.inv(&fprime(&y))?);
        let next = ctx.sub(&y, &step);
        if next == y {
            debug_assert!(f(&y) == ctx.zero());
            return Ok(y);
        }
        y = next;
    }
    Err(ThreeAdicError::OutsideDomain(
        "Newton iteration failed to converge".into(),
    ))
}

/// Least `n` in `1..=max_period` with `T^n(x) = x` at the context's
/// precision.
///
/// Distinct points of one orbit have distinct residues (the residue
/// dynamics is the cube map, a bijection of the residue field), so the
/// first return is detected exactly even at precision 1.
pub fn orbit_period(
    ctx: &ZqContext,
    x: &ZqElem,
    max_period: usize,
) -> Result<usize, ThreeAdicError> {
    let mut y = t_newton(ctx, x)?;
    for n in 1..=max_period {
        if y == *x {
            return Ok(n);
        }
        y = t_newton(ctx, &y)?;
    }
    Err(ThreeAdicError::NoPeriodFound(max_period))
}

/// Multiplication in `F_{3^m}` on raw coefficient vectors (used by the
/// residue-root scan).
fn fq_mul(a: &[u8], b: &[u8], modulus: &[u8]) -> Vec<u8> {
    let m = modulus.len() - 1;
    let mut prod = vec![0u16; 2 * m - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u16 * y as u16) % 3;
        }
    }
    for d in (m..2 * m - 1).rev() {
        let top = prod[d];
        prod[d] = 0;
        if top == 0 {
            continue;
        }
        for (i, &mc) in modulus[..m].iter().enumerate() {
            prod[d - m + i] = (prod[d - m + i] + 3 - (top * mc as u16) % 3) % 3;
        }
    }
    prod.truncate(m);
    prod.into_iter().map(|v| v as u8).collect()
}

/// First root of `g` (a polynomial over `F_3`, ascending coefficients) in
/// `F_{3^m}`, scanning residue vectors in counter order.
fn residue_root(g: &[u64], modulus: &[u8]) -> Option<Vec<u8>> {
    let m = modulus.len() - 1;
    for counter in 0..3u64.pow(m as u32) {
        let mut c = counter;
        let mut cand = vec![0u8; m];
        for slot in cand.iter_mut() {
            *slot = (c % 3) as u8;
            c /= 3;
        }
        let mut acc = vec![0u8; m];
        for &coeff in g.iter().rev() {
            acc = fq_mul(&acc, &cand, modulus);
            acc[0] = (acc[0] + coeff as u8) % 3;
        }
        if acc.iter().all(|&v| v == 0) {
            return Some(cand);
        }
    }
    None
}

/// Lift the root of `q` marked by the residue factor `g` (simple and
/// irreducible mod 3, not `x - 1`) into `Z_q / 3^k`.
fn lift_root(q: &IntPoly, g: &ModPoly, k: u32) -> Result<(ZqContext, ZqElem), ThreeAdicError> {
    let m = g.degree().expect("residue factors are nonconstant");
    let ctx = ZqContext::new(m, k)?;
    let res = residue_root(g.coeffs(), &ctx.modulus)
        .ok_or(ThreeAdicError::NoResidueRoot(m))?;
    let mut y = ctx.from_residue(&res);
    // Newton on q itself: the root is simple mod 3, so q'(y) is a unit.
    let dq = q.derivative();
    for _ in 0..(k + 8) {
        let step = ctx.mul(
            &ctx.eval_int_poly(q, &y),
            &ctx.inv(&ctx.eval_int_poly(&dq, &y))?,
        );
        let next = ctx.sub(&y, &step);
        if next == y {
            debug_assert!(ctx.eval_int_poly(q, &y) == ctx.zero());
            return Ok((ctx, y));
        }
        y = next;
    }
    Err(ThreeAdicError::OutsideDomain(
        "root lift failed to converge".into(),
    ))
}

/// Roots of `q` in unramified extensions of the 3-adic integers at
/// precision `3^k`, one per irreducible factor of `q` mod 3 other than
/// `x - 1`.
///
/// Roots whose residue is 1 belong to the ramified part of the dynamics
/// and are skipped (mod 3 they all collapse into powers of `x - 1`).  The
/// remaining factors must be simple mod 3; a repeated one reports
/// [`ThreeAdicError::RamifiedResidue`].  Each returned root generates the
/// unramified extension of degree equal to its factor's.
pub fn lift_factor_roots(
    q: &IntPoly,
    k: u32,
) -> Result<Vec<(ZqContext, ZqElem)>, ThreeAdicError> {
    let (_, factors) = factor_mod_p(q, 3, DEFAULT_SEED);
    let mut out = Vec::new();
    for (g, mult) in &factors {
        if g.coeffs() == [2, 1] {
            continue;
        }
        if *mult > 1 {
            return Err(ThreeAdicError::RamifiedResidue(
                g.degree().unwrap_or(0),
                *mult,
            ));
        }
        out.push(lift_root(q, g, k)?);
    }
    Ok(out)
}

/// Lift one root of `q` (the first non-unit-root residue factor), if any.
pub(crate) fn lift_first_root(
    q: &IntPoly,
    k: u32,
) -> Result<Option<(ZqContext, ZqElem)>, ThreeAdicError> {
    let (_, factors) = factor_mod_p(q, 3, DEFAULT_SEED);
    for (g, mult) in &factors {
        if g.coeffs() == [2, 1] {
            continue;
        }
        if *mult > 1 {
            return Err(ThreeAdicError::RamifiedResidue(
                g.degree().unwrap_or(0),
                *mult,
            ));
        }
        return Ok(Some(lift_root(q, g, k)?));
    }
    Ok(None)
}
