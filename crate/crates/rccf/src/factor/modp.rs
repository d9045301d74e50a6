//! Dense polynomial arithmetic and factorization over 𝔽ₚ for odd primes
//! `p < 2³¹`.
//!
//! Coefficients are `u64` reduced into `[0, p)`; products go through
//! `u128`, so no operation can overflow.  Factorization is the classic
//! pipeline: squarefree decomposition (with the `f(x) = g(xᵖ)` descent,
//! where the p-th root of a scalar in 𝔽ₚ is itself), distinct-degree
//! splitting by Frobenius powers, and Cantor–Zassenhaus equal-degree
//! splitting driven by a caller-seeded generator so runs are reproducible.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::poly::IntPoly;

/// A polynomial over 𝔽ₚ, dense, ascending, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct ModPoly {
    p: u64,
    c: Vec<u64>,
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero mod {p}");
    powm(a, p - 2, p)
}

impl ModPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> Self {
        assert!(p >= 3 && p < (1 << 31), "prime out of supported range");
        for v in &mut c {
            *v %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        ModPoly { p, c }
    }

    pub fn zero(p: u64) -> Self {
        Self::new(p, Vec::new())
    }

    pub fn constant(p: u64, v: u64) -> Self {
        Self::new(p, vec![v])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    /// Reduce an integer polynomial mod `p`.
    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|v| v.mod_floor(&pb).to_u64().expect("reduced"))
            .collect();
        Self::new(p, c)
    }

    /// Lift back to ℤ with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().expect("nonzero polynomial")
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last() == Some(&1)
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for v in self.c.iter().rev() {
            acc = addm(mulm(acc, x, self.p), *v, self.p);
        }
        acc
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| addm(self.coeff(i), rhs.coeff(i), self.p))
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.c.len().max(rhs.c.len());
        let c = (0..n)
            .map(|i| subm(self.coeff(i), rhs.coeff(i), self.p))
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return Self::zero(self.p);
        }
        let mut acc = vec![0u128; self.c.len() + rhs.c.len() - 1];
        let pp = self.p as u128;
        // Accumulate in u128 and reduce lazily: p < 2^31, so each product
        // is < 2^62 and ~2^64 of them fit before overflow — reduce per row.
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                let cell = &mut acc[i + j];
                *cell += a as u128 * b as u128;
                if *cell >= 1 << 126 {
                    *cell %= pp;
                }
            }
        }
        let c = acc.into_iter().map(|v| (v % pp) as u64).collect();
        Self::new(self.p, c)
    }

    pub fn scale(&self, k: u64) -> Self {
        let c = self.c.iter().map(|&v| mulm(v, k, self.p)).collect();
        Self::new(self.p, c)
    }

    pub fn make_monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(invm(self.lc(), self.p))
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        debug_assert_eq!(self.p, d.p);
        let dd = d.degree().expect("division by zero polynomial");
        let p = self.p;
        let mut r = self.c.clone();
        if r.len() < dd + 1 {
            return (Self::zero(p), self.clone());
        }
        let inv_lc = invm(d.lc(), p);
        let mut q = vec![0u64; r.len() - dd];
        for k in (dd..r.len()).rev() {
            let coef = mulm(r[k], inv_lc, p);
            if coef == 0 {
                continue;
            }
            q[k - dd] = coef;
            for (i, &dv) in d.c.iter().enumerate() {
                r[k - dd + i] = subm(r[k - dd + i], mulm(coef, dv, p), p);
            }
        }
        r.truncate(dd);
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s·self + t·rhs = g`, `g`
    /// monic (or zero).
    pub fn xgcd(&self, rhs: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), rhs.clone());
        let (mut s0, mut s1) = (Self::constant(p, 1), Self::zero(p));
        let (mut t0, mut t1) = (Self::zero(p), Self::constant(p, 1));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = invm(r0.lc(), p);
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return Self::zero(self.p);
        }
        let c = self.c[1..]
            .iter()
            .enumerate()
            .map(|(i, &v)| mulm(v, (i + 1) as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut acc = Self::constant(self.p, 1);
        let mut base = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
            if i + 1 < e.bits() {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }
}

impl std::fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ModPoly(p={}, {:?})", self.p, self.c)
    }
}

/// Squarefree decomposition of a monic polynomial mod p: pairwise-coprime
/// squarefree `gᵢ` with `f = ∏ gᵢ^(eᵢ)`.
fn squarefree_decomp(f: &ModPoly) -> Vec<(ModPoly, u32)> {
    let p = f.p;
    let mut out: Vec<(ModPoly, u32)> = Vec::new();
    let mut stack = vec![(f.make_monic(), 1u32)];
    while let Some((f, outer)) = stack.pop() {
        let d = f.derivative();
        if d.is_zero() {
            // f = g(x^p); p-th roots of scalars in 𝔽ₚ are the scalars.
            let c: Vec<u64> = f.c.iter().step_by(p as usize).copied().collect();
            stack.push((ModPoly::new(p, c), outer * p as u32));
            continue;
        }
        let mut w = f.gcd(&d); // product of repeated parts (with x^p pieces)
        let mut v = f.divrem(&w).0; // squarefree product of all distinct factors
        let mut mult = 0u32;
        while v.degree() > Some(0) {
            mult += 1;
            let next_v = v.gcd(&w);
            let piece = v.divrem(&next_v).0;
            if piece.degree() > Some(0) {
                out.push((piece.make_monic(), outer * mult));
            }
            w = w.divrem(&next_v).0;
            v = next_v;
        }
        if w.degree() > Some(0) {
            // Residual p-th power part.
            stack.push((w.make_monic(), outer));
        }
    }
    out
}

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// `(product-of-irreducibles, their common degree)` pairs, ascending.
fn distinct_degree(f: &ModPoly) -> Vec<(ModPoly, usize)> {
    let p = f.p;
    let mut fs = f.clone();
    let mut out = Vec::new();
    let x = ModPoly::x(p);
    let mut h = x.rem(&fs);
    let pe = BigUint::from(p);
    let mut d = 0usize;
    while fs.degree().map_or(false, |n| n >= 2 * (d + 1)) {
        d += 1;
        h = h.pow_mod(&pe, &fs);
        let g = h.sub(&x).gcd(&fs);
        if g.degree() > Some(0) {
            out.push((g.clone(), d));
            fs = fs.divrem(&g).0;
            h = h.rem(&fs);
        }
    }
    if fs.degree() > Some(0) {
        let n = fs.degree().expect("nonzero");
        out.push((fs, n));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting: `f` is monic, squarefree, a
/// product of irreducibles all of degree `d`.
fn equal_degree(f: &ModPoly, d: usize, rng: &mut ChaCha12Rng, out: &mut Vec<ModPoly>) {
    let n = f.degree().expect("nonzero");
    if n == d {
        out.push(f.clone());
        return;
    }
    let p = f.p;
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let a = ModPoly::new(
            p,
            (0..n).map(|_| rng.next_u64() % p).collect::<Vec<_>>(),
        );
        if a.degree().map_or(true, |k| k == 0) {
            continue;
        }
        let g0 = a.gcd(f);
        let split = if g0.degree().map_or(false, |k| k > 0 && k < n) {
            Some(g0)
        } else {
            let b = a.pow_mod(&e, f);
            let g = b.sub(&ModPoly::constant(p, 1)).gcd(f);
            if g.degree().map_or(false, |k| k > 0 && k < n) {
                Some(g)
            } else {
                None
            }
        };
        if let Some(g) = split {
            let h = f.divrem(&g).0;
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

/// Full factorization mod p: returns the leading coefficient and the monic
/// irreducible factors with multiplicities, sorted by degree then by
/// coefficient sequence.
pub fn factor_mod_p(f: &IntPoly, p: u64, seed: u64) -> (u64, Vec<(ModPoly, u32)>) {
    let fp = ModPoly::from_int_poly(f, p);
    assert!(!fp.is_zero(), "polynomial vanishes mod {p}");
    let lc = fp.lc();
    if fp.degree() == Some(0) {
        return (lc, Vec::new());
    }
    let mut rng = seeded_rng(seed, p);
    let mut factors: Vec<(ModPoly, u32)> = Vec::new();
    for (part, mult) in squarefree_decomp(&fp) {
        for (prod, d) in distinct_degree(&part) {
            let mut pieces = Vec::new();
            equal_degree(&prod, d, &mut rng, &mut pieces);
            for irr in pieces {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        let da = a.0.degree();
        let db = b.0.degree();
        da.cmp(&db).then_with(|| a.0.c.cmp(&b.0.c))
    });
    (lc, factors)
}

fn seeded_rng(seed: u64, p: u64) -> ChaCha12Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&p.to_le_bytes());
    key[16..24].copy_from_slice(b"rccf-edf");
    ChaCha12Rng::from_seed(key)
}

/// Rabin irreducibility test mod p.
pub fn is_irreducible_mod_p(f: &IntPoly, p: u64) -> bool {
    let fp = ModPoly::from_int_poly(f, p).make_monic();
    let Some(n) = fp.degree() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = ModPoly::x(p);
    let pe = BigUint::from(p);
    // x^(p^k) mod f for k = 1..n via repeated Frobenius.
    let mut frob = vec![x.rem(&fp)];
    for _ in 0..n {
        let next = frob.last().expect("nonempty").pow_mod(&pe, &fp);
        frob.push(next);
    }
    if frob[n] != x.rem(&fp) {
        return false;
    }
    let mut m = n;
    let mut prime_divs = Vec::new();
    let mut q = 2;
    while q * q <= m {
        if m % q == 0 {
            prime_divs.push(q);
            while m % q == 0 {
                m /= q;
            }
        }
        q += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for q in prime_divs {
        let g = frob[n / q].sub(&x).gcd(&fp);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, c: &[u64]) -> ModPoly {
        ModPoly::new(p, c.to_vec())
    }

    #[test]
    fn divrem_identity() {
        let p = 19;
        let a = mp(p, &[3, 1, 4, 1, 5, 9]);
        let b = mp(p, &[2, 7, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_and_xgcd() {
        let p = 31;
        let g = mp(p, &[1, 1]);
        let a = g.mul(&mp(p, &[3, 0, 1]));
        let b = g.mul(&mp(p, &[5, 1]));
        assert_eq!(a.gcd(&b), g);
        let (d, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), d);
        assert_eq!(d, g);
    }

    #[test]
    fn factor_splits_product_of_linears() {
        // (x-1)(x-2)(x-3) mod 7 = x^3 - 6x^2 + 11x - 6
        let f = IntPoly::from_i64(&[-6, 11, -6, 1]);
        let (lc, factors) = factor_mod_p(&f, 7, 1);
        assert_eq!(lc, 1);
        assert_eq!(factors.len(), 3);
        for (g, m) in &factors {
            assert_eq!(*m, 1);
            assert_eq!(g.degree(), Some(1));
        }
        let prod = factors
            .iter()
            .fold(ModPoly::constant(7, 1), |acc, (g, _)| acc.mul(g));
        assert_eq!(prod, ModPoly::from_int_poly(&f, 7));
    }

    #[test]
    fn factor_handles_multiplicities_and_pth_powers() {
        // (x+1)^3 mod 3 = x^3 + 1 has zero derivative.
        let f = IntPoly::from_i64(&[1, 0, 0, 1]);
        let (_, factors) = factor_mod_p(&f, 3, 1);
        assert_eq!(factors.len(), 1);
        assert_eq!(factors[0].0, mp(3, &[1, 1]));
        assert_eq!(factors[0].1, 3);
        // x^2(x^2+1) mod 5: x^2+1 = (x+2)(x+3) mod 5.
        let g = IntPoly::from_i64(&[0, 0, 1, 0, 1]);
        let (_, fs) = factor_mod_p(&g, 5, 1);
        let total: usize = fs
            .iter()
            .map(|(h, m)| h.degree().expect("nonzero") * *m as usize)
            .sum();
        assert_eq!(total, 4);
        assert!(fs.iter().any(|(h, m)| *m == 2 && h == &mp(5, &[0, 1])));
    }

    #[test]
    fn factorization_is_deterministic_for_fixed_seed() {
        let f = IntPoly::from_i64(&[0, -4, 2, 0, 1, 1]);
        let a = factor_mod_p(&f, 19, 42);
        let b = factor_mod_p(&f, 19, 42);
        assert_eq!(a.1.len(), b.1.len());
        for ((g1, m1), (g2, m2)) in a.1.iter().zip(b.1.iter()) {
            assert_eq!(g1, g2);
            assert_eq!(m1, m2);
        }
    }

    #[test]
    fn irreducibility_mod_p() {
        // x^2 + 1 mod 3 is irreducible; mod 5 it splits.
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert!(is_irreducible_mod_p(&f, 3));
        assert!(!is_irreducible_mod_p(&f, 5));
        // x^2 + x + 2 mod 3: disc = 1 - 8 = -7 ≡ 2 mod 3, non-square → irreducible.
        assert!(is_irreducible_mod_p(&IntPoly::from_i64(&[2, 1, 1]), 3));
        let big = IntPoly::from_i64(&[2, 0, 0, 0, 0, 0, 0, 0, 1]);
        // x^8 + 2 mod 3 = (x^8 - 1) = ∏ (x - a) ... certainly reducible.
        assert!(!is_irreducible_mod_p(&big, 3));
    }

    #[test]
    fn frobenius_fixed_field_counts_roots() {
        // Over 𝔽₁₉, x^19 - x vanishes identically, so gcd(x^p - x, f)
        // collects exactly the linear factors.
        let f = IntPoly::from_i64(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let p = 19;
        let fp = ModPoly::from_int_poly(&f, p);
        let x = ModPoly::x(p);
        let xp = x.pow_mod(&BigUint::from(p), &fp);
        let g = xp.sub(&x).gcd(&fp);
        assert_eq!(g.degree(), Some(3));
    }
}
