//! Quadratic Hensel lifting of modular factorizations.
//!
//! Given `f ≡ g·h (mod p)` with `h` monic and `g, h` coprime mod `p`, each
//! lifting step doubles the modulus: from a factorization and Bézout pair
//! mod `m` it produces the same data mod `m²`.  Every irreducible factor
//! of `f` mod `p` is lifted independently against its cofactor; by the
//! uniqueness of Hensel lifting the lifted monic factors multiply back to
//! `f` (times its leading coefficient) modulo the final power `p^(2^k)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::modp::ModPoly;
use crate::poly::IntPoly;

/// A factorization of `f` modulo `p^(2^k)`: `f ≡ lc(f) · ∏ factors`, every
/// factor monic with coefficients reduced into `[0, modulus)`.
#[derive(Debug, Clone)]
pub struct LiftedFactors {
    pub modulus: BigInt,
    pub factors: Vec<IntPoly>,
}

fn reduce(f: &IntPoly, m: &BigInt) -> IntPoly {
    f.reduce_mod(m).expect("modulus ≥ 2")
}

fn mul_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a * b), m)
}

fn sub_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a - b), m)
}

fn add_mod(a: &IntPoly, b: &IntPoly, m: &BigInt) -> IntPoly {
    reduce(&(a + b), m)
}

/// Division with remainder by a *monic* divisor, coefficients mod `m`.
fn divrem_monic_mod(a: &IntPoly, d: &IntPoly, m: &BigInt) -> (IntPoly, IntPoly) {
    let dd = d.degree().expect("monic divisor is nonzero");
    debug_assert!(d.lc().map(|l| l.is_one()).unwrap_or(false));
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() < dd + 1 {
        return (IntPoly::zero(), a.clone());
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (dd..r.len()).rev() {
        let coef = r[k].mod_floor(m);
        if coef.is_zero() {
            r[k] = BigInt::zero();
            continue;
        }
        for (i, dv) in d.coeffs().iter().enumerate() {
            let cell = &r[k - dd + i] - &coef * dv;
            r[k - dd + i] = cell.mod_floor(m);
        }
        q[k - dd] = coef;
    }
    r.truncate(dd);
    (IntPoly::new(q), IntPoly::new(r))
}

/// One quadratic step: factorization and Bézout data mod `m` become the
/// same data mod `m²`.  `h` is monic and stays monic.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &IntPoly,
    g: &IntPoly,
    h: &IntPoly,
    s: &IntPoly,
    t: &IntPoly,
    m: &BigInt,
) -> (IntPoly, IntPoly, IntPoly, IntPoly) {
    let m2 = m * m;
    let e = sub_mod(f, &(g * h), &m2);
    let (q, r) = divrem_monic_mod(&mul_mod(s, &e, &m2), h, &m2);
    let g1 = add_mod(g, &add_mod(&mul_mod(t, &e, &m2), &mul_mod(&q, g, &m2), &m2), &m2);
    let h1 = add_mod(h, &r, &m2);
    let b = sub_mod(
        &add_mod(&mul_mod(s, &g1, &m2), &mul_mod(t, &h1, &m2), &m2),
        &IntPoly::one(),
        &m2,
    );
    let (c, d) = divrem_monic_mod(&mul_mod(s, &b, &m2), &h1, &m2);
    let s1 = sub_mod(s, &d, &m2);
    let t1 = sub_mod(t, &add_mod(&mul_mod(t, &b, &m2), &mul_mod(&c, &g1, &m2), &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift the monic factor `h0` of `f` mod `p` through `steps` quadratic
/// steps; returns the monic lift modulo `p^(2^steps)`.
fn lift_one(f: &IntPoly, h0: &ModPoly, p: u64, steps: u32) -> IntPoly {
    let fp = ModPoly::from_int_poly(f, p);
    let g0 = fp.divrem(h0).0; // cofactor, lc ≡ lc(f) mod p
    let (one, _s_h, s_g) = h0.xgcd(&g0);
    assert_eq!(one.degree(), Some(0), "factor and cofactor must be coprime");
    // Arrange s·g + t·h ≡ 1 with deg s < deg h: xgcd gave s_h·h + s_g·g = 1.
    let s0 = s_g.rem(h0);
    // t = (1 − s·g) / h mod p, exact.
    let num = ModPoly::constant(p, 1).sub(&s0.mul(&g0));
    let (t0, rem) = num.divrem(h0);
    assert!(rem.is_zero(), "Bézout correction must divide exactly");

    let mut m = BigInt::from(p);
    let mut g = g0.to_int_poly();
    let mut h = h0.to_int_poly();
    let mut s = s0.to_int_poly();
    let mut t = t0.to_int_poly();
    for _ in 0..steps {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    h
}

/// Lift every monic irreducible factor of `f` mod `p` until the modulus
/// exceeds `2^target_bits`.
pub fn lift_factors(f: &IntPoly, factors: &[ModPoly], p: u64, target_bits: u64) -> LiftedFactors {
    let mut m = BigInt::from(p);
    let mut steps = 0u32;
    while m.bits() <= target_bits {
        m = &m * &m;
        steps += 1;
    }
    let lifted = factors.iter().map(|h0| lift_one(f, h0, p, steps)).collect();
    LiftedFactors {
        modulus: m,
        factors: lifted,
    }
}

/// Map coefficients into the symmetric range `(−m/2, m/2]`.
pub fn symmetric_mod(f: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    let c = f
        .coeffs()
        .iter()
        .map(|v| {
            let r = v.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    IntPoly::new(c)
}
