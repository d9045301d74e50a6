//! Factorization of squarefree primitive integer polynomials.
//!
//! The classic round trip: factor mod several small primes where the
//! polynomial stays squarefree, keep the prime with the fewest modular
//! factors, Hensel-lift to a modulus beyond the Landau–Mignotte
//! coefficient bound, then search subsets of the lifted factors in order
//! of increasing degree.  Degree sums attainable mod every sampled prime
//! prune the subset search, and cheap divisibility tests on the values at
//! 0 and 1 reject almost all false candidates before any full product is
//! formed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hensel::{lift_factors, symmetric_mod};
use super::modp::{factor_mod_p, ModPoly};
use crate::poly::IntPoly;

/// Primes tried as reduction candidates, smallest first.
const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
    193, 197, 199,
];

/// How many squarefree primes to compare before committing to the one
/// with the fewest modular factors.
const PRIME_CANDIDATES: usize = 4;

fn next_prime_after(n: u64) -> u64 {
    let mut k = n + 2;
    loop {
        if (3..).take_while(|d| d * d <= k).step_by(2).all(|d| k % d != 0) && k % 2 != 0 {
            return k;
        }
        k += 2;
    }
}

/// Subset-sum reachability of factor degrees, as a boolean table indexed
/// by degree.
fn degree_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for t in (d..=n).rev() {
            if reach[t - d] {
                reach[t] = true;
            }
        }
    }
    reach
}

/// `⌈√(Σ cᵢ²)⌉`-flavored bound: returns the bit length needed for the
/// lifting modulus so that any candidate factor's coefficients fit the
/// symmetric range.
fn mignotte_target_bits(f: &IntPoly) -> u64 {
    let norm2: BigInt = f.coeffs().iter().map(|c| c * c).sum();
    let norm: BigInt = norm2.sqrt() + 1;
    let n = f.degree().expect("nonzero") as u64;
    let lc = f.lc().expect("nonzero").abs();
    // bound = 2 · 2^n · ‖f‖₂ · |lc|; keep a couple of guard bits.
    (norm.bits() + lc.bits() + n + 3) as u64
}

struct Search {
    modulus: BigInt,
    lifted: Vec<IntPoly>,
    degs: Vec<usize>,
    /// value of each lifted factor at 0 and 1, mod the modulus
    at0: Vec<BigInt>,
    at1: Vec<BigInt>,
}

impl Search {
    fn remove(&mut self, chosen: &[usize]) {
        for &i in chosen.iter().rev() {
            self.lifted.remove(i);
            self.degs.remove(i);
            self.at0.remove(i);
            self.at1.remove(i);
        }
    }
}

/// Factor a squarefree primitive polynomial with positive leading
/// coefficient (and nonzero constant term) into primitive irreducibles.
pub(super) fn factor_squarefree_primitive(f: &IntPoly, seed: u64) -> Vec<IntPoly> {
    let n = f.degree().expect("nonzero polynomial");
    debug_assert!(!f.coeff(0).is_zero(), "strip x-powers first");
    if n == 1 {
        return vec![f.clone()];
    }

    // Sample primes where f stays squarefree.
    let mut candidates: Vec<(u64, Vec<ModPoly>)> = Vec::new();
    let mut p = 0u64;
    while candidates.len() < PRIME_CANDIDATES {
        p = match PRIMES.iter().find(|&&q| q > p) {
            Some(&q) => q,
            None => next_prime_after(p),
        };
        if f.lc().expect("nonzero").mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = ModPoly::from_int_poly(f, p);
        if fp.gcd(&fp.derivative()).degree() != Some(0) {
            continue;
        }
        let (_, factors) = factor_mod_p(f, p, seed);
        candidates.push((p, factors.into_iter().map(|(g, _)| g).collect()));
        if candidates.last().expect("just pushed").1.len() == 1 {
            return vec![f.clone()]; // irreducible mod p ⇒ irreducible over ℤ
        }
    }

    // Degrees attainable as factor degrees must be attainable mod every
    // sampled prime.
    let mut allowed = vec![true; n + 1];
    for (_, mods) in &candidates {
        let degs: Vec<usize> = mods.iter().map(|g| g.degree().expect("nonzero")).collect();
        let reach = degree_sums(&degs, n);
        for (a, r) in allowed.iter_mut().zip(reach) {
            *a &= r;
        }
    }

    let (best_p, best_mods) = candidates
        .into_iter()
        .min_by_key(|(p, mods)| (mods.len(), *p))
        .expect("at least one candidate");

    let target_bits = mignotte_target_bits(f);
    let lifted = lift_factors(f, &best_mods, best_p, target_bits);
    let degs: Vec<usize> = lifted
        .factors
        .iter()
        .map(|g| g.degree().expect("nonzero"))
        .collect();
    let at0 = lifted.factors.iter().map(|g| g.coeff(0)).collect();
    let at1 = lifted
        .factors
        .iter()
        .map(|g| g.eval(&BigInt::one()).mod_floor(&lifted.modulus))
        .collect();
    let mut search = Search {
        modulus: lifted.modulus,
        lifted: lifted.factors,
        degs,
        at0,
        at1,
    };

    let mut out = Vec::new();
    let mut f_cur = f.clone();
    let mut d = 1;
    'outer: while 2 * d <= f_cur.degree().expect("nonzero") {
        if allowed[d] {
            let mut chosen = Vec::new();
            if let Some(h) = try_degree(&search, &f_cur, d, 0, &mut chosen) {
                search.remove(&chosen);
                f_cur = f_cur.div_exact(&h).expect("verified divisor");
                out.push(h);
                continue 'outer; // same degree may appear again
            }
        }
        d += 1;
    }
    if f_cur.degree().map_or(false, |k| k >= 1) {
        out.push(f_cur);
    }
    out
}

/// Depth-first search for a subset of the lifted factors whose degrees
/// sum to `d` and whose product descends to a true divisor of `f`.
fn try_degree(
    s: &Search,
    f: &IntPoly,
    d: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<IntPoly> {
    if d == 0 {
        return check_candidate(s, f, chosen);
    }
    let suffix: usize = s.degs[start..].iter().sum();
    if suffix < d {
        return None;
    }
    for i in start..s.lifted.len() {
        if s.degs[i] > d {
            continue;
        }
        chosen.push(i);
        if let Some(h) = try_degree(s, f, d - s.degs[i], i + 1, chosen) {
            return Some(h);
        }
        chosen.pop();
    }
    None
}

fn check_candidate(s: &Search, f: &IntPoly, chosen: &[usize]) -> Option<IntPoly> {
    let lc = f.lc().expect("nonzero");
    let m = &s.modulus;
    // Trailing-coefficient test: the candidate's constant term divides
    // lc·f(0) over ℤ.
    let mut t0 = lc.mod_floor(m);
    for &i in chosen {
        t0 = (&t0 * &s.at0[i]).mod_floor(m);
    }
    let t0 = sym(&t0, m);
    let l_f0 = lc * &f.coeff(0);
    if t0.is_zero() || !l_f0.mod_floor(&t0.abs()).is_zero() {
        return None;
    }
    // Same test at x = 1 when informative.
    let f1 = f.eval(&BigInt::one());
    if !f1.is_zero() {
        let mut t1 = lc.mod_floor(m);
        for &i in chosen {
            t1 = (&t1 * &s.at1[i]).mod_floor(m);
        }
        let t1 = sym(&t1, m);
        let l_f1 = lc * &f1;
        if t1.is_zero() || !l_f1.mod_floor(&t1.abs()).is_zero() {
            return None;
        }
    }
    // Full product, symmetric lift, primitive part, exact division test.
    let mut prod = IntPoly::constant(lc.clone());
    for &i in chosen {
        prod = (&prod * &s.lifted[i]).reduce_mod(m).expect("modulus ≥ 2");
    }
    let h = symmetric_mod(&prod, m).primitive_normalized();
    match f.div_exact(&h) {
        Ok(_) => Some(h),
        Err(_) => None,
    }
}

fn sym(v: &BigInt, m: &BigInt) -> BigInt {
    let half = m >> 1;
    if v > &half {
        v - m
    } else {
        v.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn factor_sorted(f: &IntPoly) -> Vec<IntPoly> {
        let mut v = factor_squarefree_primitive(f, 0xbeef);
        v.sort_by(crate::factor::canonical_order);
        v
    }

    #[test]
    fn splits_two_quadratics() {
        let f = &p(&[1, 0, 1]) * &p(&[2, 0, 1]);
        let fs = factor_sorted(&f);
        assert_eq!(fs, vec![p(&[1, 0, 1]), p(&[2, 0, 1])]);
    }

    #[test]
    fn keeps_swinnerton_dyer_style_whole() {
        // x⁴ + 1 splits mod every prime but is irreducible over ℤ.
        let f = p(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_sorted(&f), vec![f]);
    }

    #[test]
    fn factors_fixed_point_quartic() {
        // x⁴ + x³ + 2x − 4 = (x − 1)(x + 2)(x² + 2)
        let f = p(&[-4, 2, 0, 1, 1]);
        let fs = factor_sorted(&f);
        assert_eq!(fs, vec![p(&[-1, 1]), p(&[2, 1]), p(&[2, 0, 1])]);
    }

    #[test]
    fn handles_nonmonic_content_free() {
        // (2x + 1)(3x² + x + 1)
        let f = &p(&[1, 2]) * &p(&[1, 1, 3]);
        let fs = factor_sorted(&f);
        assert_eq!(fs, vec![p(&[1, 2]), p(&[1, 1, 3])]);
    }

    #[test]
    fn linear_times_large_irreducible() {
        // (x − 3)(x⁴ − x − 1); the quartic is irreducible.
        let f = &p(&[-3, 1]) * &p(&[-1, -1, 0, 0, 1]);
        let fs = factor_sorted(&f);
        assert_eq!(fs, vec![p(&[-3, 1]), p(&[-1, -1, 0, 0, 1])]);
    }

    #[test]
    fn degree_sum_table() {
        let reach = degree_sums(&[2, 3], 5);
        assert_eq!(reach, vec![true, false, true, true, false, true]);
    }
}
