//! Pinning down the quadratic order attached to a periodic-point factor.
//!
//! Every irreducible factor `q` of a periodic-point polynomial generates
//! the ring class field of a unique imaginary quadratic order of
//! discriminant `-d`.  [`determine_d`] recovers that `d` from `q` alone,
//! recording the fate of every candidate it examines.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::factor::{factor_mod_p, factor_over_z_seeded, ModPoly};
use crate::poly::resultant::{discriminant, resultant_bi_shared, Var};
use crate::poly::{BiPoly, IntPoly};

use super::arith::{class_number, factor_below_bound, is_prime_u64, kronecker};
use super::ClassFieldError;

/// Congruence class of `-d` modulo 8, read off from the factor count of the
/// reconstructed polynomial `C(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiscClass {
    /// `-d = 1 (mod 8)`: `C` splits into three factors of degree `2h`.
    OneMod8,
    /// `4 | d`: `C` splits into two factors, of degrees `2h` and `4h`.
    DivisibleByFour,
    /// `-d = 5 (mod 8)`: `C` is irreducible of degree `6h`.
    FiveMod8,
}

/// Why a candidate discriminant was eliminated — or that it survived.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fate {
    /// Passed every screen.
    Survived,
    /// `-d` is not `0` or `1` mod 4, so it is not a discriminant at all.
    NotDiscriminant,
    /// Fails `d = 2 (mod 3)`.
    WrongResidueMod3,
    /// Fails the congruence class modulo 8 required by [`DiscClass`].
    WrongResidueMod8,
    /// The class number `h(-d)` does not match the factor degree.
    ClassNumber { got: u64 },
    /// A prime `l` dividing one of the relevant discriminants but not `d`
    /// has `(-d | l) != -1`, impossible for ramified primes of the ring
    /// class field.
    SymbolObstruction { l: u64 },
    /// A prime represented by the principal form of discriminant `-d`
    /// failed to split the factor completely.
    SplitFailure { l: u64 },
}

/// One examined candidate and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub value: u64,
    pub fate: Fate,
}

/// Full audit trail of a discriminant determination.
#[derive(Debug, Clone)]
pub struct DiscriminantSearch {
    /// Monic minimal polynomial of the push-forward values `(b^3 + 2)/b`.
    pub p: IntPoly,
    /// Class number forced by `deg p = 2h`.
    pub h: u64,
    /// Congruence class of `-d` from the factor count of `C(x)`.
    pub shape: DiscClass,
    /// Irreducible factors of the reconstruction `C(x)`, each of
    /// multiplicity one; the input factor is among them.
    pub c_factors: Vec<IntPoly>,
    /// Odd primes of `disc q` that could not be ruled out locally.
    pub s_primes: Vec<u64>,
    /// Every candidate examined, in increasing order.
    pub candidates: Vec<Candidate>,
    /// The unique surviving discriminant (as positive `d`).
    pub d: u64,
}

/// Tunable limits for [`determine_d`].
#[derive(Debug, Clone)]
pub struct DetermineOpts {
    /// Largest candidate `d` that will be generated.
    pub d_max: u64,
    /// Number of principal-form primes used in the splitting screen.
    pub split_primes: usize,
    /// Seed for the randomized factorization steps.
    pub seed: u64,
}

impl Default for DetermineOpts {
    fn default() -> Self {
        DetermineOpts {
            d_max: 5_000_000,
            split_primes: 5,
            seed: crate::factor::DEFAULT_SEED,
        }
    }
}

/// Monic minimal polynomial of the values `(b^3 + 2)/b` over the roots `b`
/// of `q`.
///
/// Computed as the resultant `Res_y(x*y - y^3 - 2, q(y))`, normalized to be
/// monic and squarefree.  When distinct roots of `q` share an image the raw
/// resultant is a perfect power of the minimal polynomial; taking the
/// squarefree part removes the multiplicity.
pub fn recover_p_from_q(q: &IntPoly) -> Result<IntPoly, ClassFieldError> {
    if q.coeff(0).is_zero() {
        return Err(ClassFieldError::ZeroConstantTerm);
    }
    let deg = q.degree().ok_or(ClassFieldError::ZeroConstantTerm)?;
    if deg == 0 {
        return Err(ClassFieldError::NotAPeriodicFactor(
            "constant polynomial".into(),
        ));
    }
    let curve = BiPoly::from_terms_i64(&[(1, 1, 1), (0, 3, -1), (0, 0, -2)]);
    let q_in_y = BiPoly::from_uni_y(q);
    let raw = resultant_bi_shared(&curve, &q_in_y, Var::Y)?;
    let primitive = raw.primitive_normalized();
    // Squarefree part: primitive / gcd(primitive, primitive').
    let gcd = primitive.gcd(&primitive.derivative());
    let squarefree = primitive.div_exact(&gcd)?;
    if !squarefree.is_monic() {
        return Err(ClassFieldError::BadPushForward);
    }
    Ok(squarefree)
}

/// Reconstruct `C(x) = x^deg(p) * p((x^3 + 2)/x)`, the polynomial whose
/// roots are the full preimage of the roots of `p` under `b -> (b^3+2)/b`.
pub fn build_cd(p: &IntPoly) -> IntPoly {
    let delta = match p.degree() {
        Some(d) => d,
        None => return IntPoly::zero(),
    };
    let cubic = IntPoly::from_i64(&[2, 0, 0, 1]); // x^3 + 2
    let mut acc = IntPoly::constant(p.coeff(delta));
    for i in (0..delta).rev() {
        acc = &(&acc * &cubic) + &IntPoly::monomial(p.coeff(i), delta - i);
    }
    acc
}

/// Expected degrees of the irreducible factors of `C_d(x)`, from the
/// splitting behaviour of 2 in the order of discriminant `-d`.
pub fn factor_shape(d: u64) -> Result<Vec<u64>, ClassFieldError> {
    let h = class_number(d)?;
    Ok(match kronecker(-(d as i64), 2) {
        1 => vec![2 * h, 2 * h, 2 * h],
        0 => vec![2 * h, 4 * h],
        _ => vec![6 * h],
    })
}

/// Odd primes `l >= 5` dividing `disc q` such that `q mod l` has **no**
/// irreducible factor of multiplicity one.  Primes with such a factor are
/// unramified in the splitting field and cannot divide `d`; 3 never divides
/// `d` because `d = 2 (mod 3)`.
fn surviving_odd_primes(q: &IntPoly, disc_primes: &[(u64, u32)], seed: u64) -> Vec<u64> {
    let mut s = Vec::new();
    for &(l, _) in disc_primes {
        if l < 5 {
            continue;
        }
        let (_, factors) = factor_mod_p(q, l, seed);
        let has_simple_factor = factors.iter().any(|(_, m)| *m == 1);
        if !has_simple_factor {
            s.push(l);
        }
    }
    s
}

/// All products of the given prime powers (exponents bounded per prime)
/// times one of the allowed two-parts, capped at `d_max`, sorted ascending.
fn candidate_values(two_parts: &[u64], odd_primes: &[(u64, u32)], d_max: u64) -> Vec<u64> {
    let mut odd_parts = vec![1u64];
    for &(p, e_max) in odd_primes {
        let mut next = Vec::new();
        for &base in &odd_parts {
            let mut v = base;
            next.push(v);
            for _ in 0..e_max {
                match v.checked_mul(p) {
                    Some(w) if w <= d_max => {
                        v = w;
                        next.push(v);
                    }
                    _ => break,
                }
            }
        }
        odd_parts = next;
    }
    let mut out = Vec::new();
    for &t in two_parts {
        for &o in &odd_parts {
            match t.checked_mul(o) {
                Some(v) if v <= d_max => out.push(v),
                _ => {}
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// First `count` odd primes represented by the principal binary quadratic
/// form of discriminant `-d`, skipping primes dividing `skip_disc`.
fn principal_form_primes(
    d: u64,
    count: usize,
    skip_disc: &BigInt,
) -> Result<Vec<u64>, ClassFieldError> {
    let mut found: Vec<u64> = Vec::new();
    let mut limit = 50 * d + 1000;
    loop {
        let mut values: Vec<u64> = Vec::new();
        if d % 4 == 0 {
            // Principal form x^2 + (d/4) y^2.
            let c = d / 4;
            let mut y = 1u64;
            while c * y * y <= limit {
                let mut x = 1u64;
                while x * x + c * y * y <= limit {
                    values.push(x * x + c * y * y);
                    x += 1;
                }
                y += 1;
            }
        } else {
            // Principal form x^2 + x y + ((1 + d)/4) y^2, d = 3 (mod 4).
            // For fixed y the form is (x + y/2)^2 + d y^2 / 4, so x runs
            // over an interval of width ~ 2 sqrt(limit) around -y/2.
            let c = (1 + d) as i64 / 4;
            let lim = limit as i64;
            let mut y = 1i64;
            while c * y * y - y * y / 4 <= lim {
                let reach = lim - c * y * y + y * y / 4;
                let half = (reach.max(0) as f64).sqrt() as i64 + 2;
                for x in (-y / 2 - half)..=(-y / 2 + half) {
                    let v = x * x + x * y + c * y * y;
                    if v > 0 && v <= lim {
                        values.push(v as u64);
                    }
                }
                y += 1;
            }
        }
        values.sort_unstable();
        values.dedup();
        for v in values {
            if v < 3 || v % 2 == 0 || v >= (1 << 31) {
                continue;
            }
            if !is_prime_u64(v) {
                continue;
            }
            if (skip_disc % BigInt::from(v)).is_zero() {
                continue;
            }
            if !found.contains(&v) {
                found.push(v);
                if found.len() == count {
                    return Ok(found);
                }
            }
        }
        limit = limit.saturating_mul(4);
        if limit > 1 << 40 {
            return Err(ClassFieldError::SplitPrimesExhausted);
        }
    }
}

/// Does `q` split into distinct linear factors modulo `l`?  Tested as
/// `x^l = x (mod q, l)`, which holds iff every root of `q mod l` lies in
/// the prime field and none repeat.
fn splits_completely(q: &IntPoly, l: u64) -> bool {
    let qm = ModPoly::from_int_poly(q, l);
    let x = ModPoly::x(l);
    let power = x.pow_mod(&BigUint::from(l), &qm);
    power == x.rem(&qm)
}

/// Determine the discriminant `-d` whose ring class field the irreducible
/// periodic-point factor `q` generates.
///
/// The search proceeds in five screens, each recorded in the returned
/// audit trail:
///
/// 1. push `q` forward to the monic minimal polynomial `p` of `(b^3+2)/b`,
///    whose degree fixes the class number `h = deg(p)/2`;
/// 2. factor the reconstruction `C(x)`; the factor count fixes the
///    congruence class of `-d` mod 8 (and is cross-checked to contain `q`);
/// 3. strike odd primes of `disc q` that are visibly unramified (an
///    irreducible factor of multiplicity one mod `l`), leaving the
///    candidate prime set `S`;
/// 4. enumerate products of `S`-primes and the allowed two-part, screening
///    by congruences mod 3 and 8, by class number, and by the quadratic
///    symbol obstruction at primes of `disc q` and `disc p` prime to the
///    candidate;
/// 5. require the push-forward `p` to split completely at primes
///    represented by the principal form of the surviving candidate.  The
///    roots of `p` generate the ring class field itself (the roots of `q`
///    may generate a proper extension of it when several of them share a
///    push-forward value), and primes represented by the principal form
///    split completely in that field.
///
/// Exactly one candidate must survive; anything else is an error.
pub fn determine_d(q: &IntPoly, opts: &DetermineOpts) -> Result<DiscriminantSearch, ClassFieldError> {
    let deg_q = match q.degree() {
        Some(d) if d >= 1 => d as u64,
        _ => {
            return Err(ClassFieldError::NotAPeriodicFactor(
                "constant polynomial".into(),
            ))
        }
    };
    if !q.is_monic() {
        return Err(ClassFieldError::NotMonic);
    }

    // Screen 1: push-forward minimal polynomial and class number.
    let p = recover_p_from_q(q)?;
    let deg_p = p.degree().expect("push-forward is nonconstant") as u64;
    // Each push-forward value is shared by 1, 2, or 3 roots of q, so deg q
    // is deg p times that multiplicity.
    if deg_p % 2 != 0 || deg_p == 0 || deg_q % deg_p != 0 || !(1..=3).contains(&(deg_q / deg_p)) {
        return Err(ClassFieldError::NotAPeriodicFactor(format!(
            "push-forward degree {deg_p} incompatible with factor degree {deg_q}"
        )));
    }
    let h = deg_p / 2;

    // Screen 2: factor count of C(x) fixes the congruence class of -d.
    let c_poly = build_cd(&p);
    let c_factors = factor_over_z_seeded(&c_poly, opts.seed)?;
    if !c_factors.factors.iter().any(|(f, _)| f == q) {
        return Err(ClassFieldError::NotAPeriodicFactor(
            "factor does not divide its own reconstruction".into(),
        ));
    }
    let shape = match c_factors.factors.len() {
        3 => DiscClass::OneMod8,
        2 => DiscClass::DivisibleByFour,
        1 => DiscClass::FiveMod8,
        n => {
            return Err(ClassFieldError::NotAPeriodicFactor(format!(
                "reconstruction has {n} irreducible factors"
            )))
        }
    };
    let c_factors: Vec<IntPoly> = c_factors.factors.into_iter().map(|(f, _)| f).collect();

    // Screen 3: factor disc(q) completely and strike unramified primes.
    let disc_q = discriminant(q)?;
    let (disc_q_primes, leftover) = factor_below_bound(&disc_q);
    if !leftover.is_one() {
        return Err(ClassFieldError::IncompleteFactorization(leftover));
    }
    let s_primes = surviving_odd_primes(q, &disc_q_primes, opts.seed);

    // Symbol-obstruction primes: odd primes >= 5 of disc q and disc p.  For
    // disc p a partial factorization still yields valid tests, so the
    // unfactored cofactor is ignored there.
    let disc_p = discriminant(&p)?;
    let (disc_p_primes, _) = factor_below_bound(&disc_p);
    let mut obstruction_primes: Vec<u64> = disc_q_primes
        .iter()
        .chain(disc_p_primes.iter())
        .map(|&(l, _)| l)
        .filter(|&l| l >= 5)
        .collect();
    obstruction_primes.sort_unstable();
    obstruction_primes.dedup();

    // Screen 4: enumerate candidates and apply the local screens.
    let two_parts: Vec<u64> = match shape {
        DiscClass::DivisibleByFour => {
            let mut v = Vec::new();
            let mut t = 4u64;
            while t <= opts.d_max {
                v.push(t);
                t *= 2;
            }
            v
        }
        _ => vec![1],
    };
    let caps: Vec<(u64, u32)> = disc_q_primes
        .iter()
        .filter(|&&(l, _)| s_primes.contains(&l))
        .copied()
        .collect();
    let values = candidate_values(&two_parts, &caps, opts.d_max);

    let mut candidates = Vec::with_capacity(values.len());
    let mut survivors = Vec::new();
    'candidate: for value in values {
        let fate = 'screen: {
            if !matches!(value % 4, 0 | 3) {
                break 'screen Fate::NotDiscriminant;
            }
            if value % 3 != 2 {
                break 'screen Fate::WrongResidueMod3;
            }
            let mod8_ok = match shape {
                DiscClass::OneMod8 => value % 8 == 7,
                DiscClass::DivisibleByFour => value % 4 == 0,
                DiscClass::FiveMod8 => value % 8 == 3,
            };
            if !mod8_ok {
                break 'screen Fate::WrongResidueMod8;
            }
            let got = class_number(value)?;
            if got != h {
                break 'screen Fate::ClassNumber { got };
            }
            for &l in &obstruction_primes {
                if value % l == 0 {
                    continue;
                }
                if kronecker(-(value as i64), l as i64) != -1 {
                    break 'screen Fate::SymbolObstruction { l };
                }
            }
            let test_primes = principal_form_primes(value, opts.split_primes, &disc_p)?;
            for l in test_primes {
                if !splits_completely(&p, l) {
                    break 'screen Fate::SplitFailure { l };
                }
            }
            Fate::Survived
        };
        if fate == Fate::Survived {
            survivors.push(value);
        }
        candidates.push(Candidate { value, fate });
        if survivors.len() > 1 {
            // Keep scanning only if a later screen could disambiguate; it
            // cannot, so fail fast with both survivors reported.
            break 'candidate;
        }
    }

    match survivors.len() {
        1 => Ok(DiscriminantSearch {
            p,
            h,
            shape,
            c_factors,
            s_primes,
            candidates,
            d: survivors[0],
        }),
        0 => Err(ClassFieldError::NoSurvivor(candidates.len())),
        _ => Err(ClassFieldError::Ambiguous(survivors)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    #[test]
    fn push_forward_of_smallest_factor() {
        // Roots b of x^2 + 2 map to (b^3 + 2)/b = b^2 + 2/b = -2 + 2/b;
        // the images have minimal polynomial x^2 + 4x + 6.
        let q = p(&[2, 0, 1]);
        assert_eq!(recover_p_from_q(&q).unwrap(), p(&[6, 4, 1]));
    }

    #[test]
    fn push_forward_collapses_multiplicity() {
        // The degree-4 period-2 factor shares its push-forward with x^2+2:
        // the raw resultant is the square of the same quadratic.
        let q = p(&[2, 4, 2, 0, 1]);
        assert_eq!(recover_p_from_q(&q).unwrap(), p(&[6, 4, 1]));
    }

    #[test]
    fn push_forward_of_rational_fixed_points() {
        // Both rational fixed points push forward to 3: (1 + 2)/1 and
        // (-8 + 2)/(-2).
        assert_eq!(recover_p_from_q(&p(&[-1, 1])).unwrap(), p(&[-3, 1]));
        assert_eq!(recover_p_from_q(&p(&[2, 1])).unwrap(), p(&[-3, 1]));
        assert!(matches!(
            recover_p_from_q(&p(&[0, 1])),
            Err(ClassFieldError::ZeroConstantTerm)
        ));
    }

    #[test]
    fn reconstruction_from_quadratic() {
        // p = x^2 + 4x + 6 gives C(x) = (x^3+2)^2 + 4x(x^3+2) + 6x^2,
        // which factors as (x^2 + 2)(x^4 + 2x^2 + 4x + 2).
        let c = build_cd(&p(&[6, 4, 1]));
        assert_eq!(c, &p(&[2, 0, 1]) * &p(&[2, 4, 2, 0, 1]));
    }

    #[test]
    fn shape_prediction_matches_splitting_of_two() {
        assert_eq!(factor_shape(23).unwrap(), vec![6, 6, 6]); // -23 = 1 (mod 8)
        assert_eq!(factor_shape(56).unwrap(), vec![8, 16]); // 4 | 56
        assert_eq!(factor_shape(11).unwrap(), vec![6]); // -11 = 5 (mod 8)
        assert_eq!(factor_shape(8).unwrap(), vec![2, 4]);
        assert_eq!(factor_shape(92).unwrap(), vec![6, 12]);
    }

    #[test]
    fn determine_d_for_the_smallest_quadratic_factor() {
        let q = p(&[2, 0, 1]);
        let found = determine_d(&q, &DetermineOpts::default()).unwrap();
        assert_eq!(found.d, 8);
        assert_eq!(found.h, 1);
        assert_eq!(found.shape, DiscClass::DivisibleByFour);
        assert!(found.s_primes.is_empty());
        // The reconstruction's factors come back with the input among them.
        assert_eq!(found.c_factors.len(), 2);
        assert!(found.c_factors.contains(&q));
        // 4 dies on the mod-3 screen, 8 survives.
        let fate_of = |v: u64| {
            found
                .candidates
                .iter()
                .find(|c| c.value == v)
                .map(|c| c.fate.clone())
        };
        assert_eq!(fate_of(4), Some(Fate::WrongResidueMod3));
        assert_eq!(fate_of(8), Some(Fate::Survived));
    }

    #[test]
    fn determine_d_for_the_period_two_quartic() {
        let q = p(&[2, 4, 2, 0, 1]);
        let found = determine_d(&q, &DetermineOpts::default()).unwrap();
        assert_eq!(found.d, 8);
        assert_eq!(found.h, 1);
    }

    #[test]
    fn splitting_test_agrees_with_quadratic_reciprocity() {
        // x^2 + 2 splits mod l iff -2 is a square mod l.
        let q = p(&[2, 0, 1]);
        for l in [3u64, 11, 17, 19, 41, 43, 5, 7, 13, 23, 29] {
            let expected = kronecker(-2, l as i64) == 1;
            assert_eq!(splits_completely(&q, l), expected, "l={l}");
        }
    }

    #[test]
    fn principal_form_primes_for_disc_minus_eight() {
        // x^2 + 2y^2 represents 3, 11, 17, 19, 41, ...
        let primes = principal_form_primes(8, 5, &BigInt::from(-8)).unwrap();
        assert_eq!(primes, vec![3, 11, 17, 19, 41]);
    }

    #[test]
    fn principal_form_primes_for_odd_discriminant() {
        // Form x^2 + xy + 6y^2 of discriminant -23: misses 2, 3, 13, ...
        // and represents 23 = (0,±... ) no: smallest represented primes.
        let primes = principal_form_primes(23, 3, &BigInt::from(-23)).unwrap();
        for &l in &primes {
            assert!(is_prime_u64(l));
            // Every represented prime has (-23 | l) = 1 (split) or l = 23.
            assert!(l == 23 || kronecker(-23, l as i64) == 1, "l={l}");
        }
    }
}
