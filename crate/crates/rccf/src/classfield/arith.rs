//! Elementary number theory for imaginary quadratic orders: Kronecker
//! symbols, primality, trial-division factoring, and class numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

use super::ClassFieldError;

/// Upper bound (exclusive) on the primes used by [`factor_below_bound`].
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Largest `d` accepted by [`class_number`]; the reduced-form count walks
/// `O(d)` pairs, so keep it comfortably small.
const MAX_FORM_DISC: u64 = 100_000_000;

/// Kronecker symbol `(a | n)`, the extension of the Jacobi symbol to all
/// integer pairs.  Returns -1, 0, or 1.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && n % 2 == 0 {
        return 0;
    }
    let mut a = a;
    let mut n = n;
    // Split off the even part of n; (a | 2) depends on a mod 8.
    let mut result: i32 = 1;
    let twos = n.trailing_zeros();
    if n != 0 {
        n >>= twos;
    }
    if twos % 2 == 1 {
        result = match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0, // a even and n even was excluded; a even here means symbol 0
        };
        if result == 0 {
            return 0;
        }
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Jacobi loop: n is now odd and positive.
    a = a.rem_euclid(n);
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin primality test, valid for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes below [`TRIAL_DIVISION_BOUND`], sieved once.
fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_DIVISION_BOUND as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                for j in (i * i..n).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        primes
    })
}

/// Complete factorization of a positive 64-bit integer.
///
/// Trial-divides by the sieved primes and finishes with a primality check;
/// panics if `n` has two prime factors above the trial bound (no caller
/// handles integers that large).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor_u64 requires a positive integer");
    let mut out = Vec::new();
    for &p in small_primes() {
        let p = p as u64;
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        assert!(
            n < TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND || is_prime_u64(n),
            "factor_u64: cofactor {n} is composite"
        );
        out.push((n, 1));
    }
    out
}

/// Trial-divide `|n|` by every prime below [`TRIAL_DIVISION_BOUND`].
///
/// Returns the factored smooth part (primes ascending) and the unfactored
/// cofactor, which is 1 exactly when the factorization is complete.  A
/// cofactor below the square of the bound is necessarily prime and is
/// absorbed into the factor list.
pub fn factor_below_bound(n: &BigInt) -> (Vec<(u64, u32)>, BigInt) {
    let mut m = n.abs();
    let mut out: Vec<(u64, u32)> = Vec::new();
    if m.is_zero() {
        return (out, m);
    }
    for &p in small_primes() {
        let p = p as u64;
        if m == BigInt::from(1) {
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = m.div_rem(&BigInt::from(p));
            if r.is_zero() {
                m = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    if m != BigInt::from(1) {
        if let Some(v) = m.to_u64() {
            if v < TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND || is_prime_u64(v) {
                out.push((v, 1));
                out.sort_unstable();
                return (out, BigInt::from(1));
            }
        }
    }
    (out, m)
}

fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    a.gcd(&b).gcd(&c)
}

/// Class number `h(-d)` of the imaginary quadratic order of discriminant
/// `-d`, counted as the number of primitive reduced binary quadratic forms
/// `(a, b, c)` with `b^2 - 4ac = -d`.
///
/// Requires `d >= 3` and `-d = 0 or 1 (mod 4)`.
pub fn class_number(d: u64) -> Result<u64, ClassFieldError> {
    if d < 3 || !matches!(d % 4, 0 | 3) {
        return Err(ClassFieldError::BadDiscriminant(d));
    }
    if d > MAX_FORM_DISC {
        return Err(ClassFieldError::DiscriminantTooLarge(d));
    }
    let di = d as i64;
    let mut h = 0u64;
    let mut a: i64 = 1;
    while 3 * a * a <= di {
        // Reduced means -a < b <= a <= c, with b >= 0 whenever a = c.
        for b in (1 - a)..=a {
            let t = b * b + di;
            if t % (4 * a) != 0 {
                continue;
            }
            let c = t / (4 * a);
            if c < a || (b < 0 && c == a) {
                continue;
            }
            if gcd3(a as u64, b.unsigned_abs(), c as u64) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    Ok(h)
}

/// Split `-d` into fundamental discriminant and conductor: returns
/// `(d_K, f)` with `-d = d_K * f^2` and `d_K` a fundamental discriminant.
pub fn split_disc(d: u64) -> Result<(i64, u64), ClassFieldError> {
    if d < 3 || !matches!(d % 4, 0 | 3) {
        return Err(ClassFieldError::BadDiscriminant(d));
    }
    let mut squarefree = 1u64;
    let mut square_root = 1u64;
    for (p, e) in factor_u64(d) {
        if e % 2 == 1 {
            squarefree *= p;
        }
        square_root *= p.pow(e / 2);
    }
    if squarefree % 4 == 3 {
        Ok((-(squarefree as i64), square_root))
    } else {
        // -squarefree = 2 or 3 (mod 4): the fundamental discriminant is
        // -4*squarefree, and d = 0 or 3 (mod 4) forces the square part even.
        debug_assert!(square_root % 2 == 0);
        Ok((-4 * squarefree as i64, square_root / 2))
    }
}

/// Class number of the order of discriminant `-d` via the conductor product
/// formula over the maximal order:
/// `h(-d) = h(d_K) * f * prod_{p | f} (1 - (d_K|p)/p) / [O_K^* : O^*]`.
///
/// Agrees with [`class_number`]; useful as an independent cross-check.
pub fn class_number_product(d: u64) -> Result<u64, ClassFieldError> {
    let (dk, f) = split_disc(d)?;
    let h_max = class_number(dk.unsigned_abs())?;
    let mut h = h_max;
    for (p, e) in factor_u64(f.max(1)) {
        h *= p.pow(e - 1);
        let chi = kronecker(dk, p as i64) as i64;
        h *= (p as i64 - chi) as u64;
    }
    if f > 1 {
        let units = match dk {
            -3 => 3,
            -4 => 2,
            _ => 1,
        };
        debug_assert!(h % units == 0);
        h /= units;
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_matches_euler_criterion_for_odd_primes() {
        for &p in &[3i64, 5, 7, 11, 13, 23, 101] {
            for a in -30i64..30 {
                let euler = if a.rem_euclid(p) == 0 {
                    0
                } else {
                    let r = powmod(a.rem_euclid(p) as u64, (p as u64 - 1) / 2, p as u64);
                    if r == 1 {
                        1
                    } else {
                        -1
                    }
                };
                assert_eq!(kronecker(a, p), euler, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_special_cases() {
        assert_eq!(kronecker(-11, 2), -1); // -11 = 5 (mod 8)
        assert_eq!(kronecker(-23, 2), 1); // -23 = 1 (mod 8)
        assert_eq!(kronecker(-56, 2), 0);
        assert_eq!(kronecker(1, 0), 1);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(5, 0), 0);
        assert_eq!(kronecker(-8, 19), 1);
        assert_eq!(kronecker(7, 19), 1);
        assert_eq!(kronecker(11, 19), 1);
        assert_eq!(kronecker(-77, 5), -1);
        assert_eq!(kronecker(-77, 23), -1);
    }

    #[test]
    fn kronecker_is_multiplicative_in_both_arguments() {
        for a in -12i64..13 {
            for b in -12i64..13 {
                for n in 1i64..30 {
                    assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
                }
            }
        }
    }

    #[test]
    fn primality_edge_cases() {
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(3));
        assert!(!is_prime_u64(561)); // Carmichael
        assert!(is_prime_u64(107));
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 59) - 1));
    }

    #[test]
    fn factoring_round_trips() {
        assert_eq!(factor_u64(308), vec![(2, 2), (7, 1), (11, 1)]);
        assert_eq!(factor_u64(1), vec![]);
        let n = BigInt::from(2).pow(50) * BigInt::from(3).pow(20) * BigInt::from(47).pow(4);
        let (fs, left) = factor_below_bound(&n);
        assert_eq!(fs, vec![(2, 50), (3, 20), (47, 4)]);
        assert_eq!(left, BigInt::from(1));
        // A cofactor above the bound is reported, not silently dropped.
        let big = BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64) * 12;
        let (fs, left) = factor_below_bound(&big);
        assert_eq!(fs, vec![(2, 2), (3, 1)]);
        assert_eq!(left, BigInt::from(1_000_003u64) * BigInt::from(1_000_033u64));
    }

    #[test]
    fn class_numbers_for_known_discriminants() {
        let known: &[(u64, u64)] = &[
            (3, 1),
            (4, 1),
            (8, 1),
            (11, 1),
            (20, 2),
            (23, 3),
            (32, 2),
            (44, 3),
            (56, 4),
            (68, 4),
            (80, 4),
            (92, 3),
            (104, 6),
            (128, 4),
            (224, 8),
            (260, 8),
            (308, 8),
            (320, 8),
            (368, 6),
        ];
        for &(d, h) in known {
            assert_eq!(class_number(d).unwrap(), h, "h(-{d})");
        }
        assert!(class_number(5).is_err());
        assert!(class_number(2).is_err());
    }

    #[test]
    fn split_disc_examples() {
        assert_eq!(split_disc(92).unwrap(), (-23, 2));
        assert_eq!(split_disc(44).unwrap(), (-11, 2));
        assert_eq!(split_disc(32).unwrap(), (-8, 2));
        assert_eq!(split_disc(56).unwrap(), (-56, 1));
        assert_eq!(split_disc(308).unwrap(), (-308, 1));
        assert_eq!(split_disc(75).unwrap(), (-3, 5));
    }

    #[test]
    fn product_formula_agrees_with_form_count() {
        for d in 3..=1000u64 {
            if !matches!(d % 4, 0 | 3) {
                continue;
            }
            assert_eq!(
                class_number(d).unwrap(),
                class_number_product(d).unwrap(),
                "disagreement at d={d}"
            );
        }
    }
}
