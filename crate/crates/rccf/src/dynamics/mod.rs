//! The multivalued iteration attached to the cubic relation
//! `f(x, y) = x³(y² + y + 1) − y(y² − 2y + 4)`
//! and its periodic points.
//!
//! `f(x, y) = 0` defines a 3-valued algebraic function `y = T(x)`.  Points
//! of period `n` are encoded by iterated resultants: with `R⁽¹⁾ = f(x, x₁)`
//! and `R⁽ⁿ⁾(x, xₙ) = Res_{xₙ₋₁}(R⁽ⁿ⁻¹⁾(x, xₙ₋₁), f(xₙ₋₁, xₙ))`, the
//! univariate polynomial `Rₙ(x) = R⁽ⁿ⁾(x, x)` of degree `2·3ⁿ − 1` vanishes
//! exactly on the cycles whose length divides `n`.  Möbius inversion
//! `Pₙ = ∏_{d|n} R_d^{μ(n/d)}` isolates the points of exact period `n`.
//!
//! Two structural facts pin every computed `Rₙ`: the leading coefficient
//! is `(−1)ⁿ⁻¹`, and `Rₙ ≡ (−1)ⁿ⁻¹ (x^{3ⁿ} − x)(x − 1)^{3ⁿ−1} (mod 3)`.
//! The group of six Möbius transformations generated by
//! `A(x) = (2 − 2x)/(2 + x)`, `B(x) = (x + 2)/(x − 1)` and `U(x) = −2/x`
//! permutes the periodic points of each period, and its action on the
//! irreducible factors of `Pₙ` is implemented exactly.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::factor::{factor_over_z_seeded, ModPoly};
use crate::poly::resultant::resultant_bi_chain;
use crate::poly::serial::{self, SerialError};
use crate::poly::{BiPoly, IntPoly, PolyError};

#[derive(Debug, Error)]
pub enum DynError {
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
    #[error("serialization error: {0}")]
    Serial(#[from] SerialError),
    #[error("cached file {0} failed its self-check: {1}")]
    BadCache(String, String),
    #[error("period index must be ≥ 1")]
    BadIndex,
}

/// `f(x, y) = x³(y² + y + 1) − y(y² − 2y + 4)`.
pub fn f_poly() -> BiPoly {
    BiPoly::from_terms_i64(&[
        (3, 2, 1),
        (3, 1, 1),
        (3, 0, 1),
        (0, 3, -1),
        (0, 2, 2),
        (0, 1, -4),
    ])
}

/// `g(x, y) = x³(4y² + 2y + 1) − y(y² − y + 1)`, the half-scale model:
/// `f(x, y) = 8·g(x/2, y/2)`.
pub fn g_poly() -> BiPoly {
    BiPoly::from_terms_i64(&[
        (3, 2, 4),
        (3, 1, 2),
        (3, 0, 1),
        (0, 3, -1),
        (0, 2, 1),
        (0, 1, -1),
    ])
}

/// Möbius function for small arguments.
pub fn mobius(n: u32) -> i32 {
    assert!(n >= 1);
    let mut m = n;
    let mut count = 0;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if m > 1 {
        count += 1;
    }
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The chain resultant `R⁽ⁿ⁾(x, xₙ)`, optionally cached on disk.
///
/// Cached files are re-verified on load: the diagonal must have the right
/// degree, leading coefficient and reduction mod 3, and the specialization
/// `R⁽ⁿ⁾(0, y)` must agree with an independent recomputation.
pub fn chain_resultant(n: u32, cache_dir: Option<&Path>) -> Result<BiPoly, DynError> {
    if n == 0 {
        return Err(DynError::BadIndex);
    }
    if n == 1 {
        return Ok(f_poly());
    }
    if let Some(dir) = cache_dir {
        let path = dir.join(cache_file_name(n));
        if path.is_file() {
            let r = serial::load_bi(&path)?;
            verify_chain(&r, n).map_err(|msg| {
                DynError::BadCache(path.display().to_string(), msg)
            })?;
            return Ok(r);
        }
    }
    let prev = chain_resultant(n - 1, cache_dir)?;
    let r = resultant_bi_chain(&prev, &f_poly())?;
    if let Some(dir) = cache_dir {
        std::fs::create_dir_all(dir).map_err(SerialError::from)?;
        serial::save_bi(&dir.join(cache_file_name(n)), &r)?;
    }
    Ok(r)
}

/// Version tag baked into cache artifact names: a format change bumps the
/// tag, so artifacts written by an older build are recomputed rather than
/// misread.
pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Name of the cached chain-resultant artifact for index `n`.
pub fn cache_file_name(n: u32) -> String {
    format!("chain_v{CACHE_FORMAT_VERSION}_{n}.txt")
}

/// Sanity checks tying a chain polynomial to its defining recursion.
fn verify_chain(r: &BiPoly, n: u32) -> Result<(), String> {
    let diag = r.diagonal();
    let deg = 2 * 3usize.pow(n) - 1;
    if diag.degree() != Some(deg) {
        return Err(format!(
            "diagonal degree {:?}, expected {deg}",
            diag.degree()
        ));
    }
    if !matches_mod3_profile(&diag, n) {
        return Err("diagonal has wrong reduction mod 3".into());
    }
    // Independent spot check: specialize x = 0 through the whole chain.
    let at0 = {
        let f = f_poly();
        let mut acc = BiPoly::from_uni_y(&f.eval_x(&BigInt::zero()));
        for _ in 2..=n {
            acc = resultant_bi_chain(&acc, &f).map_err(|e| e.to_string())?;
        }
        acc.coeffs_wrt_x().remove(0)
    };
    if r.eval_x(&BigInt::zero()) != at0 {
        return Err("specialization at x = 0 does not match recomputation".into());
    }
    Ok(())
}

/// `Rₙ(x) = R⁽ⁿ⁾(x, x)`: vanishes on all periodic points of period
/// dividing `n`.  Degree `2·3ⁿ − 1`, leading coefficient `(−1)ⁿ⁻¹`.
pub fn r_n(n: u32, cache_dir: Option<&Path>) -> Result<IntPoly, DynError> {
    Ok(chain_resultant(n, cache_dir)?.diagonal())
}

/// `Pₙ = ∏_{d|n} R_d^{μ(n/d)}`: vanishes exactly on the points of exact
/// period `n` (for `n = 1` this is `R₁` itself).
pub fn p_n(n: u32, cache_dir: Option<&Path>) -> Result<IntPoly, DynError> {
    if n == 0 {
        return Err(DynError::BadIndex);
    }
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => num = &num * &r_n(d, cache_dir)?,
            -1 => den = &den * &r_n(d, cache_dir)?,
            _ => {}
        }
    }
    Ok(num.div_exact(&den)?)
}

/// The reduction of `Rₙ` mod 3 in closed form:
/// `(−1)ⁿ⁻¹ (x^{3ⁿ} − x)(x − 1)^{3ⁿ−1} ≡ (−1)ⁿ⁻¹ (x^{3ⁿ} − x) Σ_{i<3ⁿ} xⁱ`.
pub fn mod3_profile(n: u32) -> ModPoly {
    let e = 3usize.pow(n);
    let mut a = vec![0u64; e + 1];
    a[e] = 1;
    a[1] = 2; // −x
    // (x − 1)^(3ⁿ − 1) ≡ (x^{3ⁿ} − 1)/(x − 1) = 1 + x + … + x^{3ⁿ−1} mod 3.
    let geom = ModPoly::new(3, vec![1; e]);
    let mut prof = ModPoly::new(3, a).mul(&geom);
    if n % 2 == 0 {
        prof = prof.scale(2); // (−1)ⁿ⁻¹ ≡ 2 for even n
    }
    prof
}

/// Does `rn` reduce mod 3 to the closed-form profile?
pub fn matches_mod3_profile(rn: &IntPoly, n: u32) -> bool {
    ModPoly::from_int_poly(rn, 3) == mod3_profile(n)
}

/// Sum of roots (± second-highest coefficient; the leading coefficient of
/// every `Rₙ` and `Pₙ` is ±1).
pub fn root_sum(p: &IntPoly) -> BigInt {
    let d = p.degree().expect("nonzero polynomial");
    if d == 0 {
        return BigInt::zero();
    }
    let lc = p.lc().expect("nonzero");
    debug_assert!(lc.abs().is_one(), "root_sum expects ±1 leading coefficient");
    -(&p.coeff(d - 1) * lc)
}

/// The factored fixed-point polynomial `R₁ = x(x − 1)(x + 2)(x² + 2)`.
pub fn fixed_points(seed: u64) -> Vec<IntPoly> {
    let r1 = f_poly().diagonal();
    factor_over_z_seeded(&r1, seed)
        .expect("R₁ is nonzero")
        .factors
        .into_iter()
        .map(|(f, _)| f)
        .collect()
}

/// The three nontrivial Möbius transformations used to move periodic
/// points around: `A = B ∘ U`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// `A(x) = (2 − 2x)/(2 + x)`
    A,
    /// `B(x) = (x + 2)/(x − 1)`
    B,
    /// `U(x) = −2/x`
    U,
}

/// Apply a transform to an irreducible factor `q` of some `Pₙ`: returns
/// the monic image polynomial `q̂` and the scalar `s` in
/// `(denominator)^deg(q) · q(T(x)) = s · q̂(x)`, where the denominator is
/// `2 + x`, `x − 1`, or `x` and the scalar is `q(−2)`, `q(1)`, or `q(0)`
/// respectively.  Fails when the scalar vanishes (the three exceptional
/// linear factors) or when `q` is not ±monic.
pub fn transform_factor(q: &IntPoly, t: Transform) -> Result<(IntPoly, BigInt), DynError> {
    let d = q.degree().ok_or(PolyError::ZeroPolynomial)?;
    let (num, den): (IntPoly, IntPoly) = match t {
        Transform::A => (IntPoly::from_i64(&[2, -2]), IntPoly::from_i64(&[2, 1])),
        Transform::B => (IntPoly::from_i64(&[2, 1]), IntPoly::from_i64(&[-1, 1])),
        Transform::U => (IntPoly::from_i64(&[-2]), IntPoly::x()),
    };
    // s(x) = Σ cᵢ · num(x)ⁱ · den(x)^(d−i)
    let mut s = IntPoly::zero();
    for (i, c) in q.coeffs().iter().enumerate() {
        let term = &num.pow(i) * &den.pow(d - i);
        s = &s + &term.scale(c);
    }
    // The image must have full degree d; its top coefficient is the
    // scalar (q evaluated at the pole of the transform).
    let scalar = s.coeff(d);
    if scalar.is_zero() {
        return Err(DynError::Poly(PolyError::NonExactDivision(
            "transform scalar vanishes".into(),
        )));
    }
    let image = s.div_scalar_exact(&scalar).map_err(DynError::Poly)?;
    Ok((image, scalar))
}

/// One row of the period table: an irreducible factor of `Pₙ`.
#[derive(Debug, Clone)]
pub struct PeriodRow {
    pub n: u32,
    pub factor: IntPoly,
    pub multiplicity: u32,
}

/// Irreducible factors of `P₁ … P_max_n`, the lookup table for periods of
/// algebraic points.
#[derive(Debug, Clone)]
pub struct PeriodTable {
    pub max_n: u32,
    pub rows: Vec<PeriodRow>,
}

impl PeriodTable {
    pub fn build(max_n: u32, cache_dir: Option<&Path>, seed: u64) -> Result<Self, DynError> {
        let mut rows = Vec::new();
        for n in 1..=max_n {
            let pn = p_n(n, cache_dir)?;
            let fac = factor_over_z_seeded(&pn, seed)?;
            debug_assert!(fac.content.abs().is_one());
            for (factor, multiplicity) in fac.factors {
                rows.push(PeriodRow {
                    n,
                    factor,
                    multiplicity,
                });
            }
        }
        Ok(PeriodTable { max_n, rows })
    }

    /// Exact period of the points cut out by `q`, if `q` appears in the
    /// table (as a primitive positive-lc irreducible).
    pub fn period_of(&self, q: &IntPoly) -> Option<u32> {
        let qn = q.primitive_normalized();
        self.rows.iter().find(|r| r.factor == qn).map(|r| r.n)
    }

    /// All factors of a given period.
    pub fn factors_of_period(&self, n: u32) -> Vec<&IntPoly> {
        self.rows
            .iter()
            .filter(|r| r.n == n)
            .map(|r| &r.factor)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_scale_model_matches() {
        // f(x, y) = 8·g(x/2, y/2) ⇔ 8·g(x, y) scaled: check numerically.
        let f = f_poly();
        let g = g_poly();
        for u in -4i64..=4 {
            for v in -4i64..=4 {
                let (x, y) = (BigInt::from(2 * u), BigInt::from(2 * v));
                let lhs = f.eval_xy(&x, &y);
                let rhs = BigInt::from(8) * g.eval_xy(&BigInt::from(u), &BigInt::from(v));
                assert_eq!(lhs, rhs, "at ({u}, {v})");
            }
        }
    }

    #[test]
    fn fixed_point_polynomial_factors() {
        let r1 = f_poly().diagonal();
        assert_eq!(r1, IntPoly::from_i64(&[0, -4, 2, 0, 1, 1]));
        let fs = fixed_points(1);
        let display: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        assert_eq!(display, vec!["x - 1", "x", "x + 2", "x^2 + 2"]);
    }

    #[test]
    fn mobius_values() {
        let vals: Vec<i32> = (1..=10).map(mobius).collect();
        assert_eq!(vals, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn second_iterate_invariants() {
        let r2 = r_n(2, None).unwrap();
        assert_eq!(r2.degree(), Some(17));
        assert_eq!(r2.lc(), Some(&BigInt::from(-1)));
        assert!(matches_mod3_profile(&r2, 2));
        assert_eq!(root_sum(&r2), BigInt::from(9 - 4));
        // P₂ = R₂ / R₁ exactly.
        let p2 = p_n(2, None).unwrap();
        assert_eq!(p2.degree(), Some(12));
        assert_eq!(root_sum(&p2), BigInt::from(6));
        let r1 = r_n(1, None).unwrap();
        assert_eq!(&p2 * &r1, r2);
    }

    #[test]
    fn first_profile_is_r1_mod_3() {
        let r1 = f_poly().diagonal();
        assert!(matches_mod3_profile(&r1, 1));
        assert!(!matches_mod3_profile(&r1, 2));
    }

    #[test]
    fn transform_images_of_quadratic_fixed_factor() {
        // x² + 2 is fixed-point locus; the transforms permute fixed points
        // so its image must again be a degree-2 factor of R₁, i.e. itself.
        let q = IntPoly::from_i64(&[2, 0, 1]);
        for t in [Transform::A, Transform::B, Transform::U] {
            let (img, scalar) = transform_factor(&q, t).unwrap();
            assert_eq!(img, q, "{t:?}");
            assert!(!scalar.is_zero());
        }
        // Scalars: q(−2) = 6, q(1) = 3, q(0) = 2, and 6 = 3·2.
        let (_, sa) = transform_factor(&q, Transform::A).unwrap();
        let (_, sb) = transform_factor(&q, Transform::B).unwrap();
        let (_, su) = transform_factor(&q, Transform::U).unwrap();
        assert_eq!(sa, BigInt::from(6));
        assert_eq!(sb, BigInt::from(3));
        assert_eq!(su, BigInt::from(2));
        assert_eq!(sa, &sb * &su);
    }

    #[test]
    fn transform_rejects_exceptional_linears() {
        // q = x has q(0) = 0: U is undefined on it.
        assert!(transform_factor(&IntPoly::x(), Transform::U).is_err());
        assert!(transform_factor(&IntPoly::from_i64(&[-1, 1]), Transform::B).is_err());
        assert!(transform_factor(&IntPoly::from_i64(&[2, 1]), Transform::A).is_err());
    }

    #[test]
    fn chain_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("rccf-dyn-{}", std::process::id()));
        let _ = std::fs::remove_dir_all(&dir);
        let fresh = chain_resultant(2, Some(&dir)).unwrap();
        let cached = chain_resultant(2, Some(&dir)).unwrap();
        assert_eq!(fresh, cached);
        // Corrupt the file: the self-check must reject it.
        let path = dir.join(cache_file_name(2));
        let mut text = std::fs::read_to_string(&path).unwrap();
        text = text.replacen("bivariate\n", "bivariate\n0 0 7\n", 1);
        std::fs::write(&path, text).unwrap();
        assert!(matches!(
            chain_resultant(2, Some(&dir)),
            Err(DynError::BadCache(..)) | Err(DynError::Serial(_))
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
