//! Exact resultants and discriminants.
//!
//! Univariate resultants use the subresultant pseudo-remainder sequence,
//! which keeps all intermediate values integral with controlled growth.
//! Bivariate elimination evaluates one variable at enough integer points
//! (degree bounds are known in advance), computes univariate resultants at
//! each point, and recovers the answer by exact Newton interpolation.
//!
//! Specializing a polynomial can drop its degree in the eliminated
//! variable.  The evaluated resultant must still be the specialization of
//! the *formal* resultant (the Sylvester determinant taken at the generic
//! degrees), so degenerate points are handled by computing the determinant
//! of the formally-sized Sylvester matrix directly with fraction-free
//! (Bareiss) elimination instead of skipping the point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{BiPoly, IntPoly, PolyError};

/// Which variable of a [`BiPoly`] to eliminate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Resultant of two univariate integer polynomials.
///
/// Conventions: `Res(a, b) = lc(a)^deg(b) · ∏ b(α)` over the roots `α` of
/// `a`; if either argument is the zero polynomial the result is 0, and two
/// nonzero constants have resultant 1.
pub fn resultant_uni(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    if da == 0 && db == 0 {
        return BigInt::one();
    }
    if da == 0 {
        return a.lc().expect("nonzero").pow(db as u32);
    }
    if db == 0 {
        return b.lc().expect("nonzero").pow(da as u32);
    }
    if da < db {
        let swapped = resultant_uni(b, a);
        return if (da & db & 1) == 1 { -swapped } else { swapped };
    }

    // Subresultant PRS on the primitive parts; contents contribute the
    // factor cont(a)^deg(b) · cont(b)^deg(a).
    let ca = a.content();
    let cb = b.content();
    let mut t = ca.pow(db as u32) * cb.pow(da as u32);
    let mut aa = a.primitive_part();
    let mut bb = b.primitive_part();
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    let mut sign = BigInt::one();
    loop {
        let d = aa.degree().expect("nonzero in PRS");
        let e = bb.degree().expect("nonzero in PRS");
        if (d & e & 1) == 1 {
            sign = -sign;
        }
        let delta = (d - e) as u32;
        let r = aa.pseudo_rem(&bb);
        aa = bb;
        if r.is_zero() {
            // Positive-degree common factor: the resultant vanishes.
            return BigInt::zero();
        }
        let divisor = &g * h.pow(delta);
        bb = r
            .div_scalar_exact(&divisor)
            .expect("subresultant divisor divides exactly");
        g = aa.lc().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            // h ← g^δ / h^(δ−1), exact by the subresultant theory.
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            exact_div(&num, &den)
        };
        if bb.degree() == Some(0) {
            let da_last = aa.degree().expect("nonzero") as u32;
            let num = bb.lc().expect("nonzero").pow(da_last);
            let den = h.pow(da_last - 1);
            t *= exact_div(&num, &den);
            return sign * t;
        }
    }
}

fn exact_div(num: &BigInt, den: &BigInt) -> BigInt {
    use num_integer::Integer;
    let (q, r) = num.div_rem(den);
    debug_assert!(r.is_zero(), "inexact internal division");
    q
}

/// Resultant of `a` and `b` where the two are treated as having the given
/// *formal* degrees (each at least the actual degree).  This is the
/// specialization of the generic Sylvester determinant, which matters when
/// an evaluation kills leading coefficients.
pub fn formal_resultant(a: &IntPoly, m: usize, b: &IntPoly, n: usize) -> BigInt {
    let da = a.degree();
    let db = b.degree();
    debug_assert!(da.is_none_or(|d| d <= m) && db.is_none_or(|d| d <= n));
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    if m == 0 {
        // Only b contributes rows: det = a^n (a is a constant, possibly 0).
        return a.coeff(0).pow(n as u32);
    }
    if n == 0 {
        return b.coeff(0).pow(m as u32);
    }
    if da == Some(m) && db == Some(n) {
        return resultant_uni(a, b);
    }
    // Degenerate specialization: take the determinant of the formal-size
    // Sylvester matrix directly.
    bareiss_det(sylvester_matrix_formal(a, m, b, n))
}

/// The `(m+n) × (m+n)` Sylvester matrix of `a` (formal degree `m`) and `b`
/// (formal degree `n`): `n` shifted rows of `a`'s coefficients above `m`
/// shifted rows of `b`'s, all in descending degree order.
pub(crate) fn sylvester_matrix_formal(
    a: &IntPoly,
    m: usize,
    b: &IntPoly,
    n: usize,
) -> Vec<Vec<BigInt>> {
    let size = m + n;
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for row in 0..n {
        for k in 0..=m {
            mat[row][row + k] = a.coeff(m - k);
        }
    }
    for row in 0..m {
        for k in 0..=n {
            mat[n + row][row + k] = b.coeff(n - k);
        }
    }
    mat
}

/// Fraction-free determinant (Bareiss), exact over ℤ.
pub(crate) fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pivot);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = exact_div(&num, &prev);
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = std::mem::take(&mut m[n - 1][n - 1]);
    if sign {
        -det
    } else {
        det
    }
}

/// Discriminant `(−1)^(n(n−1)/2) · Res(p, p′) / lc(p)` of a polynomial of
/// degree `n ≥ 1`.
pub fn discriminant(p: &IntPoly) -> Result<BigInt, PolyError> {
    let n = p.degree().ok_or(PolyError::ZeroPolynomial)?;
    if n == 0 {
        return Err(PolyError::ZeroPolynomial);
    }
    if n == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant_uni(p, &p.derivative());
    let q = exact_div(&res, p.lc().expect("nonzero"));
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

/// Deterministic evaluation points `0, 1, −1, 2, −2, …`.
pub(crate) fn eval_points(count: usize) -> Vec<BigInt> {
    let mut pts = Vec::with_capacity(count);
    let mut k: i64 = 0;
    while pts.len() < count {
        if k == 0 {
            pts.push(BigInt::zero());
        } else {
            pts.push(BigInt::from(k));
            if pts.len() < count {
                pts.push(BigInt::from(-k));
            }
        }
        k += 1;
    }
    pts
}

/// Exact polynomial interpolation through `(xs[i], ys[i])`; fails if the
/// data does not come from an integer polynomial (which would indicate a
/// degree-bound violation in the caller).
pub(crate) fn newton_interpolate(xs: &[BigInt], ys: &[BigInt]) -> Result<IntPoly, PolyError> {
    let n = xs.len();
    assert_eq!(n, ys.len());
    let mut coef: Vec<BigRational> = ys
        .iter()
        .map(|y| BigRational::from_integer(y.clone()))
        .collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = BigRational::from_integer(&xs[i] - &xs[i - j]);
            coef[i] = num / den;
        }
    }
    // Horner on the Newton form: p = (…(c_{n−1}(x − x_{n−2}) + c_{n−2})…).
    let mut poly: Vec<BigRational> = Vec::new();
    for i in (0..n).rev() {
        // poly = poly · (x − xs[i]) + coef[i]
        let xi = BigRational::from_integer(xs[i].clone());
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * &xi;
        }
        if next.is_empty() {
            next.push(BigRational::zero());
        }
        next[0] += &coef[i];
        poly = next;
    }
    let mut out = Vec::with_capacity(poly.len());
    for c in poly {
        if !c.denom().is_one() {
            return Err(PolyError::InexactInterpolation(c.to_string()));
        }
        out.push(c.numer().clone());
    }
    Ok(IntPoly::new(out))
}

/// Resultant of two polynomials in the same variable pair with respect to
/// one of the variables, producing a univariate polynomial in the other.
pub fn resultant_bi_shared(a: &BiPoly, b: &BiPoly, elim: Var) -> Result<IntPoly, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    match elim {
        Var::X => resultant_bi_shared(&a.swap_vars(), &b.swap_vars(), Var::Y),
        Var::Y => {
            let m = a.deg_y().expect("nonzero") as usize;
            let n = b.deg_y().expect("nonzero") as usize;
            // Formal degree 0 in the eliminated variable: Res = other^m.
            if m == 0 {
                let au = a.coeffs_wrt_y().remove(0);
                return Ok(au.pow(n));
            }
            if n == 0 {
                let bu = b.coeffs_wrt_y().remove(0);
                return Ok(bu.pow(m));
            }
            let dxa = a.deg_x().unwrap_or(0) as usize;
            let dxb = b.deg_x().unwrap_or(0) as usize;
            let bound = dxa * n + dxb * m;
            let xs = eval_points(bound + 1);
            let ys: Vec<BigInt> = xs
                .par_iter()
                .map(|pt| {
                    let ap = a.eval_x(pt);
                    let bp = b.eval_x(pt);
                    formal_resultant(&ap, m, &bp, n)
                })
                .collect();
            newton_interpolate(&xs, &ys)
        }
    }
}

/// Resultant that links two relation steps: eliminates the *second*
/// variable of `a` against the *first* variable of `b`.
///
/// With `a = a(x, t)` and `b = b(t, y)`, returns `Res_t(a, b)` as a
/// polynomial in `(x, y)`.
pub fn resultant_bi_chain(a: &BiPoly, b: &BiPoly) -> Result<BiPoly, PolyError> {
    if a.is_zero() || b.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let m = a.deg_y().expect("nonzero") as usize;
    let n = b.deg_x().expect("nonzero") as usize;
    if m == 0 {
        // a is a polynomial in x alone: Res = a^n.
        let au = a.coeffs_wrt_y().remove(0);
        return Ok(BiPoly::from_uni_x(&au.pow(n)));
    }
    if n == 0 {
        let bu = b.coeffs_wrt_x().remove(0);
        return Ok(BiPoly::from_uni_y(&bu.pow(m)));
    }
    let dx_bound = a.deg_x().unwrap_or(0) as usize * n;
    let dy_bound = b.deg_y().unwrap_or(0) as usize * m;
    let xs = eval_points(dx_bound + 1);
    let ys = eval_points(dy_bound + 1);
    // Specialize b once per y-point; each is a univariate polynomial in t.
    let b_rows: Vec<IntPoly> = ys.iter().map(|bpt| b.eval_y(bpt)).collect();

    // values[i][j] = Res_t(a(x_i, t), b(t, y_j)), then interpolate in y per
    // row and in x per y-coefficient.
    let rows: Vec<IntPoly> = xs
        .par_iter()
        .map(|apt| {
            let a_col = a.eval_x(apt);
            let vals: Vec<BigInt> = b_rows
                .iter()
                .map(|b_row| formal_resultant(&a_col, m, b_row, n))
                .collect();
            newton_interpolate(&ys, &vals)
        })
        .collect::<Result<_, _>>()?;

    let mut out = BiPoly::zero();
    for j in 0..=dy_bound {
        let col: Vec<BigInt> = rows.iter().map(|r| r.coeff(j)).collect();
        let in_x = newton_interpolate(&xs, &col)?;
        for (i, c) in in_x.coeffs().iter().enumerate() {
            out.add_term(i as u32, j as u32, c.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn resultant_of_linear_pair() {
        // Res(x - a, x - b) = a - b
        let a = p(&[-3, 1]);
        let b = p(&[-5, 1]);
        assert_eq!(resultant_uni(&a, &b), BigInt::from(-2));
    }

    #[test]
    fn resultant_degenerate_inputs() {
        assert_eq!(resultant_uni(&IntPoly::zero(), &p(&[1, 1])), BigInt::zero());
        assert_eq!(resultant_uni(&p(&[4]), &p(&[7])), BigInt::one());
        assert_eq!(resultant_uni(&p(&[3]), &p(&[0, 0, 1])), BigInt::from(9));
        assert_eq!(resultant_uni(&p(&[1, 1, 1]), &p(&[2])), BigInt::from(4));
    }

    #[test]
    fn resultant_detects_common_factor() {
        let a = &p(&[1, 1]) * &p(&[2, 1]);
        let b = &p(&[1, 1]) * &p(&[-7, 2, 3]);
        assert_eq!(resultant_uni(&a, &b), BigInt::zero());
    }

    #[test]
    fn resultant_antisymmetry() {
        let a = p(&[1, 4, 0, 2]);
        let b = p(&[3, -1, 5]);
        let lhs = resultant_uni(&a, &b);
        let rhs = resultant_uni(&b, &a);
        // deg 3 · deg 2 even → symmetric
        assert_eq!(lhs, rhs);
        let c = p(&[2, 1, 0, 1]);
        let d = p(&[-1, 0, 0, 0, 1, 2]);
        assert_eq!(
            resultant_uni(&c, &d),
            -resultant_uni(&d, &c),
            "odd·odd degree pair flips sign"
        );
    }

    #[test]
    fn bareiss_matches_small_hand_determinants() {
        let m = vec![
            vec![BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(5), BigInt::from(7)],
        ];
        assert_eq!(bareiss_det(m), BigInt::from(-1));
        let m3 = vec![
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)],
            vec![BigInt::from(4), BigInt::from(5), BigInt::from(6)],
            vec![BigInt::from(7), BigInt::from(8), BigInt::from(10)],
        ];
        assert_eq!(bareiss_det(m3), BigInt::from(-3));
        // Needs a row swap.
        let ms = vec![
            vec![BigInt::zero(), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::zero()],
        ];
        assert_eq!(bareiss_det(ms), BigInt::from(-1));
    }

    #[test]
    fn prs_agrees_with_sylvester_determinant() {
        // Pseudo-random small polynomials, deterministic coefficients.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 19) as i64 - 9
        };
        for da in 1usize..=6 {
            for db in 1usize..=6 {
                for _ in 0..8 {
                    let mut ac: Vec<i64> = (0..=da).map(|_| next()).collect();
                    let mut bc: Vec<i64> = (0..=db).map(|_| next()).collect();
                    if ac[da] == 0 {
                        ac[da] = 1;
                    }
                    if bc[db] == 0 {
                        bc[db] = 1;
                    }
                    let a = IntPoly::from_i64(&ac);
                    let b = IntPoly::from_i64(&bc);
                    let det = bareiss_det(sylvester_matrix_formal(&a, da, &b, db));
                    assert_eq!(resultant_uni(&a, &b), det, "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn formal_resultant_handles_degree_drops() {
        // a has formal degree 3 but actual degree 1 after specialization.
        let a = p(&[5, 2]);
        let b = p(&[1, 0, 1]);
        let direct = bareiss_det(sylvester_matrix_formal(&a, 3, &b, 2));
        assert_eq!(formal_resultant(&a, 3, &b, 2), direct);
        // Both dropped: determinant has a zero column.
        let both = formal_resultant(&p(&[1, 1]), 2, &p(&[3]), 1);
        let det = bareiss_det(sylvester_matrix_formal(&p(&[1, 1]), 2, &p(&[3]), 1));
        assert_eq!(both, det);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let target = p(&[3, -2, 0, 7]);
        let xs = eval_points(4);
        let ys: Vec<BigInt> = xs.iter().map(|x| target.eval(x)).collect();
        assert_eq!(newton_interpolate(&xs, &ys).unwrap(), target);
    }

    #[test]
    fn interpolation_rejects_non_integer_fit() {
        // Data from x/2 at points 0 and 1 forces a half-integer coefficient.
        let xs = eval_points(2);
        let ys = vec![BigInt::zero(), BigInt::from(3)];
        // That one is fine (3x), so take points 0,1 with values 0,1 over a
        // quadratic grid that cannot fit an integer line.
        assert!(newton_interpolate(&xs, &ys).is_ok());
        let xs3 = vec![BigInt::from(0), BigInt::from(2)];
        let ys3 = vec![BigInt::zero(), BigInt::from(1)];
        assert!(matches!(
            newton_interpolate(&xs3, &ys3),
            Err(PolyError::InexactInterpolation(_))
        ));
    }

    #[test]
    fn discriminant_small_cases() {
        // disc(x^2 + bx + c) = b^2 - 4c
        let q = p(&[6, 4, 1]);
        assert_eq!(discriminant(&q).unwrap(), BigInt::from(-8));
        // disc(x^2 + 2) = -8
        assert_eq!(discriminant(&p(&[2, 0, 1])).unwrap(), BigInt::from(-8));
        // disc of linear is 1 by convention
        assert_eq!(discriminant(&p(&[-1, 1])).unwrap(), BigInt::one());
        // disc(x^3 + px + q) = -4p^3 - 27q^2
        let c = p(&[2, -1, 0, 1]);
        assert_eq!(discriminant(&c).unwrap(), BigInt::from(4 - 108));
    }

    #[test]
    fn shared_variable_elimination_matches_product_formula() {
        // Res_y(x*y - y^3 - 2, y^2 + 2): roots of second are ±i√2... check
        // against the Sylvester determinant per evaluation instead: compute
        // symbolically at several x and compare.
        let a = BiPoly::from_terms_i64(&[(1, 1, 1), (0, 3, -1), (0, 0, -2)]);
        let b = BiPoly::from_terms_i64(&[(0, 2, 1), (0, 0, 2)]);
        let r = resultant_bi_shared(&a, &b, Var::Y).unwrap();
        for t in -3i64..=3 {
            let x = BigInt::from(t);
            let av = a.eval_x(&x);
            let bv = b.eval_x(&x);
            assert_eq!(r.eval(&x), resultant_uni(&av, &bv));
        }
    }

    #[test]
    fn chain_elimination_matches_pointwise_resultants() {
        // a(x, t) = x^2 t^2 + 3t - x, b(t, y) = t^2 y - 2t + y^2
        let a = BiPoly::from_terms_i64(&[(2, 2, 1), (0, 1, 3), (1, 0, -1)]);
        let b = BiPoly::from_terms_i64(&[(2, 1, 1), (1, 0, -2), (0, 2, 1)]);
        let r = resultant_bi_chain(&a, &b).unwrap();
        for u in -3i64..=3 {
            for v in -3i64..=3 {
                let (x, y) = (BigInt::from(u), BigInt::from(v));
                let at = a.eval_x(&x);
                let bt = b.eval_y(&y);
                let expect = formal_resultant(&at, 2, &bt, 2);
                assert_eq!(r.eval_xy(&x, &y), expect, "at ({u}, {v})");
            }
        }
    }
}
