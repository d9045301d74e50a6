//! Numeric class-field value checks.
//!
//! For a discriminant `-d = 1 mod 3` the generating values live at the
//! witness point `w` with `9 | N(w)`: `beta(w/3)` is a root of the class
//! polynomial `p_d`, `2 c(w/3)` is a root of one irreducible factor of
//! `C_d`, and the two companion values `c1(w/6) / c(w/3)` and
//! `-1 / c1(w/6)` are roots of `C_d` as well.  This module finds `w`,
//! measures those residuals, and evaluates the closed radical forms of the
//! singular values for `-d = -8, -11, -23`.

use num_bigint::BigInt;

use super::eval::{beta_eval, c1_eval, c_eval, eval_poly_complex, PrecCtx, Tau};
use super::ModularError;
use crate::classfield::build_cd;
use crate::hp::{Complex, Real};
use crate::poly::IntPoly;

/// Bound on the witness numerator search.
const WITNESS_CAP: u64 = 10_000;

/// The witness point `w` attached to a discriminant `-d`: for even `d`,
/// `w = k + sqrt(-d)/2`; for odd `d`, `w = (k + sqrt(-d))/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Witness {
    /// The discriminant magnitude.
    pub d: u64,
    /// Numerator `k = 1 mod 6`, the smallest making `9 | N(w)`.
    pub k: u64,
    /// True when `d` is odd and the whole point is halved.
    pub halved: bool,
}

impl Witness {
    /// The norm `N(w) = k^2 + d/4` (even `d`) or `(k^2 + d)/4` (odd `d`).
    pub fn norm(&self) -> u64 {
        if self.halved {
            (self.k * self.k + self.d) / 4
        } else {
            self.k * self.k + self.d / 4
        }
    }

    /// The point `w / m` at the context scale.
    pub fn tau_over(&self, ctx: &PrecCtx, m: u64) -> Tau {
        let scale = ctx.scale();
        let half_den = if self.halved { 2 } else { 1 };
        let re = Real::from_ratio(
            &BigInt::from(self.k),
            &BigInt::from(m * half_den),
            scale,
        );
        // Imaginary part sqrt(d) / (2m) in both parities.
        let im = Real::from_bigint(&BigInt::from(self.d), scale)
            .sqrt()
            .div_i64(2 * m as i64);
        Tau::new(Complex::new(re, im)).expect("witness points lie in the upper half-plane")
    }
}

/// Find the witness for `-d`: the smallest `k >= 1` with `k = 1 mod 6` and
/// `9 | N(w)`.
pub fn w_for_d(d: u64) -> Result<Witness, ModularError> {
    if d < 3 || d % 3 != 2 || !(d % 4 == 0 || d % 4 == 3) {
        return Err(ModularError::InvalidDiscriminant(d));
    }
    let halved = d % 2 == 1;
    let mut k = 1u64;
    while k <= WITNESS_CAP {
        let candidate = Witness { d, k, halved };
        if candidate.norm() % 9 == 0 {
            return Ok(candidate);
        }
        k += 6;
    }
    Err(ModularError::NoWitness { d, cap: WITNESS_CAP })
}

/// Residuals of the class values against their integer polynomials.
#[derive(Clone, Debug)]
pub struct ClassValueReport {
    /// Discriminant magnitude checked.
    pub d: u64,
    /// Witness used for all evaluations.
    pub witness: Witness,
    /// `|p_d(beta(w/3))|`.
    pub class_poly_residual: Real,
    /// `|q(2 c(w/3))|` for the designated factor `q` of `C_d`.
    pub factor_residual: Real,
    /// `|C_d(x)|` at the companions `c1(w/6)/c(w/3)` and `-1/c1(w/6)`.
    pub companion_residuals: [Real; 2],
}

/// Confirm numerically that `beta(w/3)` is a root of `p_d`, that
/// `2 c(w/3)` is a root of the designated factor `q` of `C_d`, and that
/// both companion values are roots of `C_d = x^deg(p) p((x^3+2)/x)`.
///
/// Fails with [`ModularError::ResidualTooLarge`] naming the first value
/// whose residual is not below `tol`.
pub fn verify_class_value(
    ctx: &PrecCtx,
    d: u64,
    p_d: &IntPoly,
    q: &IntPoly,
    tol: &Real,
) -> Result<ClassValueReport, ModularError> {
    let witness = w_for_d(d)?;
    let tau3 = witness.tau_over(ctx, 3);
    let tau6 = witness.tau_over(ctx, 6);

    let beta = beta_eval(ctx, &tau3)?;
    let class_poly_residual = eval_poly_complex(p_d, &beta).abs();

    let c_w3 = c_eval(ctx, &tau3)?;
    let unit = c_w3.mul_i64(2);
    let factor_residual = eval_poly_complex(q, &unit).abs();

    let c1_w6 = c1_eval(ctx, &tau6)?;
    let cd = build_cd(p_d);
    let companion_a = c1_w6.div(&c_w3);
    let companion_b = c1_w6.inv().neg();
    let companion_residuals = [
        eval_poly_complex(&cd, &companion_a).abs(),
        eval_poly_complex(&cd, &companion_b).abs(),
    ];

    for (what, residual) in [
        ("class polynomial at beta(w/3)", &class_poly_residual),
        ("designated factor at 2c(w/3)", &factor_residual),
        ("C_d at c1(w/6)/c(w/3)", &companion_residuals[0]),
        ("C_d at -1/c1(w/6)", &companion_residuals[1]),
    ] {
        if residual.cmp(tol) != std::cmp::Ordering::Less {
            return Err(ModularError::ResidualTooLarge {
                what: format!("-{d}: {what}"),
                residual: residual.to_f64(),
            });
        }
    }

    Ok(ClassValueReport {
        d,
        witness,
        class_poly_residual,
        factor_residual,
        companion_residuals,
    })
}

/// `sqrt(n)` as a positive real at the context scale.
fn sqrt_u(ctx: &PrecCtx, n: u64) -> Real {
    Real::from_bigint(&BigInt::from(n), ctx.scale()).sqrt()
}

/// The primitive cube root of unity `(-1 + sqrt(-3)) / 2`.
fn omega(ctx: &PrecCtx) -> Complex {
    let scale = ctx.scale();
    Complex::new(
        Real::one(scale).neg().mul_pow2(-1),
        sqrt_u(ctx, 3).mul_pow2(-1),
    )
}

/// Among `r`, `r w`, `r w^2` (`w` the cube root of unity), the candidate
/// minimizing `|formula(candidate) - target|`, returned with its value.
fn pick_cube_root(
    ctx: &PrecCtx,
    principal: &Complex,
    target: &Complex,
    formula: impl Fn(&Complex) -> Complex,
) -> (Complex, Complex) {
    let om = omega(ctx);
    let mut best: Option<(Real, Complex, Complex)> = None;
    let mut root = principal.clone();
    for _ in 0..3 {
        let value = formula(&root);
        let dist = value.sub(target).abs();
        let better = match &best {
            None => true,
            Some((cur, _, _)) => dist.cmp(cur) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some((dist, root.clone(), value));
        }
        root = root.mul(&om);
    }
    let (_, root, value) = best.expect("three candidates examined");
    (root, value)
}

/// The closed form `(-1 - sqrt(-1) + sqrt(-2)) / sqrt(2)` of the singular
/// value `2 c(w/3)` for `-d = -8`; a root of `x^4 + 2x^2 + 4x + 2`.
pub fn radical_value_d8(ctx: &PrecCtx) -> Complex {
    let scale = ctx.scale();
    let sqrt2 = sqrt_u(ctx, 2);
    let numerator = Complex::new(
        Real::one(scale).neg(),
        sqrt2.sub(&Real::one(scale)),
    );
    numerator.div(&Complex::from_real(sqrt2))
}

/// Cardan solution of `y^3 + (1 - sqrt(-11)) y + 2 = 0` giving the
/// singular value `2 c(w/3)` for `-d = -11`.
///
/// Returns `(u, y)`: the selected cube root `u` of
/// `-1 - (4i + sqrt(11)) sqrt(3) / 9` (~= 0.7568 - 0.9552i) and the value
/// `y = u + beta / (3u)` with `beta = -1 + sqrt(-11)`.  The branch is the
/// one closest to the function value `2 c(w/3)`.
pub fn cardan_value_d11(ctx: &PrecCtx) -> Result<(Complex, Complex), ModularError> {
    let scale = ctx.scale();
    let sqrt3 = sqrt_u(ctx, 3);
    let sqrt11 = sqrt_u(ctx, 11);
    // u^3 = -1 - (4i + sqrt(11)) sqrt(3) / 9.
    let u_cubed = Complex::new(
        Real::one(scale).add(&sqrt11.mul(&sqrt3).div_i64(9)).neg(),
        sqrt3.mul_i64(4).div_i64(9).neg(),
    );
    let beta = Complex::new(Real::one(scale).neg(), sqrt11);
    let witness = w_for_d(11)?;
    let target = c_eval(ctx, &witness.tau_over(ctx, 3))?.mul_i64(2);
    Ok(pick_cube_root(ctx, &u_cubed.cbrt(), &target, |u| {
        u.add(&beta.div(&u.mul_i64(3)))
    }))
}

/// Radical form of the singular value `2 c(w/3)` for `-d = -23`:
/// `(w/6) A^(1/3) + (2 w^2/3)(2 + sqrt(-23)) A^(-1/3) + (-1 + sqrt(-23))/6`
/// with `w` the cube root of unity and
/// `A = -76 - 24 sqrt(-3) + 16 sqrt(-23) + 12 sqrt(69)`.
///
/// Returns the selected cube root `A^(1/3)` (~= 3.30315 + 1.116849i) and
/// the value; the branch is the one closest to the function value.
pub fn radical_value_d23(ctx: &PrecCtx) -> Result<(Complex, Complex), ModularError> {
    let scale = ctx.scale();
    let sqrt3 = sqrt_u(ctx, 3);
    let sqrt23 = sqrt_u(ctx, 23);
    let sqrt69 = sqrt_u(ctx, 69);
    let a = Complex::new(
        Real::from_i64(-76, scale).add(&sqrt69.mul_i64(12)),
        sqrt23.mul_i64(16).sub(&sqrt3.mul_i64(24)),
    );
    let om = omega(ctx);
    let om2 = om.mul(&om);
    let two_plus = Complex::new(Real::from_i64(2, scale), sqrt23.clone());
    let tail = Complex::new(Real::one(scale).neg(), sqrt23).div_i64(6);
    let witness = w_for_d(23)?;
    let target = c_eval(ctx, &witness.tau_over(ctx, 3))?.mul_i64(2);
    Ok(pick_cube_root(ctx, &a.cbrt(), &target, |r| {
        om.div_i64(6)
            .mul(r)
            .add(&om2.mul_i64(2).div_i64(3).mul(&two_plus).div(r))
            .add(&tail)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol_bits(scale: u32, bits: u32) -> Real {
        Real::one(scale).mul_pow2(-(bits as i32))
    }

    fn tol_1e40(scale: u32) -> Real {
        Real::from_ratio(
            &BigInt::from(1),
            &BigInt::from(10u8).pow(40),
            scale,
        )
    }

    #[test]
    fn witnesses_match_the_worked_discriminants() {
        assert_eq!(
            w_for_d(11).unwrap(),
            Witness {
                d: 11,
                k: 13,
                halved: true
            }
        );
        assert_eq!(
            w_for_d(8).unwrap(),
            Witness {
                d: 8,
                k: 13,
                halved: false
            }
        );
        assert_eq!(
            w_for_d(56).unwrap(),
            Witness {
                d: 56,
                k: 7,
                halved: false
            }
        );
        assert_eq!(w_for_d(11).unwrap().norm(), 45);
        assert_eq!(w_for_d(8).unwrap().norm(), 171);
        assert_eq!(w_for_d(56).unwrap().norm(), 63);
        assert_eq!(w_for_d(23).unwrap().k, 7);
        assert_eq!(w_for_d(92).unwrap().k, 7);
    }

    #[test]
    fn invalid_discriminants_are_rejected() {
        for d in [0, 1, 2, 4, 6, 7, 10, 15] {
            assert!(
                matches!(w_for_d(d), Err(ModularError::InvalidDiscriminant(_))),
                "-{d} should be rejected"
            );
        }
    }

    #[test]
    fn quartic_radical_form_is_a_root_and_matches_the_function_value() {
        let ctx = PrecCtx::new(512);
        let value = radical_value_d8(&ctx);
        let quartic = IntPoly::from_i64(&[2, 4, 2, 0, 1]);
        let residual = eval_poly_complex(&quartic, &value).abs();
        assert!(residual.cmp(&tol_1e40(ctx.scale())).is_lt());

        let witness = w_for_d(8).unwrap();
        let from_eta = c_eval(&ctx, &witness.tau_over(&ctx, 3))
            .unwrap()
            .mul_i64(2);
        assert!(value.sub(&from_eta).abs().cmp(&tol_1e40(ctx.scale())).is_lt());
    }

    #[test]
    fn cardan_branch_carries_the_quoted_digits() {
        let ctx = PrecCtx::new(512);
        let (root, value) = cardan_value_d11(&ctx).unwrap();
        assert_eq!(root.re().to_decimal(4), "0.7568");
        assert_eq!(root.im().to_decimal(4), "-0.9552");
        // The assembled Cardan value solves y^3 + (1 - sqrt(-11)) y + 2 = 0.
        let scale = ctx.scale();
        let coeff = Complex::new(Real::one(scale), sqrt_u(&ctx, 11).neg());
        let residual = value
            .powu(3)
            .add(&coeff.mul(&value))
            .add(&Complex::from_i64(2, 0, scale))
            .abs();
        assert!(residual.cmp(&tol_bits(scale, 400)).is_lt());
    }

    #[test]
    fn cube_root_selection_prefers_the_closest_branch() {
        let ctx = PrecCtx::new(256);
        let scale = ctx.scale();
        let principal = Complex::from_i64(2, 0, scale);
        let target = omega(&ctx).mul_i64(2);
        let (picked, value) = pick_cube_root(&ctx, &principal, &target, Clone::clone);
        assert!(picked.sub(&target).abs().cmp(&tol_bits(scale, 200)).is_lt());
        assert!(value.sub(&target).abs().cmp(&tol_bits(scale, 200)).is_lt());
    }

    #[test]
    fn class_values_vanish_for_the_smallest_discriminants() {
        let ctx = PrecCtx::new(512);
        let tol = tol_1e40(ctx.scale());
        // -d = -8: p = x^2 + 4x + 6, factor x^4 + 2x^2 + 4x + 2.
        let report = verify_class_value(
            &ctx,
            8,
            &IntPoly::from_i64(&[6, 4, 1]),
            &IntPoly::from_i64(&[2, 4, 2, 0, 1]),
            &tol,
        )
        .unwrap();
        assert_eq!(report.witness.k, 13);

        // -d = -11: p = x^2 + 2x + 12, factor the full sextic.
        let report = verify_class_value(
            &ctx,
            11,
            &IntPoly::from_i64(&[12, 2, 1]),
            &IntPoly::from_i64(&[4, 4, 12, 4, 2, 0, 1]),
            &tol,
        )
        .unwrap();
        // beta(w/3) = -1 + sqrt(-11) exactly.
        let beta = beta_eval(&ctx, &report.witness.tau_over(&ctx, 3)).unwrap();
        let exact = Complex::new(
            Real::one(ctx.scale()).neg(),
            sqrt_u(&ctx, 11),
        );
        assert!(beta.sub(&exact).abs().cmp(&tol).is_lt());
    }

    #[test]
    fn wrong_factor_reports_which_residual_failed() {
        let ctx = PrecCtx::new(256);
        let tol = tol_1e40(ctx.scale());
        let err = verify_class_value(
            &ctx,
            8,
            &IntPoly::from_i64(&[6, 4, 1]),
            &IntPoly::from_i64(&[1, 0, 1]), // x^2 + 1 has no root there
            &tol,
        )
        .unwrap_err();
        match err {
            ModularError::ResidualTooLarge { what, .. } => {
                assert!(what.contains("2c(w/3)"), "unexpected label: {what}");
            }
            other => panic!("expected ResidualTooLarge, got {other:?}"),
        }
    }
}
