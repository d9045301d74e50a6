//! Numeric verification of the function equations tying together `c`,
//! `c1`, `alpha`, `beta`, and `j`.
//!
//! Each registry entry evaluates both sides of one identity independently
//! and reports the absolute difference; identities with several clauses
//! (transformation laws with multiple statements, multi-root checks) report
//! the worst clause.  Sampling keeps every derived argument above the
//! eta-evaluation floor, so a residual is always a roundoff measurement,
//! never a domain accident.

use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use super::eval::{
    alpha_eval, beta_eval, c1_eval, c_eval, eta, j_eval, j_triple_via_c, j_via_c, PrecCtx, Tau,
};
use super::ModularError;
use crate::hp::{Complex, Real};

/// Outcome of checking one identity over a set of sample points.
#[derive(Clone, Debug)]
pub struct IdentityRecord {
    /// Registry identifier.
    pub id: &'static str,
    /// Number of sample points checked.
    pub samples: usize,
    /// Largest residual over all samples and clauses.
    pub max_residual: Real,
    /// Number of samples where evaluation itself failed (domain errors).
    pub errors: usize,
    /// True when every sample evaluated and every residual is under
    /// tolerance.
    pub pass: bool,
}

type Checker = fn(&PrecCtx, &Tau) -> Result<Real, ModularError>;

/// Registry identifiers, in report order.
pub const REGISTRY_IDS: [&str; 20] = [
    "P1", "P2", "P3", "GXY", "E33", "E34", "E35", "E36", "P6", "P7", "P8a", "P8b", "P9", "P10",
    "P10a", "P11a", "P11b", "P12", "E42", "FER3",
];

fn registry() -> [(&'static str, Checker); 20] {
    [
        ("P1", check_p1),
        ("P2", check_p2),
        ("P3", check_p3),
        ("GXY", check_gxy),
        ("E33", check_e33),
        ("E34", check_e34),
        ("E35", check_e35),
        ("E36", check_e36),
        ("P6", check_p6),
        ("P7", check_p7),
        ("P8a", check_p8a),
        ("P8b", check_p8b),
        ("P9", check_p9),
        ("P10", check_p10),
        ("P10a", check_p10a),
        ("P11a", check_p11a),
        ("P11b", check_p11b),
        ("P12", check_p12),
        ("E42", check_e42),
        ("FER3", check_fer3),
    ]
}

fn max_real(items: impl IntoIterator<Item = Real>) -> Real {
    let mut best: Option<Real> = None;
    for item in items {
        best = Some(match best {
            None => item,
            Some(cur) => {
                if item.cmp(&cur) == std::cmp::Ordering::Greater {
                    item
                } else {
                    cur
                }
            }
        });
    }
    best.expect("at least one residual")
}

/// `u^2 + 2 u v^2 - v = 0` for `u = c(tau)`, `v = c(2 tau)`.
fn check_p1(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let u = c_eval(ctx, tau)?;
    let v = c_eval(ctx, &tau.scale_ratio(2, 1))?;
    Ok(u
        .mul(&u)
        .add(&u.mul(&v.mul(&v)).mul_i64(2))
        .sub(&v)
        .abs())
}

/// `c(-1/tau) = (1/2 - c(tau/2)) / (1 + c(tau/2))`.
fn check_p2(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let lhs = c_eval(ctx, &tau.neg_inv())?;
    let ch = c_eval(ctx, &tau.scale_ratio(1, 2))?;
    let half = Complex::from_real(Real::one(scale).mul_pow2(-1));
    let rhs = half.sub(&ch).div(&one.add(&ch));
    Ok(lhs.sub(&rhs).abs())
}

/// `c^3(-1/(6 tau)) = (1/8 - c^3(tau)) / (1 + c^3(tau))`.
fn check_p3(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let lhs = c_eval(ctx, &tau.scale_ratio(6, 1).neg_inv())?.powu(3);
    let c3 = c_eval(ctx, tau)?.powu(3);
    let eighth = Complex::from_real(Real::one(scale).mul_pow2(-3));
    let rhs = eighth.sub(&c3).div(&one.add(&c3));
    Ok(lhs.sub(&rhs).abs())
}

/// `x^3 (4y^2 + 2y + 1) = y (y^2 - y + 1)` for `x = c(tau)`, `y = c(3 tau)`.
fn check_gxy(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let x = c_eval(ctx, tau)?;
    let y = c_eval(ctx, &tau.scale_ratio(3, 1))?;
    let y2 = y.mul(&y);
    let lhs = x.powu(3).mul(&y2.mul_i64(4).add(&y.mul_i64(2)).add(&one));
    let rhs = y.mul(&y2.sub(&y).add(&one));
    Ok(lhs.sub(&rhs).abs())
}

/// `alpha^3 - 27 = 729 c^3 / ((c^3 + 1)(8 c^3 - 1)^2)`.
fn check_e33(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let a3 = alpha_eval(ctx, tau)?.powu(3);
    let c3 = c_eval(ctx, tau)?.powu(3);
    let rhs = c3
        .mul_i64(729)
        .div(&c3.add(&one).mul(&c3.mul_i64(8).sub(&one).powu(2)));
    Ok(a3.sub(&Complex::from_i64(27, 0, scale)).sub(&rhs).abs())
}

/// `beta = (4 c^3 + 1) / c`.
fn check_e34(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let b = beta_eval(ctx, tau)?;
    let c = c_eval(ctx, tau)?;
    let rhs = c.powu(3).mul_i64(4).add(&one).div(&c);
    Ok(b.sub(&rhs).abs())
}

/// `j(tau)` from `alpha` against its expression in `c(tau)`.
fn check_e35(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    Ok(j_eval(ctx, tau)?.sub(&j_via_c(ctx, tau)?).abs())
}

/// `j(3 tau)` from `alpha` against its expression in `c(tau)`.
fn check_e36(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    Ok(j_eval(ctx, &tau.scale_ratio(3, 1))?
        .sub(&j_triple_via_c(ctx, tau)?)
        .abs())
}

/// The four involution statements swapping `alpha` and `beta` under
/// `tau -> -1/(3 tau)`.
fn check_p6(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let twenty_seven = Complex::from_i64(27, 0, scale);
    let s = tau.scale_ratio(3, 1).neg_inv();
    let a = alpha_eval(ctx, tau)?;
    let b = beta_eval(ctx, tau)?;
    let a_s = alpha_eval(ctx, &s)?;
    let b_s = beta_eval(ctx, &s)?;
    let a3 = a.powu(3);
    let b3 = b.powu(3);
    let r1 = a_s.sub(&b).abs();
    let r2 = b_s.sub(&a).abs();
    let r3 = a_s
        .powu(3)
        .sub(&a3.mul_i64(27).div(&a3.sub(&twenty_seven)))
        .abs();
    let r4 = b_s
        .powu(3)
        .sub(&b3.mul_i64(27).div(&b3.sub(&twenty_seven)))
        .abs();
    Ok(max_real([r1, r2, r3, r4]))
}

/// `beta(-1/tau) = 3 (beta + 6) / (beta - 3) = alpha(tau / 3)`.
fn check_p7(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let lhs = beta_eval(ctx, &tau.neg_inv())?;
    let b = beta_eval(ctx, tau)?;
    let six = Complex::from_i64(6, 0, scale);
    let three = Complex::from_i64(3, 0, scale);
    let r1 = lhs.sub(&b.add(&six).mul_i64(3).div(&b.sub(&three))).abs();
    let r2 = lhs.sub(&alpha_eval(ctx, &tau.scale_ratio(1, 3))?).abs();
    Ok(max_real([r1, r2]))
}

/// `1/c - 1 - 2c = eta(tau/3) eta(2 tau/3) / (eta(3 tau) eta(6 tau))`.
fn check_p8a(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let c = c_eval(ctx, tau)?;
    let lhs = c.inv().sub(&one).sub(&c.mul_i64(2));
    let rhs = eta(ctx, &tau.scale_ratio(1, 3))?
        .mul(&eta(ctx, &tau.scale_ratio(2, 3))?)
        .div(&eta(ctx, &tau.scale_ratio(3, 1))?.mul(&eta(ctx, &tau.scale_ratio(6, 1))?));
    Ok(lhs.sub(&rhs).abs())
}

/// `1/c^3 - 7 - 8c^3 = eta^4(tau) eta^4(2 tau) / (eta^4(3 tau) eta^4(6 tau))`.
fn check_p8b(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let c3 = c_eval(ctx, tau)?.powu(3);
    let lhs = c3
        .inv()
        .sub(&Complex::from_i64(7, 0, scale))
        .sub(&c3.mul_i64(8));
    let rhs = eta(ctx, tau)?
        .mul(&eta(ctx, &tau.scale_ratio(2, 1))?)
        .div(&eta(ctx, &tau.scale_ratio(3, 1))?.mul(&eta(ctx, &tau.scale_ratio(6, 1))?))
        .powu(4);
    Ok(lhs.sub(&rhs).abs())
}

/// `beta(-1/tau) = 3 (4c^3 + 6c + 1) / ((2c - 1)^2 (c + 1))`.
fn check_p9(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let lhs = beta_eval(ctx, &tau.neg_inv())?;
    let c = c_eval(ctx, tau)?;
    let num = c.powu(3).mul_i64(4).add(&c.mul_i64(6)).add(&one).mul_i64(3);
    let den = c.mul_i64(2).sub(&one).powu(2).mul(&c.add(&one));
    Ok(lhs.sub(&num.div(&den)).abs())
}

/// `beta(2 tau) = 1/c^2 - 2c`.
fn check_p10(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let lhs = beta_eval(ctx, &tau.scale_ratio(2, 1))?;
    let c = c_eval(ctx, tau)?;
    let rhs = c.powu(2).inv().sub(&c.mul_i64(2));
    Ok(lhs.sub(&rhs).abs())
}

/// `x^3 + y^3 - x^2 y^2 + 9xy - 54 = 0` on both `(beta(tau), beta(2 tau))`
/// and `(alpha(tau), alpha(2 tau))`.
fn check_p10a(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let curve = |x: &Complex, y: &Complex| -> Real {
        let xy = x.mul(y);
        x.powu(3)
            .add(&y.powu(3))
            .sub(&xy.mul(&xy))
            .add(&xy.mul_i64(9))
            .sub(&Complex::from_i64(54, 0, scale))
            .abs()
    };
    let double = tau.scale_ratio(2, 1);
    let r1 = curve(&beta_eval(ctx, tau)?, &beta_eval(ctx, &double)?);
    let r2 = curve(&alpha_eval(ctx, tau)?, &alpha_eval(ctx, &double)?);
    Ok(max_real([r1, r2]))
}

/// `c + c1 + 2 c^2 c1^2 = 0`.
fn check_p11a(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let c = c_eval(ctx, tau)?;
    let c1 = c1_eval(ctx, tau)?;
    Ok(c
        .add(&c1)
        .add(&c.powu(2).mul(&c1.powu(2)).mul_i64(2))
        .abs())
}

/// `2 c^2(tau) c1(tau/2) + c1^2(tau/2) = c(tau)`.
fn check_p11b(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let c = c_eval(ctx, tau)?;
    let c1h = c1_eval(ctx, &tau.scale_ratio(1, 2))?;
    Ok(c
        .powu(2)
        .mul(&c1h)
        .mul_i64(2)
        .add(&c1h.powu(2))
        .sub(&c)
        .abs())
}

/// The three stated roots of `4x^3 - beta(tau) x + 1`: `c(tau)`,
/// `c1(tau/2) / (2 c(tau))`, and `-1 / (2 c1(tau/2))`.
fn check_p12(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let b = beta_eval(ctx, tau)?;
    let c = c_eval(ctx, tau)?;
    let c1h = c1_eval(ctx, &tau.scale_ratio(1, 2))?;
    let cubic = |x: &Complex| -> Real { x.powu(3).mul_i64(4).sub(&b.mul(x)).add(&one).abs() };
    let r1 = cubic(&c);
    let r2 = cubic(&c1h.div(&c.mul_i64(2)));
    let r3 = cubic(&c1h.mul_i64(2).inv().neg());
    Ok(max_real([r1, r2, r3]))
}

/// `c(tau) c1(tau) = -c(2 tau)`.
fn check_e42(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let c = c_eval(ctx, tau)?;
    let c1 = c1_eval(ctx, tau)?;
    let c2 = c_eval(ctx, &tau.scale_ratio(2, 1))?;
    Ok(c.mul(&c1).add(&c2).abs())
}

/// The Fermat cubic `27 alpha^3 + 27 beta^3 = alpha^3 beta^3`.
fn check_fer3(ctx: &PrecCtx, tau: &Tau) -> Result<Real, ModularError> {
    let a3 = alpha_eval(ctx, tau)?.powu(3);
    let b3 = beta_eval(ctx, tau)?.powu(3);
    Ok(a3
        .mul_i64(27)
        .add(&b3.mul_i64(27))
        .sub(&a3.mul(&b3))
        .abs())
}

/// Deterministic sample points for identity verification.
///
/// Points are drawn from a fixed-seed generator with real part in
/// `[-1/8, 1/8)` and imaginary part in `[0.65, 1.05)`; on that window every
/// derived argument used by the registry — down to `-1/(9 tau)` — stays
/// above the eta floor.
pub fn sample_taus(ctx: &PrecCtx, count: usize, seed: u64) -> Vec<Tau> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = i64::from(rng.next_u32() & 0xF_FFFF); // 20 bits
            let t = i64::from(rng.next_u32()) % 104_858; // span 0.4 of 2^18
            let re = ctx.real_ratio(a - (1 << 19), 1 << 22);
            let im = ctx.real_ratio(170_394 + t, 1 << 18);
            Tau::new(Complex::new(re, im)).expect("sampled point is in the upper half-plane")
        })
        .collect()
}

/// Check every registry identity on the given points.
///
/// Records come back in registry order. A record passes when every sample
/// evaluated without a domain error and the worst residual is below `tol`.
/// Evaluation failures are counted, not raised: a report is always
/// produced.
pub fn verify_identities(ctx: &PrecCtx, taus: &[Tau], tol: &Real) -> Vec<IdentityRecord> {
    assert!(!taus.is_empty(), "at least one sample point is required");
    registry()
        .par_iter()
        .map(|(id, check)| {
            let mut max_residual = Real::zero(ctx.scale());
            let mut errors = 0usize;
            for tau in taus {
                match check(ctx, tau) {
                    Ok(r) => {
                        if r.cmp(&max_residual) == std::cmp::Ordering::Greater {
                            max_residual = r;
                        }
                    }
                    Err(_) => errors += 1,
                }
            }
            let pass = errors == 0 && max_residual.cmp(tol) == std::cmp::Ordering::Less;
            IdentityRecord {
                id,
                samples: taus.len(),
                max_residual,
                errors,
                pass,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_deterministic_and_stays_in_the_window() {
        let ctx = PrecCtx::new(64);
        let a = sample_taus(&ctx, 20, 7);
        let b = sample_taus(&ctx, 20, 7);
        let other = sample_taus(&ctx, 20, 8);
        let lo = ctx.real_ratio(13, 20);
        let hi = ctx.real_ratio(21, 20);
        let eighth = ctx.real_ratio(1, 8);
        let mut saw_difference = false;
        for ((x, y), z) in a.iter().zip(&b).zip(&other) {
            assert_eq!(x.re().mant(), y.re().mant());
            assert_eq!(x.im().mant(), y.im().mant());
            if x.re().mant() != z.re().mant() {
                saw_difference = true;
            }
            assert!(x.im().cmp(&lo).is_ge() && x.im().cmp(&hi).is_lt());
            assert!(x.re().abs().cmp(&eighth).is_le());
        }
        assert!(saw_difference, "different seeds gave identical samples");
    }

    #[test]
    fn every_identity_passes_on_a_small_sample() {
        let ctx = PrecCtx::new(512);
        let taus = sample_taus(&ctx, 3, 0x52_43_43_46);
        let tol = Real::from_ratio(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(10u8).pow(100),
            ctx.scale(),
        );
        let records = verify_identities(&ctx, &taus, &tol);
        assert_eq!(records.len(), REGISTRY_IDS.len());
        for (record, want_id) in records.iter().zip(REGISTRY_IDS) {
            assert_eq!(record.id, want_id);
            assert_eq!(record.samples, 3);
            assert!(
                record.pass,
                "{} failed: max residual {} with {} errors",
                record.id,
                record.max_residual.to_decimal(40),
                record.errors
            );
        }
    }

    #[test]
    fn residuals_shrink_when_precision_doubles() {
        let lo = PrecCtx::new(256);
        let hi = PrecCtx::new(512);
        let tau_lo = Tau::new(Complex::new(lo.real_ratio(1, 10), lo.real_ratio(9, 10)))
            .unwrap();
        let tau_hi = Tau::new(Complex::new(hi.real_ratio(1, 10), hi.real_ratio(9, 10)))
            .unwrap();
        let r_lo = check_p1(&lo, &tau_lo).unwrap();
        let r_hi = check_p1(&hi, &tau_hi).unwrap();
        assert!(!r_lo.is_zero(), "degenerate low-precision residual");
        // Doubling 256 -> 512 bits must shrink the residual by >= 2^128.
        // Lift the coarse residual to the fine scale (exact) and compare
        // there, where neither side underflows.
        let r_lo_lifted = Real::from_ratio(
            r_lo.mant(),
            &(num_bigint::BigInt::from(1) << lo.scale() as usize),
            hi.scale(),
        );
        let shrunk = r_lo_lifted.mul_pow2(-128);
        assert!(
            r_hi.cmp(&shrunk) == std::cmp::Ordering::Less,
            "residual did not scale with precision: {} vs {}",
            r_hi.to_decimal(200),
            r_lo.to_decimal(200)
        );
    }
}
