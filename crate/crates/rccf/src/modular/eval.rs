//! Eta-quotient evaluators on the upper half-plane.
//!
//! All functions work at a fixed binary precision carried by [`PrecCtx`]:
//! arithmetic runs at `prec_bits + 64` guard bits, and `q`-products are
//! truncated once the dropped tail is below `2^-(prec_bits + 32)`.

use num_bigint::BigInt;

use super::ModularError;
use crate::hp::{pi, Complex, Real};
use crate::poly::IntPoly;

/// Default binary precision for evaluation contexts.
pub const DEFAULT_PREC_BITS: u32 = 512;

/// Guard bits added on top of the requested precision for all arithmetic.
const GUARD_BITS: u32 = 64;

/// Extra bits the truncated `q`-product tail must clear.
const TAIL_BITS: u32 = 32;

/// Hard cap on the number of factors in one eta product.
pub const ETA_TERM_CAP: u64 = 100_000;

/// Imaginary-part floor below which evaluation is refused, as a fraction.
const IM_FLOOR: (i64, i64) = (1, 20);

/// Shared precision context: requested precision, working scale, and a
/// cached high-precision value of pi.
#[derive(Clone, Debug)]
pub struct PrecCtx {
    prec_bits: u32,
    scale: u32,
    pi: Real,
}

impl PrecCtx {
    /// Context for the requested precision in bits (32 to 1<<20).
    pub fn new(prec_bits: u32) -> Self {
        assert!(
            (32..=1 << 20).contains(&prec_bits),
            "precision {prec_bits} out of range"
        );
        let scale = prec_bits + GUARD_BITS;
        PrecCtx {
            prec_bits,
            scale,
            pi: pi(scale),
        }
    }

    /// Requested precision in bits.
    pub fn prec_bits(&self) -> u32 {
        self.prec_bits
    }

    /// Working scale of all arithmetic (precision plus guard bits).
    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Pi at the working scale.
    pub fn pi(&self) -> &Real {
        &self.pi
    }

    /// A real number from a rational, at the working scale.
    pub fn real_ratio(&self, num: i64, den: i64) -> Real {
        Real::from_ratio(&BigInt::from(num), &BigInt::from(den), self.scale)
    }
}

/// A point of the upper half-plane at some working scale.
#[derive(Clone, Debug)]
pub struct Tau {
    z: Complex,
}

impl Tau {
    /// Wrap a complex point; fails unless its imaginary part is positive.
    pub fn new(z: Complex) -> Result<Tau, ModularError> {
        if z.im().is_zero() || z.im().is_negative() {
            return Err(ModularError::NotUpperHalfPlane(z.im().to_f64()));
        }
        Ok(Tau { z })
    }

    /// Point from floating-point coordinates, at the context scale.
    pub fn from_f64(ctx: &PrecCtx, re: f64, im: f64) -> Result<Tau, ModularError> {
        if !(im > 0.0) || !re.is_finite() {
            return Err(ModularError::NotUpperHalfPlane(im));
        }
        Tau::new(Complex::new(
            Real::from_f64(re, ctx.scale()),
            Real::from_f64(im, ctx.scale()),
        ))
    }

    /// The underlying complex point.
    pub fn complex(&self) -> &Complex {
        &self.z
    }

    /// Real part.
    pub fn re(&self) -> &Real {
        self.z.re()
    }

    /// Imaginary part (always positive).
    pub fn im(&self) -> &Real {
        self.z.im()
    }

    /// Working scale of the coordinates.
    pub fn scale(&self) -> u32 {
        self.z.scale()
    }

    /// `tau * num / den` for a positive rational scale factor.
    pub fn scale_ratio(&self, num: i64, den: i64) -> Tau {
        assert!(num > 0 && den > 0, "scale factor must be positive");
        Tau {
            z: self.z.mul_i64(num).div_i64(den),
        }
    }

    /// `tau + num / den`, a real translation.
    pub fn shift_ratio(&self, num: i64, den: i64) -> Tau {
        assert!(den > 0, "shift denominator must be positive");
        let shift = Real::from_ratio(&BigInt::from(num), &BigInt::from(den), self.scale());
        Tau {
            z: Complex::new(self.z.re().add(&shift), self.z.im().clone()),
        }
    }

    /// `-1 / tau`; stays in the upper half-plane.
    pub fn neg_inv(&self) -> Tau {
        Tau {
            z: self.z.inv().neg(),
        }
    }
}

/// `exp(2 pi i z / den)` at the context scale.
fn cis_over(ctx: &PrecCtx, z: &Complex, den: i64) -> Complex {
    let two_pi = ctx.pi().mul_i64(2);
    let e_re = two_pi.mul(z.im()).div_i64(den).neg();
    let e_im = two_pi.mul(z.re()).div_i64(den);
    Complex::new(e_re, e_im).exp(ctx.pi())
}

/// Number of product factors needed so the dropped tail is below
/// `2^-(prec_bits + TAIL_BITS)`, or the floor/cap error.
fn product_terms(ctx: &PrecCtx, im: &Real) -> Result<u64, ModularError> {
    let floor = ctx.real_ratio(IM_FLOOR.0, IM_FLOOR.1);
    if im.cmp(&floor) == std::cmp::Ordering::Less {
        return Err(ModularError::ImaginaryTooSmall {
            im: im.to_f64(),
            floor: IM_FLOOR.0 as f64 / IM_FLOOR.1 as f64,
        });
    }
    // |q| = exp(-2 pi Im tau), so each factor gains 2 pi Im(tau) / ln 2 bits.
    let bits_per_term = im.to_f64() * std::f64::consts::TAU / std::f64::consts::LN_2;
    let needed = ((ctx.prec_bits() + TAIL_BITS) as f64 / bits_per_term).ceil() as u64 + 2;
    if needed > ETA_TERM_CAP {
        return Err(ModularError::PrecisionUnreachable {
            needed,
            cap: ETA_TERM_CAP,
        });
    }
    Ok(needed)
}

/// Dedekind eta at `tau`: `exp(2 pi i tau / 24) * prod_{n=1..N} (1 - q^n)`
/// with `q = exp(2 pi i tau)` and `N` set by the context precision.
pub fn eta(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    assert_eq!(tau.scale(), ctx.scale(), "tau scale must match the context");
    let n_terms = product_terms(ctx, tau.im())?;
    let q = cis_over(ctx, tau.complex(), 1);
    let lead = cis_over(ctx, tau.complex(), 24);
    let one = Complex::one(ctx.scale());
    let mut qn = Complex::one(ctx.scale());
    let mut acc = Complex::one(ctx.scale());
    for _ in 0..n_terms {
        qn = qn.mul(&q);
        acc = acc.mul(&one.sub(&qn));
    }
    Ok(lead.mul(&acc))
}

/// The continued-fraction value as an eta quotient:
/// `c = eta(tau) eta^3(6 tau) / (eta(2 tau) eta^3(3 tau))`.
pub fn c_eval(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    let e1 = eta(ctx, tau)?;
    let e2 = eta(ctx, &tau.scale_ratio(2, 1))?;
    let e3 = eta(ctx, &tau.scale_ratio(3, 1))?;
    let e6 = eta(ctx, &tau.scale_ratio(6, 1))?;
    Ok(e1.mul(&e6.powu(3)).div(&e2.mul(&e3.powu(3))))
}

/// The companion value `c1(tau) = c(tau + 3/2)`.
pub fn c1_eval(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    c_eval(ctx, &tau.shift_ratio(3, 2))
}

/// The continued-fraction value by its direct product:
/// `q^(1/3) prod (1-q^(6n-1)) (1-q^(6n-5)) / (1-q^(6n-3))^2`.
///
/// Slower than [`c_eval`] and used to cross-check it: the two must agree
/// to the full context precision.
pub fn c_product(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    assert_eq!(tau.scale(), ctx.scale(), "tau scale must match the context");
    let n_terms = product_terms(ctx, tau.im())?;
    let blocks = n_terms / 6 + 2;
    let q = cis_over(ctx, tau.complex(), 1);
    let lead = cis_over(ctx, tau.complex(), 3);
    let one = Complex::one(ctx.scale());
    let q2 = q.mul(&q);
    // Powers q^(6n-5), q^(6n-3), q^(6n-1) advance by q^6 per block.
    let mut p5 = q.clone();
    let mut p3 = q.mul(&q2);
    let mut p1 = p3.mul(&q2);
    let q6 = p1.mul(&q);
    let mut num = Complex::one(ctx.scale());
    let mut den = Complex::one(ctx.scale());
    for _ in 0..blocks {
        num = num.mul(&one.sub(&p1)).mul(&one.sub(&p5));
        let f = one.sub(&p3);
        den = den.mul(&f.mul(&f));
        p5 = p5.mul(&q6);
        p3 = p3.mul(&q6);
        p1 = p1.mul(&q6);
    }
    Ok(lead.mul(&num).div(&den))
}

/// `alpha(tau) = 3 + 27 eta^3(9 tau) / eta^3(tau)`.
pub fn alpha_eval(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    let e9 = eta(ctx, &tau.scale_ratio(9, 1))?;
    let e1 = eta(ctx, tau)?;
    let three = Complex::from_i64(3, 0, ctx.scale());
    Ok(three.add(&e9.powu(3).div(&e1.powu(3)).mul_i64(27)))
}

/// `beta(tau) = 3 + eta^3(tau / 3) / eta^3(3 tau)`.
pub fn beta_eval(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    let ethird = eta(ctx, &tau.scale_ratio(1, 3))?;
    let e3 = eta(ctx, &tau.scale_ratio(3, 1))?;
    let three = Complex::from_i64(3, 0, ctx.scale());
    Ok(three.add(&ethird.powu(3).div(&e3.powu(3))))
}

/// The `j`-invariant through `alpha`: `j = x (x - 24)^3 / (x - 27)` at
/// `x = alpha^3(tau)`.
pub fn j_eval(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    let a3 = alpha_eval(ctx, tau)?.powu(3);
    let den = a3.sub(&Complex::from_i64(27, 0, ctx.scale()));
    let threshold = Real::one(ctx.scale()).mul_pow2(-((ctx.prec_bits() / 2) as i32));
    if den.abs().cmp(&threshold) == std::cmp::Ordering::Less {
        return Err(ModularError::NearPole {
            dist: den.abs().to_f64(),
        });
    }
    let shifted = a3.sub(&Complex::from_i64(24, 0, ctx.scale()));
    Ok(a3.mul(&shifted.powu(3)).div(&den))
}

/// `j(tau)` expressed through `c = c(tau)`:
/// `(64c^9 + 48c^6 + 228c^3 + 1)^3 (4c^3 + 1)^3 / (c^3 (c^3+1)^3 (8c^3-1)^6)`.
pub fn j_via_c(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let c = c_eval(ctx, tau)?;
    let c3 = c.powu(3);
    let c6 = c3.mul(&c3);
    let c9 = c6.mul(&c3);
    let head = c9
        .mul_i64(64)
        .add(&c6.mul_i64(48))
        .add(&c3.mul_i64(228))
        .add(&one);
    let quartic = c3.mul_i64(4).add(&one);
    let num = head.powu(3).mul(&quartic.powu(3));
    let den = c3
        .mul(&c3.add(&one).powu(3))
        .mul(&c3.mul_i64(8).sub(&one).powu(6));
    Ok(num.div(&den))
}

/// `j(3 tau)` expressed through `c = c(tau)`:
/// `(64c^9 + 48c^6 - 12c^3 + 1)^3 (4c^3 + 1)^3 / (c^9 (c^3+1) (8c^3-1)^2)`.
pub fn j_triple_via_c(ctx: &PrecCtx, tau: &Tau) -> Result<Complex, ModularError> {
    let scale = ctx.scale();
    let one = Complex::one(scale);
    let c = c_eval(ctx, tau)?;
    let c3 = c.powu(3);
    let c6 = c3.mul(&c3);
    let c9 = c6.mul(&c3);
    let head = c9
        .mul_i64(64)
        .add(&c6.mul_i64(48))
        .sub(&c3.mul_i64(12))
        .add(&one);
    let quartic = c3.mul_i64(4).add(&one);
    let num = head.powu(3).mul(&quartic.powu(3));
    let den = c9.mul(&c3.add(&one)).mul(&c3.mul_i64(8).sub(&one).powu(2));
    Ok(num.div(&den))
}

/// Evaluate an integer polynomial at a complex point by Horner's rule.
pub fn eval_poly_complex(p: &IntPoly, z: &Complex) -> Complex {
    let scale = z.scale();
    let Some(deg) = p.degree() else {
        return Complex::zero(scale);
    };
    let mut acc = Complex::zero(scale);
    for i in (0..=deg).rev() {
        let coeff = p.coeff(i);
        acc = acc.mul(z);
        if !num_traits::Zero::is_zero(&coeff) {
            acc = acc.add(&Complex::new(
                Real::from_bigint(&coeff, scale),
                Real::zero(scale),
            ));
        }
    }
    acc
}
