//! Fixed-point high-precision complex numbers built on [`Real`].
//!
//! The two components share one binary scale.  Square and cube roots take
//! the principal branch: the seed comes from `f64` polar arithmetic (so the
//! argument uses `atan2`'s branch, `(-pi, pi]`) and Newton iteration
//! sharpens it to full precision without leaving the root's basin.

use num_bigint::BigInt;
use std::fmt;

use super::real::Real;

/// A complex number with fixed-point components of equal scale.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    re: Real,
    im: Real,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({})", self.to_decimal(12))
    }
}

impl Complex {
    /// Build from components (scales must agree).
    pub fn new(re: Real, im: Real) -> Self {
        assert_eq!(re.scale(), im.scale(), "mixed fixed-point scales");
        Complex { re, im }
    }

    /// Zero at the given scale.
    pub fn zero(scale: u32) -> Self {
        Complex::new(Real::zero(scale), Real::zero(scale))
    }

    /// One at the given scale.
    pub fn one(scale: u32) -> Self {
        Complex::new(Real::one(scale), Real::zero(scale))
    }

    /// The imaginary unit at the given scale.
    pub fn i(scale: u32) -> Self {
        Complex::new(Real::zero(scale), Real::one(scale))
    }

    /// The Gaussian integer `re + im*i` at the given scale.
    pub fn from_i64(re: i64, im: i64, scale: u32) -> Self {
        Complex::new(Real::from_i64(re, scale), Real::from_i64(im, scale))
    }

    /// Embed a real number.
    pub fn from_real(re: Real) -> Self {
        let scale = re.scale();
        Complex::new(re, Real::zero(scale))
    }

    /// Real part.
    pub fn re(&self) -> &Real {
        &self.re
    }

    /// Imaginary part.
    pub fn im(&self) -> &Real {
        &self.im
    }

    /// The common scale of the components.
    pub fn scale(&self) -> u32 {
        self.re.scale()
    }

    /// True when both components are exactly zero.
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Sum.
    pub fn add(&self, other: &Complex) -> Complex {
        Complex::new(self.re.add(&other.re), self.im.add(&other.im))
    }

    /// Difference.
    pub fn sub(&self, other: &Complex) -> Complex {
        Complex::new(self.re.sub(&other.re), self.im.sub(&other.im))
    }

    /// Negation.
    pub fn neg(&self) -> Complex {
        Complex::new(self.re.neg(), self.im.neg())
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Complex {
        Complex::new(self.re.clone(), self.im.neg())
    }

    /// Product.
    pub fn mul(&self, other: &Complex) -> Complex {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        Complex::new(re, im)
    }

    /// Product with a real.
    pub fn mul_real(&self, other: &Real) -> Complex {
        Complex::new(self.re.mul(other), self.im.mul(other))
    }

    /// Product with a machine integer (exact).
    pub fn mul_i64(&self, v: i64) -> Complex {
        Complex::new(self.re.mul_i64(v), self.im.mul_i64(v))
    }

    /// Product with a big integer (exact).
    pub fn mul_bigint(&self, v: &BigInt) -> Complex {
        Complex::new(self.re.mul_bigint(v), self.im.mul_bigint(v))
    }

    /// Quotient by a machine integer.
    pub fn div_i64(&self, v: i64) -> Complex {
        Complex::new(self.re.div_i64(v), self.im.div_i64(v))
    }

    /// Multiply by `2^k`.
    pub fn mul_pow2(&self, k: i32) -> Complex {
        Complex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    /// Squared absolute value `re^2 + im^2`.
    pub fn abs2(&self) -> Real {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Absolute value, computed exactly on the integer mantissas so that
    /// magnitudes far below one unit of the scale do not underflow to zero
    /// the way a same-scale `abs2` would.
    pub fn abs(&self) -> Real {
        let a = self.re.mant();
        let b = self.im.mant();
        let sum = (a * a + b * b)
            .to_biguint()
            .expect("sum of squares is non-negative");
        Real::from_mant(BigInt::from(sum.sqrt()), self.scale())
    }

    /// Multiplicative inverse.  Panics on zero.
    pub fn inv(&self) -> Complex {
        let a2 = self.abs2();
        Complex::new(self.re.div(&a2), self.im.neg().div(&a2))
    }

    /// Quotient.  Panics on a zero divisor.
    pub fn div(&self, other: &Complex) -> Complex {
        let a2 = other.abs2();
        let num = self.mul(&other.conj());
        Complex::new(num.re.div(&a2), num.im.div(&a2))
    }

    /// Integer power by repeated squaring.
    pub fn powu(&self, mut e: u64) -> Complex {
        let mut base = self.clone();
        let mut acc = Complex::one(self.scale());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `e^z = e^re (cos im + i sin im)`; `pi` must carry the same scale.
    pub fn exp(&self, pi: &Real) -> Complex {
        let mag = self.re.exp();
        let (s, c) = self.im.sin_cos(pi);
        Complex::new(mag.mul(&c), mag.mul(&s))
    }

    /// `f64` approximations of the components (for branch seeds).
    pub fn to_f64_parts(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    fn newton_seed(&self, modulus_root: impl Fn(f64) -> f64, angle_div: f64) -> Complex {
        let (re, im) = self.to_f64_parts();
        let r = re.hypot(im);
        assert!(
            r.is_finite() && r > 0.0,
            "root seed needs a nonzero value within f64 range"
        );
        let theta = im.atan2(re) / angle_div;
        let rr = modulus_root(r);
        Complex::new(
            Real::from_f64(rr * theta.cos(), self.scale()),
            Real::from_f64(rr * theta.sin(), self.scale()),
        )
    }

    /// Principal square root by Newton iteration from an `f64` seed.
    /// Panics on zero or when `|z|` is outside the `f64` range.
    pub fn sqrt(&self) -> Complex {
        let mut w = self.newton_seed(f64::sqrt, 2.0);
        for _ in 0..12 {
            // w <- (w + z/w) / 2
            w = w.add(&self.div(&w)).mul_pow2(-1);
        }
        w
    }

    /// Principal cube root by Newton iteration from an `f64` seed.
    /// Panics on zero or when `|z|` is outside the `f64` range.
    pub fn cbrt(&self) -> Complex {
        let mut w = self.newton_seed(f64::cbrt, 3.0);
        for _ in 0..12 {
            // w <- (2w + z/w^2) / 3
            let w2 = w.mul(&w);
            w = w.mul_i64(2).add(&self.div(&w2)).div_i64(3);
        }
        w
    }

    /// Fixed-point decimal rendering `re + im i`.
    pub fn to_decimal(&self, digits: u32) -> String {
        let re = self.re.to_decimal(digits);
        let im = self.im.to_decimal(digits);
        if let Some(stripped) = im.strip_prefix('-') {
            format!("{re} - {stripped} i")
        } else {
            format!("{re} + {im} i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hp::real::pi;
    use std::cmp::Ordering;

    const SCALE: u32 = 768;

    fn oracle(re: &str, im: &str) -> Complex {
        Complex::new(
            Real::from_decimal_str(re, SCALE).unwrap(),
            Real::from_decimal_str(im, SCALE).unwrap(),
        )
    }

    fn close(a: &Complex, b: &Complex, bits: u32) {
        let diff = a.sub(b).abs();
        let tol = Real::one(SCALE).mul_pow2(-(bits as i32));
        assert!(
            diff.cmp(&tol) == Ordering::Less,
            "difference {} exceeds 2^-{}",
            diff.to_decimal(210),
            bits
        );
    }

    fn from_ratio_pair(rn: i64, rd: i64, im_n: i64, im_d: i64) -> Complex {
        Complex::new(
            Real::from_ratio(&BigInt::from(rn), &BigInt::from(rd), SCALE),
            Real::from_ratio(&BigInt::from(im_n), &BigInt::from(im_d), SCALE),
        )
    }

    #[test]
    fn principal_cube_roots_match_reference() {
        let cases: &[(i64, i64, i64, i64, &str, &str)] = &[
            (-153, 2, 49, 4,
             "2.3238492105706569810406408676720792250104827866825861647665565346502871856972040884131060072053584604091117544082284836410905206243523545119992290927305448280139807513785477245185922622999287346316541",
             "3.5739704769631233103241147937166281459553141068756647798195862451622818124548357135366078967315514603303867068598405365742178511003764259862339391211900836072128518884005528206420804857697985278424921"),
            (3, 1, -4, 1,
             "1.6289371459221758752146093717175049715341250989328286402729239254657494332710775412461283026664513909253219227919746262607269692019626661135534808744365010025925807338203882129088668978349603104511285",
             "-0.52017450230454583954569417015944746788803108443946293904684398460771501851208163356840187922986691856209853316547042768191238115472116147728663138721892101087164708765552987450829755865786314045698401"),
            (-8, 1, 1, 1000,
             "1.0000721705195509825743842304491310160383652549145297690291171180914721757316022790368806649255846967587544909491026875962424854504454518777933152799620596099449673518577728211061125769095412951561391",
             "1.7320091439093638247589553267147820455264779137508053052419643530320409001646137891850477905735086148591774855362099613756245343693995121746896528965683389329792874584106831202811194029515792614604589"),
            (-8, 1, -1, 1000,
             "1.0000721705195509825743842304491310160383652549145297690291171180914721757316022790368806649255846967587544909491026875962424854504454518777933152799620596099449673518577728211061125769095412951561391",
             "-1.7320091439093638247589553267147820455264779137508053052419643530320409001646137891850477905735086148591774855362099613756245343693995121746896528965683389329792874584106831202811194029515792614604589"),
            (0, 1, 27, 1,
             "2.5980762113533159402911695122588085504142078807155709420837104691778995253632000556217192801358728635134392121231100545449549176424984287182174832681415604727921398478534583731019622301516270123848975",
             "1.5000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000000"),
        ];
        for (rn, rd, im_n, im_d, want_re, want_im) in cases {
            let z = from_ratio_pair(*rn, *rd, *im_n, *im_d);
            let r = z.cbrt();
            close(&r, &oracle(want_re, want_im), 650);
            // Self-consistency: the cube returns the input.
            close(&r.powu(3), &z, 640);
        }
    }

    #[test]
    fn principal_square_roots_match_reference() {
        let cases: &[(i64, i64, i64, i64, &str, &str)] = &[
            (3, 1, -4, 1, "2.0", "-1.0"),
            (-5, 1, 12, 1, "2.0", "3.0"),
            (-9, 1, 1, 1000,
             "0.00016666666640946502196533809892143491920506621020363525808444462345291129522588998588808641622452082120022437339004802609301712229490959049066141749311295043541684385238586544881892017409863021922494943",
             "3.0000000046296296117684043224430125171177915407084266847384197427016116532365233366383772633997205715235435677075435527973184766149446382770080620642612430627629553110707511707254158385113288841941287"),
            (-9, 1, -1, 1000,
             "0.00016666666640946502196533809892143491920506621020363525808444462345291129522588998588808641622452082120022437339004802609301712229490959049066141749311295043541684385238586544881892017409863021922494943",
             "-3.0000000046296296117684043224430125171177915407084266847384197427016116532365233366383772633997205715235435677075435527973184766149446382770080620642612430627629553110707511707254158385113288841941287"),
        ];
        for (rn, rd, im_n, im_d, want_re, want_im) in cases {
            let z = from_ratio_pair(*rn, *rd, *im_n, *im_d);
            let r = z.sqrt();
            close(&r, &oracle(want_re, want_im), 650);
            close(&r.mul(&r), &z, 640);
        }
        // Exact negative real: the principal branch lands on +i sqrt.
        let m4 = Complex::from_i64(-4, 0, SCALE);
        close(&m4.sqrt(), &Complex::from_i64(0, 2, SCALE), 700);
    }

    #[test]
    fn field_axioms_hold() {
        let z = from_ratio_pair(-355, 113, 17, 9);
        let w = from_ratio_pair(22, 7, -5, 3);
        close(&z.mul(&w).div(&w), &z, 720);
        close(&z.mul(&z.inv()), &Complex::one(SCALE), 720);
        close(&z.mul(&w), &w.mul(&z), 760);
        let p = Complex::from_i64(1, 1, SCALE).powu(8);
        close(&p, &Complex::from_i64(16, 0, SCALE), 740);
        close(&z.conj().conj(), &z, 768);
        let five = Complex::from_i64(3, -4, SCALE).abs();
        close(
            &Complex::from_real(five),
            &Complex::from_i64(5, 0, SCALE),
            740,
        );
    }

    #[test]
    fn exponential_laws_hold() {
        let pi = pi(SCALE);
        // e^(i pi) = -1.
        let z = Complex::new(Real::zero(SCALE), pi.clone());
        close(&z.exp(&pi), &Complex::from_i64(-1, 0, SCALE), 730);
        // e^(z + w) = e^z e^w.
        let z = from_ratio_pair(-3, 7, 9, 5);
        let w = from_ratio_pair(1, 3, -22, 7);
        close(
            &z.add(&w).exp(&pi),
            &z.exp(&pi).mul(&w.exp(&pi)),
            720,
        );
    }

    #[test]
    fn rendering_shows_both_components() {
        let z = Complex::from_i64(2, -3, SCALE);
        assert_eq!(z.to_decimal(2), "2.00 - 3.00 i");
        assert_eq!(z.conj().to_decimal(2), "2.00 + 3.00 i");
    }
}
