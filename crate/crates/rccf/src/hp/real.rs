//! Fixed-point high-precision real numbers.
//!
//! A [`Real`] stores `mantissa * 2^(-scale)` with an explicit binary scale.
//! All arithmetic between two values requires equal scales (enforced by
//! assertion — mixing scales is a programming error, not a data error), and
//! every operation rounds to nearest at the last retained bit, so the error
//! of a single operation is at most half an ulp.  Callers are expected to
//! pick `scale = wanted precision + guard bits` and tolerate the small
//! accumulated error in the guard area.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Round-to-nearest integer division (ties away from zero).
pub(crate) fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    assert!(!d.is_zero(), "division by zero");
    let (q, r) = n.div_rem(d);
    if (&r << 1u8).magnitude() >= d.magnitude() {
        let bump = if (n.sign() == Sign::Minus) == (d.sign() == Sign::Minus) {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        q + bump
    } else {
        q
    }
}

/// Round-to-nearest right shift by `k` bits (BigInt `>>` floors, so adding
/// half first gives round-half-up for either sign).
pub(crate) fn shr_round(x: &BigInt, k: u32) -> BigInt {
    if k == 0 {
        return x.clone();
    }
    (x + (BigInt::one() << (k - 1) as usize)) >> (k as usize)
}

/// A fixed-point real number `mant * 2^(-scale)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Real {
    mant: BigInt,
    scale: u32,
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} @ {})", self.to_decimal(12), self.scale)
    }
}

impl Real {
    /// Zero at the given scale.
    pub fn zero(scale: u32) -> Self {
        Real {
            mant: BigInt::zero(),
            scale,
        }
    }

    /// One at the given scale.
    pub fn one(scale: u32) -> Self {
        Real {
            mant: BigInt::one() << scale as usize,
            scale,
        }
    }

    /// The integer `v` at the given scale.
    pub fn from_i64(v: i64, scale: u32) -> Self {
        Real {
            mant: BigInt::from(v) << scale as usize,
            scale,
        }
    }

    /// The integer `v` at the given scale.
    pub fn from_bigint(v: &BigInt, scale: u32) -> Self {
        Real {
            mant: v << scale as usize,
            scale,
        }
    }

    /// A real from a raw mantissa: the value `mant * 2^-scale`.
    pub(crate) fn from_mant(mant: BigInt, scale: u32) -> Self {
        Real { mant, scale }
    }

    /// The exact rational `num / den` rounded to the given scale.
    pub fn from_ratio(num: &BigInt, den: &BigInt, scale: u32) -> Self {
        Real {
            mant: div_round(&(num << scale as usize), den),
            scale,
        }
    }

    /// Exact conversion of a finite `f64` (rounded only if `scale` cannot
    /// hold all its bits).
    pub fn from_f64(x: f64, scale: u32) -> Self {
        assert!(x.is_finite(), "cannot convert a non-finite f64");
        if x == 0.0 {
            return Real::zero(scale);
        }
        let bits = x.to_bits();
        let sign_neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1 << 52), biased - 1075)
        };
        let mut mant = BigInt::from(m);
        let shift = e + scale as i64;
        if shift >= 0 {
            mant <<= shift as usize;
        } else {
            mant = shr_round(&mant, (-shift) as u32);
        }
        if sign_neg {
            mant = -mant;
        }
        Real { mant, scale }
    }

    /// Parse a plain decimal string (`-?digits[.digits]`).
    pub fn from_decimal_str(s: &str, scale: u32) -> Option<Self> {
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return None;
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return None;
        }
        let digits: String = format!("{int_part}{frac_part}");
        let num: BigInt = if digits.is_empty() {
            BigInt::zero()
        } else {
            digits.parse().ok()?
        };
        let den = BigInt::from(10u32).pow(frac_part.len() as u32);
        let num = if neg { -num } else { num };
        Some(Real::from_ratio(&num, &den, scale))
    }

    /// The scale (fractional bits) of this value.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    /// Raw mantissa (the value is `mant * 2^(-scale)`).
    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    fn check(&self, other: &Real) {
        assert_eq!(self.scale, other.scale, "mixed fixed-point scales");
    }

    /// True when the value is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    /// True when the value is negative.
    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    /// Sum.
    pub fn add(&self, other: &Real) -> Real {
        self.check(other);
        Real {
            mant: &self.mant + &other.mant,
            scale: self.scale,
        }
    }

    /// Difference.
    pub fn sub(&self, other: &Real) -> Real {
        self.check(other);
        Real {
            mant: &self.mant - &other.mant,
            scale: self.scale,
        }
    }

    /// Negation.
    pub fn neg(&self) -> Real {
        Real {
            mant: -&self.mant,
            scale: self.scale,
        }
    }

    /// Absolute value.
    pub fn abs(&self) -> Real {
        Real {
            mant: self.mant.abs(),
            scale: self.scale,
        }
    }

    /// Product, rounded to nearest.
    pub fn mul(&self, other: &Real) -> Real {
        self.check(other);
        Real {
            mant: shr_round(&(&self.mant * &other.mant), self.scale),
            scale: self.scale,
        }
    }

    /// Quotient, rounded to nearest.  Panics on division by zero.
    pub fn div(&self, other: &Real) -> Real {
        self.check(other);
        Real {
            mant: div_round(&(&self.mant << self.scale as usize), &other.mant),
            scale: self.scale,
        }
    }

    /// Product with a machine integer (exact).
    pub fn mul_i64(&self, v: i64) -> Real {
        Real {
            mant: &self.mant * BigInt::from(v),
            scale: self.scale,
        }
    }

    /// Product with a big integer (exact).
    pub fn mul_bigint(&self, v: &BigInt) -> Real {
        Real {
            mant: &self.mant * v,
            scale: self.scale,
        }
    }

    /// Quotient by a machine integer, rounded to nearest.
    pub fn div_i64(&self, v: i64) -> Real {
        Real {
            mant: div_round(&self.mant, &BigInt::from(v)),
            scale: self.scale,
        }
    }

    /// Multiply by `2^k` (exact for `k >= 0`, rounded for `k < 0`).
    pub fn mul_pow2(&self, k: i32) -> Real {
        let mant = if k >= 0 {
            &self.mant << k as usize
        } else {
            shr_round(&self.mant, (-k) as u32)
        };
        Real {
            mant,
            scale: self.scale,
        }
    }

    /// Comparison (same scale required).
    pub fn cmp(&self, other: &Real) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }

    /// Nearest integer.
    pub fn round_to_bigint(&self) -> BigInt {
        shr_round(&self.mant, self.scale)
    }

    /// Square root, rounded down at the last bit.  Panics on negatives.
    pub fn sqrt(&self) -> Real {
        assert!(
            self.mant.sign() != Sign::Minus,
            "square root of a negative real"
        );
        let wide: BigUint = (self.mant.magnitude()) << self.scale as usize;
        Real {
            mant: BigInt::from(wide.sqrt()),
            scale: self.scale,
        }
    }

    /// Best-effort conversion to `f64` (saturates to `±inf` far outside the
    /// representable range).
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits();
        let drop = bits.saturating_sub(64) as i64;
        let top = (self.mant.magnitude() >> drop as usize)
            .to_f64()
            .unwrap_or(f64::INFINITY);
        let signed = if self.mant.sign() == Sign::Minus {
            -top
        } else {
            top
        };
        signed * ((drop - self.scale as i64) as f64).exp2()
    }

    /// Fixed-point decimal rendering with `digits` fractional digits,
    /// rounded to nearest at the last digit.
    pub fn to_decimal(&self, digits: u32) -> String {
        let neg = self.mant.sign() == Sign::Minus;
        let pow10 = BigUint::from(10u32).pow(digits);
        let scaled_num = self.mant.magnitude() * &pow10;
        let half = BigUint::one() << (self.scale.max(1) - 1) as usize;
        let scaled = (scaled_num + half) >> self.scale as usize;
        let (int_part, frac_part) = scaled.div_rem(&pow10);
        let sign = if neg && !(int_part.is_zero() && frac_part.is_zero()) {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!(
                "{sign}{int_part}.{frac:0>width$}",
                frac = frac_part.to_string(),
                width = digits as usize
            )
        }
    }

    /// `e^x`, by argument halving and the Taylor series.
    pub fn exp(&self) -> Real {
        let scale = self.scale;
        // Halve until |r| < 1/4 so the series converges fast.
        let int_bits = (self.mant.magnitude().bits() as i64 - scale as i64).max(0) as u32;
        let h = int_bits + 2;
        let r = self.mul_pow2(-(h as i32));
        let mut term = Real::one(scale);
        let mut acc = Real::one(scale);
        let mut n: i64 = 1;
        loop {
            term = term.mul(&r).div_i64(n);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
            n += 1;
        }
        for _ in 0..h {
            acc = acc.mul(&acc);
        }
        acc
    }

    /// `(sin x, cos x)`; `pi` must carry the same scale.
    pub fn sin_cos(&self, pi: &Real) -> (Real, Real) {
        self.check(pi);
        let scale = self.scale;
        // Reduce modulo 2*pi into [-pi, pi].
        let two_pi = pi.mul_pow2(1);
        let n = self.div(&two_pi).round_to_bigint();
        let x = self.sub(&two_pi.mul_bigint(&n));
        // Halve 4 times: |x/16| <= pi/16 < 1/4.
        const H: u32 = 4;
        let r = x.mul_pow2(-(H as i32));
        let r2 = r.mul(&r);
        // sin r = sum (-1)^m r^(2m+1)/(2m+1)!,  cos r = sum (-1)^m r^(2m)/(2m)!.
        let mut sin = r.clone();
        let mut term = r.clone();
        let mut m: i64 = 1;
        loop {
            term = term.mul(&r2).div_i64(-(2 * m) * (2 * m + 1));
            if term.is_zero() {
                break;
            }
            sin = sin.add(&term);
            m += 1;
        }
        let mut cos = Real::one(scale);
        let mut term = Real::one(scale);
        let mut m: i64 = 1;
        loop {
            term = term.mul(&r2).div_i64(-(2 * m - 1) * (2 * m));
            if term.is_zero() {
                break;
            }
            cos = cos.add(&term);
            m += 1;
        }
        // Undo the halvings: sin 2t = 2 sin t cos t, cos 2t = cos^2 t - sin^2 t.
        for _ in 0..H {
            let s2 = sin.mul(&cos).mul_pow2(1);
            let c2 = cos.mul(&cos).sub(&sin.mul(&sin));
            sin = s2;
            cos = c2;
        }
        (sin, cos)
    }
}

/// `atan(1/k) * 2^scale` by the integer Taylor series; each term is truncated
/// to an integer, so the absolute error is at most the number of terms.
fn atan_inv(k: u64, scale: u32) -> BigInt {
    let one = BigInt::one() << scale as usize;
    let k2 = BigInt::from(k * k);
    let mut power = BigInt::from(k);
    let mut n: u64 = 0;
    let mut acc = BigInt::zero();
    loop {
        let term = &one / (&power * BigInt::from(2 * n + 1));
        if term.is_zero() {
            break;
        }
        if n % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
        power *= &k2;
        n += 1;
    }
    acc
}

/// The constant pi at the given scale (Machin's formula
/// `pi = 16 atan(1/5) - 4 atan(1/239)`).
pub fn pi(scale: u32) -> Real {
    // Work 16 extra bits so the series truncation error is far below the
    // returned resolution.
    let wide = scale + 16;
    let val = (atan_inv(5, wide) << 4usize) - (atan_inv(239, wide) << 2usize);
    Real {
        mant: shr_round(&val, 16),
        scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCALE: u32 = 768;

    fn oracle(s: &str) -> Real {
        Real::from_decimal_str(s, SCALE).expect("oracle parse")
    }

    /// |a - b| < 2^-bits (same scale).
    fn close(a: &Real, b: &Real, bits: u32) {
        let diff = a.sub(b).abs();
        let tol = Real::one(SCALE).mul_pow2(-(bits as i32));
        assert!(
            diff.cmp(&tol) == Ordering::Less,
            "difference {} exceeds 2^-{}",
            diff.to_decimal(210),
            bits
        );
    }

    #[test]
    fn pi_matches_reference() {
        let reference = oracle(
            "3.141592653589793238462643383279502884197169399375105820974944592307816406286208\
             9986280348253421170679821480865132823066470938446095505822317253594081284811174\
             5028410270193852110555964462294895493038196442881097566593344612847564823378678\
             3165271201909145648566923460348610454326648213393607260249141273724587006606315\
             5881748815209209628292540917153644",
        );
        close(&pi(SCALE), &reference, 700);
    }

    #[test]
    fn pi_is_consistent_across_scales() {
        let lo = pi(512);
        let hi = pi(1024);
        // Lift the low-scale value to the high scale before comparing.
        let lifted = Real::from_ratio(lo.mant(), &(BigInt::one() << 512usize), 1024);
        let diff = lifted.sub(&hi).abs();
        assert!(diff.cmp(&Real::one(1024).mul_pow2(-508)) == Ordering::Less);
    }

    #[test]
    fn exponentials_match_reference() {
        let cases: &[(i64, i64, &str)] = &[
            (-22, 3, "0.00065339197986738044442887197222538734749444858050977831632271163317080835827803254085649353522397848487686997330075472596025846967375139161518288586943316339688928972556545706805756838113034376695874618"),
            (1, 7, "1.1535649948951077534613396244718624419956877327396609515388010824768403702721068430359913621823586086741271265908218014302214338249120254650483070652782415994617573108768974738182046287050629739033419"),
            (-55, 1, "0.0000000000000000000000012995814250075030736007134060714855302848769399949874080940026963841627585112687477005186393498907538746761339400570452278270930877012830002464034110907120890113682610419580137138963086350598490368885"),
            (3, 2, "4.4816890703380648226020554601192758190057498683696670567726500827859366744667137729810538313824533913886163506518301957689627464772204086069617596449736935381785298966216866555101351015468252930697652"),
            (-1, 4096, "0.99975588917489721651309358766826678077735569969893170127636607747118569980029060948838093774095843486466986307274039407274940130437582841769917278617284453049392417309095356679550845000499624114563597"),
        ];
        for (num, den, want) in cases {
            let x = Real::from_ratio(&BigInt::from(*num), &BigInt::from(*den), SCALE);
            close(&x.exp(), &oracle(want), 650);
        }
    }

    #[test]
    fn sines_and_cosines_match_reference() {
        let pi = pi(SCALE);
        let cases: &[(i64, i64, &str, &str)] = &[
            (22, 7,
             "-0.0012644889303773534003603504756459324917739113911976033925169697392722587242914112179193080925532942519479430174458262534821345423427990192749017949326502466510815023224984472718604266837557040823821605",
             "-0.99999920053355290326833573965657495157582882066109649067554348144800286385676065517463274039811326442955727084251811622719480200324403692099272394814620684896868212717083793204339207379646761464833020"),
            (355, 113,
             "-0.00000026676418906241914840637452887346888682210542662127102511924938759217447031508071550370946230687061604784601446611258831439157780843850818620149389653903701546107119155497037133592754932798831323807740",
             "-0.99999999999996441843371693431297142520323245807917681120160787464259331137312547917019859444529011702911347036723157293183871511526997869033576715308736254874679451846842886151653013616725859591675658"),
            (1, 3,
             "0.32719469679615224417334408526762060606430140689375979159005627707057637448176152339691079390756936098215402681191502391241235739789204202191853779394473171327883893564985120372503876317847303750115774",
             "0.94495694631473766438828400767588060784585269956514073767764573375009956219650036482442815880569855659270550490428864621672528545887326965432599766296178553927751040668266258167782046572205997367707266"),
            (-9, 4,
             "-0.77807319688792124141096667558775732080446074291022141745252780204264223919099486458138811521972611583211450589754515686602955559109571585350450011225982347280710237447453878018891792604575164486205658",
             "-0.62817362272273908891338905739640330678881528119223328813441509559869752067818522547582386707749523241910347816536860920778143275432237475380269796816834866533438783574530660683656301588621829876892700"),
            (6, 1,
             "-0.27941549819892587281155544661189475962799486431820431848335136965331115405864433485466893845284224762300973637917745845262038034462314940700629529069301667265890176164058576346763383400977744670715164",
             "0.96017028665036602054565229792292440545193767921101269812928642605354585855499310664644161136376129948559951807761278504826965230294174653648563917990838803965555953924864062871162943084380524096296339"),
            (100, 7,
             "0.98898711671969284926067608901160935286008100819789620075933371637897935326728525855124300272737930405445723817590705172930867598069714715178737893996999080514364090726731033891947601547751786835331441",
             "-0.14800163162096772198464399359473950805135049008663333786337977622202172617843708971356329720045980772592031605025247363235837950175294047246407809455663118076657295864277172618127287043573091802331691"),
            (-1000, 13,
             "-0.99894480187254386730196819775056587262406571056377770921584344598744849461142554888768567504392163515788697159477341256201683375407752005116980491276768898451685955436728966547638812821480384315093955",
             "0.045926929048479590969895597336603800359416752764357328620054460064284068297335374646172092382412456868610686143358845363461494716842198847073932486731129425191476954412588546840982822970691107191789972"),
        ];
        for (num, den, sin_want, cos_want) in cases {
            let x = Real::from_ratio(&BigInt::from(*num), &BigInt::from(*den), SCALE);
            let (s, c) = x.sin_cos(&pi);
            close(&s, &oracle(sin_want), 650);
            close(&c, &oracle(cos_want), 650);
        }
    }

    #[test]
    fn sine_is_odd_and_bounded() {
        let pi = pi(SCALE);
        let x = Real::from_ratio(&BigInt::from(22), &BigInt::from(7), SCALE);
        let (s, _) = x.sin_cos(&pi);
        let (ns, _) = x.neg().sin_cos(&pi);
        close(&s, &ns.neg(), 740);
        assert!(s.abs().cmp(&Real::one(SCALE)) == Ordering::Less);
    }

    #[test]
    fn square_roots_match_reference() {
        let cases: &[(i64, &str)] = &[
            (2, "1.4142135623730950488016887242096980785696718753769480731766797379907324784621070388503875343276415727350138462309122970249248360558507372126441214970999358314132226659275055927557999505011527820605715"),
            (3, "1.7320508075688772935274463415058723669428052538103806280558069794519330169088000370811461867572485756756261414154067030299699450949989524788116555120943736485280932319023055820679748201010846749232650"),
            (11, "3.3166247903553998491149327366706866839270885455893535970586821461164846426090438467088433991282906509070125578495274565922754397848575474797793249330447288473028739748286556825773944446120980444771931"),
            (23, "4.7958315233127195415974380641626939199967070419041293464853091144482572359074640824921914464369188606174745632457368651339289039212302654888457837943340796647275696716534943439784345614167987213151199"),
            (69, "8.3066238629180748525842627449074920102322142489556557794321883690375850334231515738673985082323570502650140398579058715564968053169772933677466362900537190348219845363540128702276531157493212912316442"),
            (77, "8.7749643873921220604063883074163095608758768275545035909276956297827646462193062816756931570687057559376509872409905802416686553752517477572146708851227131510230292241002964068906473742342555235360607"),
        ];
        for (n, want) in cases {
            close(&Real::from_i64(*n, SCALE).sqrt(), &oracle(want), 650);
        }
    }

    #[test]
    fn field_arithmetic_round_trips() {
        let third = Real::from_ratio(&BigInt::from(1), &BigInt::from(3), SCALE);
        let two_thirds = Real::from_ratio(&BigInt::from(2), &BigInt::from(3), SCALE);
        close(&third.add(&two_thirds), &Real::one(SCALE), 766);
        let x = Real::from_ratio(&BigInt::from(-355), &BigInt::from(113), SCALE);
        let y = Real::from_ratio(&BigInt::from(17), &BigInt::from(9), SCALE);
        close(&x.mul(&y).div(&y), &x, 740);
        close(&x.sub(&y).add(&y), &x, 766);
        close(&x.neg().neg(), &x, 766);
    }

    #[test]
    fn decimal_rendering_round_trips() {
        let p = pi(SCALE);
        let s = p.to_decimal(150);
        let back = Real::from_decimal_str(&s, SCALE).unwrap();
        close(&p, &back, 490);
        assert!(s.starts_with("3.14159265358979323846"));
        assert_eq!(Real::from_i64(-7, SCALE).to_decimal(3), "-7.000");
        assert_eq!(Real::zero(SCALE).to_decimal(2), "0.00");
    }

    #[test]
    fn f64_conversions_round_trip() {
        for &x in &[0.0, 1.0, -2.5, 0.3333333333333333, -1.0e-12, 6.02e23] {
            let r = Real::from_f64(x, SCALE);
            assert_eq!(r.to_f64(), x);
        }
        let p = pi(SCALE);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn rounding_is_to_nearest() {
        // 1/3 at tiny scale: mantissa rounds to nearest.
        let r = Real::from_ratio(&BigInt::from(1), &BigInt::from(3), 4);
        assert_eq!(r.mant(), &BigInt::from(5)); // 5/16 = 0.3125 vs 6/16 = 0.375
        let r = Real::from_ratio(&BigInt::from(2), &BigInt::from(3), 4);
        assert_eq!(r.mant(), &BigInt::from(11)); // 11/16 = 0.6875
        assert_eq!(div_round(&BigInt::from(7), &BigInt::from(2)), BigInt::from(4));
        assert_eq!(
            div_round(&BigInt::from(-7), &BigInt::from(2)),
            BigInt::from(-4)
        );
    }
}
