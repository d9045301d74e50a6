//! End-to-end verification of every guarantee the crate ships.
//!
//! Each criterion below is a self-contained check with its own frozen
//! expected data, pinned tolerances, and wall-clock budget.  [`run_all`]
//! executes the nine criteria in order and returns one [`CriterionOutcome`]
//! per criterion; the `acceptance` integration-test target and the CLI
//! `acceptance` subcommand both drive this module, so the gate is the same
//! everywhere it is run.
//!
//! The frozen [`CATALOG`] is the reference output of [`build_table`] up to
//! cycle length 4: criterion 1 requires the freshly built table to match it
//! bit for bit, which entitles the later criteria to reuse the catalogued
//! polynomials as trusted inputs.

use std::path::Path;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand_core::SeedableRng;

use crate::classfield::{
    build_cd, build_table, class_number, class_number_product, determine_d, factor_shape,
    format_disc_factorization, kronecker, recover_p_from_q, unit_and_norm_checks, DetermineOpts,
    Fate,
};
use crate::dynamics::{matches_mod3_profile, p_n, r_n, root_sum};
use crate::factor::{factor_over_z_seeded, ModPoly, DEFAULT_SEED};
use crate::hp::{Complex, Real};
use crate::modular::{
    beta_eval, c_eval, cardan_value_d11, eval_poly_complex, radical_value_d23, radical_value_d8,
    sample_taus, verify_class_value, verify_identities, w_for_d, PrecCtx, REGISTRY_IDS,
};
use crate::poly::IntPoly;
use crate::threeadic::{lift_factor_roots, orbit_period, period_of_factor, t_newton, t_series, ZqContext};

/// Bit precision used by the floating-point criteria (7 and 8).
pub const FLOAT_PREC_BITS: u32 = 512;
/// Number of sampled arguments in the identity sweep.
pub const IDENTITY_SAMPLES: usize = 20;
/// Seed shared by every randomized acceptance step.
pub const ACCEPTANCE_SEED: u64 = DEFAULT_SEED;
/// Identity residual bound, as a negative decimal exponent: `10^-100`.
pub const IDENTITY_TOL_EXP: u32 = 100;
/// Singular-value residual bound: `10^-40`.
pub const CLASS_VALUE_TOL_EXP: u32 = 40;
/// 3-adic precision exponent for the series/Newton comparison.
pub const PADIC_MATCH_PRECISION: u32 = 32;
/// Number of sampled points for the cube-map residue law.
pub const RESIDUE_SAMPLES: usize = 100;

/// Wall-clock budget for the full table build (cycle length ≤ 4).
const TABLE_FULL_BUDGET: Duration = Duration::from_secs(900);
/// Wall-clock budget for the small table build (cycle length ≤ 3),
/// measured without a cache so the bound covers a genuine recomputation.
const TABLE_SMALL_BUDGET: Duration = Duration::from_secs(30);
/// Wall-clock budget for the 3-adic criterion.
const PADIC_BUDGET: Duration = Duration::from_secs(60);
/// Wall-clock budget for the identity sweep.
const IDENTITY_BUDGET: Duration = Duration::from_secs(60);

/// One frozen row of the reference table.
#[derive(Debug, Clone, Copy)]
pub struct CatalogRow {
    /// Cycle length of the roots.
    pub n: u32,
    /// Ascending coefficients of the irreducible factor.
    pub coeffs: &'static [i64],
    /// Attached imaginary quadratic discriminant `-d`, when the factor has
    /// one (the linear factors do not).
    pub d: Option<u64>,
    /// Decimal value of the factor's discriminant.
    pub disc: &'static str,
    /// Factored form of the discriminant, in the table's display syntax.
    pub disc_factorization: &'static str,
    /// Cycle lengths of companion factors that fall outside the table bound.
    pub cofactor_periods: &'static [u32],
}

impl CatalogRow {
    /// The factor as a polynomial.
    pub fn poly(&self) -> IntPoly {
        IntPoly::from_i64(self.coeffs)
    }

    /// Degree of the factor.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// Designated factors reused across criteria, ascending coefficients.
/// Each one also appears in [`CATALOG`] (except the last, whose cycle
/// length 6 exceeds the table bound) and is pinned there by criterion 1.
const FACTOR_8: &[i64] = &[2, 4, 2, 0, 1];
const X2_PLUS_2: &[i64] = &[2, 0, 1];
const FACTOR_11: &[i64] = &[4, 4, 12, 4, 2, 0, 1];
const FACTOR_23_Q1: &[i64] = &[8, 4, 12, -3, 5, 0, 1];
const FACTOR_23_Q2: &[i64] = &[8, 0, 10, 3, 6, -1, 1];
const FACTOR_23_Q3: &[i64] = &[1, 5, 11, 7, 1, 1, 1];
const FACTOR_56_H1: &[i64] = &[16, -32, 32, 0, 52, 0, 8, 4, 1];
const FACTOR_56_H2: &[i64] = &[
    16, 0, 704, 1664, 2288, 1344, 512, -240, 100, 0, 160, 8, -28, 32, 4, -4, 1,
];
const FACTOR_92_Q4: &[i64] = &[64, -32, 16, -56, 44, -10, 1];
const FACTOR_92_Q5: &[i64] = &[1, -6, 207, -212, -113, -38, 377, 328, 73, 58, 43, 10, 1];

/// Ring class polynomials recovered by criterion 4 (ascending coefficients).
const P_8: &[i64] = &[6, 4, 1];
const P_11: &[i64] = &[12, 2, 1];
const P_23: &[i64] = &[675, 405, 441, 191, 65, 11, 1];
const P_56: &[i64] = &[156816, 47520, 16416, -4224, 532, 96, 184, -4, 1];
const P_92: &[i64] = &[75141, -20493, 1071, -2567, 841, -13, 1];

/// Discriminants whose singular values are worked through in full:
/// [`worked_example`] has exact data for each of these.
pub const WORKED_DISCRIMINANTS: [u64; 5] = [8, 11, 23, 56, 92];

/// Ring class polynomial and designated companion factor for a worked
/// discriminant: the class polynomial vanishes at `beta(w/3)` and the
/// factor at `2c(w/3)`.  Returns `None` for other discriminants.
pub fn worked_example(d: u64) -> Option<(IntPoly, IntPoly)> {
    let (p, q): (&[i64], &[i64]) = match d {
        8 => (P_8, FACTOR_8),
        11 => (P_11, FACTOR_11),
        23 => (P_23, FACTOR_23_Q3),
        56 => (P_56, FACTOR_56_H2),
        92 => (P_92, FACTOR_92_Q5),
        _ => return None,
    };
    Some((IntPoly::from_i64(p), IntPoly::from_i64(q)))
}

/// The reference table: every irreducible factor of the cycle polynomials
/// up to cycle length 4, in emission order, with its discriminant data.
pub const CATALOG: &[CatalogRow] = &[
    CatalogRow { n: 1, coeffs: &[-1, 1], d: None, disc: "1", disc_factorization: "1", cofactor_periods: &[] },
    CatalogRow { n: 1, coeffs: &[0, 1], d: None, disc: "1", disc_factorization: "1", cofactor_periods: &[] },
    CatalogRow { n: 1, coeffs: &[2, 1], d: None, disc: "1", disc_factorization: "1", cofactor_periods: &[] },
    CatalogRow { n: 1, coeffs: &[2, 0, 1], d: Some(8), disc: "-8", disc_factorization: "-2^3", cofactor_periods: &[] },
    CatalogRow { n: 2, coeffs: &[2, 4, 2, 0, 1], d: Some(8), disc: "2304", disc_factorization: "2^8 * 3^2", cofactor_periods: &[] },
    CatalogRow { n: 2, coeffs: &[4, 4, 2, -2, 1], d: Some(20), disc: "57600", disc_factorization: "2^8 * 3^2 * 5^2", cofactor_periods: &[] },
    CatalogRow { n: 2, coeffs: &[8, 0, 4, -4, 1], d: Some(32), disc: "147456", disc_factorization: "2^14 * 3^2", cofactor_periods: &[] },
    CatalogRow { n: 3, coeffs: &[1, 5, 11, 7, 1, 1, 1], d: Some(23), disc: "-8869743", disc_factorization: "-3^6 * 23^3", cofactor_periods: &[] },
    CatalogRow { n: 3, coeffs: &[4, 4, 12, 4, 2, 0, 1], d: Some(11), disc: "-3974344704", disc_factorization: "-2^12 * 3^6 * 11^3", cofactor_periods: &[] },
    CatalogRow { n: 3, coeffs: &[8, 0, 10, 3, 6, -1, 1], d: Some(23), disc: "-14191588800", disc_factorization: "-2^6 * 3^6 * 5^2 * 23^3", cofactor_periods: &[] },
    CatalogRow { n: 3, coeffs: &[8, 4, 12, -3, 5, 0, 1], d: Some(23), disc: "-14191588800", disc_factorization: "-2^6 * 3^6 * 5^2 * 23^3", cofactor_periods: &[] },
    CatalogRow { n: 3, coeffs: &[16, 0, 8, -8, 12, -2, 1], d: Some(44), disc: "-4069728976896", disc_factorization: "-2^22 * 3^6 * 11^3", cofactor_periods: &[6] },
    CatalogRow { n: 3, coeffs: &[64, -32, 16, -56, 44, -10, 1], d: Some(92), disc: "-9523814027231232", disc_factorization: "-2^30 * 3^6 * 23^3", cofactor_periods: &[6] },
    CatalogRow { n: 3, coeffs: &[64, 384, 704, 128, -352, -352, 48, 176, -88, -16, 44, -12, 1], d: Some(104), disc: "314946894578396148913807967297452192114009234735104", disc_factorization: "2^98 * 3^30 * 13^6", cofactor_periods: &[6] },
    CatalogRow { n: 4, coeffs: &[2, -8, 12, 24, 34, 8, 4, 4, 1], d: Some(32), disc: "736971427676160000", disc_factorization: "2^22 * 3^12 * 5^4 * 23^2", cofactor_periods: &[] },
    CatalogRow { n: 4, coeffs: &[4, 0, 24, 16, 22, 8, 4, 2, 1], d: Some(20), disc: "42142506024960000", disc_factorization: "2^20 * 3^12 * 5^4 * 11^2", cofactor_periods: &[] },
    CatalogRow { n: 4, coeffs: &[16, -48, 24, 8, 72, -4, 6, 6, 1], d: Some(68), disc: "195213820045240402182144", disc_factorization: "2^42 * 3^12 * 17^4", cofactor_periods: &[8] },
    CatalogRow { n: 4, coeffs: &[16, -32, 32, 0, 52, 0, 8, 4, 1], d: Some(56), disc: "22447450673656790777856", disc_factorization: "2^44 * 3^12 * 7^4", cofactor_periods: &[] },
    CatalogRow { n: 4, coeffs: &[64, -64, 64, -64, 88, -32, 24, 0, 1], d: Some(80), disc: "11312542821792884981760000", disc_factorization: "2^48 * 3^12 * 5^4 * 11^2", cofactor_periods: &[] },
    CatalogRow { n: 4, coeffs: &[128, -256, 128, -128, 272, -96, 24, 8, 1], d: Some(128), disc: "3241234616274469354356080640000", disc_factorization: "2^64 * 3^12 * 5^4 * 23^2", cofactor_periods: &[8] },
    CatalogRow { n: 4, coeffs: &[4, 96, 752, 1568, 1192, 384, 208, 528, 742, 336, 376, 260, 44, 48, 22, 0, 1], d: Some(80), disc: "17492694447311301175439604558941405159491833139786269327360000000000000000", disc_factorization: "2^52 * 3^56 * 5^16 * 11^4 * 17^4 * 53^4 * 71^2", cofactor_periods: &[] },
    CatalogRow { n: 4, coeffs: &[16, 0, 704, 1664, 2288, 1344, 512, -240, 100, 0, 160, 8, -28, 32, 4, -4, 1], d: Some(56), disc: "5467799944608282490614068292026488869231899167682224313272835285945243664384", disc_factorization: "2^96 * 3^56 * 7^8 * 11^4 * 29^4 * 47^2", cofactor_periods: &[] },
    CatalogRow { n: 4, coeffs: &[256, 1024, 18432, 18432, -15488, -41216, -6144, 18816, 19504, -9408, -1536, 5152, -968, -576, 288, -8, 1], d: Some(260), disc: "1929798512941297068153727942512403687625900070606866779704507145777657659944240519470050280595816044350249369600000000", disc_factorization: "2^208 * 3^56 * 5^8 * 7^8 * 13^8 * 47^4", cofactor_periods: &[8] },
    CatalogRow { n: 4, coeffs: &[256, 4608, 35840, 43008, -36032, -79360, -18944, 39744, 35200, -19872, -4736, 9920, -2252, -1344, 560, -36, 1], d: Some(308), disc: "2796419428562310865318505078287376687462108535164843370927192014886053058359337710678119140216885302310743939481600000000", disc_factorization: "2^184 * 3^56 * 5^8 * 7^16 * 11^8 * 23^8", cofactor_periods: &[8] },
    CatalogRow { n: 4, coeffs: &[4096, 8192, 4096, -16384, -7168, -1024, 10240, 0, 1600, 1920, 2048, -2688, 2288, -832, 176, 0, 1], d: Some(224), disc: "7267952761724541361778142258283560222057867777166969228475687498627250986853943820658236880694687845348418781184", disc_factorization: "2^216 * 3^56 * 7^8 * 11^4 * 29^4 * 47^2", cofactor_periods: &[8] },
    CatalogRow { n: 4, coeffs: &[16384, 0, 90112, -98304, 45056, -133120, 96256, -43008, 47488, -16896, 3328, -3072, 4768, -3136, 752, -48, 1], d: Some(320), disc: "26807476238234063267551730323279552909155390300669277502956545411194537149605753742795628316839928201345352335360000000000000000", disc_factorization: "2^232 * 3^56 * 5^16 * 11^4 * 17^4 * 53^4 * 71^2", cofactor_periods: &[8] },
];

/// Result of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    /// Position in the run, 1 through 9.
    pub index: u32,
    /// Short name of the guarantee being checked.
    pub name: &'static str,
    /// Whether every check inside the criterion passed.
    pub pass: bool,
    /// What was verified, or the first failure encountered.
    pub detail: String,
}

fn outcome(index: u32, name: &'static str, result: Result<String, String>) -> CriterionOutcome {
    match result {
        Ok(detail) => CriterionOutcome { index, name, pass: true, detail },
        Err(detail) => CriterionOutcome { index, name, pass: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The tolerance `10^-exp` at the given scale.
pub fn decimal_tol(scale: u32, exp: u32) -> Real {
    Real::from_ratio(&BigInt::one(), &BigInt::from(10u32).pow(exp), scale)
}

/// Upper bound on a non-negative residual as a power of two, for reporting.
fn magnitude(r: &Real) -> String {
    if r.mant().is_zero() {
        return "0".into();
    }
    let exp = r.mant().bits() as i64 - i64::from(r.scale());
    format!("< 2^{exp}")
}

fn below(r: &Real, tol: &Real) -> bool {
    r.cmp(tol).is_lt()
}

// --- criterion 1: the reference table ---------------------------------

fn run_table(cache_dir: Option<&Path>) -> Result<String, String> {
    let opts = DetermineOpts::default();

    let small_started = Instant::now();
    build_table(3, None, &opts).map_err(|e| format!("table build (n <= 3) failed: {e}"))?;
    let small_elapsed = small_started.elapsed();
    ensure(small_elapsed <= TABLE_SMALL_BUDGET, || {
        format!("table for n <= 3 took {small_elapsed:.2?}, budget {TABLE_SMALL_BUDGET:?}")
    })?;

    let full_started = Instant::now();
    let rows =
        build_table(4, cache_dir, &opts).map_err(|e| format!("table build (n <= 4) failed: {e}"))?;
    let full_elapsed = full_started.elapsed();
    ensure(full_elapsed <= TABLE_FULL_BUDGET, || {
        format!("table for n <= 4 took {full_elapsed:.2?}, budget {TABLE_FULL_BUDGET:?}")
    })?;

    ensure(rows.len() == CATALOG.len(), || {
        format!("expected {} rows, built {}", CATALOG.len(), rows.len())
    })?;
    for (i, (row, want)) in rows.iter().zip(CATALOG).enumerate() {
        ensure(row.n == want.n, || {
            format!("row {i}: cycle length {} instead of {}", row.n, want.n)
        })?;
        ensure(row.factor == want.poly(), || {
            format!(
                "row {i} (n = {}): factor {:?} instead of {:?}",
                want.n,
                row.factor.coeffs(),
                want.coeffs
            )
        })?;
        ensure(row.disc.to_string() == want.disc, || {
            format!("row {i}: discriminant {} instead of {}", row.disc, want.disc)
        })?;
        let shown = format_disc_factorization(&row.disc, &row.disc_factors);
        ensure(shown == want.disc_factorization, || {
            format!(
                "row {i}: discriminant shown as {shown} instead of {}",
                want.disc_factorization
            )
        })?;
        ensure(row.d == want.d, || {
            format!("row {i}: attached discriminant {:?} instead of {:?}", row.d, want.d)
        })?;
        ensure(row.cofactor_periods == want.cofactor_periods, || {
            format!(
                "row {i}: companion periods {:?} instead of {:?}",
                row.cofactor_periods, want.cofactor_periods
            )
        })?;
    }
    Ok(format!(
        "{} rows bit-identical to the reference; n <= 3 rebuilt in {small_elapsed:.2?}, n <= 4 in {full_elapsed:.2?}",
        rows.len()
    ))
}

/// Criterion 1: the table of periodic-point factors up to cycle length 4
/// is reproduced bit for bit, within its time budgets.
pub fn criterion_01_table(cache_dir: Option<&Path>) -> CriterionOutcome {
    outcome(1, "reference table reproduction", run_table(cache_dir))
}

// --- criterion 2: cycle polynomial structure ---------------------------

/// Squarefree test with a cheap certificate: if `p mod q` is squarefree
/// for some prime `q` not dividing the leading coefficient, `p` is
/// squarefree over the rationals.  Falls back to an exact gcd over the
/// integers when no small prime certifies.
fn certified_squarefree(p: &IntPoly) -> bool {
    let dp = p.derivative();
    let lc = p.lc().expect("nonzero polynomial").clone();
    for q in [5u64, 7, 11, 13, 17, 19, 23, 29] {
        if (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let a = ModPoly::from_int_poly(p, q);
        let b = ModPoly::from_int_poly(&dp, q);
        if a.gcd(&b).degree() == Some(0) {
            return true;
        }
    }
    p.gcd(&dp).degree() == Some(0)
}

fn run_structure(cache_dir: Option<&Path>) -> Result<String, String> {
    let mut cycle_polys: Vec<IntPoly> = Vec::new();
    for n in 1..=4u32 {
        let rn = r_n(n, cache_dir).map_err(|e| format!("R_{n}: {e}"))?;
        let deg = rn.degree().unwrap_or(0);
        let want_deg = 2 * 3usize.pow(n) - 1;
        ensure(deg == want_deg, || {
            format!("R_{n} has degree {deg} instead of {want_deg}")
        })?;
        ensure(matches_mod3_profile(&rn, n), || {
            format!("R_{n} does not match its predicted mod-3 reduction")
        })?;
        let want_sum = BigInt::from(3i64.pow(n) - 4);
        let got_sum = root_sum(&rn);
        ensure(got_sum == want_sum, || {
            format!("R_{n} root sum {got_sum} instead of {want_sum}")
        })?;
        ensure(certified_squarefree(&rn), || format!("R_{n} is not squarefree"))?;

        let pn = p_n(n, cache_dir).map_err(|e| format!("P_{n} division failed: {e}"))?;
        if n >= 2 {
            let pdeg = pn.degree().unwrap_or(0);
            let got = root_sum(&pn);
            ensure(got == BigInt::from((pdeg / 2) as u64), || {
                format!("P_{n} root sum {got} instead of {}", pdeg / 2)
            })?;
        }
        cycle_polys.push(pn);

        let mut product = IntPoly::one();
        for d in 1..=n {
            if n % d == 0 {
                product = &product * &cycle_polys[(d - 1) as usize];
            }
        }
        ensure(product == rn, || {
            format!("the product of P_d over d | {n} does not reconstruct R_{n}")
        })?;
    }
    Ok(
        "R_1..R_4: degrees 2*3^n - 1, mod-3 reductions, root sums 3^n - 4, squarefree; \
         P_n divisions exact with root sums deg/2 for n >= 2"
            .into(),
    )
}

/// Criterion 2: the cycle polynomials have the right degree, mod-3
/// reduction, root sums, squarefreeness, and exact divisibility structure.
pub fn criterion_02_structure(cache_dir: Option<&Path>) -> CriterionOutcome {
    outcome(2, "cycle polynomial structure", run_structure(cache_dir))
}

// --- criterion 3: discriminant determination ---------------------------

fn run_discriminants() -> Result<String, String> {
    let opts = DetermineOpts::default();

    // Full audit trail on the degree-16 factor attached to -308.
    let c308 = CATALOG
        .iter()
        .find(|row| row.d == Some(308))
        .expect("the catalogue has a factor attached to -308")
        .poly();
    let search = determine_d(&c308, &opts).map_err(|e| format!("search for -308: {e}"))?;
    ensure(search.d == 308, || format!("search settled on -{} instead of -308", search.d))?;
    ensure(search.s_primes == [7, 11], || {
        format!("auxiliary primes {:?} instead of [7, 11]", search.s_primes)
    })?;
    ensure(search.candidates.len() == 231, || {
        format!("{} candidates examined instead of 231", search.candidates.len())
    })?;
    let expected_fates: &[(u64, Fate)] = &[
        (8, Fate::ClassNumber { got: 1 }),
        (32, Fate::ClassNumber { got: 2 }),
        (44, Fate::ClassNumber { got: 3 }),
        (56, Fate::ClassNumber { got: 4 }),
        (128, Fate::ClassNumber { got: 4 }),
        (176, Fate::ClassNumber { got: 6 }),
        (224, Fate::SymbolObstruction { l: 5 }),
        (308, Fate::Survived),
        (392, Fate::SymbolObstruction { l: 11 }),
        (512, Fate::SymbolObstruction { l: 11 }),
        (704, Fate::ClassNumber { got: 12 }),
    ];
    for (value, fate) in expected_fates {
        let found = search
            .candidates
            .iter()
            .find(|c| c.value == *value)
            .ok_or_else(|| format!("candidate {value} missing from the audit trail"))?;
        ensure(found.fate == *fate, || {
            format!("candidate {value}: fate {:?} instead of {:?}", found.fate, fate)
        })?;
    }
    let survivors = search.candidates.iter().filter(|c| c.fate == Fate::Survived).count();
    ensure(survivors == 1, || format!("{survivors} survivors instead of exactly one"))?;

    // Every catalogued factor of degree >= 4 resolves to its discriminant.
    let mut resolved = 0usize;
    for row in CATALOG {
        let Some(d) = row.d else { continue };
        if row.degree() < 4 {
            continue;
        }
        let got = determine_d(&row.poly(), &opts)
            .map_err(|e| format!("factor attached to -{d}: {e}"))?;
        ensure(got.d == d, || {
            format!("factor attached to -{d} resolved to -{}", got.d)
        })?;
        resolved += 1;
    }
    Ok(format!(
        "-308 audit trail matches (231 candidates, auxiliary primes 7 and 11, unique survivor); \
         {resolved} catalogued factors of degree >= 4 all resolve to their discriminant"
    ))
}

/// Criterion 3: the discriminant search reproduces the frozen audit trail
/// for the degree-16 factor attached to `-308` and resolves every
/// catalogued factor of degree at least 4.
pub fn criterion_03_discriminants() -> CriterionOutcome {
    outcome(3, "discriminant determination", run_discriminants())
}

// --- criterion 4: ring class polynomial recovery -----------------------

fn run_recovery() -> Result<String, String> {
    let cases: [(u64, &[i64], &[i64]); 5] = [
        (8, FACTOR_8, P_8),
        (11, FACTOR_11, P_11),
        (23, FACTOR_23_Q1, P_23),
        (56, FACTOR_56_H2, P_56),
        (92, FACTOR_92_Q4, P_92),
    ];
    for (d, q, want) in cases {
        let got = recover_p_from_q(&IntPoly::from_i64(q)).map_err(|e| format!("-{d}: {e}"))?;
        ensure(got == IntPoly::from_i64(want), || {
            format!("-{d}: recovered {:?} instead of {:?}", got.coeffs(), want)
        })?;
    }
    Ok("five ring class polynomials recovered exactly from their companion factors".into())
}

/// Criterion 4: pushing a companion factor forward along `b -> (b^3 + 2)/b`
/// recovers the exact ring class polynomial for each worked discriminant.
pub fn criterion_04_recovery() -> CriterionOutcome {
    outcome(4, "ring class polynomial recovery", run_recovery())
}

// --- criterion 5: companion cycle factorizations ------------------------

fn sort_polys(polys: &mut [IntPoly]) {
    polys.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
}

fn run_companions() -> Result<String, String> {
    let cases: [(u64, &[i64], &[&[i64]]); 5] = [
        (8, P_8, &[X2_PLUS_2, FACTOR_8]),
        (11, P_11, &[FACTOR_11]),
        (23, P_23, &[FACTOR_23_Q1, FACTOR_23_Q2, FACTOR_23_Q3]),
        (56, P_56, &[FACTOR_56_H1, FACTOR_56_H2]),
        (92, P_92, &[FACTOR_92_Q4, FACTOR_92_Q5]),
    ];
    for (d, p, want) in cases {
        let cd = build_cd(&IntPoly::from_i64(p));
        let factorization =
            factor_over_z_seeded(&cd, ACCEPTANCE_SEED).map_err(|e| format!("C_{d}: {e}"))?;
        ensure(factorization.content.is_one(), || {
            format!("C_{d} has content {} instead of 1", factorization.content)
        })?;
        ensure(factorization.factors.iter().all(|(_, m)| *m == 1), || {
            format!("C_{d} has a repeated factor")
        })?;

        let mut got: Vec<IntPoly> =
            factorization.factors.iter().map(|(g, _)| g.clone()).collect();
        let mut expected: Vec<IntPoly> = want.iter().map(|c| IntPoly::from_i64(c)).collect();
        sort_polys(&mut got);
        sort_polys(&mut expected);
        ensure(got == expected, || format!("C_{d} factor set differs from the expected one"))?;

        let want_count = match kronecker(-(d as i64), 2) {
            1 => 3,
            0 => 2,
            _ => 1,
        };
        ensure(got.len() == want_count, || {
            format!("C_{d} has {} irreducible factors instead of {want_count}", got.len())
        })?;
        let mut shape = factor_shape(d).map_err(|e| format!("factor shape for -{d}: {e}"))?;
        shape.sort_unstable();
        let degrees: Vec<u64> = got.iter().map(|g| g.degree().unwrap_or(0) as u64).collect();
        ensure(degrees == shape, || {
            format!("C_{d} factor degrees {degrees:?} instead of {shape:?}")
        })?;
    }
    Ok(
        "C_8, C_11, C_23, C_56, C_92 factor exactly as expected; factor counts follow \
         the splitting law at 2 and degrees match the class-number shape"
            .into(),
    )
}

/// Criterion 5: the companion polynomials `C_d` factor into exactly the
/// expected irreducibles, with counts governed by `-d mod 8`.
pub fn criterion_05_companions() -> CriterionOutcome {
    outcome(5, "companion cycle factorizations", run_companions())
}

// --- criterion 6: 3-adic dynamics ---------------------------------------

fn run_threeadic() -> Result<String, String> {
    let started = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(ACCEPTANCE_SEED);

    // The map reduces to cubing on the residue field.
    let mut residue_points = 0usize;
    for m in 1..=4usize {
        let ctx = ZqContext::new(m, 8).map_err(|e| format!("context (degree {m}): {e}"))?;
        for _ in 0..(RESIDUE_SAMPLES / 4) {
            let x = ctx.sample_domain(&mut rng);
            let t = t_series(&ctx, &x).map_err(|e| format!("series lift (degree {m}): {e}"))?;
            let cube = ctx.mul(&x, &ctx.mul(&x, &x));
            let diff = ctx.sub(&t, &cube);
            ensure(diff.coeffs().iter().all(|c| (c % 3u32).is_zero()), || {
                format!("T(x) != x^3 mod 3 at a sampled point of degree {m}")
            })?;
            residue_points += 1;
        }
    }

    // The series construction and the Newton iteration agree to full
    // precision.
    let mut agreement_points = 0usize;
    for m in 1..=4usize {
        let ctx = ZqContext::new(m, PADIC_MATCH_PRECISION)
            .map_err(|e| format!("context (degree {m}): {e}"))?;
        for _ in 0..5 {
            let x = ctx.sample_domain(&mut rng);
            let a = t_series(&ctx, &x).map_err(|e| format!("series lift: {e}"))?;
            let b = t_newton(&ctx, &x).map_err(|e| format!("Newton lift: {e}"))?;
            ensure(a == b, || {
                format!(
                    "series and Newton lifts differ mod 3^{PADIC_MATCH_PRECISION} \
                     at a point of degree {m}"
                )
            })?;
            agreement_points += 1;
        }
    }

    // Every catalogued factor has the cycle length of its row.
    for row in CATALOG {
        let got = period_of_factor(&row.poly())
            .map_err(|e| format!("period of a row with n = {}: {e}", row.n))?;
        ensure(got == row.n, || {
            format!(
                "factor {:?} has period {got} instead of {}",
                row.coeffs, row.n
            )
        })?;
    }

    // Named examples, one beyond the table bound, with the orbit closed
    // explicitly on every lifted root.
    for (coeffs, want) in [(FACTOR_11, 3u32), (FACTOR_56_H2, 4), (FACTOR_92_Q5, 6)] {
        let q = IntPoly::from_i64(coeffs);
        let got = period_of_factor(&q).map_err(|e| format!("period: {e}"))?;
        ensure(got == want, || {
            format!("factor of degree {} has period {got} instead of {want}", q.degree().unwrap_or(0))
        })?;
        let roots = lift_factor_roots(&q, 16).map_err(|e| format!("root lift: {e}"))?;
        ensure(!roots.is_empty(), || "no liftable root found".to_string())?;
        for (ctx, root) in &roots {
            let period = orbit_period(ctx, root, 16).map_err(|e| format!("orbit: {e}"))?;
            ensure(period == want as usize, || {
                format!("orbit closes after {period} steps instead of {want}")
            })?;
        }
    }

    let elapsed = started.elapsed();
    ensure(elapsed <= PADIC_BUDGET, || {
        format!("3-adic checks took {elapsed:.2?}, budget {PADIC_BUDGET:?}")
    })?;
    Ok(format!(
        "cube-map residue law on {residue_points} points; series = Newton on \
         {agreement_points} points mod 3^{PADIC_MATCH_PRECISION}; all {} catalogued periods \
         and 3 explicit orbits confirmed in {elapsed:.2?}",
        CATALOG.len()
    ))
}

/// Criterion 6: the 3-adic interpolation reduces to the cube map mod 3,
/// its two constructions agree, and orbit periods match the table.
pub fn criterion_06_threeadic() -> CriterionOutcome {
    outcome(6, "3-adic dynamics", run_threeadic())
}

// --- criterion 7: modular identities ------------------------------------

fn run_identities() -> Result<String, String> {
    let started = Instant::now();
    let ctx = PrecCtx::new(FLOAT_PREC_BITS);
    let taus = sample_taus(&ctx, IDENTITY_SAMPLES, ACCEPTANCE_SEED);
    let tol = decimal_tol(ctx.scale(), IDENTITY_TOL_EXP);
    let records = verify_identities(&ctx, &taus, &tol);
    ensure(records.len() == REGISTRY_IDS.len(), || {
        format!("{} identities checked instead of {}", records.len(), REGISTRY_IDS.len())
    })?;
    let mut worst = Real::zero(ctx.scale());
    let mut worst_id = "";
    for record in &records {
        ensure(record.errors == 0, || {
            format!("{}: {} of {} evaluations failed", record.id, record.errors, record.samples)
        })?;
        ensure(record.pass, || {
            format!(
                "{}: residual {} exceeds 10^-{IDENTITY_TOL_EXP}",
                record.id,
                magnitude(&record.max_residual)
            )
        })?;
        if record.max_residual.cmp(&worst).is_gt() {
            worst = record.max_residual.clone();
            worst_id = record.id;
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed <= IDENTITY_BUDGET, || {
        format!("identity sweep took {elapsed:.2?}, budget {IDENTITY_BUDGET:?}")
    })?;
    Ok(format!(
        "{} identities hold at {} sampled points, {FLOAT_PREC_BITS} bits, tolerance \
         10^-{IDENTITY_TOL_EXP}; worst residual {} ({worst_id}) in {elapsed:.2?}",
        records.len(),
        IDENTITY_SAMPLES,
        magnitude(&worst)
    ))
}

/// Criterion 7: the full identity registry holds numerically below
/// `10^-100` at randomly sampled points of the upper half-plane.
pub fn criterion_07_identities() -> CriterionOutcome {
    outcome(7, "modular identities", run_identities())
}

// --- criterion 8: singular values ---------------------------------------

fn run_values() -> Result<String, String> {
    let ctx = PrecCtx::new(FLOAT_PREC_BITS);
    let scale = ctx.scale();
    let tol = decimal_tol(scale, CLASS_VALUE_TOL_EXP);

    // The roots of the catalogued factors are the predicted singular
    // values: the class polynomial vanishes at beta(w/3), the designated
    // factor at 2c(w/3), and the companion polynomial at both companion
    // values built from c1(w/6).
    let cases: [(u64, &[i64], &[i64]); 5] = [
        (8, P_8, FACTOR_8),
        (11, P_11, FACTOR_11),
        (23, P_23, FACTOR_23_Q3),
        (56, P_56, FACTOR_56_H2),
        (92, P_92, FACTOR_92_Q5),
    ];
    for (d, p, q) in cases {
        verify_class_value(&ctx, d, &IntPoly::from_i64(p), &IntPoly::from_i64(q), &tol)
            .map_err(|e| format!("-{d}: {e}"))?;
    }

    // Pinned closed forms.
    let w11 = w_for_d(11).map_err(|e| e.to_string())?;
    let beta = beta_eval(&ctx, &w11.tau_over(&ctx, 3)).map_err(|e| e.to_string())?;
    let beta_expected = Complex::new(Real::from_i64(-1, scale), Real::from_i64(11, scale).sqrt());
    ensure(below(&beta.sub(&beta_expected).abs(), &tol), || {
        "beta(w/3) for -11 is not -1 + sqrt(11) i".to_string()
    })?;

    let v8 = radical_value_d8(&ctx);
    let q8 = IntPoly::from_i64(FACTOR_8);
    ensure(below(&eval_poly_complex(&q8, &v8).abs(), &tol), || {
        "the radical value for -8 is not a root of its quartic".to_string()
    })?;
    let w8 = w_for_d(8).map_err(|e| e.to_string())?;
    let f8 = c_eval(&ctx, &w8.tau_over(&ctx, 3)).map_err(|e| e.to_string())?.mul_i64(2);
    ensure(below(&v8.sub(&f8).abs(), &tol), || {
        "the radical value for -8 does not equal 2c(w/3)".to_string()
    })?;

    let (u, y) = cardan_value_d11(&ctx).map_err(|e| e.to_string())?;
    ensure(u.re().to_decimal(4) == "0.7568" && u.im().to_decimal(4) == "-0.9552", || {
        format!(
            "Cardan cube root prints as {} + {} i instead of 0.7568 - 0.9552 i",
            u.re().to_decimal(4),
            u.im().to_decimal(4)
        )
    })?;
    let sqrt11 = Real::from_i64(11, scale).sqrt();
    let linear = Complex::new(Real::one(scale), sqrt11.neg());
    let cubic_residual = y
        .mul(&y)
        .mul(&y)
        .add(&linear.mul(&y))
        .add(&Complex::from_i64(2, 0, scale))
        .abs();
    ensure(below(&cubic_residual, &tol), || {
        "the Cardan value does not solve y^3 + (1 - sqrt(-11)) y + 2 = 0".to_string()
    })?;
    let f11 = c_eval(&ctx, &w11.tau_over(&ctx, 3)).map_err(|e| e.to_string())?.mul_i64(2);
    ensure(below(&y.sub(&f11).abs(), &tol), || {
        "the Cardan value for -11 does not equal 2c(w/3)".to_string()
    })?;

    let (a_root, v23) = radical_value_d23(&ctx).map_err(|e| e.to_string())?;
    ensure(a_root.re().to_decimal(10).starts_with("3.30315"), || {
        format!("A^(1/3) real part prints as {}", a_root.re().to_decimal(10))
    })?;
    ensure(a_root.im().to_decimal(10).starts_with("1.116849"), || {
        format!("A^(1/3) imaginary part prints as {}", a_root.im().to_decimal(10))
    })?;
    let w23 = w_for_d(23).map_err(|e| e.to_string())?;
    let f23 = c_eval(&ctx, &w23.tau_over(&ctx, 3)).map_err(|e| e.to_string())?.mul_i64(2);
    ensure(below(&v23.sub(&f23).abs(), &tol), || {
        "the radical value for -23 does not equal 2c(w/3)".to_string()
    })?;

    // Exact norm laws on the catalogued factors.
    let c11_report = unit_and_norm_checks(&IntPoly::from_i64(FACTOR_11));
    ensure(
        c11_report.at_zero == BigInt::from(4)
            && c11_report.at_one == BigInt::from(27)
            && c11_report.at_minus_two == BigInt::from(108),
        || {
            format!(
                "C_11 values ({}, {}, {}) instead of (4, 27, 108)",
                c11_report.at_zero, c11_report.at_one, c11_report.at_minus_two
            )
        },
    )?;
    let q3_report = unit_and_norm_checks(&IntPoly::from_i64(FACTOR_23_Q3));
    ensure(
        q3_report.unit
            && q3_report.at_one == BigInt::from(27)
            && q3_report.at_minus_two == BigInt::from(27),
        || {
            format!(
                "q_3 values ({}, {}, {}) instead of (1, 27, 27)",
                q3_report.at_zero, q3_report.at_one, q3_report.at_minus_two
            )
        },
    )?;
    let mut law_count = 0usize;
    for row in CATALOG {
        if row.d.is_none() {
            continue;
        }
        let report = unit_and_norm_checks(&row.poly());
        ensure(report.product_rule, || {
            format!("factor {:?} violates q(-2) = q(1) q(0)", row.coeffs)
        })?;
        law_count += 1;
    }

    Ok(format!(
        "five singular-value verifications below 10^-{CLASS_VALUE_TOL_EXP}; radical and \
         Cardan closed forms match to the printed digits; q(-2) = q(1) q(0) on all \
         {law_count} catalogued factors with a discriminant"
    ))
}

/// Criterion 8: singular values at the distinguished quadratic points are
/// roots of the predicted polynomials and match their closed radical forms.
pub fn criterion_08_values() -> CriterionOutcome {
    outcome(8, "singular values", run_values())
}

// --- criterion 9: class numbers -----------------------------------------

fn run_class_numbers() -> Result<String, String> {
    for (d, want) in [(8u64, 1u64), (11, 1), (23, 3), (56, 4), (92, 3), (308, 8)] {
        let got = class_number(d).map_err(|e| format!("h(-{d}): {e}"))?;
        ensure(got == want, || format!("h(-{d}) = {got} instead of {want}"))?;
    }
    let mut agreements = 0usize;
    for d in 3..=1000u64 {
        if d % 4 != 0 && d % 4 != 3 {
            continue;
        }
        let by_forms = class_number(d).map_err(|e| format!("h(-{d}): {e}"))?;
        let by_product =
            class_number_product(d).map_err(|e| format!("product formula at -{d}: {e}"))?;
        ensure(by_forms == by_product, || {
            format!("h(-{d}): form count {by_forms} != product formula {by_product}")
        })?;
        agreements += 1;
    }
    Ok(format!(
        "six pinned class numbers match; form counting and the product formula agree \
         at all {agreements} discriminants -d with d <= 1000"
    ))
}

/// Criterion 9: class numbers are right where pinned, and the two
/// independent computations agree across every discriminant up to 1000.
pub fn criterion_09_class_numbers() -> CriterionOutcome {
    outcome(9, "class number agreement", run_class_numbers())
}

/// Run all nine criteria in order.
///
/// `cache_dir` is forwarded to the cycle-polynomial builders; criterion 1
/// populates it, so later criteria reuse the cached resultants.
pub fn run_all(cache_dir: Option<&Path>) -> Vec<CriterionOutcome> {
    vec![
        criterion_01_table(cache_dir),
        criterion_02_structure(cache_dir),
        criterion_03_discriminants(),
        criterion_04_recovery(),
        criterion_05_companions(),
        criterion_06_threeadic(),
        criterion_07_identities(),
        criterion_08_values(),
        criterion_09_class_numbers(),
    ]
}
