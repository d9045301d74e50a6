//! End-to-end catalog test: build the factor table for the first three
//! periods and compare every row — factor coefficients, signed discriminant,
//! its prime factorization, the attached class-field discriminant `-d`, and
//! the periods of companion factors — against frozen known-good values.

use rccf::classfield::{build_table, format_disc_factorization, DetermineOpts, TableRow};
use rccf::poly::IntPoly;

/// One frozen row: period, ascending coefficients, `d` (0 meaning none),
/// signed discriminant as a decimal string, its printed factorization, and
/// the periods of companion factors exceeding the table bound.
const EXPECTED: &[(u32, &[i64], u64, &str, &str, &[u32])] = &[
    (1, &[-1, 1], 0, "1", "1", &[]),
    (1, &[0, 1], 0, "1", "1", &[]),
    (1, &[2, 1], 0, "1", "1", &[]),
    (1, &[2, 0, 1], 8, "-8", "-2^3", &[]),
    (2, &[2, 4, 2, 0, 1], 8, "2304", "2^8 * 3^2", &[]),
    (2, &[4, 4, 2, -2, 1], 20, "57600", "2^8 * 3^2 * 5^2", &[4]),
    (2, &[8, 0, 4, -4, 1], 32, "147456", "2^14 * 3^2", &[4]),
    (3, &[1, 5, 11, 7, 1, 1, 1], 23, "-8869743", "-3^6 * 23^3", &[]),
    (
        3,
        &[4, 4, 12, 4, 2, 0, 1],
        11,
        "-3974344704",
        "-2^12 * 3^6 * 11^3",
        &[],
    ),
    (
        3,
        &[8, 0, 10, 3, 6, -1, 1],
        23,
        "-14191588800",
        "-2^6 * 3^6 * 5^2 * 23^3",
        &[],
    ),
    (
        3,
        &[8, 4, 12, -3, 5, 0, 1],
        23,
        "-14191588800",
        "-2^6 * 3^6 * 5^2 * 23^3",
        &[],
    ),
    (
        3,
        &[16, 0, 8, -8, 12, -2, 1],
        44,
        "-4069728976896",
        "-2^22 * 3^6 * 11^3",
        &[6],
    ),
    (
        3,
        &[64, -32, 16, -56, 44, -10, 1],
        92,
        "-9523814027231232",
        "-2^30 * 3^6 * 23^3",
        &[6],
    ),
    (
        3,
        &[64, 384, 704, 128, -352, -352, 48, 176, -88, -16, 44, -12, 1],
        104,
        "314946894578396148913807967297452192114009234735104",
        "2^98 * 3^30 * 13^6",
        &[6],
    ),
];

fn check_row(row: &TableRow, expected: &(u32, &[i64], u64, &str, &str, &[u32])) {
    let (n, coeffs, d, disc, fmt, annot) = *expected;
    assert_eq!(row.n, n, "period of {}", row.factor);
    assert_eq!(row.factor, IntPoly::from_i64(coeffs), "factor mismatch");
    assert_eq!(
        row.d,
        if d == 0 { None } else { Some(d) },
        "class-field discriminant of {}",
        row.factor
    );
    assert_eq!(row.disc.to_string(), disc, "discriminant of {}", row.factor);
    assert_eq!(
        format_disc_factorization(&row.disc, &row.disc_factors),
        fmt,
        "discriminant factorization of {}",
        row.factor
    );
    assert_eq!(
        row.cofactor_periods, annot,
        "companion periods of {}",
        row.factor
    );
}

#[test]
fn first_three_periods_match_the_frozen_catalog() {
    let rows = build_table(3, None, &DetermineOpts::default()).expect("table build");
    assert_eq!(rows.len(), EXPECTED.len(), "row count");
    for (row, expected) in rows.iter().zip(EXPECTED) {
        check_row(row, expected);
    }
}

#[test]
fn companion_periods_depend_on_the_table_bound() {
    // At bound 1 the quadratic's companion quartic (period 2) is out of
    // range and must be reported; at bound 3 it is inside the table.
    let rows = build_table(1, None, &DetermineOpts::default()).expect("table build");
    let quad = rows
        .iter()
        .find(|r| r.factor == IntPoly::from_i64(&[2, 0, 1]))
        .expect("quadratic row");
    assert_eq!(quad.cofactor_periods, vec![2]);
}
