//! Plain-text serialization for polynomials.
//!
//! Univariate format: a header line `degree=<n>` followed by exactly
//! `n + 1` coefficient lines in ascending order (constant term first),
//! each a base-10 integer.  The zero polynomial is `degree=-1` with no
//! coefficient lines, and the final coefficient of a nonzero polynomial
//! must be nonzero, so every polynomial has exactly one encoding.
//!
//! Bivariate format: a header line `bivariate` followed by one line per
//! nonzero term, `"<i> <j> <coeff>"` for the monomial `x^i y^j`, in
//! strictly increasing lexicographic `(i, j)` order.
//!
//! The parsers are strict — they reject unknown headers, wrong line
//! counts, malformed integers, unsorted or duplicate terms, and trailing
//! garbage — and never panic on arbitrary input.  File writes go through a
//! temporary file in the destination directory followed by a rename, so a
//! crash cannot leave a half-written file behind.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{BiPoly, IntPoly};

/// Errors from reading or writing serialized polynomials.
#[derive(Debug, Error)]
pub enum SerialError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

fn parse_err(line: usize, msg: impl Into<String>) -> SerialError {
    SerialError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Largest accepted exponent / degree.  Far beyond anything this crate
/// produces, but keeps hostile inputs from requesting absurd allocations.
const MAX_DEGREE: i64 = 20_000_000;

/// Render a univariate polynomial in the text format.
pub fn write_uni(p: &IntPoly) -> String {
    let mut s = String::new();
    match p.degree() {
        None => s.push_str("degree=-1\n"),
        Some(d) => {
            let _ = writeln!(s, "degree={d}");
            for c in p.coeffs() {
                let _ = writeln!(s, "{c}");
            }
        }
    }
    s
}

/// Parse the univariate text format.
pub fn parse_uni(text: &str) -> Result<IntPoly, SerialError> {
    let mut lines = split_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))??;
    let deg_str = header
        .strip_prefix("degree=")
        .ok_or_else(|| parse_err(lineno, "expected `degree=<n>` header"))?;
    // Canonical degrees only: `-1`, `0`, or digits without a leading zero,
    // so each polynomial has exactly one accepted header.
    let canonical = deg_str == "-1"
        || (!deg_str.is_empty()
            && deg_str.bytes().all(|b| b.is_ascii_digit())
            && (deg_str == "0" || !deg_str.starts_with('0')));
    let deg: i64 = if canonical { deg_str.parse().ok() } else { None }
        .ok_or_else(|| parse_err(lineno, format!("bad degree `{deg_str}`")))?;
    if deg > MAX_DEGREE {
        return Err(parse_err(lineno, format!("degree {deg} out of range")));
    }
    let expected = (deg + 1) as usize;
    let mut coeffs = Vec::with_capacity(expected.min(text.len()));
    for item in &mut lines {
        let (lineno, line) = item?;
        if coeffs.len() == expected {
            return Err(parse_err(lineno, "trailing content after coefficients"));
        }
        let c = parse_bigint(lineno, line)?;
        coeffs.push(c);
    }
    if coeffs.len() != expected {
        return Err(parse_err(
            0,
            format!("expected {expected} coefficients, found {}", coeffs.len()),
        ));
    }
    if let Some(last) = coeffs.last() {
        if last.is_zero() {
            return Err(parse_err(0, "leading coefficient must be nonzero"));
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// Render a bivariate polynomial in the text format.
pub fn write_bi(p: &BiPoly) -> String {
    let mut s = String::from("bivariate\n");
    for (i, j, c) in p.terms() {
        let _ = writeln!(s, "{i} {j} {c}");
    }
    s
}

/// Parse the bivariate text format.
pub fn parse_bi(text: &str) -> Result<BiPoly, SerialError> {
    let mut lines = split_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "empty input"))??;
    if header != "bivariate" {
        return Err(parse_err(lineno, "expected `bivariate` header"));
    }
    let mut out = BiPoly::zero();
    let mut prev: Option<(u32, u32)> = None;
    for item in lines {
        let (lineno, line) = item?;
        let mut parts = line.split(' ');
        let i = parse_exponent(lineno, parts.next())?;
        let j = parse_exponent(lineno, parts.next())?;
        let c = parse_bigint(lineno, parts.next().unwrap_or(""))?;
        if parts.next().is_some() {
            return Err(parse_err(lineno, "expected `<i> <j> <coeff>`"));
        }
        if c.is_zero() {
            return Err(parse_err(lineno, "zero coefficient not allowed"));
        }
        if let Some(p) = prev {
            if (i, j) <= p {
                return Err(parse_err(lineno, "terms must be sorted and distinct"));
            }
        }
        prev = Some((i, j));
        out.add_term(i, j, c);
    }
    Ok(out)
}

fn parse_exponent(lineno: usize, tok: Option<&str>) -> Result<u32, SerialError> {
    let tok = tok.ok_or_else(|| parse_err(lineno, "expected `<i> <j> <coeff>`"))?;
    let canonical = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && (tok == "0" || !tok.starts_with('0'));
    if !canonical {
        return Err(parse_err(lineno, format!("bad exponent `{tok}`")));
    }
    let v: u64 = tok
        .parse()
        .map_err(|_| parse_err(lineno, format!("bad exponent `{tok}`")))?;
    if v > MAX_DEGREE as u64 {
        return Err(parse_err(lineno, format!("exponent {v} out of range")));
    }
    Ok(v as u32)
}

fn parse_bigint(lineno: usize, tok: &str) -> Result<BigInt, SerialError> {
    let body = tok.strip_prefix('-').unwrap_or(tok);
    // Canonical integers only: digits, no leading zeros, no `+`, no `-0`.
    let ok = !body.is_empty()
        && body.bytes().all(|b| b.is_ascii_digit())
        && (body == "0" || !body.starts_with('0'))
        && tok != "-0";
    if !ok {
        return Err(parse_err(lineno, format!("bad integer `{tok}`")));
    }
    BigInt::from_str(tok).map_err(|e| parse_err(lineno, format!("bad integer `{tok}`: {e}")))
}

/// Iterator over `(line_number, line)`, rejecting embedded blank lines and
/// requiring the final line (if any content exists) to end with `\n`.
fn split_lines(
    text: &str,
) -> impl Iterator<Item = Result<(usize, &str), SerialError>> + '_ {
    let terminated = text.is_empty() || text.ends_with('\n');
    let body = text.strip_suffix('\n').unwrap_or(text);
    let empty = body.is_empty() && terminated;
    body.split('\n')
        .enumerate()
        .filter(move |_| !empty)
        .map(move |(idx, line)| {
            let lineno = idx + 1;
            if line.is_empty() {
                Err(parse_err(lineno, "blank line"))
            } else if !terminated {
                // Only the true last line can be unterminated; since we
                // require termination, any such line is an error, caught
                // here once per line lazily (the offending line is last).
                Err(parse_err(lineno, "missing final newline"))
            } else {
                Ok((lineno, line))
            }
        })
}

/// Atomically write `contents` to `path` (temp file + rename).
fn atomic_write(path: &Path, contents: &str) -> Result<(), SerialError> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let base = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "poly".into());
    let tmp = dir.join(format!(".{base}.tmp-{}", std::process::id()));
    std::fs::write(&tmp, contents)?;
    match std::fs::rename(&tmp, path) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = std::fs::remove_file(&tmp);
            Err(e.into())
        }
    }
}

/// Write a univariate polynomial to a file atomically.
pub fn save_uni(path: &Path, p: &IntPoly) -> Result<(), SerialError> {
    atomic_write(path, &write_uni(p))
}

/// Read a univariate polynomial from a file.
pub fn load_uni(path: &Path) -> Result<IntPoly, SerialError> {
    parse_uni(&std::fs::read_to_string(path)?)
}

/// Write a bivariate polynomial to a file atomically.
pub fn save_bi(path: &Path, p: &BiPoly) -> Result<(), SerialError> {
    atomic_write(path, &write_bi(p))
}

/// Read a bivariate polynomial from a file.
pub fn load_bi(path: &Path) -> Result<BiPoly, SerialError> {
    parse_bi(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uni_round_trip() {
        let p = IntPoly::from_i64(&[0, -4, 2, 0, 1, 1]);
        let text = write_uni(&p);
        assert_eq!(text, "degree=5\n0\n-4\n2\n0\n1\n1\n");
        assert_eq!(parse_uni(&text).unwrap(), p);
        let z = IntPoly::zero();
        assert_eq!(write_uni(&z), "degree=-1\n");
        assert_eq!(parse_uni("degree=-1\n").unwrap(), z);
    }

    #[test]
    fn uni_rejects_malformed(){
        for bad in [
            "",
            "degree=2\n1\n2\n",          // missing a coefficient
            "degree=1\n1\n2\n3\n",       // too many
            "degree=0\n0\n",             // zero leading coefficient
            "degree=x\n",
            "degree=1\n1\n02\n",         // non-canonical integer
            "degree=1\n1\n+2\n",
            "degree=1\n1\n-0\n",
            "degree=1\n1\n2",            // missing final newline
            "degree=1\n\n1\n2\n",        // blank line
            "poly\n",
            "degree=99999999999999\n",
            "degree=+1\n1\n1\n",         // non-canonical degree
            "degree=01\n1\n1\n",
            "degree=-2\n",
        ] {
            assert!(parse_uni(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn bi_round_trip() {
        let f = BiPoly::from_terms_i64(&[
            (3, 2, 1),
            (3, 1, 1),
            (3, 0, 1),
            (0, 3, -1),
            (0, 2, 2),
            (0, 1, -4),
        ]);
        let text = write_bi(&f);
        assert_eq!(parse_bi(&text).unwrap(), f);
        assert_eq!(write_bi(&BiPoly::zero()), "bivariate\n");
        assert!(parse_bi("bivariate\n").unwrap().is_zero());
    }

    #[test]
    fn bi_rejects_malformed() {
        for bad in [
            "",
            "univariate\n",
            "bivariate\n1 2\n",            // missing coefficient
            "bivariate\n1 2 3 4\n",        // extra token
            "bivariate\n1 2 0\n",          // zero coefficient
            "bivariate\n2 0 1\n1 0 1\n",   // unsorted
            "bivariate\n1 1 1\n1 1 2\n",   // duplicate
            "bivariate\n-1 0 1\n",         // negative exponent
            "bivariate\n1  2 3\n",         // double space
            "bivariate\n1 2 3",            // missing final newline
            "bivariate\n01 0 1\n",         // non-canonical exponent
        ] {
            assert!(parse_bi(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn atomic_file_round_trip() {
        let dir = std::env::temp_dir().join(format!("rccf-serial-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("r1.poly");
        let p = IntPoly::from_i64(&[0, -4, 2, 0, 1, 1]);
        save_uni(&path, &p).unwrap();
        assert_eq!(load_uni(&path).unwrap(), p);
        let bpath = dir.join("f.bipoly");
        let f = BiPoly::from_terms_i64(&[(3, 2, 1), (0, 1, -4)]);
        save_bi(&bpath, &f).unwrap();
        assert_eq!(load_bi(&bpath).unwrap(), f);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
