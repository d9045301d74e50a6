//! Fuzz the bivariate polynomial text parser.
//!
//! Invariants checked on every input:
//!  * the parser never panics;
//!  * accepted inputs are exactly the canonical encodings (header, sorted
//!    distinct terms, canonical integers), so rendering the parsed
//!    polynomial reproduces the input byte for byte;
//!  * re-parsing the rendered form yields an equal polynomial.

#![no_main]

use libfuzzer_sys::fuzz_target;
use rccf::poly::serial::{parse_bi, write_bi};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_bi(text) {
        let rendered = write_bi(&p);
        assert_eq!(rendered, text, "accepted a non-canonical encoding");
        let reparsed = parse_bi(&rendered).expect("rendered form must parse");
        assert_eq!(reparsed, p, "round trip changed the polynomial");
    }
});
