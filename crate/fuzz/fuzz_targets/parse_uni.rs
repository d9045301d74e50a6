//! Fuzz the univariate polynomial text parser.
//!
//! Invariants checked on every input:
//!  * the parser never panics;
//!  * accepted inputs are exactly the canonical encodings, so rendering
//!    the parsed polynomial reproduces the input byte for byte;
//!  * re-parsing the rendered form yields an equal polynomial.

#![no_main]

use libfuzzer_sys::fuzz_target;
use rccf::poly::serial::{parse_uni, write_uni};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_uni(text) {
        let rendered = write_uni(&p);
        assert_eq!(rendered, text, "accepted a non-canonical encoding");
        let reparsed = parse_uni(&rendered).expect("rendered form must parse");
        assert_eq!(reparsed, p, "round trip changed the polynomial");
    }
});
