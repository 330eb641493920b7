#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::rational::{format_rational, parse_rational};

fuzz_target!(|data: &str| {
    if let Ok(q) = parse_rational(data) {
        assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }
});
