#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::io::{parse_morphism, write_morphism};

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_morphism(data) {
        assert_eq!(parse_morphism(&write_morphism(&m)).unwrap(), m);
    }
});
