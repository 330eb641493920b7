#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::algebra::GeneratorSet;
use semishift::io::{parse_pattern, write_pattern};

fuzz_target!(|data: &str| {
    let gs = GeneratorSet::full(3);
    let names: Vec<String> = ["0", "1", "2"].iter().map(|s| s.to_string()).collect();
    if let Ok(p) = parse_pattern(data, &gs, &names) {
        assert_eq!(parse_pattern(&write_pattern(&p, &gs, &names), &gs, &names).unwrap(), p);
    }
});
