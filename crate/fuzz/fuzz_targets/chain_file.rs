#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::io::{parse_chain, write_chain};

fuzz_target!(|data: &str| {
    if let Ok(chain) = parse_chain(data) {
        let _ = chain.validate();
        let _ = chain.invariance_witness();
        assert_eq!(parse_chain(&write_chain(&chain)).unwrap(), chain);
    }
});
