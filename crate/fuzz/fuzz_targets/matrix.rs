#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::io::parse_mat2;

fuzz_target!(|data: &str| {
    let _ = parse_mat2(data);
});
