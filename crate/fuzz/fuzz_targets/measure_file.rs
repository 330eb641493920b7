#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::io::parse_measure;
use semishift::pattern::Pattern;

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_measure(data) {
        let _ = m.as_measure().eval(&Pattern::new());
    }
});
