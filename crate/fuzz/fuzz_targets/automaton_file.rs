#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::io::{parse_automaton, write_automaton};

fuzz_target!(|data: &str| {
    if let Ok(o) = parse_automaton(data) {
        // Keep the monoid closure small enough for the fuzzer's time budget.
        if o.num_states() <= 8 {
            let _ = o.transformation_monoid();
            let _ = o.lift_to_group();
        }
        let _ = o.minimize();
        assert_eq!(parse_automaton(&write_automaton(&o)).unwrap(), o);
    }
});
