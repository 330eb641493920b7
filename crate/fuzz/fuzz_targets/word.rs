#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::algebra::{GeneratorSet, Word};

fuzz_target!(|data: &str| {
    if let Ok(w) = data.parse::<Word>() {
        // Printing at any sufficient rank must parse back to the same word.
        let back: Word = w.to_string().parse().expect("printed word parses");
        assert_eq!(back, w);
        let gs = GeneratorSet::full(w.max_index().max(1));
        assert_eq!(gs.parse_word(&gs.format_word(&w)).unwrap(), w);
    }
});
