mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semishift::algebra::{ball, tree_hull, tree_validate, GeneratorSet, Symbol, Word};
use semishift::io;
use semishift::rational::{format_rational, parse_rational, ratio};

fn word(d: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=d, any::<bool>()), 0..=max_len).prop_map(|letters| {
        Word::from_letters(letters.into_iter().map(|(i, inv)| Symbol::new(i, inv).unwrap()))
    })
}

fn positive_word(d: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=d, 0..=max_len)
        .prop_map(|letters| Word::from_letters(letters.into_iter().map(Symbol::gen)))
}

proptest! {
    #[test]
    fn multiplication_is_associative(u in word(3, 6), v in word(3, 6), w in word(3, 6)) {
        prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
    }

    #[test]
    fn inverses_cancel(u in word(3, 8)) {
        prop_assert!(u.mul(&u.inverse()).is_identity());
        prop_assert!(u.inverse().mul(&u).is_identity());
        prop_assert_eq!(u.inverse().inverse(), u);
    }

    #[test]
    fn words_print_and_parse(u in word(12, 6)) {
        let gs = GeneratorSet::full(12);
        prop_assert_eq!(gs.parse_word(&gs.format_word(&u)).unwrap(), u.clone());
        let small = GeneratorSet::full(3);
        let v = Word::from_letters(u.letters().iter().filter(|s| s.index() <= 3).copied());
        prop_assert_eq!(small.format_word(&v).parse::<Word>().unwrap(), v);
    }

    #[test]
    fn ball_sizes(d in 1u32..=3, r in 0usize..=4) {
        let size = ball(&GeneratorSet::positive(d), r).len() as u64;
        let expected = if d == 1 { r as u64 + 1 } else { (d as u64).pow(r as u32 + 1).saturating_sub(1) / (d as u64 - 1) };
        prop_assert_eq!(size, expected);
    }

    #[test]
    fn free_group_ball_sizes(r in 0usize..=4) {
        // 1 + 4 · (3^r − 1) / 2 reduced words of length ≤ r in F_2.
        let expected = 1 + 2 * (3u64.pow(r as u32) - 1);
        prop_assert_eq!(ball(&GeneratorSet::full(2), r).len() as u64, expected);
    }

    #[test]
    fn hull_is_idempotent(words in prop::collection::vec(positive_word(2, 4), 1..5)) {
        let gs = GeneratorSet::positive(2);
        let hull = tree_hull(&words, &gs).unwrap();
        prop_assert_eq!(hull.edges().len() + 1, hull.vertices().len());
        prop_assert!(words.iter().all(|w| hull.vertices().contains(w)));
        let again = tree_hull(hull.vertices(), &gs).unwrap();
        prop_assert_eq!(again.vertices(), hull.vertices());
        prop_assert!(tree_validate(hull.vertices(), &gs).is_valid());
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let q = ratio(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn chain_files_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = common::random_sigma(&mut rng, 2);
        let chain = common::random_chain(&mut rng, &gs, n);
        let text = io::write_chain(&chain);
        prop_assert_eq!(io::parse_chain(&text).unwrap(), chain);
        prop_assert_eq!(io::write_chain(&io::parse_chain(&text).unwrap()), text);
    }

    #[test]
    fn automaton_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = common::random_sigma(&mut rng, 2);
        let o = common::random_automaton(&mut rng, &gs, 6);
        prop_assert_eq!(io::parse_automaton(&io::write_automaton(&o)).unwrap(), o);
    }

    #[test]
    fn pattern_files_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gs = common::random_sigma(&mut rng, 2);
        let names = common::names(3);
        let x = common::random_pattern(&mut rng, &gs, 3, 3, 6);
        let text = io::write_pattern(&x, &gs, &names);
        prop_assert_eq!(io::parse_pattern(&text, &gs, &names).unwrap(), x);
    }
}
