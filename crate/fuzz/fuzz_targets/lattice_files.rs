#![no_main]

use libfuzzer_sys::fuzz_target;
use semishift::io::{parse_lattice_measure, parse_lattice_pattern};
use semishift::rational::ratio;
use semishift::reversible::{window_measure, LatticePattern, MarkovChain1D};

fuzz_target!(|data: &str| {
    let names: Vec<String> = vec!["0".into(), "1".into()];
    if let Ok(p) = parse_lattice_pattern(data, 1, &names) {
        // The chain oracle walks the whole span, so keep windows narrow.
        if p.iter().all(|(v, _)| v.0[0].abs() <= 64) {
            let p_half = vec![ratio(1, 2), ratio(1, 2)];
            let chain = MarkovChain1D::new(p_half.clone(), vec![p_half.clone(), p_half]).unwrap();
            let _ = window_measure(&chain, &p);
        }
    }
    if let Ok(m) = parse_lattice_measure(data) {
        let _ = window_measure(m.oracle.as_ref(), &LatticePattern::from_entries([]));
    }
});
