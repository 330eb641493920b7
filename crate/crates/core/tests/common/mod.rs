//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use semishift::algebra::{ball, GeneratorSet, Symbol, Word};
use semishift::measure::{MarkovTreeChain, Matrix};
use semishift::orbit::OrbitAutomaton;
use semishift::pattern::Pattern;
use semishift::rational::{int, ratio};
use semishift::Rational;

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

pub fn gs2() -> GeneratorSet {
    GeneratorSet::from_signed(2, &[1, 2]).unwrap()
}

pub fn third_matrix() -> Matrix {
    vec![vec![ratio(1, 2), ratio(1, 2)], vec![ratio(1, 4), ratio(3, 4)]]
}

/// `p = (1/3, 2/3)` with `P^a = P^b = [[1/2,1/2],[1/4,3/4]]`.
pub fn third_chain() -> MarkovTreeChain {
    MarkovTreeChain::new(
        gs2(),
        names(2),
        vec![ratio(1, 3), ratio(2, 3)],
        BTreeMap::from([(Symbol::gen(1), third_matrix()), (Symbol::gen(2), third_matrix())]),
    )
    .unwrap()
}

pub fn pattern(entries: &[(&str, usize)]) -> Pattern {
    entries.iter().map(|(w, s)| (w.parse().unwrap(), *s)).collect()
}

/// Positive probability vector with small denominators.
pub fn distribution(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    let w: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=6)).collect();
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| ratio(x, total)).collect()
}

/// Stochastic matrix, zeros allowed.
pub fn stochastic(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    (0..n)
        .map(|_| {
            let mut w: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
            if w.iter().all(|&x| x == 0) {
                w[rng.gen_range(0..n)] = 1;
            }
            let total: i64 = w.iter().sum();
            w.into_iter().map(|x| ratio(x, total)).collect()
        })
        .collect()
}

pub fn row_times(p: &[Rational], m: &Matrix) -> Vec<Rational> {
    let n = p.len();
    (0..n)
        .map(|j| (0..n).map(|i| &p[i] * &m[i][j]).sum())
        .collect()
}

/// `C = D⁻¹F` where `F` pushes mass `c` around the cycle `0 → 1 → … → 0`.
fn cycle_flow(p: &[Rational], c: &Rational) -> Matrix {
    let n = p.len();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 0..n {
        m[k][k] += (&p[k] - c) / &p[k];
        m[k][(k + 1) % n] += c / &p[k];
    }
    m
}

/// Random matrix with `pP = p`: a convex mix of `I`, rows equal to `p`,
/// and a cycle flow.
pub fn stationary_matrix(rng: &mut ChaCha8Rng, p: &[Rational]) -> Matrix {
    let n = p.len();
    let mut lam: Vec<i64> = (0..3).map(|_| rng.gen_range(0..=3)).collect();
    if lam.iter().all(|&x| x == 0) {
        lam[1] = 1;
    }
    let total: i64 = lam.iter().sum();
    let min = p.iter().min().unwrap().clone();
    let c = min * ratio(rng.gen_range(1..=3), 4);
    let flow = cycle_flow(p, &c);
    (0..n)
        .map(|k| {
            (0..n)
                .map(|l| {
                    let id = if k == l { Rational::one() } else { Rational::zero() };
                    (int(lam[0]) * id + int(lam[1]) * &p[l] + int(lam[2]) * &flow[k][l]) / int(total)
                })
                .collect()
        })
        .collect()
}

/// `P^{a⁻¹}_{kl} = p_l P^a_{lk} / p_k`.
pub fn time_reversal(p: &[Rational], m: &Matrix) -> Matrix {
    let n = p.len();
    (0..n)
        .map(|k| (0..n).map(|l| &p[l] * &m[l][k] / &p[k]).collect())
        .collect()
}

/// Random nonempty `Σ ⊆ {a_1^±, …, a_d^±}`.
pub fn random_sigma(rng: &mut ChaCha8Rng, d: u32) -> GeneratorSet {
    loop {
        let mut signed = Vec::new();
        for i in 1..=d as i64 {
            match rng.gen_range(0..4) {
                0 => signed.push(i),
                1 => signed.push(-i),
                2 => signed.extend([i, -i]),
                _ => {}
            }
        }
        if !signed.is_empty() {
            return GeneratorSet::from_signed(d, &signed).unwrap();
        }
    }
}

/// Invariant chain: stationary matrices, inverse pairs related by time reversal.
pub fn invariant_chain(rng: &mut ChaCha8Rng, gs: &GeneratorSet, n: usize) -> MarkovTreeChain {
    let p = distribution(rng, n);
    let mut transitions = BTreeMap::new();
    for i in 1..=gs.rank() {
        let m = stationary_matrix(rng, &p);
        let (a, inv) = (Symbol::gen(i), Symbol::inv(i));
        match (gs.contains(a), gs.contains(inv)) {
            (true, true) => {
                transitions.insert(inv, time_reversal(&p, &m));
                transitions.insert(a, m);
            }
            (true, false) => {
                transitions.insert(a, m);
            }
            (false, true) => {
                transitions.insert(inv, m);
            }
            (false, false) => {}
        }
    }
    MarkovTreeChain::new(gs.clone(), names(n), p, transitions).unwrap()
}

/// Any chain, invariant or not.
pub fn random_chain(rng: &mut ChaCha8Rng, gs: &GeneratorSet, n: usize) -> MarkovTreeChain {
    let p = distribution(rng, n);
    let transitions = gs.symbols().map(|a| (a, stochastic(rng, n))).collect();
    MarkovTreeChain::new(gs.clone(), names(n), p, transitions).unwrap()
}

/// Chain known to violate the criterion, checked directly: either some
/// `pP^a ≠ p`, or an inverse pair breaks detailed balance.
pub fn non_invariant_chain(rng: &mut ChaCha8Rng) -> MarkovTreeChain {
    if rng.gen_bool(0.5) {
        let gs = GeneratorSet::from_signed(2, &[1, 2]).unwrap();
        loop {
            let n = rng.gen_range(2..=3);
            let p = distribution(rng, n);
            let bad = stochastic(rng, n);
            if row_times(&p, &bad) == p {
                continue;
            }
            let good = stationary_matrix(rng, &p);
            let mut t = BTreeMap::from([(Symbol::gen(1), good), (Symbol::gen(2), bad)]);
            if rng.gen_bool(0.5) {
                let (a, b) = (t.remove(&Symbol::gen(1)).unwrap(), t.remove(&Symbol::gen(2)).unwrap());
                t.insert(Symbol::gen(1), b);
                t.insert(Symbol::gen(2), a);
            }
            return MarkovTreeChain::new(gs, names(n), p, t).unwrap();
        }
    }
    let gs = GeneratorSet::from_signed(2, &[1, -1, 2]).unwrap();
    loop {
        let n = 3;
        let p = distribution(rng, n);
        let m = stationary_matrix(rng, &p);
        let balanced = (0..n).all(|k| (0..n).all(|l| &p[k] * &m[k][l] == &p[l] * &m[l][k]));
        if balanced {
            continue;
        }
        let t = BTreeMap::from([
            (Symbol::gen(1), m.clone()),
            (Symbol::inv(1), m),
            (Symbol::gen(2), stationary_matrix(rng, &p)),
        ]);
        return MarkovTreeChain::new(gs, names(n), p, t).unwrap();
    }
}

/// Pattern on up to `size` random words of `B_r ∩ S`.
pub fn random_pattern(rng: &mut ChaCha8Rng, gs: &GeneratorSet, r: usize, n: usize, size: usize) -> Pattern {
    let words: Vec<Word> = ball(gs, r).into_iter().collect();
    let k = rng.gen_range(1..=size.min(words.len()));
    words
        .choose_multiple(rng, k)
        .map(|w| (w.clone(), rng.gen_range(0..n)))
        .collect()
}

fn drop_first(w: &Word) -> Word {
    Word::from_letters(w.letters()[1..].iter().copied())
}

/// `μ[x; F]` by summing the product formula over every assignment of the
/// suffix closure of `F`. The tree edge into `w ≠ ε` comes from `w` minus
/// its first letter `a` and uses `P^a`.
pub fn brute_force_eval(chain: &MarkovTreeChain, x: &Pattern) -> Rational {
    let mut hull: BTreeSet<Word> = BTreeSet::new();
    for w in x.keys() {
        let letters = w.letters();
        for i in 0..=letters.len() {
            hull.insert(Word::from_letters(letters[i..].iter().copied()));
        }
    }
    let hull: Vec<Word> = hull.into_iter().collect();
    let free: Vec<usize> = (0..hull.len()).filter(|&i| x.get(&hull[i]).is_none()).collect();
    let n = chain.alphabet().len();
    let position: BTreeMap<&Word, usize> = hull.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut values: Vec<usize> = hull.iter().map(|w| x.get(w).unwrap_or(0)).collect();
    let mut total = Rational::zero();
    let combos = n.pow(free.len() as u32);
    for mut code in 0..combos {
        for &i in &free {
            values[i] = code % n;
            code /= n;
        }
        let mut term = chain.p()[values[position[&Word::identity()]]].clone();
        for (i, w) in hull.iter().enumerate() {
            if w.is_identity() {
                continue;
            }
            let a = w.letters()[0];
            let parent = position[&drop_first(w)];
            term *= &chain.matrix(a).unwrap()[values[parent]][values[i]];
        }
        total += term;
    }
    total
}

/// Random automaton with at most `max_states` states, trimmed to the part
/// reachable from state 0.
pub fn random_automaton(rng: &mut ChaCha8Rng, gs: &GeneratorSet, max_states: usize) -> OrbitAutomaton {
    let n = rng.gen_range(1..=max_states);
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
    let delta = gs
        .symbols()
        .map(|a| {
            let map: Vec<usize> = if rng.gen_bool(0.4) {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(rng);
                perm
            } else {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            };
            (a, map)
        })
        .collect();
    OrbitAutomaton::trimmed(gs.clone(), names(2), labels, delta, 0).unwrap()
}

/// `M^k` for a square rational matrix.
pub fn matrix_power(m: &Matrix, k: usize) -> Matrix {
    let n = m.len();
    let mut out: Matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    for _ in 0..k {
        out = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|l| &out[i][l] * &m[l][j]).sum()).collect())
            .collect();
    }
    out
}
