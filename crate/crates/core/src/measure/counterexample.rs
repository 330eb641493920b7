//! Fully supported invariant chains over `ℤ_p²` that admit no extension to a
//! proper quotient of `F_d`, and the finite arithmetic behind that claim.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};
use crate::measure::MarkovTreeChain;
use crate::rational::{format_rational, int, one, pow, Rational};

/// Integer 2×2 matrix, row major.
pub type Mat2 = [[i64; 2]; 2];

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) && p <= u32::MAX as u64 {
        Ok(())
    } else {
        Err(Error::Validation(format!("{p} is not a supported prime")))
    }
}

fn reduce(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

fn reduce_mat(m: &Mat2, p: u64) -> [[u64; 2]; 2] {
    [
        [reduce(m[0][0], p), reduce(m[0][1], p)],
        [reduce(m[1][0], p), reduce(m[1][1], p)],
    ]
}

fn mul_mod(a: &[[u64; 2]; 2], b: &[[u64; 2]; 2], p: u64) -> [[u64; 2]; 2] {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
        }
    }
    out
}

fn apply_mod(m: &[[u64; 2]; 2], v: [u64; 2], p: u64) -> [u64; 2] {
    [
        (m[0][0] * v[0] + m[0][1] * v[1]) % p,
        (m[1][0] * v[0] + m[1][1] * v[1]) % p,
    ]
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inverse_mod(m: &[[u64; 2]; 2], p: u64) -> Option<[[u64; 2]; 2]> {
    let det = (m[0][0] * m[1][1] % p + p - m[0][1] * m[1][0] % p) % p;
    if det == 0 {
        return None;
    }
    let inv = pow_mod(det, p - 2, p);
    Some([
        [m[1][1] * inv % p, (p - m[0][1]) % p * inv % p],
        [(p - m[1][0]) % p * inv % p, m[0][0] * inv % p],
    ])
}

fn reduced_invertible(matrices: &[Mat2], p: u64) -> Result<Vec<[[u64; 2]; 2]>> {
    matrices
        .iter()
        .enumerate()
        .map(|(index, m)| {
            let r = reduce_mat(m, p);
            inverse_mod(&r, p)
                .map(|_| r)
                .ok_or(Error::NonInvertibleModP { index, prime: p })
        })
        .collect()
}

/// Alphabet index of `(u0, u1) ∈ ℤ_p²`; the first coordinate varies fastest.
fn encode(v: [u64; 2], p: u64) -> usize {
    (v[0] + p * v[1]) as usize
}

fn decode(i: usize, p: u64) -> [u64; 2] {
    let i = i as u64;
    [i % p, i / p]
}

/// Chain over `ℤ_p²` with uniform `p` and, for each generator `a_i`,
/// `P_{u,v} = 1 − (p²−1)δ` when `v = A_i u (mod p)` and `δ` otherwise.
pub fn counterexample_chain(matrices: &[Mat2], p: u64, delta: &Rational) -> Result<MarkovTreeChain> {
    if matrices.is_empty() {
        return Err(Error::Validation("at least one matrix is required".into()));
    }
    check_prime(p)?;
    let size = p * p;
    let bound = Rational::new(BigInt::from(1), BigInt::from(size - 1));
    if !delta.is_positive() || *delta >= bound {
        return Err(Error::DeltaOutOfRange {
            delta: format_rational(delta),
            bound: format_rational(&bound),
        });
    }
    let reduced = reduced_invertible(matrices, p)?;
    let n = size as usize;
    let heavy = one() - int(size as i64 - 1) * delta;
    let alphabet = (0..n)
        .map(|i| {
            let v = decode(i, p);
            format!("({},{})", v[0], v[1])
        })
        .collect();
    let uniform = Rational::new(BigInt::from(1), BigInt::from(size));
    let mut transitions = BTreeMap::new();
    for (i, m) in reduced.iter().enumerate() {
        let mut rows = vec![vec![delta.clone(); n]; n];
        for (u, row) in rows.iter_mut().enumerate() {
            let image = encode(apply_mod(m, decode(u, p), p), p);
            row[image] = heavy.clone();
        }
        transitions.insert(Symbol::gen(i as u32 + 1), rows);
    }
    let d = matrices.len() as u32;
    MarkovTreeChain::new(GeneratorSet::positive(d), alphabet, vec![uniform; n], transitions)
}

/// `lhs ≤ coefficient · δ`, the bound forced on any extension to the
/// quotient in which the kernel word becomes trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModInequality {
    pub lhs: Rational,
    pub coefficient: Rational,
}

impl ModInequality {
    pub fn holds_for(&self, delta: &Rational) -> bool {
        self.lhs <= &self.coefficient * delta
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub word: Word,
    pub prime: u64,
    /// Product of the signed matrices along the word, reduced mod `prime`.
    pub matrix: [[u64; 2]; 2],
    pub witness: [u64; 2],
    pub image: [u64; 2],
    pub cycle_length: usize,
    /// `1 / p^{2n−2}`.
    pub threshold: Rational,
    /// `1/p² ≤ p^{2n−4} δ`; fails for every `δ` below the threshold.
    pub inequality: ModInequality,
}

pub fn counterexample_analyze(
    matrices: &[Mat2],
    kernel_word: &Word,
    p: u64,
) -> Result<CounterexampleReport> {
    if kernel_word.is_identity() {
        return Err(Error::EmptyWord);
    }
    check_prime(p)?;
    if kernel_word.max_index() as usize > matrices.len() {
        return Err(Error::Validation(format!(
            "word {kernel_word} uses generators beyond the {} matrices given",
            matrices.len()
        )));
    }
    let reduced = reduced_invertible(matrices, p)?;
    let mut product = [[1, 0], [0, 1]];
    for s in kernel_word.letters() {
        let m = reduced[s.index() as usize - 1];
        let factor = if s.is_inverse() {
            inverse_mod(&m, p).expect("checked invertible")
        } else {
            m
        };
        product = mul_mod(&product, &factor, p);
    }
    let size = (p * p) as usize;
    let (witness, image) = (0..size)
        .map(|i| decode(i, p))
        .map(|v| (v, apply_mod(&product, v, p)))
        .find(|(v, mv)| v != mv)
        .ok_or(Error::NoWitness(p))?;

    let n = kernel_word.len();
    let prime = int(p as i64);
    let threshold = one() / pow(&prime, 2 * n as u32 - 2);
    let coefficient = if n >= 2 {
        pow(&prime, 2 * n as u32 - 4)
    } else {
        one() / pow(&prime, 2)
    };
    Ok(CounterexampleReport {
        word: kernel_word.clone(),
        prime: p,
        matrix: product,
        witness,
        image,
        cycle_length: n,
        threshold,
        inequality: ModInequality {
            lhs: one() / pow(&prime, 2),
            coefficient,
        },
    })
}
