//! Finite-window extension of `ℕ^d`-invariant measures to `ℤ^d`.
//!
//! A pattern on a window `F ⊆ ℤ^d` is moved into `ℕ^d` by subtracting the
//! componentwise minimum `m_F`, and the `ℕ^d`-oracle is evaluated there. For
//! invariant oracles the result does not depend on which lower bound is
//! used, and the family of window measures is consistent and
//! translation invariant.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::LatticeVector;
use crate::error::{Error, Result};
use crate::measure::Matrix;
use crate::pattern::Assignments;
use crate::rational::{one, zero, Rational};

pub type LatticeWindow = BTreeSet<LatticeVector>;

/// Finite map from lattice sites to alphabet indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LatticePattern {
    entries: BTreeMap<LatticeVector, usize>,
}

impl LatticePattern {
    pub fn from_entries<I: IntoIterator<Item = (LatticeVector, usize)>>(entries: I) -> Self {
        LatticePattern {
            entries: entries.into_iter().collect(),
        }
    }

    pub fn get(&self, v: &LatticeVector) -> Option<usize> {
        self.entries.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, usize)> {
        self.entries.iter().map(|(v, &s)| (v, s))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn window(&self) -> LatticeWindow {
        self.entries.keys().cloned().collect()
    }

    pub fn translate(&self, g: &LatticeVector) -> LatticePattern {
        LatticePattern::from_entries(self.iter().map(|(v, s)| (v.add(g), s)))
    }

    fn dim(&self) -> Option<usize> {
        self.entries.keys().next().map(LatticeVector::dim)
    }
}

/// A measure on `A^{ℕ^d}` given by its cylinder probabilities.
pub trait LatticeOracle {
    fn dim(&self) -> usize;

    fn alphabet_size(&self) -> usize;

    /// Keys must lie in `ℕ^d`.
    fn eval(&self, pattern: &LatticePattern) -> Result<Rational>;
}

fn check_pattern(pattern: &LatticePattern, dim: usize, alphabet: usize, cone: bool) -> Result<()> {
    for (v, s) in pattern.iter() {
        if v.dim() != dim {
            return Err(Error::Validation(format!("site {v} is not in dimension {dim}")));
        }
        if cone && !v.in_positive_cone() {
            return Err(Error::Validation(format!("site {v} is outside the positive cone")));
        }
        if s >= alphabet {
            return Err(Error::Validation(format!("symbol {s} at {v} outside the alphabet")));
        }
    }
    Ok(())
}

fn check_distribution(p: &[Rational]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::Validation("empty distribution".into()));
    }
    if p.iter().any(|x| *x < zero()) || p.iter().sum::<Rational>() != one() {
        return Err(Error::Validation("not a probability vector".into()));
    }
    Ok(())
}

/// I.i.d. measure on `A^{ℕ^d}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductMeasure {
    d: usize,
    p: Vec<Rational>,
}

impl ProductMeasure {
    pub fn new(d: usize, p: Vec<Rational>) -> Result<Self> {
        check_distribution(&p)?;
        if d == 0 {
            return Err(Error::Validation("dimension must be positive".into()));
        }
        Ok(ProductMeasure { d, p })
    }

    pub fn p(&self) -> &[Rational] {
        &self.p
    }
}

impl LatticeOracle for ProductMeasure {
    fn dim(&self) -> usize {
        self.d
    }

    fn alphabet_size(&self) -> usize {
        self.p.len()
    }

    fn eval(&self, pattern: &LatticePattern) -> Result<Rational> {
        check_pattern(pattern, self.d, self.p.len(), true)?;
        Ok(pattern.iter().map(|(_, s)| self.p[s].clone()).product())
    }
}

/// Markov chain on `ℕ` started from `p`. Stationary (and so invariant)
/// exactly when `pP = p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovChain1D {
    p: Vec<Rational>,
    transition: Matrix,
}

impl MarkovChain1D {
    pub fn new(p: Vec<Rational>, transition: Matrix) -> Result<Self> {
        check_distribution(&p)?;
        let n = p.len();
        if transition.len() != n {
            return Err(Error::Validation(format!("transition matrix is not {n}x{n}")));
        }
        for row in &transition {
            if row.len() != n {
                return Err(Error::Validation(format!("transition matrix is not {n}x{n}")));
            }
            check_distribution(row)?;
        }
        Ok(MarkovChain1D { p, transition })
    }

    pub fn p(&self) -> &[Rational] {
        &self.p
    }

    pub fn transition(&self) -> &Matrix {
        &self.transition
    }

    pub fn is_stationary(&self) -> bool {
        self.step(&self.p) == self.p
    }

    fn step(&self, dist: &[Rational]) -> Vec<Rational> {
        let n = self.p.len();
        (0..n)
            .map(|l| (0..n).map(|k| &dist[k] * &self.transition[k][l]).sum())
            .collect()
    }
}

impl LatticeOracle for MarkovChain1D {
    fn dim(&self) -> usize {
        1
    }

    fn alphabet_size(&self) -> usize {
        self.p.len()
    }

    fn eval(&self, pattern: &LatticePattern) -> Result<Rational> {
        check_pattern(pattern, 1, self.p.len(), true)?;
        // Forward pass over sorted sites: `dist` is the joint mass of the
        // constraints seen so far, as a function of the current state.
        let mut dist = self.p.clone();
        let mut time = 0i64;
        for (v, s) in pattern.iter() {
            let t = v.0[0];
            for _ in time..t {
                dist = self.step(&dist);
            }
            time = t;
            for (k, x) in dist.iter_mut().enumerate() {
                if k != s {
                    *x = zero();
                }
            }
        }
        Ok(dist.into_iter().sum())
    }
}

/// Largest box a [`TableMeasure`] may cover.
pub const MAX_TABLE_SITES: usize = 32;

/// Explicit probabilities for every configuration of the box
/// `[0, n_1) × ⋯ × [0, n_d)`; windows must fit inside the box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableMeasure {
    shape: Vec<usize>,
    alphabet_size: usize,
    probs: Vec<Rational>,
}

impl TableMeasure {
    /// `probs` is indexed by box configurations in lexicographic order of
    /// sites, the last site varying fastest.
    pub fn new(shape: Vec<usize>, alphabet_size: usize, probs: Vec<Rational>) -> Result<Self> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::Validation("box must have positive side lengths".into()));
        }
        let expected = shape
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .filter(|&sites| sites <= MAX_TABLE_SITES)
            .and_then(|sites| alphabet_size.checked_pow(sites as u32))
            .ok_or_else(|| Error::Validation("table is too large".into()))?;
        if probs.len() != expected {
            return Err(Error::Validation(format!(
                "table has {} entries, expected {expected}",
                probs.len()
            )));
        }
        check_distribution(&probs)?;
        Ok(TableMeasure {
            shape,
            alphabet_size,
            probs,
        })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    fn sites(&self) -> Vec<LatticeVector> {
        let mut out = Vec::new();
        let total: usize = self.shape.iter().product();
        for mut i in 0..total {
            let mut coords = vec![0i64; self.shape.len()];
            for (c, &n) in coords.iter_mut().zip(&self.shape).rev() {
                *c = (i % n) as i64;
                i /= n;
            }
            out.push(LatticeVector(coords));
        }
        out
    }
}

impl LatticeOracle for TableMeasure {
    fn dim(&self) -> usize {
        self.shape.len()
    }

    fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    fn eval(&self, pattern: &LatticePattern) -> Result<Rational> {
        check_pattern(pattern, self.shape.len(), self.alphabet_size, true)?;
        let sites = self.sites();
        let position: BTreeMap<&LatticeVector, usize> =
            sites.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let constraints: Vec<(usize, usize)> = pattern
            .iter()
            .map(|(v, s)| {
                position
                    .get(v)
                    .map(|&i| (i, s))
                    .ok_or_else(|| Error::Validation(format!("site {v} is outside the table's box")))
            })
            .collect::<Result<_>>()?;
        let total = Assignments::new(self.alphabet_size, sites.len())
            .zip(&self.probs)
            .filter(|(config, _)| constraints.iter().all(|&(i, s)| config[i] == s))
            .map(|(_, p)| p.clone())
            .sum();
        Ok(total)
    }
}

/// Componentwise minimum `m_F`.
pub fn lower_bound(window: &LatticeWindow) -> Result<LatticeVector> {
    let mut it = window.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Validation("window is empty".into()))?;
    let mut out = first.clone();
    for v in it {
        if v.dim() != out.dim() {
            return Err(Error::Validation("window mixes dimensions".into()));
        }
        for (o, c) in out.0.iter_mut().zip(&v.0) {
            *o = (*o).min(*c);
        }
    }
    Ok(out)
}

/// `μ_F` on a pattern over any finite window of `ℤ^d`.
pub fn window_measure<O: LatticeOracle + ?Sized>(oracle: &O, pattern: &LatticePattern) -> Result<Rational> {
    if pattern.is_empty() {
        return Ok(one());
    }
    let base = lower_bound(&pattern.window())?;
    window_measure_from(oracle, pattern, &base)
}

/// Like [`window_measure`] with an explicit lower bound, which must satisfy
/// `t − base ∈ ℕ^d` for every site `t`.
pub fn window_measure_from<O: LatticeOracle + ?Sized>(
    oracle: &O,
    pattern: &LatticePattern,
    base: &LatticeVector,
) -> Result<Rational> {
    if let Some(d) = pattern.dim() {
        if d != oracle.dim() || base.dim() != d {
            return Err(Error::Validation(format!(
                "pattern dimension {d} does not match the oracle's {}",
                oracle.dim()
            )));
        }
    }
    let neg = LatticeVector(base.0.iter().map(|c| -c).collect());
    let moved = pattern.translate(&neg);
    if let Some((v, _)) = moved.iter().find(|(v, _)| !v.in_positive_cone()) {
        return Err(Error::Validation(format!(
            "{base} is not a lower bound of the window (site {})",
            v.add(base)
        )));
    }
    oracle.eval(&moved)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCheck {
    pub holds: bool,
    pub witness: Option<(LatticePattern, Rational, Rational)>,
}

impl WindowCheck {
    fn passed() -> Self {
        WindowCheck {
            holds: true,
            witness: None,
        }
    }

    fn failed(p: LatticePattern, lhs: Rational, rhs: Rational) -> Self {
        WindowCheck {
            holds: false,
            witness: Some((p, lhs, rhs)),
        }
    }
}

/// For patterns on `F` (all of them if there are at most `trials`,
/// otherwise `trials` seeded samples), checks that summing `μ_K` over the
/// completions to `K ⊇ F` gives `μ_F`.
pub fn window_consistency<O: LatticeOracle + ?Sized>(
    oracle: &O,
    small: &LatticeWindow,
    large: &LatticeWindow,
    trials: usize,
    seed: u64,
) -> Result<WindowCheck> {
    if !small.is_subset(large) {
        return Err(Error::Validation("F is not contained in K".into()));
    }
    let n = oracle.alphabet_size();
    let f_sites: Vec<&LatticeVector> = small.iter().collect();
    let extra: Vec<&LatticeVector> = large.difference(small).collect();
    let all: Vec<Vec<usize>> = Assignments::new(n, f_sites.len()).collect();
    let chosen: Vec<&Vec<usize>> = if all.len() <= trials {
        all.iter().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut idx = sample(&mut rng, all.len(), trials).into_vec();
        idx.sort_unstable();
        idx.into_iter().map(|i| &all[i]).collect()
    };
    for values in chosen {
        let pattern =
            LatticePattern::from_entries(f_sites.iter().map(|v| (*v).clone()).zip(values.iter().copied()));
        let lhs = window_measure(oracle, &pattern)?;
        let mut rhs = zero();
        for completion in Assignments::new(n, extra.len()) {
            let mut full = pattern.clone();
            for (v, s) in extra.iter().zip(completion) {
                full.entries.insert((*v).clone(), s);
            }
            rhs += window_measure(oracle, &full)?;
        }
        if lhs != rhs {
            return Ok(WindowCheck::failed(pattern, lhs, rhs));
        }
    }
    Ok(WindowCheck::passed())
}

/// `μ_F(pattern) = μ_{F+g}(pattern + g)`.
pub fn window_translation_invariance<O: LatticeOracle + ?Sized>(
    oracle: &O,
    pattern: &LatticePattern,
    g: &LatticeVector,
) -> Result<WindowCheck> {
    let lhs = window_measure(oracle, pattern)?;
    let rhs = window_measure(oracle, &pattern.translate(g))?;
    Ok(if lhs == rhs {
        WindowCheck::passed()
    } else {
        WindowCheck::failed(pattern.clone(), lhs, rhs)
    })
}

/// Compares `μ_F` computed from `m_F` with the value computed from the
/// lower bound `m_F − shift`, `shift ∈ ℕ^d`.
pub fn window_base_independence<O: LatticeOracle + ?Sized>(
    oracle: &O,
    pattern: &LatticePattern,
    shift: &LatticeVector,
) -> Result<WindowCheck> {
    if !shift.in_positive_cone() {
        return Err(Error::Validation(format!("shift {shift} is not in the positive cone")));
    }
    let lhs = window_measure(oracle, pattern)?;
    if pattern.is_empty() {
        return Ok(WindowCheck::passed());
    }
    let base = lower_bound(&pattern.window())?.sub(shift);
    let rhs = window_measure_from(oracle, pattern, &base)?;
    Ok(if lhs == rhs {
        WindowCheck::passed()
    } else {
        WindowCheck::failed(pattern.clone(), lhs, rhs)
    })
}
