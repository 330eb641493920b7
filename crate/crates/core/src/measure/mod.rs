//! Cylinder-measure oracles and the checks that run against any of them.

mod chain;
mod counterexample;

pub use chain::{
    extend_chain, pushforward_check, ChainIssue, InvarianceWitness, MarkovTreeChain, Matrix,
};
pub use counterexample::{
    counterexample_analyze, counterexample_chain, CounterexampleReport, Mat2, ModInequality,
};

use num_traits::Signed;
use rayon::prelude::*;

use crate::algebra::{ball, GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};
use crate::pattern::{full_patterns, Pattern};
use crate::rational::{zero, Rational};

/// Exact probability of every cylinder `[x; F]` over a semigroup `S = <Σ>⁺`.
pub trait CylinderMeasure: Sync {
    fn generators(&self) -> &GeneratorSet;

    fn alphabet_size(&self) -> usize;

    /// Must return 1 on the empty pattern.
    fn eval(&self, pattern: &Pattern) -> Result<Rational>;
}

impl<M: CylinderMeasure + ?Sized> CylinderMeasure for &M {
    fn generators(&self) -> &GeneratorSet {
        (**self).generators()
    }

    fn alphabet_size(&self) -> usize {
        (**self).alphabet_size()
    }

    fn eval(&self, pattern: &Pattern) -> Result<Rational> {
        (**self).eval(pattern)
    }
}

impl<M: CylinderMeasure + ?Sized> CylinderMeasure for Box<M> {
    fn generators(&self) -> &GeneratorSet {
        (**self).generators()
    }

    fn alphabet_size(&self) -> usize {
        (**self).alphabet_size()
    }

    fn eval(&self, pattern: &Pattern) -> Result<Rational> {
        (**self).eval(pattern)
    }
}

/// Result of an exact comparison over a finite family of patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub holds: bool,
    /// First pattern where the two sides differ, with both values.
    pub witness: Option<(Pattern, Rational, Rational)>,
}

impl CheckOutcome {
    pub fn passed() -> Self {
        CheckOutcome {
            holds: true,
            witness: None,
        }
    }

    pub fn failed(pattern: Pattern, lhs: Rational, rhs: Rational) -> Self {
        CheckOutcome {
            holds: false,
            witness: Some((pattern, lhs, rhs)),
        }
    }
}

/// Compares `μ([x; F])` with `μ(a⁻¹[x; F])` for every full pattern `x` on
/// `B_r`.
pub fn shift_invariance_check<M>(m: &M, a: Symbol, r: usize) -> Result<CheckOutcome>
where
    M: CylinderMeasure + ?Sized,
{
    let gs = m.generators();
    if !gs.contains(a) {
        return Err(Error::membership(&Word::letter(a), gs));
    }
    let domain: Vec<Word> = ball(gs, r).into_iter().collect();
    let patterns: Vec<Pattern> = full_patterns(&domain, m.alphabet_size()).collect();
    compare_on(&patterns, |x| m.eval(x), |x| m.eval(&x.translate_right(a)))
}

/// Evaluates both sides on every pattern in parallel and reports the first
/// disagreement in the order of `patterns`.
pub(crate) fn compare_on<L, R>(patterns: &[Pattern], lhs: L, rhs: R) -> Result<CheckOutcome>
where
    L: Fn(&Pattern) -> Result<Rational> + Sync,
    R: Fn(&Pattern) -> Result<Rational> + Sync,
{
    let first = patterns
        .par_iter()
        .map(|x| Ok((lhs(x)?, rhs(x)?)))
        .enumerate()
        .find_first(|(_, r): &(usize, Result<(Rational, Rational)>)| {
            r.as_ref().map_or(true, |(a, b)| a != b)
        });
    match first {
        None => Ok(CheckOutcome::passed()),
        Some((i, r)) => {
            let (a, b) = r?;
            Ok(CheckOutcome::failed(patterns[i].clone(), a, b))
        }
    }
}

/// Total variation between the `B_m`-marginals:
/// `Σ_x |μ₁[x; B_m] − μ₂[x; B_m]|` over full patterns on the ball of `m1`'s
/// generating set.
pub fn weak_star_distance<A, B>(m1: &A, m2: &B, order: usize) -> Result<Rational>
where
    A: CylinderMeasure + ?Sized,
    B: CylinderMeasure + ?Sized,
{
    let n = m1.alphabet_size();
    if m2.alphabet_size() != n {
        return Err(Error::Validation(format!(
            "alphabet sizes differ: {n} vs {}",
            m2.alphabet_size()
        )));
    }
    let domain: Vec<Word> = ball(m1.generators(), order).into_iter().collect();
    let patterns: Vec<Pattern> = full_patterns(&domain, n).collect();
    patterns
        .par_iter()
        .map(|x| Ok((m1.eval(x)? - m2.eval(x)?).abs()))
        .try_reduce(zero, |a, b| Ok(a + b))
}
