//! Order-`m` Markovization of an invariant measure on `A^S`.
//!
//! Blocks are the patterns on `B_m` of positive measure. The block chain has
//! `p_α = μ[α; B_m]` and `P^a_{α,β} = μ([α; B_m] ∩ a⁻¹[β; B_m]) / p_α`, where
//! the intersection is the joint pattern on `B_m ∪ B_m·a`. The block measure
//! is pulled back to `A^S` through the higher-block code: a site `t` carrying
//! symbol `c` becomes the constraint "the block at `t` reads `c` at `ε`".

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::algebra::{ball, GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};
use crate::measure::{CylinderMeasure, InvarianceWitness, MarkovTreeChain};
use crate::pattern::{full_patterns, Pattern};
use crate::rational::{format_rational, zero, Rational};

/// The alphabet `X|_{B_m}` of a Markovization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockAlphabet {
    pub order: usize,
    /// Size of the underlying alphabet `A`.
    pub symbols: usize,
    /// `B_m` in shortlex order; `ε` comes first.
    pub domain: Vec<Word>,
    /// Values of each block along `domain`.
    pub blocks: Vec<Vec<usize>>,
    /// `μ[α; B_m]` for each block.
    pub weights: Vec<Rational>,
}

impl BlockAlphabet {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn pattern(&self, block: usize) -> Pattern {
        Pattern::on_domain(&self.domain, &self.blocks[block])
    }

    pub fn name(&self, block: usize) -> String {
        let parts: Vec<String> = self.blocks[block].iter().map(|s| s.to_string()).collect();
        parts.join(".")
    }
}

pub fn support_alphabet<M>(m: &M, order: usize) -> Result<BlockAlphabet>
where
    M: CylinderMeasure + ?Sized,
{
    let domain: Vec<Word> = ball(m.generators(), order).into_iter().collect();
    let candidates: Vec<Pattern> = full_patterns(&domain, m.alphabet_size()).collect();
    let values: Vec<Rational> = candidates
        .par_iter()
        .map(|x| m.eval(x))
        .collect::<Result<_>>()?;
    let mut blocks = Vec::new();
    let mut weights = Vec::new();
    for (x, v) in candidates.iter().zip(values) {
        if v.is_negative() {
            return Err(Error::Validation(format!(
                "oracle returned negative mass {}",
                format_rational(&v)
            )));
        }
        if v.is_positive() {
            blocks.push(domain.iter().map(|w| x.get(w).expect("full pattern")).collect());
            weights.push(v);
        }
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::OracleNotNormalized(format_rational(&total)));
    }
    Ok(BlockAlphabet {
        order,
        symbols: m.alphabet_size(),
        domain,
        blocks,
        weights,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Markovization {
    pub blocks: BlockAlphabet,
    pub chain: MarkovTreeChain,
    /// Whether the block chain passes validation and the invariance criterion.
    pub invariant: bool,
    pub issue: Option<String>,
}

impl Markovization {
    /// Whether `[α; B_m] ∩ a⁻¹[β; B_m]` is empty for purely combinatorial
    /// reasons: the two blocks disagree on the overlap `B_m ∩ B_m·a`.
    pub fn overlap_conflict(&self, a: Symbol, alpha: usize, beta: usize) -> bool {
        let b = self.blocks.pattern(beta).translate_right(a);
        self.blocks.pattern(alpha).join(&b).is_none()
    }

    /// `μ_m[x; F]` for `F ⊆ B_m`, by summing the block chain over the
    /// `ε`-blocks that extend `x`.
    pub fn eval_at_root(&self, pattern: &Pattern) -> Result<Rational> {
        let mut total = zero();
        for block in 0..self.blocks.len() {
            if pattern.is_restriction_of(&self.blocks.pattern(block)) {
                let root = Pattern::from_entries([(Word::identity(), block)]);
                total += self.chain.eval_cylinder(&root)?;
            }
        }
        Ok(total)
    }
}

impl CylinderMeasure for Markovization {
    fn generators(&self) -> &GeneratorSet {
        self.chain.gs()
    }

    fn alphabet_size(&self) -> usize {
        self.blocks.symbols
    }

    /// Pull-back of the block chain's measure to `A^S`.
    fn eval(&self, pattern: &Pattern) -> Result<Rational> {
        let evidence: BTreeMap<Word, Vec<bool>> = pattern
            .iter()
            .map(|(w, s)| {
                let allowed = self.blocks.blocks.iter().map(|b| b[0] == s).collect();
                (w.clone(), allowed)
            })
            .collect();
        self.chain.eval_evidence(&evidence)
    }
}

/// Builds the order-`m` block chain. A non-invariant oracle still yields a
/// chain; `invariant` is then false and `issue` says why.
pub fn markovize<M>(m: &M, order: usize) -> Result<Markovization>
where
    M: CylinderMeasure + ?Sized,
{
    let blocks = support_alphabet(m, order)?;
    let gs = m.generators().clone();
    let patterns: Vec<Pattern> = (0..blocks.len()).map(|b| blocks.pattern(b)).collect();
    let mut transitions = BTreeMap::new();
    for a in gs.symbols() {
        let shifted: Vec<Pattern> = patterns.iter().map(|p| p.translate_right(a)).collect();
        let rows: Vec<Vec<Rational>> = (0..blocks.len())
            .into_par_iter()
            .map(|alpha| {
                shifted
                    .iter()
                    .map(|beta| match patterns[alpha].join(beta) {
                        None => Ok(zero()),
                        Some(joint) => Ok(m.eval(&joint)? / &blocks.weights[alpha]),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        transitions.insert(a, rows);
    }
    let names = (0..blocks.len()).map(|b| blocks.name(b)).collect();
    let chain = MarkovTreeChain::new(gs, names, blocks.weights.clone(), transitions)?;
    let issue = match chain.validate().first() {
        Some(problem) => Some(problem.to_string()),
        None => chain
            .invariance_witness()?
            .map(|w: InvarianceWitness| w.to_string()),
    };
    Ok(Markovization {
        blocks,
        chain,
        invariant: issue.is_none(),
        issue,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyOutcome {
    pub oracle: Rational,
    pub markov: Rational,
    pub holds: bool,
}

/// Compares `μ[x; F]` with `μ_m[x; F]` for a pattern with keys in `B_m`.
pub fn markovization_consistency<M>(
    oracle: &M,
    markov: &Markovization,
    pattern: &Pattern,
) -> Result<ConsistencyOutcome>
where
    M: CylinderMeasure + ?Sized,
{
    for w in pattern.keys() {
        if markov.blocks.domain.binary_search(w).is_err() {
            return Err(Error::membership(w, markov.chain.gs()));
        }
    }
    let lhs = oracle.eval(pattern)?;
    let rhs = markov.eval_at_root(pattern)?;
    Ok(ConsistencyOutcome {
        holds: lhs == rhs,
        oracle: lhs,
        markov: rhs,
    })
}

/// Positive entries of the block chain whose blocks conflict on their
/// overlap. For a genuine measure this list is empty.
pub fn support_violations(markov: &Markovization) -> Vec<(Symbol, usize, usize)> {
    let mut out = Vec::new();
    for (&a, rows) in markov.chain.transitions() {
        for (alpha, row) in rows.iter().enumerate() {
            for (beta, value) in row.iter().enumerate() {
                if !value.is_zero() && markov.overlap_conflict(a, alpha, beta) {
                    out.push((a, alpha, beta));
                }
            }
        }
    }
    out
}
