//! Markov Σ-tree chains: validation, invariance, cylinder evaluation and the
//! extension to `Σ^±`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{ball, tree_hull, GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};
use crate::measure::{compare_on, CheckOutcome, CylinderMeasure};
use crate::pattern::{full_patterns, Pattern};
use crate::rational::{format_rational, one, zero, Rational};

pub type Matrix = Vec<Vec<Rational>>;

/// A pair `(p, {P^a : a ∈ Σ})` over a finite alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkovTreeChain {
    gs: GeneratorSet,
    alphabet: Vec<String>,
    p: Vec<Rational>,
    transitions: BTreeMap<Symbol, Matrix>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainIssue {
    NonPositiveP { symbol: usize, value: Rational },
    PSumNotOne { sum: Rational },
    NegativeEntry { generator: Symbol, row: usize, col: usize, value: Rational },
    RowSumNotOne { generator: Symbol, row: usize, sum: Rational },
}

impl fmt::Display for ChainIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainIssue::NonPositiveP { symbol, value } => {
                write!(f, "p[{symbol}] = {} is not positive", format_rational(value))
            }
            ChainIssue::PSumNotOne { sum } => write!(f, "p sums to {}", format_rational(sum)),
            ChainIssue::NegativeEntry { generator, row, col, value } => write!(
                f,
                "P^{generator}[{row}][{col}] = {} is negative",
                format_rational(value)
            ),
            ChainIssue::RowSumNotOne { generator, row, sum } => write!(
                f,
                "P^{generator} row {row} sums to {}",
                format_rational(sum)
            ),
        }
    }
}

/// First equation of the invariance criterion that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvarianceWitness {
    /// `(pP^a)_col ≠ p_col`.
    Eigenvector { generator: Symbol, col: usize, lhs: Rational, rhs: Rational },
    /// `p_k P^{a⁻¹}_{k,l} ≠ p_l P^a_{l,k}`.
    DetailedBalance { generator: Symbol, k: usize, l: usize, lhs: Rational, rhs: Rational },
}

impl fmt::Display for InvarianceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvarianceWitness::Eigenvector { generator, col, lhs, rhs } => write!(
                f,
                "(pP^{generator})[{col}] = {} != p[{col}] = {}",
                format_rational(lhs),
                format_rational(rhs)
            ),
            InvarianceWitness::DetailedBalance { generator, k, l, lhs, rhs } => write!(
                f,
                "p[{k}] P^{}[{k}][{l}] = {} != p[{l}] P^{generator}[{l}][{k}] = {}",
                generator.inverse(),
                format_rational(lhs),
                format_rational(rhs)
            ),
        }
    }
}

impl MarkovTreeChain {
    /// Checks shapes only; numeric invariants are reported by [`validate`](Self::validate).
    pub fn new(
        gs: GeneratorSet,
        alphabet: Vec<String>,
        p: Vec<Rational>,
        transitions: BTreeMap<Symbol, Matrix>,
    ) -> Result<Self> {
        let n = alphabet.len();
        if n == 0 {
            return Err(Error::Validation("alphabet is empty".into()));
        }
        let distinct: BTreeSet<&String> = alphabet.iter().collect();
        if distinct.len() != n {
            return Err(Error::Validation("alphabet names are not distinct".into()));
        }
        if p.len() != n {
            return Err(Error::Validation(format!(
                "p has {} entries for an alphabet of {n}",
                p.len()
            )));
        }
        for a in gs.symbols() {
            let m = transitions
                .get(&a)
                .ok_or_else(|| Error::Validation(format!("missing matrix for generator {a}")))?;
            if m.len() != n || m.iter().any(|row| row.len() != n) {
                return Err(Error::Validation(format!("matrix for {a} is not {n}x{n}")));
            }
        }
        if let Some(extra) = transitions.keys().find(|a| !gs.contains(**a)) {
            return Err(Error::Validation(format!("matrix for {extra} which is not in sigma")));
        }
        Ok(MarkovTreeChain {
            gs,
            alphabet,
            p,
            transitions,
        })
    }

    /// I.i.d. measure: every row of every `P^a` equals `p`.
    pub fn bernoulli(gs: GeneratorSet, alphabet: Vec<String>, p: Vec<Rational>) -> Result<Self> {
        let rows: Matrix = vec![p.clone(); p.len()];
        let transitions = gs.symbols().map(|a| (a, rows.clone())).collect();
        MarkovTreeChain::new(gs, alphabet, p, transitions)
    }

    pub fn gs(&self) -> &GeneratorSet {
        &self.gs
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn p(&self) -> &[Rational] {
        &self.p
    }

    pub fn transitions(&self) -> &BTreeMap<Symbol, Matrix> {
        &self.transitions
    }

    pub fn matrix(&self, a: Symbol) -> Option<&Matrix> {
        self.transitions.get(&a)
    }

    pub fn validate(&self) -> Vec<ChainIssue> {
        let mut issues = Vec::new();
        for (symbol, value) in self.p.iter().enumerate() {
            if !value.is_positive() {
                issues.push(ChainIssue::NonPositiveP {
                    symbol,
                    value: value.clone(),
                });
            }
        }
        let sum: Rational = self.p.iter().sum();
        if !sum.is_one() {
            issues.push(ChainIssue::PSumNotOne { sum });
        }
        for (&generator, m) in &self.transitions {
            for (row, entries) in m.iter().enumerate() {
                for (col, value) in entries.iter().enumerate() {
                    if value.is_negative() {
                        issues.push(ChainIssue::NegativeEntry {
                            generator,
                            row,
                            col,
                            value: value.clone(),
                        });
                    }
                }
                let sum: Rational = entries.iter().sum();
                if !sum.is_one() {
                    issues.push(ChainIssue::RowSumNotOne { generator, row, sum });
                }
            }
        }
        issues
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            Some(issue) => Err(Error::InvalidChain(issue.to_string())),
            None => Ok(()),
        }
    }

    /// Exact invariance criterion: `pP^a = p` for every `a ∈ Σ`, and detailed
    /// balance for every inverse pair inside `Σ`. Returns the first failing
    /// equation.
    pub fn invariance_witness(&self) -> Result<Option<InvarianceWitness>> {
        self.ensure_valid()?;
        let n = self.alphabet.len();
        for (&generator, m) in &self.transitions {
            #[allow(clippy::needless_range_loop)]
            for col in 0..n {
                let lhs: Rational = (0..n).map(|k| &self.p[k] * &m[k][col]).sum();
                if lhs != self.p[col] {
                    return Ok(Some(InvarianceWitness::Eigenvector {
                        generator,
                        col,
                        lhs,
                        rhs: self.p[col].clone(),
                    }));
                }
            }
        }
        for a in self.gs.inverse_pairs() {
            let forward = &self.transitions[&a];
            let backward = &self.transitions[&a.inverse()];
            for k in 0..n {
                for l in 0..n {
                    let lhs = &self.p[k] * &backward[k][l];
                    let rhs = &self.p[l] * &forward[l][k];
                    if lhs != rhs {
                        return Ok(Some(InvarianceWitness::DetailedBalance {
                            generator: a,
                            k,
                            l,
                            lhs,
                            rhs,
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_invariant(&self) -> Result<bool> {
        Ok(self.invariance_witness()?.is_none())
    }

    /// Cylinder probability of `pattern`, summing over the unconstrained
    /// vertices of its tree hull.
    pub fn eval_cylinder(&self, pattern: &Pattern) -> Result<Rational> {
        pattern.check_alphabet(self.alphabet.len())?;
        let n = self.alphabet.len();
        let evidence: BTreeMap<Word, Vec<bool>> = pattern
            .iter()
            .map(|(w, s)| {
                let mut allowed = vec![false; n];
                allowed[s] = true;
                (w.clone(), allowed)
            })
            .collect();
        self.eval_evidence(&evidence)
    }

    /// Probability that each listed site takes a value in its allowed set.
    ///
    /// Leaf-to-root sum-product over the tree hull of the listed sites.
    pub fn eval_evidence(&self, evidence: &BTreeMap<Word, Vec<bool>>) -> Result<Rational> {
        self.ensure_valid()?;
        let n = self.alphabet.len();
        if let Some((w, _)) = evidence.iter().find(|(_, allowed)| allowed.len() != n) {
            return Err(Error::Validation(format!("evidence at {w} has the wrong width")));
        }
        let tree = tree_hull(evidence.keys(), &self.gs)?;

        // weight[v][l]: mass of the subtree below v given x(v) = l.
        let mut weight: BTreeMap<Word, Vec<Rational>> = BTreeMap::new();
        for v in tree.vertices().iter().rev() {
            let mut own: Vec<Rational> = match evidence.get(v) {
                Some(allowed) => allowed.iter().map(|&ok| if ok { one() } else { zero() }).collect(),
                None => vec![one(); n],
            };
            if let Some(w) = weight.remove(v) {
                for (o, m) in own.iter_mut().zip(w) {
                    *o *= m;
                }
            }
            match v.parent() {
                None => {
                    let total = self.p.iter().zip(&own).map(|(p, o)| p * o).sum();
                    return Ok(total);
                }
                Some((parent, a)) => {
                    let m = &self.transitions[&a];
                    let message: Vec<Rational> = (0..n)
                        .map(|k| {
                            m[k].iter()
                                .zip(&own)
                                .filter(|(_, o)| !o.is_zero())
                                .map(|(pk, o)| pk * o)
                                .sum()
                        })
                        .collect();
                    let slot = weight.entry(parent).or_insert_with(|| vec![one(); n]);
                    for (s, m) in slot.iter_mut().zip(message) {
                        *s *= m;
                    }
                }
            }
        }
        unreachable!("tree hull always contains the identity")
    }
}

impl CylinderMeasure for MarkovTreeChain {
    fn generators(&self) -> &GeneratorSet {
        &self.gs
    }

    fn alphabet_size(&self) -> usize {
        self.alphabet.len()
    }

    fn eval(&self, pattern: &Pattern) -> Result<Rational> {
        self.eval_cylinder(pattern)
    }
}

/// Extends an invariant chain over `Σ` to one over `Σ^±`, keeping `P^a` for
/// `a ∈ Σ` and setting `P̂^a_{k,l} = (p_l / p_k) P^{a⁻¹}_{l,k}` otherwise.
pub fn extend_chain(chain: &MarkovTreeChain) -> Result<MarkovTreeChain> {
    if let Some(i) = chain.gs.missing_index() {
        return Err(Error::SigmaIncomplete(i));
    }
    if let Some(w) = chain.invariance_witness()? {
        return Err(Error::NotInvariant(w.to_string()));
    }
    let n = chain.alphabet.len();
    let full = GeneratorSet::full(chain.gs.rank());
    let mut transitions = BTreeMap::new();
    for a in full.symbols() {
        let m = match chain.transitions.get(&a) {
            Some(m) => m.clone(),
            None => {
                let inv = &chain.transitions[&a.inverse()];
                (0..n)
                    .map(|k| {
                        (0..n)
                            .map(|l| &chain.p[l] / &chain.p[k] * &inv[l][k])
                            .collect()
                    })
                    .collect()
            }
        };
        transitions.insert(a, m);
    }
    MarkovTreeChain::new(full, chain.alphabet.clone(), chain.p.clone(), transitions)
}

/// Compares two measures on every full pattern over the radius-`r` ball of
/// `original`'s generating set.
pub fn pushforward_check<E, O>(extended: &E, original: &O, r: usize) -> Result<CheckOutcome>
where
    E: CylinderMeasure + ?Sized,
    O: CylinderMeasure + ?Sized,
{
    let n = original.alphabet_size();
    if extended.alphabet_size() != n {
        return Err(Error::Validation("alphabets differ".into()));
    }
    let domain: Vec<Word> = ball(original.generators(), r).into_iter().collect();
    let patterns: Vec<Pattern> = full_patterns(&domain, n).collect();
    compare_on(&patterns, |x| extended.eval(x), |x| original.eval(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_rational, ratio};

    pub(crate) fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn third_chain() -> MarkovTreeChain {
        let gs = GeneratorSet::from_signed(2, &[1, 2]).unwrap();
        let m = vec![vec![q("1/2"), q("1/2")], vec![q("1/4"), q("3/4")]];
        MarkovTreeChain::new(
            gs,
            names(2),
            vec![q("1/3"), q("2/3")],
            BTreeMap::from([(Symbol::gen(1), m.clone()), (Symbol::gen(2), m)]),
        )
        .unwrap()
    }

    fn pat(entries: &[(&str, usize)]) -> Pattern {
        entries.iter().map(|(w, s)| (w.parse().unwrap(), *s)).collect()
    }

    #[test]
    fn validation_reports_each_issue() {
        assert!(third_chain().validate().is_empty());

        let gs = GeneratorSet::from_signed(1, &[1]).unwrap();
        let bad_p = MarkovTreeChain::bernoulli(gs.clone(), names(2), vec![q("1"), q("0")]).unwrap();
        assert!(bad_p
            .validate()
            .iter()
            .any(|i| matches!(i, ChainIssue::NonPositiveP { symbol: 1, .. })));

        let m = vec![vec![q("1/2"), q("1/3")], vec![q("1/2"), q("1/2")]];
        let bad_row = MarkovTreeChain::new(
            gs,
            names(2),
            vec![q("1/2"), q("1/2")],
            BTreeMap::from([(Symbol::gen(1), m)]),
        )
        .unwrap();
        let issues = bad_row.validate();
        assert_eq!(
            issues,
            vec![ChainIssue::RowSumNotOne {
                generator: Symbol::gen(1),
                row: 0,
                sum: q("5/6")
            }]
        );
        assert!(matches!(
            bad_row.eval_cylinder(&Pattern::new()),
            Err(Error::InvalidChain(_))
        ));
    }

    #[test]
    fn shape_errors() {
        let gs = GeneratorSet::from_signed(2, &[1, 2]).unwrap();
        let m = vec![vec![q("1")]];
        let missing = MarkovTreeChain::new(
            gs,
            names(1),
            vec![q("1")],
            BTreeMap::from([(Symbol::gen(1), m)]),
        );
        assert!(matches!(missing, Err(Error::Validation(_))));
    }

    #[test]
    fn invariance() {
        assert!(third_chain().is_invariant().unwrap());

        let gs = GeneratorSet::from_signed(1, &[1]).unwrap();
        let m = vec![vec![q("1"), q("0")], vec![q("1"), q("0")]];
        let chain = MarkovTreeChain::new(
            gs,
            names(2),
            vec![q("1/2"), q("1/2")],
            BTreeMap::from([(Symbol::gen(1), m)]),
        )
        .unwrap();
        match chain.invariance_witness().unwrap() {
            Some(InvarianceWitness::Eigenvector { col: 0, lhs, rhs, .. }) => {
                assert_eq!(lhs, q("1"));
                assert_eq!(rhs, q("1/2"));
            }
            other => panic!("unexpected {other:?}"),
        }

        let gs = GeneratorSet::from_signed(1, &[1, -1]).unwrap();
        let swap = vec![vec![q("0"), q("1")], vec![q("1"), q("0")]];
        let symmetric = MarkovTreeChain::new(
            gs,
            names(2),
            vec![q("1/2"), q("1/2")],
            BTreeMap::from([(Symbol::gen(1), swap.clone()), (Symbol::inv(1), swap)]),
        )
        .unwrap();
        assert!(symmetric.is_invariant().unwrap());
    }

    #[test]
    fn detailed_balance_violation() {
        // Both matrices fix uniform p but are not time reversals of each other.
        let gs = GeneratorSet::from_signed(1, &[1, -1]).unwrap();
        let cycle = vec![
            vec![q("0"), q("1"), q("0")],
            vec![q("0"), q("0"), q("1")],
            vec![q("1"), q("0"), q("0")],
        ];
        let chain = MarkovTreeChain::new(
            gs,
            names(3),
            vec![q("1/3"); 3],
            BTreeMap::from([(Symbol::gen(1), cycle.clone()), (Symbol::inv(1), cycle)]),
        )
        .unwrap();
        assert!(matches!(
            chain.invariance_witness().unwrap(),
            Some(InvarianceWitness::DetailedBalance { .. })
        ));
    }

    #[test]
    fn cylinder_values() {
        let gs = GeneratorSet::from_signed(2, &[1, 2]).unwrap();
        let uniform = MarkovTreeChain::bernoulli(gs, names(2), vec![q("1/2"), q("1/2")]).unwrap();
        assert_eq!(
            uniform.eval_cylinder(&pat(&[("e", 0), ("a1", 1), ("a2", 1)])).unwrap(),
            q("1/8")
        );

        let chain = third_chain();
        // Hull {e, a1, a1a1} is fully labelled.
        assert_eq!(
            chain.eval_cylinder(&pat(&[("e", 0), ("a1", 1), ("a1a1", 1)])).unwrap(),
            q("1/8")
        );
        // Hull {e, a1, a2, a1a2}: a1a2 hangs below a2. Hand computation:
        // 1/3 · 1/2 · (1/2·1/2 + 1/2·3/4) = 5/48.
        assert_eq!(
            chain.eval_cylinder(&pat(&[("e", 0), ("a1", 1), ("a1a2", 1)])).unwrap(),
            q("5/48")
        );
        // Stationarity: a single site has probability p.
        assert_eq!(chain.eval_cylinder(&pat(&[("a1a2", 0)])).unwrap(), q("1/3"));
        assert_eq!(chain.eval_cylinder(&Pattern::new()).unwrap(), q("1"));
    }

    #[test]
    fn cylinder_membership() {
        let err = third_chain().eval_cylinder(&pat(&[("A1", 0)])).unwrap_err();
        assert!(matches!(err, Error::Membership { .. }));
    }

    #[test]
    fn extension_examples() {
        let ext = extend_chain(&third_chain()).unwrap();
        assert_eq!(
            ext.matrix(Symbol::inv(1)).unwrap(),
            &vec![vec![q("1/2"), q("1/2")], vec![q("1/4"), q("3/4")]]
        );
        assert!(ext.is_invariant().unwrap());
        assert!(pushforward_check(&ext, &third_chain(), 2).unwrap().holds);

        let gs = GeneratorSet::from_signed(1, &[1]).unwrap();
        let cycle = vec![
            vec![q("0"), q("1"), q("0")],
            vec![q("0"), q("0"), q("1")],
            vec![q("1"), q("0"), q("0")],
        ];
        let chain = MarkovTreeChain::new(
            gs,
            names(3),
            vec![q("1/3"); 3],
            BTreeMap::from([(Symbol::gen(1), cycle.clone())]),
        )
        .unwrap();
        let ext = extend_chain(&chain).unwrap();
        let inverse_cycle: Matrix = (0..3)
            .map(|k| (0..3).map(|l| cycle[l][k].clone()).collect())
            .collect();
        assert_eq!(ext.matrix(Symbol::inv(1)).unwrap(), &inverse_cycle);
    }

    #[test]
    fn extension_errors() {
        let gs = GeneratorSet::from_signed(2, &[1]).unwrap();
        let chain = MarkovTreeChain::bernoulli(gs, names(2), vec![q("1/2"), q("1/2")]).unwrap();
        assert_eq!(extend_chain(&chain).unwrap_err(), Error::SigmaIncomplete(2));

        let gs = GeneratorSet::from_signed(1, &[1]).unwrap();
        let m = vec![vec![q("1"), q("0")], vec![q("1"), q("0")]];
        let chain = MarkovTreeChain::new(
            gs,
            names(2),
            vec![q("1/2"), q("1/2")],
            BTreeMap::from([(Symbol::gen(1), m)]),
        )
        .unwrap();
        assert!(matches!(extend_chain(&chain), Err(Error::NotInvariant(_))));
    }

    #[test]
    fn pushforward_detects_perturbed_forward_matrix() {
        let original = third_chain();
        let ext = extend_chain(&original).unwrap();

        // Perturbing a⁻¹ never shows up on S-patterns.
        let mut t = ext.transitions().clone();
        t.get_mut(&Symbol::inv(1)).unwrap()[0] = vec![q("1/3"), q("2/3")];
        let inv_perturbed = MarkovTreeChain::new(ext.gs().clone(), names(2), ext.p().to_vec(), t).unwrap();
        assert!(pushforward_check(&inv_perturbed, &original, 2).unwrap().holds);

        let mut t = ext.transitions().clone();
        t.get_mut(&Symbol::gen(1)).unwrap()[0] = vec![q("1/3"), q("2/3")];
        let fwd_perturbed = MarkovTreeChain::new(ext.gs().clone(), names(2), ext.p().to_vec(), t).unwrap();
        assert!(!pushforward_check(&fwd_perturbed, &original, 2).unwrap().holds);
    }

    #[test]
    fn pushforward_radius_zero_compares_p() {
        let a = third_chain();
        assert!(pushforward_check(&a, &a, 0).unwrap().holds);
        let gs = GeneratorSet::from_signed(2, &[1, 2]).unwrap();
        let b = MarkovTreeChain::bernoulli(gs, names(2), vec![ratio(1, 2), ratio(1, 2)]).unwrap();
        assert!(!pushforward_check(&b, &a, 0).unwrap().holds);
    }
}
