//! Finite patterns: the arguments of cylinder sets.

use std::collections::BTreeMap;

use crate::algebra::{GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};

/// A finite partial configuration `F → A`, symbols given by alphabet index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Pattern {
    entries: BTreeMap<Word, usize>,
}

impl Pattern {
    pub fn new() -> Self {
        Pattern::default()
    }

    pub fn from_entries<I: IntoIterator<Item = (Word, usize)>>(entries: I) -> Self {
        Pattern {
            entries: entries.into_iter().collect(),
        }
    }

    /// Values listed in the order of `domain`.
    pub fn on_domain(domain: &[Word], values: &[usize]) -> Self {
        debug_assert_eq!(domain.len(), values.len());
        Pattern::from_entries(domain.iter().cloned().zip(values.iter().copied()))
    }

    pub fn get(&self, w: &Word) -> Option<usize> {
        self.entries.get(w).copied()
    }

    pub fn insert(&mut self, w: Word, symbol: usize) -> Option<usize> {
        self.entries.insert(w, symbol)
    }

    pub fn with(&self, w: Word, symbol: usize) -> Pattern {
        let mut out = self.clone();
        out.insert(w, symbol);
        out
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, usize)> {
        self.entries.iter().map(|(w, &s)| (w, s))
    }

    pub fn keys(&self) -> impl Iterator<Item = &Word> {
        self.entries.keys()
    }

    pub fn check_members(&self, gs: &GeneratorSet) -> Result<()> {
        self.keys().try_for_each(|w| gs.check_member(w))
    }

    pub fn check_alphabet(&self, alphabet_size: usize) -> Result<()> {
        match self.iter().find(|(_, s)| *s >= alphabet_size) {
            Some((w, s)) => Err(Error::Validation(format!(
                "symbol {s} at {w} outside alphabet of size {alphabet_size}"
            ))),
            None => Ok(()),
        }
    }

    /// Pattern of the preimage cylinder `a⁻¹[x; F]`: key `t` moves to `t·a`.
    pub fn translate_right(&self, a: Symbol) -> Pattern {
        Pattern::from_entries(self.iter().map(|(w, s)| (w.right_mul(a), s)))
    }

    /// Right translation by an arbitrary word.
    pub fn translate_by(&self, g: &Word) -> Pattern {
        Pattern::from_entries(self.iter().map(|(w, s)| (w.mul(g), s)))
    }

    /// Merges `other` into `self`; `None` if they disagree on a shared key.
    pub fn join(&self, other: &Pattern) -> Option<Pattern> {
        let mut out = self.clone();
        for (w, s) in other.iter() {
            match out.entries.insert(w.clone(), s) {
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        Some(out)
    }

    /// Whether `other` agrees with `self` on every key of `self`.
    pub fn is_restriction_of(&self, other: &Pattern) -> bool {
        self.iter().all(|(w, s)| other.get(w) == Some(s))
    }
}

impl FromIterator<(Word, usize)> for Pattern {
    fn from_iter<T: IntoIterator<Item = (Word, usize)>>(iter: T) -> Self {
        Pattern::from_entries(iter)
    }
}

/// Odometer over `{0..n}^len`, last position fastest.
#[derive(Debug, Clone)]
pub struct Assignments {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Assignments {
    pub fn new(n: usize, len: usize) -> Self {
        let current = if n == 0 && len > 0 {
            None
        } else {
            Some(vec![0; len])
        };
        Assignments { n, current }
    }
}

impl Iterator for Assignments {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.n {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Every full pattern on `domain` over an alphabet of `n` symbols.
pub fn full_patterns(domain: &[Word], n: usize) -> impl Iterator<Item = Pattern> + '_ {
    Assignments::new(n, domain.len()).map(move |vals| Pattern::on_domain(domain, &vals))
}

/// Every pattern whose keys are a subset of `domain`, including the empty one.
pub fn partial_patterns(domain: &[Word], n: usize) -> impl Iterator<Item = Pattern> + '_ {
    // Value `n` at a position means "unconstrained".
    Assignments::new(n + 1, domain.len()).map(move |vals| {
        domain
            .iter()
            .zip(vals)
            .filter(|(_, v)| *v < n)
            .map(|(w, v)| (w.clone(), v))
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn odometer_counts() {
        assert_eq!(Assignments::new(2, 3).count(), 8);
        assert_eq!(Assignments::new(3, 0).count(), 1);
        assert_eq!(Assignments::new(0, 2).count(), 0);
        let first: Vec<_> = Assignments::new(2, 2).collect();
        assert_eq!(first, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn partial_pattern_count() {
        let dom = [w("e"), w("a1"), w("a2")];
        assert_eq!(partial_patterns(&dom, 2).count(), 27);
        assert!(partial_patterns(&dom, 2).any(|p| p.is_empty()));
    }

    #[test]
    fn join_detects_conflicts() {
        let p = Pattern::from_entries([(w("a1"), 0)]);
        let q = Pattern::from_entries([(w("a1"), 1)]);
        assert!(p.join(&q).is_none());
        let r = Pattern::from_entries([(w("a2"), 1)]);
        assert_eq!(p.join(&r).unwrap().len(), 2);
    }

    #[test]
    fn right_translation() {
        let p = Pattern::from_entries([(w("e"), 0), (w("A1"), 1)]);
        let t = p.translate_right(Symbol::gen(1));
        assert_eq!(t.get(&w("a1")), Some(0));
        assert_eq!(t.get(&Word::identity()), Some(1));
    }
}
