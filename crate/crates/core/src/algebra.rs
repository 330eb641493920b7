//! Reduced words in the free group, generating sets, Cayley balls and trees.
//!
//! Conventions used throughout the crate:
//!
//! * `S = <Σ>⁺` is treated as a monoid, so the identity `ε` is a member.
//! * A word `w ∈ F_d` lies in `S` iff every letter of its reduced form is in
//!   `Σ`. Sufficiency is clear. For necessity, a product of `Σ`-letters
//!   reduces by deleting adjacent inverse pairs, which never introduces a
//!   letter that was not already present.
//! * Cayley edges join `t` and `a·t` (left multiplication by a generator).
//!   This edge set is stable under right translation `t ↦ t·s`, which is how
//!   the shift `(s·x)(t) = x(ts)` moves cylinder sites. Consequently the
//!   parent of a nonempty reduced word is the word with its *first* letter
//!   removed, and the generator labelling that edge is that first letter.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator `a_i` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    index: u32,
    inverse: bool,
}

impl Symbol {
    pub fn new(index: u32, inverse: bool) -> Result<Self> {
        if index == 0 {
            return Err(Error::Validation("generator indices start at 1".into()));
        }
        Ok(Symbol { index, inverse })
    }

    pub fn gen(index: u32) -> Self {
        assert!(index > 0, "generator indices start at 1");
        Symbol {
            index,
            inverse: false,
        }
    }

    pub fn inv(index: u32) -> Self {
        assert!(index > 0, "generator indices start at 1");
        Symbol {
            index,
            inverse: true,
        }
    }

    /// `[1, -1, 2]`-style signed index.
    pub fn from_signed(signed: i64) -> Result<Self> {
        if signed == 0 || signed.unsigned_abs() > u32::MAX as u64 {
            return Err(Error::Validation(format!("invalid signed generator {signed}")));
        }
        Symbol::new(signed.unsigned_abs() as u32, signed < 0)
    }

    pub fn signed(self) -> i64 {
        if self.inverse {
            -(self.index as i64)
        } else {
            self.index as i64
        }
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    pub fn inverse(self) -> Self {
        Symbol {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", if self.inverse { 'A' } else { 'a' }, self.index)
    }
}

/// A reduced word of `F_d`. The empty word is the identity `ε`.
///
/// Ordering is shortlex, so `ε` sorts first and balls enumerate by radius.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Symbol>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn letter(s: Symbol) -> Self {
        Word { letters: vec![s] }
    }

    /// Freely reduces `letters`.
    pub fn from_letters<I: IntoIterator<Item = Symbol>>(letters: I) -> Self {
        let mut out: Vec<Symbol> = Vec::new();
        for s in letters {
            if out.last() == Some(&s.inverse()) {
                out.pop();
            } else {
                out.push(s);
            }
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.letters.iter().map(|s| s.index).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &Word) -> Word {
        let mut cancel = 0;
        while cancel < self.len()
            && cancel < other.len()
            && self.letters[self.len() - 1 - cancel] == other.letters[cancel].inverse()
        {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        letters.extend_from_slice(&self.letters[..self.len() - cancel]);
        letters.extend_from_slice(&other.letters[cancel..]);
        Word { letters }
    }

    /// `a · self`.
    pub fn left_mul(&self, a: Symbol) -> Word {
        Word::letter(a).mul(self)
    }

    /// `self · a`.
    pub fn right_mul(&self, a: Symbol) -> Word {
        self.mul(&Word::letter(a))
    }

    /// Tree parent and the generator labelling the edge `(parent, a·parent)`.
    pub fn parent(&self) -> Option<(Word, Symbol)> {
        let (&first, rest) = self.letters.split_first()?;
        Some((
            Word {
                letters: rest.to_vec(),
            },
            first,
        ))
    }

    /// All suffixes, from the word itself down to `ε`.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| Word {
            letters: self.letters[i..].to_vec(),
        })
    }

    /// Text form for a declared rank: `.` separators are used when `d > 9`.
    pub fn format_with_rank(&self, d: u32) -> String {
        if self.is_identity() {
            return "e".to_string();
        }
        let parts: Vec<String> = self.letters.iter().map(|s| s.to_string()).collect();
        if d > 9 {
            parts.join(".")
        } else {
            parts.concat()
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with_rank(self.max_index()))
    }
}

fn parse_letter(tok: &str) -> Result<Symbol> {
    let mut chars = tok.chars();
    let inverse = match chars.next() {
        Some('a') => false,
        Some('A') => true,
        _ => return Err(Error::Parse(format!("invalid letter {tok:?}"))),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("invalid letter {tok:?}")));
    }
    let index: u32 = digits
        .parse()
        .map_err(|_| Error::Parse(format!("generator index out of range in {tok:?}")))?;
    Symbol::new(index, inverse).map_err(|_| Error::Parse(format!("invalid letter {tok:?}")))
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `e`, `ε` or the empty string for the identity, otherwise
    /// letters such as `a1A2` or `a10.A2`. Each `a`/`A` starts a new letter
    /// and dots are optional separators. The result is reduced.
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "e" || s == "ε" {
            return Ok(Word::identity());
        }
        if !s.is_ascii() {
            return Err(Error::Parse(format!("invalid word {s:?}")));
        }
        let mut letters = Vec::new();
        for part in s.split('.') {
            let starts: Vec<usize> = part
                .char_indices()
                .filter(|(_, c)| *c == 'a' || *c == 'A')
                .map(|(i, _)| i)
                .collect();
            if starts.first() != Some(&0) {
                return Err(Error::Parse(format!("invalid word {s:?}")));
            }
            for (k, &i) in starts.iter().enumerate() {
                let end = starts.get(k + 1).copied().unwrap_or(part.len());
                letters.push(parse_letter(&part[i..end])?);
            }
        }
        Ok(Word::from_letters(letters))
    }
}

/// `Σ ⊆ {a_1^{±1}, …, a_d^{±1}}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    d: u32,
    sigma: BTreeSet<Symbol>,
}

impl GeneratorSet {
    pub fn new<I: IntoIterator<Item = Symbol>>(d: u32, sigma: I) -> Result<Self> {
        let sigma: BTreeSet<Symbol> = sigma.into_iter().collect();
        if d == 0 {
            return Err(Error::Validation("rank must be positive".into()));
        }
        if sigma.is_empty() {
            return Err(Error::Validation("generator set is empty".into()));
        }
        if let Some(s) = sigma.iter().find(|s| s.index > d) {
            return Err(Error::Validation(format!(
                "generator {s} exceeds rank {d}"
            )));
        }
        Ok(GeneratorSet { d, sigma })
    }

    pub fn from_signed(d: u32, signed: &[i64]) -> Result<Self> {
        let sigma = signed
            .iter()
            .map(|&s| Symbol::from_signed(s))
            .collect::<Result<Vec<_>>>()?;
        GeneratorSet::new(d, sigma)
    }

    /// `{a_1, …, a_d}`, generating the free semigroup.
    pub fn positive(d: u32) -> Self {
        GeneratorSet::new(d, (1..=d).map(Symbol::gen)).expect("d > 0")
    }

    /// `Σ^± = {a_1^{±1}, …, a_d^{±1}}`, generating `F_d`.
    pub fn full(d: u32) -> Self {
        GeneratorSet::new(d, (1..=d).flat_map(|i| [Symbol::gen(i), Symbol::inv(i)])).expect("d > 0")
    }

    pub fn rank(&self) -> u32 {
        self.d
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.sigma.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn contains(&self, s: Symbol) -> bool {
        self.sigma.contains(&s)
    }

    pub fn signed(&self) -> Vec<i64> {
        self.sigma.iter().map(|s| s.signed()).collect()
    }

    /// Inverse pairs `{a, a⁻¹} ⊆ Σ`, reported by their positive member.
    pub fn inverse_pairs(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.sigma
            .iter()
            .copied()
            .filter(move |s| !s.inverse && self.sigma.contains(&s.inverse()))
    }

    /// First index in `1..=d` with neither sign in `Σ`.
    pub fn missing_index(&self) -> Option<u32> {
        (1..=self.d).find(|&i| !self.contains(Symbol::gen(i)) && !self.contains(Symbol::inv(i)))
    }

    pub fn is_subset(&self, other: &GeneratorSet) -> bool {
        self.sigma.is_subset(&other.sigma)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format_with_rank(self.d)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let w: Word = text.parse()?;
        if w.max_index() > self.d {
            return Err(Error::Parse(format!(
                "word {text:?} uses a generator beyond rank {}",
                self.d
            )));
        }
        Ok(w)
    }

    pub fn check_member(&self, w: &Word) -> Result<()> {
        if in_semigroup(w, self) {
            Ok(())
        } else {
            Err(Error::membership(w, self))
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sigma.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn word_mul(u: &Word, v: &Word) -> Word {
    u.mul(v)
}

pub fn in_semigroup(w: &Word, gs: &GeneratorSet) -> bool {
    w.letters().iter().all(|s| gs.contains(*s))
}

/// `B_r`: everything reachable from `ε` in at most `r` steps `w ↦ a·w`.
pub fn ball(gs: &GeneratorSet, r: usize) -> BTreeSet<Word> {
    let mut seen = BTreeSet::from([Word::identity()]);
    let mut frontier = vec![Word::identity()];
    for _ in 0..r {
        let mut next = Vec::new();
        for w in &frontier {
            for a in gs.symbols() {
                let v = w.left_mul(a);
                if seen.insert(v.clone()) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    seen
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: Word,
    pub child: Word,
    /// `child = generator · parent`.
    pub generator: Symbol,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    vertices: BTreeSet<Word>,
    root: Word,
    edges: Vec<TreeEdge>,
}

impl Tree {
    pub fn vertices(&self) -> &BTreeSet<Word> {
        &self.vertices
    }

    pub fn root(&self) -> &Word {
        &self.root
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    /// Children of each vertex, keyed by parent.
    pub fn children(&self) -> BTreeMap<&Word, Vec<&TreeEdge>> {
        let mut out: BTreeMap<&Word, Vec<&TreeEdge>> = BTreeMap::new();
        for e in &self.edges {
            out.entry(&e.parent).or_default().push(e);
        }
        out
    }
}

/// Smallest tree containing `F ∪ {ε}`: the suffix closure of `F`.
pub fn tree_hull<'a, I>(words: I, gs: &GeneratorSet) -> Result<Tree>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut vertices = BTreeSet::from([Word::identity()]);
    for w in words {
        gs.check_member(w)?;
        if vertices.contains(w) {
            continue;
        }
        for s in w.suffixes() {
            if !vertices.insert(s) {
                break;
            }
        }
    }
    let edges = vertices
        .iter()
        .filter_map(|v| {
            v.parent().map(|(parent, generator)| TreeEdge {
                parent,
                child: v.clone(),
                generator,
            })
        })
        .collect();
    Ok(Tree {
        vertices,
        root: Word::identity(),
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    Empty,
    NotInSemigroup(Word),
    Disconnected { components: usize },
    WrongEdgeCount { vertices: usize, edges: usize },
    AmbiguousRoot(Vec<Word>),
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::Empty => write!(f, "vertex set is empty"),
            TreeViolation::NotInSemigroup(w) => write!(f, "vertex {w} is not in S"),
            TreeViolation::Disconnected { components } => {
                write!(f, "induced subgraph has {components} components")
            }
            TreeViolation::WrongEdgeCount { vertices, edges } => {
                write!(f, "{edges} edges for {vertices} vertices (not acyclic)")
            }
            TreeViolation::AmbiguousRoot(ws) => {
                let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
                write!(f, "several vertices closest to e: {}", names.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeReport {
    pub tree: Option<Tree>,
    pub violations: Vec<TreeViolation>,
}

impl TreeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `vertices` induce a tree in the Cayley graph of `S` and, if
/// so, returns it with canonically oriented edges.
pub fn tree_validate(vertices: &BTreeSet<Word>, gs: &GeneratorSet) -> TreeReport {
    let mut violations = Vec::new();
    if vertices.is_empty() {
        violations.push(TreeViolation::Empty);
        return TreeReport {
            tree: None,
            violations,
        };
    }
    for v in vertices {
        if !in_semigroup(v, gs) {
            violations.push(TreeViolation::NotInSemigroup(v.clone()));
        }
    }

    let index: BTreeMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut edges = Vec::new();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    for (t, &i) in &index {
        for a in gs.symbols() {
            let at = t.left_mul(a);
            // Keep one orientation per undirected edge: shorter to longer.
            if at.len() < t.len() {
                continue;
            }
            if let Some(&j) = index.get(&at) {
                adjacency[i].push(j);
                adjacency[j].push(i);
                edges.push(TreeEdge {
                    parent: (*t).clone(),
                    child: at,
                    generator: a,
                });
            }
        }
    }

    let mut component = vec![usize::MAX; vertices.len()];
    let mut components = 0;
    for start in 0..vertices.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        component[start] = components;
        while let Some(u) = queue.pop_front() {
            for &v in &adjacency[u] {
                if component[v] == usize::MAX {
                    component[v] = components;
                    queue.push_back(v);
                }
            }
        }
        components += 1;
    }
    if components > 1 {
        violations.push(TreeViolation::Disconnected { components });
    }
    if edges.len() + 1 != vertices.len() {
        violations.push(TreeViolation::WrongEdgeCount {
            vertices: vertices.len(),
            edges: edges.len(),
        });
    }
    let min_len = vertices.iter().map(Word::len).min().unwrap_or(0);
    let closest: Vec<Word> = vertices.iter().filter(|w| w.len() == min_len).cloned().collect();
    if closest.len() > 1 {
        violations.push(TreeViolation::AmbiguousRoot(closest.clone()));
    }

    let tree = violations.is_empty().then(|| Tree {
        vertices: vertices.clone(),
        root: closest[0].clone(),
        edges,
    });
    TreeReport { tree, violations }
}

/// A point of `ℤ^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(d: usize) -> Self {
        LatticeVector(vec![0; d])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn in_positive_cone(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn ab() -> GeneratorSet {
        GeneratorSet::from_signed(2, &[1, 2]).unwrap()
    }

    #[test]
    fn multiplication_cancels() {
        assert_eq!(word_mul(&w("a1a2"), &w("A2a1")), w("a1a1"));
        assert_eq!(word_mul(&w("a1"), &w("A1")), Word::identity());
        assert_eq!(word_mul(&w("a1A2"), &w("a2A1")), Word::identity());
    }

    #[test]
    fn parsing_reduces_and_round_trips() {
        assert_eq!(w("a1A1a2"), w("a2"));
        assert_eq!(w("e"), Word::identity());
        assert_eq!(w(""), Word::identity());
        assert_eq!(w("a1A2a1").to_string(), "a1A2a1");
        let long = w("a10.A2");
        assert_eq!(long.len(), 2);
        assert_eq!(long.format_with_rank(10), "a10.A2");
        assert_eq!(w("a1.a2").format_with_rank(12), "a1.a2");
        assert_eq!(w("a1.a2").format_with_rank(2), "a1a2");
    }

    #[test]
    fn parse_errors() {
        for bad in ["a", "a0", "b1", "a1a", "a1..a2", "A", "a1 a2", "aé"] {
            assert!(bad.parse::<Word>().is_err(), "{bad}");
        }
        assert!(ab().parse_word("a3").is_err());
    }

    #[test]
    fn membership() {
        assert!(in_semigroup(&w("a1a2"), &ab()));
        assert!(!in_semigroup(&w("A1"), &ab()));
        let with_inverse = GeneratorSet::from_signed(2, &[1, -1, 2]).unwrap();
        // a·b·a⁻¹ is a product of Σ-letters.
        let product = w("a1").mul(&w("a2")).mul(&w("A1"));
        assert_eq!(product, w("a1a2A1"));
        assert!(in_semigroup(&product, &with_inverse));
        assert!(in_semigroup(&Word::identity(), &ab()));
    }

    #[test]
    fn balls() {
        let b2 = ball(&ab(), 2);
        let expected: BTreeSet<Word> = ["e", "a1", "a2", "a1a1", "a1a2", "a2a1", "a2a2"]
            .iter()
            .map(|s| w(s))
            .collect();
        assert_eq!(b2, expected);

        let gs = GeneratorSet::from_signed(2, &[1, -1, 2]).unwrap();
        let b1 = ball(&gs, 1);
        assert_eq!(b1.len(), 4);
        assert!(b1.contains(&w("A1")));

        assert_eq!(ball(&gs, 0), BTreeSet::from([Word::identity()]));
    }

    #[test]
    fn ball_with_inverse_pair_does_not_double_count() {
        // Σ = {a, a⁻¹} generates ℤ; B_r has 2r + 1 elements.
        let z = GeneratorSet::from_signed(1, &[1, -1]).unwrap();
        for r in 0..6 {
            assert_eq!(ball(&z, r).len(), 2 * r + 1);
        }
    }

    #[test]
    fn hull_is_suffix_closed() {
        let f = [w("a1a2"), w("a2")];
        let hull = tree_hull(&f, &ab()).unwrap();
        let expected: BTreeSet<Word> = ["e", "a2", "a1a2"].iter().map(|s| w(s)).collect();
        assert_eq!(hull.vertices(), &expected);
        assert_eq!(hull.edges().len(), 2);
        assert_eq!(hull.root(), &Word::identity());

        let only_e = tree_hull(&[Word::identity()], &ab()).unwrap();
        assert_eq!(only_e.vertices().len(), 1);
        assert!(only_e.edges().is_empty());

        let aa = tree_hull(&[w("a1a1")], &ab()).unwrap();
        assert_eq!(aa.vertices().len(), 3);
    }

    #[test]
    fn hull_rejects_non_members() {
        let err = tree_hull(&[w("A1")], &ab()).unwrap_err();
        assert!(matches!(err, Error::Membership { .. }));
    }

    #[test]
    fn hull_edges_label_first_letter() {
        let hull = tree_hull(&[w("a1a2")], &ab()).unwrap();
        let edge = hull.edges().iter().find(|e| e.child == w("a1a2")).unwrap();
        assert_eq!(edge.parent, w("a2"));
        assert_eq!(edge.generator, Symbol::gen(1));
        assert_eq!(edge.parent.left_mul(edge.generator), edge.child);
    }

    #[test]
    fn validation() {
        let set = |xs: &[&str]| xs.iter().map(|s| w(s)).collect::<BTreeSet<_>>();
        let ok = tree_validate(&set(&["e", "a1", "a2"]), &ab());
        assert!(ok.is_valid());
        assert_eq!(ok.tree.unwrap().root(), &Word::identity());

        // a and ab are not adjacent: ab = a·b is a neighbour of b.
        let bad = tree_validate(&set(&["a1", "a1a2"]), &ab());
        assert!(!bad.is_valid());
        assert!(bad
            .violations
            .iter()
            .any(|v| matches!(v, TreeViolation::Disconnected { .. })));

        let shifted = tree_validate(&set(&["a2", "a1a2"]), &ab());
        assert!(shifted.is_valid());
        assert_eq!(shifted.tree.unwrap().root(), &w("a2"));

        let outside = tree_validate(&set(&["e", "A1"]), &ab());
        assert!(outside
            .violations
            .iter()
            .any(|v| matches!(v, TreeViolation::NotInSemigroup(_))));

        assert_eq!(
            tree_validate(&BTreeSet::new(), &ab()).violations,
            vec![TreeViolation::Empty]
        );
    }

    #[test]
    fn inverse_pair_edges_are_counted_once() {
        let gs = GeneratorSet::from_signed(1, &[1, -1]).unwrap();
        let set: BTreeSet<Word> = ["A1", "e", "a1"].iter().map(|s| w(s)).collect();
        let report = tree_validate(&set, &gs);
        assert!(report.is_valid(), "{:?}", report.violations);
        assert_eq!(report.tree.unwrap().edges().len(), 2);
    }

    #[test]
    fn generator_set_errors() {
        assert!(GeneratorSet::from_signed(2, &[]).is_err());
        assert!(GeneratorSet::from_signed(2, &[3]).is_err());
        assert!(GeneratorSet::from_signed(2, &[0]).is_err());
        assert!(GeneratorSet::from_signed(0, &[1]).is_err());
    }
}
