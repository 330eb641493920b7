//! Morphisms into symmetric groups and the periodic points they induce.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ball, GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};
use crate::orbit::OrbitAutomaton;
use crate::pattern::Pattern;

pub const DEFAULT_BUDGET: usize = 10_000;

/// Permutation of `0..k`, stored as the image of each point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut hit = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut hit[i], true) {
                return Err(Error::Validation(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A morphism `F_d → Sym(k)` given by the images of the generators `a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    degree: usize,
    images: BTreeMap<u32, Permutation>,
}

impl Morphism {
    pub fn new(degree: usize, images: BTreeMap<u32, Permutation>) -> Result<Self> {
        if let Some((i, p)) = images.iter().find(|(_, p)| p.degree() != degree) {
            return Err(Error::Validation(format!(
                "image of a{i} has degree {} instead of {degree}",
                p.degree()
            )));
        }
        if images.contains_key(&0) {
            return Err(Error::Validation("generator indices start at 1".into()));
        }
        Ok(Morphism { degree, images })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn images(&self) -> &BTreeMap<u32, Permutation> {
        &self.images
    }

    pub fn image_of_symbol(&self, s: Symbol) -> Result<Permutation> {
        let p = self
            .images
            .get(&s.index())
            .ok_or_else(|| Error::Validation(format!("morphism has no image for a{}", s.index())))?;
        Ok(if s.is_inverse() { p.inverse() } else { p.clone() })
    }

    /// `θ(g₁⋯g_k) = θ(g₁) ∘ ⋯ ∘ θ(g_k)`.
    pub fn apply(&self, w: &Word) -> Result<Permutation> {
        let mut acc = Permutation::identity(self.degree);
        for &s in w.letters() {
            acc = acc.compose(&self.image_of_symbol(s)?);
        }
        Ok(acc)
    }

    /// Whether distinct words of `words` have distinct images.
    pub fn separates<'a, I: IntoIterator<Item = &'a Word>>(&self, words: I) -> Result<bool> {
        let mut seen = HashSet::new();
        for w in words {
            if !seen.insert(self.apply(w)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Periodic point whose orbit is the subgroup `θ(S) ≤ Sym(k)`, labelled so
/// that its readout agrees with `pattern`. Elements not hit by the pattern
/// receive `fill`.
pub fn theorem_a_point(
    pattern: &Pattern,
    theta: &Morphism,
    gs: &GeneratorSet,
    alphabet: Vec<String>,
    fill: usize,
) -> Result<OrbitAutomaton> {
    pattern.check_members(gs)?;
    pattern.check_alphabet(alphabet.len())?;
    if fill >= alphabet.len() {
        return Err(Error::Validation(format!("fill symbol {fill} outside the alphabet")));
    }
    let generators: Vec<(Symbol, Permutation)> = gs
        .symbols()
        .map(|a| Ok((a, theta.image_of_symbol(a)?)))
        .collect::<Result<_>>()?;

    // Elements of the finite group generated by θ(Σ), by BFS from 1.
    let identity = Permutation::identity(theta.degree());
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for (_, g) in &generators {
            let next = g.compose(&elements[i]);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
        i += 1;
    }

    let mut assigned: Vec<Option<(usize, &Word)>> = vec![None; elements.len()];
    for (w, symbol) in pattern.iter() {
        let image = theta.apply(w)?;
        let slot = index[&image];
        match assigned[slot] {
            Some((prev, other)) if prev != symbol => {
                return Err(Error::Factorization {
                    first: gs.format_word(other),
                    second: gs.format_word(w),
                    image: image.to_string(),
                });
            }
            _ => assigned[slot] = Some((symbol, w)),
        }
    }
    let labels = assigned.iter().map(|a| a.map_or(fill, |(s, _)| s)).collect();
    let delta = generators
        .iter()
        .map(|(a, g)| (*a, elements.iter().map(|f| index[&g.compose(f)]).collect()))
        .collect();
    OrbitAutomaton::new(gs.clone(), alphabet, labels, delta, 0)
}

/// Seeded random search for `θ: F_d → Sym(k)` injective on `B_r`.
pub fn find_separating_morphism(
    gs: &GeneratorSet,
    r: usize,
    k: usize,
    seed: u64,
    budget: usize,
) -> Result<Morphism> {
    if k == 0 {
        return Err(Error::Validation("degree must be positive".into()));
    }
    let targets: Vec<Word> = ball(gs, r).into_iter().collect();
    let indices: Vec<u32> = {
        let mut v: Vec<u32> = gs.symbols().map(|s| s.index()).collect();
        v.dedup();
        v
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let images = indices
            .iter()
            .map(|&i| {
                let mut perm: Vec<usize> = (0..k).collect();
                perm.shuffle(&mut rng);
                (i, Permutation(perm))
            })
            .collect();
        let theta = Morphism { degree: k, images };
        if theta.separates(&targets)? {
            return Ok(theta);
        }
    }
    Err(Error::BudgetExhausted { trials: budget })
}
