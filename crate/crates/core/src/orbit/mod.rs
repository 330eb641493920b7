//! Finite orbits of configurations in `A^S`, encoded as labelled automata.
//!
//! A state `q` stands for a configuration `y_q` with `y_q(w) = label(δ_w(q))`,
//! where `δ_{g₁⋯g_k} = δ_{g₁} ∘ ⋯ ∘ δ_{g_k}` (the rightmost letter acts first).
//! This is the readout of `(w·y)(ε)` under `(s·y)(t) = y(ts)`.

mod morphism;
mod periodic;

pub use morphism::{find_separating_morphism, theorem_a_point, Morphism, Permutation, DEFAULT_BUDGET};
pub use periodic::PeriodicMeasure;

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::algebra::{GeneratorSet, Symbol, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitAutomaton {
    gs: GeneratorSet,
    alphabet: Vec<String>,
    labels: Vec<usize>,
    delta: BTreeMap<Symbol, Vec<usize>>,
    base: usize,
}

/// Summary of the transformation monoid `S/R_x ↪ T(Sx)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonoidSummary {
    pub size: usize,
    pub is_group: bool,
}

impl OrbitAutomaton {
    /// Requires every state to be reachable from `base`.
    pub fn new(
        gs: GeneratorSet,
        alphabet: Vec<String>,
        labels: Vec<usize>,
        delta: BTreeMap<Symbol, Vec<usize>>,
        base: usize,
    ) -> Result<Self> {
        let o = OrbitAutomaton::unchecked(gs, alphabet, labels, delta, base)?;
        let reachable = o.reachable();
        if reachable.len() != o.labels.len() {
            let missing = (0..o.labels.len()).find(|q| !reachable.contains(q)).expect("some");
            return Err(Error::Validation(format!(
                "state {missing} is not reachable from the base state"
            )));
        }
        Ok(o)
    }

    /// Like [`new`](Self::new) but drops unreachable states instead of failing.
    pub fn trimmed(
        gs: GeneratorSet,
        alphabet: Vec<String>,
        labels: Vec<usize>,
        delta: BTreeMap<Symbol, Vec<usize>>,
        base: usize,
    ) -> Result<Self> {
        let o = OrbitAutomaton::unchecked(gs, alphabet, labels, delta, base)?;
        let order = o.reachable();
        Ok(o.restrict(&order))
    }

    fn unchecked(
        gs: GeneratorSet,
        alphabet: Vec<String>,
        labels: Vec<usize>,
        delta: BTreeMap<Symbol, Vec<usize>>,
        base: usize,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Validation("automaton has no states".into()));
        }
        if base >= n {
            return Err(Error::Validation(format!("base state {base} out of range")));
        }
        if alphabet.is_empty() {
            return Err(Error::Validation("alphabet is empty".into()));
        }
        if let Some(l) = labels.iter().find(|&&l| l >= alphabet.len()) {
            return Err(Error::Validation(format!("label {l} outside the alphabet")));
        }
        for a in gs.symbols() {
            let map = delta
                .get(&a)
                .ok_or_else(|| Error::Validation(format!("missing transitions for {a}")))?;
            if map.len() != n || map.iter().any(|&q| q >= n) {
                return Err(Error::Validation(format!(
                    "transitions for {a} are not a map on {n} states"
                )));
            }
        }
        if let Some(extra) = delta.keys().find(|a| !gs.contains(**a)) {
            return Err(Error::Validation(format!("transitions for {extra} which is not in sigma")));
        }
        Ok(OrbitAutomaton {
            gs,
            alphabet,
            labels,
            delta,
            base,
        })
    }

    pub fn gs(&self) -> &GeneratorSet {
        &self.gs
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn delta(&self) -> &BTreeMap<Symbol, Vec<usize>> {
        &self.delta
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    /// BFS order of the states reachable from the base, base first.
    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.labels.len()];
        let mut order = vec![self.base];
        seen[self.base] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for map in self.delta.values() {
                let r = map[q];
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
            i += 1;
        }
        order
    }

    /// Renumbers the listed states (closed under transitions) as `0..k`.
    fn restrict(&self, states: &[usize]) -> OrbitAutomaton {
        let index: HashMap<usize, usize> = states.iter().enumerate().map(|(i, &q)| (q, i)).collect();
        OrbitAutomaton {
            gs: self.gs.clone(),
            alphabet: self.alphabet.clone(),
            labels: states.iter().map(|&q| self.labels[q]).collect(),
            delta: self
                .delta
                .iter()
                .map(|(&a, map)| (a, states.iter().map(|&q| index[&map[q]]).collect()))
                .collect(),
            base: index[&self.base],
        }
    }

    /// State reached from `q` along `w`, letters applied right to left.
    pub fn step(&self, q: usize, w: &Word) -> Result<usize> {
        let mut state = q;
        for s in w.letters().iter().rev() {
            let map = self
                .delta
                .get(s)
                .ok_or_else(|| Error::membership(w, &self.gs))?;
            state = map[state];
        }
        Ok(state)
    }

    /// `y_q(w)`.
    pub fn readout_from(&self, q: usize, w: &Word) -> Result<usize> {
        Ok(self.labels[self.step(q, w)?])
    }

    /// `x(w)` for the configuration encoded at the base state.
    pub fn readout(&self, w: &Word) -> Result<usize> {
        self.readout_from(self.base, w)
    }

    /// Moore-style partition refinement: states are equivalent iff they
    /// encode the same configuration. Returns the class of each state.
    pub fn equivalence_classes(&self) -> (Vec<usize>, usize) {
        let n = self.labels.len();
        let mut class: Vec<usize> = {
            let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
            self.labels
                .iter()
                .map(|l| {
                    let next = ids.len();
                    *ids.entry(*l).or_insert(next)
                })
                .collect()
        };
        let mut count = class.iter().copied().collect::<BTreeSet<_>>().len();
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let refined: Vec<usize> = (0..n)
                .map(|q| {
                    let mut sig = Vec::with_capacity(self.delta.len() + 1);
                    sig.push(class[q]);
                    sig.extend(self.delta.values().map(|map| class[map[q]]));
                    let next = ids.len();
                    *ids.entry(sig).or_insert(next)
                })
                .collect();
            let refined_count = ids.len();
            class = refined;
            if refined_count == count {
                return (class, count);
            }
            count = refined_count;
        }
    }

    /// Quotient by configuration equality: one state per point of `Sx`.
    pub fn minimize(&self) -> OrbitAutomaton {
        let (class, count) = self.equivalence_classes();
        let mut rep = vec![usize::MAX; count];
        for (q, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = q;
            }
        }
        let quotient = OrbitAutomaton {
            gs: self.gs.clone(),
            alphabet: self.alphabet.clone(),
            labels: rep.iter().map(|&q| self.labels[q]).collect(),
            delta: self
                .delta
                .iter()
                .map(|(&a, map)| (a, rep.iter().map(|&q| class[map[q]]).collect()))
                .collect(),
            base: class[self.base],
        };
        // Canonical numbering: BFS from the base.
        let order = quotient.reachable();
        quotient.restrict(&order)
    }

    /// `|Sx|`, counting `x` itself.
    pub fn orbit_size(&self) -> usize {
        self.minimize().num_states()
    }

    /// Every orbit point has a finite orbit, so this is always true; kept for
    /// reporting alongside the stronger notions.
    pub fn is_pre_periodic(&self) -> bool {
        true
    }

    /// `tSx = Sx` for every `t ∈ S`: each generator permutes the orbit.
    pub fn is_periodic(&self) -> bool {
        let min = self.minimize();
        min.delta.values().all(|map| is_bijection(map))
    }

    /// Strong connectivity of the orbit under the generators.
    pub fn is_transitive(&self) -> bool {
        let min = self.minimize();
        let n = min.num_states();
        let mut reverse = vec![Vec::new(); n];
        for map in min.delta.values() {
            for (q, &r) in map.iter().enumerate() {
                reverse[r].push(q);
            }
        }
        // Everything is reachable from the base; check the base is reachable
        // from everything.
        let mut seen = vec![false; n];
        seen[min.base] = true;
        let mut queue = VecDeque::from([min.base]);
        while let Some(q) = queue.pop_front() {
            for &r in &reverse[q] {
                if !seen[r] {
                    seen[r] = true;
                    queue.push_back(r);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Closure of `{id} ∪ {δ_a}` under composition on the minimized orbit.
    pub fn transformation_monoid(&self) -> MonoidSummary {
        let min = self.minimize();
        let elements = min.monoid_elements();
        MonoidSummary {
            size: elements.len(),
            is_group: elements.iter().all(|f| is_bijection(f)),
        }
    }

    fn monoid_elements(&self) -> BTreeSet<Vec<usize>> {
        let identity: Vec<usize> = (0..self.num_states()).collect();
        let mut seen = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(f) = queue.pop_front() {
            for map in self.delta.values() {
                // δ_a ∘ f
                let g: Vec<usize> = f.iter().map(|&q| map[q]).collect();
                if seen.insert(g.clone()) {
                    queue.push_back(g);
                }
            }
        }
        seen
    }

    /// Extends a periodic orbit to an action of the whole free group by
    /// inverting each generator on the minimized orbit.
    pub fn lift_to_group(&self) -> Result<GroupOrbitAutomaton> {
        let min = self.minimize();
        if !min.delta.values().all(|map| is_bijection(map)) {
            return Err(Error::NotPeriodic);
        }
        if let Some(i) = self.gs.missing_index() {
            return Err(Error::SigmaIncomplete(i));
        }
        let full = GeneratorSet::full(self.gs.rank());
        let mut delta = BTreeMap::new();
        for a in full.symbols() {
            let map = match min.delta.get(&a) {
                Some(map) => map.clone(),
                None => invert(&min.delta[&a.inverse()]),
            };
            delta.insert(a, map);
        }
        for a in self.gs.inverse_pairs() {
            if delta[&a.inverse()] != invert(&delta[&a]) {
                return Err(Error::Validation(format!(
                    "transitions for {a} and {} are not mutually inverse",
                    a.inverse()
                )));
            }
        }
        let lifted = OrbitAutomaton {
            gs: full,
            alphabet: min.alphabet,
            labels: min.labels,
            delta,
            base: min.base,
        };
        Ok(GroupOrbitAutomaton(lifted))
    }
}

fn is_bijection(map: &[usize]) -> bool {
    let mut hit = vec![false; map.len()];
    for &q in map {
        if std::mem::replace(&mut hit[q], true) {
            return false;
        }
    }
    true
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (q, &r) in map.iter().enumerate() {
        inv[r] = q;
    }
    inv
}

/// An orbit automaton over `Σ^±` whose transitions are mutually inverse
/// permutations: a finite `F_d`-orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupOrbitAutomaton(OrbitAutomaton);

impl GroupOrbitAutomaton {
    pub fn new(automaton: OrbitAutomaton) -> Result<Self> {
        let d = automaton.gs.rank();
        if automaton.gs != GeneratorSet::full(d) {
            return Err(Error::Validation("group automaton needs transitions for every ±generator".into()));
        }
        for a in automaton.gs.inverse_pairs() {
            let fwd = &automaton.delta[&a];
            if !is_bijection(fwd) || automaton.delta[&a.inverse()] != invert(fwd) {
                return Err(Error::Validation(format!("transitions for {a} are not an invertible pair")));
            }
        }
        Ok(GroupOrbitAutomaton(automaton))
    }

    pub fn as_automaton(&self) -> &OrbitAutomaton {
        &self.0
    }

    pub fn into_automaton(self) -> OrbitAutomaton {
        self.0
    }

    /// `z(g) = (g·z)(ε)` for any `g ∈ F_d`.
    pub fn readout(&self, g: &Word) -> Result<usize> {
        self.0.readout(g)
    }

    pub fn orbit_size(&self) -> usize {
        self.0.orbit_size()
    }
}
