//! JSON file formats. Rationals are always strings `"num/den"`, words use
//! the `a1A2` text form, generators are signed indices (`-1` is `a_1⁻¹`).
//!
//! Every `parse_*` function here is an entry point for untrusted input and
//! must return an error rather than panic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{GeneratorSet, LatticeVector, Symbol, Word};
use crate::error::{Error, Result};
use crate::markovize::BlockAlphabet;
use crate::measure::{CylinderMeasure, MarkovTreeChain, Matrix};
use crate::orbit::{Morphism, OrbitAutomaton, PeriodicMeasure, Permutation};
use crate::pattern::Pattern;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::reversible::{LatticeOracle, LatticePattern, MarkovChain1D, ProductMeasure, TableMeasure};

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

fn parse_generator_key(key: &str) -> Result<Symbol> {
    let signed: i64 = key
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid generator key {key:?}")))?;
    Symbol::from_signed(signed).map_err(|_| Error::Parse(format!("invalid generator key {key:?}")))
}

fn parse_vector(values: &[String]) -> Result<Vec<Rational>> {
    values.iter().map(|v| parse_rational(v)).collect()
}

fn format_vector(values: &[Rational]) -> Vec<String> {
    values.iter().map(format_rational).collect()
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Matrix> {
    rows.iter().map(|r| parse_vector(r)).collect()
}

fn format_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|r| format_vector(r)).collect()
}

fn symbol_index(alphabet: &[String], name: &str) -> Result<usize> {
    alphabet
        .iter()
        .position(|a| a == name)
        .ok_or_else(|| Error::Parse(format!("symbol {name:?} is not in the alphabet")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainFile {
    pub d: u32,
    pub sigma: Vec<i64>,
    pub alphabet: Vec<String>,
    pub p: Vec<String>,
    #[serde(rename = "P")]
    pub transitions: BTreeMap<String, Vec<Vec<String>>>,
}

impl ChainFile {
    pub fn from_chain(c: &MarkovTreeChain) -> Self {
        ChainFile {
            d: c.gs().rank(),
            sigma: c.gs().signed(),
            alphabet: c.alphabet().to_vec(),
            p: format_vector(c.p()),
            transitions: c
                .transitions()
                .iter()
                .map(|(a, m)| (a.signed().to_string(), format_matrix(m)))
                .collect(),
        }
    }

    pub fn to_chain(&self) -> Result<MarkovTreeChain> {
        let gs = GeneratorSet::from_signed(self.d, &self.sigma)?;
        let mut transitions = BTreeMap::new();
        for (key, rows) in &self.transitions {
            let a = parse_generator_key(key)?;
            if transitions.insert(a, parse_matrix(rows)?).is_some() {
                return Err(Error::Parse(format!("duplicate matrix for generator {a}")));
            }
        }
        MarkovTreeChain::new(gs, self.alphabet.clone(), parse_vector(&self.p)?, transitions)
    }
}

pub fn parse_chain(text: &str) -> Result<MarkovTreeChain> {
    from_json::<ChainFile>(text)?.to_chain()
}

pub fn write_chain(c: &MarkovTreeChain) -> String {
    to_json(&ChainFile::from_chain(c))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub d: u32,
    pub sigma: Vec<i64>,
    pub alphabet: Vec<String>,
    pub states: usize,
    pub base: usize,
    /// Alphabet index of each state's label.
    pub labels: Vec<usize>,
    /// Signed generator → image of each state.
    pub delta: BTreeMap<String, Vec<usize>>,
}

impl AutomatonFile {
    pub fn from_automaton(o: &OrbitAutomaton) -> Self {
        AutomatonFile {
            d: o.gs().rank(),
            sigma: o.gs().signed(),
            alphabet: o.alphabet().to_vec(),
            states: o.num_states(),
            base: o.base(),
            labels: o.labels().to_vec(),
            delta: o
                .delta()
                .iter()
                .map(|(a, m)| (a.signed().to_string(), m.clone()))
                .collect(),
        }
    }

    pub fn to_automaton(&self) -> Result<OrbitAutomaton> {
        let gs = GeneratorSet::from_signed(self.d, &self.sigma)?;
        if self.labels.len() != self.states {
            return Err(Error::Validation(format!(
                "{} labels for {} states",
                self.labels.len(),
                self.states
            )));
        }
        let mut delta = BTreeMap::new();
        for (key, map) in &self.delta {
            let a = parse_generator_key(key)?;
            if delta.insert(a, map.clone()).is_some() {
                return Err(Error::Parse(format!("duplicate transitions for generator {a}")));
            }
        }
        OrbitAutomaton::new(gs, self.alphabet.clone(), self.labels.clone(), delta, self.base)
    }
}

pub fn parse_automaton(text: &str) -> Result<OrbitAutomaton> {
    from_json::<AutomatonFile>(text)?.to_automaton()
}

pub fn write_automaton(o: &OrbitAutomaton) -> String {
    to_json(&AutomatonFile::from_automaton(o))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternFile {
    /// Word → symbol name.
    pub entries: BTreeMap<String, String>,
}

impl PatternFile {
    pub fn from_pattern(p: &Pattern, gs: &GeneratorSet, alphabet: &[String]) -> Self {
        PatternFile {
            entries: p
                .iter()
                .map(|(w, s)| (gs.format_word(w), alphabet[s].clone()))
                .collect(),
        }
    }

    pub fn to_pattern(&self, gs: &GeneratorSet, alphabet: &[String]) -> Result<Pattern> {
        let mut out = Pattern::new();
        for (word, symbol) in &self.entries {
            let w = gs.parse_word(word)?;
            let s = symbol_index(alphabet, symbol)?;
            if out.insert(w.clone(), s).is_some() {
                return Err(Error::Parse(format!(
                    "word {word:?} repeats {} after reduction",
                    gs.format_word(&w)
                )));
            }
        }
        Ok(out)
    }
}

/// Keys are checked against the rank of `gs` but not for membership in `S`;
/// operations report membership errors themselves.
pub fn parse_pattern(text: &str, gs: &GeneratorSet, alphabet: &[String]) -> Result<Pattern> {
    from_json::<PatternFile>(text)?.to_pattern(gs, alphabet)
}

pub fn write_pattern(p: &Pattern, gs: &GeneratorSet, alphabet: &[String]) -> String {
    to_json(&PatternFile::from_pattern(p, gs, alphabet))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub degree: usize,
    /// Generator index → permutation array (image of `i` at position `i`).
    pub images: BTreeMap<String, Vec<usize>>,
}

pub fn parse_morphism(text: &str) -> Result<Morphism> {
    let file: MorphismFile = from_json(text)?;
    let mut images = BTreeMap::new();
    for (key, perm) in file.images {
        let a = parse_generator_key(&key)?;
        if a.is_inverse() {
            return Err(Error::Parse(format!("morphism key {key:?} must be a positive index")));
        }
        images.insert(a.index(), Permutation::new(perm)?);
    }
    Morphism::new(file.degree, images)
}

pub fn write_morphism(m: &Morphism) -> String {
    to_json(&MorphismFile {
        degree: m.degree(),
        images: m
            .images()
            .iter()
            .map(|(i, p)| (i.to_string(), p.images().to_vec()))
            .collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BernoulliFile {
    pub d: u32,
    pub sigma: Vec<i64>,
    pub alphabet: Vec<String>,
    pub p: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedOrbit {
    pub weight: String,
    pub automaton: AutomatonFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicFile {
    pub orbits: Vec<WeightedOrbit>,
}

/// Any measure on `A^S` the command line can load.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MeasureFile {
    Markov(ChainFile),
    Bernoulli(BernoulliFile),
    Periodic(PeriodicFile),
}

/// A loaded measure together with its symbol names.
pub enum LoadedMeasure {
    Chain(MarkovTreeChain),
    Periodic {
        measure: PeriodicMeasure,
        alphabet: Vec<String>,
    },
}

impl LoadedMeasure {
    pub fn as_measure(&self) -> &dyn CylinderMeasure {
        match self {
            LoadedMeasure::Chain(c) => c,
            LoadedMeasure::Periodic { measure, .. } => measure,
        }
    }

    pub fn alphabet(&self) -> &[String] {
        match self {
            LoadedMeasure::Chain(c) => c.alphabet(),
            LoadedMeasure::Periodic { alphabet, .. } => alphabet,
        }
    }

    pub fn chain(&self) -> Option<&MarkovTreeChain> {
        match self {
            LoadedMeasure::Chain(c) => Some(c),
            LoadedMeasure::Periodic { .. } => None,
        }
    }
}

/// Reads a tagged measure file, or a bare chain file without `kind`.
pub fn parse_measure(text: &str) -> Result<LoadedMeasure> {
    let value: serde_json::Value = from_json(text)?;
    let tagged = value.get("kind").is_some();
    if !tagged {
        return Ok(LoadedMeasure::Chain(parse_chain(text)?));
    }
    let file: MeasureFile = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    match file {
        MeasureFile::Markov(c) => Ok(LoadedMeasure::Chain(c.to_chain()?)),
        MeasureFile::Bernoulli(b) => {
            let gs = GeneratorSet::from_signed(b.d, &b.sigma)?;
            let chain = MarkovTreeChain::bernoulli(gs, b.alphabet, parse_vector(&b.p)?)?;
            Ok(LoadedMeasure::Chain(chain))
        }
        MeasureFile::Periodic(p) => {
            let mut orbits = Vec::with_capacity(p.orbits.len());
            for o in &p.orbits {
                orbits.push((o.automaton.to_automaton()?, parse_rational(&o.weight)?));
            }
            let alphabet = orbits
                .first()
                .map(|(o, _)| o.alphabet().to_vec())
                .unwrap_or_default();
            if let Some((o, _)) = orbits.iter().find(|(o, _)| o.alphabet() != alphabet.as_slice()) {
                return Err(Error::Validation(format!(
                    "orbit alphabets differ: {:?} vs {:?}",
                    o.alphabet(),
                    alphabet
                )));
            }
            Ok(LoadedMeasure::Periodic {
                measure: PeriodicMeasure::new(orbits)?,
                alphabet,
            })
        }
    }
}

pub fn write_periodic(orbits: &[(OrbitAutomaton, Rational)]) -> String {
    to_json(&MeasureFile::Periodic(PeriodicFile {
        orbits: orbits
            .iter()
            .map(|(o, w)| WeightedOrbit {
                weight: format_rational(w),
                automaton: AutomatonFile::from_automaton(o),
            })
            .collect(),
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticePatternFile {
    /// `(coordinates, symbol name)` pairs.
    pub entries: Vec<(Vec<i64>, String)>,
}

pub fn parse_lattice_pattern(text: &str, dim: usize, alphabet: &[String]) -> Result<LatticePattern> {
    let file: LatticePatternFile = from_json(text)?;
    let mut entries = BTreeMap::new();
    for (coords, name) in file.entries {
        if coords.len() != dim {
            return Err(Error::Parse(format!(
                "site {coords:?} does not have {dim} coordinates"
            )));
        }
        let v = LatticeVector(coords);
        if entries.insert(v.clone(), symbol_index(alphabet, &name)?).is_some() {
            return Err(Error::Parse(format!("site {v} appears twice")));
        }
    }
    Ok(LatticePattern::from_entries(entries))
}

pub fn write_lattice_pattern(p: &LatticePattern, alphabet: &[String]) -> String {
    to_json(&LatticePatternFile {
        entries: p.iter().map(|(v, s)| (v.0.clone(), alphabet[s].clone())).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum LatticeMeasureFile {
    Product {
        d: usize,
        alphabet: Vec<String>,
        p: Vec<String>,
    },
    Chain1d {
        alphabet: Vec<String>,
        p: Vec<String>,
        #[serde(rename = "P")]
        transition: Vec<Vec<String>>,
    },
    Table {
        alphabet: Vec<String>,
        shape: Vec<usize>,
        probs: Vec<String>,
    },
}

pub struct LoadedLatticeMeasure {
    pub oracle: Box<dyn LatticeOracle>,
    pub alphabet: Vec<String>,
}

pub fn parse_lattice_measure(text: &str) -> Result<LoadedLatticeMeasure> {
    let file: LatticeMeasureFile = from_json(text)?;
    let (oracle, alphabet): (Box<dyn LatticeOracle>, Vec<String>) = match file {
        LatticeMeasureFile::Product { d, alphabet, p } => {
            (Box::new(ProductMeasure::new(d, parse_vector(&p)?)?), alphabet)
        }
        LatticeMeasureFile::Chain1d {
            alphabet,
            p,
            transition,
        } => (
            Box::new(MarkovChain1D::new(parse_vector(&p)?, parse_matrix(&transition)?)?),
            alphabet,
        ),
        LatticeMeasureFile::Table {
            alphabet,
            shape,
            probs,
        } => (
            Box::new(TableMeasure::new(shape, alphabet.len(), parse_vector(&probs)?)?),
            alphabet,
        ),
    };
    if alphabet.len() != oracle.alphabet_size() {
        return Err(Error::Validation(format!(
            "alphabet has {} names for {} symbols",
            alphabet.len(),
            oracle.alphabet_size()
        )));
    }
    Ok(LoadedLatticeMeasure { oracle, alphabet })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub name: String,
    pub values: Vec<String>,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAlphabetFile {
    pub order: usize,
    pub domain: Vec<String>,
    pub blocks: Vec<BlockEntry>,
}

pub fn write_block_alphabet(b: &BlockAlphabet, gs: &GeneratorSet, alphabet: &[String]) -> String {
    to_json(&BlockAlphabetFile {
        order: b.order,
        domain: b.domain.iter().map(|w| gs.format_word(w)).collect(),
        blocks: (0..b.len())
            .map(|i| BlockEntry {
                name: b.name(i),
                values: b.blocks[i].iter().map(|&s| alphabet[s].clone()).collect(),
                weight: format_rational(&b.weights[i]),
            })
            .collect(),
    })
}

/// `"1,2;0,1"` → `[[1,2],[0,1]]`; also accepts four comma separated entries.
pub fn parse_mat2(text: &str) -> Result<[[i64; 2]; 2]> {
    let entries: Vec<i64> = text
        .split([',', ';'])
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid matrix {text:?}")))
        })
        .collect::<Result<_>>()?;
    match entries.as_slice() {
        [a, b, c, d] => Ok([[*a, *b], [*c, *d]]),
        _ => Err(Error::Parse(format!("matrix {text:?} needs four entries"))),
    }
}

pub fn parse_word(text: &str) -> Result<Word> {
    text.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    const THIRD: &str = r#"{
        "d": 2, "sigma": [1, 2], "alphabet": ["0", "1"],
        "p": ["1/3", "2/3"],
        "P": {"1": [["1/2", "1/2"], ["1/4", "3/4"]], "2": [["1/2", "1/2"], ["1/4", "3/4"]]}
    }"#;

    #[test]
    fn chain_round_trip() {
        let c = parse_chain(THIRD).unwrap();
        assert_eq!(parse_chain(&write_chain(&c)).unwrap(), c);
        assert!(write_chain(&c).contains("\"1/3\""));
    }

    #[test]
    fn chain_errors() {
        assert!(matches!(parse_chain("{"), Err(Error::Parse(_))));
        let extra = THIRD.replace("\"d\": 2", "\"d\": 2, \"x\": 1");
        assert!(matches!(parse_chain(&extra), Err(Error::Parse(_))));
        let bad_key = THIRD.replace("\"2\": [[", "\"b\": [[");
        assert!(matches!(parse_chain(&bad_key), Err(Error::Parse(_))));
        let zero_den = THIRD.replace("1/3", "1/0");
        assert!(parse_chain(&zero_den).is_err());
    }

    #[test]
    fn measure_kinds() {
        let tagged = THIRD.replacen('{', "{\"kind\": \"markov\",", 1);
        assert!(parse_measure(&tagged).unwrap().chain().is_some());
        assert!(parse_measure(THIRD).unwrap().chain().is_some());
        let bern = r#"{"kind": "bernoulli", "d": 2, "sigma": [1, 2], "alphabet": ["0", "1"], "p": ["1/2", "1/2"]}"#;
        assert!(parse_measure(bern).is_ok());
        let unknown = r#"{"kind": "gibbs"}"#;
        assert!(matches!(parse_measure(unknown), Err(Error::Parse(_))));
    }

    #[test]
    fn periodic_measure_file() {
        let text = r#"{"kind": "periodic", "orbits": [{"weight": "1", "automaton":
            {"d": 2, "sigma": [1, 2], "alphabet": ["0", "1"], "states": 2, "base": 0,
             "labels": [0, 1], "delta": {"1": [1, 0], "2": [1, 0]}}}]}"#;
        let m = parse_measure(text).unwrap();
        assert_eq!(m.alphabet(), ["0", "1"]);
        assert_eq!(m.as_measure().alphabet_size(), 2);
    }

    #[test]
    fn pattern_round_trip_and_errors() {
        let gs = GeneratorSet::from_signed(2, &[1, 2]).unwrap();
        let names = vec!["0".to_string(), "1".to_string()];
        let text = r#"{"entries": {"e": "0", "a1": "1", "a1a2": "1"}}"#;
        let p = parse_pattern(text, &gs, &names).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(parse_pattern(&write_pattern(&p, &gs, &names), &gs, &names).unwrap(), p);
        assert!(parse_pattern(r#"{"entries": {"e": "7"}}"#, &gs, &names).is_err());
        assert!(parse_pattern(r#"{"entries": {"a3": "0"}}"#, &gs, &names).is_err());
        assert!(parse_pattern(r#"{"entries": {"a1A1": "0", "e": "1"}}"#, &gs, &names).is_err());
    }

    #[test]
    fn morphism_round_trip() {
        let text = r#"{"degree": 4, "images": {"1": [1, 0, 3, 2], "2": [2, 3, 0, 1]}}"#;
        let m = parse_morphism(text).unwrap();
        assert_eq!(parse_morphism(&write_morphism(&m)).unwrap(), m);
        assert!(parse_morphism(r#"{"degree": 2, "images": {"1": [0, 0]}}"#).is_err());
        assert!(parse_morphism(r#"{"degree": 2, "images": {"-1": [1, 0]}}"#).is_err());
        assert!(parse_morphism(r#"{"degree": 3, "images": {"1": [1, 0]}}"#).is_err());
    }

    #[test]
    fn lattice_files() {
        let names = vec!["0".to_string(), "1".to_string()];
        let p = parse_lattice_pattern(r#"{"entries": [[[-1], "0"], [[1], "1"]]}"#, 1, &names).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(parse_lattice_pattern(&write_lattice_pattern(&p, &names), 1, &names).unwrap(), p);
        assert!(parse_lattice_pattern(r#"{"entries": [[[0, 1], "0"]]}"#, 1, &names).is_err());
        assert!(parse_lattice_pattern(r#"{"entries": [[[0], "0"], [[0], "1"]]}"#, 1, &names).is_err());

        let chain = r#"{"kind": "chain1d", "alphabet": ["0", "1"], "p": ["1/3", "2/3"],
                        "P": [["1/2", "1/2"], ["1/4", "3/4"]]}"#;
        assert_eq!(parse_lattice_measure(chain).unwrap().oracle.dim(), 1);
        let bad = r#"{"kind": "product", "d": 1, "alphabet": ["0"], "p": ["1/2", "1/2"]}"#;
        assert!(parse_lattice_measure(bad).is_err());
    }

    #[test]
    fn matrices() {
        assert_eq!(parse_mat2("1,2;0,1").unwrap(), [[1, 2], [0, 1]]);
        assert_eq!(parse_mat2("1, 0, 2, 1").unwrap(), [[1, 0], [2, 1]]);
        assert!(parse_mat2("1,2,3").is_err());
        assert!(parse_mat2("1,x;0,1").is_err());
    }
}
