//! Batch front end. [`run`] parses arguments, dispatches to the library and
//! returns the exit code with the rendered report, so it can be driven from
//! tests without spawning a process.
//!
//! Exit codes: 0 when the command succeeds or the checked property holds,
//! 1 when the property is false (the report carries a witness), 2 on input
//! errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra::{ball, GeneratorSet, LatticeVector, Symbol, Word};
use crate::error::{Error, Result};
use crate::io;
use crate::markovize::{markovization_consistency, markovize, support_violations};
use crate::measure::{
    counterexample_analyze, counterexample_chain, extend_chain, pushforward_check,
    shift_invariance_check, weak_star_distance, CheckOutcome, MarkovTreeChain,
};
use crate::orbit::{find_separating_morphism, theorem_a_point, Morphism, PeriodicMeasure, DEFAULT_BUDGET};
use crate::pattern::{partial_patterns, Pattern};
use crate::rational::{approx, format_rational, parse_rational, Rational};
use crate::reversible::{window_base_independence, window_measure};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "semishift", version, about = "Exact invariant measures on semigroup shifts")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    /// Worker threads for pattern evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Add decimal approximations to tables. They are not authoritative.
    #[arg(long, global = true)]
    pub approx: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a chain's numeric validity and the invariance criterion.
    ValidateChain {
        #[arg(long)]
        chain: PathBuf,
    },
    /// Compare μ[x; B_r] with μ(a⁻¹[x; B_r]) for every generator.
    InvarianceCheck {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Restrict to one generator, e.g. `a1`.
        #[arg(long)]
        generator: Option<String>,
    },
    /// Evaluate a cylinder.
    Eval {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
    /// Extend an invariant chain to the whole free group.
    Extend {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that an extended measure restricts to the original.
    PushforwardCheck {
        #[arg(long)]
        extended: PathBuf,
        #[arg(long)]
        chain: PathBuf,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Build the order-m block chain of a measure.
    Markovize {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the block alphabet to this file.
        #[arg(long)]
        blocks: Option<PathBuf>,
    },
    /// Compare a measure with its Markovization on patterns inside B_m.
    Consistency {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        order: usize,
        /// Check one pattern instead of all of them.
        #[arg(long)]
        pattern: Option<PathBuf>,
    },
    /// Periodicity, transitivity and transformation monoid of an orbit.
    OrbitAnalyze {
        #[arg(long)]
        automaton: PathBuf,
    },
    /// Periodic point realizing a pattern.
    ThmAConstruct {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        d: u32,
        /// Signed generator indices, e.g. `1,2`.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        sigma: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        alphabet: Vec<String>,
        /// Symbol written outside the pattern (default: the first).
        #[arg(long)]
        fill: Option<String>,
        /// Separating morphism; searched for when absent.
        #[arg(long)]
        morphism: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Largest degree tried by the search.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded search for a morphism into Sym(k) injective on B_r.
    FindMorphism {
        #[arg(long)]
        d: u32,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        sigma: Vec<i64>,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a periodic orbit to the free group.
    Lift {
        #[arg(long)]
        automaton: PathBuf,
        /// Radius on which readouts are compared.
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Total variation between two measures on B_m.
    Distance {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Chain over Z_p² without a proper-quotient extension.
    Counterexample {
        /// Row-major 2×2 integer matrix `a,b;c,d`, one per generator.
        #[arg(long = "matrix", required = true)]
        matrices: Vec<String>,
        /// Kernel word, e.g. `a1a2A1A2`.
        #[arg(long)]
        word: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Window measure on Z^d.
    WindowEval {
        #[arg(long)]
        measure: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
    },
}

/// A report: ordered key/value fields and an optional table.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub table: Option<Table>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Column holding an exact rational, echoed as a decimal with `--approx`.
    pub exact_column: Option<usize>,
}

impl Report {
    fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    fn rational(&mut self, key: &str, value: &Rational) -> &mut Self {
        self.field(key, format_rational(value))
    }

    pub fn render(&self, format: Format, with_approx: bool) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.fields {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                if let Some(t) = &self.table {
                    let (header, rows) = t.with_approx(with_approx);
                    out.push_str(&header.join("\t"));
                    out.push('\n');
                    for r in rows {
                        out.push_str(&r.join("\t"));
                        out.push('\n');
                    }
                }
            }
            Format::Csv => {
                let (header, rows) = match &self.table {
                    Some(t) => t.with_approx(with_approx),
                    None => (
                        vec!["key".to_string(), "value".to_string()],
                        self.fields.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect(),
                    ),
                };
                out.push_str(&csv_line(&header));
                for r in &rows {
                    out.push_str(&csv_line(r));
                }
            }
        }
        out
    }
}

impl Table {
    fn with_approx(&self, enabled: bool) -> (Vec<String>, Vec<Vec<String>>) {
        let mut header = self.header.clone();
        let mut rows = self.rows.clone();
        if let (true, Some(c)) = (enabled, self.exact_column) {
            header.push("approx (non-authoritative)".into());
            for r in &mut rows {
                let decimal = parse_rational(&r[c]).map(|v| approx(&v)).unwrap_or_default();
                r.push(decimal);
            }
        }
        (header, rows)
    }
}

fn csv_line(cells: &[String]) -> String {
    let quoted: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect();
    format!("{}\n", quoted.join(","))
}

/// Exit code and rendered report (or error message).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return Outcome {
                code: if e.use_stderr() { 2 } else { 0 },
                output: e.to_string(),
            }
        }
    };
    let result = match cli.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Validation(format!("thread pool: {e}")))
            .and_then(|pool| pool.install(|| dispatch(&cli.command))),
        None => dispatch(&cli.command),
    };
    match result {
        Ok((holds, report)) => {
            let output = report.render(cli.format, cli.approx);
            if let Some(path) = &cli.report {
                if let Err(e) = fs::write(path, &output) {
                    return Outcome {
                        code: 2,
                        output: format!("error: cannot write {}: {e}\n", path.display()),
                    };
                }
            }
            Outcome {
                code: if holds { 0 } else { 1 },
                output,
            }
        }
        Err(e) => Outcome {
            code: 2,
            output: format!("error: {e}\n"),
        },
    }
}

fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        Error::Validation(m) => Error::Validation(format!("{}: {m}", path.display())),
        other => other,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    parse(&read(path)?).map_err(|e| with_path(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Validation(format!("cannot write {}: {e}", path.display())))
}

fn witness_fields(report: &mut Report, gs: &GeneratorSet, alphabet: &[String], outcome: &CheckOutcome) {
    if let Some((pattern, lhs, rhs)) = &outcome.witness {
        report
            .field("witness", describe_pattern(pattern, gs, alphabet))
            .rational("lhs", lhs)
            .rational("rhs", rhs);
    }
}

fn describe_pattern(p: &Pattern, gs: &GeneratorSet, alphabet: &[String]) -> String {
    let parts: Vec<String> = p
        .iter()
        .map(|(w, s)| format!("{}={}", gs.format_word(w), alphabet[s]))
        .collect();
    format!("{{{}}}", parts.join(" "))
}

fn parse_symbol(gs: &GeneratorSet, text: &str) -> Result<Symbol> {
    let w = gs.parse_word(text)?;
    match w.letters() {
        [s] => Ok(*s),
        _ => Err(Error::Parse(format!("{text:?} is not a single generator"))),
    }
}

fn dispatch(command: &Command) -> Result<(bool, Report)> {
    let mut report = Report::default();
    let holds = match command {
        Command::ValidateChain { chain } => {
            let c = load(chain, io::parse_chain)?;
            let issues = c.validate();
            report.field("valid", issues.is_empty());
            for issue in &issues {
                report.field("issue", issue);
            }
            let invariant = if issues.is_empty() {
                let witness = c.invariance_witness()?;
                report.field("invariant", witness.is_none());
                if let Some(w) = witness {
                    report.field("witness", w);
                }
                c.is_invariant()?
            } else {
                report.field("invariant", false);
                false
            };
            invariant
        }
        Command::InvarianceCheck {
            measure,
            radius,
            generator,
        } => {
            let m = load(measure, io::parse_measure)?;
            let gs = m.as_measure().generators().clone();
            let gens: Vec<Symbol> = match generator {
                Some(g) => vec![parse_symbol(&gs, g)?],
                None => gs.symbols().collect(),
            };
            report.field("radius", radius);
            let mut all = true;
            let mut rows = Vec::new();
            for a in gens {
                let outcome = shift_invariance_check(m.as_measure(), a, *radius)?;
                rows.push(vec![gs.format_word(&Word::letter(a)), outcome.holds.to_string()]);
                if all && !outcome.holds {
                    report.field("failing_generator", gs.format_word(&Word::letter(a)));
                    witness_fields(&mut report, &gs, m.alphabet(), &outcome);
                }
                all &= outcome.holds;
            }
            report.field("invariant", all);
            report.table = Some(Table {
                header: vec!["generator".into(), "holds".into()],
                rows,
                exact_column: None,
            });
            all
        }
        Command::Eval { measure, pattern } => {
            let m = load(measure, io::parse_measure)?;
            let gs = m.as_measure().generators().clone();
            let x = load(pattern, |t| io::parse_pattern(t, &gs, m.alphabet()))?;
            let value = m.as_measure().eval(&x)?;
            report
                .field("pattern", describe_pattern(&x, &gs, m.alphabet()))
                .rational("value", &value)
                .field("approx (non-authoritative)", approx(&value));
            true
        }
        Command::Extend { chain, out } => {
            let c = load(chain, io::parse_chain)?;
            c.ensure_valid()?;
            let ext = extend_chain(&c)?;
            report
                .field("sigma", ext.gs())
                .field("invariant", ext.is_invariant()?);
            report.table = Some(matrix_table(&ext));
            if let Some(path) = out {
                write(path, &io::write_chain(&ext))?;
                report.field("written", path.display());
            }
            ext.is_invariant()?
        }
        Command::PushforwardCheck {
            extended,
            chain,
            radius,
        } => {
            let ext = load(extended, io::parse_measure)?;
            let orig = load(chain, io::parse_measure)?;
            let gs = orig.as_measure().generators().clone();
            if !gs.is_subset(ext.as_measure().generators()) {
                return Err(Error::Validation(format!(
                    "{} is not contained in {}",
                    gs,
                    ext.as_measure().generators()
                )));
            }
            let outcome = pushforward_check(ext.as_measure(), orig.as_measure(), *radius)?;
            report.field("radius", radius).field("holds", outcome.holds);
            witness_fields(&mut report, &gs, orig.alphabet(), &outcome);
            outcome.holds
        }
        Command::Markovize {
            measure,
            order,
            out,
            blocks,
        } => {
            let m = load(measure, io::parse_measure)?;
            let mk = markovize(m.as_measure(), *order)?;
            let gs = mk.chain.gs().clone();
            report
                .field("order", order)
                .field("blocks", mk.blocks.len())
                .field("invariant", mk.invariant);
            if let Some(issue) = &mk.issue {
                report.field("issue", issue);
            }
            let violations = support_violations(&mk);
            report.field("support_violations", violations.len());
            report.table = Some(Table {
                header: vec!["block".into(), "weight".into()],
                rows: (0..mk.blocks.len())
                    .map(|b| vec![mk.blocks.name(b), format_rational(&mk.blocks.weights[b])])
                    .collect(),
                exact_column: Some(1),
            });
            if let Some(path) = out {
                write(path, &io::write_chain(&mk.chain))?;
                report.field("written", path.display());
            }
            if let Some(path) = blocks {
                write(path, &io::write_block_alphabet(&mk.blocks, &gs, m.alphabet()))?;
                report.field("blocks_written", path.display());
            }
            mk.invariant && violations.is_empty()
        }
        Command::Consistency {
            measure,
            order,
            pattern,
        } => {
            let m = load(measure, io::parse_measure)?;
            let gs = m.as_measure().generators().clone();
            let mk = markovize(m.as_measure(), *order)?;
            let patterns: Vec<Pattern> = match pattern {
                Some(path) => vec![load(path, |t| io::parse_pattern(t, &gs, m.alphabet()))?],
                None => {
                    let domain: Vec<Word> = ball(&gs, *order).into_iter().collect();
                    partial_patterns(&domain, m.alphabet().len()).collect()
                }
            };
            let mut holds = true;
            for x in &patterns {
                let outcome = markovization_consistency(m.as_measure(), &mk, x)?;
                if !outcome.holds {
                    report
                        .field("witness", describe_pattern(x, &gs, m.alphabet()))
                        .rational("oracle", &outcome.oracle)
                        .rational("markov", &outcome.markov);
                    holds = false;
                    break;
                }
            }
            report
                .field("order", order)
                .field("patterns", patterns.len())
                .field("holds", holds);
            holds
        }
        Command::OrbitAnalyze { automaton } => {
            let o = load(automaton, io::parse_automaton)?;
            let monoid = o.transformation_monoid();
            report
                .field("states", o.num_states())
                .field("orbit_size", o.orbit_size())
                .field("pre_periodic", o.is_pre_periodic())
                .field("periodic", o.is_periodic())
                .field("transitive", o.is_transitive())
                .field("monoid_size", monoid.size)
                .field("monoid_is_group", monoid.is_group);
            true
        }
        Command::ThmAConstruct {
            pattern,
            d,
            sigma,
            alphabet,
            fill,
            morphism,
            seed,
            max_degree,
            budget,
            out,
        } => {
            let gs = GeneratorSet::from_signed(*d, sigma)?;
            if alphabet.is_empty() {
                return Err(Error::Validation("--alphabet is required".into()));
            }
            let x = load(pattern, |t| io::parse_pattern(t, &gs, alphabet))?;
            x.check_members(&gs)?;
            let fill = match fill {
                Some(name) => alphabet
                    .iter()
                    .position(|a| a == name)
                    .ok_or_else(|| Error::Validation(format!("fill symbol {name:?} not in alphabet")))?,
                None => 0,
            };
            let theta = match (morphism, seed) {
                (Some(path), _) => load(path, io::parse_morphism)?,
                (None, Some(seed)) => search_morphism(&gs, &x, *max_degree, *seed, *budget)?,
                (None, None) => {
                    return Err(Error::Validation("give --morphism or --seed".into()));
                }
            };
            let words: BTreeSet<Word> = x.keys().cloned().collect();
            if !theta.separates(&words)? {
                return Err(Error::Validation("morphism does not separate the pattern's words".into()));
            }
            let point = theorem_a_point(&x, &theta, &gs, alphabet.clone(), fill)?;
            let mut matches = true;
            for (w, s) in x.iter() {
                matches &= point.readout(w)? == s;
            }
            report
                .field("degree", theta.degree())
                .field("states", point.num_states())
                .field("periodic", point.is_periodic())
                .field("readout_matches", matches);
            if let Some(path) = out {
                write(path, &io::write_automaton(&point))?;
                report.field("written", path.display());
            }
            matches && point.is_periodic()
        }
        Command::FindMorphism {
            d,
            sigma,
            radius,
            degree,
            seed,
            budget,
            out,
        } => {
            let gs = GeneratorSet::from_signed(*d, sigma)?;
            report.field("radius", radius).field("degree", degree).field("seed", seed);
            match find_separating_morphism(&gs, *radius, *degree, *seed, *budget) {
                Ok(theta) => {
                    report.field("found", true);
                    report.table = Some(Table {
                        header: vec!["generator".into(), "permutation".into()],
                        rows: theta
                            .images()
                            .iter()
                            .map(|(i, p)| {
                                let cells: Vec<String> = p.images().iter().map(|v| v.to_string()).collect();
                                vec![format!("a{i}"), cells.join(" ")]
                            })
                            .collect(),
                        exact_column: None,
                    });
                    if let Some(path) = out {
                        write(path, &io::write_morphism(&theta))?;
                        report.field("written", path.display());
                    }
                    true
                }
                Err(Error::BudgetExhausted { trials }) => {
                    report.field("found", false).field("trials", trials);
                    false
                }
                Err(e) => return Err(e),
            }
        }
        Command::Lift {
            automaton,
            radius,
            out,
        } => {
            let o = load(automaton, io::parse_automaton)?;
            let lifted = o.lift_to_group()?;
            let mut matches = true;
            for w in ball(o.gs(), *radius) {
                matches &= lifted.readout(&w)? == o.readout(&w)?;
            }
            let original = PeriodicMeasure::uniform(o.clone())?;
            let group = PeriodicMeasure::uniform(lifted.as_automaton().clone())?;
            let push = pushforward_check(&group, &original, radius.saturating_sub(1))?;
            report
                .field("orbit_size", lifted.orbit_size())
                .field("readouts_match", matches)
                .field("pushforward", push.holds);
            witness_fields(&mut report, o.gs(), o.alphabet(), &push);
            if let Some(path) = out {
                write(path, &io::write_automaton(lifted.as_automaton()))?;
                report.field("written", path.display());
            }
            matches && push.holds
        }
        Command::Distance {
            measure,
            other,
            order,
        } => {
            let a = load(measure, io::parse_measure)?;
            let b = load(other, io::parse_measure)?;
            if a.as_measure().generators() != b.as_measure().generators() {
                return Err(Error::Validation("the measures use different generating sets".into()));
            }
            let value = weak_star_distance(a.as_measure(), b.as_measure(), *order)?;
            report
                .field("order", order)
                .rational("distance", &value)
                .field("approx (non-authoritative)", approx(&value));
            true
        }
        Command::Counterexample {
            matrices,
            word,
            prime,
            delta,
            out,
        } => {
            let mats: Vec<[[i64; 2]; 2]> = matrices.iter().map(|m| io::parse_mat2(m)).collect::<Result<_>>()?;
            let w: Word = word.parse()?;
            let r = counterexample_analyze(&mats, &w, *prime)?;
            let fmt_vec = |v: [u64; 2]| format!("({},{})", v[0], v[1]);
            report
                .field("word", w.format_with_rank(mats.len() as u32))
                .field("prime", prime)
                .field(
                    "product",
                    format!(
                        "[[{},{}],[{},{}]]",
                        r.matrix[0][0], r.matrix[0][1], r.matrix[1][0], r.matrix[1][1]
                    ),
                )
                .field("witness", fmt_vec(r.witness))
                .field("image", fmt_vec(r.image))
                .field("cycle_length", r.cycle_length)
                .rational("threshold", &r.threshold)
                .field(
                    "inequality",
                    format!(
                        "{} <= {} * delta",
                        format_rational(&r.inequality.lhs),
                        format_rational(&r.inequality.coefficient)
                    ),
                );
            let mut holds = true;
            if let Some(text) = delta {
                let delta = parse_rational(text)?;
                let chain = counterexample_chain(&mats, *prime, &delta)?;
                let invariant = chain.is_invariant()?;
                let excluded = !r.inequality.holds_for(&delta);
                report
                    .rational("delta", &delta)
                    .field("symbols", chain.alphabet().len())
                    .field("invariant", invariant)
                    .field("extension_excluded", excluded);
                if let Some(path) = out {
                    write(path, &io::write_chain(&chain))?;
                    report.field("written", path.display());
                }
                holds = invariant;
            }
            holds
        }
        Command::WindowEval { measure, pattern } => {
            let m = load(measure, io::parse_lattice_measure)?;
            let x = load(pattern, |t| io::parse_lattice_pattern(t, m.oracle.dim(), &m.alphabet))?;
            let value = window_measure(m.oracle.as_ref(), &x)?;
            let unit = LatticeVector(vec![1; m.oracle.dim()]);
            let base = window_base_independence(m.oracle.as_ref(), &x, &unit)?;
            report
                .field("sites", x.len())
                .rational("value", &value)
                .field("approx (non-authoritative)", approx(&value))
                .field("base_independent", base.holds);
            true
        }
    };
    Ok((holds, report))
}

/// Tries degrees 1, 2, ... up to `max_degree`, each with its own budget.
fn search_morphism(
    gs: &GeneratorSet,
    pattern: &Pattern,
    max_degree: usize,
    seed: u64,
    budget: usize,
) -> Result<Morphism> {
    let r = pattern.keys().map(Word::len).max().unwrap_or(0);
    let mut last = Error::BudgetExhausted { trials: 0 };
    for k in 1..=max_degree {
        match find_separating_morphism(gs, r, k, seed, budget) {
            Ok(theta) => return Ok(theta),
            Err(e @ Error::BudgetExhausted { .. }) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn matrix_table(c: &MarkovTreeChain) -> Table {
    let mut rows = Vec::new();
    for (a, m) in c.transitions() {
        for (k, row) in m.iter().enumerate() {
            for (l, v) in row.iter().enumerate() {
                rows.push(vec![
                    c.gs().format_word(&Word::letter(*a)),
                    c.alphabet()[k].clone(),
                    c.alphabet()[l].clone(),
                    format_rational(v),
                ]);
            }
        }
    }
    Table {
        header: vec!["generator".into(), "from".into(), "to".into(), "probability".into()],
        rows,
        exact_column: Some(3),
    }
}
