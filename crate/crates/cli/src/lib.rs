//! Command implementations for the `dendric` binary.
//!
//! Every command returns an [`Outcome`] holding its exit code and buffered
//! output. Exit codes: 0 the checked property holds, 1 it fails and a
//! witness is printed, 2 usage, parse or range error.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dendric::freegroup::{evaluate, is_basis_of_free_group, stallings};
use dendric::language::{
    complexity, dendric_report, extension_graph, generate_language, LanguageApprox,
};
use dendric::rauzy::{check_return_criterion, rauzy_graph};
use dendric::returns::{derive, derived_capacity, return_words, right_return_words, DerivedSystem};
use dendric::sweep;
use dendric::tame::{tame_decompose, TameOutcome, DEFAULT_BUDGET};
use dendric::{systems, Alphabet, Error, GroupWord, Substitution, Syllable, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Dot,
    Tsv,
}

#[derive(Debug, Parser)]
#[command(
    name = "dendric",
    version,
    about = "Return words, extension graphs and free-group bases of substitutive shifts"
)]
pub struct Cli {
    /// Substitution file (`x -> w` per line), or a bundled system name.
    #[arg(long, global = true, value_name = "FILE")]
    pub system: Option<String>,
    /// Length bound of the language approximation.
    #[arg(long = "max-len", global = true, default_value_t = 64)]
    pub max_len: usize,
    /// Word-length bound for sweeps.
    #[arg(long, global = true, default_value_t = 4)]
    pub bound: usize,
    /// A word of the language; `eps` is the empty word.
    #[arg(long, global = true)]
    pub word: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Node budget of the tame decomposition search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Seed for randomized spot checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor listing and complexity table.
    Language,
    /// Return words to `--word`, the θ table, and the basis check.
    Returns,
    /// Derived language with respect to `--word`.
    Derive,
    /// Checks that every extension graph up to `--bound` is a tree.
    CheckDendric,
    /// Checks that every return set up to `--bound` is a (tame) basis.
    CheckReturns,
    /// Compares the dendric and basis verdicts up to `--bound`.
    Theorem,
    /// DOT output for one object.
    Graph {
        #[arg(value_enum)]
        which: GraphKind,
        /// Order of the Rauzy graph.
        #[arg(long, default_value_t = 1)]
        order: usize,
        /// Comma-separated generators for `stallings` (`ab,ab^-1c`).
        #[arg(long)]
        generators: Option<String>,
    },
    /// Tame certificate for the return set of `--word`, or for `--generators`.
    Tame {
        #[arg(long)]
        generators: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    Extension,
    Rauzy,
    Stallings,
    Derived,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", message.into()),
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::usage(e.to_string())
    }
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub system: Substitution,
    pub max_len: usize,
    pub bound: usize,
    pub word: Option<String>,
    pub format: Format,
    pub budget: usize,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(system: Substitution, max_len: usize, bound: usize) -> Self {
        Self {
            system,
            max_len,
            bound,
            word: None,
            format: Format::Text,
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }

    pub fn with_word(mut self, word: &str) -> Self {
        self.word = Some(word.to_string());
        self
    }

    pub fn with_format(mut self, format: Format) -> Self {
        self.format = format;
        self
    }

    fn from_cli(cli: &Cli) -> Result<Self, Outcome> {
        let spec = cli
            .system
            .as_deref()
            .ok_or_else(|| Outcome::usage("--system is required"))?;
        let system = load_system(spec).map_err(Outcome::from)?;
        if cli.budget == 0 {
            return Err(Outcome::usage("--budget must be at least 1"));
        }
        Ok(Self {
            system,
            max_len: cli.max_len,
            bound: cli.bound,
            word: cli.word.clone(),
            format: cli.format,
            budget: cli.budget,
            seed: cli.seed,
        })
    }

    /// Sweeps inspect extension graphs of words up to `bound`.
    fn check_sweep_range(&self) -> Result<(), Outcome> {
        if self.max_len < self.bound + 2 {
            return Err(Outcome::usage(format!(
                "--max-len ({}) must be at least --bound + 2 ({})",
                self.max_len,
                self.bound + 2
            )));
        }
        Ok(())
    }

    fn language(&self) -> Result<LanguageApprox, Outcome> {
        generate_language(&self.system, self.max_len).map_err(Outcome::from)
    }

    fn word(&self, lang: &LanguageApprox) -> Result<Word, Outcome> {
        let text = self
            .word
            .as_deref()
            .ok_or_else(|| Outcome::usage("--word is required"))?;
        lang.parse_word(text).map_err(Outcome::from)
    }
}

/// A substitution file path, or one of the bundled system names.
pub fn load_system(spec: &str) -> dendric::Result<Substitution> {
    let path = Path::new(spec);
    if path.exists() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{spec}: {e}")))?;
        let name = path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or(spec)
            .to_string();
        return Substitution::parse(&name, &text);
    }
    let stem = spec.strip_suffix(".sub").unwrap_or(spec);
    let stem = stem.rsplit('/').next().unwrap_or(stem);
    systems::by_name(stem)
        .ok_or_else(|| Error::Input(format!("{spec}: no such file or bundled system")))
}

pub fn run(cli: &Cli) -> Outcome {
    let config = match RunConfig::from_cli(cli) {
        Ok(c) => c,
        Err(o) => return o,
    };
    match &cli.command {
        Command::Language => cmd_language(&config),
        Command::Returns => cmd_returns(&config),
        Command::Derive => cmd_derive(&config),
        Command::CheckDendric => cmd_check_dendric(&config),
        Command::CheckReturns => cmd_check_returns(&config),
        Command::Theorem => cmd_theorem(&config),
        Command::Graph {
            which: GraphKind::Stallings,
            generators,
            ..
        } => cmd_stallings_graph(&config, generators.as_deref()),
        Command::Graph { which, order, .. } => cmd_graph(&config, *which, *order),
        Command::Tame { generators } => cmd_tame(&config, generators.as_deref()),
    }
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return Outcome::from(o),
        }
    };
}

pub fn cmd_language(config: &RunConfig) -> Outcome {
    let lang = tri!(config.language());
    let c = complexity(&lang);
    let mut out = String::new();
    let cell = |v: Option<&i64>| v.map_or_else(|| "-".to_string(), i64::to_string);
    match config.format {
        Format::Tsv => {
            out.push_str("n\tp\ts\tb\n");
            for n in 0..c.p.len() {
                let _ = writeln!(
                    out,
                    "{n}\t{}\t{}\t{}",
                    c.p[n],
                    cell(c.s.get(n)),
                    cell(c.b.get(n))
                );
            }
        }
        Format::Text | Format::Dot => {
            let _ = writeln!(
                out,
                "# system {} max_len {}",
                config.system.name(),
                lang.max_len()
            );
            let _ = writeln!(out, "{:>4} {:>6} {:>6} {:>6}", "n", "p", "s", "b");
            for n in 0..c.p.len() {
                let _ = writeln!(
                    out,
                    "{n:>4} {:>6} {:>6} {:>6}",
                    c.p[n],
                    cell(c.s.get(n)),
                    cell(c.b.get(n))
                );
            }
            out.push_str("# factors\n");
            for n in 0..=lang.max_len() {
                let words: Vec<String> = lang.level(n).iter().map(|w| lang.render(w)).collect();
                let _ = writeln!(out, "{n}: {}", words.join(" "));
            }
        }
    }
    Outcome::ok(out)
}

fn symbol_alphabet(k: usize) -> Alphabet {
    Alphabet::numbered("r", k).expect("k ≥ 1")
}

pub fn cmd_returns(config: &RunConfig) -> Outcome {
    let lang = tri!(config.language());
    let w = tri!(config.word(&lang));
    let left = tri!(return_words(&lang, &w).map_err(Outcome::from));
    let right = tri!(right_return_words(&lang, &w).map_err(Outcome::from));
    let alphabet = lang.alphabet();
    let gens = left.group_words();
    let basis = is_basis_of_free_group(&gens, alphabet);
    let symbols = symbol_alphabet(left.len());
    let mut out = String::new();
    match config.format {
        Format::Tsv => {
            out.push_str("symbol\treturn\tright_return\n");
            for (i, (r, rr)) in left.iter().zip(right.iter()).enumerate() {
                let _ = writeln!(out, "r{}\t{}\t{}", i + 1, lang.render(r), lang.render(rr));
            }
        }
        Format::Text | Format::Dot => {
            let _ = writeln!(
                out,
                "# return words to {} ({})",
                lang.render(&w),
                left.len()
            );
            out.push_str(&left.report(alphabet));
            out.push_str("# theta\n");
            for (i, r) in left.iter().enumerate() {
                let _ = writeln!(out, "r{} = {}", i + 1, lang.render(r));
            }
            out.push_str("# right return words\n");
            out.push_str(&right.report(alphabet));
            let _ = writeln!(out, "basis: {basis}");
            if basis {
                let graph = stallings(&gens, alphabet);
                out.push_str("# letters in the return basis\n");
                for l in alphabet.letters() {
                    let expr = tri!(graph
                        .express(&GroupWord::generator(l))
                        .map_err(Outcome::from));
                    let _ = writeln!(
                        out,
                        "{} = {}",
                        alphabet.name(l),
                        symbols.render_group(&expr)
                    );
                }
            }
        }
    }
    Outcome::ok(out)
}

fn derived_system(config: &RunConfig, lang: &LanguageApprox) -> Result<DerivedSystem, Outcome> {
    let w = config.word(lang)?;
    let n = derived_capacity(lang, &w).map_err(Outcome::from)?;
    if n < 2 {
        return Err(Outcome::usage(format!(
            "--max-len {} leaves a derived length of {n}; raise it",
            lang.max_len()
        )));
    }
    derive(lang, &w, n).map_err(Outcome::from)
}

pub fn cmd_derive(config: &RunConfig) -> Outcome {
    let lang = tri!(config.language());
    let d = tri!(derived_system(config, &lang));
    if config.format == Format::Dot {
        let g = tri!(extension_graph(&d.language, &Word::empty()).map_err(Outcome::from));
        return Outcome::ok(g.to_dot(d.alphabet()));
    }
    let c = complexity(&d.language);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# derived system {} up to length {}",
        d.language.source(),
        d.language.max_len()
    );
    out.push_str(&d.theta_table());
    out.push_str("# complexity\n");
    for (n, p) in c.p.iter().enumerate() {
        let _ = writeln!(out, "{n}\t{p}");
    }
    let shown = d.language.max_len().min(config.bound.max(2));
    let _ = writeln!(out, "# derived factors up to length {shown}");
    for n in 0..=shown {
        let words: Vec<String> = d
            .language
            .level(n)
            .iter()
            .map(|z| d.language.render(z))
            .collect();
        let _ = writeln!(out, "{n}: {}", words.join(" "));
    }
    Outcome::ok(out)
}

pub fn cmd_check_dendric(config: &RunConfig) -> Outcome {
    tri!(config.check_sweep_range());
    let lang = tri!(config.language());
    let report = tri!(dendric_report(&lang, config.bound).map_err(Outcome::from));
    let alphabet = lang.alphabet();
    let mut out = String::new();
    if config.format != Format::Dot {
        out.push_str("word\tleft\tright\tedges\tm\tconnected\ttree\n");
        for row in &report.rows {
            let g = &row.graph;
            let names =
                |ls: &[dendric::Letter]| ls.iter().map(|&l| alphabet.name(l)).collect::<String>();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                lang.render(&g.word),
                names(&g.left),
                names(&g.right),
                g.edges.len(),
                row.multiplicity,
                row.connected,
                row.tree
            );
        }
    }
    match report.first_non_tree() {
        None => {
            if config.format != Format::Dot {
                let _ = writeln!(out, "# dendric up to length {}", config.bound);
            }
            Outcome::ok(out)
        }
        Some(row) => {
            if config.format != Format::Dot {
                let _ = writeln!(
                    out,
                    "# not dendric: witness {}",
                    lang.render(&row.graph.word)
                );
            }
            out.push_str(&row.graph.to_dot(alphabet));
            Outcome {
                code: 1,
                stdout: out,
                stderr: String::new(),
            }
        }
    }
}

/// One row of the return-set sweep.
#[derive(Clone, Debug)]
pub struct ReturnRow {
    pub word: Word,
    pub returns: Vec<Word>,
    pub basis: bool,
    pub tame: Option<TameOutcome>,
}

/// Return-set verdicts for every factor of length at most `bound`.
pub fn return_sweep(
    lang: &LanguageApprox,
    bound: usize,
    budget: usize,
) -> dendric::Result<Vec<ReturnRow>> {
    let words: Vec<&Word> = lang.factors_up_to(bound).collect();
    sweep::map(&words, |w| {
        let r = return_words(lang, w)?;
        let basis = is_basis_of_free_group(&r.group_words(), lang.alphabet());
        let tame = if basis {
            Some(tame_decompose(&r.returns, lang.alphabet(), budget)?)
        } else {
            None
        };
        Ok(ReturnRow {
            word: (*w).clone(),
            returns: r.returns,
            basis,
            tame,
        })
    })
    .into_iter()
    .collect()
}

pub fn cmd_check_returns(config: &RunConfig) -> Outcome {
    let lang = tri!(config.language());
    let rows = tri!(return_sweep(&lang, config.bound, config.budget).map_err(Outcome::from));
    let alphabet = lang.alphabet();
    let mut out = String::from("word\tcount\tbasis\ttame\tcertificate\n");
    let mut warnings = String::new();
    for row in &rows {
        let (tame, cert) = match &row.tame {
            Some(TameOutcome::Found(c)) => (
                "true".to_string(),
                c.moves
                    .iter()
                    .map(|m| m.render(alphabet))
                    .collect::<Vec<_>>()
                    .join("; "),
            ),
            Some(TameOutcome::NotFound { nodes }) => {
                let _ = writeln!(
                    warnings,
                    "warning: no tame certificate for {} within {nodes} nodes (inconclusive)",
                    lang.render(&row.word)
                );
                ("unknown".to_string(), "-".to_string())
            }
            None => ("-".to_string(), "-".to_string()),
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            lang.render(&row.word),
            row.returns.len(),
            row.basis,
            tame,
            if cert.is_empty() {
                "identity".to_string()
            } else {
                cert
            }
        );
    }
    out.push_str(&warnings);
    match rows.iter().find(|r| !r.basis) {
        None => {
            let _ = writeln!(
                out,
                "# every return set up to length {} is a basis",
                config.bound
            );
            Outcome::ok(out)
        }
        Some(row) => {
            let listed: Vec<String> = row.returns.iter().map(|r| lang.render(r)).collect();
            let _ = writeln!(
                out,
                "# not a basis: witness {} with returns {{{}}}",
                lang.render(&row.word),
                listed.join(", ")
            );
            Outcome {
                code: 1,
                stdout: out,
                stderr: String::new(),
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Dendric up to the bound and every return set a basis.
    AgreeDendric,
    /// A non-tree extension graph and a non-basis return set were both found.
    AgreeNotDendric { non_tree: Word, non_basis: Word },
    /// Only one side found a witness within the bound.
    Inconclusive,
    /// A checked consequence of the theory failed.
    Contradiction(String),
}

/// Independent dendric and return-set sweeps, plus the consequences that
/// must hold whatever the verdicts.
pub fn theorem_verdict(config: &RunConfig) -> Result<(Verdict, String), Outcome> {
    config.check_sweep_range()?;
    let lang = config.language()?;
    let alphabet = lang.alphabet();
    let mut log = String::new();
    let dendric = dendric_report(&lang, config.bound).map_err(Outcome::from)?;
    let rows = return_sweep(&lang, config.bound, config.budget).map_err(Outcome::from)?;

    let mut problems = Vec::new();
    for row in &dendric.rows {
        if row.connected && row.multiplicity < 0 {
            problems.push(format!(
                "{} is connected and weak",
                lang.render(&row.graph.word)
            ));
        }
        if row.connected && row.multiplicity == 0 && !row.tree {
            problems.push(format!(
                "{} is connected, neutral, not a tree",
                lang.render(&row.graph.word)
            ));
        }
    }
    for n in 0..=config.bound.min(lang.max_len().saturating_sub(2)) {
        let eq = dendric::check_bilateral_sum(&lang, n).map_err(Outcome::from)?;
        if !eq.holds() {
            problems.push(format!("b({n}) = {} but Σ m = {}", eq.b, eq.sum));
        }
    }
    let words: Vec<&Word> = lang.factors_up_to(config.bound).collect();
    for result in sweep::map(&words, |w| check_return_criterion(&lang, w)) {
        match result {
            Ok(_) | Err(Error::Range(_)) => {}
            Err(e) => problems.push(e.to_string()),
        }
    }

    // seeded round trips through the return bases
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut round_trips = 0;
    for row in rows.iter().filter(|r| r.basis) {
        let gens: Vec<GroupWord> = row.returns.iter().map(Word::to_group).collect();
        let graph = stallings(&gens, alphabet);
        let target = GroupWord::from_syllables((0..rng.random_range(0..8)).map(|_| {
            let l = dendric::Letter(rng.random_range(0..alphabet.len() as u32));
            if rng.random_bool(0.5) {
                Syllable::pos(l)
            } else {
                Syllable::neg(l)
            }
        }));
        match graph.express(&target) {
            Ok(e) if evaluate(&gens, &e) == target => round_trips += 1,
            _ => problems.push(format!(
                "express round trip failed at {}",
                lang.render(&row.word)
            )),
        }
    }

    let non_tree = dendric.first_non_tree().map(|r| r.graph.word.clone());
    let non_basis = rows.iter().find(|r| !r.basis).map(|r| r.word.clone());
    let _ = writeln!(
        log,
        "dendric up to {}: {}",
        config.bound,
        non_tree.as_ref().map_or("yes".to_string(), |w| format!(
            "no (witness {})",
            lang.render(w)
        ))
    );
    let _ = writeln!(
        log,
        "return sets are bases up to {}: {}",
        config.bound,
        non_basis.as_ref().map_or("yes".to_string(), |w| format!(
            "no (witness {})",
            lang.render(w)
        ))
    );
    let _ = writeln!(log, "express round trips: {round_trips}");
    let verdict = if let Some(first) = problems.first() {
        for p in &problems {
            let _ = writeln!(log, "violation: {p}");
        }
        Verdict::Contradiction(first.clone())
    } else {
        match (non_tree, non_basis) {
            (None, None) => Verdict::AgreeDendric,
            (Some(non_tree), Some(non_basis)) => Verdict::AgreeNotDendric {
                non_tree,
                non_basis,
            },
            _ => Verdict::Inconclusive,
        }
    };
    Ok((verdict, log))
}

pub fn cmd_theorem(config: &RunConfig) -> Outcome {
    let (verdict, mut out) = tri!(theorem_verdict(config));
    let (line, code) = match &verdict {
        Verdict::AgreeDendric => (
            "verdict: agree (dendric, every return set a basis)".to_string(),
            0,
        ),
        Verdict::AgreeNotDendric { .. } => (
            "verdict: agree (not dendric, non-basis return set found)".to_string(),
            0,
        ),
        Verdict::Inconclusive => (
            "verdict: inconclusive (a witness may lie beyond the bound)".to_string(),
            0,
        ),
        Verdict::Contradiction(msg) => (format!("verdict: contradiction ({msg})"), 1),
    };
    out.push_str(&line);
    out.push('\n');
    Outcome {
        code,
        stdout: out,
        stderr: String::new(),
    }
}

pub fn cmd_graph(config: &RunConfig, which: GraphKind, order: usize) -> Outcome {
    let lang = tri!(config.language());
    match which {
        GraphKind::Extension => {
            let w = tri!(config.word(&lang));
            let g = tri!(extension_graph(&lang, &w).map_err(Outcome::from));
            Outcome::ok(g.to_dot(lang.alphabet()))
        }
        GraphKind::Rauzy => {
            let g = tri!(rauzy_graph(&lang, order).map_err(Outcome::from));
            Outcome::ok(g.to_dot(lang.alphabet()))
        }
        GraphKind::Derived => {
            let d = tri!(derived_system(config, &lang));
            let g = tri!(extension_graph(&d.language, &Word::empty()).map_err(Outcome::from));
            Outcome::ok(g.to_dot(d.alphabet()))
        }
        GraphKind::Stallings => cmd_stallings_graph(config, None),
    }
}

fn parse_generators(alphabet: &Alphabet, list: &str) -> dendric::Result<Vec<GroupWord>> {
    list.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| alphabet.parse_group_word(s))
        .collect()
}

pub fn cmd_stallings_graph(config: &RunConfig, generators: Option<&str>) -> Outcome {
    let Some(list) = generators else {
        return Outcome::usage("--generators is required for the Stallings graph");
    };
    let alphabet = config.system.domain();
    let gens = tri!(parse_generators(alphabet, list).map_err(Outcome::from));
    Outcome::ok(stallings(&gens, alphabet).to_dot(alphabet))
}

pub fn cmd_tame(config: &RunConfig, generators: Option<&str>) -> Outcome {
    let alphabet = config.system.domain().clone();
    let basis: Vec<Word> = match generators {
        Some(list) => {
            let gens = tri!(parse_generators(&alphabet, list).map_err(Outcome::from));
            match gens
                .iter()
                .map(GroupWord::to_positive)
                .collect::<Option<Vec<_>>>()
            {
                Some(ws) => ws,
                None => return Outcome::usage("tame bases are made of positive words"),
            }
        }
        None => {
            let lang = tri!(config.language());
            let w = tri!(config.word(&lang));
            tri!(return_words(&lang, &w).map_err(Outcome::from)).returns
        }
    };
    let listed: Vec<String> = basis.iter().map(|w| alphabet.render(w)).collect();
    match tame_decompose(&basis, &alphabet, config.budget) {
        Ok(TameOutcome::Found(cert)) => {
            let mut out = format!("# tame certificate for {{{}}}\n", listed.join(", "));
            out.push_str(&cert.render(&alphabet));
            Outcome::ok(out)
        }
        Ok(TameOutcome::NotFound { nodes }) => Outcome {
            code: 0,
            stdout: String::new(),
            stderr: format!(
                "warning: no tame certificate for {{{}}} within {nodes} nodes (inconclusive)\n",
                listed.join(", ")
            ),
        },
        Err(Error::NotABasis) => Outcome {
            code: 1,
            stdout: format!("# not a basis: {{{}}}\n", listed.join(", ")),
            stderr: String::new(),
        },
        Err(e) => e.into(),
    }
}
