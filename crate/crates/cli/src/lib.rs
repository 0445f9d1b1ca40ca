//! Batch runner: resolves named or JSON inputs, runs one check or
//! construction and assembles a deterministic report.

use std::path::Path;
use std::time::Instant;

use barrlab::chains::{build_initial_chain, distance, truncate, unfold, DyadicDist, LimitPoint, TerminalChain};
use barrlab::compair::{check_commuting, search_sigma_family, SearchOutcome};
use barrlab::doc::{self, AlgebraDoc, AlgebraFile, AutomatonDoc, CandidateDoc, EmLawDoc, KlLawDoc, MonadDoc, PolySequenceDoc, SeriesDoc};
use barrlab::laws::{Counterexample, Method};
use barrlab::series::{behavior, cauchy_limit_series, series_distance, words_below, TruncatedSeries};
use barrlab::{
    check_distlaw_em, check_distlaw_kl, check_em_algebra, check_monad_laws, diff_liftings, free_algebra, lift_algebra,
    DistLawEM, EMAlgebra, Error, FinMonad, FinSet, LawReport, Result,
};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Clone, Debug)]
#[command(name = "barrlab", version, about = "Checks and constructions for coalgebras over finite monads")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Largest canonical carrier `{0..n-1}` used by exhaustive checks.
    #[arg(long, global = true, default_value_t = 3)]
    pub max_size: usize,
    /// Depth of terminal-sequence constructions and series.
    #[arg(long, global = true, default_value_t = 8)]
    pub depth: usize,
    /// Levels compared by distance computations; defaults to --depth.
    #[arg(long, global = true)]
    pub probe_depth: Option<usize>,
    /// Partial assignments explored by `commute search` per carrier.
    #[arg(long, global = true, default_value_t = 100_000)]
    pub search_cap: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum LawKind {
    Em,
    Kl,
}

/// Inputs are builtin names or paths to JSON documents.
#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Monad laws on every carrier up to --max-size.
    CheckMonad { monad: String },
    /// Algebra laws: `<form>@<monad>` (forms: free:<n>, scalars, terminal) or a file.
    CheckAlgebra { algebra: String },
    /// Distributive-law axioms on every carrier up to --max-size.
    CheckDistlaw {
        #[arg(value_enum)]
        kind: LawKind,
        law: String,
    },
    /// The lifted algebra `H̃(A)` for an algebra `A` (form or AlgebraDoc file).
    Lift {
        law: String,
        #[arg(long, default_value = "free:1")]
        algebra: String,
    },
    /// Compares the liftings of two laws on one algebra; `gset-<group>`
    /// compares the left and conjugation laws.
    DiffLiftings {
        first: String,
        second: Option<String>,
        #[arg(long, default_value = "free:1")]
        algebra: String,
    },
    /// Level sizes of the terminal sequence of a law's functor and `|M0|`.
    Chain { law: String },
    /// The cone `α_depth` of a Moore automaton, checked against its behaviour.
    Anamorphism { automaton: String },
    /// The behaviour of one state on words shorter than --depth.
    Behavior {
        automaton: String,
        #[arg(long, default_value_t = 0)]
        state: usize,
    },
    /// Distance between two series documents.
    Distance { first: String, second: String },
    /// The limit of a Cauchy sequence of polynomials.
    Limit { sequence: String },
    /// `h_n` on seeded random limit points.
    Density {
        #[arg(long, default_value = "moore:z2:1letter")]
        functor: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        samples: usize,
    },
    /// The cone property of the level algebras, for levels up to --depth.
    Lemma1 { law: String },
    /// Projections of the level algebras, for levels up to --depth.
    Lemma2 { law: String },
    /// Commuting pairs.
    Commute {
        #[command(subcommand)]
        action: CommuteAction,
    },
    /// Words shorter than --depth over `<k>` letters or `a,b,…`.
    Words { alphabet: String },
}

#[derive(Subcommand, Clone, Debug)]
pub enum CommuteAction {
    /// Checks the candidate's σ on carriers up to --max-size.
    Check { candidate: String },
    /// Searches for σ on each carrier up to --max-size.
    Search { candidate: String },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

/// Everything needed to re-run one failed check.
#[derive(Clone, Debug, Serialize)]
pub struct Replay {
    pub command: String,
    pub subject: String,
    pub law: String,
    pub counterexample: Counterexample,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<LawReport>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub result: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub replay: Vec<Replay>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub timing_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("barrlab {}  {}  (seed {})\n", self.version, self.command, self.seed);
        for r in &self.checks {
            out.push_str(&format!("{}\n", r.subject));
            let width = r.checks.iter().map(|c| c.law.chars().count()).max().unwrap_or(0);
            for c in &r.checks {
                let method = match c.method {
                    Method::Exhaustive => "exhaustive",
                    Method::GenericElement => "generic element",
                    Method::Sampled => "sampled",
                };
                let pad = width - c.law.chars().count();
                out.push_str(&format!(
                    "  {}  {}{}  {:>8} instances  {method}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.law,
                    " ".repeat(pad),
                    c.instances
                ));
                if let Some(ce) = &c.counterexample {
                    let at = ce.carrier_size.map(|n| format!(" at |X| = {n}")).unwrap_or_default();
                    out.push_str(&format!("        counterexample{at}: {}\n", ce.element));
                    out.push_str(&format!("          lhs = {}\n          rhs = {}\n", ce.lhs, ce.rhs));
                }
            }
        }
        if !self.result.is_null() {
            out.push_str("result:\n");
            for line in serde_json::to_string_pretty(&self.result).expect("json").lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error ({}): {}\n", e.kind, e.message));
        }
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Error => "error",
        };
        out.push_str(&format!("status: {status} ({} ms)\n", self.timing_ms));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json() + "\n",
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NonFinitePreserving(_) => "non_finite_preserving",
        Error::BlowUpGuard { .. } => "blow_up_guard",
        Error::DomainMismatch(_) => "domain_mismatch",
        Error::MissingComponent(_) => "missing_component",
        Error::NotAGroup(_) => "not_a_group",
        Error::DepthExceeded { .. } => "depth_exceeded",
        Error::ZeroObjectViolation(_) => "zero_object_violation",
        Error::NotCauchy { .. } => "not_cauchy",
        Error::BoundMismatch(_) => "bound_mismatch",
        Error::NotBiproductCompatible(_) => "not_biproduct_compatible",
        Error::Invalid(_) => "invalid",
        Error::Parse { .. } => "parse",
    }
}

/// Runs one command. Never panics on bad input: errors become a report
/// with status `error`.
pub fn run(config: &RunConfig) -> Report {
    let start = Instant::now();
    let echo = echo(config);
    let outcome = validate(config).and_then(|()| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::invalid(format!("thread pool: {e}")))?;
        pool.install(|| execute(config))
    });
    let mut report = Report {
        tool: "barrlab",
        version: VERSION,
        command: echo.clone(),
        seed: config.seed,
        status: Status::Pass,
        checks: Vec::new(),
        result: serde_json::Value::Null,
        replay: Vec::new(),
        error: None,
        timing_ms: 0,
    };
    match outcome {
        Ok((checks, result)) => {
            for r in &checks {
                for c in r.failures() {
                    if let Some(ce) = &c.counterexample {
                        report.replay.push(Replay {
                            command: echo.clone(),
                            subject: r.subject.clone(),
                            law: c.law.clone(),
                            counterexample: ce.clone(),
                        });
                    }
                }
            }
            if checks.iter().any(|r| !r.passed()) {
                report.status = Status::Fail;
            }
            report.checks = checks;
            report.result = result;
        }
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(ErrorInfo {
                kind: error_kind(&e).to_string(),
                message: e.to_string(),
            });
        }
    }
    report.timing_ms = start.elapsed().as_millis() as u64;
    report
}

fn validate(config: &RunConfig) -> Result<()> {
    if config.max_size == 0 || config.depth == 0 || config.search_cap == 0 || config.probe_depth == Some(0) {
        return Err(Error::invalid("--max-size, --depth, --probe-depth and --search-cap must be positive"));
    }
    Ok(())
}

fn echo(config: &RunConfig) -> String {
    let mut line = command_echo(&config.command);
    line.push_str(&format!(" --max-size {} --depth {}", config.max_size, config.depth));
    if let Some(p) = config.probe_depth {
        line.push_str(&format!(" --probe-depth {p}"));
    }
    line.push_str(&format!(" --search-cap {}", config.search_cap));
    line
}

fn command_echo(c: &Command) -> String {
    match c {
        Command::CheckMonad { monad } => format!("check-monad {monad}"),
        Command::CheckAlgebra { algebra } => format!("check-algebra {algebra}"),
        Command::CheckDistlaw { kind, law } => format!("check-distlaw {} {law}", if *kind == LawKind::Em { "em" } else { "kl" }),
        Command::Lift { law, algebra } => format!("lift {law} --algebra {algebra}"),
        Command::DiffLiftings { first, second, algebra } => match second {
            Some(s) => format!("diff-liftings {first} {s} --algebra {algebra}"),
            None => format!("diff-liftings {first} --algebra {algebra}"),
        },
        Command::Chain { law } => format!("chain {law}"),
        Command::Anamorphism { automaton } => format!("anamorphism {automaton}"),
        Command::Behavior { automaton, state } => format!("behavior {automaton} --state {state}"),
        Command::Distance { first, second } => format!("distance {first} {second}"),
        Command::Limit { sequence } => format!("limit {sequence}"),
        Command::Density { functor, n, samples } => format!("density --functor {functor} --n {n} --samples {samples}"),
        Command::Lemma1 { law } => format!("lemma1 {law}"),
        Command::Lemma2 { law } => format!("lemma2 {law}"),
        Command::Commute { action } => match action {
            CommuteAction::Check { candidate } => format!("commute check {candidate}"),
            CommuteAction::Search { candidate } => format!("commute search {candidate}"),
        },
        Command::Words { alphabet } => format!("words {alphabet}"),
    }
}

/// A JSON file when `arg` names one, otherwise a builtin name.
fn resolve<T: DeserializeOwned>(arg: &str, by_name: impl FnOnce(String) -> T) -> Result<T> {
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        doc::load(Path::new(arg))
    } else {
        Ok(by_name(arg.to_string()))
    }
}

fn file<T: DeserializeOwned>(arg: &str) -> Result<T> {
    doc::load(Path::new(arg))
}

fn monad_arg(arg: &str) -> Result<FinMonad> {
    resolve(arg, MonadDoc::Name)?.build()
}

fn em_arg(arg: &str) -> Result<DistLawEM> {
    resolve(arg, EmLawDoc::Name)?.build()
}

/// `free:<n>`, `scalars`, `terminal`, or an AlgebraDoc file.
fn algebra_form(arg: &str, m: &FinMonad) -> Result<EMAlgebra> {
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        return file::<AlgebraDoc>(arg)?.build(m);
    }
    match arg.split_once(':') {
        Some(("free", n)) => {
            let n = n.parse().map_err(|_| Error::invalid(format!("bad generator count in {arg:?}")))?;
            free_algebra(m, &FinSet::canonical(n))
        }
        None if arg == "scalars" => EMAlgebra::scalars(m),
        None if arg == "terminal" => EMAlgebra::terminal(m),
        _ => Err(Error::invalid(format!("unknown algebra {arg:?}; use free:<n>, scalars, terminal or a file"))),
    }
}

fn table_json(a: &EMAlgebra) -> Result<serde_json::Value> {
    let t = a.table()?;
    Ok(json!({
        "carrier": t.cod().elements().iter().map(|v| t.cod().render(v)).collect::<Vec<_>>(),
        "structure": t.describe().into_iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
    }))
}

fn series_json(s: &TruncatedSeries) -> Result<serde_json::Value> {
    Ok(serde_json::to_value(SeriesDoc::of(s)?).expect("series serialize"))
}

fn dist_json(d: DyadicDist) -> serde_json::Value {
    serde_json::to_value(d).expect("distance serializes")
}

type Outcome = (Vec<LawReport>, serde_json::Value);

fn execute(config: &RunConfig) -> Result<Outcome> {
    let probe = config.probe_depth.unwrap_or(config.depth);
    match &config.command {
        Command::CheckMonad { monad } => {
            let m = monad_arg(monad)?;
            Ok((vec![check_monad_laws(&m, config.max_size)?], serde_json::Value::Null))
        }
        Command::CheckAlgebra { algebra } => {
            let (m, a) = match algebra.rsplit_once('@') {
                Some((form, monad)) => {
                    let m = monad_arg(monad)?;
                    let a = algebra_form(form, &m)?;
                    (m, a)
                }
                None => {
                    let f: AlgebraFile = file(algebra)?;
                    let m = f.monad.build()?;
                    let a = f.algebra.build(&m)?;
                    (m, a)
                }
            };
            Ok((vec![check_em_algebra(&m, &a)?], json!({ "carrier_size": a.carrier().len() })))
        }
        Command::CheckDistlaw { kind: LawKind::Em, law } => {
            let law = em_arg(law)?;
            Ok((vec![check_distlaw_em(&law, config.max_size)?], serde_json::Value::Null))
        }
        Command::CheckDistlaw { kind: LawKind::Kl, law } => {
            let law = resolve(law, KlLawDoc::Name)?.build()?;
            Ok((vec![check_distlaw_kl(&law, config.max_size)?], serde_json::Value::Null))
        }
        Command::Lift { law, algebra } => {
            let law = em_arg(law)?;
            let a = algebra_form(algebra, law.monad())?;
            let lifted = lift_algebra(&law, &a)?;
            let report = check_em_algebra(law.monad(), &lifted)?;
            Ok((vec![report], json!({ "law": law.name(), "lifted": table_json(&lifted)? })))
        }
        Command::DiffLiftings { first, second, algebra } => {
            let (l1, l2) = match (second, first.strip_prefix("gset-")) {
                (None, Some(group)) => (em_arg(&format!("gset-{group}-left"))?, em_arg(&format!("gset-{group}-conj"))?),
                (Some(s), _) => (em_arg(first)?, em_arg(s)?),
                (None, None) => return Err(Error::invalid("diff-liftings needs two laws or gset-<group>")),
            };
            if l1.monad().name() != l2.monad().name() || l1.functor() != l2.functor() {
                return Err(Error::DomainMismatch(format!("{} and {} lift different functors", l1.name(), l2.name())));
            }
            let a = algebra_form(algebra, l1.monad())?;
            let (b1, b2) = (lift_algebra(&l1, &a)?, lift_algebra(&l2, &a)?);
            let witness = diff_liftings(&b1, &b2)?;
            let carrier = b1.carrier().clone();
            Ok((
                Vec::new(),
                json!({
                    "first": l1.name(),
                    "second": l2.name(),
                    "carrier_size": carrier.len(),
                    "liftings_differ": witness.is_some(),
                    "witness": witness.map(|(e, x, y)| json!({
                        "element": e.to_string(),
                        "first": carrier.render(&x),
                        "second": carrier.render(&y),
                    })),
                }),
            ))
        }
        Command::Chain { law } => {
            let law = em_arg(law)?;
            let chain = TerminalChain::lazy(law.functor().clone(), config.depth);
            let sizes: Vec<serde_json::Value> = (0..=config.depth)
                .map(|n| chain.card(n).map_or(json!("overflow"), |c| json!(c.to_string())))
                .collect();
            let zero = law.monad().zero_object_size()?;
            let bang = if zero == 1 {
                Some(build_initial_chain(&law, &chain)?.bang().clone())
            } else {
                None
            };
            Ok((
                Vec::new(),
                json!({
                    "functor": law.functor().to_string(),
                    "monad": law.monad().name(),
                    "level_sizes": sizes,
                    "free_algebra_on_empty_set": zero,
                    "bang": bang,
                }),
            ))
        }
        Command::Anamorphism { automaton } => {
            let aut = file::<AutomatonDoc>(automaton)?.build()?;
            let (h, xi) = aut.coalgebra()?;
            let n = config.depth;
            let mut report = LawReport::new(format!("anamorphism to level {n}"));
            let mut states = Vec::new();
            for (s, x) in aut.states().elements().iter().enumerate() {
                let alpha = unfold(&h, &|v| xi.eval(v), x, n)?;
                let decoded = TruncatedSeries::decode(aut.ring(), aut.alphabet(), n, &alpha)?;
                let expected = behavior(&aut, s, n)?;
                report.record(
                    "cone agrees with word semantics",
                    Method::Exhaustive,
                    1,
                    (decoded != expected)
                        .then(|| Counterexample::new(None, aut.states().render(x), decoded.to_string(), expected.to_string())),
                );
                states.push(json!({ "state": aut.states().render(x), "image": alpha.to_string() }));
            }
            Ok((vec![report], json!({ "level": n, "states": states })))
        }
        Command::Behavior { automaton, state } => {
            let aut = file::<AutomatonDoc>(automaton)?.build()?;
            Ok((Vec::new(), series_json(&behavior(&aut, *state, config.depth)?)?))
        }
        Command::Distance { first, second } => {
            let f = file::<SeriesDoc>(first)?.build()?;
            let g = file::<SeriesDoc>(second)?.build()?;
            let d = series_distance(&f, &g)?;
            Ok((Vec::new(), json!({ "distance": dist_json(d), "display": d.to_string() })))
        }
        Command::Limit { sequence } => {
            let seq: PolySequenceDoc = file(sequence)?;
            let terms = seq.build()?;
            let lim = cauchy_limit_series(&terms, seq.modulus.as_deref(), config.depth)?;
            Ok((Vec::new(), series_json(&lim)?))
        }
        Command::Density { functor, n, samples } => density(config, functor, *n, *samples, probe),
        Command::Lemma1 { law } | Command::Lemma2 { law } => {
            let law = em_arg(law)?;
            let chain = barrlab::chains::build_terminal_chain(law.functor(), config.depth)?;
            let report = match &config.command {
                Command::Lemma1 { .. } => barrlab::chains::check_lemma1(&law, &chain, config.depth)?,
                _ => barrlab::chains::check_lemma2(&law, &chain, config.depth)?,
            };
            Ok((vec![report], serde_json::Value::Null))
        }
        Command::Commute { action } => match action {
            CommuteAction::Check { candidate } => {
                let (c, law) = resolve(candidate, CandidateDoc::Name)?.build()?;
                let report = check_commuting(&c, &law, config.max_size)?;
                let sigma = if report.passed() {
                    let t = c.tabulate(config.max_size)?;
                    match t.sigma {
                        barrlab::compair::Sigma::Explicit { tables } => json!(tables),
                        _ => serde_json::Value::Null,
                    }
                } else {
                    serde_json::Value::Null
                };
                Ok((vec![report], json!({ "candidate": c.name, "sigma": sigma })))
            }
            CommuteAction::Search { candidate } => {
                let (c, law) = resolve(candidate, CandidateDoc::Name)?.build()?;
                let mut report = LawReport::new(format!("search for σ: {}", c.name));
                let mut per_size = Vec::new();
                let outcomes = search_sigma_family(&c, &law, config.max_size, config.search_cap)?;
                for (n, out) in outcomes.into_iter().enumerate() {
                    barrlab::compair::check_cardinality(&mut report, &c, n);
                    let failed = matches!(out, SearchOutcome::Exhausted { .. });
                    report.record(
                        "σ exists",
                        Method::Exhaustive,
                        1,
                        failed.then(|| Counterexample::new(Some(n), format!("|X| = {n}"), "no bijection".into(), "σ".into())),
                    );
                    per_size.push(json!({ "size": n, "outcome": out, "summary": out.to_string() }));
                }
                Ok((vec![report], json!({ "candidate": c.name, "carriers": per_size })))
            }
        },
        Command::Words { alphabet } => {
            let a = match alphabet.parse::<usize>() {
                Ok(k) => barrlab::builtin::alphabet(k)?,
                Err(_) => FinSet::labeled("A", alphabet.split(',').map(str::trim).collect())?,
            };
            let words = words_below(a.len(), config.depth)?;
            Ok((
                Vec::new(),
                json!({ "count": words.len(), "words": words.iter().map(|w| w.render(&a)).collect::<Vec<_>>() }),
            ))
        }
    }
}

fn density(config: &RunConfig, functor: &str, n: usize, samples: usize, probe: usize) -> Result<Outcome> {
    let depth = config.depth;
    if n > depth {
        return Err(Error::DepthExceeded {
            requested: n,
            available: depth,
        });
    }
    let law = em_arg(functor)?;
    let chain = TerminalChain::lazy(law.functor().clone(), depth);
    let initial = build_initial_chain(&law, &chain)?;
    let h = law.functor().clone();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = LawReport::new(format!("density map h_{n} for {}", law.name()));
    let mut points = Vec::new();
    for i in 0..samples {
        let x = LimitPoint::random(&h, depth, &mut rng)?;
        let y = initial.density_map(&x, n)?;
        let (px, py) = (x.rep(n)?, y.rep(n)?);
        report.record(
            &format!("p_{n}(h_{n}(x)) = p_{n}(x)"),
            Method::Sampled,
            1,
            (px != py).then(|| Counterexample::new(None, format!("sample {i}"), py.to_string(), px.to_string())),
        );
        let d = distance(&y, &x, probe.min(depth))?;
        report.record(
            &format!("distance(h_{n}(x), x) ≤ 2^-{n}"),
            Method::Sampled,
            1,
            (!d.within(n)).then(|| Counterexample::new(None, format!("sample {i}"), d.to_string(), format!("2^-{n}"))),
        );
        points.push(json!({
            "x": x.rep(depth)?.to_string(),
            "h_n(x)": y.rep(depth)?.to_string(),
            "p_n": truncate(&h, &x.rep(depth)?, n)?.to_string(),
            "distance": dist_json(d),
        }));
    }
    Ok((vec![report], json!({ "n": n, "depth": depth, "samples": points, "bound": format!("2^-{n}") })))
}

