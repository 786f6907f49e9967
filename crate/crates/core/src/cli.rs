//! Command-line front end for the `menger` binary.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad arguments
//! or unparsable input, 3 unknown vertex, 4 adjacent terminals.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::connectivity::{enumerate_minimum_separators, kappa_bruteforce, kappa_flow, Connectivity};
use crate::disjoint_paths::{menger_paths, mu_bruteforce, mu_flow, PathSystem};
use crate::edgelist::LabeledGraph;
use crate::error::Error;
use crate::graph::TerminalPair;
use crate::harness::{
    counterexample_text, run_check, run_suite, select_pairs, write_counterexamples,
    CounterexampleHeader, CheckName, EngineConfig, GraphSource, PairSelection, SuiteOptions,
    SuiteSummary, Verdict,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_UNKNOWN_VERTEX: i32 = 3;
pub const EXIT_ADJACENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "menger", about = "Vertex connectivity, separators and disjoint paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Local connectivity kappa(u, v)
    Kappa(QueryArgs),
    /// Maximum number of internally disjoint u-v paths
    Mu(QueryArgs),
    /// A maximum system of internally disjoint u-v paths
    Paths(QueryArgs),
    /// All minimum u-v separators and the edges inside them
    Separators(QueryArgs),
    /// Run verification checks over a graph file or a generated corpus
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Flow,
    Brute,
    Recursive,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Flow => "flow",
            Method::Brute => "brute",
            Method::Recursive => "recursive",
        }
    }
}

#[derive(Debug, Args)]
struct QueryArgs {
    /// Edge-list file; standard input when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
    #[arg(long, value_enum)]
    method: Option<Method>,
    /// Maximum number of separators to list
    #[arg(long, default_value_t = crate::connectivity::DEFAULT_SEPARATOR_LIMIT)]
    limit: usize,
    /// Emit JSON instead of key-value text
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Check a single edge-list file (a counterexample header selects check and pair)
    #[arg(long, conflicts_with_all = ["exhaustive_n", "random"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "target")]
    source: Option<String>,
    #[arg(long, requires = "source")]
    target: Option<String>,
    /// Every labelled graph on N vertices
    #[arg(long, value_name = "N")]
    exhaustive_n: Option<usize>,
    /// COUNT graphs from G(N, P) seeded with SEED
    #[arg(long, num_args = 4, value_names = ["N", "P", "COUNT", "SEED"])]
    random: Option<Vec<String>>,
    /// Comma-separated subset of lemma1,theorem1,contraction,menger,menger-flow
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<String>>,
    /// Sample this many non-adjacent pairs per graph instead of all
    #[arg(long)]
    pairs_per_graph: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Directory for counterexample files
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace the flow kappa engine with a deliberately off-by-one one
    #[arg(long, hide = true)]
    inject_bug: bool,
    #[arg(long)]
    json: bool,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    match cli.command {
        Command::Kappa(q) => query(&q, "kappa", cmd_kappa),
        Command::Mu(q) => query(&q, "mu", |doc, pair, q| cmd_paths(doc, pair, q, false)),
        Command::Paths(q) => query(&q, "paths", |doc, pair, q| cmd_paths(doc, pair, q, true)),
        Command::Separators(q) => query(&q, "separators", cmd_separators),
        Command::Verify(v) => cmd_verify(&v),
    }
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Outcome> {
    match path {
        Some(p) => fs::read_to_string(p)
            .map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", p.display()))),
        None => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Outcome::error(EXIT_PARSE, format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn load(path: Option<&PathBuf>) -> Result<(LabeledGraph, String), Outcome> {
    let text = read_input(path)?;
    let doc = LabeledGraph::parse(&text).map_err(|e| Outcome::error(EXIT_PARSE, e))?;
    Ok((doc, text))
}

fn resolve_pair(doc: &LabeledGraph, source: &str, target: &str) -> Result<TerminalPair, Outcome> {
    let lookup = |t: &str| {
        doc.vertex(t)
            .ok_or_else(|| Outcome::error(EXIT_UNKNOWN_VERTEX, format!("unknown vertex '{t}'")))
    };
    let (u, v) = (lookup(source)?, lookup(target)?);
    TerminalPair::new(&doc.graph, u, v).map_err(|e| Outcome::error(EXIT_PARSE, e))
}

/// Adjacent terminals have no finite separator or path system.
fn require_non_adjacent(doc: &LabeledGraph, pair: TerminalPair) -> Result<(), Outcome> {
    if pair.adjacent_in(&doc.graph) {
        let (u, v) = (doc.token(pair.u), doc.token(pair.v));
        return Err(Outcome::error(
            EXIT_ADJACENT,
            format!("terminals '{u}' and '{v}' are adjacent"),
        ));
    }
    Ok(())
}

fn engine_error(e: Error) -> Outcome {
    match e {
        Error::AdjacentTerminals(..) => Outcome::error(EXIT_ADJACENT, e),
        Error::UnknownVertex(_) => Outcome::error(EXIT_UNKNOWN_VERTEX, e),
        other => Outcome::error(EXIT_PARSE, other),
    }
}

fn query<F>(q: &QueryArgs, name: &str, body: F) -> Outcome
where
    F: Fn(&LabeledGraph, TerminalPair, &QueryArgs) -> Result<Map<String, Value>, Outcome>,
{
    let result = load(q.input.as_ref()).and_then(|(doc, _)| {
        let pair = resolve_pair(&doc, &q.source, &q.target)?;
        let mut fields = Map::new();
        fields.insert("command".into(), json!(name));
        fields.insert("source".into(), json!(q.source));
        fields.insert("target".into(), json!(q.target));
        fields.extend(body(&doc, pair, q)?);
        Ok(fields)
    });
    match result {
        Ok(fields) => Outcome::ok(render(&Value::Object(fields), q.json)),
        Err(outcome) => outcome,
    }
}

fn cmd_kappa(doc: &LabeledGraph, pair: TerminalPair, q: &QueryArgs) -> Result<Map<String, Value>, Outcome> {
    let method = q.method.unwrap_or(Method::Flow);
    let kappa = match method {
        Method::Flow => kappa_flow(&doc.graph, pair),
        Method::Brute => kappa_bruteforce(&doc.graph, pair),
        Method::Recursive => {
            return Err(Outcome::error(EXIT_PARSE, "kappa supports --method flow|brute"))
        }
    }
    .map_err(engine_error)?;
    let mut out = Map::new();
    out.insert("method".into(), json!(method.name()));
    out.insert(
        "kappa".into(),
        match kappa {
            Connectivity::Finite(k) => json!(k),
            Connectivity::Unbounded => json!("unbounded"),
        },
    );
    Ok(out)
}

fn path_tokens(doc: &LabeledGraph, system: &PathSystem) -> Value {
    Value::Array(
        system
            .paths
            .iter()
            .map(|p| json!(p.vertices().iter().map(|&w| doc.token(w)).collect::<Vec<_>>()))
            .collect(),
    )
}

fn cmd_paths(
    doc: &LabeledGraph,
    pair: TerminalPair,
    q: &QueryArgs,
    with_paths: bool,
) -> Result<Map<String, Value>, Outcome> {
    require_non_adjacent(doc, pair)?;
    let method = q.method.unwrap_or(Method::Flow);
    let mut out = Map::new();
    out.insert("method".into(), json!(method.name()));
    let system = match method {
        Method::Flow => mu_flow(&doc.graph, pair),
        Method::Recursive => menger_paths(&doc.graph, pair),
        Method::Brute if !with_paths => {
            let mu = mu_bruteforce(&doc.graph, pair).map_err(engine_error)?;
            out.insert("mu".into(), json!(mu));
            return Ok(out);
        }
        Method::Brute => {
            return Err(Outcome::error(EXIT_PARSE, "paths supports --method flow|recursive"))
        }
    }
    .map_err(engine_error)?;
    out.insert("mu".into(), json!(system.len()));
    if with_paths {
        out.insert("paths".into(), path_tokens(doc, &system));
    }
    Ok(out)
}

fn cmd_separators(
    doc: &LabeledGraph,
    pair: TerminalPair,
    q: &QueryArgs,
) -> Result<Map<String, Value>, Outcome> {
    require_non_adjacent(doc, pair)?;
    let listing = enumerate_minimum_separators(&doc.graph, pair, q.limit).map_err(engine_error)?;
    let separators: Vec<Value> = listing
        .separators
        .iter()
        .map(|s| {
            let mut members: Vec<&str> = s.separator.members.iter().map(|&w| doc.token(w)).collect();
            members.sort_unstable();
            let mut induced: Vec<[&str; 2]> = s
                .induced
                .iter()
                .map(|&e| {
                    let (a, b) = doc.edge_tokens(e);
                    if a <= b {
                        [a, b]
                    } else {
                        [b, a]
                    }
                })
                .collect();
            induced.sort_unstable();
            json!({ "members": members, "induced": induced })
        })
        .collect();
    let mut out = Map::new();
    out.insert("kappa".into(), json!(listing.kappa));
    out.insert("count".into(), json!(separators.len()));
    out.insert("truncated".into(), json!(listing.truncated));
    out.insert("separators".into(), Value::Array(separators));
    Ok(out)
}

fn parse_checks(names: Option<&Vec<String>>) -> Result<Vec<CheckName>, Outcome> {
    match names {
        None => Ok(CheckName::ALL.to_vec()),
        Some(list) => list
            .iter()
            .map(|s| s.trim().parse().map_err(|e| Outcome::error(EXIT_PARSE, e)))
            .collect(),
    }
}

fn parse_random(raw: &[String]) -> Result<GraphSource, Outcome> {
    let bad = |what: &str| Outcome::error(EXIT_PARSE, format!("--random: bad {what}"));
    let n = raw[0].parse().map_err(|_| bad("N"))?;
    let p: f64 = raw[1].parse().map_err(|_| bad("P"))?;
    if !(0.0..=1.0).contains(&p) {
        return Err(bad("P (must lie in [0, 1])"));
    }
    let count = raw[2].parse().map_err(|_| bad("COUNT"))?;
    let seed = raw[3].parse().map_err(|_| bad("SEED"))?;
    Ok(GraphSource::Random { n, p, count, seed })
}

fn summary_fields(summary: &SuiteSummary, checks: &[CheckName]) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("graphs".into(), json!(summary.graphs));
    out.insert("instances".into(), json!(summary.instances));
    let mut results = Map::new();
    for &check in checks {
        let t = summary.tally(check);
        results.insert(
            check.as_str().into(),
            json!({ "pass": t.pass, "fail": t.fail, "not_applicable": t.not_applicable }),
        );
    }
    out.insert("results".into(), Value::Object(results));
    out.insert("failures".into(), json!(summary.failures()));
    out
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    match verify(args) {
        Ok(outcome) | Err(outcome) => outcome,
    }
}

fn verify(args: &VerifyArgs) -> Result<Outcome, Outcome> {
    let engines = EngineConfig {
        inject_kappa_bug: args.inject_bug,
    };
    let mut fields = Map::new();
    fields.insert("command".into(), json!("verify"));

    if args.input.is_some() {
        return verify_file(args, engines, fields);
    }

    let mut sources = Vec::new();
    if let Some(n) = args.exhaustive_n {
        sources.push(GraphSource::Exhaustive { n });
    }
    if let Some(raw) = &args.random {
        sources.push(parse_random(raw)?);
    }
    if sources.is_empty() {
        return Err(Outcome::error(
            EXIT_PARSE,
            "verify needs --input, --exhaustive-n or --random",
        ));
    }
    let checks = parse_checks(args.checks.as_ref())?;
    let seed = sources
        .iter()
        .find_map(|s| match s {
            GraphSource::Random { seed, .. } => Some(*seed),
            GraphSource::Exhaustive { .. } => None,
        })
        .unwrap_or(0);
    let options = SuiteOptions {
        jobs: args.jobs,
        pairs: args
            .pairs_per_graph
            .map_or(PairSelection::All, |per_graph| PairSelection::Sample { per_graph, seed }),
        engines,
    };
    let outcome = run_suite(&sources, &checks, options).map_err(|e| Outcome::error(EXIT_PARSE, e))?;

    fields.insert(
        "sources".into(),
        json!(sources.iter().map(ToString::to_string).collect::<Vec<_>>()),
    );
    fields.insert(
        "checks".into(),
        json!(checks.iter().map(|c| c.as_str()).collect::<Vec<_>>()),
    );
    fields.extend(summary_fields(&outcome.summary, &checks));
    if let Some(dir) = &args.out {
        let written = write_counterexamples(&outcome, dir)
            .map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", dir.display())))?;
        fields.insert(
            "counterexamples".into(),
            json!(written.iter().map(|p| p.display().to_string()).collect::<Vec<_>>()),
        );
    }
    let code = if outcome.passed() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome {
        code,
        stdout: render(&Value::Object(fields), args.json),
        stderr: String::new(),
    })
}

fn verify_file(
    args: &VerifyArgs,
    engines: EngineConfig,
    mut fields: Map<String, Value>,
) -> Result<Outcome, Outcome> {
    let (doc, text) = load(args.input.as_ref())?;
    let header = CounterexampleHeader::find(&text);

    let checks = match (&args.checks, &header) {
        (None, Some(h)) => vec![h.check],
        (names, _) => parse_checks(names.as_ref())?,
    };
    let pairs = match (&args.source, &args.target, &header) {
        (Some(s), Some(t), _) => vec![resolve_pair(&doc, s, t)?],
        (_, _, Some(h)) => vec![resolve_pair(&doc, &h.u, &h.v)?],
        _ => select_pairs(&doc.graph, PairSelection::All, 0),
    };

    let mut summary = SuiteSummary {
        graphs: 1,
        ..SuiteSummary::default()
    };
    let mut failures = Vec::new();
    for &check in &checks {
        summary.per_check.entry(check).or_default();
    }
    for &pair in &pairs {
        require_non_adjacent(&doc, pair)?;
        summary.instances += 1;
        for &check in &checks {
            let report = run_check(check, &doc.graph, pair, engines).map_err(engine_error)?;
            let tally = summary.per_check.entry(check).or_default();
            match &report.verdict {
                Verdict::Pass => tally.pass += 1,
                Verdict::Fail(_) => tally.fail += 1,
                Verdict::NotApplicable(_) => tally.not_applicable += 1,
            }
            if report.verdict.is_fail() {
                failures.push(report);
            }
        }
    }

    fields.insert(
        "input".into(),
        json!(args.input.as_ref().map(|p| p.display().to_string())),
    );
    fields.insert(
        "checks".into(),
        json!(checks.iter().map(|c| c.as_str()).collect::<Vec<_>>()),
    );
    fields.extend(summary_fields(&summary, &checks));
    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", dir.display())))?;
        let mut written = Vec::new();
        for (k, report) in failures.iter().enumerate() {
            let path = dir.join(format!("cex-{k:04}-{}.txt", report.check));
            fs::write(&path, counterexample_text(report, Some(&doc)))
                .map_err(|e| Outcome::error(EXIT_PARSE, format!("{}: {e}", path.display())))?;
            written.push(path.display().to_string());
        }
        fields.insert("counterexamples".into(), json!(written));
    }
    let code = if failures.is_empty() { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok(Outcome {
        code,
        stdout: render(&Value::Object(fields), args.json),
        stderr: String::new(),
    })
}

/// Pretty JSON, or flattened `key: value` lines.
///
/// In the text form arrays of scalars are space-separated on one line;
/// nested arrays and objects expand to `key[i]` and `key.field` entries.
pub fn render(value: &Value, as_json: bool) -> String {
    if as_json {
        let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
        s.push('\n');
        return s;
    }
    let mut out = String::new();
    flatten("", value, &mut out);
    out
}

fn scalar(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(_) | Value::Object(_) => None,
    }
}

fn flatten(key: &str, value: &Value, out: &mut String) {
    let line = |out: &mut String, text: &str| {
        if text.is_empty() {
            let _ = writeln!(out, "{key}:");
        } else {
            let _ = writeln!(out, "{key}: {text}");
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let child = if key.is_empty() { k.clone() } else { format!("{key}.{k}") };
                flatten(&child, v, out);
            }
        }
        Value::Array(items) => {
            let scalars: Option<Vec<String>> = items.iter().map(scalar).collect();
            match scalars {
                Some(parts) => line(out, &parts.join(" ")),
                None => {
                    let _ = writeln!(out, "{key}.len: {}", items.len());
                    for (i, item) in items.iter().enumerate() {
                        flatten(&format!("{key}[{i}]"), item, out);
                    }
                }
            }
        }
        other => line(out, &scalar(other).expect("scalar")),
    }
}
