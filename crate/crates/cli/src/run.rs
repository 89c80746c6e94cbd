//! Command execution. Every command produces a JSON-like record first; the
//! text and CSV renderings are derived from the same data.

use std::fmt::Debug;
use std::time::Instant;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use lagquot_core::error::Error as CoreError;
use lagquot_core::oracle::cache_dir_from_env;
use lagquot_core::suites::{run_suite, SuiteConfig, SuiteReport};
use lagquot_core::{
    Backend, CyclotomicField, Engine, FloatBackend, SchubertExpression, StrictPartition,
};

use crate::args::{
    BackendChoice, Cli, Command, CountArgs, Format, GwArgs, IntersectArgs, TableArgs, VerifyArgs,
};
use crate::parse::{parse_genus_range, parse_partitions, parse_poly, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MATH: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Largest rank accepted on the command line.
pub const MAX_RANK: u32 = 10;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse {
        flag: &'static str,
        input: String,
        error: ParseError,
    },
    Core(CoreError),
    BackendMismatch {
        exact: String,
        float: String,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE",
            CliError::Parse { .. } => "PARSE",
            CliError::Core(e) => e.code(),
            CliError::BackendMismatch { .. } => "BACKEND_MISMATCH",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => EXIT_USAGE,
            CliError::Core(e) if e.is_math_assumption() => EXIT_MATH,
            CliError::Core(CoreError::Io(_) | CoreError::Cache { .. }) => EXIT_IO,
            CliError::Core(_) => EXIT_USAGE,
            CliError::BackendMismatch { .. } => EXIT_VERIFY,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Parse { flag, error, .. } => format!("--{flag}: {error}"),
            CliError::Core(e) => e.to_string(),
            CliError::BackendMismatch { exact, float } => {
                format!("backends disagree: exact {exact}, float {float}")
            }
        }
    }

    /// Multi-line human rendering, with a caret for parse errors.
    pub fn render(&self) -> String {
        let mut out = format!("error[{}]: {}", self.code(), self.message());
        if let CliError::Parse { input, error, .. } = self {
            out.push('\n');
            out.push_str(&error.render(input));
        }
        out
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

/// What the binary prints and how it exits.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// One computation that can run on either backend.
trait Query {
    type Out: PartialEq + Debug;
    fn eval<B: Backend>(&self, engine: &Engine<B>) -> lagquot_core::Result<Self::Out>;
}

struct Engines {
    exact: Option<Engine<CyclotomicField>>,
    float: Option<Engine<FloatBackend>>,
}

impl Engines {
    fn new(choice: BackendChoice, n: u32) -> Self {
        let want_exact = choice != BackendChoice::Float;
        let want_float = choice != BackendChoice::Exact;
        Engines {
            exact: want_exact.then(|| Engine::exact(n)),
            float: want_float.then(|| Engine::float(n)),
        }
    }

    fn run<Q: Query>(&self, q: &Q) -> Result<Q::Out, CliError> {
        match (&self.exact, &self.float) {
            (Some(e), None) => Ok(q.eval(e)?),
            (None, Some(f)) => Ok(q.eval(f)?),
            (Some(e), Some(f)) => {
                let exact = q.eval(e)?;
                match q.eval(f) {
                    Ok(float) if float == exact => Ok(exact),
                    float => Err(CliError::BackendMismatch {
                        exact: format!("{exact:?}"),
                        float: format!("{float:?}"),
                    }),
                }
            }
            (None, None) => unreachable!("at least one backend is selected"),
        }
    }
}

struct GwQuery<'a> {
    g: u32,
    d: i64,
    insertions: &'a [StrictPartition],
}

impl Query for GwQuery<'_> {
    type Out = BigInt;
    fn eval<B: Backend>(&self, engine: &Engine<B>) -> lagquot_core::Result<BigInt> {
        engine.gw_invariant(self.g, self.d, self.insertions)
    }
}

struct CountQuery {
    g: u32,
    ell: i64,
}

impl Query for CountQuery {
    type Out = (i64, BigInt);
    fn eval<B: Backend>(&self, engine: &Engine<B>) -> lagquot_core::Result<(i64, BigInt)> {
        engine
            .maximal_count(self.g, self.ell)
            .map(|c| (c.e, c.value))
    }
}

struct IntersectQuery<'a> {
    g: u32,
    ell: i64,
    e: i64,
    p: &'a SchubertExpression,
}

impl Query for IntersectQuery<'_> {
    type Out = BigInt;
    fn eval<B: Backend>(&self, engine: &Engine<B>) -> lagquot_core::Result<BigInt> {
        engine.intersection_number(self.g, self.ell, self.e, self.p)
    }
}

fn check_rank(n: u32) -> Result<(), CliError> {
    if (1..=MAX_RANK).contains(&n) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--n must be in 1..={MAX_RANK}, got {n}"
        )))
    }
}

/// Counting statements assume `g >= 2`; smaller genera are reported as
/// plain formula values.
const FORMULA_VALUE: &str = "formula value";

fn elapsed_ms(start: Instant) -> Value {
    json!(start.elapsed().as_millis() as u64)
}

/// A finished command: its record, a text rendering, and CSV rows.
struct Report {
    record: Map<String, Value>,
    text: String,
    csv_header: Vec<&'static str>,
    csv_rows: Vec<Vec<String>>,
    code: i32,
    stderr: String,
}

impl Report {
    fn single(record: Map<String, Value>, text: String, columns: &[&'static str]) -> Self {
        let row = columns.iter().map(|c| csv_cell(record.get(*c))).collect();
        Report {
            record,
            text,
            csv_header: columns.to_vec(),
            csv_rows: vec![row],
            code: EXIT_OK,
            stderr: String::new(),
        }
    }
}

fn csv_cell(v: Option<&Value>) -> String {
    let raw = match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    };
    if raw.contains([',', '"', '\n', ';']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

fn record(pairs: Vec<(&str, Value)>) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn cmd_gw(a: &GwArgs, backend: BackendChoice) -> Result<Report, CliError> {
    check_rank(a.n)?;
    let insertions = parse_partitions(&a.partitions, a.n).map_err(|error| CliError::Parse {
        flag: "partitions",
        input: a.partitions.clone(),
        error,
    })?;
    let start = Instant::now();
    let value = Engines::new(backend, a.n).run(&GwQuery {
        g: a.genus,
        d: a.degree,
        insertions: &insertions,
    })?;
    let classes: Vec<String> = insertions.iter().map(|l| format!("sigma{l}")).collect();
    let text = format!(
        "<{}>_{{g={},d={}}} on LG({}) = {value}\n",
        classes.join(", "),
        a.genus,
        a.degree,
        a.n
    );
    let rec = record(vec![
        ("command", json!("gw")),
        ("n", json!(a.n)),
        ("genus", json!(a.genus)),
        ("degree", json!(a.degree)),
        ("partitions", json!(a.partitions)),
        ("backend", json!(backend.name())),
        ("value", json!(value.to_string())),
        ("elapsed_ms", elapsed_ms(start)),
    ]);
    Ok(Report::single(
        rec,
        text,
        &["n", "genus", "degree", "partitions", "backend", "value"],
    ))
}

fn cmd_count(a: &CountArgs, backend: BackendChoice) -> Result<Report, CliError> {
    check_rank(a.n)?;
    let start = Instant::now();
    let (e, value) = Engines::new(backend, a.n).run(&CountQuery {
        g: a.genus,
        ell: a.ell,
    })?;
    let mut text = format!(
        "N(g={}, n={}, l={}, e={e}) = {value}\n",
        a.genus, a.n, a.ell
    );
    let mut pairs = vec![
        ("command", json!("count")),
        ("n", json!(a.n)),
        ("genus", json!(a.genus)),
        ("ell", json!(a.ell)),
        ("backend", json!(backend.name())),
        ("e", json!(e)),
        ("value", json!(value.to_string())),
    ];
    if a.genus <= 1 {
        pairs.push(("label", json!(FORMULA_VALUE)));
        text.push_str("(formula value; the counting statement assumes g >= 2)\n");
    }
    pairs.push(("elapsed_ms", elapsed_ms(start)));
    Ok(Report::single(
        record(pairs),
        text,
        &["n", "genus", "ell", "e", "backend", "value"],
    ))
}

fn cmd_intersect(a: &IntersectArgs, backend: BackendChoice) -> Result<Report, CliError> {
    check_rank(a.n)?;
    let p = parse_poly(&a.poly, a.n).map_err(|error| CliError::Parse {
        flag: "poly",
        input: a.poly.clone(),
        error,
    })?;
    let start = Instant::now();
    let value = Engines::new(backend, a.n).run(&IntersectQuery {
        g: a.genus,
        ell: a.ell,
        e: a.e,
        p: &p,
    })?;
    let mut text = format!(
        "N~(g={}, n={}, l={}, e={}; P = {p}) = {value}\n",
        a.genus, a.n, a.ell, a.e
    );
    let mut pairs = vec![
        ("command", json!("intersect")),
        ("n", json!(a.n)),
        ("genus", json!(a.genus)),
        ("ell", json!(a.ell)),
        ("e", json!(a.e)),
        ("poly", json!(a.poly)),
        ("backend", json!(backend.name())),
        ("value", json!(value.to_string())),
    ];
    if a.genus <= 1 {
        pairs.push(("label", json!(FORMULA_VALUE)));
        text.push_str("(formula value; the counting statement assumes g >= 2)\n");
    }
    pairs.push(("elapsed_ms", elapsed_ms(start)));
    Ok(Report::single(
        record(pairs),
        text,
        &["n", "genus", "ell", "e", "poly", "backend", "value"],
    ))
}

fn cmd_table(a: &TableArgs, backend: BackendChoice) -> Result<Report, CliError> {
    check_rank(a.n)?;
    let range = parse_genus_range(&a.genus_range).map_err(CliError::Usage)?;
    let start = Instant::now();
    let engines = Engines::new(backend, a.n);
    let mut rows = Vec::new();
    let mut csv_rows = Vec::new();
    let mut text = format!("{:>4} {:>4} {:>4} {:>6}  {}\n", "n", "g", "l", "e", "N");
    for g in range {
        let mut row = Map::new();
        row.insert("n".into(), json!(a.n));
        row.insert("g".into(), json!(g));
        row.insert("ell".into(), json!(a.ell));
        let label = if g <= 1 { FORMULA_VALUE } else { "" };
        match engines.run(&CountQuery { g, ell: a.ell }) {
            Ok((e, value)) => {
                text.push_str(&format!("{:>4} {g:>4} {:>4} {e:>6}  {value}", a.n, a.ell));
                row.insert("e".into(), json!(e));
                row.insert("N".into(), json!(value.to_string()));
                csv_rows.push(vec![
                    a.n.to_string(),
                    g.to_string(),
                    a.ell.to_string(),
                    e.to_string(),
                    value.to_string(),
                    label.into(),
                    String::new(),
                ]);
            }
            Err(CliError::Core(err @ CoreError::Parity { .. })) => {
                text.push_str(&format!("{:>4} {g:>4} {:>4} {:>6}  -", a.n, a.ell, "-"));
                row.insert("e".into(), Value::Null);
                row.insert("N".into(), Value::Null);
                row.insert("error".into(), json!(err.code()));
                csv_rows.push(vec![
                    a.n.to_string(),
                    g.to_string(),
                    a.ell.to_string(),
                    String::new(),
                    String::new(),
                    label.into(),
                    err.code().into(),
                ]);
            }
            Err(other) => return Err(other),
        }
        if !label.is_empty() {
            row.insert("label".into(), json!(label));
            text.push_str("  (formula value)");
        }
        text.push('\n');
        rows.push(Value::Object(row));
    }
    let rec = record(vec![
        ("command", json!("table")),
        ("n", json!(a.n)),
        ("genus_range", json!(a.genus_range)),
        ("ell", json!(a.ell)),
        ("backend", json!(backend.name())),
        ("rows", Value::Array(rows)),
        ("elapsed_ms", elapsed_ms(start)),
    ]);
    Ok(Report {
        record: rec,
        text,
        csv_header: vec!["n", "g", "ell", "e", "N", "label", "error"],
        csv_rows,
        code: EXIT_OK,
        stderr: String::new(),
    })
}

fn suite_json(r: &SuiteReport) -> Value {
    let failed = r.failures().count();
    let cases: Vec<Value> = r
        .cases
        .iter()
        .map(|c| {
            let mut m = Map::new();
            m.insert("case".into(), json!(c.description));
            m.insert("passed".into(), json!(c.passed));
            if let Some(d) = &c.detail {
                m.insert("detail".into(), json!(d));
            }
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("name".into(), json!(r.name));
    m.insert("passed".into(), json!(r.cases.len() - failed));
    m.insert("failed".into(), json!(failed));
    m.insert("cases".into(), Value::Array(cases));
    Value::Object(m)
}

fn cmd_verify(a: &VerifyArgs) -> Result<Report, CliError> {
    if !(1..=MAX_RANK).contains(&a.max_n) {
        return Err(CliError::Usage(format!(
            "--max-n must be in 1..={MAX_RANK}"
        )));
    }
    if a.cases == 0 {
        return Err(CliError::Usage("--cases must be positive".into()));
    }
    let config = SuiteConfig {
        max_n: a.max_n,
        max_genus: a.max_genus,
        seed: a.seed,
        cases: a.cases,
        cache_dir: cache_dir_from_env(),
    };
    let start = Instant::now();
    let reports = run_suite(&a.suite, &config)?;
    let all_passed = reports.iter().all(SuiteReport::passed);
    let mut text = String::new();
    let mut csv_rows = Vec::new();
    for r in &reports {
        let failed = r.failures().count();
        let status = if failed == 0 { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "[{status}] {}: {}/{} cases\n",
            r.name,
            r.cases.len() - failed,
            r.cases.len()
        ));
        for f in r.failures() {
            text.push_str(&format!(
                "    failed: {} ({})\n",
                f.description,
                f.detail.as_deref().unwrap_or("")
            ));
        }
        for c in &r.cases {
            csv_rows.push(vec![
                r.name.clone(),
                csv_cell(Some(&json!(c.description))),
                c.passed.to_string(),
                csv_cell(c.detail.as_ref().map(|d| json!(d)).as_ref()),
            ]);
        }
    }
    text.push_str(if all_passed {
        "all suites passed\n"
    } else {
        "verification FAILED\n"
    });
    // timing stays out of stdout so seeded runs are byte-reproducible
    let stderr = format!("verify finished in {} ms\n", start.elapsed().as_millis());
    let rec = record(vec![
        ("command", json!("verify")),
        ("suite", json!(a.suite)),
        ("max_n", json!(a.max_n)),
        ("max_genus", json!(a.max_genus)),
        ("seed", json!(a.seed.to_string())),
        ("cases", json!(a.cases)),
        ("passed", json!(all_passed)),
        (
            "suites",
            Value::Array(reports.iter().map(suite_json).collect()),
        ),
    ]);
    Ok(Report {
        record: rec,
        text,
        csv_header: vec!["suite", "case", "passed", "detail"],
        csv_rows,
        code: if all_passed { EXIT_OK } else { EXIT_VERIFY },
        stderr,
    })
}

/// The echo of the query parameters, used when a command fails.
fn echo(cli: &Cli) -> Map<String, Value> {
    let b = json!(cli.backend.name());
    match &cli.command {
        Command::Gw(a) => record(vec![
            ("command", json!("gw")),
            ("n", json!(a.n)),
            ("genus", json!(a.genus)),
            ("degree", json!(a.degree)),
            ("partitions", json!(a.partitions)),
            ("backend", b),
        ]),
        Command::Count(a) => record(vec![
            ("command", json!("count")),
            ("n", json!(a.n)),
            ("genus", json!(a.genus)),
            ("ell", json!(a.ell)),
            ("backend", b),
        ]),
        Command::Intersect(a) => record(vec![
            ("command", json!("intersect")),
            ("n", json!(a.n)),
            ("genus", json!(a.genus)),
            ("ell", json!(a.ell)),
            ("e", json!(a.e)),
            ("poly", json!(a.poly)),
            ("backend", b),
        ]),
        Command::Table(a) => record(vec![
            ("command", json!("table")),
            ("n", json!(a.n)),
            ("genus_range", json!(a.genus_range)),
            ("ell", json!(a.ell)),
            ("backend", b),
        ]),
        Command::Verify(a) => record(vec![
            ("command", json!("verify")),
            ("suite", json!(a.suite)),
            ("max_n", json!(a.max_n)),
            ("max_genus", json!(a.max_genus)),
            ("seed", json!(a.seed.to_string())),
            ("cases", json!(a.cases)),
        ]),
    }
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Executes a parsed command line.
pub fn run(cli: &Cli) -> Output {
    let result = match &cli.command {
        Command::Gw(a) => cmd_gw(a, cli.backend),
        Command::Count(a) => cmd_count(a, cli.backend),
        Command::Intersect(a) => cmd_intersect(a, cli.backend),
        Command::Table(a) => cmd_table(a, cli.backend),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Text => report.text,
                Format::Json => format!("{}\n", Value::Object(report.record)),
                Format::Csv => render_csv(&report.csv_header, &report.csv_rows),
            };
            Output {
                stdout,
                stderr: report.stderr,
                code: report.code,
            }
        }
        Err(err) => {
            let stdout = match cli.format {
                Format::Json => {
                    let mut rec = echo(cli);
                    rec.insert(
                        "error".into(),
                        json!({ "code": err.code(), "message": err.message() }),
                    );
                    format!("{}\n", Value::Object(rec))
                }
                Format::Text | Format::Csv => String::new(),
            };
            Output {
                stdout,
                stderr: format!("{}\n", err.render()),
                code: err.exit_code(),
            }
        }
    }
}
