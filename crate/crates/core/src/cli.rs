//! Command-line front end: target-spec grammar, dispatch, and text / JSON /
//! CSV rendering.
//!
//! Exit codes are part of the contract: 0 on success, 2 on input or parse
//! errors, 3 on evaluation errors.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::closed_forms::DiscrepancyReport;
use crate::counts::{self, CountResult, Route, SingClass};
use crate::polyring::{Coeff, PolyOf};
use crate::targets::{load_table, make_generic, make_pm, make_product, ChernTarget, Degree};
use crate::verify::run_suite;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_EVAL: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad spec grammar, unreadable files: exit 2.
    Input(String),
    /// The engine rejected the computation: exit 3.
    Eval(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Eval(m) => write!(f, "evaluation error: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Eval(_) => EXIT_EVAL,
        }
    }
}

/// One degree slot in a target spec: a number, a symbol, or (for `table`
/// batches) an inclusive range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeSpec {
    Num(i64),
    Symbol(String),
    Range(i64, i64),
}

impl fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSpec::Num(n) => write!(f, "{n}"),
            DegreeSpec::Symbol(s) => write!(f, "{s}"),
            DegreeSpec::Range(a, b) => write!(f, "{a}..{b}"),
        }
    }
}

/// Parsed form of the `--target` grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    Pm { m: u32, d: DegreeSpec },
    Product { factors: Vec<(u32, DegreeSpec)> },
    Table { file: PathBuf },
    Generic { m: u32 },
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::Pm { m, d } => write!(f, "pm(m={m},d={d})"),
            TargetSpec::Product { factors } => {
                write!(f, "product(")?;
                for (i, (m, d)) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "(m={m},d={d})")?;
                }
                write!(f, ")")
            }
            TargetSpec::Table { file } => write!(f, "table(file={})", file.display()),
            TargetSpec::Generic { m } => write!(f, "generic(m={m})"),
        }
    }
}

impl std::str::FromStr for TargetSpec {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        parse_target_spec(s)
    }
}

fn parse_target_spec(input: &str) -> Result<TargetSpec, CliError> {
    let err = |m: String| CliError::Input(format!("in target `{input}`: {m}"));
    let s = input.trim();
    let (head, rest) = s
        .split_once('(')
        .ok_or_else(|| err("expected `kind(...)`".into()))?;
    let body = rest
        .strip_suffix(')')
        .ok_or_else(|| err("missing closing parenthesis".into()))?;
    match head.trim() {
        "pm" => {
            let kv = parse_kv(body).map_err(err)?;
            let m = get_int(&kv, "m").map_err(err)?;
            let d = get_degree(&kv, "d").map_err(err)?;
            expect_keys(&kv, &["m", "d"]).map_err(err)?;
            Ok(TargetSpec::Pm { m, d })
        }
        "product" => {
            let mut factors = Vec::new();
            for group in split_groups(body).map_err(err)? {
                let kv = parse_kv(&group).map_err(err)?;
                let m = get_int(&kv, "m").map_err(err)?;
                let d = get_degree(&kv, "d").map_err(err)?;
                expect_keys(&kv, &["m", "d"]).map_err(err)?;
                factors.push((m, d));
            }
            if factors.is_empty() {
                return Err(err("product needs at least one factor".into()));
            }
            Ok(TargetSpec::Product { factors })
        }
        "table" => {
            let kv = parse_kv(body).map_err(err)?;
            let file = kv
                .get("file")
                .ok_or_else(|| err("missing `file=`".into()))?;
            expect_keys(&kv, &["file"]).map_err(err)?;
            Ok(TargetSpec::Table {
                file: PathBuf::from(file),
            })
        }
        "generic" => {
            let kv = parse_kv(body).map_err(err)?;
            let m = get_int(&kv, "m").map_err(err)?;
            expect_keys(&kv, &["m"]).map_err(err)?;
            Ok(TargetSpec::Generic { m })
        }
        other => Err(err(format!("unknown target kind `{other}`"))),
    }
}

fn parse_kv(body: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for part in body.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected `key=value`, got `{part}`"))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn expect_keys(kv: &BTreeMap<String, String>, allowed: &[&str]) -> Result<(), String> {
    for k in kv.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(format!("unexpected key `{k}`"));
        }
    }
    Ok(())
}

fn get_int(kv: &BTreeMap<String, String>, key: &str) -> Result<u32, String> {
    kv.get(key)
        .ok_or_else(|| format!("missing `{key}=`"))?
        .parse()
        .map_err(|_| format!("`{key}` must be a positive integer"))
}

fn get_degree(kv: &BTreeMap<String, String>, key: &str) -> Result<DegreeSpec, String> {
    let v = kv.get(key).ok_or_else(|| format!("missing `{key}=`"))?;
    if let Some((a, b)) = v.split_once("..") {
        let a = a.trim().parse().map_err(|_| format!("bad range in `{key}`"))?;
        let b = b.trim().parse().map_err(|_| format!("bad range in `{key}`"))?;
        if b < a {
            return Err(format!("empty range in `{key}`"));
        }
        return Ok(DegreeSpec::Range(a, b));
    }
    if let Ok(n) = v.parse::<i64>() {
        return Ok(DegreeSpec::Num(n));
    }
    if v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
    {
        return Ok(DegreeSpec::Symbol(v.clone()));
    }
    Err(format!("`{key}` must be an integer, a symbol or `a..b`"))
}

// splits "(...),(...)" into the parenthesized groups
fn split_groups(body: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in body.chars() {
        match c {
            '(' => {
                depth += 1;
                if depth > 1 {
                    current.push(c);
                }
            }
            ')' => {
                if depth == 0 {
                    return Err("unbalanced parentheses".into());
                }
                depth -= 1;
                if depth == 0 {
                    out.push(std::mem::take(&mut current));
                } else {
                    current.push(c);
                }
            }
            ',' if depth == 0 => {}
            _ if depth == 0 && !c.is_whitespace() => {
                return Err(format!("unexpected `{c}` between factors"));
            }
            _ => current.push(c),
        }
    }
    if depth != 0 {
        return Err("unbalanced parentheses".into());
    }
    Ok(out)
}

impl TargetSpec {
    fn degree_to_exact(d: &DegreeSpec) -> Result<Degree<BigInt>, CliError> {
        match d {
            DegreeSpec::Num(n) => Ok(Degree::Num(BigInt::from(*n))),
            DegreeSpec::Symbol(s) => Ok(Degree::Symbol(s.clone())),
            DegreeSpec::Range(_, _) => Err(CliError::Input(
                "degree ranges are only valid with the `table` command".into(),
            )),
        }
    }

    /// Builds the evaluator; ranges are rejected here.
    pub fn to_target(&self) -> Result<ChernTarget<BigInt>, CliError> {
        match self {
            TargetSpec::Pm { m, d } => {
                if *m < 1 {
                    return Err(CliError::Input("pm needs m >= 1".into()));
                }
                Ok(make_pm(*m, Self::degree_to_exact(d)?))
            }
            TargetSpec::Product { factors } => {
                let fs = factors
                    .iter()
                    .map(|(m, d)| Ok((*m, Self::degree_to_exact(d)?)))
                    .collect::<Result<Vec<_>, CliError>>()?;
                Ok(make_product(fs))
            }
            TargetSpec::Table { file } => {
                load_table(file).map_err(|e| CliError::Input(e.to_string()))
            }
            TargetSpec::Generic { m } => {
                if *m < 1 {
                    return Err(CliError::Input("generic needs m >= 1".into()));
                }
                Ok(make_generic(*m))
            }
        }
    }

    /// All concrete instantiations of the range slots, with the degree
    /// values that produced each one.
    pub fn grid(&self) -> Result<Vec<(Vec<i64>, TargetSpec)>, CliError> {
        fn expand(d: &DegreeSpec) -> Vec<i64> {
            match d {
                DegreeSpec::Range(a, b) => (*a..=*b).collect(),
                DegreeSpec::Num(n) => vec![*n],
                DegreeSpec::Symbol(_) => vec![],
            }
        }
        match self {
            TargetSpec::Pm { m, d } => {
                let vals = expand(d);
                if vals.is_empty() {
                    return Err(CliError::Input(
                        "table command needs numeric or range degrees".into(),
                    ));
                }
                Ok(vals
                    .into_iter()
                    .map(|v| {
                        (
                            vec![v],
                            TargetSpec::Pm {
                                m: *m,
                                d: DegreeSpec::Num(v),
                            },
                        )
                    })
                    .collect())
            }
            TargetSpec::Product { factors } => {
                let mut rows: Vec<Vec<i64>> = vec![vec![]];
                for (_, d) in factors {
                    let vals = expand(d);
                    if vals.is_empty() {
                        return Err(CliError::Input(
                            "table command needs numeric or range degrees".into(),
                        ));
                    }
                    rows = rows
                        .into_iter()
                        .flat_map(|row| {
                            vals.iter().map(move |v| {
                                let mut r = row.clone();
                                r.push(*v);
                                r
                            })
                        })
                        .collect();
                }
                Ok(rows
                    .into_iter()
                    .map(|row| {
                        let fs = factors
                            .iter()
                            .zip(&row)
                            .map(|((m, _), v)| (*m, DegreeSpec::Num(*v)))
                            .collect();
                        (row, TargetSpec::Product { factors: fs })
                    })
                    .collect())
            }
            _ => Err(CliError::Input(
                "table command supports pm(...) and product(...) targets".into(),
            )),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "chern-counts",
    about = "Counts of nodal, cuspidal and tacnodal members of a linear system, via Euler classes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one count for a singularity class on a target
    Count(CountArgs),
    /// Print the universal formula in c1 and the x_i
    Formula(FormulaArgs),
    /// Run the full cross-check suite
    Verify(VerifyArgs),
    /// Tabulate counts over degree ranges
    Table(TableArgs),
}

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Singularity class: A1, A2 or A3
    #[arg(long)]
    pub sing: SingClass,
    /// Target spec: pm(m=..,d=..), product((m=..,d=..),..), table(file=..),
    /// generic(m=..)
    #[arg(long)]
    pub target: String,
    /// Cusp route (A2 only): det or proj
    #[arg(long)]
    pub route: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct FormulaArgs {
    #[arg(long)]
    pub sing: SingClass,
    /// Complex dimension of the manifold
    #[arg(long)]
    pub dim: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Largest dimension exercised by the dimension-parameterized checks
    #[arg(long, default_value_t = 5)]
    pub max_dim: u32,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long)]
    pub sing: SingClass,
    /// Target family with numeric or range degrees, e.g. pm(m=2,d=1..5)
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value = "text")]
    pub format: String,
}

fn poly_to_json<C: Coeff>(p: &PolyOf<C>) -> Value {
    let terms: Vec<Value> = p
        .sorted_terms()
        .into_iter()
        .map(|(mono, c)| {
            json!({
                "coeff": c.to_string(),
                "monomial": mono.to_string(),
            })
        })
        .collect();
    json!({ "terms": terms })
}

fn discrepancy_to_json(r: &DiscrepancyReport<BigInt>) -> Value {
    json!({
        "context": r.context,
        "engine_value": r.engine_value.to_string(),
        "printed_value": r.printed_value.to_string(),
        "equal": r.equal,
    })
}

fn parse_route(sing: SingClass, route: &Option<String>) -> Result<Option<Route>, CliError> {
    match route.as_deref() {
        None => Ok(None),
        Some(r) if sing != SingClass::A2 => Err(CliError::Input(format!(
            "--route {r} is only valid with --sing A2"
        ))),
        Some("det") => Ok(Some(Route::A2Det)),
        Some("proj") => Ok(Some(Route::A2Proj)),
        Some(other) => Err(CliError::Input(format!(
            "unknown route `{other}` (expected det or proj)"
        ))),
    }
}

fn count_output(
    sing: SingClass,
    spec: &TargetSpec,
    result: &CountResult<BigInt>,
    json_mode: bool,
) -> String {
    if json_mode {
        let v = json!({
            "singularity": sing.to_string(),
            "target": spec.to_string(),
            "dimension": spec.to_target().map(|t| t.dimension()).unwrap_or(0),
            "route": result.route.to_string(),
            "value": poly_to_json(&result.value),
            "checks": result
                .checks
                .iter()
                .map(|(name, passed)| json!({"name": name, "passed": passed}))
                .collect::<Vec<_>>(),
            "discrepancies": result.notes.clone(),
        });
        serde_json::to_string_pretty(&v).expect("serializable")
    } else {
        let mut out = format!(
            "N({sing}) on {spec} [route {}] = {}",
            result.route, result.value
        );
        for (name, passed) in &result.checks {
            out.push_str(&format!(
                "\n  check {name}: {}",
                if *passed { "ok" } else { "FAILED" }
            ));
        }
        for note in &result.notes {
            out.push_str(&format!("\n  note: {note}"));
        }
        out
    }
}

pub fn cmd_count(args: &CountArgs) -> Result<String, CliError> {
    let spec: TargetSpec = args.target.parse()?;
    let target = spec.to_target()?;
    let route = parse_route(args.sing, &args.route)?;
    let result = counts::count(args.sing, &target, route)
        .map_err(|e| CliError::Eval(e.to_string()))?;
    Ok(count_output(args.sing, &spec, &result, args.json))
}

pub fn cmd_formula(args: &FormulaArgs) -> Result<String, CliError> {
    if args.dim < 1 {
        return Err(CliError::Input("--dim must be at least 1".into()));
    }
    let value = counts::formula::<BigInt>(args.sing, args.dim)
        .map_err(|e| CliError::Eval(e.to_string()))?;
    if args.json {
        let v = json!({
            "singularity": args.sing.to_string(),
            "dimension": args.dim,
            "value": poly_to_json(&value),
        });
        Ok(serde_json::to_string_pretty(&v).expect("serializable"))
    } else {
        Ok(value.to_string())
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, bool), CliError> {
    if args.max_dim < 2 {
        return Err(CliError::Input("--max-dim must be at least 2".into()));
    }
    let report = run_suite(args.max_dim);
    let ok = report.all_passed();
    if args.json {
        let v = json!({
            "checks": report
                .checks
                .iter()
                .map(|c| json!({"name": c.name, "passed": c.passed, "detail": c.detail}))
                .collect::<Vec<_>>(),
            "discrepancies": report
                .discrepancies
                .iter()
                .map(discrepancy_to_json)
                .collect::<Vec<_>>(),
            "all_passed": ok,
        });
        Ok((serde_json::to_string_pretty(&v).expect("serializable"), ok))
    } else {
        let mut out = String::new();
        for c in &report.checks {
            out.push_str(&format!(
                "{} {}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name
            ));
            if !c.passed {
                out.push_str(&format!("     {}\n", c.detail));
            }
        }
        for r in &report.discrepancies {
            out.push_str(&format!(
                "DISCREPANCY (documented) {}\n  engine: {}\n  printed: {}\n",
                r.context, r.engine_value, r.printed_value
            ));
        }
        out.push_str(&format!(
            "{} checks passed, {} documented discrepancies\n",
            report.checks.iter().filter(|c| c.passed).count(),
            report.discrepancies.len()
        ));
        Ok((out, ok))
    }
}

pub fn cmd_table(args: &TableArgs) -> Result<String, CliError> {
    let spec: TargetSpec = args.target.parse()?;
    let rows = spec.grid()?;
    let mut cells = Vec::new();
    for (degrees, cell_spec) in rows {
        let target = cell_spec.to_target()?;
        let result = counts::count(args.sing, &target, None)
            .map_err(|e| CliError::Eval(e.to_string()))?;
        let value = result
            .value
            .as_constant()
            .ok_or_else(|| CliError::Eval("table cell did not evaluate to a number".into()))?;
        cells.push((degrees, value));
    }
    let ncols = cells.first().map(|(d, _)| d.len()).unwrap_or(0);
    let headers: Vec<String> = (1..=ncols)
        .map(|i| if ncols == 1 { "d".to_string() } else { format!("d{i}") })
        .chain(std::iter::once(format!("N({})", args.sing)))
        .collect();
    match args.format.as_str() {
        "text" => {
            let mut out = headers.join("\t");
            for (degrees, value) in &cells {
                out.push('\n');
                let mut row: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                row.push(value.to_string());
                out.push_str(&row.join("\t"));
            }
            Ok(out)
        }
        "csv" => {
            let mut out = headers.join(",");
            for (degrees, value) in &cells {
                out.push('\n');
                let mut row: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
                row.push(value.to_string());
                out.push_str(&row.join(","));
            }
            Ok(out)
        }
        "json" => {
            let v = json!({
                "singularity": args.sing.to_string(),
                "target": spec.to_string(),
                "rows": cells
                    .iter()
                    .map(|(degrees, value)| json!({
                        "degrees": degrees,
                        "count": value.to_string(),
                    }))
                    .collect::<Vec<_>>(),
            });
            Ok(serde_json::to_string_pretty(&v).expect("serializable"))
        }
        other => Err(CliError::Input(format!(
            "unknown format `{other}` (expected text, json or csv)"
        ))),
    }
}

/// Dispatches a parsed command line; returns the process exit code.
pub fn run(cli: &Cli) -> u8 {
    let outcome: Result<(String, bool), CliError> = match &cli.command {
        Command::Count(a) => cmd_count(a).map(|s| (s, true)),
        Command::Formula(a) => cmd_formula(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::Table(a) => cmd_table(a).map(|s| (s, true)),
    };
    match outcome {
        Ok((text, ok)) => {
            println!("{text}");
            if ok {
                EXIT_OK
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
