//! `young-bounds`: evaluate, certify and sweep refined Young-inequality
//! bounds, search for non-ordering witnesses, reproduce reference values and
//! check the operator-mean inequalities on matrices read from files.
//!
//! Every invocation prints one result: a JSON envelope
//! `{schema_version, command, inputs, results, status}` by default, or the
//! payload alone as CSV or an aligned table. The exit code is a stable
//! contract: 0 ok, 1 inequality violation, 2 usage, 3 domain/region/
//! sandwich/file error, 4 witness not found.

// Negated comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use young_bounds::operator::{read_matrix_file, DEFAULT_LOEWNER_TOL};
use young_bounds::verifier::{
    find_diff, list_diffs, DEFAULT_NT, DEFAULT_NV, DEFAULT_REFINE_DEPTH, DEFAULT_SWEEP_TOL, REMARK_TOL,
};
use young_bounds::{
    certify_corollary_one, certify_corollary_two, certify_point, find_bound, find_sign_change, list_bounds,
    reproduce_remarks, sweep, DeformParam, Error, EvalPoint, OperatorCertificate, Region, SandwichCase,
    SandwichSpec, TScale, Variant,
};

const SCHEMA_VERSION: &str = "1";

const EXIT_OK: u8 = 0;
const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_NOT_FOUND: u8 = 4;

#[derive(Parser)]
#[command(
    name = "young-bounds",
    version,
    about = "Refined Young-inequality bounds: evaluation and certification"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// List the bound catalog and the difference functions.
    List,
    /// Evaluate one bound at one point and certify it against the ratio.
    Eval(EvalArgs),
    /// Recompute the reference values and compare them.
    Remarks,
    /// Certify a bound at every point of a grid.
    Sweep(SweepArgs),
    /// Search a grid for points where a difference function takes both signs.
    Witness(WitnessArgs),
    /// Certify an operator-mean inequality for two matrices.
    Operator(OperatorArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Catalog id of the bound.
    #[arg(long)]
    bound: String,
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[arg(long, allow_hyphen_values = true)]
    v: f64,
    /// Deformation parameter (deformed bounds only; defaults per bound).
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
    /// Absolute tolerance on the margin.
    #[arg(long, default_value_t = DEFAULT_SWEEP_TOL, allow_hyphen_values = true)]
    tol: f64,
}

#[derive(Args)]
struct GridArgs {
    /// Lower end of the t range (default: the validity region clipped to [1e-3, 1e3]).
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    v_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    v_max: f64,
    /// Log-spaced t values (the default).
    #[arg(long, conflicts_with = "linear_t")]
    log_t: bool,
    /// Evenly spaced t values.
    #[arg(long)]
    linear_t: bool,
    /// Number of t values.
    #[arg(long, default_value_t = DEFAULT_NT)]
    nt: usize,
    /// Number of v values.
    #[arg(long, default_value_t = DEFAULT_NV)]
    nv: usize,
}

impl GridArgs {
    fn region(&self, default: Region) -> Result<Region, Error> {
        let scale = if self.linear_t {
            TScale::Linear
        } else {
            TScale::Log
        };
        Region::new(
            self.t_min.unwrap_or(default.t_min),
            self.t_max.unwrap_or(default.t_max),
            self.v_min,
            self.v_max,
            scale,
            self.nt,
            self.nv,
        )
    }
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    bound: String,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_SWEEP_TOL, allow_hyphen_values = true)]
    tol: f64,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
}

#[derive(Args)]
struct WitnessArgs {
    /// Id of the difference function.
    #[arg(long)]
    diff: String,
    #[command(flatten)]
    grid: GridArgs,
    /// Both signs must exceed this magnitude (default depends on the function).
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Rounds of local refinement around the extrema.
    #[arg(long, default_value_t = DEFAULT_REFINE_DEPTH)]
    depth: usize,
    /// Deformation parameter (diff-ropt only).
    #[arg(long, allow_hyphen_values = true)]
    r: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    One,
    Two,
}

#[derive(Args)]
struct OperatorArgs {
    /// File holding A.
    #[arg(long)]
    a: PathBuf,
    /// File holding B.
    #[arg(long)]
    b: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    v: f64,
    #[arg(long, value_enum)]
    claim: Claim,
    /// Deformation for the one-sided claim (default 1).
    #[arg(long, conflicts_with_all = ["r1", "r2"], allow_hyphen_values = true)]
    r: Option<f64>,
    /// Lower deformation for the two-sided claim (default -1).
    #[arg(long, allow_hyphen_values = true)]
    r1: Option<f64>,
    /// Upper deformation for the two-sided claim (default 1).
    #[arg(long, allow_hyphen_values = true)]
    r2: Option<f64>,
    #[arg(long = "m", allow_hyphen_values = true)]
    m: f64,
    #[arg(long = "mprime", allow_hyphen_values = true)]
    m_prime: f64,
    #[arg(long = "Mprime", allow_hyphen_values = true)]
    big_m_prime: f64,
    #[arg(long = "M", allow_hyphen_values = true)]
    big_m: f64,
    /// Sandwich case: i (A below B) or ii (B below A).
    #[arg(long = "case")]
    case: SandwichCase,
    /// Constants of the two-sided claim.
    #[arg(long, default_value = "as-stated")]
    variant: Variant,
    /// Relative tolerance on the smallest eigenvalue margin.
    #[arg(long, default_value_t = DEFAULT_LOEWNER_TOL, allow_hyphen_values = true)]
    tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }

    fn from_holds(all_hold: bool) -> Self {
        if all_hold {
            Status::Ok
        } else {
            Status::Violation
        }
    }
}

/// One CSV/table cell. Numbers keep their full value until formatted.
enum Cell {
    Text(String),
    Num(f64),
    Int(usize),
    Bool(bool),
    Empty,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl Cell {
    /// Shortest representation that parses back to the same value.
    fn exact(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn readable(&self) -> String {
        match self {
            Cell::Num(x) => significant(*x, 9),
            other => other.exact(),
        }
    }
}

/// `x` rounded to `digits` significant digits, fixed-point for moderate
/// magnitudes and scientific otherwise.
fn significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    if exponent < -4 || exponent >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, exp) = s.split_once('e').expect("scientific format");
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{mantissa}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exponent).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

/// What a command produced: the JSON payload plus the same values as rows.
struct Outcome {
    inputs: Value,
    results: Value,
    status: Status,
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

/// Failure of a command, with the exit code it maps to.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    inputs: Value,
    details: Value,
}

impl Failure {
    fn usage(message: impl Into<String>, inputs: Value) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: "usage",
            message: message.into(),
            inputs,
            details: Value::Null,
        }
    }

    fn from_error(e: Error, inputs: Value) -> Self {
        let (code, kind) = match &e {
            Error::UnknownBound(_) | Error::UnknownDiff(_) | Error::InvalidRegion(_) => (EXIT_USAGE, "usage"),
            Error::NotFound { .. } => (EXIT_NOT_FOUND, "not-found"),
            Error::InvalidPoint(_) | Error::InvalidDeform(_) | Error::Domain(_) => (EXIT_DOMAIN, "domain"),
            Error::Region(_) => (EXIT_DOMAIN, "region"),
            Error::InvalidSandwich(_) | Error::SandwichViolation => (EXIT_DOMAIN, "sandwich"),
            Error::Parse(_) | Error::Io(_) => (EXIT_DOMAIN, "file"),
            Error::NotPositiveDefinite { .. } | Error::Eigen(_) | Error::DimensionMismatch(..) => {
                (EXIT_DOMAIN, "matrix")
            }
        };
        let details = match &e {
            Error::NotFound {
                diff_id,
                delta,
                max_value,
                min_value,
            } => json!({
                "diff_id": diff_id,
                "delta": delta,
                "max_value": max_value,
                "min_value": min_value,
            }),
            _ => Value::Null,
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
            inputs,
            details,
        }
    }
}

type CmdResult = Result<Outcome, Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn deform(r: Option<f64>, inputs: &Value) -> Result<Option<DeformParam>, Failure> {
    r.map(DeformParam::new)
        .transpose()
        .map_err(|e| Failure::from_error(e, inputs.clone()))
}

fn cmd_list() -> CmdResult {
    let bounds: Vec<Value> = list_bounds().iter().map(to_value).collect();
    let diffs: Vec<Value> = list_diffs().iter().map(to_value).collect();
    let mut rows = Vec::new();
    for b in list_bounds() {
        rows.push(vec![
            Cell::from(b.id),
            Cell::from("bound"),
            Cell::from(to_value(&b.side).as_str().unwrap_or_default()),
            Cell::from(b.region.as_str()),
            Cell::from(b.description),
        ]);
    }
    for d in list_diffs() {
        rows.push(vec![
            Cell::from(d.id),
            Cell::from("diff"),
            Cell::Empty,
            Cell::from(d.region.as_str()),
            Cell::from(d.description),
        ]);
    }
    Ok(Outcome {
        inputs: json!({}),
        results: json!({ "bounds": bounds, "diffs": diffs }),
        status: Status::Ok,
        header: vec!["id", "kind", "side", "region", "description"],
        rows,
    })
}

fn cmd_eval(a: &EvalArgs) -> CmdResult {
    let inputs = json!({ "bound": a.bound, "t": a.t, "v": a.v, "r": a.r, "tol": a.tol });
    let fail = |e: Error| Failure::from_error(e, inputs.clone());
    let spec = find_bound(&a.bound).map_err(fail)?;
    let p = EvalPoint::new(a.t, a.v).map_err(fail)?;
    if !spec.region.contains(a.t) {
        return Err(fail(Error::Region(format!(
            "{} holds on {} but t={}",
            spec.id,
            spec.region.as_str(),
            a.t
        ))));
    }
    let d = deform(a.r, &inputs)?;
    let r_used = spec.resolve_deform(d).map_err(fail)?;
    let cert = certify_point(spec.id, p, d, a.tol).map_err(fail)?;

    let mut results = to_value(&cert);
    results["r"] = json!(r_used);
    let row = vec![
        Cell::from(cert.bound_id.as_str()),
        Cell::from(p.t()),
        Cell::from(p.v()),
        Cell::from(r_used),
        Cell::from(cert.ratio_value),
        Cell::from(cert.bound_value),
        Cell::from(cert.margin),
        Cell::from(cert.holds),
        Cell::from(cert.tol),
    ];
    Ok(Outcome {
        inputs,
        results,
        status: Status::from_holds(cert.holds),
        header: vec![
            "bound_id",
            "t",
            "v",
            "r",
            "ratio_value",
            "bound_value",
            "margin",
            "holds",
            "tol",
        ],
        rows: vec![row],
    })
}

fn cmd_remarks() -> CmdResult {
    let table = reproduce_remarks();
    let all_within = table.iter().all(|row| row.abs_error <= REMARK_TOL);
    let rows = table
        .iter()
        .map(|row| {
            vec![
                Cell::from(row.label.as_str()),
                Cell::from(row.paper_value),
                Cell::from(row.computed),
                Cell::from(row.abs_error),
            ]
        })
        .collect();
    Ok(Outcome {
        inputs: json!({ "tol": REMARK_TOL }),
        results: json!({ "rows": to_value(&table) }),
        status: Status::from_holds(all_within),
        header: vec!["label", "paper_value", "computed", "abs_error"],
        rows,
    })
}

fn region_inputs(region: &Region) -> Value {
    to_value(region)
}

fn cmd_sweep(a: &SweepArgs) -> CmdResult {
    let raw = json!({ "bound": a.bound });
    let spec = find_bound(&a.bound).map_err(|e| Failure::from_error(e, raw.clone()))?;
    let region = a
        .grid
        .region(Region::default_for(spec.region))
        .map_err(|e| Failure::from_error(e, raw.clone()))?;
    let inputs = json!({
        "bound": spec.id,
        "region": region_inputs(&region),
        "r": a.r,
        "tol": a.tol,
    });
    let fail = |e: Error| Failure::from_error(e, inputs.clone());
    let d = deform(a.r, &inputs)?;
    let r_used = spec.resolve_deform(d).map_err(fail)?;
    let report = sweep(spec.id, &region, d, a.tol).map_err(fail)?;

    let mut results = to_value(&report);
    results["r"] = json!(r_used);
    let row = vec![
        Cell::from(report.bound_id.as_str()),
        Cell::from(region.t_min),
        Cell::from(region.t_max),
        Cell::from(region.v_min),
        Cell::from(region.v_max),
        Cell::from(to_value(&region.t_scale).as_str().unwrap_or_default()),
        Cell::from(region.n_t),
        Cell::from(region.n_v),
        Cell::from(r_used),
        Cell::from(report.n_points),
        Cell::from(report.n_violations),
        Cell::from(report.min_margin),
        Cell::from(report.argmin_point.t()),
        Cell::from(report.argmin_point.v()),
        Cell::from(report.tol),
    ];
    Ok(Outcome {
        inputs,
        results,
        status: Status::from_holds(report.n_violations == 0),
        header: vec![
            "bound_id",
            "t_min",
            "t_max",
            "v_min",
            "v_max",
            "t_scale",
            "n_t",
            "n_v",
            "r",
            "n_points",
            "n_violations",
            "min_margin",
            "argmin_t",
            "argmin_v",
            "tol",
        ],
        rows: vec![row],
    })
}

fn cmd_witness(a: &WitnessArgs) -> CmdResult {
    let raw = json!({ "diff": a.diff });
    let spec = find_diff(&a.diff).map_err(|e| Failure::from_error(e, raw.clone()))?;
    let region = a
        .grid
        .region(spec.default_region())
        .map_err(|e| Failure::from_error(e, raw.clone()))?;
    let delta = a.delta.unwrap_or_else(|| spec.default_delta());
    let inputs = json!({
        "diff": spec.id,
        "region": region_inputs(&region),
        "delta": delta,
        "depth": a.depth,
        "r": a.r,
    });
    if !(delta >= 0.0) {
        return Err(Failure::usage(
            format!("delta must be non-negative, got {delta}"),
            inputs,
        ));
    }
    let w = find_sign_change(spec.id, &region, delta, a.depth, a.r)
        .map_err(|e| Failure::from_error(e, inputs.clone()))?;
    let row = vec![
        Cell::from(w.diff_id.as_str()),
        Cell::from(w.delta),
        Cell::from(w.point_pos.t()),
        Cell::from(w.point_pos.v()),
        Cell::from(w.value_pos),
        Cell::from(w.point_neg.t()),
        Cell::from(w.point_neg.v()),
        Cell::from(w.value_neg),
    ];
    Ok(Outcome {
        inputs,
        results: to_value(&w),
        status: Status::Ok,
        header: vec![
            "diff_id",
            "delta",
            "t_pos",
            "v_pos",
            "value_pos",
            "t_neg",
            "v_neg",
            "value_neg",
        ],
        rows: vec![row],
    })
}

fn cmd_operator(a: &OperatorArgs) -> CmdResult {
    let claim = match a.claim {
        Claim::One => "one",
        Claim::Two => "two",
    };
    let mut inputs = json!({
        "a": a.a.display().to_string(),
        "b": a.b.display().to_string(),
        "v": a.v,
        "claim": claim,
        "m": a.m,
        "mprime": a.m_prime,
        "Mprime": a.big_m_prime,
        "M": a.big_m,
        "case": to_value(&a.case),
        "tol": a.tol,
    });
    let (r, r1, r2) = match a.claim {
        Claim::One => {
            if a.r1.is_some() || a.r2.is_some() {
                return Err(Failure::usage("--claim one takes --r, not --r1/--r2", inputs));
            }
            let r = a.r.unwrap_or(1.0);
            inputs["r"] = json!(r);
            (r, 0.0, 0.0)
        }
        Claim::Two => {
            let (r1, r2) = (a.r1.unwrap_or(-1.0), a.r2.unwrap_or(1.0));
            inputs["r1"] = json!(r1);
            inputs["r2"] = json!(r2);
            inputs["variant"] = to_value(&a.variant);
            (0.0, r1, r2)
        }
    };
    let fail = |e: Error| Failure::from_error(e, inputs.clone());

    let s = SandwichSpec::new(a.m, a.m_prime, a.big_m_prime, a.big_m, a.case).map_err(fail)?;
    let ma = read_matrix_file(&a.a).map_err(fail)?;
    let mb = read_matrix_file(&a.b).map_err(fail)?;
    let certs: Vec<OperatorCertificate> = match a.claim {
        Claim::One => {
            let r = DeformParam::new(r).map_err(fail)?;
            vec![certify_corollary_one(&ma, &mb, a.v, r, &s, a.tol).map_err(fail)?]
        }
        Claim::Two => {
            let r1 = DeformParam::new(r1).map_err(fail)?;
            let r2 = DeformParam::new(r2).map_err(fail)?;
            let (lo, hi) =
                certify_corollary_two(&ma, &mb, a.v, r1, r2, &s, a.variant, a.tol).map_err(fail)?;
            vec![lo, hi]
        }
    };
    let rows = certs
        .iter()
        .map(|c| {
            vec![
                Cell::from(c.claim_id.as_str()),
                Cell::from(to_value(&c.variant).as_str().unwrap_or_default()),
                Cell::from(c.scalar_factor),
                Cell::from(c.min_eigen_margin),
                Cell::from(c.holds),
                Cell::from(c.tol),
            ]
        })
        .collect();
    Ok(Outcome {
        inputs,
        results: json!({ "h": s.h(), "h_prime": s.h_prime(), "certificates": to_value(&certs) }),
        status: Status::from_holds(certs.iter().all(|c| c.holds)),
        header: vec![
            "claim_id",
            "variant",
            "scalar_factor",
            "min_eigen_margin",
            "holds",
            "tol",
        ],
        rows,
    })
}

fn envelope(command: &str, inputs: Value, results: Value, status: Status) -> Value {
    // Built as a `Value` so keys are emitted in the same (sorted) order a
    // parse-and-reserialize round trip would produce.
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "status": status.as_str(),
    })
}

fn write_json(out: &mut impl Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

fn write_csv(out: &mut impl Write, header: &[&str], rows: &[Vec<Cell>]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(Cell::exact))?;
    }
    w.flush()
}

fn write_table(out: &mut impl Write, header: &[&str], rows: &[Vec<Cell>]) -> io::Result<()> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(Cell::readable).collect())
        .collect();
    if cells.len() == 1 {
        // A single record reads better as key/value lines.
        let width = header.iter().map(|h| h.len()).max().unwrap_or(0);
        for (h, c) in header.iter().zip(&cells[0]) {
            writeln!(out, "{h:<width$}  {c}")?;
        }
        return Ok(());
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].len())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |fields: Vec<&str>| {
        fields
            .iter()
            .zip(&widths)
            .map(|(f, w)| format!("{f:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header.to_vec()))?;
    for r in &cells {
        writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn emit_failure(command: &str, format: Format, f: Failure, echo: bool) -> ExitCode {
    if echo {
        eprintln!("error: {}", f.message);
    }
    if format == Format::Json {
        let mut results = json!({ "error": f.kind, "message": f.message });
        if !f.details.is_null() {
            results["details"] = f.details;
        }
        let _ = write_json(
            &mut io::stdout().lock(),
            &envelope(command, f.inputs, results, Status::Error),
        );
    }
    ExitCode::from(f.code)
}

/// Best-effort reading of the subcommand and format when argument parsing
/// itself failed.
fn sniff_args() -> (String, Format) {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let mut command = None;
    let mut format = Format::Json;
    let mut i = 0;
    while i < args.len() {
        let arg = &args[i];
        if let Some(value) = arg.strip_prefix("--format=") {
            format = Format::from_str(value, false).unwrap_or(Format::Json);
        } else if arg == "--format" {
            if let Some(value) = args.get(i + 1) {
                format = Format::from_str(value, false).unwrap_or(Format::Json);
            }
            i += 1;
        } else if command.is_none() && !arg.starts_with('-') {
            command = Some(arg.clone());
        }
        i += 1;
    }
    (command.unwrap_or_default(), format)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help / --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let (command, format) = sniff_args();
            let _ = e.print();
            return emit_failure(
                &command,
                format,
                Failure::usage(e.to_string().trim_end(), json!({})),
                false,
            );
        }
    };

    let (name, outcome) = match &cli.command {
        Command::List => ("list", cmd_list()),
        Command::Eval(a) => ("eval", cmd_eval(a)),
        Command::Remarks => ("remarks", cmd_remarks()),
        Command::Sweep(a) => ("sweep", cmd_sweep(a)),
        Command::Witness(a) => ("witness", cmd_witness(a)),
        Command::Operator(a) => ("operator", cmd_operator(a)),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(f) => return emit_failure(name, cli.format, f, true),
    };

    let mut out = io::stdout().lock();
    let written = match cli.format {
        Format::Json => write_json(
            &mut out,
            &envelope(name, outcome.inputs, outcome.results, outcome.status),
        ),
        Format::Csv => write_csv(&mut out, &outcome.header, &outcome.rows),
        Format::Table => write_table(&mut out, &outcome.header, &outcome.rows),
    };
    if let Err(e) = written {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    }
    ExitCode::from(match outcome.status {
        Status::Ok => EXIT_OK,
        Status::Violation => EXIT_VIOLATION,
        Status::Error => EXIT_DOMAIN,
    })
}
