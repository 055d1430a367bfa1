//! `qeg`: tables and verification for higher-order twisted q-Euler and
//! q-Genocchi numbers, their polynomials, and their zeta-type interpolation.
//!
//! Subcommands compute number/polynomial tables (`euler`, `genocchi`,
//! `poly`), evaluate the interpolating zeta functions (`zeta`), check
//! p-adic convergence of fermionic level sums (`witt`), print classical
//! generating-function tables (`table`), and run the cross-route identity
//! suite (`verify`). Output is plain text, RFC-4180 CSV, or JSON; exact
//! values render as `numerator/denominator` strings, never floats.
//!
//! Exit codes: 0 on full success, 1 when any requested computation failed,
//! 2 on usage errors.

mod parse;
mod render;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qeg::{
    classical_euler_series, classical_genocchi_series, cos_genocchi_series, euler_number_closed,
    euler_poly_closed, genocchi_number, genocchi_poly, strictly_increasing, witt_verify,
    zeta_evaluate, Argument, EulerQuery, GenocchiQuery, Method, QContext, Rat, ZetaQuery,
    DEFAULT_ORDER,
};

use render::{bound_str, complex_str, emit, emit_timing, f64_str, rat_str, Format, Record};

#[derive(Parser)]
#[command(
    name = "qeg",
    version,
    about = "Exact tables and verification for twisted q-Euler/q-Genocchi numbers and their q-zeta interpolation",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-Euler numbers of order r (exact rational arithmetic)
    Euler(EulerArgs),
    /// q-Genocchi numbers of order r (exact rational arithmetic)
    Genocchi(GenocchiArgs),
    /// q-Euler / q-Genocchi polynomials at an argument x
    Poly(PolyArgs),
    /// Lerch-type (and, with --x, Hurwitz-type) q-zeta values
    Zeta(ZetaArgs),
    /// p-adic convergence of fermionic level sums toward the q-Euler target
    Witt(WittArgs),
    /// Classical generating-function coefficient tables
    Table(TableArgs),
    /// Cross-route identity suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
    /// Write data to this file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Suppress the elapsed-time footer on standard error
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args)]
struct EulerArgs {
    /// Index n or inclusive range "a..b"
    #[arg(long)]
    n: String,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Deformation parameter as "a/b" or an integer; q = 1 is excluded
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Twist parameter as "a/b" or an integer
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct GenocchiArgs {
    /// Index m or inclusive range "a..b"
    #[arg(long)]
    m: String,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Deformation parameter as "a/b" or an integer; q = 1 is excluded
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Twist parameter as "a/b" or an integer
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyFamily {
    Euler,
    Genocchi,
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial family
    #[arg(long, value_enum, default_value_t = PolyFamily::Euler)]
    family: PolyFamily,
    /// Index n or inclusive range "a..b"
    #[arg(long)]
    n: String,
    /// Argument x: a nonnegative integer stays exact, fractions and
    /// decimals evaluate in floating point
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Deformation parameter as "a/b" or an integer; q = 1 is excluded
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Twist parameter as "a/b" or an integer
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Direct,
    Accelerated,
}

#[derive(Args)]
struct ZetaArgs {
    /// Complex argument s: "a", "a+bi", or "a-bi"
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    /// Deformation parameter in (0, 1), decimal or fraction
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Twist parameter, decimal or fraction
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Hurwitz-type offset x > 0; absent means the Lerch-type function
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Summation route
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Target tail tolerance
    #[arg(long, default_value_t = qeg::zeta::DEFAULT_TOL)]
    tol: f64,
    /// Direct-route safety margin: requires |w| <= 1 - delta
    #[arg(long, default_value_t = qeg::zeta::DEFAULT_DELTA)]
    delta: f64,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct WittArgs {
    /// Odd prime p
    #[arg(long)]
    p: u64,
    /// Deformation parameter as "a/b" or an integer with v_p(q - 1) >= 1
    #[arg(long, allow_hyphen_values = true)]
    q: String,
    /// Twist parameter as "a/b" or an integer with v_p(w - 1) >= 1
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Index n or inclusive range "a..b"
    #[arg(long, default_value = "0")]
    n: String,
    /// Evaluate levels N = 1..=LEVELS
    #[arg(long, default_value_t = 3)]
    levels: u32,
    /// Fail (exit 1) unless every valuation sequence strictly increases
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFamily {
    Euler,
    Genocchi,
    CosGenocchi,
}

#[derive(Args)]
struct TableArgs {
    /// Tabulate the classical (q = 1) generating-function coefficients
    #[arg(long, required = true)]
    classical: bool,
    /// Sequence family
    #[arg(long, value_enum, default_value_t = TableFamily::Euler)]
    family: TableFamily,
    /// Twist parameter as "a/b" or an integer (euler/genocchi families)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    w: String,
    /// Order r >= 1
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Polynomial shift x (nonnegative integer)
    #[arg(long, default_value_t = 0)]
    x: u64,
    /// Interpolation exponent h (cos-genocchi family)
    #[arg(long, default_value_t = 1)]
    h: i32,
    /// Deformation parameter as "a/b" (cos-genocchi family only)
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Highest coefficient index
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[command(flatten)]
    output: OutputOpts,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run every identity
    #[arg(long)]
    all: bool,
    /// Run one identity (repeatable); see --help for the list
    #[arg(long, value_name = "NAME")]
    identity: Vec<String>,
    #[command(flatten)]
    output: OutputOpts,
}

/// A failure with the exit code it maps to: usage errors are detected
/// before computation starts, computation errors after.
enum Failure {
    Usage(String),
    Computation(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Computation(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Computation(m) => m,
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (result, output) = match cli.command {
        Command::Euler(args) => (cmd_euler(&args), args.output),
        Command::Genocchi(args) => (cmd_genocchi(&args), args.output),
        Command::Poly(args) => (cmd_poly(&args), args.output),
        Command::Zeta(args) => (cmd_zeta(&args), args.output),
        Command::Witt(args) => (cmd_witt(&args), args.output),
        Command::Table(args) => (cmd_table(&args), args.output),
        Command::Verify(args) => (cmd_verify(&args), args.output),
    };
    emit_timing(started.elapsed(), output.no_timing);
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

/// Renders and emits the rows, then folds per-cell failures into the exit
/// status: every error was already reported on standard error.
fn finish<R: Record>(
    records: &[R],
    errors: &[String],
    output: &OutputOpts,
) -> Result<(), Failure> {
    let text = render::render(records, output.format);
    emit(&text, output.out.as_deref()).map_err(Failure::Computation)?;
    if errors.is_empty() {
        Ok(())
    } else {
        for message in errors {
            eprintln!("error: {message}");
        }
        Err(Failure::Computation(format!(
            "{} of {} requested cells failed",
            errors.len(),
            errors.len() + records.len()
        )))
    }
}

#[derive(Serialize)]
struct NumberRow {
    n: u32,
    r: u32,
    q: String,
    w: String,
    value: String,
}

impl Record for NumberRow {
    fn columns() -> &'static [&'static str] {
        &["n", "r", "q", "w", "value"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.r.to_string(),
            self.q.clone(),
            self.w.clone(),
            self.value.clone(),
        ]
    }
}

/// The q = 1 closed sums are undefined; point at the series tables that
/// hold their classical limits.
fn classical_hint(q: &Rat, error: qeg::Error) -> String {
    if matches!(error, qeg::Error::QIsOne) {
        format!("{error}; see `qeg table --classical`")
    } else {
        format!("q = {}: {error}", rat_str(q))
    }
}

fn cmd_euler(args: &EulerArgs) -> Result<(), Failure> {
    let indices = parse::index_range(&args.n).map_err(usage)?;
    let q = parse::rational(&args.q).map_err(usage)?;
    let w = parse::rational(&args.w).map_err(usage)?;
    let ctx = QContext::new(q.clone(), w.clone(), args.r)
        .map_err(|e| usage(e.to_string()))?;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for n in indices {
        match euler_number_closed(&EulerQuery::number(n, ctx.clone())) {
            Ok(value) => rows.push(NumberRow {
                n,
                r: args.r,
                q: rat_str(&q),
                w: rat_str(&w),
                value: rat_str(&value),
            }),
            Err(e) => errors.push(format!("n = {n}: {}", classical_hint(&q, e))),
        }
    }
    finish(&rows, &errors, &args.output)
}

#[derive(Serialize)]
struct GenocchiRow {
    m: u32,
    r: u32,
    q: String,
    w: String,
    value: String,
}

impl Record for GenocchiRow {
    fn columns() -> &'static [&'static str] {
        &["m", "r", "q", "w", "value"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.r.to_string(),
            self.q.clone(),
            self.w.clone(),
            self.value.clone(),
        ]
    }
}

fn cmd_genocchi(args: &GenocchiArgs) -> Result<(), Failure> {
    let indices = parse::index_range(&args.m).map_err(usage)?;
    let q = parse::rational(&args.q).map_err(usage)?;
    let w = parse::rational(&args.w).map_err(usage)?;
    let ctx = QContext::new(q.clone(), w.clone(), args.r)
        .map_err(|e| usage(e.to_string()))?;
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for m in indices {
        match genocchi_number(&GenocchiQuery::number(m, ctx.clone())) {
            Ok(value) => rows.push(GenocchiRow {
                m,
                r: args.r,
                q: rat_str(&q),
                w: rat_str(&w),
                value: rat_str(&value),
            }),
            Err(e) => errors.push(format!("m = {m}: {}", classical_hint(&q, e))),
        }
    }
    finish(&rows, &errors, &args.output)
}

#[derive(Serialize)]
struct PolyRow {
    family: &'static str,
    n: u32,
    r: u32,
    q: String,
    w: String,
    x: String,
    value: String,
}

impl Record for PolyRow {
    fn columns() -> &'static [&'static str] {
        &["family", "n", "r", "q", "w", "x", "value"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.family.to_string(),
            self.n.to_string(),
            self.r.to_string(),
            self.q.clone(),
            self.w.clone(),
            self.x.clone(),
            self.value.clone(),
        ]
    }
}

fn cmd_poly(args: &PolyArgs) -> Result<(), Failure> {
    let indices = parse::index_range(&args.n).map_err(usage)?;
    let q = parse::rational(&args.q).map_err(usage)?;
    let w = parse::rational(&args.w).map_err(usage)?;
    let x = parse::argument(&args.x).map_err(usage)?;
    let ctx = QContext::new(q.clone(), w.clone(), args.r)
        .map_err(|e| usage(e.to_string()))?;
    let (family, x_text) = match (args.family, x) {
        (PolyFamily::Euler, Argument::Integer(k)) => ("euler", k.to_string()),
        (PolyFamily::Euler, Argument::Real(t)) => ("euler", f64_str(t)),
        (PolyFamily::Genocchi, Argument::Integer(k)) => ("genocchi", k.to_string()),
        (PolyFamily::Genocchi, Argument::Real(t)) => ("genocchi", f64_str(t)),
    };
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for n in indices {
        // Exact integer arguments keep the exact route; real arguments
        // re-run the same closed sum over floats.
        let value = match (args.family, x) {
            (PolyFamily::Euler, Argument::Integer(_)) => {
                euler_poly_closed(&EulerQuery::poly(n, ctx.clone(), x)).map(|v| rat_str(&v))
            }
            (PolyFamily::Genocchi, Argument::Integer(_)) => {
                genocchi_poly(&GenocchiQuery::poly(n, ctx.clone(), x)).map(|v| rat_str(&v))
            }
            (PolyFamily::Euler, Argument::Real(_)) => float_ctx(&ctx)
                .and_then(|fctx| euler_poly_closed(&EulerQuery::poly(n, fctx, x)))
                .map(f64_str),
            (PolyFamily::Genocchi, Argument::Real(_)) => float_ctx(&ctx)
                .and_then(|fctx| genocchi_poly(&GenocchiQuery::poly(n, fctx, x)))
                .map(f64_str),
        };
        match value {
            Ok(value) => rows.push(PolyRow {
                family,
                n,
                r: args.r,
                q: rat_str(&q),
                w: rat_str(&w),
                x: x_text.clone(),
                value,
            }),
            Err(e) => errors.push(format!("n = {n}: {}", classical_hint(&q, e))),
        }
    }
    finish(&rows, &errors, &args.output)
}

fn float_ctx(ctx: &QContext<Rat>) -> qeg::Result<QContext<f64>> {
    use num_traits::ToPrimitive;
    let q = ctx.q.to_f64().ok_or_else(|| {
        qeg::Error::InvalidArgument("q does not fit in a float".into())
    })?;
    let w = ctx.w.to_f64().ok_or_else(|| {
        qeg::Error::InvalidArgument("w does not fit in a float".into())
    })?;
    QContext::new(q, w, ctx.r)
}

#[derive(Serialize)]
struct ZetaRow {
    s: String,
    q: String,
    w: String,
    r: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<String>,
    value: ZetaValueJson,
    method: &'static str,
    error_estimate: String,
    terms: usize,
}

#[derive(Serialize)]
struct ZetaValueJson {
    re: f64,
    im: f64,
}

impl Record for ZetaRow {
    fn columns() -> &'static [&'static str] {
        &["s", "q", "w", "r", "x", "value", "method", "error_estimate", "terms"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.s.clone(),
            self.q.clone(),
            self.w.clone(),
            self.r.to_string(),
            self.x.clone().unwrap_or_default(),
            complex_str(&qeg::C64::new(self.value.re, self.value.im)),
            self.method.to_string(),
            self.error_estimate.clone(),
            self.terms.to_string(),
        ]
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Auto => "auto",
        Method::Direct => "direct",
        Method::Accelerated => "accelerated",
    }
}

fn cmd_zeta(args: &ZetaArgs) -> Result<(), Failure> {
    let s = parse::complex(&args.s).map_err(usage)?;
    let q = parse::real(&args.q).map_err(usage)?;
    let w = parse::real(&args.w).map_err(usage)?;
    let x = args
        .x
        .as_deref()
        .map(parse::real)
        .transpose()
        .map_err(usage)?;
    let mut query = match x {
        Some(x) => ZetaQuery::hurwitz(s, q, w, args.r, x),
        None => ZetaQuery::lerch(s, q, w, args.r),
    };
    query = query
        .with_method(match args.method {
            MethodArg::Auto => Method::Auto,
            MethodArg::Direct => Method::Direct,
            MethodArg::Accelerated => Method::Accelerated,
        })
        .with_tol(args.tol)
        .with_delta(args.delta);
    // Parameter-domain errors are usage errors; anything the summation
    // itself reports is a computation failure.
    let value = zeta_evaluate(&query).map_err(|e| match e {
        qeg::Error::InvalidArgument(_)
        | qeg::Error::ExcludedArgument { .. }
        | qeg::Error::Divergence(_)
        | qeg::Error::MethodUnavailable { .. } => usage(e.to_string()),
        other => Failure::Computation(other.to_string()),
    })?;
    let rows = [ZetaRow {
        s: complex_str(&s),
        q: f64_str(q),
        w: f64_str(w),
        r: args.r,
        x: x.map(f64_str),
        value: ZetaValueJson {
            re: value.value.re,
            im: value.value.im,
        },
        method: method_name(value.method),
        error_estimate: bound_str(value.error_estimate),
        terms: value.terms,
    }];
    finish(&rows, &[], &args.output)
}

#[derive(Serialize)]
struct WittRowOut {
    n: u32,
    level: u32,
    difference: String,
    valuation: String,
}

impl Record for WittRowOut {
    fn columns() -> &'static [&'static str] {
        &["n", "level", "difference", "valuation"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.level.to_string(),
            self.difference.clone(),
            self.valuation.clone(),
        ]
    }
}

fn cmd_witt(args: &WittArgs) -> Result<(), Failure> {
    let indices = parse::index_range(&args.n).map_err(usage)?;
    let q = parse::rational(&args.q).map_err(usage)?;
    let w = parse::rational(&args.w).map_err(usage)?;
    if args.levels == 0 {
        return Err(usage("--levels must be >= 1"));
    }
    let ctx = QContext::new(q, w, args.r).map_err(|e| usage(e.to_string()))?;
    let levels: Vec<u32> = (1..=args.levels).collect();
    let mut rows = Vec::new();
    let mut monotone_failures = Vec::new();
    for &n in &indices {
        // Precondition violations (p not an odd prime, congruence misses)
        // surface before any level is computed.
        let table = witt_verify(args.p, &ctx, n, &levels)
            .map_err(|e| usage(e.to_string()))?;
        let valuations: Vec<_> = table.iter().map(|row| row.valuation).collect();
        if args.check && !strictly_increasing(&valuations) {
            monotone_failures.push(format!(
                "n = {n}: valuations {} do not strictly increase",
                valuations
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ));
        }
        for row in table {
            rows.push(WittRowOut {
                n,
                level: row.level,
                difference: rat_str(&row.difference),
                valuation: row.valuation.to_string(),
            });
        }
    }
    let text = render::render(&rows, args.output.format);
    emit(&text, args.output.out.as_deref()).map_err(Failure::Computation)?;
    if monotone_failures.is_empty() {
        Ok(())
    } else {
        for message in &monotone_failures {
            eprintln!("error: {message}");
        }
        Err(Failure::Computation(format!(
            "monotonicity check failed for {} of {} indices",
            monotone_failures.len(),
            indices.len()
        )))
    }
}

#[derive(Serialize)]
struct CoeffRow {
    k: usize,
    coefficient: String,
}

impl Record for CoeffRow {
    fn columns() -> &'static [&'static str] {
        &["k", "coefficient"]
    }

    fn cells(&self) -> Vec<String> {
        vec![self.k.to_string(), self.coefficient.clone()]
    }
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let w = parse::rational(&args.w).map_err(usage)?;
    let series = match args.family {
        TableFamily::Euler => classical_euler_series(&w, args.r, args.x, args.order),
        TableFamily::Genocchi => classical_genocchi_series(&w, args.r, args.x, args.order),
        TableFamily::CosGenocchi => {
            let q_text = args.q.as_deref().ok_or_else(|| {
                usage("--family cos-genocchi requires --q")
            })?;
            let q = parse::rational(q_text).map_err(usage)?;
            cos_genocchi_series(args.h, args.r, &q, args.order)
        }
    }
    .map_err(|e| Failure::Computation(e.to_string()))?;
    let rows: Vec<CoeffRow> = series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| CoeffRow {
            k,
            coefficient: rat_str(c),
        })
        .collect();
    finish(&rows, &[], &args.output)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let names: Vec<&str> = if args.all {
        verify::IDENTITIES.to_vec()
    } else if args.identity.is_empty() {
        return Err(usage(format!(
            "pass --all or --identity NAME; identities: {}",
            verify::IDENTITIES.join(", ")
        )));
    } else {
        let mut names = Vec::new();
        for name in &args.identity {
            let known = verify::IDENTITIES
                .iter()
                .find(|known| **known == name.as_str())
                .ok_or_else(|| {
                    usage(format!(
                        "unknown identity `{name}`; identities: {}",
                        verify::IDENTITIES.join(", ")
                    ))
                })?;
            names.push(*known);
        }
        names
    };
    let rows: Vec<verify::VerifyRow> = names.into_iter().map(verify::run).collect();
    let failed = rows.iter().filter(|row| !row.passed()).count();
    let text = render::render(&rows, args.output.format);
    emit(&text, args.output.out.as_deref()).map_err(Failure::Computation)?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Computation(format!(
            "{failed} of {} identities failed",
            rows.len()
        )))
    }
}
