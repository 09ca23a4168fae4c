//! Command-line front end. [`run`] returns `(exit code, stdout, stderr)` so
//! the binary stays a thin wrapper and the surface is testable in-process.
//!
//! Exit codes: 0 verified, 1 parse or internal error, 2 precondition
//! rejected, 3 indeterminate or not certified.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use indexmap::IndexMap;
use rug::Integer;
use serde::{Deserialize, Serialize};

use crate::algebraic::{AlgebraicError, AlgebraicNumber};
use crate::certificate::{write_checks, BoundCertificate, CertificateRecord, CheckRecord, IntervalRecord, SCHEMA};
use crate::laurent::{EngineError, TwoLogInstance};
use crate::numerics::{decimal_to_rational, Precision};
use crate::optimizer::{optimize, OptimizerError, SearchConfig};
use crate::theorem2::{
    arg_power_bound, build_parameters, check_preconditions, compare_lmn, compute_inputs, paper_suite, replay_escalating,
    theorem2_bound, PipelineError, ReplayContext, ReplayReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_UNCERTIFIED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "twolog", version, about = "Certified lower bounds for linear forms in two logarithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputOpts,
}

#[derive(Args, Debug, Clone)]
struct OutputOpts {
    /// Significant digits printed for each enclosure endpoint.
    #[arg(long, global = true, default_value_t = 15)]
    digits: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Working precision in bits; escalation may raise it.
    #[arg(long, global = true, env = "TWOLOG_PRECISION_BITS", default_value_t = 128)]
    precision_bits: u32,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct AlphaArgs {
    /// Integer coefficients of the minimal polynomial, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    minpoly: String,
    /// Approximate root as "re,im".
    #[arg(long, allow_hyphen_values = true)]
    root: Option<String>,
    /// Accept the polynomial as irreducible without checking.
    #[arg(long)]
    trusted: bool,
}

#[derive(Args, Debug, Clone)]
struct PairArgs {
    #[command(flatten)]
    alpha: AlphaArgs,
    // Option so that an inadmissible alpha is reported before a missing b
    /// Positive coefficient of pi i/2.
    #[arg(long)]
    b1: Option<Integer>,
    /// Positive coefficient of log(alpha).
    #[arg(long)]
    b2: Option<Integer>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lower bound for log|b2 log(alpha) - b1 pi i/2|.
    Bound(PairArgs),
    /// Lower bound for log|arg(alpha^n)|.
    ArgPower {
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long)]
        n: Integer,
    },
    /// Re-check the constant chain for one instance or the built-in grid.
    Replay {
        #[arg(long)]
        paper_suite: bool,
        #[arg(long, allow_hyphen_values = true)]
        minpoly: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        root: Option<String>,
        #[arg(long)]
        trusted: bool,
        #[arg(long)]
        b1: Option<Integer>,
        #[arg(long)]
        b2: Option<Integer>,
    },
    /// Grid search over (rho, mu, L, R1) for the best certified bound.
    Optimize {
        #[command(flatten)]
        pair: PairArgs,
        /// Comma-separated decimals.
        #[arg(long)]
        rho_grid: Option<String>,
        #[arg(long)]
        mu_grid: Option<String>,
        #[arg(long)]
        l_min: Option<u64>,
        #[arg(long)]
        l_max: Option<u64>,
        #[arg(long, default_value_t = 3)]
        r1_min: u64,
        #[arg(long, default_value_t = 6)]
        r1_max: u64,
        #[arg(long, default_value_t = 5000)]
        max_candidates: usize,
    },
    /// The bound next to the earlier closed-form estimate.
    CompareLmn(PairArgs),
}

/// Outcome of one invocation.
struct Outcome {
    code: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn fail(code: i32, msg: impl Into<String>) -> Self {
        let mut err = msg.into();
        err.push('\n');
        Outcome { code, out: String::new(), err }
    }
}

fn algebraic_code(e: &AlgebraicError) -> i32 {
    match e {
        AlgebraicError::Parse(_) | AlgebraicError::Numerics(_) => EXIT_ERROR,
        AlgebraicError::Indeterminate(_) => EXIT_UNCERTIFIED,
        _ => EXIT_REJECTED,
    }
}

fn pipeline_code(e: &PipelineError) -> i32 {
    match e {
        PipelineError::Rejected(_) => EXIT_REJECTED,
        PipelineError::Indeterminate(_) | PipelineError::NotCertified(_) => EXIT_UNCERTIFIED,
        PipelineError::Algebraic(a) => algebraic_code(a),
        PipelineError::Engine(x) => engine_code(x),
        PipelineError::Numerics(_) => EXIT_ERROR,
    }
}

fn engine_code(e: &EngineError) -> i32 {
    match e {
        EngineError::InvalidInstance(_) | EngineError::InvalidParams(_) => EXIT_REJECTED,
        EngineError::NotVerified(_) => EXIT_UNCERTIFIED,
        EngineError::Algebraic(a) => algebraic_code(a),
        EngineError::Numerics(_) => EXIT_ERROR,
    }
}

fn parse_alpha(a: &AlphaArgs) -> Result<AlgebraicNumber, Outcome> {
    AlgebraicNumber::parse(&a.minpoly, a.root.as_deref(), a.trusted).map_err(|e| Outcome::fail(algebraic_code(&e), e.to_string()))
}

/// `alpha` and both coefficients, or the reason they are unusable.
fn parse_pair(pair: &PairArgs) -> Result<(AlgebraicNumber, Integer, Integer), Outcome> {
    let alpha = parse_alpha(&pair.alpha)?;
    match (&pair.b1, &pair.b2) {
        (Some(b1), Some(b2)) => Ok((alpha, b1.clone(), b2.clone())),
        _ => {
            check_preconditions(&alpha).map_err(|e| Outcome::fail(pipeline_code(&e), e.to_string()))?;
            Err(Outcome::fail(EXIT_ERROR, "both --b1 and --b2 are required"))
        }
    }
}

fn render_cert(cert: &BoundCertificate, o: &OutputOpts) -> String {
    let rec = cert.to_record(o.digits);
    match o.format {
        Format::Json => rec.to_json() + "\n",
        Format::Text => rec.to_text(),
    }
}

fn certificate_outcome(r: Result<BoundCertificate, PipelineError>, o: &OutputOpts) -> Outcome {
    match r {
        Ok(c) => Outcome { code: EXIT_OK, out: render_cert(&c, o), err: String::new() },
        Err(PipelineError::NotCertified(c)) => Outcome {
            code: EXIT_UNCERTIFIED,
            out: render_cert(&c, o),
            err: format!("not certified: {}\n", c.unverified().join(", ")),
        },
        Err(e) => Outcome::fail(pipeline_code(&e), e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayPointRecord {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision_bits: Option<u32>,
    pub checks: IndexMap<String, CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayRecord {
    pub schema: String,
    pub all_verified: bool,
    pub points: Vec<ReplayPointRecord>,
}

fn replay_point(
    label: String,
    rep: Option<&ReplayReport>,
    note: Option<String>,
    error: Option<String>,
    digits: usize,
) -> ReplayPointRecord {
    ReplayPointRecord {
        label,
        note,
        error,
        precision_bits: rep.map(|r| r.precision.bits()),
        checks: rep
            .map(|r| r.checks.iter().map(|c| (c.name.clone(), CheckRecord::new(&c.entry, digits))).collect())
            .unwrap_or_default(),
    }
}

fn render_replay(rec: &ReplayRecord, f: Format) -> String {
    if f == Format::Json {
        return serde_json::to_string_pretty(rec).expect("serialisable") + "\n";
    }
    let mut out = String::new();
    let _ = writeln!(out, "schema: {}", rec.schema);
    let _ = writeln!(out, "all_verified: {}", rec.all_verified);
    for p in &rec.points {
        let _ = writeln!(out, "point: {}", p.label);
        if let Some(n) = &p.note {
            let _ = writeln!(out, "  note: {n}");
        }
        if let Some(e) = &p.error {
            let _ = writeln!(out, "  error: {e}");
        }
        if let Some(b) = p.precision_bits {
            let _ = writeln!(out, "  precision_bits: {b}");
        }
        write_checks(&mut out, "  checks", &p.checks);
    }
    out
}

fn run_replay(cmd: &Command, o: &OutputOpts, p: Precision) -> Outcome {
    let Command::Replay { paper_suite: suite, minpoly, root, trusted, b1, b2 } = cmd else { unreachable!() };
    let points = if *suite {
        paper_suite(p)
            .into_iter()
            .map(|pt| replay_point(format!("D={} h={}", pt.d, pt.h), pt.report.as_ref(), pt.note, pt.error, o.digits))
            .collect::<Vec<_>>()
    } else {
        let (Some(mp), Some(b1), Some(b2)) = (minpoly, b1, b2) else {
            return Outcome::fail(EXIT_ERROR, "replay needs --paper-suite or all of --minpoly, --b1, --b2");
        };
        let alpha = match parse_alpha(&AlphaArgs { minpoly: mp.clone(), root: root.clone(), trusted: *trusted }) {
            Ok(a) => a,
            Err(o) => return o,
        };
        let inputs = match compute_inputs(&alpha, b1, b2, p) {
            Ok(i) => i,
            Err(e) => return Outcome::fail(pipeline_code(&e), e.to_string()),
        };
        let state = match build_parameters(&inputs, p) {
            Ok(s) => s,
            Err(e) => return Outcome::fail(pipeline_code(&e), e.to_string()),
        };
        let rebuild = |q: Precision| -> Result<_, PipelineError> {
            let inp = compute_inputs(&alpha, b1, b2, q)?;
            let st = build_parameters(&inp, q)?;
            Ok((st, ReplayContext::from_inputs(&inp)))
        };
        let rep = replay_escalating(&ReplayContext::from_inputs(&inputs), rebuild, &state, p);
        vec![replay_point(format!("b1={} b2={} (D={})", inputs.b1, inputs.b2, inputs.d), Some(&rep), None, None, o.digits)]
    };
    let all = points.iter().all(|p| p.error.is_none() && p.checks.values().all(|c| c.status.is_verified()));
    let rec = ReplayRecord { schema: SCHEMA.into(), all_verified: all, points };
    let mut err = String::new();
    for pt in &rec.points {
        let bad: Vec<&str> = pt.checks.iter().filter(|(_, c)| !c.status.is_verified()).map(|(n, _)| n.as_str()).collect();
        if !bad.is_empty() {
            let _ = writeln!(err, "{}: not verified: {}", pt.label, bad.join(", "));
        }
        if let Some(e) = &pt.error {
            let _ = writeln!(err, "{}: {e}", pt.label);
        }
    }
    Outcome { code: if all { EXIT_OK } else { EXIT_UNCERTIFIED }, out: render_replay(&rec, o.format), err }
}

fn parse_grid(s: &str) -> Result<Vec<rug::Rational>, Outcome> {
    s.split(',')
        .map(|t| decimal_to_rational(t.trim()).map_err(|e| Outcome::fail(EXIT_ERROR, format!("bad grid value {t:?}: {e}"))))
        .collect()
}

fn run_optimize(cmd: &Command, p: Precision, o: &OutputOpts) -> Outcome {
    let Command::Optimize { pair, rho_grid, mu_grid, l_min, l_max, r1_min, r1_max, max_candidates } = cmd else { unreachable!() };
    let (alpha, b1, b2) = match parse_pair(pair) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let inst = match TwoLogInstance::imaginary_unit_shape(alpha.clone(), b1.clone(), b2.clone()) {
        Ok(i) => i,
        Err(e) => return Outcome::fail(engine_code(&e), e.to_string()),
    };
    // centre L on the fixed recipe when it applies
    let center = compute_inputs(&alpha, &b1, &b2, p).and_then(|i| build_parameters(&i, p)).map(|s| s.l).unwrap_or(18);
    let mut cfg = SearchConfig::around(center, 3, p);
    if let Some(g) = rho_grid {
        match parse_grid(g) {
            Ok(v) => cfg.rho_grid = v,
            Err(o) => return o,
        }
    }
    if let Some(g) = mu_grid {
        match parse_grid(g) {
            Ok(v) => cfg.mu_grid = v,
            Err(o) => return o,
        }
    }
    cfg.l_range = l_min.unwrap_or(*cfg.l_range.start())..=l_max.unwrap_or(*cfg.l_range.end());
    cfg.r1_range = *r1_min..=*r1_max;
    cfg.max_candidates = *max_candidates;
    match optimize(&inst, &cfg) {
        Ok(c) => Outcome { code: EXIT_OK, out: render_cert(&c, o), err: String::new() },
        Err(OptimizerError::InvalidConfig(s)) => Outcome::fail(EXIT_ERROR, format!("invalid search configuration: {s}")),
        Err(OptimizerError::NoCandidate { tried, best_failing }) => {
            let mut msg = format!("no certified candidate among {tried}; closest misses:");
            for f in best_failing {
                let m = f.margin.map(|m| format!(" margin {m}")).unwrap_or_default();
                let _ = write!(msg, "\n  {}: {} {}{m}", f.params, f.condition, f.status);
            }
            Outcome::fail(EXIT_UNCERTIFIED, msg)
        }
        Err(OptimizerError::Pipeline(e)) => certificate_outcome(Err(e), o),
        Err(OptimizerError::Engine(e)) => Outcome::fail(engine_code(&e), e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LmnRecord {
    pub a: IntervalRecord,
    pub h: IntervalRecord,
    pub bound: IntervalRecord,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonRecord {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem2: Option<CertificateRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem2_error: Option<String>,
    pub lmn: LmnRecord,
}

fn run_compare(pair: &PairArgs, p: Precision, o: &OutputOpts) -> Outcome {
    let (alpha, b1, b2) = match parse_pair(pair) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let cmp = match compare_lmn(&alpha, &b1, &b2, p) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(pipeline_code(&e), e.to_string()),
    };
    let iv = |x| IntervalRecord::new(x, o.digits);
    let (code, theorem2, theorem2_error) = match &cmp.theorem2 {
        Ok(c) => (EXIT_OK, Some(c.to_record(o.digits)), None),
        Err(PipelineError::NotCertified(c)) => (EXIT_UNCERTIFIED, Some(c.to_record(o.digits)), Some("not certified".to_string())),
        Err(e) => (pipeline_code(e), None, Some(e.to_string())),
    };
    let rec = ComparisonRecord {
        schema: SCHEMA.into(),
        theorem2,
        theorem2_error,
        lmn: LmnRecord { a: iv(&cmp.lmn_a), h: iv(&cmp.lmn_h), bound: iv(&cmp.lmn_bound), label: cmp.label.clone() },
    };
    let out = match o.format {
        Format::Json => serde_json::to_string_pretty(&rec).expect("serialisable") + "\n",
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "schema: {}", rec.schema);
            let _ = writeln!(s, "[theorem 2]");
            match (&rec.theorem2, &rec.theorem2_error) {
                (Some(c), _) => s.push_str(&c.to_text()),
                (None, Some(e)) => {
                    let _ = writeln!(s, "error: {e}");
                }
                _ => {}
            }
            let _ = writeln!(s, "[lmn]");
            let _ = writeln!(s, "label: {}", rec.lmn.label);
            for (k, r) in [("a", &rec.lmn.a), ("h", &rec.lmn.h), ("bound", &rec.lmn.bound)] {
                let _ = writeln!(s, "{k}: [{}, {}]", r.lo, r.hi);
            }
            s
        }
    };
    let err = rec.theorem2_error.map(|e| e + "\n").unwrap_or_default();
    Outcome { code, out, err }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK { (code, text, String::new()) } else { (code, String::new(), text) };
        }
    };
    let o = &cli.out;
    let p = match Precision::new(o.precision_bits) {
        Ok(p) => p,
        Err(e) => return (EXIT_ERROR, String::new(), format!("{e}\n")),
    };
    let r = match &cli.command {
        Command::Bound(pair) => match parse_pair(pair) {
            Ok((a, b1, b2)) => certificate_outcome(theorem2_bound(&a, &b1, &b2, p), o),
            Err(e) => e,
        },
        Command::ArgPower { alpha, n } => match parse_alpha(alpha) {
            Ok(a) => certificate_outcome(arg_power_bound(&a, n, p), o),
            Err(e) => e,
        },
        c @ Command::Replay { .. } => run_replay(c, o, p),
        c @ Command::Optimize { .. } => run_optimize(c, p, o),
        Command::CompareLmn(pair) => run_compare(pair, p, o),
    };
    (r.code, r.out, r.err)
}
