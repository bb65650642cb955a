//! Batch driver: every verification as a subcommand writing JSON lines.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage error,
//! 3 caps make the run infeasible.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::eval_maps::{check_invariance, scaling_check, verify_relations, EvalContext, EvalMethod, RelationSweep};
use crate::exactalg::FieldSpec;
use crate::iso_maps::{check_skew_witness, verify_composites};
use crate::kernel_lab::{dimension_table, format_table, KernelCache, MAX_COMPONENT_DEGREE};
use crate::matform::Group;
use crate::quiver_rel::{build_relation, RelationKind};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Largest matrix size accepted by `verify`.
pub const MAX_N: usize = 8;
/// Longest substituted or sampled word accepted by `verify`.
pub const MAX_WORD_LEN: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "spinv", version, about = "Exact checks of trace identities for matrix invariants")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a relation family as a signed sum of path products.
    Expand(ExpandArgs),
    /// Run one verification sweep.
    Verify {
        #[command(subcommand)]
        scope: Scope,
    },
    /// Check the `2^k` scaling of the skew substitution.
    ScalingCheck(ScalingArgs),
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long = "type", value_parser = parse_kind)]
    pub kind: RelationKind,
    #[arg(long)]
    pub t: u32,
    #[arg(long)]
    pub r: u32,
}

#[derive(Debug, Subcommand)]
pub enum Scope {
    /// Vanishing of the relation families under `phi_n`.
    Relations(RelationArgs),
    /// Invariance of `sigma_t(X_w)` under sampled group elements.
    Invariance(RunConfig),
    /// The composite identities between the symplectic and `I_n` sides.
    Iso(RunConfig),
    /// Kernel components against the span of relation multiples.
    Kernel(KernelArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, value_parser = parse_group, default_value = "sp")]
    pub group: Group,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    /// `q` or `gf:<p>`.
    #[arg(long, value_parser = parse_field, default_value = "gf:7")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub max_word_len: Option<usize>,
    /// Largest `t + 2r` of a relation.
    #[arg(long)]
    pub max_tr: Option<u32>,
    /// Largest total degree of a kernel component.
    #[arg(long)]
    pub maxdeg: Option<u32>,
    /// Sampled group elements or skew matrices.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Record wall-clock milliseconds (reports stop being reproducible).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct RelationArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, value_parser = parse_method, default_value = "auto")]
    pub method: EvalMethod,
    /// Also evaluate relations below the threshold, expecting nonzero.
    #[arg(long)]
    pub controls: bool,
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Directory of cached components.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, value_parser = parse_field, default_value = "gf:7")]
    pub field: FieldSpec,
    #[arg(long, default_value_t = 3)]
    pub kmax: u32,
    #[arg(long, default_value_t = 3)]
    pub per_k: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_group(s: &str) -> std::result::Result<Group, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_kind(s: &str) -> std::result::Result<RelationKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_method(s: &str) -> std::result::Result<EvalMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl RunConfig {
    fn check(&self) -> Result<()> {
        if self.n == 0 || self.d == 0 {
            return Err(Error::InvalidArgument("n and d must be positive".to_string()));
        }
        if self.group == Group::Sp && self.n % 2 == 1 {
            return Err(Error::OddSize(self.n));
        }
        if self.n > MAX_N {
            return Err(Error::CapExceeded(format!("n = {} > {MAX_N}", self.n)));
        }
        if self.max_word_len.is_some_and(|l| l > MAX_WORD_LEN) {
            return Err(Error::CapExceeded(format!("word length above {MAX_WORD_LEN}")));
        }
        if self.max_tr.is_some_and(|m| m > self.n as u32 + 4) {
            return Err(Error::CapExceeded(format!("t + 2r above n + 4 = {}", self.n + 4)));
        }
        if self.maxdeg.is_some_and(|m| m > MAX_COMPONENT_DEGREE) {
            return Err(Error::CapExceeded(format!("component degree above {MAX_COMPONENT_DEGREE}")));
        }
        Ok(())
    }

    fn ctx(&self) -> Result<EvalContext> {
        self.check()?;
        EvalContext::new(self.group, self.n, self.d, self.field)
    }
}

/// Serialized writer for report lines.
struct Sink(Box<dyn Write>);

impl Sink {
    fn open(out: &Option<PathBuf>) -> Result<Sink> {
        Ok(Sink(match out {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        }))
    }

    fn line(&mut self, v: &impl Serialize) -> Result<()> {
        writeln!(self.0, "{}", serde_json::to_string(v).expect("serializable"))?;
        Ok(())
    }

    fn finish(mut self, scope: &str, checks: usize, failures: usize) -> Result<bool> {
        self.line(&json!({"scope": scope, "checks": checks, "failures": failures, "passed": failures == 0}))?;
        self.0.flush()?;
        Ok(failures == 0)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded(_) => EXIT_INFEASIBLE,
        Error::Io(_) | Error::Singular | Error::DivisionByZero => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_FAIL,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn execute(cmd: &Command) -> Result<bool> {
    match cmd {
        Command::Expand(a) => {
            let expr = build_relation(a.kind, a.t, a.r)?;
            println!("{}", expr.to_json());
            Ok(true)
        }
        Command::Verify { scope } => match scope {
            Scope::Relations(a) => relations(a),
            Scope::Invariance(c) => invariance(c),
            Scope::Iso(c) => iso(c),
            Scope::Kernel(a) => kernel(a),
        },
        Command::ScalingCheck(a) => scaling(a),
    }
}

fn relations(a: &RelationArgs) -> Result<bool> {
    let mut sweep = RelationSweep::new(a.run.ctx()?);
    if let Some(l) = a.run.max_word_len {
        sweep.max_word_len = l;
    }
    if let Some(m) = a.run.max_tr {
        sweep.max_tr = m;
    }
    sweep.method = a.method;
    sweep.controls = a.controls;
    sweep.timing = a.run.timing;
    let outcome = verify_relations(&sweep)?;
    let mut sink = Sink::open(&a.run.out)?;
    for r in &outcome.records {
        sink.line(r)?;
    }
    sink.finish("relations", outcome.records.len(), outcome.failures().count())
}

fn invariance(c: &RunConfig) -> Result<bool> {
    let ctx = c.ctx()?;
    let report = check_invariance(&ctx, c.max_word_len.unwrap_or(3), c.samples.unwrap_or(25), c.seed)?;
    let mut sink = Sink::open(&c.out)?;
    sink.line(&report)?;
    let failures = report.violations.len() + usize::from(!report.control_moved);
    sink.finish("invariance", report.checks, failures)
}

fn iso(c: &RunConfig) -> Result<bool> {
    let c = RunConfig { group: Group::Sp, ..c.clone() };
    c.check()?;
    let len = c.max_word_len.unwrap_or(3);
    let records = verify_composites(c.n, c.d, len, c.field)?;
    let mut sink = Sink::open(&c.out)?;
    let mut failures = 0;
    for r in &records {
        failures += usize::from(r.status != "pass");
        sink.line(r)?;
    }
    let mut checks = records.len();
    if c.field.is_prime_field() {
        let w = check_skew_witness(c.n, c.d, len.min(2), c.samples.unwrap_or(50), c.field, c.seed)?;
        failures += w.congruence_failures + w.substitution_failures;
        checks += w.samples * (1 + w.generators);
        sink.line(&json!({"witness": w}))?;
    }
    sink.finish("iso", checks, failures)
}

fn kernel(a: &KernelArgs) -> Result<bool> {
    let ctx = a.run.ctx()?;
    let cache = a.cache.as_ref().map(KernelCache::new).transpose()?;
    let rows = dimension_table(&ctx, a.run.maxdeg.unwrap_or(3), cache.as_ref())?;
    eprint!("{}", format_table(&rows));
    let mut sink = Sink::open(&a.run.out)?;
    let mut failures = 0;
    for r in &rows {
        failures += usize::from(!r.passed());
        let mut v: Value = serde_json::to_value(r).expect("serializable");
        v["status"] = json!(r.status());
        sink.line(&v)?;
    }
    sink.finish("kernel", rows.len(), failures)
}

fn scaling(a: &ScalingArgs) -> Result<bool> {
    let reports = scaling_check(a.n, a.d, a.field, a.kmax, a.per_k, a.seed)?;
    let mut sink = Sink::open(&a.out)?;
    let mut failures = 0;
    for r in &reports {
        failures += usize::from(!r.passed);
        sink.line(r)?;
    }
    sink.finish("scaling", reports.len(), failures)
}
