//! The `paramcat` command line: evaluate circuits, compare them, run the law
//! suite, and query entailment graphs.
//!
//! [`run`] does all the work and returns the exit code with both output
//! streams, so tests can drive it without spawning a process.

use std::fmt::Write as _;
use std::fs;

use clap::{Parser, Subcommand, ValueEnum};
use paramcat::circuit::{self, Circuit, CircuitError};
use paramcat::lattice::{param_graph_named, parse_lattice_spec, LatticeError};
use paramcat::matrix::{
    format_matrix_text, phase_normalized_deviation, DenseSampler, MatrixBackend, MatrixRecord, PermutationSampler,
    TensorMutation,
};
use paramcat::param::{check_laws, EquivConfig, EquivStatus, EquivVerdict, LawConfig, LawReport};
use paramcat::{Param, ParamPoint, ParamSpace};
use serde::Serialize;

pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const DIMENSION: i32 = 2;
    pub const ARITY: i32 = 3;
    pub const INEQUIVALENT: i32 = 4;
    pub const LAWS_FAILED: i32 = 5;
    pub const LATTICE_INVALID: i32 = 6;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "structured")]
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SamplerKind {
    Dense,
    Permutation,
}

#[derive(Debug, Parser)]
#[command(
    name = "paramcat",
    version,
    about = "Parameterized circuits, equivalence checks and entailment graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the matrix a circuit denotes at one parameter point.
    Eval {
        file: String,
        /// Comma-separated angles in radians, one per declared parameter.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        theta: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare two circuits at seeded random parameter points.
    Check {
        left: String,
        right: String,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10, value_parser = positive_float)]
        tol: f64,
        /// Ignore a global phase when comparing.
        #[arg(long)]
        phase_invariant: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the category law suite on the matrix backend.
    Laws {
        #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10, value_parser = positive_float)]
        tol: f64,
        /// Largest object dimension sampled.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=16))]
        max_dim: u64,
        /// Arity of the parameter space.
        #[arg(long, default_value_t = 2)]
        arity: usize,
        #[arg(long, value_enum, default_value_t = SamplerKind::Dense)]
        sampler: SamplerKind,
        /// Test hook: tensor products swap the order of their input factors.
        #[arg(long, hide = true)]
        corrupt_tensor: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the edges entailed at a level of an enriched graph.
    Lattice {
        spec: String,
        /// Element name; defaults to the top element.
        #[arg(long)]
        level: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn positive_float(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        Ok(_) => Err("must be a finite number greater than 0".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// A command that could not produce its normal output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

fn fail(code: i32, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

impl From<CircuitError> for Failure {
    fn from(e: CircuitError) -> Self {
        let code = if e.is_dimension() { exit::DIMENSION } else { exit::INPUT };
        fail(code, e.to_string())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(code, text)
            };
        }
    };
    let result = match cli.command {
        Command::Eval { file, theta, format } => cmd_eval(&file, &theta, format),
        Command::Check {
            left,
            right,
            samples,
            seed,
            tol,
            phase_invariant,
            format,
        } => {
            let config = EquivConfig {
                samples: samples as usize,
                seed,
                tol,
            };
            cmd_check(&left, &right, &config, phase_invariant, format)
        }
        Command::Laws {
            trials,
            seed,
            tol,
            max_dim,
            arity,
            sampler,
            corrupt_tensor,
            format,
        } => {
            let config = LawConfig {
                trials: trials as usize,
                seed,
                tol,
            };
            let options = LawOptions {
                max_dim: max_dim as usize,
                arity,
                sampler,
                corrupt_tensor,
            };
            Ok(cmd_laws(&config, &options, format))
        }
        Command::Lattice { spec, level, format } => cmd_lattice(&spec, level.as_deref(), format),
    };
    match result {
        Ok(outcome) => outcome,
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(exit::INPUT, format!("cannot read `{path}`: {e}")))
}

fn load_file(path: &str) -> Result<Circuit, Failure> {
    let text = read(path)?;
    circuit::load(&text).map_err(|e| {
        let f = Failure::from(e);
        // located errors already start with `line:col`
        let sep = if f.message.starts_with(|c: char| c.is_ascii_digit()) {
            ""
        } else {
            " "
        };
        fail(f.code, format!("{path}:{sep}{}", f.message))
    })
}

/// Parses a `--theta` list. Plain decimal numbers only.
pub fn parse_theta(text: &str) -> Result<Vec<f64>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|item| {
            let item = item.trim();
            match item.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(format!("`{item}` is not a finite number")),
            }
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("records serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    command: &'static str,
    theta: &'a ParamPoint,
    matrix: MatrixRecord,
}

pub fn cmd_eval(file: &str, theta: &str, format: Format) -> Result<Outcome, Failure> {
    let c = load_file(file)?;
    let coords = parse_theta(theta).map_err(|e| fail(exit::INPUT, format!("--theta: {e}")))?;
    let arity = c.param.space().arity();
    if coords.len() != arity {
        return Err(fail(
            exit::ARITY,
            format!(
                "`{file}` declares {arity} parameter(s) but --theta has {}",
                coords.len()
            ),
        ));
    }
    let point = ParamPoint::new(coords).map_err(|e| fail(exit::INPUT, e.to_string()))?;
    let m = c
        .param
        .eval_at(&c.mor, &point)
        .map_err(|e| fail(exit::INPUT, e.to_string()))?;
    let out = match format {
        Format::Text => format_matrix_text(&m),
        Format::Json => to_json(&EvalRecord {
            command: "eval",
            theta: &point,
            matrix: MatrixRecord::from(&m),
        }),
    };
    Ok(Outcome::ok(exit::OK, out))
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    command: &'static str,
    seed: u64,
    phase_invariant: bool,
    verdict: &'a EquivVerdict,
}

fn render_verdict(v: &EquivVerdict) -> String {
    let mut s = String::new();
    match v.status {
        EquivStatus::Equivalent => {
            let _ = writeln!(
                s,
                "equivalent: {} points agree within {:e} (max deviation {:e})",
                v.samples_used, v.tolerance, v.max_deviation
            );
        }
        EquivStatus::Inequivalent => {
            let _ = writeln!(s, "inequivalent after {} points", v.samples_used);
            if let Some(cx) = &v.counterexample {
                let _ = writeln!(s, "counterexample theta = {}", cx.point);
                let _ = writeln!(s, "deviation {:e} exceeds tolerance {:e}", cx.deviation, v.tolerance);
            }
        }
        EquivStatus::DimensionMismatch => {
            let _ = writeln!(
                s,
                "dimension mismatch: {} -> {} vs {} -> {}",
                v.left.dom, v.left.cod, v.right.dom, v.right.cod
            );
        }
    }
    s
}

pub fn cmd_check(
    left: &str,
    right: &str,
    config: &EquivConfig,
    phase_invariant: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    let a = load_file(left)?;
    let b = load_file(right)?;
    let (na, nb) = (a.param.space().arity(), b.param.space().arity());
    if na != nb {
        return Err(fail(
            exit::ARITY,
            format!("`{left}` declares {na} parameter(s) but `{right}` declares {nb}"),
        ));
    }
    let verdict = if phase_invariant {
        a.param
            .check_equiv_with(&a.mor, &b.mor, config, phase_normalized_deviation)
    } else {
        a.param.check_equiv(&a.mor, &b.mor, config)
    }
    .map_err(|e| fail(exit::INPUT, e.to_string()))?;
    let code = match verdict.status {
        EquivStatus::Equivalent => exit::OK,
        EquivStatus::Inequivalent => exit::INEQUIVALENT,
        EquivStatus::DimensionMismatch => exit::DIMENSION,
    };
    let out = match format {
        Format::Text => render_verdict(&verdict),
        Format::Json => to_json(&CheckRecord {
            command: "check",
            seed: config.seed,
            phase_invariant,
            verdict: &verdict,
        }),
    };
    Ok(Outcome::ok(code, out))
}

#[derive(Debug, Clone, Copy)]
pub struct LawOptions {
    pub max_dim: usize,
    pub arity: usize,
    pub sampler: SamplerKind,
    pub corrupt_tensor: bool,
}

impl Default for LawOptions {
    fn default() -> Self {
        LawOptions {
            max_dim: 4,
            arity: 2,
            sampler: SamplerKind::Dense,
            corrupt_tensor: false,
        }
    }
}

pub fn law_report(config: &LawConfig, options: &LawOptions) -> LawReport {
    let backend = if options.corrupt_tensor {
        MatrixBackend::with_mutation(TensorMutation::SwapArguments)
    } else {
        MatrixBackend::new()
    };
    let param = Param::new(backend, ParamSpace::new(options.arity));
    match options.sampler {
        SamplerKind::Dense => check_laws(&param, &DenseSampler::new(options.max_dim), config),
        SamplerKind::Permutation => check_laws(&param, &PermutationSampler::new(options.max_dim), config),
    }
}

#[derive(Serialize)]
struct LawsRecord<'a> {
    command: &'static str,
    max_dim: usize,
    arity: usize,
    report: &'a LawReport,
}

fn render_laws(report: &LawReport) -> String {
    let width = report.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for e in &report.entries {
        let _ = writeln!(
            s,
            "{:<width$}  {}  max deviation {:e}  tol {:e}",
            e.name,
            if e.passed { "pass" } else { "FAIL" },
            e.max_deviation,
            e.tolerance,
        );
        if let Some(cx) = &e.counterexample {
            let _ = writeln!(
                s,
                "{:<width$}  trial {} at theta = {}: {} (deviation {:e})",
                "", cx.trial, cx.point, cx.detail, cx.deviation
            );
        }
    }
    let failed = report.entries.iter().filter(|e| !e.passed).count();
    let _ = writeln!(
        s,
        "{} of {} laws passed ({} trials each, seed {})",
        report.entries.len() - failed,
        report.entries.len(),
        report.trials,
        report.seed
    );
    s
}

pub fn cmd_laws(config: &LawConfig, options: &LawOptions, format: Format) -> Outcome {
    let report = law_report(config, options);
    let code = if report.all_passed() {
        exit::OK
    } else {
        exit::LAWS_FAILED
    };
    let out = match format {
        Format::Text => render_laws(&report),
        Format::Json => to_json(&LawsRecord {
            command: "laws",
            max_dim: options.max_dim,
            arity: options.arity,
            report: &report,
        }),
    };
    Outcome::ok(code, out)
}

#[derive(Serialize)]
struct LatticeRecord<'a> {
    command: &'static str,
    level: &'a str,
    edges: Vec<[&'a str; 2]>,
}

pub fn cmd_lattice(spec: &str, level: Option<&str>, format: Format) -> Result<Outcome, Failure> {
    let text = read(spec)?;
    let parsed = parse_lattice_spec(&text).map_err(|e| match e {
        LatticeError::Invalid(_) => fail(exit::LATTICE_INVALID, format!("{spec}: {e}")),
        other => fail(exit::INPUT, format!("{spec}: {other}")),
    })?;
    let level = level.unwrap_or_else(|| parsed.lattice.name(parsed.lattice.top()));
    let edges =
        param_graph_named(&parsed.lattice, &parsed.graph, level).map_err(|e| fail(exit::INPUT, e.to_string()))?;
    let out = match format {
        Format::Text => edges.to_string(),
        Format::Json => to_json(&LatticeRecord {
            command: "lattice",
            level,
            edges: edges.edges().iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect(),
        }),
    };
    Ok(Outcome::ok(exit::OK, out))
}
