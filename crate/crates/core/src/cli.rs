//! The `quiver-strata` command line. Every command prints one JSON report.
//!
//! Exit codes: 0 success, 2 input error, 3 `α` not representable,
//! 4 internal check failed.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::error::QuiverError;
use crate::mckay::{
    cm_dim_vector, frame, gamma_data, lambda_of_c, lambda_prime, CParam, ConjugacyClass, GammaData,
    GroupKind, McKayError,
};
use crate::parameter::Parameter;
use crate::quiver::{DimVector, Quiver, QuiverSpec};
use crate::rep::{check_preprojective, format_matrix, PreprojectiveVerdict, RepresentationFile};
use crate::roots::{positive_roots_upto, ClassifiedRoot, RootClass};
use crate::sigma::{Decomposition, SigmaSolver, SigmaVerdict};
use crate::strata::{smoothness_with, strata_report_with, Smoothness, StrataReport};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "quiver-strata",
    version,
    about = "Simple dimension vectors, canonical decompositions and symplectic leaves of quiver varieties"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock timing to the report. Output is then no longer reproducible.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify every nonzero vector up to a bound as a real or imaginary root.
    Roots(RootsArgs),
    /// Test α ∈ Σ_λ and list Σ_λ up to the bound.
    Sigma(ProblemArgs),
    /// |α|_λ, the canonical decomposition and every Σ_λ-decomposition of α.
    Decompose(ProblemArgs),
    /// Whether N(λ,α) is smooth, with a witness when it is not.
    Smooth(ProblemArgs),
    /// Symplectic leaves of N(λ,α) with their dimensions.
    Leaves(ProblemArgs),
    /// Character table, McKay quiver and parameter maps of a finite subgroup of SL(2,C).
    #[command(name = "mckay-info")]
    McKayInfo(McKayArgs),
    /// Evaluate the moment map on a representation and test μ = λ.
    #[command(name = "check-rep")]
    CheckRep(CheckRepArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["quiver", "group"])))]
struct SourceArgs {
    /// Quiver JSON file: {"vertices": [...], "arrows": [[tail, head], ...]}.
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Use the framed McKay quiver of a group: cyclic:L, bindihedral:L, bintetra, binocta, binicosa.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Debug, Args)]
struct RootsArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Componentwise bound, e.g. "2,2".
    #[arg(long, allow_hyphen_values = true)]
    bound: String,
}

#[derive(Debug, Args)]
struct ProblemArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Parameter λ, one entry per vertex: "p", "p/q" or "[c0,c1,...]@N".
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "c",
        conflicts_with = "c"
    )]
    lambda: Option<String>,
    /// Group parameters "c1,c_C1,c_C2,..." (nontrivial classes in table order); needs --group and --n.
    #[arg(long, allow_hyphen_values = true, requires_all = ["group", "n"])]
    c: Option<String>,
    /// Dimension vector α.
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "n",
        conflicts_with = "n"
    )]
    alpha: Option<String>,
    /// Use α = ε_∞ + nδ on the framed McKay quiver; needs --group.
    #[arg(long, requires = "group")]
    n: Option<i64>,
    /// Enumeration box for roots; defaults to α.
    #[arg(long, allow_hyphen_values = true)]
    bound: Option<String>,
}

#[derive(Debug, Args)]
struct McKayArgs {
    #[arg(long)]
    group: String,
    /// Also report λ(c) and λ'(c); needs --n.
    #[arg(long, allow_hyphen_values = true, requires = "n")]
    c: Option<String>,
    /// Report ε_∞ + nδ and its p-value on the framed quiver.
    #[arg(long)]
    n: Option<i64>,
}

#[derive(Debug, Args)]
struct CheckRepArgs {
    /// Representation JSON file.
    #[arg(long)]
    rep: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: invalid JSON: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    McKay(#[from] McKayError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        let q = match self {
            CliError::Quiver(e) | CliError::McKay(McKayError::Quiver(e)) => e,
            CliError::McKay(McKayError::Table { .. }) => return 4,
            _ => return 2,
        };
        if q.is_internal() {
            4
        } else if matches!(q, QuiverError::NotRepresentable { .. }) {
            3
        } else {
            2
        }
    }
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Default, Serialize)]
struct InputEcho {
    #[serde(skip_serializing_if = "Option::is_none")]
    quiver: Option<QuiverSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Parameter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<DimVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<DimVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rep: Option<String>,
}

#[derive(Debug, Serialize)]
struct Timing {
    elapsed_ms: f64,
}

#[derive(Debug, Serialize)]
struct Report<'a, R> {
    command: &'static str,
    input: InputEcho,
    result: &'a R,
    schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing: Option<Timing>,
}

#[derive(Debug, Serialize)]
struct RootsResult {
    real: usize,
    imaginary: usize,
    roots: Vec<ClassifiedRoot>,
}

#[derive(Debug, Serialize)]
struct SigmaResult {
    in_sigma: bool,
    alpha_verdict: SigmaVerdict,
    r_lambda_count: usize,
    sigma: Vec<DimVector>,
}

#[derive(Debug, Serialize)]
struct ScoredDecomposition {
    #[serde(flatten)]
    decomposition: Decomposition,
    p_sum: i64,
}

#[derive(Debug, Serialize)]
struct DecomposeResult {
    alpha_norm: i64,
    canonical: Decomposition,
    decompositions: Vec<ScoredDecomposition>,
}

#[derive(Debug, Serialize)]
struct McKayResult {
    group: String,
    order: u64,
    exponent: u32,
    classes: Vec<ConjugacyClass>,
    irreps: Vec<String>,
    characters: Vec<Vec<String>>,
    natural_character: Vec<String>,
    quiver: QuiverSpec,
    delta: DimVector,
    framed_quiver: QuiverSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Parameter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_prime: Option<Parameter>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<DimVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p_alpha: Option<i64>,
}

#[derive(Debug, Serialize)]
struct CheckRepResult {
    alpha: DimVector,
    moment_map: Vec<Vec<Vec<String>>>,
    holds: bool,
    #[serde(flatten)]
    verdict: PreprojectiveVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
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
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    match dispatch(&cli, start) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(cli: &Cli, start: Instant) -> Result<String, CliError> {
    match &cli.command {
        Command::Roots(a) => {
            let (quiver, mut echo) = load_source(&a.source)?;
            let bound = parse_vector(&a.bound, "--bound")?;
            let roots = positive_roots_upto(&quiver, &bound)?;
            echo.bound = Some(bound);
            let count = |c| roots.iter().filter(|r| r.class == c).count();
            let result = RootsResult {
                real: count(RootClass::Real),
                imaginary: count(RootClass::Imaginary),
                roots,
            };
            render(cli, start, "roots", echo, &result)
        }
        Command::Sigma(a) => {
            let p = Problem::resolve(a)?;
            let mut solver = SigmaSolver::new(&p.quiver, &p.lambda, &p.bound)?;
            let verdict = solver.membership(&p.alpha)?;
            let result = SigmaResult {
                in_sigma: verdict.is_member(),
                alpha_verdict: verdict,
                r_lambda_count: solver.r_lambda().len(),
                sigma: solver.sigma().to_vec(),
            };
            render(cli, start, "sigma", p.echo, &result)
        }
        Command::Decompose(a) => {
            let p = Problem::resolve(a)?;
            let mut solver = SigmaSolver::new(&p.quiver, &p.lambda, &p.bound)?;
            let alpha_norm = solver.alpha_norm(&p.alpha)?;
            let canonical = solver.canonical_decomposition(&p.alpha)?;
            let decompositions = solver
                .decompositions(&p.alpha)?
                .into_iter()
                .map(|d| ScoredDecomposition {
                    p_sum: d.p_sum(&p.quiver),
                    decomposition: d,
                })
                .collect();
            let result = DecomposeResult {
                alpha_norm,
                canonical,
                decompositions,
            };
            render(cli, start, "decompose", p.echo, &result)
        }
        Command::Smooth(a) => {
            let p = Problem::resolve(a)?;
            let mut solver = SigmaSolver::new(&p.quiver, &p.lambda, &p.bound)?;
            let result: Smoothness = smoothness_with(&mut solver, &p.alpha)?;
            render(cli, start, "smooth", p.echo, &result)
        }
        Command::Leaves(a) => {
            let p = Problem::resolve(a)?;
            let mut solver = SigmaSolver::new(&p.quiver, &p.lambda, &p.bound)?;
            let result: StrataReport = strata_report_with(&mut solver, &p.lambda, &p.alpha)?;
            render(cli, start, "leaves", p.echo, &result)
        }
        Command::McKayInfo(a) => {
            let (g, kind) = load_group(&a.group)?;
            let framed = frame(&g);
            let mut echo = InputEcho {
                group: Some(kind.to_string()),
                n: a.n,
                ..Default::default()
            };
            let n = a.n.map(check_n).transpose()?;
            let (lambda, lambda_prime) = match (&a.c, n) {
                (Some(c), Some(n)) => {
                    let c = parse_c(c)?;
                    echo.c = Some(c_strings(&c));
                    let lam = lambda_of_c(&g, &c)?;
                    let lp = lambda_prime(&g, &lam, n)?;
                    (Some(lam), Some(lp))
                }
                _ => (None, None),
            };
            let alpha = n.map(|n| cm_dim_vector(&g, n));
            let p_alpha = alpha
                .as_ref()
                .map(|a| framed.quiver.p_value(a))
                .transpose()?;
            let result = McKayResult {
                group: kind.to_string(),
                order: g.order,
                exponent: g.exponent,
                classes: g.classes.clone(),
                irreps: g.irreps.clone(),
                characters: g
                    .characters
                    .iter()
                    .map(|row| row.iter().map(|x| x.to_canonical_string()).collect())
                    .collect(),
                natural_character: g.natural.iter().map(|x| x.to_canonical_string()).collect(),
                quiver: g.quiver.to_spec(),
                delta: g.delta.clone(),
                framed_quiver: framed.quiver.to_spec(),
                lambda,
                lambda_prime,
                alpha,
                p_alpha,
            };
            render(cli, start, "mckay-info", echo, &result)
        }
        Command::CheckRep(a) => {
            let text = read_file(&a.rep)?;
            let file: RepresentationFile =
                serde_json::from_str(&text).map_err(|source| CliError::Json {
                    path: a.rep.display().to_string(),
                    source,
                })?;
            let rep = file.to_representation()?;
            let lam = parse_parameter(&a.lambda, "--lambda")?;
            let verdict = check_preprojective(&rep, &lam)?;
            let moment_map = rep.moment_map()?.iter().map(format_matrix).collect();
            let echo = InputEcho {
                quiver: Some(file.quiver.clone()),
                lambda: Some(lam),
                alpha: Some(rep.alpha().clone()),
                rep: Some(a.rep.display().to_string()),
                ..Default::default()
            };
            let result = CheckRepResult {
                alpha: rep.alpha().clone(),
                moment_map,
                holds: verdict.holds(),
                reason: verdict.reason(),
                verdict,
            };
            render(cli, start, "check-rep", echo, &result)
        }
    }
}

fn render<R: Serialize>(
    cli: &Cli,
    start: Instant,
    command: &'static str,
    input: InputEcho,
    result: &R,
) -> Result<String, CliError> {
    let internal = |e: serde_json::Error| QuiverError::Invariant(format!("serialization: {e}"));
    let report = Report {
        command,
        input,
        result,
        schema_version: SCHEMA_VERSION,
        timing: cli.timing.then(|| Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1000.0,
        }),
    };
    let mut text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    }
    .map_err(internal)?;
    text.push('\n');
    Ok(text)
}

struct Problem {
    quiver: Quiver,
    lambda: Parameter,
    alpha: DimVector,
    bound: DimVector,
    echo: InputEcho,
}

impl Problem {
    fn resolve(a: &ProblemArgs) -> Result<Problem, CliError> {
        let (quiver, mut echo) = load_source(&a.source)?;
        let group = match &a.source.group {
            Some(s) => Some(load_group(s)?.0),
            None => None,
        };
        let n = a.n.map(check_n).transpose()?;
        echo.n = n;
        let lambda = match (&a.lambda, &a.c) {
            (Some(l), _) => parse_parameter(l, "--lambda")?,
            (None, Some(c)) => {
                let (g, n) = group
                    .as_ref()
                    .zip(n)
                    .ok_or_else(|| CliError::Input("--c needs --group and --n".into()))?;
                let c = parse_c(c)?;
                echo.c = Some(c_strings(&c));
                lambda_prime(g, &lambda_of_c(g, &c)?, n)?
            }
            (None, None) => return Err(CliError::Input("one of --lambda, --c is required".into())),
        };
        let alpha = match (&a.alpha, n) {
            (Some(s), _) => parse_vector(s, "--alpha")?,
            (None, Some(n)) => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| CliError::Input("--n needs --group".into()))?;
                cm_dim_vector(g, n)
            }
            (None, None) => return Err(CliError::Input("one of --alpha, --n is required".into())),
        };
        if alpha.len() != quiver.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: quiver.vertex_count(),
                found: alpha.len(),
            }
            .into());
        }
        if lambda.len() != quiver.vertex_count() {
            return Err(CliError::Input(format!(
                "--lambda has {} entries but the quiver has {} vertices",
                lambda.len(),
                quiver.vertex_count()
            )));
        }
        let bound = match &a.bound {
            Some(b) => parse_vector(b, "--bound")?,
            None => alpha.clone(),
        };
        echo.lambda = Some(lambda.clone());
        echo.alpha = Some(alpha.clone());
        if a.bound.is_some() {
            echo.bound = Some(bound.clone());
        }
        Ok(Problem {
            quiver,
            lambda,
            alpha,
            bound,
            echo,
        })
    }
}

fn check_n(n: i64) -> Result<i64, CliError> {
    if n < 0 {
        return Err(CliError::Input(format!("--n must be nonnegative, got {n}")));
    }
    Ok(n)
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_group(s: &str) -> Result<(GammaData, GroupKind), CliError> {
    let kind: GroupKind = s.parse()?;
    Ok((gamma_data(kind)?, kind))
}

fn load_source(src: &SourceArgs) -> Result<(Quiver, InputEcho), CliError> {
    match (&src.quiver, &src.group) {
        (Some(path), None) => {
            let text = read_file(path)?;
            let spec: QuiverSpec =
                serde_json::from_str(&text).map_err(|source| CliError::Json {
                    path: path.display().to_string(),
                    source,
                })?;
            let quiver = Quiver::from_spec(&spec)?;
            Ok((
                quiver,
                InputEcho {
                    quiver: Some(spec),
                    ..Default::default()
                },
            ))
        }
        (None, Some(group)) => {
            let (g, kind) = load_group(group)?;
            Ok((
                frame(&g).quiver,
                InputEcho {
                    group: Some(kind.to_string()),
                    ..Default::default()
                },
            ))
        }
        _ => Err(CliError::Input(
            "exactly one of --quiver, --group is required".into(),
        )),
    }
}

fn parse_vector(s: &str, flag: &str) -> Result<DimVector, CliError> {
    DimVector::parse(s).map_err(|e| CliError::Input(format!("{flag}: {e}")))
}

fn parse_parameter(s: &str, flag: &str) -> Result<Parameter, CliError> {
    Parameter::parse(s).map_err(|e| CliError::Input(format!("{flag}: {e}")))
}

fn parse_c(s: &str) -> Result<CParam, CliError> {
    let values = parse_parameter(s, "--c")?;
    CParam::from_list(values.0).ok_or_else(|| CliError::Input("--c is empty".into()))
}

fn c_strings(c: &CParam) -> Vec<String> {
    std::iter::once(&c.c1)
        .chain(&c.classes)
        .map(|x| x.to_canonical_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> serde_json::Value {
        let mut full = vec!["quiver-strata"];
        full.extend_from_slice(args);
        let out = run(full);
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn leaves_by_group() {
        let v = run_ok(&["leaves", "--group", "cyclic:2", "--c", "0,1", "--n", "2"]);
        assert_eq!(v["result"]["smooth"], false);
        let dims: Vec<i64> = v["result"]["leaves"]
            .as_array()
            .unwrap()
            .iter()
            .map(|l| l["dim"].as_i64().unwrap())
            .collect();
        assert_eq!(dims, vec![4, 2]);
        assert_eq!(v["input"]["lambda"], serde_json::json!(["0", "1", "-1"]));
    }

    #[test]
    fn smooth_generic_parameter() {
        let v = run_ok(&["leaves", "--group", "cyclic:2", "--c", "1,1/2", "--n", "2"]);
        assert_eq!(v["result"]["smooth"], true);
        assert_eq!(v["result"]["leaves"].as_array().unwrap().len(), 1);
        let v = run_ok(&["smooth", "--group", "cyclic:2", "--c", "1,1", "--n", "3"]);
        assert_eq!(v["result"]["smooth"], false);
    }

    #[test]
    fn negative_values_parse() {
        let v = run_ok(&[
            "sigma", "--group", "cyclic:2", "--lambda", "0,1,-1", "--alpha", "1,2,2",
        ]);
        assert_eq!(v["result"]["in_sigma"], false);
        assert_eq!(v["result"]["alpha_verdict"]["verdict"], "dominated");
    }

    #[test]
    fn usage_errors() {
        let out = run(["quiver-strata", "leaves", "--c", "0,1", "--n", "2"]);
        assert_eq!(out.code, 2);
        let out = run([
            "quiver-strata",
            "leaves",
            "--group",
            "cyclic:1",
            "--lambda",
            "0",
            "--alpha",
            "1",
        ]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("cyclic:1"));
    }

    #[test]
    fn not_representable_exit_code() {
        let out = run([
            "quiver-strata",
            "decompose",
            "--group",
            "cyclic:2",
            "--lambda",
            "1,0,0",
            "--alpha",
            "1,1,1",
        ]);
        assert_eq!(out.code, 3, "{}", out.stderr);
    }

    #[test]
    fn mckay_info() {
        let v = run_ok(&["mckay-info", "--group", "bintetra", "--n", "2"]);
        assert_eq!(v["result"]["order"], 24);
        assert_eq!(v["result"]["p_alpha"], 2);
        assert_eq!(
            v["result"]["delta"],
            serde_json::json!([1, 1, 1, 3, 2, 2, 2])
        );
    }

    #[test]
    fn deterministic_output() {
        let args = [
            "quiver-strata",
            "decompose",
            "--group",
            "cyclic:3",
            "--n",
            "1",
            "--c",
            "1,1/3,1/5",
        ];
        assert_eq!(run(args), run(args));
    }
}
