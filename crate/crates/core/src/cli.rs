//! Command-line front end.
//!
//! Every subcommand reads JSON from a file or standard input and writes
//! JSON (or CSV/DOT where noted) to standard output. Exit status is 0 on
//! success, 1 for domain errors and 2 for usage or parse errors; errors are
//! written to standard error as `{"error": <name>, "message": ..}`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{gauss, ComplexField, GaussRational, C64};
use crate::io::{
    jordan_json, lattice_json, matrix_from_json, parse_json, scalars_from_json, spectral_json,
    vector_from_json, AnyMatrix, Backend, Dual, ToJson,
};
use crate::jordan::bicomplex_jordan;
use crate::lattice::{bicomplex_lattice, is_invariant};
use crate::matrix::{BicomplexMatrix, Matrix, DEFAULT_SINGULAR_TOL};
use crate::operator::{
    check_compact_spectral_properties, distance_to_span, norm_limit_demo, riesz_witness,
    BicomplexHilbertSpace, SigmaSequence, TowerReport,
};
use crate::scalar::BicomplexScalar;
use crate::spectral::{
    enumerate_diagonalizations_with, selfadjoint_diagonalize_with, SpectralTolerances,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "bicomplex", version, about = "Bicomplex linear algebra toolkit")]
struct Cli {
    /// Arithmetic backend; inferred from the input encoding when omitted.
    #[arg(long, global = true, value_parser = parse_backend)]
    backend: Option<Backend>,

    /// Tolerance override, e.g. `--tol singular=1e-8`. Repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized demonstrations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

fn parse_backend(s: &str) -> std::result::Result<Backend, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct InputArg {
    /// Input file; standard input when omitted or `-`.
    input: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
    Inverse,
    Conjugate,
    Norm,
    Euclidean,
    Compare,
    Pow,
    Root,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scalar arithmetic on a JSON array of scalars.
    Scalar {
        #[arg(value_enum)]
        op: ScalarOp,
        #[command(flatten)]
        input: InputArg,
        /// Exponent for `pow`, degree for `root`.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Root branches for the two components, e.g. `0,1`.
        #[arg(long, default_value = "0,0")]
        branch: String,
    },
    /// Product of a JSON array of matrices.
    Matmul(InputArg),
    /// Determinant.
    Det(InputArg),
    /// Inverse.
    Inverse(InputArg),
    /// Bicomplex Jordan form (exact backend).
    Jordan {
        #[command(flatten)]
        input: InputArg,
        /// Emit every block-permuted variant.
        #[arg(long)]
        enumerate_pairings: bool,
        #[arg(long, default_value_t = 720)]
        limit: usize,
    },
    /// Invariant-subspace lattice (exact backend).
    Lattice(InputArg),
    /// Unitary diagonalization of a self-adjoint matrix.
    Spectral {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        all_pairings: bool,
        /// Pairing permutation, e.g. `1,0`.
        #[arg(long, conflicts_with = "all_pairings")]
        pairing: Option<String>,
    },
    /// Finite-rank operator demonstrations.
    #[command(subcommand)]
    Operator(OperatorCommand),
    /// Reproduce the worked examples and report pass/fail.
    Examples {
        #[arg(long, default_value = "all", value_parser = ["1", "2", "all"])]
        which: String,
    },
}

#[derive(Debug, Subcommand)]
enum OperatorCommand {
    /// Spectral report on a truncation tower.
    Tower(InputArg),
    /// Best rank-r approximation errors.
    Approx {
        #[command(flatten)]
        input: InputArg,
        /// Comma-separated ranks; all ranks when omitted.
        #[arg(long)]
        ranks: Option<String>,
    },
    /// Unit vector at prescribed distance from a subspace.
    Riesz {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        r: Option<f64>,
    },
}

const TOLERANCE_NAMES: [(&str, f64); 4] = [
    ("singular", DEFAULT_SINGULAR_TOL),
    ("self_adjoint", 1e-10),
    ("separation", 1e-8),
    ("residual", 1e-9),
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub backend: Option<Backend>,
    pub tolerances: BTreeMap<String, f64>,
    pub format: Format,
    pub seed: u64,
}

impl RunConfig {
    fn new(backend: Option<Backend>, overrides: &[String], format: Format, seed: u64) -> Result<Self> {
        let mut tolerances: BTreeMap<String, f64> = TOLERANCE_NAMES
            .iter()
            .map(|(k, v)| (k.to_string(), *v))
            .collect();
        for item in overrides {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("tolerance {item:?} is not NAME=VALUE")))?;
            let slot = tolerances.get_mut(name).ok_or_else(|| {
                Error::Parse(format!(
                    "unknown tolerance {name:?}; known: {}",
                    TOLERANCE_NAMES.iter().map(|(k, _)| *k).join(", ")
                ))
            })?;
            let v: f64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("tolerance value {value:?} is not a number")))?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parse(format!("tolerance {name} must be positive")));
            }
            *slot = v;
        }
        Ok(RunConfig {
            backend,
            tolerances,
            format,
            seed,
        })
    }

    fn tol(&self, name: &str) -> f64 {
        self.tolerances[name]
    }

    fn spectral(&self) -> SpectralTolerances {
        SpectralTolerances {
            self_adjoint: self.tol("self_adjoint"),
            separation: self.tol("separation"),
            residual: self.tol("residual"),
        }
    }

    fn require_format(&self, allowed: &[Format]) -> Result<()> {
        if allowed.contains(&self.format) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "--format {:?} is not available for this subcommand",
                self.format
            )))
        }
    }
}

enum Output {
    Json(Value),
    Text(String),
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = RunConfig::new(cli.backend, &cli.tol, cli.format, cli.seed)
        .and_then(|cfg| dispatch(&cli.command, &cfg, stdin));
    match result {
        Ok((out, ok)) => {
            let text = match out {
                Output::Json(v) => {
                    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
                    s.push('\n');
                    s
                }
                Output::Text(s) => s,
            };
            if stdout.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let mut s = serde_json::to_string_pretty(&error_json(&e)).expect("JSON values serialize");
            s.push('\n');
            let _ = stderr.write_all(s.as_bytes());
            if matches!(e, Error::Parse(_)) {
                2
            } else {
                1
            }
        }
    }
}

/// Structured error payload.
pub fn error_json(e: &Error) -> Value {
    let mut v = json!({"error": e.name(), "message": e.to_string()});
    match e {
        Error::DoesNotSplit {
            remaining,
            component,
        } => {
            v["remaining"] = json!(remaining);
            if let Some(c) = component {
                v["component"] = json!(c.to_string());
            }
        }
        Error::SingularComponent { which }
        | Error::NotInvertible { which }
        | Error::SubspaceIsFull { which }
        | Error::ZeroSubspace { which } => v["component"] = json!(which.to_string()),
        Error::NotSquare { rows, cols } => v["shape"] = json!([rows, cols]),
        Error::NotSelfAdjoint { defect } => v["defect"] = json!(defect),
        Error::NoConvergence { sweeps } => v["sweeps"] = json!(sweeps),
        Error::DegenerateSpectrum { gap } => v["gap"] = json!(gap),
        _ => {}
    }
    v
}

fn read_input(arg: &InputArg, stdin: &mut dyn Read) -> Result<Value> {
    let text = match &arg.input {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?,
        _ => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("cannot read standard input: {e}")))?;
            s
        }
    };
    parse_json(&text)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{what}: cannot read {x:?}")))
        })
        .collect()
}

fn dispatch(cmd: &Command, cfg: &RunConfig, stdin: &mut dyn Read) -> Result<(Output, bool)> {
    let json_only = |v: Value| -> Result<(Output, bool)> {
        cfg.require_format(&[Format::Json])?;
        Ok((Output::Json(v), true))
    };
    match cmd {
        Command::Scalar {
            op,
            input,
            n,
            branch,
        } => json_only(scalar_command(*op, &read_input(input, stdin)?, *n, branch, cfg)?),
        Command::Matmul(input) => json_only(matmul_command(&read_input(input, stdin)?, cfg)?),
        Command::Det(input) => json_only(det_command(&read_input(input, stdin)?, cfg)?),
        Command::Inverse(input) => json_only(inverse_command(&read_input(input, stdin)?, cfg)?),
        Command::Jordan {
            input,
            enumerate_pairings,
            limit,
        } => json_only(jordan_command(
            &read_input(input, stdin)?,
            cfg,
            *enumerate_pairings,
            *limit,
        )?),
        Command::Lattice(input) => {
            cfg.require_format(&[Format::Json, Format::Dot])?;
            let a = exact_matrix(&read_input(input, stdin)?, cfg)?;
            let lattice = bicomplex_lattice(&a)?;
            lattice.verify_order()?;
            Ok(match cfg.format {
                Format::Dot => (Output::Text(lattice.to_dot()), true),
                _ => (Output::Json(lattice_json(&lattice)), true),
            })
        }
        Command::Spectral {
            input,
            all_pairings,
            pairing,
        } => {
            let a = float_matrix(&read_input(input, stdin)?, cfg)?;
            let v = if *all_pairings {
                let all = enumerate_diagonalizations_with(&a, &cfg.spectral())?;
                json!({
                    "count": all.len(),
                    "diagonalizations": all.iter().map(spectral_json).collect::<Vec<_>>(),
                })
            } else {
                let p = pairing.as_deref().map(|s| parse_list::<usize>(s, "--pairing")).transpose()?;
                spectral_json(&selfadjoint_diagonalize_with(&a, p.as_deref(), &cfg.spectral())?)
            };
            json_only(v)
        }
        Command::Operator(op) => operator_command(op, cfg, stdin),
        Command::Examples { which } => {
            cfg.require_format(&[Format::Json])?;
            let mut reports = Vec::new();
            if which == "1" || which == "all" {
                reports.push(example_one(cfg)?);
            }
            if which == "2" || which == "all" {
                reports.push(example_two()?);
            }
            let pass = reports.iter().all(|r| r["pass"] == json!(true));
            Ok((Output::Json(json!({"pass": pass, "examples": reports})), pass))
        }
    }
}

fn any_matrix(v: &Value, cfg: &RunConfig) -> Result<AnyMatrix> {
    matrix_from_json(v, cfg.backend)
}

fn exact_matrix(v: &Value, cfg: &RunConfig) -> Result<BicomplexMatrix<GaussRational>> {
    if cfg.backend == Some(Backend::Float) {
        return Err(Error::InvalidArgument(
            "this computation is only available on the exact backend".into(),
        ));
    }
    matrix_from_json(v, Some(Backend::Exact))?.into_exact()
}

fn float_matrix(v: &Value, cfg: &RunConfig) -> Result<BicomplexMatrix<C64>> {
    if cfg.backend == Some(Backend::Exact) {
        return Err(Error::UnsupportedOnExactBackend(
            "spectral decompositions use the floating backend".into(),
        ));
    }
    Ok(matrix_from_json(v, Some(Backend::Float))?.into_float())
}

fn scalar_command(op: ScalarOp, v: &Value, n: u32, branch: &str, cfg: &RunConfig) -> Result<Value> {
    let args = v
        .as_array()
        .ok_or_else(|| Error::Parse("scalar input must be a JSON array of scalars".into()))?;
    let arity = match op {
        ScalarOp::Add | ScalarOp::Sub | ScalarOp::Mul | ScalarOp::Div | ScalarOp::Compare => 2,
        _ => 1,
    };
    if args.len() != arity {
        return Err(Error::Parse(format!("{op:?} takes {arity} scalar(s), got {}", args.len())));
    }
    let branches: Vec<u32> = parse_list(branch, "--branch")?;
    if branches.len() != 2 {
        return Err(Error::Parse("--branch takes two indices".into()));
    }
    match scalars_from_json(args, cfg.backend)? {
        Dual::Exact(s) => scalar_op(op, &s, n, &branches),
        Dual::Float(s) => scalar_op(op, &s, n, &branches),
    }
}

fn scalar_op<F>(op: ScalarOp, s: &[BicomplexScalar<F>], n: u32, branches: &[u32]) -> Result<Value>
where
    F: ComplexField + ToJson,
    crate::scalar::HyperbolicValue<F::Real>: ToJson,
{
    let result = match op {
        ScalarOp::Add => s[0].clone() + s[1].clone(),
        ScalarOp::Sub => s[0].clone() - s[1].clone(),
        ScalarOp::Mul => s[0].clone() * s[1].clone(),
        ScalarOp::Div => s[0].checked_div(&s[1])?,
        ScalarOp::Inverse => s[0].invert()?,
        ScalarOp::Conjugate => s[0].conjugate(),
        ScalarOp::Pow => s[0].pow(n),
        ScalarOp::Root => s[0].nth_root(n, branches[0], branches[1])?,
        ScalarOp::Norm => return Ok(json!({"norm": s[0].hyperbolic_norm().to_json()})),
        ScalarOp::Euclidean => {
            let (z1, z2) = s[0].to_euclidean();
            return Ok(json!({"eucl": [z1.to_json(), z2.to_json()]}));
        }
        ScalarOp::Compare => {
            let ord = s[0].hyperbolic_norm().compare(&s[1].hyperbolic_norm());
            return Ok(json!({"norm_ordering": format!("{ord:?}")}));
        }
    };
    Ok(json!({"result": result.to_json()}))
}

fn matmul_command(v: &Value, cfg: &RunConfig) -> Result<Value> {
    let list = v
        .as_array()
        .filter(|a| a.len() >= 2)
        .ok_or_else(|| Error::Parse("matmul input must be an array of at least two matrices".into()))?;
    let mats = list.iter().map(|m| any_matrix(m, cfg)).collect::<Result<Vec<_>>>()?;
    let backend = if mats.iter().all(|m| m.backend() == Backend::Exact) {
        Backend::Exact
    } else {
        Backend::Float
    };
    let mut mats = mats.into_iter().map(|m| m.convert(backend));
    let first = mats.next().expect("nonempty")?;
    let product = mats.try_fold(first, |acc, m| -> Result<AnyMatrix> {
        Ok(match (acc, m?) {
            (Dual::Exact(a), Dual::Exact(b)) => Dual::Exact(a.mul(&b)?),
            (Dual::Float(a), Dual::Float(b)) => Dual::Float(a.mul(&b)?),
            _ => unreachable!("converted to a common backend"),
        })
    })?;
    Ok(product.to_json())
}

fn det_command(v: &Value, cfg: &RunConfig) -> Result<Value> {
    let tol = cfg.tol("singular");
    fn go<F: ComplexField + ToJson>(a: &BicomplexMatrix<F>, tol: f64) -> Result<Value> {
        let d = a.determinant()?;
        Ok(json!({
            "determinant": d.to_json(),
            "singular": [a.m1().is_singular(tol)?, a.m2().is_singular(tol)?],
        }))
    }
    match any_matrix(v, cfg)? {
        Dual::Exact(a) => go(&a, tol),
        Dual::Float(a) => go(&a, tol),
    }
}

fn inverse_command(v: &Value, cfg: &RunConfig) -> Result<Value> {
    let tol = cfg.tol("singular");
    Ok(match any_matrix(v, cfg)? {
        Dual::Exact(a) => a.inverse_with_tol(tol)?.to_json(),
        Dual::Float(a) => a.inverse_with_tol(tol)?.to_json(),
    })
}

fn jordan_command(v: &Value, cfg: &RunConfig, enumerate: bool, limit: usize) -> Result<Value> {
    let a = exact_matrix(v, cfg)?;
    let data = bicomplex_jordan(&a)?;
    let eigenvalues: Vec<Value> = a.eigenvalues()?.iter().map(ToJson::to_json).collect();
    let mut out = jordan_json(&data);
    out["eigenvalues"] = Value::Array(eigenvalues);
    if enumerate {
        let variants = data.block_permuted_variants(limit)?;
        out["variants"] = Value::Array(variants.iter().map(jordan_json).collect());
    }
    Ok(out)
}

fn pair_of_f64(v: Option<&Value>, what: &str, default: (f64, f64)) -> Result<(f64, f64)> {
    match v {
        None => Ok(default),
        Some(v) => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse(format!("{what} must be a pair of numbers")))?;
            let f = |x: &Value| x.as_f64().ok_or_else(|| Error::Parse(format!("{what} must be numeric")));
            Ok((f(&arr[0])?, f(&arr[1])?))
        }
    }
}

fn sigma_from_json(v: &Value) -> Result<SigmaSequence> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("\"sigma\" must be an object".into()))?;
    if let Some(p) = obj.get("power") {
        let (p1, p2) = pair_of_f64(Some(p), "sigma.power", (1.0, 1.0))?;
        Ok(SigmaSequence::Power { p1, p2 })
    } else if let Some(Value::Array(list)) = obj.get("explicit") {
        let terms = list
            .iter()
            .map(|t| pair_of_f64(Some(t), "sigma.explicit term", (0.0, 0.0)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SigmaSequence::Explicit(terms))
    } else {
        Err(Error::Parse("\"sigma\" needs \"power\" or \"explicit\"".into()))
    }
}

fn tower_csv(rep: &TowerReport) -> String {
    let mut out = String::from(
        "dim,pairings,invertible_members,certified,diagonal_outside_ball,diagonal_both_above,pairings_both_above,min_modulus_1,min_modulus_2,outside_1,outside_2,slice_in_spectrum,slice_is_eigenvalue\n",
    );
    for t in &rep.truncations {
        let (sin, seig) = t
            .slice_witness
            .as_ref()
            .map_or((String::new(), String::new()), |w| {
                (w.in_spectrum.to_string(), w.is_eigenvalue.to_string())
            });
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            t.dim,
            t.pairings,
            t.invertible_members,
            t.certified,
            t.diagonal_outside_ball,
            t.diagonal_both_above,
            t.pairings_both_above,
            t.min_modulus.0,
            t.min_modulus.1,
            t.components.0.outside,
            t.components.1.outside,
            sin,
            seig
        ));
    }
    out
}

fn tower_json(rep: &TowerReport) -> Value {
    let rows: Vec<Value> = rep
        .truncations
        .iter()
        .map(|t| {
            let components: Vec<Value> = [&t.components.0, &t.components.1]
                .iter()
                .map(|c| json!({"eigenvalues": c.eigenvalues, "outside": c.outside, "min_modulus": c.min_modulus}))
                .collect();
            json!({
                "dim": t.dim,
                "pairings": t.pairings,
                "invertible_members": t.invertible_members,
                "certified": t.certified,
                "all_certified": t.all_certified(),
                "diagonal_outside_ball": t.diagonal_outside_ball,
                "diagonal_both_above": t.diagonal_both_above,
                "pairings_both_above": t.pairings_both_above,
                "min_modulus": [t.min_modulus.0, t.min_modulus.1],
                "zero_adjoined": t.zero_adjoined,
                "slice_witness": t.slice_witness.as_ref().map(|w| json!({
                    "value": w.value.to_json(),
                    "in_spectrum": w.in_spectrum,
                    "invertible": w.invertible,
                    "is_eigenvalue": w.is_eigenvalue,
                })),
                "components": components,
            })
        })
        .collect();
    json!({"epsilon": [rep.epsilon.0, rep.epsilon.1], "truncations": rows})
}

fn operator_command(op: &OperatorCommand, cfg: &RunConfig, stdin: &mut dyn Read) -> Result<(Output, bool)> {
    match op {
        OperatorCommand::Tower(input) => {
            cfg.require_format(&[Format::Json, Format::Csv])?;
            let v = read_input(input, stdin)?;
            let sigma = sigma_from_json(v.get("sigma").unwrap_or(&json!({"power": [1.0, 2.0]})))?;
            let dims: Vec<usize> = match v.get("dims") {
                None => vec![8, 16, 32],
                Some(d) => d
                    .as_array()
                    .ok_or_else(|| Error::Parse("\"dims\" must be an array".into()))?
                    .iter()
                    .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| Error::Parse("dims must be integers".into())))
                    .collect::<Result<_>>()?,
            };
            let eps = pair_of_f64(v.get("epsilon"), "epsilon", (0.1, 0.1))?;
            let rep = check_compact_spectral_properties(&sigma, &dims, eps)?;
            Ok(match cfg.format {
                Format::Csv => (Output::Text(tower_csv(&rep)), true),
                _ => (Output::Json(tower_json(&rep)), true),
            })
        }
        OperatorCommand::Approx { input, ranks } => {
            cfg.require_format(&[Format::Json, Format::Csv])?;
            let t = float_matrix(&read_input(input, stdin)?, cfg)?;
            let ranks: Vec<usize> = match ranks {
                Some(s) => parse_list(s, "--ranks")?,
                None => (0..=t.rows()).collect(),
            };
            let rep = norm_limit_demo(&t, &ranks)?;
            let ok = rep.nonincreasing();
            Ok(match cfg.format {
                Format::Csv => {
                    let mut s = String::from(
                        "rank,error_1,error_2,predicted_1,predicted_2,orthogonality_defect,canonical_form\n",
                    );
                    for r in &rep.rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{},{}\n",
                            r.rank, r.error.0, r.error.1, r.predicted.0, r.predicted.1, r.orthogonality_defect, r.canonical_form
                        ));
                    }
                    (Output::Text(s), true)
                }
                _ => (
                    Output::Json(json!({
                        "norm": [rep.norm.0, rep.norm.1],
                        "nonincreasing": ok,
                        "rows": rep.rows.iter().map(|r| json!({
                            "rank": r.rank,
                            "error": [r.error.0, r.error.1],
                            "predicted": [r.predicted.0, r.predicted.1],
                            "sigmas_nonnegative": r.sigmas_nonnegative,
                            "orthogonality_defect": r.orthogonality_defect,
                            "canonical_form": r.canonical_form,
                        })).collect::<Vec<_>>(),
                    })),
                    true,
                ),
            })
        }
        OperatorCommand::Riesz { input, r } => {
            cfg.require_format(&[Format::Json])?;
            let v = read_input(input, stdin)?;
            let basis = v
                .get("basis")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("riesz input needs a \"basis\" array of vectors".into()))?
                .iter()
                .map(vector_from_json)
                .collect::<Result<Vec<_>>>()?;
            let dim = match v.get("dim").and_then(Value::as_u64) {
                Some(d) => d as usize,
                None => basis
                    .first()
                    .map(|b| b.len())
                    .ok_or_else(|| Error::Parse("riesz input needs \"dim\" or a nonempty basis".into()))?,
            };
            let r = match (*r, v.get("r").and_then(Value::as_f64)) {
                (Some(r), _) | (None, Some(r)) => r,
                (None, None) => return Err(Error::Parse("riesz needs --r or \"r\" in the input".into())),
            };
            let space = BicomplexHilbertSpace::new(dim)?;
            let y = riesz_witness(&space, &basis, r)?;
            let (n1, n2) = y.component_norms_sqr();
            let (d1, d2) = distance_to_span(&basis, &y);
            Ok((
                Output::Json(json!({
                    "y": y.to_json(),
                    "norm": [n1.sqrt(), n2.sqrt()],
                    "distance": [d1, d2],
                })),
                true,
            ))
        }
    }
}

fn check(name: &str, pass: bool, detail: Value) -> Value {
    json!({"name": name, "pass": pass, "detail": detail})
}

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

/// The self-adjoint 2×2 matrix `[[0, z], [z̄, 0]]` for `z = (3+4i) + j(1−2i)`.
fn example_one(cfg: &RunConfig) -> Result<Value> {
    let z = BicomplexScalar::from_euclidean(c(3.0, 4.0), c(1.0, -2.0));
    let zb = z.conjugate();
    let zero = BicomplexScalar::<C64>::zero();
    let a = BicomplexMatrix::from_entries(2, 2, vec![zero.clone(), z.clone(), zb.clone(), zero])?;
    let (m1, m2) = (z.c1.norm(), z.c2.norm());
    let scale = a.frobenius_norms();
    let tol = cfg.spectral();

    let mut checks = Vec::new();
    let pairs = [
        ("plus_norm", (m1, m2)),
        ("minus_norm", (-m1, -m2)),
        ("mixed", (m1, -m2)),
        ("mixed_negated", (-m1, m2)),
    ];
    for (name, (l1, l2)) in pairs {
        let lambda = BicomplexScalar::from_idempotent(c(l1, 0.0), c(l2, 0.0));
        let d = a.shift(&lambda)?.determinant()?;
        let pass = d.c1.norm() <= 1e-10 * scale.0.powi(2).max(1.0) && d.c2.norm() <= 1e-10 * scale.1.powi(2).max(1.0);
        checks.push(check(
            &format!("eigenvalue_{name}"),
            pass,
            json!({"lambda": lambda.to_json(), "det": d.to_json()}),
        ));
    }

    // the two diagonalizations written with unnormalized eigenvectors
    for (name, (l1, l2)) in [("first", (m1, m2)), ("second", (m1, -m2))] {
        let lam = BicomplexScalar::from_idempotent(c(l1, 0.0), c(l2, 0.0));
        let neg = BicomplexScalar::from_idempotent(c(-l1, 0.0), c(-l2, 0.0));
        let p = BicomplexMatrix::from_entries(2, 2, vec![lam.clone(), neg.clone(), zb.clone(), zb.clone()])?;
        let d = BicomplexMatrix::diagonal(&[lam, neg]);
        let recon = p.mul(&d)?.mul(&p.inverse_with_tol(cfg.tol("singular"))?)?;
        let (r1, r2) = a.sub(&recon)?.frobenius_norms();
        let rel = (r1 / scale.0, r2 / scale.1);
        checks.push(check(
            &format!("stated_diagonalization_{name}"),
            rel.0 <= tol.residual && rel.1 <= tol.residual,
            json!({"relative_residual": [rel.0, rel.1]}),
        ));
    }

    let all = enumerate_diagonalizations_with(&a, &tol)?;
    checks.push(check(
        "diagonalization_count",
        all.len() == 2,
        json!({"count": all.len(), "expected": 2}),
    ));
    let residuals_ok = all.iter().all(|d| {
        let (u, r) = (d.unitarity_residual, d.reconstruction_residual);
        u.0.max(u.1) <= tol.residual && r.0.max(r.1) <= tol.residual
    });
    checks.push(check("diagonalization_residuals", residuals_ok, Value::Null));

    // n! pairings for a seeded random 3×3 self-adjoint matrix
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut hermitian = || {
        let b = Matrix::from_fn(3, 3, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        b.add(&b.adjoint()).expect("square")
    };
    let r = BicomplexMatrix::new(hermitian(), hermitian())?;
    let count = enumerate_diagonalizations_with(&r, &tol)?.len();
    checks.push(check(
        "random_3x3_pairings",
        count == 6,
        json!({"seed": cfg.seed, "count": count, "expected": 6}),
    ));

    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    Ok(json!({
        "example": 1,
        "pass": pass,
        "matrix": a.to_json(),
        "checks": checks,
        "diagonalizations": all.iter().map(spectral_json).collect::<Vec<_>>(),
    }))
}

/// The lattice of `0·e + [[0,1],[0,0]]·e†`.
fn example_two() -> Result<Value> {
    let q = |rows: [[i64; 2]; 2]| {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| gauss(x, 0)).collect()).collect())
    };
    let a = BicomplexMatrix::new(q([[0, 0], [0, 0]])?, q([[0, 1], [0, 0]])?)?;
    let lattice = bicomplex_lattice(&a)?;
    let all_invariant = lattice
        .nodes
        .iter()
        .map(|n| is_invariant(&a, &n.subspace))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);
    let order = lattice.verify_order();
    let checks = vec![
        check("node_count", lattice.len() == 12, json!({"count": lattice.len(), "expected": 12})),
        check("nodes_invariant", all_invariant, Value::Null),
        check(
            "covers_are_transitive_reduction",
            order.is_ok(),
            order.err().map_or(Value::Null, |e| json!(e.to_string())),
        ),
    ];
    let pass = checks.iter().all(|c| c["pass"] == json!(true));
    Ok(json!({
        "example": 2,
        "pass": pass,
        "checks": checks,
        "lattice": lattice_json(&lattice),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("bicomplex").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_tolerance_is_rejected() {
        let (code, _, err) = run_str(&["--tol", "bogus=1", "examples", "--which", "2"], "");
        assert_eq!(code, 2);
        assert!(err.contains("Parse"));
        let (code, _, _) = run_str(&["--tol", "singular=-1", "examples"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn bad_json_exits_two() {
        let (code, _, err) = run_str(&["det"], "{not json");
        assert_eq!(code, 2);
        assert!(err.contains("\"error\": \"Parse\""));
    }

    #[test]
    fn scalar_mul() {
        let (code, out, _) = run_str(
            &["scalar", "mul"],
            r#"[{"idem":["2","3"]},{"idem":["1/2","0"]}]"#,
        );
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"]["idem"][0]["re"], "1");
        assert_eq!(v["result"]["idem"][1]["re"], "0");
    }

    #[test]
    fn division_by_zero_divisor() {
        let (code, _, err) = run_str(
            &["scalar", "div"],
            r#"[{"idem":["2","3"]},{"idem":["1","0"]}]"#,
        );
        assert_eq!(code, 1);
        assert!(err.contains("NotInvertible"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"], "");
        assert_eq!(code, 0);
        assert!(out.contains("jordan"));
    }
}
