//! Command-line front end.
//!
//! Every command prints a single JSON document on stdout (or a flattened
//! `key  value` table with `--pretty`). Exit codes: 0 success, 1 input or
//! validation failure, 2 operation not applicable to the input.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::diagonalize::diagonalize_elliptic;
use crate::error::Error;
use crate::group::{GroupElement, MembershipResiduals, Sampler, TraceZeroKind, MEMBERSHIP_TOL};
use crate::invariants::{identity_checks, report, trace_zero_checks, Identity};
use crate::mat2h::Mat2H;
use crate::moebius::{apply, classify_with_evidence, MoebiusClass, CLASS_EPS};
use crate::quaternion::Quaternion;
use crate::spectra::{
    left_eigenvalues, right_spectrum, right_spectrum_casewise_eps, right_spectrum_oracle, s_spectrum,
    SPECTRUM_TOL,
};

#[derive(Debug, Parser)]
#[command(name = "u11h", version, about = "Quaternionic U(1,1;H) matrices and their Moebius maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Membership tolerance for input matrices.
    #[arg(long, global = true, default_value_t = MEMBERSHIP_TOL)]
    pub tol_membership: f64,

    /// Override every identity tolerance (default: per identity).
    #[arg(long, global = true)]
    pub tol_identity: Option<f64>,

    /// Agreement tolerance between spectrum routes.
    #[arg(long, global = true, default_value_t = SPECTRUM_TOL)]
    pub tol_spectrum: f64,

    /// Dispatch tolerance of the classifier.
    #[arg(long, global = true, default_value_t = CLASS_EPS)]
    pub eps_class: f64,

    /// Print a flattened human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKind {
    Right,
    S,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Injection {
    /// Replace every sample by the identity.
    Identity,
    /// Break membership of the first sample.
    Corrupt,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Membership residuals of a matrix.
    Validate { path: PathBuf },
    /// Traces, Δ and every applicable identity residual.
    Invariants { path: PathBuf },
    /// Right, S or left spectrum.
    Spectrum {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = SpectrumKind::Right)]
        kind: SpectrumKind,
        /// Append the independent complex-representation check.
        #[arg(long)]
        oracle: bool,
    },
    /// Moebius class and the quantities that decided it.
    Classify { path: PathBuf },
    /// Image of a point of the unit ball.
    Apply {
        path: PathBuf,
        /// Point as a JSON array `[w,x,y,z]`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Diagonalize an elliptic element.
    Diagonalize { path: PathBuf },
    /// Seeded random group element in matrix JSON.
    Random {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        class: Option<MoebiusClass>,
    },
    /// Replay the identities and the diagonalization over seeded samples.
    CheckIdentities {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, value_enum)]
        inject: Option<Injection>,
    },
}

impl clap::builder::ValueParserFactory for MoebiusClass {
    type Parser = clap::builder::ValueParser;
    fn value_parser() -> Self::Parser {
        clap::builder::ValueParser::new(|s: &str| s.parse::<MoebiusClass>())
    }
}

/// Batch-harness configuration; identical configs give identical output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub command: &'static str,
}

impl RunConfig {
    fn from_cli(cli: &Cli, seed: u64, trials: u64) -> Self {
        let mut tolerances = BTreeMap::new();
        tolerances.insert("membership".to_string(), cli.tol_membership);
        tolerances.insert("spectrum".to_string(), cli.tol_spectrum);
        tolerances.insert("eps_class".to_string(), cli.eps_class);
        for id in Identity::ALL {
            tolerances.insert(id.name().to_string(), cli.tol_identity.unwrap_or(id.default_tol()));
        }
        Self {
            seed,
            trials,
            tolerances,
            command: "check-identities",
        }
    }

    fn tol(&self, key: &str) -> f64 {
        self.tolerances[key]
    }
}

/// Failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotElliptic(_)
            | Error::NotApplicable(_)
            | Error::PoleHit { .. }
            | Error::CaseMismatch(_) => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

/// Outcome of a command that printed a document: the document and its exit code.
type Outcome = Result<(Value, i32), Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((doc, code)) => {
            let text = if cli.pretty { table(&doc) } else { doc.to_string() };
            let _ = writeln!(out, "{text}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Validate { path } => cmd_validate(cli, path),
        Command::Invariants { path } => cmd_invariants(cli, path),
        Command::Spectrum { path, kind, oracle } => cmd_spectrum(cli, path, *kind, *oracle),
        Command::Classify { path } => cmd_classify(cli, path),
        Command::Apply { path, point } => cmd_apply(cli, path, point),
        Command::Diagonalize { path } => cmd_diagonalize(cli, path),
        Command::Random { seed, class } => cmd_random(*seed, *class),
        Command::CheckIdentities { seed, trials, inject } => {
            cmd_check_identities(&RunConfig::from_cli(cli, *seed, *trials), *inject)
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn load_matrix(path: &Path) -> Result<Mat2H, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("invalid matrix JSON in {}: {e}", path.display())))
}

fn load_member(cli: &Cli, path: &Path) -> Result<GroupElement, Failure> {
    Ok(GroupElement::new(load_matrix(path)?, cli.tol_membership)?)
}

fn cmd_validate(cli: &Cli, path: &Path) -> Outcome {
    let m = load_matrix(path)?;
    let residuals = MembershipResiduals::of(&m);
    let max = residuals.max();
    let member = m.is_finite() && max <= cli.tol_membership;
    let doc = json!({
        "member": member,
        "max_residual": max,
        "tolerance": cli.tol_membership,
        "residuals": residuals,
    });
    Ok((doc, if member { 0 } else { 1 }))
}

fn cmd_invariants(cli: &Cli, path: &Path) -> Outcome {
    let t = load_member(cli, path)?;
    let checks: Vec<Value> = identity_checks(&t)
        .into_iter()
        .chain(trace_zero_checks(&t))
        .map(|c| {
            let tol = cli.tol_identity.unwrap_or(c.identity.default_tol());
            json!({
                "identity": c.identity.name(),
                "lhs": c.lhs,
                "rhs": c.rhs,
                "residual": c.residual,
                "tolerance": tol,
                "pass": c.passes(tol),
            })
        })
        .collect();
    Ok((json!({ "report": report(&t), "checks": checks }), 0))
}

fn cmd_spectrum(cli: &Cli, path: &Path, kind: SpectrumKind, oracle: bool) -> Outcome {
    if kind == SpectrumKind::Left {
        let m = load_matrix(path)?;
        let left = left_eigenvalues(&m)?;
        let mut doc = json!({ "kind": "left", "points": left.points, "sphere_families": left.sphere_families });
        if oracle {
            let sigma: Vec<f64> = left.points.iter().map(|p| m.shift(*p).min_singular_value()).collect();
            doc["oracle"] = json!({ "sigma_min": sigma });
        }
        return Ok((doc, 0));
    }
    let t = load_member(cli, path)?;
    let spec = match kind {
        SpectrumKind::S => s_spectrum(&t)?,
        _ => right_spectrum(&t)?,
    };
    let name = if kind == SpectrumKind::S { "s" } else { "right" };
    let mut doc = json!({ "kind": name, "spheres": spec.spheres });
    if oracle {
        let chi = right_spectrum_oracle(&t.matrix());
        let casewise = right_spectrum_casewise_eps(&t, cli.eps_class)?;
        let deviation = spec.distance(&chi).max(spec.distance(&casewise));
        doc["oracle"] = json!({
            "spheres": chi.spheres,
            "casewise": casewise.spheres,
            "max_deviation": deviation,
            "tolerance": cli.tol_spectrum,
            "agree": deviation <= cli.tol_spectrum,
        });
    }
    Ok((doc, 0))
}

fn cmd_classify(cli: &Cli, path: &Path) -> Outcome {
    let t = load_member(cli, path)?;
    let e = classify_with_evidence(&t, cli.eps_class)?;
    Ok((to_value(&e), 0))
}

fn cmd_apply(cli: &Cli, path: &Path, point: &str) -> Outcome {
    let t = load_member(cli, path)?;
    let z: Quaternion = serde_json::from_str(point)
        .map_err(|e| Failure::input(format!("invalid --point `{point}`: {e}")))?;
    if z.norm() >= 1.0 {
        return Err(Failure::input(format!("--point must lie in the open unit ball, |z| = {}", z.norm())));
    }
    let w = apply(&t, z)?;
    Ok((json!({ "point": z, "image": w, "modulus": w.norm() }), 0))
}

fn cmd_diagonalize(cli: &Cli, path: &Path) -> Outcome {
    let t = load_member(cli, path)?;
    let r = diagonalize_elliptic(&t)?;
    let doc = json!({
        "case": r.case_used,
        "x": r.x.matrix(),
        "d": r.d,
        "residuals": {
            "conjugation": r.residual_conjugation,
            "membership": r.residual_membership,
        },
        "claims": r.claims,
    });
    Ok((doc, 0))
}

fn cmd_random(seed: u64, class: Option<MoebiusClass>) -> Outcome {
    let t = Sampler::new(seed).sample(class)?;
    Ok((to_value(&t.matrix()), 0))
}

#[derive(Default)]
struct Row {
    max_residual: f64,
    evaluated: u64,
    tolerance: f64,
}

fn record(rows: &mut BTreeMap<&'static str, Row>, name: &'static str, residual: f64, tol: f64) -> bool {
    let row = rows.entry(name).or_default();
    row.tolerance = tol;
    row.evaluated += 1;
    // NaN must register as a failure
    if residual.is_nan() || residual > row.max_residual {
        row.max_residual = if residual.is_nan() { f64::INFINITY } else { residual };
    }
    residual <= tol
}

/// Samples for trial `k`: a generic element, a trace-zero element and an
/// elliptic element, all drawn from stream `k`.
fn trial_samples(seed: u64, k: u64, inject: Option<Injection>) -> [Mat2H; 3] {
    if inject == Some(Injection::Identity) {
        return [Mat2H::IDENTITY; 3];
    }
    let mut s = Sampler::with_stream(seed, k);
    let mut generic = s.element().matrix();
    let tz = s.trace_zero_element(TraceZeroKind::ALL[(k % 3) as usize]).matrix();
    let class = if k.is_multiple_of(2) {
        MoebiusClass::CompoundElliptic
    } else {
        MoebiusClass::SimpleElliptic
    };
    let elliptic = s.sample(Some(class)).map(|t| t.matrix()).unwrap_or(Mat2H::IDENTITY);
    if inject == Some(Injection::Corrupt) && k == 0 {
        generic.a += Quaternion::real(1e-3);
    }
    [generic, tz, elliptic]
}

fn cmd_check_identities(cfg: &RunConfig, inject: Option<Injection>) -> Outcome {
    let mut rows: BTreeMap<&'static str, Row> = BTreeMap::new();
    let mut failures: Vec<Value> = Vec::new();
    let mut fail = |trial: u64, name: &str, m: &Mat2H, residual: f64| {
        failures.push(json!({ "trial": trial, "check": name, "residual": residual, "matrix": m }));
    };
    let tol_m = cfg.tol("membership");

    for k in 0..cfg.trials {
        let [generic, tz, elliptic] = trial_samples(cfg.seed, k, inject);

        let mut admit = |m: &Mat2H| {
            let res = MembershipResiduals::of(m).max();
            if record(&mut rows, "membership", res, tol_m) {
                GroupElement::new(*m, tol_m).ok()
            } else {
                fail(k, "membership", m, res);
                None
            }
        };
        let (generic, tz) = (admit(&generic), admit(&tz));
        let checks = generic
            .iter()
            .flat_map(identity_checks)
            .chain(tz.iter().flat_map(trace_zero_checks));
        for c in checks {
            let name = c.identity.name();
            if !record(&mut rows, name, c.residual, cfg.tol(name)) {
                let m = if name.starts_with("trace_zero") { tz } else { generic };
                fail(k, name, &m.expect("checked above").matrix(), c.residual);
            }
        }

        let residual = GroupElement::new(elliptic, tol_m)
            .and_then(|t| diagonalize_elliptic(&t))
            .map(|r| r.residual_conjugation.max(r.residual_membership))
            .unwrap_or(f64::INFINITY);
        if !record(&mut rows, "diagonalization", residual, 1e-8) {
            fail(k, "diagonalization", &elliptic, residual);
        }
    }

    let all_pass = failures.is_empty();
    let table: Vec<Value> = rows
        .iter()
        .map(|(name, r)| {
            json!({
                "check": name,
                "evaluated": r.evaluated,
                "max_residual": r.max_residual,
                "tolerance": r.tolerance,
                "pass": r.max_residual <= r.tolerance,
            })
        })
        .collect();
    let doc = json!({
        "config": cfg,
        "pass": all_pass,
        "checks": table,
        "failures": failures,
    });
    Ok((doc, if all_pass { 0 } else { 1 }))
}

/// Flattens a JSON document into aligned `path  value` lines.
fn table(doc: &Value) -> String {
    fn walk(prefix: String, v: &Value, rows: &mut Vec<(String, String)>) {
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(p, x, rows);
                }
            }
            Value::Array(items) if items.iter().all(Value::is_number) && !items.is_empty() => {
                rows.push((prefix, v.to_string()));
            }
            Value::Array(items) => {
                for (i, x) in items.iter().enumerate() {
                    walk(format!("{prefix}[{i}]"), x, rows);
                }
            }
            Value::String(s) => rows.push((prefix, s.clone())),
            _ => rows.push((prefix, v.to_string())),
        }
    }
    let mut rows = Vec::new();
    walk(String::new(), doc, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}
