//! Command-line frontend: classification, synthesis, verification and
//! parameter sweeps with JSON reports and CSV tables.
//!
//! Exit codes: `0` success (all requested checks passed), `1` usage or
//! runtime error, `2` invalid signature, `3` unsupported order combination,
//! `4` drift or residual bound exceeded.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::classify::{
    classify_2frenet, classify_3frenet, classify_nfrenet_biharmonic,
    classify_nfrenet_triharmonic, classify_triharmonic_2frenet, is_r_harmonic_2frenet,
    is_r_harmonic_3frenet, ClassificationResult, Solution,
};
use crate::exact::{decimal15, parse_rational, to_f64, Rat};
use crate::frenet::Helix;
use crate::metric::{Signature, SignatureError};
use crate::robertson_walker::{power_law_deceleration, power_law_r_harmonic, rw_r_harmonic_check, RwModel};
use crate::ruled::ruled_pipeline;
use crate::space_form::SpaceForm;
use crate::synthesize::{
    integrate_frenet, numeric_tension_in_space_form, CurveSpec, SynthesisError,
    SynthesisProblem, SynthesisTolerances,
};
use crate::tension::{
    n_frenet_bitension_helix_scaled, n_frenet_tritension_scaled, tension_field_scaled,
    SpaceFormCurvature,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_BAD_SIGNATURE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_BOUND_EXCEEDED: i32 = 4;

/// Environment variable overriding the default verification tolerance.
pub const TOL_ENV_VAR: &str = "POLYFRENET_TOL";

#[derive(Parser, Debug)]
#[command(
    name = "polyfrenet",
    version,
    about = "Polyharmonic Frenet curves in semi-Riemannian geometry"
)]
pub struct Cli {
    /// Optional key = value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve a closed-form r-harmonicity classification.
    Classify(ClassifyArgs),
    /// Integrate a curve with prescribed curvatures and verify it.
    Synthesize(SynthesizeArgs),
    /// Cross-check the tension oracle against the closed-form criteria.
    Verify(VerifyArgs),
    /// Tabulate classifier verdicts and oracle residuals over a grid.
    Sweep(SweepArgs),
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyArgs {
    /// Ambient model: spaceform | product | rw
    #[arg(long, default_value = "spaceform")]
    pub model: String,
    /// Sectional curvature of the space form (rational).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    /// Frame signs, comma separated, e.g. 1,1,-1
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Vec<i64>,
    /// Tension order r.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    /// Known squared curvatures (rational, comma separated).
    #[arg(long = "kappa-sq", value_delimiter = ',')]
    pub kappa_sq: Vec<String>,
    /// Plain curvatures, squared internally (exact for rational input).
    #[arg(long = "kappa", value_delimiter = ',')]
    pub kappa: Vec<String>,
    /// Shortcut for the order-3 classification of a single-curvature frame.
    #[arg(long, default_value_t = false)]
    pub triharmonic: bool,
    /// Ambient dimension (2 selects the surface specialization).
    #[arg(long)]
    pub m: Option<usize>,
    /// Ambient index.
    #[arg(long)]
    pub t: Option<usize>,
    /// Admit a vanishing trailing curvature in the order >= 4 biharmonic case.
    #[arg(long, default_value_t = false)]
    pub allow_trailing_zero: bool,
    /// Power-law warping "t^(p/q)" for the rw model.
    #[arg(long)]
    pub f: Option<String>,
    /// Evaluation time for the rw model (rational).
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<String>,
    /// Squared slope constant for the product model (rational).
    #[arg(long = "d1-sq")]
    pub d1_sq: Option<String>,
    /// Squared fiber curvature for the product model (rational).
    #[arg(long = "kappa-alpha-sq")]
    pub kappa_alpha_sq: Option<String>,
    /// Squared fiber torsion for the product model (rational).
    #[arg(long = "tau-alpha-sq")]
    pub tau_alpha_sq: Option<String>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SynthesizeArgs {
    /// Curve dimension of the space form.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Metric index of the space form.
    #[arg(long, default_value_t = 1)]
    pub t: usize,
    /// Sectional curvature (decimal).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub c: f64,
    /// Frame signs, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Vec<i64>,
    /// Constant curvatures of the helix.
    #[arg(long, value_delimiter = ',')]
    pub kappas: Vec<f64>,
    /// Arc-length span "a:b".
    #[arg(long = "s-range", default_value = "0:10", allow_hyphen_values = true)]
    pub s_range: String,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
    /// Build the initial point and frame from the model's standard chart.
    #[arg(long, default_value_t = true)]
    pub auto_frame: bool,
    /// Explicit initial point "x0,x1,..." in ambient chart coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Explicit initial frame "a,b,..;c,d,.." (one vector per semicolon).
    #[arg(long, allow_hyphen_values = true)]
    pub frame: Option<String>,
    /// Tension orders to verify numerically.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u32])]
    pub r: Vec<u32>,
    /// Run the ruled-surface pipeline instead of a space-form integration.
    #[arg(long, default_value_t = false)]
    pub ruled: bool,
    /// Initial profile value for the ruled pipeline.
    #[arg(long, default_value_t = 0.5)]
    pub k0: f64,
    #[arg(long)]
    pub ode_rel: Option<f64>,
    #[arg(long)]
    pub ode_abs: Option<f64>,
    #[arg(long)]
    pub drift_max: Option<f64>,
    #[arg(long)]
    pub residual_max: Option<f64>,
    /// Curve CSV output path.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Diagnostics JSON output path (stdout if omitted).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// Sectional curvature (rational).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub c: String,
    /// Frame signs, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Vec<i64>,
    /// Squared curvatures of the helix (rational).
    #[arg(long = "kappa-sq", value_delimiter = ',')]
    pub kappa_sq: Vec<String>,
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// spaceform | rw
    #[arg(long, default_value = "spaceform")]
    pub model: String,
    /// Frame order for the spaceform model (2 or 3).
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Frame signs, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub eps: Vec<i64>,
    /// Sectional curvatures to sweep (rational list).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = vec!["1".to_string()])]
    pub c: Vec<String>,
    /// Tension orders.
    #[arg(long, value_delimiter = ',', default_values_t = vec![2u32])]
    pub r: Vec<u32>,
    /// Range "start:end:step" of squared curvature (rational).
    #[arg(long = "kappa-sq-range", default_value = "1/4:10:1/4")]
    pub kappa_sq_range: String,
    /// Range of squared torsion for order-3 frames.
    #[arg(long = "tau-sq-range")]
    pub tau_sq_range: Option<String>,
    /// Solve for tau_sq roots per kappa_sq instead of grid testing.
    #[arg(long, default_value_t = false)]
    pub solve: bool,
    /// Power-law exponent range for the rw model.
    #[arg(long = "lambda-range")]
    pub lambda_range: Option<String>,
    /// Evaluation-time range for the rw model (needs --f).
    #[arg(long = "t0-range")]
    pub t0_range: Option<String>,
    /// Power-law warping for the rw t0 sweep.
    #[arg(long)]
    pub f: Option<String>,
    /// Abort if the grid exceeds this many points.
    #[arg(long)]
    pub max_points: Option<usize>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug)]
struct CliFailure {
    code: i32,
    message: String,
}

impl CliFailure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliFailure {
            code,
            message: message.into(),
        }
    }
}

impl From<SignatureError> for CliFailure {
    fn from(e: SignatureError) -> Self {
        CliFailure::new(EXIT_BAD_SIGNATURE, e.to_string())
    }
}

type CliResult = Result<i32, CliFailure>;

/// Entry point used by the binary.
pub fn run() -> i32 {
    run_from(std::env::args())
}

/// Testable entry point.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let config = match load_config(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}", e.message);
            return e.code;
        }
    };
    let outcome = match &cli.command {
        Command::Classify(args) => cmd_classify(args, &config),
        Command::Synthesize(args) => cmd_synthesize(args, &config),
        Command::Verify(args) => cmd_verify(args, &config),
        Command::Sweep(args) => cmd_sweep(args, &config),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

#[derive(Default, Clone)]
struct Config {
    values: HashMap<String, String>,
}

impl Config {
    fn get_f64(&self, key: &str) -> Option<f64> {
        self.values.get(key).and_then(|v| v.parse().ok())
    }

    fn get_usize(&self, key: &str) -> Option<usize> {
        self.values.get(key).and_then(|v| v.parse().ok())
    }
}

fn load_config(path: Option<&Path>) -> Result<Config, CliFailure> {
    let mut config = Config::default();
    if let Some(path) = path {
        let text = fs::read_to_string(path).map_err(|e| {
            CliFailure::new(EXIT_ERROR, format!("cannot read {}: {e}", path.display()))
        })?;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliFailure::new(
                    EXIT_ERROR,
                    format!("{}:{}: expected key = value", path.display(), lineno + 1),
                ));
            };
            config
                .values
                .insert(key.trim().to_string(), value.trim().to_string());
        }
    }
    Ok(config)
}

/// Resolution order for verification gates: flag, config file, environment,
/// default. The environment variable covers only the pass/fail gates, never
/// the integrator tolerances.
fn resolve_gate(flag: Option<f64>, config: &Config, key: &str, default: f64) -> f64 {
    if let Some(v) = flag {
        return v;
    }
    if let Some(v) = config.get_f64(key) {
        return v;
    }
    if let Ok(s) = std::env::var(TOL_ENV_VAR) {
        if let Ok(v) = s.parse() {
            return v;
        }
    }
    default
}

/// Resolution order for integrator tolerances: flag, config file, default.
fn resolve_tol(flag: Option<f64>, config: &Config, key: &str, default: f64) -> f64 {
    flag.or_else(|| config.get_f64(key)).unwrap_or(default)
}

fn parse_rat(input: &str) -> Result<Rat, CliFailure> {
    parse_rational(input).map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))
}

fn parse_rat_list(inputs: &[String]) -> Result<Vec<Rat>, CliFailure> {
    inputs.iter().map(|s| parse_rat(s)).collect()
}

fn signature_from(eps: &[i64], m: Option<usize>, t: Option<usize>) -> Result<Signature, CliFailure> {
    if eps.is_empty() {
        return Err(CliFailure::new(
            EXIT_BAD_SIGNATURE,
            "missing --eps frame signs",
        ));
    }
    Ok(match (m, t) {
        (Some(m), Some(t)) => Signature::from_ints(eps, m, t)?,
        (Some(m), None) => {
            let neg = eps.iter().filter(|&&e| e < 0).count().max(1);
            Signature::from_ints(eps, m, neg)?
        }
        _ => Signature::minimal_ambient_ints(eps)?,
    })
}

fn parse_float_list(input: &str) -> Result<Vec<f64>, CliFailure> {
    input
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliFailure::new(EXIT_ERROR, format!("bad coordinate {s:?}")))
        })
        .collect()
}

fn parse_range(input: &str) -> Result<(f64, f64), CliFailure> {
    let parts: Vec<&str> = input.split(':').collect();
    if parts.len() != 2 {
        return Err(CliFailure::new(
            EXIT_ERROR,
            format!("expected a range a:b, got {input:?}"),
        ));
    }
    let a = parts[0]
        .parse()
        .map_err(|_| CliFailure::new(EXIT_ERROR, format!("bad range start {:?}", parts[0])))?;
    let b = parts[1]
        .parse()
        .map_err(|_| CliFailure::new(EXIT_ERROR, format!("bad range end {:?}", parts[1])))?;
    Ok((a, b))
}

fn parse_rational_grid(input: &str) -> Result<Vec<Rat>, CliFailure> {
    let parts: Vec<&str> = input.split(':').collect();
    if parts.len() != 3 {
        return Err(CliFailure::new(
            EXIT_ERROR,
            format!("expected start:end:step, got {input:?}"),
        ));
    }
    let start = parse_rat(parts[0])?;
    let end = parse_rat(parts[1])?;
    let step = parse_rat(parts[2])?;
    if !num_traits::Signed::is_positive(&step) {
        return Err(CliFailure::new(EXIT_ERROR, "step must be positive"));
    }
    let mut grid = Vec::new();
    let mut x = start;
    while x <= end {
        grid.push(x.clone());
        x += step.clone();
    }
    Ok(grid)
}

/// Parses a power law "t^(p/q)", "t^p/q" or "t^0.5".
fn parse_power_law(input: &str) -> Result<Rational64, CliFailure> {
    let s = input.trim();
    let rest = s
        .strip_prefix("t^")
        .ok_or_else(|| CliFailure::new(EXIT_ERROR, format!("expected t^<exponent>, got {s:?}")))?;
    let rest = rest.trim_start_matches('(').trim_end_matches(')');
    let r = parse_rat(rest)?;
    let num = r
        .numer()
        .to_i64()
        .ok_or_else(|| CliFailure::new(EXIT_ERROR, "exponent too large"))?;
    let den = r
        .denom()
        .to_i64()
        .ok_or_else(|| CliFailure::new(EXIT_ERROR, "exponent too large"))?;
    Ok(Rational64::new(num, den))
}

fn write_or_print(path: Option<&Path>, content: &str) -> Result<(), CliFailure> {
    match path {
        Some(p) => fs::write(p, content)
            .map_err(|e| CliFailure::new(EXIT_ERROR, format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{content}");
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct ClassifyInputs {
    pub model: String,
    pub c: String,
    pub eps: Vec<i64>,
    pub r: u32,
    pub kappa_sq: Vec<String>,
    pub triharmonic: bool,
    pub surface: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t0: Option<String>,
}

fn cmd_classify(args: &ClassifyArgs, _config: &Config) -> CliResult {
    if args.model == "rw" {
        return classify_rw(args);
    }
    if args.model == "product" {
        return classify_product(args);
    }
    if args.model != "spaceform" {
        return Err(CliFailure::new(
            EXIT_ERROR,
            format!("unknown model {:?}", args.model),
        ));
    }
    let sig = signature_from(&args.eps, args.m, args.t)?;
    let c = parse_rat(&args.c)?;
    let mut kappa_sq = parse_rat_list(&args.kappa_sq)?;
    for k in parse_rat_list(&args.kappa)? {
        kappa_sq.push(k.clone() * k);
    }
    let n = sig.n();
    let surface = args.m == Some(2);
    let result = match n {
        2 => {
            if args.triharmonic {
                classify_triharmonic_2frenet(&c, sig.sign(1))
            } else {
                classify_2frenet(&c, sig.sign(0), sig.sign(1), args.r, surface)
                    .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?
            }
        }
        3 => {
            let r = if args.triharmonic { 3 } else { args.r };
            classify_3frenet(&c, (sig.sign(0), sig.sign(1), sig.sign(2)), r, kappa_sq.first())
                .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?
        }
        4 | 5 => {
            let r = if args.triharmonic { 3 } else { args.r };
            match r {
                2 => classify_nfrenet_biharmonic(sig.eps(), &c, !args.allow_trailing_zero)
                    .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?,
                3 => classify_nfrenet_triharmonic(sig.eps(), &c, &kappa_sq)
                    .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?,
                other => {
                    return Err(CliFailure::new(
                        EXIT_UNSUPPORTED,
                        format!("no closed-form classification for order {n} at r = {other}"),
                    ))
                }
            }
        }
        other => {
            return Err(CliFailure::new(
                EXIT_UNSUPPORTED,
                format!("no classification for frame order {other}"),
            ))
        }
    };
    let inputs = ClassifyInputs {
        model: args.model.clone(),
        c: args.c.clone(),
        eps: args.eps.clone(),
        r: args.r,
        kappa_sq: args.kappa_sq.clone(),
        triharmonic: args.triharmonic,
        surface,
        f: None,
        t0: None,
    };
    let report = json!({
        "command": "classify",
        "inputs": inputs,
        "result": result,
    });
    write_or_print(args.out.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(EXIT_OK)
}

fn classify_product(args: &ClassifyArgs) -> CliResult {
    let need = |v: &Option<String>, name: &str| -> Result<Rat, CliFailure> {
        let s = v
            .as_deref()
            .ok_or_else(|| CliFailure::new(EXIT_ERROR, format!("product model needs --{name}")))?;
        parse_rat(s)
    };
    let d1_sq = need(&args.d1_sq, "d1-sq")?;
    let ka = need(&args.kappa_alpha_sq, "kappa-alpha-sq")?;
    let ta = need(&args.tau_alpha_sq, "tau-alpha-sq")?;
    let c = parse_rat(&args.c)?;
    if args.eps.len() != 2 {
        return Err(CliFailure::new(
            EXIT_BAD_SIGNATURE,
            "product model takes --eps <eps1>,<eps3> (the normal sign is forced positive)",
        ));
    }
    let eps1 = crate::metric::Sign::from_int(args.eps[0])?;
    let eps3 = crate::metric::Sign::from_int(args.eps[1])?;
    let check = crate::product::product_r_harmonic_check(&d1_sq, &ka, &ta, eps1, eps3, &c, args.r)
        .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
    let (kappa_sq, tau_sq) = crate::product::lift_squares(&d1_sq, &ka, &ta, eps1, eps3);
    let status = if check.is_r_harmonic() {
        crate::classify::Feasibility::Feasible
    } else {
        crate::classify::Feasibility::Infeasible
    };
    let inputs = ClassifyInputs {
        model: "product".to_string(),
        c: args.c.clone(),
        eps: args.eps.clone(),
        r: args.r,
        kappa_sq: Vec::new(),
        triharmonic: false,
        surface: false,
        f: None,
        t0: None,
    };
    let report = json!({
        "command": "classify",
        "inputs": inputs,
        "result": {
            "theorem": "product_lift_r_harmonic",
            "status": status,
            "solutions": [],
        },
        "lifted": {
            "kappa_sq": kappa_sq.to_string(),
            "tau_sq": tau_sq.to_string(),
        },
        "check": {
            "lifted_value": check.lifted_value.to_string(),
            "fiber_value": check.fiber_value.to_string(),
            "scale": check.scale.to_string(),
            "sides_agree": check.agree,
        },
    });
    write_or_print(args.out.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(EXIT_OK)
}

fn classify_rw(args: &ClassifyArgs) -> CliResult {
    let f = args
        .f
        .as_deref()
        .ok_or_else(|| CliFailure::new(EXIT_ERROR, "rw model needs --f \"t^(p/q)\""))?;
    let t0_str = args
        .t0
        .as_deref()
        .ok_or_else(|| CliFailure::new(EXIT_ERROR, "rw model needs --t0"))?;
    let lambda = parse_power_law(f)?;
    let t0 = to_f64(&parse_rat(t0_str)?);
    let model = RwModel::power_law(lambda, 3, 1.0);
    let report = rw_r_harmonic_check(&model, t0, args.r, 1e-9)
        .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
    // exact curvature |λ|/t0 for the power-law family
    let kappa_exact = {
        let t0r = parse_rat(t0_str)?;
        let lam = Rat::new((*lambda.numer()).into(), (*lambda.denom()).into());
        let v = lam / t0r;
        if num_traits::Signed::is_negative(&v) {
            -v
        } else {
            v
        }
    };
    let result = ClassificationResult {
        theorem: "rw_power_law_r_harmonic".to_string(),
        status: if report.feasible {
            crate::classify::Feasibility::Feasible
        } else {
            crate::classify::Feasibility::Infeasible
        },
        solutions: if report.feasible {
            vec![Solution::Value {
                name: "kappa".to_string(),
                exact: kappa_exact.to_string(),
                decimal: decimal15(report.kappa),
                value: report.kappa,
                degenerate: false,
            }]
        } else {
            Vec::new()
        },
        certificate: if report.feasible {
            None
        } else {
            Some(format!(
                "power law exponent {lambda} is not (r-1)/r = {}/{}",
                args.r - 1,
                args.r
            ))
        },
    };
    let inputs = ClassifyInputs {
        model: "rw".to_string(),
        c: args.c.clone(),
        eps: args.eps.clone(),
        r: args.r,
        kappa_sq: Vec::new(),
        triharmonic: false,
        surface: false,
        f: Some(f.to_string()),
        t0: Some(t0_str.to_string()),
    };
    let report = json!({
        "command": "classify",
        "inputs": inputs,
        "result": result,
        "deceleration": power_law_deceleration(lambda).map(|q| q.to_string()),
    });
    write_or_print(args.out.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------------
// synthesize
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct SynthesizeInputs {
    pub m: usize,
    pub t: usize,
    pub c: f64,
    pub eps: Vec<i64>,
    pub kappas: Vec<f64>,
    pub s_range: (f64, f64),
    pub samples: usize,
    pub r: Vec<u32>,
    pub ruled: bool,
    pub k0: f64,
}

fn cmd_synthesize(args: &SynthesizeArgs, config: &Config) -> CliResult {
    let residual_max = resolve_gate(args.residual_max, config, "residual_max", 1e-6);
    let tol = SynthesisTolerances {
        ode_rel: resolve_tol(args.ode_rel, config, "ode_rel", 1e-10),
        ode_abs: resolve_tol(args.ode_abs, config, "ode_abs", 1e-12),
        drift_max: resolve_gate(args.drift_max, config, "drift_max", 1e-8),
    };
    let (s0, s1) = parse_range(&args.s_range)?;

    if args.ruled {
        return synthesize_ruled(args, (s0, s1), residual_max);
    }

    let sf = SpaceForm::new(args.m, args.t, args.c)
        .map_err(|e| CliFailure::new(EXIT_BAD_SIGNATURE, e.to_string()))?;
    let sig = Signature::from_ints(&args.eps, args.m, args.t)?;
    let helix = Helix::new(sig, args.kappas.clone())
        .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
    let curve = CurveSpec::Helix(helix);
    let mut problem = SynthesisProblem::with_standard_frame(sf, curve, (s0, s1), args.samples, tol)
        .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
    if let Some(point) = &args.point {
        problem.initial_point = parse_float_list(point)?;
    }
    if let Some(frame) = &args.frame {
        problem.initial_frame = frame
            .split(';')
            .map(parse_float_list)
            .collect::<Result<_, _>>()?;
    }
    let sol = match integrate_frenet(&problem) {
        Ok(sol) => sol,
        Err(SynthesisError::DriftExceeded { drift, bound, s }) => {
            return Err(CliFailure::new(
                EXIT_BOUND_EXCEEDED,
                format!("drift {drift:e} exceeded {bound:e} at s = {s}"),
            ))
        }
        Err(e) => return Err(CliFailure::new(EXIT_ERROR, e.to_string())),
    };

    let mut residuals = Vec::new();
    let mut pass = true;
    for &r in &args.r {
        let res = numeric_tension_in_space_form(&problem.curve, &problem.geometry, r, &sol.s)
            .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
        let max = res.iter().copied().fold(0.0, f64::max);
        pass &= max < residual_max;
        residuals.push(json!({"r": r, "max_residual": max}));
    }
    pass &= sol.diagnostics.max_drift < tol.drift_max;

    if let Some(csv) = &args.csv {
        let mut buf = Vec::new();
        sol.write_csv(&mut buf)
            .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
        fs::write(csv, buf)
            .map_err(|e| CliFailure::new(EXIT_ERROR, format!("cannot write CSV: {e}")))?;
    }
    let inputs = SynthesizeInputs {
        m: args.m,
        t: args.t,
        c: args.c,
        eps: args.eps.clone(),
        kappas: args.kappas.clone(),
        s_range: (s0, s1),
        samples: args.samples,
        r: args.r.clone(),
        ruled: false,
        k0: args.k0,
    };
    let report = json!({
        "command": "synthesize",
        "inputs": inputs,
        "diagnostics": sol.diagnostics,
        "residual_max_allowed": residual_max,
        "residuals": residuals,
        "pass": pass,
    });
    write_or_print(args.json.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(if pass { EXIT_OK } else { EXIT_BOUND_EXCEEDED })
}

fn synthesize_ruled(
    args: &SynthesizeArgs,
    span: (f64, f64),
    residual_max: f64,
) -> CliResult {
    let opts = crate::ode::OdeOptions::default();
    let pipe = ruled_pipeline(args.k0, span, args.samples, &opts)
        .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
    if let Some(csv) = &args.csv {
        let mut buf = Vec::new();
        pipe.write_csv(&mut buf)
            .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
        fs::write(csv, buf)
            .map_err(|e| CliFailure::new(EXIT_ERROR, format!("cannot write CSV: {e}")))?;
    }
    let pass = pipe.summary.max_res1 < residual_max && pipe.summary.max_res2 < residual_max;
    let inputs = SynthesizeInputs {
        m: 2,
        t: 1,
        c: 0.0,
        eps: vec![-1, 1, 1],
        kappas: Vec::new(),
        s_range: span,
        samples: args.samples,
        r: vec![3],
        ruled: true,
        k0: args.k0,
    };
    let report = json!({
        "command": "synthesize",
        "inputs": inputs,
        "summary": pipe.summary,
        "pass": pass,
    });
    write_or_print(args.json.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
    Ok(if pass { EXIT_OK } else { EXIT_BOUND_EXCEEDED })
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize, PartialEq, Debug, Clone)]
pub struct VerifyInputs {
    pub c: String,
    pub eps: Vec<i64>,
    pub kappa_sq: Vec<String>,
    pub r: u32,
}

/// Closed-form criterion for the given helix data, when one applies.
fn closed_form_check(sig: &Signature, q: &[Rat], c: &Rat, r: u32) -> Option<bool> {
    let eps = sig.eps();
    match (sig.n(), r) {
        (2, _) => Some(is_r_harmonic_2frenet(c, eps[1], r, &q[0])),
        (3, _) => Some(is_r_harmonic_3frenet(
            c,
            (eps[0], eps[1], eps[2]),
            r,
            &q[0],
            &q[1],
        )),
        (_, 2) => {
            let table = SpaceFormCurvature::new(c.clone(), eps[0]);
            let v = n_frenet_bitension_helix_scaled(eps, q, &table).ok()?;
            Some(v.iter().all(num_traits::Zero::is_zero))
        }
        (_, 3) => {
            let table = SpaceFormCurvature::new(c.clone(), eps[0]);
            let v = n_frenet_tritension_scaled(eps, q, &table).ok()?;
            Some(v.iter().all(num_traits::Zero::is_zero))
        }
        _ => None,
    }
}

fn cmd_verify(args: &VerifyArgs, _config: &Config) -> CliResult {
    let sig = signature_from(&args.eps, args.m, args.t)?;
    let c = parse_rat(&args.c)?;
    let q = parse_rat_list(&args.kappa_sq)?;
    if q.iter().any(|v| !num_traits::Signed::is_positive(v)) {
        return Err(CliFailure::new(
            EXIT_ERROR,
            "squared curvatures must be positive",
        ));
    }
    if q.len() + 1 != sig.n() {
        return Err(CliFailure::new(
            EXIT_ERROR,
            format!(
                "expected {} squared curvatures for a frame of order {}",
                sig.n() - 1,
                sig.n()
            ),
        ));
    }
    if args.r < 1 {
        return Err(CliFailure::new(EXIT_UNSUPPORTED, "r must be at least 1"));
    }
    let table = SpaceFormCurvature::new(c.clone(), sig.sign(0));
    let coeffs = tension_field_scaled(sig.eps(), &q, &table, args.r)
        .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?;
    let oracle_zero = coeffs.iter().all(num_traits::Zero::is_zero);
    let residual = coeffs
        .iter()
        .map(|x| to_f64(x) * to_f64(x))
        .sum::<f64>()
        .sqrt();
    let theorem = closed_form_check(&sig, &q, &c, args.r);
    let agree = theorem.map(|t| t == oracle_zero);
    let inputs = VerifyInputs {
        c: args.c.clone(),
        eps: args.eps.clone(),
        kappa_sq: args.kappa_sq.clone(),
        r: args.r,
    };
    let report = json!({
        "command": "verify",
        "inputs": inputs,
        "oracle": if oracle_zero { "zero" } else { "nonzero" },
        "scaled_residual": decimal15(residual),
        "theorem": theorem.map(|t| if t { "feasible" } else { "infeasible" }),
        "agree": agree,
    });
    write_or_print(args.out.as_deref(), &serde_json::to_string_pretty(&report).unwrap())?;
    match agree {
        Some(false) => Err(CliFailure::new(
            EXIT_ERROR,
            "oracle and closed form disagree",
        )),
        _ => Ok(EXIT_OK),
    }
}

// ---------------------------------------------------------------------------
// sweep
// ---------------------------------------------------------------------------

fn cmd_sweep(args: &SweepArgs, config: &Config) -> CliResult {
    let cap = args
        .max_points
        .or_else(|| config.get_usize("sweep_cap"))
        .unwrap_or(1_000_000);
    if args.model == "rw" {
        return sweep_rw(args);
    }
    if args.model != "spaceform" {
        return Err(CliFailure::new(
            EXIT_ERROR,
            format!("unknown model {:?}", args.model),
        ));
    }
    let sig = signature_from(&args.eps, None, None)?;
    if sig.n() != args.n || !(args.n == 2 || args.n == 3) {
        return Err(CliFailure::new(
            EXIT_UNSUPPORTED,
            "sweep supports frame orders 2 and 3 with matching --eps",
        ));
    }
    let cs = parse_rat_list(&args.c)?;
    let kappa_grid = parse_rational_grid(&args.kappa_sq_range)?;
    let tau_grid = match &args.tau_sq_range {
        Some(r) => parse_rational_grid(r)?,
        None => {
            if args.n == 3 && !args.solve {
                kappa_grid.clone()
            } else {
                Vec::new()
            }
        }
    };

    let mut out = String::new();
    let mut rows = 0usize;
    if args.solve {
        if args.n != 3 {
            return Err(CliFailure::new(
                EXIT_UNSUPPORTED,
                "--solve applies to order-3 frames",
            ));
        }
        out.push_str("c,r,kappa_sq,tau_sq_1,tau_sq_2,degenerate_roots\n");
        for c in &cs {
            for &r in &args.r {
                for q in &kappa_grid {
                    rows += 1;
                    if rows > cap {
                        return Err(CliFailure::new(EXIT_ERROR, "grid exceeds --max-points"));
                    }
                    let res = classify_3frenet(
                        c,
                        (sig.sign(0), sig.sign(1), sig.sign(2)),
                        r,
                        Some(q),
                    )
                    .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?;
                    let mut roots: Vec<f64> = res.values();
                    roots.sort_by(f64::total_cmp);
                    let degenerate = res
                        .solutions
                        .iter()
                        .filter(|s| s.is_degenerate())
                        .count();
                    let c1 = roots
                        .first()
                        .map(|v| decimal15(*v))
                        .unwrap_or_default();
                    let c2 = roots.get(1).map(|v| decimal15(*v)).unwrap_or_default();
                    out.push_str(&format!(
                        "{c},{r},{},{c1},{c2},{degenerate}\n",
                        to_f64(q)
                    ));
                }
            }
        }
    } else {
        out.push_str("c,r,kappa_sq,tau_sq,classifier,oracle_zero,residual,agree\n");
        for c in &cs {
            for &r in &args.r {
                let table = SpaceFormCurvature::new(c.clone(), sig.sign(0));
                let taus: &[Rat] = if args.n == 2 {
                    &[]
                } else {
                    &tau_grid
                };
                let tau_iter: Vec<Option<&Rat>> = if args.n == 2 {
                    vec![None]
                } else {
                    taus.iter().map(Some).collect()
                };
                for q in &kappa_grid {
                    for tau in &tau_iter {
                        rows += 1;
                        if rows > cap {
                            return Err(CliFailure::new(EXIT_ERROR, "grid exceeds --max-points"));
                        }
                        let (verdict, coeffs) = match tau {
                            None => (
                                is_r_harmonic_2frenet(c, sig.sign(1), r, q),
                                tension_field_scaled(sig.eps(), std::slice::from_ref(q), &table, r)
                                    .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?,
                            ),
                            Some(t) => (
                                is_r_harmonic_3frenet(
                                    c,
                                    (sig.sign(0), sig.sign(1), sig.sign(2)),
                                    r,
                                    q,
                                    t,
                                ),
                                tension_field_scaled(
                                    sig.eps(),
                                    &[q.clone(), (*t).clone()],
                                    &table,
                                    r,
                                )
                                .map_err(|e| CliFailure::new(EXIT_UNSUPPORTED, e.to_string()))?,
                            ),
                        };
                        let zero = coeffs.iter().all(num_traits::Zero::is_zero);
                        let residual = coeffs
                            .iter()
                            .map(|x| to_f64(x) * to_f64(x))
                            .sum::<f64>()
                            .sqrt();
                        out.push_str(&format!(
                            "{c},{r},{},{},{},{},{},{}\n",
                            to_f64(q),
                            tau.map(|t| to_f64(t).to_string()).unwrap_or_default(),
                            verdict as u8,
                            zero as u8,
                            decimal15(residual),
                            (verdict == zero) as u8,
                        ));
                    }
                }
            }
        }
    }
    match &args.csv {
        Some(path) => fs::write(path, out)
            .map_err(|e| CliFailure::new(EXIT_ERROR, format!("cannot write CSV: {e}")))?,
        None => print!("{out}"),
    }
    Ok(EXIT_OK)
}

fn sweep_rw(args: &SweepArgs) -> CliResult {
    let mut out = String::new();
    if let Some(range) = args.t0_range.as_deref() {
        // fixed power law, evaluation time swept: rows (t0, kappa, verdict)
        let f = args
            .f
            .as_deref()
            .ok_or_else(|| CliFailure::new(EXIT_ERROR, "rw t0 sweep needs --f"))?;
        let lambda = parse_power_law(f)?;
        let model = RwModel::power_law(lambda, 3, 1.0);
        let grid = parse_rational_grid(range)?;
        out.push_str("t0,r,kappa,feasible\n");
        for &r in &args.r {
            for t0 in &grid {
                let t = to_f64(t0);
                let report = rw_r_harmonic_check(&model, t, r, 1e-9)
                    .map_err(|e| CliFailure::new(EXIT_ERROR, e.to_string()))?;
                out.push_str(&format!(
                    "{t0},{r},{},{}\n",
                    decimal15(report.kappa),
                    report.feasible as u8
                ));
            }
        }
    } else {
        let range = args
            .lambda_range
            .as_deref()
            .ok_or_else(|| CliFailure::new(EXIT_ERROR, "rw sweep needs --lambda-range or --t0-range"))?;
        let grid = parse_rational_grid(range)?;
        out.push_str("lambda,r,feasible,deceleration\n");
        for &r in &args.r {
            for lambda in &grid {
                let num = lambda.numer().to_i64().unwrap_or(0);
                let den = lambda.denom().to_i64().unwrap_or(1);
                let l = Rational64::new(num, den);
                let feasible = power_law_r_harmonic(l, r);
                let q = power_law_deceleration(l)
                    .map(|v| v.to_string())
                    .unwrap_or_default();
                out.push_str(&format!("{l},{r},{},{q}\n", feasible as u8));
            }
        }
    }
    match &args.csv {
        Some(path) => fs::write(path, out)
            .map_err(|e| CliFailure::new(EXIT_ERROR, format!("cannot write CSV: {e}")))?,
        None => print!("{out}"),
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_law_parsing() {
        assert_eq!(parse_power_law("t^(1/2)").unwrap(), Rational64::new(1, 2));
        assert_eq!(parse_power_law("t^2/3").unwrap(), Rational64::new(2, 3));
        assert_eq!(parse_power_law("t^0.75").unwrap(), Rational64::new(3, 4));
        assert!(parse_power_law("exp(t)").is_err());
    }

    #[test]
    fn rational_grid_is_inclusive() {
        let grid = parse_rational_grid("1/4:1:1/4").unwrap();
        assert_eq!(grid.len(), 4);
        assert_eq!(to_f64(&grid[0]), 0.25);
        assert_eq!(to_f64(&grid[3]), 1.0);
    }

    #[test]
    fn signature_errors_surface_as_exit_code_two() {
        let code = run_from(["polyfrenet", "classify", "--eps", "-1,-1", "--m", "3", "--t", "1"]);
        assert_eq!(code, EXIT_BAD_SIGNATURE);
    }

    #[test]
    fn unsupported_order_is_exit_code_three() {
        let code = run_from([
            "polyfrenet",
            "classify",
            "--eps",
            "1,1,-1,1",
            "--c",
            "1",
            "--r",
            "5",
        ]);
        assert_eq!(code, EXIT_UNSUPPORTED);
    }
}
