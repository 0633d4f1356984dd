//! Run configurations and the pipelines behind each command.

use std::path::{Path, PathBuf};

use heatsym_core::chern::index_density_scalar;
use heatsym_core::cm::{
    aps_spectral_flow, bott_projector, cocycle_residual, pair_even, pair_odd, Cochain, CmCocycle, CmError, FnMatrix,
    ModelFunction,
};
use heatsym_core::geometry::{laplace_beltrami_symbol, lichnerowicz_symbol, CurvatureData};
use heatsym_core::volterra::{heat_coefficients, VolterraError};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::io::{self, InputError, TrigInput};
use crate::oracle;
use crate::report::{exact, form, graded, Check, Report};
use crate::verify::{self, Tolerances, VerifyConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    IndexDensity,
    HeatCoeffs,
    CmEven,
    CmOdd,
    Pair,
    SpectralFlow,
    VerifyAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::IndexDensity => "index-density",
            Command::HeatCoeffs => "heat-coeffs",
            Command::CmEven => "cm-even",
            Command::CmOdd => "cm-odd",
            Command::Pair => "pair",
            Command::SpectralFlow => "spectral-flow",
            Command::VerifyAll => "verify-all",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Operator {
    #[default]
    LaplaceBeltrami,
    Dirac,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct RunConfig {
    pub command: Command,
    pub curvature: Option<PathBuf>,
    pub input: Option<PathBuf>,
    /// Number of heat coefficients after a₀.
    #[serde(default = "default_depth")]
    pub depth: u32,
    #[serde(default)]
    pub operator: Operator,
    #[serde(default)]
    pub bott: bool,
    pub winding: Option<i64>,
    #[serde(default = "default_cutoff")]
    pub cutoff: usize,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

fn default_depth() -> u32 {
    1
}

fn default_cutoff() -> usize {
    64
}

fn default_seed() -> u64 {
    VerifyConfig::default().seed
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            curvature: None,
            input: None,
            depth: default_depth(),
            operator: Operator::default(),
            bott: false,
            winding: None,
            cutoff: default_cutoff(),
            tolerances: Tolerances::default(),
            seed: default_seed(),
            output: None,
            csv: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Invalid(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

impl RunError {
    /// 2 for unusable input, 3 for an internal invariant breach.
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Input(_) | RunError::Invalid(_) | RunError::Write { .. } => 2,
            RunError::Internal(_) => 3,
        }
    }
}

fn internal(e: impl std::fmt::Display) -> RunError {
    RunError::Internal(e.to_string())
}

/// Input-dependent CM failures (wrong arity, not a projection, …) are the
/// caller's fault; anything else is ours.
fn cm_error(e: CmError) -> RunError {
    match e {
        CmError::Algebra(_) => internal(e),
        _ => RunError::Invalid(e.to_string()),
    }
}

fn required<'a>(p: &'a Option<PathBuf>, flag: &str) -> Result<&'a Path, RunError> {
    p.as_deref().ok_or_else(|| RunError::Invalid(format!("{flag} is required")))
}

fn load_curvature(cfg: &RunConfig) -> Result<CurvatureData, RunError> {
    let text = io::read_file(required(&cfg.curvature, "--curvature")?)?;
    Ok(io::parse_curvature(&text)?)
}

fn load_trig(cfg: &RunConfig) -> Result<TrigInput, RunError> {
    let text = io::read_file(required(&cfg.input, "--input")?)?;
    Ok(io::parse_trig(&text)?)
}

pub fn run_report(cfg: &RunConfig) -> Result<Report, RunError> {
    match cfg.command {
        Command::IndexDensity => index_density(cfg),
        Command::HeatCoeffs => heat_coeffs(cfg),
        Command::CmEven => cm_component(cfg, true),
        Command::CmOdd => cm_component(cfg, false),
        Command::Pair => pair(cfg),
        Command::SpectralFlow => spectral_flow(cfg),
        Command::VerifyAll => verify_all(cfg),
    }
}

fn index_density(cfg: &RunConfig) -> Result<Report, RunError> {
    let c = load_curvature(cfg)?;
    let mut r = Report::new("index-density");
    let density = index_density_scalar(&c);
    r.set("dim", json!(c.dim())).set("rank", json!(c.rank())).set("density", exact(&density));
    if c.dim() % 2 == 1 {
        r.set("routes", json!(["characteristic-forms"]));
        r.check(Check::new("odd-dimension-vanishes", density.is_zero(), "top degree of Â∧Ch is even"));
        return Ok(r);
    }
    let symbolic = verify::symbolic_index_density(&c).map_err(RunError::Internal)?;
    r.set("routes", json!(["characteristic-forms", "getzler-parametrix"])).set("symbolic", exact(&symbolic));
    r.check(Check::new("routes-agree", symbolic == density, "exact equality"));
    Ok(r)
}

fn heat_coeffs(cfg: &RunConfig) -> Result<Report, RunError> {
    let c = load_curvature(cfg)?;
    let p = match cfg.operator {
        Operator::LaplaceBeltrami => laplace_beltrami_symbol(&c),
        Operator::Dirac => lichnerowicz_symbol(&c),
    }
    .map_err(internal)?;
    let coeffs = heat_coefficients(&p, cfg.depth, None).map_err(|e| match e {
        VolterraError::InsufficientJets { .. } => RunError::Invalid(e.to_string()),
        e => internal(e),
    })?;
    let mut r = Report::new("heat-coeffs");
    let operator = match cfg.operator {
        Operator::LaplaceBeltrami => "laplace-beltrami",
        Operator::Dirac => "dirac",
    };
    r.set("operator", json!(operator)).set("dim", json!(c.dim()));
    r.set("coefficients", Value::Array(coeffs.iter().enumerate().map(|(l, a)| json!({"l": l, "value": form(a)})).collect()));
    Ok(r)
}

fn cm_component(cfg: &RunConfig, even: bool) -> Result<Report, RunError> {
    let TrigInput::Tuple(args) = load_trig(cfg)? else {
        return Err(RunError::Invalid("expected a \"functions\" tuple".into()));
    };
    let dim = args.first().map(ModelFunction::manifold_dim).ok_or_else(|| RunError::Invalid("empty tuple".into()))?;
    if (dim % 2 == 0) != even {
        return Err(RunError::Invalid(format!("T^{dim} carries the {} cocycle", if even { "odd" } else { "even" })));
    }
    let phi = CmCocycle::new(dim);
    let mut r = Report::new(if even { "cm-even" } else { "cm-odd" });
    r.set("dim", json!(dim)).set("arguments", json!(args.len()));
    let degree = args.len() - 1;
    if degree % 2 == dim as usize % 2 {
        let v = phi.eval(&args).map_err(cm_error)?;
        r.set("degree", json!(degree)).set("value", exact(&v));
    } else {
        // wrong parity for a component: evaluate (b+B)φ on the tuple instead
        let res = cocycle_residual(&phi, &args).map_err(cm_error)?;
        r.set("residual", graded(&res));
        r.check(Check::new("cocycle", res.is_zero(), format!("(b+B)φ on {} arguments", args.len())));
    }
    Ok(r)
}

fn integer_check(r: &mut Report, name: &str, v: &heatsym_core::algebra::ExtScalar) {
    let k = v.as_integer();
    r.check(Check::new(name, k.is_some(), k.map_or("not an integer".into(), |k| k.to_string())));
}

fn pair(cfg: &RunConfig) -> Result<Report, RunError> {
    let mut r = Report::new("pair");
    if cfg.bott {
        let v = pair_even(&CmCocycle::new(2), &bott_projector()).map_err(cm_error)?;
        r.set("geometry", json!("S2")).set("value", exact(&v));
        integer_check(&mut r, "integer", &v);
        return Ok(r);
    }
    let m: FnMatrix<_> = match load_trig(cfg)? {
        TrigInput::Matrix(m) => m,
        TrigInput::Function(f) => FnMatrix::scalar(f),
        TrigInput::Tuple(_) => return Err(RunError::Invalid("expected \"matrix\" or \"terms\"".into())),
    };
    let dim = m.get(0, 0).manifold_dim();
    let phi = CmCocycle::new(dim);
    r.set("geometry", json!(format!("T{dim}")));
    if dim % 2 == 0 {
        let v = pair_even(&phi, &m).map_err(cm_error)?;
        r.set("value", exact(&v));
        integer_check(&mut r, "integer", &v);
    } else {
        let v = pair_odd(&phi, &m).map_err(cm_error)?;
        let aps = aps_spectral_flow(&m).map_err(cm_error)?;
        r.set("value", exact(&v)).set("aps", exact(&aps));
        integer_check(&mut r, "integer", &v);
        r.check(Check::new("aps-agrees", v == aps, "exact equality with the spectral flow formula"));
    }
    Ok(r)
}

fn spectral_flow(cfg: &RunConfig) -> Result<Report, RunError> {
    let w = cfg.winding.ok_or_else(|| RunError::Invalid("--winding is required".into()))?;
    let track = oracle::spectral_flow_track(w, cfg.cutoff).map_err(|e| RunError::Invalid(e.to_string()))?;
    let u = FnMatrix::scalar(heatsym_core::cm::TrigFunction::exp(&[w]));
    let p = pair_odd(&CmCocycle::new(1), &u).map_err(internal)?;
    let aps = aps_spectral_flow(&u).map_err(internal)?;
    let as_int = |v: &heatsym_core::algebra::ExtScalar| v.as_integer().and_then(|k| i64::try_from(k).ok());
    let matched = as_int(&aps) == Some(track.sf) && as_int(&p) == Some(track.sf);
    let mut r = Report::new("spectral-flow");
    r.set("winding", json!(w))
        .set("cutoff", json!(cfg.cutoff))
        .set("sf", json!(track.sf))
        .set("toeplitzIndex", json!(track.toeplitz_index))
        .set("aps", json!(as_int(&aps)))
        .set("pairOdd", json!(as_int(&p)))
        .set("apsExact", exact(&aps))
        .set("match", json!(matched));
    r.check(Check::new("match", matched, "tracked crossings, odd pairing and APS formula"));
    Ok(r)
}

fn verify_all(cfg: &RunConfig) -> Result<Report, RunError> {
    let vc = VerifyConfig { seed: cfg.seed, tol: cfg.tolerances, ..VerifyConfig::default() };
    let mut r = Report::new("verify-all");
    r.set("seed", json!(cfg.seed));
    for out in verify::run_all(&vc) {
        r.check(Check::new(out.id, out.pass, format!("{}: {}", out.title, out.detail)));
    }
    if let Some(path) = &cfg.csv {
        let fit = verify::a2_fit().map_err(internal)?;
        write_fit_csv(path, &fit)?;
    }
    Ok(r)
}

pub fn write_fit_csv(path: &Path, fit: &oracle::HeatTraceFit) -> Result<(), RunError> {
    let err = |e: &dyn std::fmt::Display| RunError::Write { path: path.display().to_string(), message: e.to_string() };
    let mut w = csv::Writer::from_path(path).map_err(|e| err(&e))?;
    w.write_record(["t", "trace", "fit"]).map_err(|e| err(&e))?;
    for (t, trace, fitted) in &fit.table {
        w.write_record([t.to_string(), trace.to_string(), fitted.to_string()]).map_err(|e| err(&e))?;
    }
    w.flush().map_err(|e| err(&e))
}
