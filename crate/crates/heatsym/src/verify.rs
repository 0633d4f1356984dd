//! The acceptance suite A1–A8: exact identities checked on seeded random
//! instances and against the numeric oracles.

use heatsym_core::algebra::{int, rat, supertrace_even, Cyclo8, ExtScalar, FormElement, Matrix, ProductRule, Rational};
use heatsym_core::chern::index_density_scalar;
use heatsym_core::cm::{
    aps_spectral_flow, bott_projector, cocycle_residual, pair_even, pair_odd, CmCocycle, FnMatrix, TrigFunction,
};
use heatsym_core::geometry::{laplace_beltrami_symbol, lichnerowicz_symbol, CurvatureData};
use heatsym_core::getzler::{getzler_order, getzler_part, kernel_leading_term, model_operator};
use heatsym_core::jet::Monomial;
use heatsym_core::volterra::{heat_coefficients, parametrix, radial_eval, SymKey, VolterraSymbol};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Deserialize;

use crate::oracle::{self, PdeGrid, SpectrumModel};

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub spectral: f64,
    /// Tolerance for the subleading fit coefficient c₁.
    pub spectral_c1: f64,
    pub pde: f64,
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { spectral: 1e-6, spectral_c1: 1e-5, pde: 1e-4, quadrature: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub tol: Tolerances,
    pub a1_instances: usize,
    pub cutoff: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0x5eed, tol: Tolerances::default(), a1_instances: 24, cutoff: 64 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub id: &'static str,
    pub title: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn outcome(id: &'static str, title: &'static str, failures: Vec<String>, ok: String) -> Outcome {
    let pass = failures.is_empty();
    let detail = if pass { ok } else { failures.join("; ") };
    Outcome { id, title, pass, detail }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

fn random_symmetric(r: &mut ChaCha8Rng, n: usize) -> Vec<Vec<Rational>> {
    let mut h = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in i..n {
            let v = int(r.random_range(-2..=2));
            h[i][j] = v.clone();
            h[j][i] = v;
        }
    }
    h
}

fn random_twist(r: &mut ChaCha8Rng, n: usize, rank: usize) -> Vec<Matrix> {
    let mut out = vec![Matrix::zero(rank); n * n];
    for k in 0..n {
        for l in (k + 1)..n {
            let mut m = Matrix::zero(rank);
            for a in 0..rank {
                m.set(a, a, Cyclo8::complex(int(0), int(r.random_range(-2..=2))));
                for b in (a + 1)..rank {
                    let (re, im) = (int(r.random_range(-2..=2)), int(r.random_range(-2..=2)));
                    m.set(a, b, Cyclo8::complex(re.clone(), im.clone()));
                    m.set(b, a, Cyclo8::complex(-re, im));
                }
            }
            out[l * n + k] = m.neg();
            out[k * n + l] = m;
        }
    }
    out
}

/// Random curvature: two Kulkarni–Nomizu squares with rational weights and
/// an antihermitian twist.
pub fn random_curvature(r: &mut ChaCha8Rng, n: u32, rank: usize) -> CurvatureData {
    let nn = n as usize;
    let weight = |r: &mut ChaCha8Rng| {
        let num = [-3, -2, -1, 1, 2, 3][r.random_range(0..6)];
        rat(num, r.random_range(1..=3))
    };
    let forms = [(weight(r), random_symmetric(r, nn)), (weight(r), random_symmetric(r, nn))];
    let twist = random_twist(r, nn, rank);
    CurvatureData::from_symmetric_forms(n, &forms, rank, twist).expect("Kulkarni–Nomizu squares are curvature tensors")
}

/// Getzler-limit supertrace of the parametrix kernel, or why it is undefined.
pub fn symbolic_index_density(c: &CurvatureData) -> Result<ExtScalar, String> {
    let n = c.dim();
    let p = lichnerowicz_symbol(c).map_err(|e| e.to_string())?;
    let q = parametrix(&p.symbol, n, 0).map_err(|e| e.to_string())?;
    let order = getzler_order(&q.symbol).map_err(|e| e.to_string())?;
    if order != -2 {
        return Err(format!("Getzler order {order}, expected -2"));
    }
    let lead = kernel_leading_term(&q.symbol, n).map_err(|e| e.to_string())?;
    if lead.t_exp2 != 0 {
        return Err(format!("leading power t^({}/2), expected t^0", lead.t_exp2));
    }
    supertrace_even(&lead.coefficient).map_err(|e| e.to_string())
}

pub fn a1_local_index(cfg: &VerifyConfig) -> Outcome {
    let mut r = rng(cfg.seed, 1);
    let shapes = [(2, 1), (2, 2), (4, 1), (4, 2)];
    let instances: Vec<(u32, usize, CurvatureData)> = (0..cfg.a1_instances)
        .map(|i| {
            let (n, p) = shapes[i % shapes.len()];
            (n, p, random_curvature(&mut r, n, p))
        })
        .collect();
    let failures: Vec<String> = instances
        .par_iter()
        .enumerate()
        .filter_map(|(i, (n, p, c))| match symbolic_index_density(c) {
            Ok(v) if v == index_density_scalar(c) => None,
            Ok(v) => Some(format!("#{i} n={n} p={p}: {v:?} vs {:?}", index_density_scalar(c))),
            Err(e) => Some(format!("#{i} n={n} p={p}: {e}")),
        })
        .collect();
    let ok = format!("{} instances, exact equality", instances.len());
    outcome("A1", "local index density, symbolic vs characteristic forms", failures, ok)
}

/// Fit of t·Tr e^{−tΔ} on S² over 40 points in (0, 0.05].
pub fn a2_fit() -> Result<oracle::HeatTraceFit, oracle::OracleError> {
    oracle::heat_trace_fit(SpectrumModel::SphereLaplacian, &oracle::t_grid(0.05, 40), 5)
}

pub fn a2_heat_coefficient(cfg: &VerifyConfig) -> Outcome {
    let mut failures = Vec::new();
    let sphere = CurvatureData::constant_curvature(2, rat(1, 1)).expect("round sphere");
    let expected = ExtScalar::new(Cyclo8::from_rational(rat(1, 12)), -2);
    match laplace_beltrami_symbol(&sphere).map_err(|e| e.to_string()).and_then(|p| heat_coefficients(&p, 1, None).map_err(|e| e.to_string())) {
        Ok(a) => match a[1].as_scalar() {
            Some(v) if v == expected => {}
            other => failures.push(format!("symbolic a1 = {other:?}")),
        },
        Err(e) => failures.push(e),
    }
    let mut ok = String::new();
    match a2_fit() {
        Ok(fit) => {
            let (c0, c1) = (fit.coefficients[0], fit.coefficients[1]);
            if (c0 - 1.0).abs() > cfg.tol.spectral {
                failures.push(format!("fit c0 = {c0:.12}"));
            }
            if (c1 - 1.0 / 3.0).abs() > cfg.tol.spectral_c1 {
                failures.push(format!("fit c1 = {c1:.12}"));
            }
            let half = oracle::heat_trace_fit(SpectrumModel::SphereLaplacian, &oracle::t_grid(0.1, 40), 5);
            if let Ok(wide) = half {
                // the wider window must fit worse if we are in the asymptotic regime
                if wide.residual < fit.residual {
                    failures.push(format!("residual {:.3e} does not improve on {:.3e}", fit.residual, wide.residual));
                }
            }
            ok = format!("a1 = (1/3)(4π)^-1 exactly; fit c0 = {c0:.10}, c1 = {c1:.10}");
        }
        Err(e) => failures.push(e.to_string()),
    }
    outcome("A2", "heat coefficient a1 on S²", failures, ok)
}

pub fn a3_mehler(cfg: &VerifyConfig) -> Outcome {
    let grid = PdeGrid::default();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    let runs: Vec<(String, Result<oracle::PdeCheck, oracle::OracleError>)> = [0.0, 0.5, 1.0]
        .into_par_iter()
        .map(|a| (format!("1D a={a}"), oracle::mehler_pde_check_1d(a, 0.5, grid)))
        .chain([0.5, 1.0].into_par_iter().map(|a| (format!("2D a={a}"), oracle::mehler_pde_check_2d(a, 0.5, grid))))
        .collect();
    for (name, r) in runs {
        match r {
            Ok(c) if c.max_relative_error <= cfg.tol.pde => worst = worst.max(c.max_relative_error),
            Ok(c) => failures.push(format!("{name}: error {:.3e}", c.max_relative_error)),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome("A3", "Mehler kernel vs PDE solve", failures, format!("max relative error {worst:.2e}"))
}

pub fn a4_spectral_flow(cfg: &VerifyConfig) -> Outcome {
    let phi = CmCocycle::new(1);
    let failures: Vec<String> = (-2i64..=2)
        .into_par_iter()
        .filter_map(|w| {
            let u = FnMatrix::scalar(TrigFunction::exp(&[w]));
            let sf = oracle::spectral_flow_track(w, cfg.cutoff);
            let sf8 = oracle::spectral_flow_track(w, cfg.cutoff + 8);
            let pairing = pair_odd(&phi, &u).map(|v| v.as_integer());
            let aps = aps_spectral_flow(&u).map(|v| v.as_integer());
            let want = Some(w.into());
            match (&sf, &sf8, &pairing, &aps) {
                (Ok(a), Ok(b), Ok(p), Ok(q)) if a.sf == w && a == b && *p == want && *q == want => None,
                _ => Some(format!("w={w}: track {sf:?}, K+8 {sf8:?}, pairOdd {pairing:?}, APS {aps:?}")),
            }
        })
        .collect();
    outcome("A4", "spectral flow = odd pairing = APS on S¹", failures, format!("w = -2..2 at cutoff {}", cfg.cutoff))
}

pub fn a5_even_pairing(_cfg: &VerifyConfig) -> Outcome {
    let mut failures = Vec::new();
    let phi = CmCocycle::new(2);
    match pair_even(&phi, &bott_projector()) {
        Ok(v) => match v.as_integer() {
            Some(k) if k == 1.into() || k == (-1).into() => {}
            _ => failures.push(format!("Bott pairing {v:?}")),
        },
        Err(e) => failures.push(e.to_string()),
    }
    let like = TrigFunction::zero(2);
    let q = |a, b| Cyclo8::from_rational(rat(a, b));
    let projectors = [
        vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(0, 1)]],
        vec![vec![q(9, 25), q(12, 25)], vec![q(12, 25), q(16, 25)]],
        vec![vec![q(1, 1), q(0, 1)], vec![q(0, 1), q(1, 1)]],
    ];
    for rows in &projectors {
        let e = FnMatrix::constant(&like, rows).expect("square");
        match pair_even(&phi, &e) {
            Ok(v) if v.is_zero() => {}
            other => failures.push(format!("constant projector pairing {other:?}")),
        }
    }
    outcome("A5", "even pairing integrality", failures, "Bott pairing ±1; constant projectors 0".into())
}

/// (β, N, n) cases for the radial evaluation.
pub const A6_CASES: [(&[u32], i32, u32); 10] = [
    (&[0, 0], 1, 2),
    (&[2, 0], 2, 2),
    (&[1, 0], 1, 2),
    (&[2, 2], 3, 2),
    (&[4, 0], 3, 2),
    (&[0, 0, 2], 2, 3),
    (&[2, 2, 2], 4, 3),
    (&[4, 2, 0], 4, 3),
    (&[2, 0, 2, 0], 3, 4),
    (&[6], 4, 1),
];

pub fn a6_radial(cfg: &VerifyConfig) -> Outcome {
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for (beta, n_pow, n) in A6_CASES {
        let key = SymKey::new(Monomial::ONE, Monomial::from_exponents(beta), n_pow);
        let q = VolterraSymbol::term(key, FormElement::one(n, 1), ProductRule::Clifford);
        let exact = radial_eval(&q).as_scalar().expect("scalar input").to_complex_f64();
        match oracle::quadrature_radial(beta, n_pow, n) {
            Ok(v) => {
                let err = (exact.0 - v).abs().max(exact.1.abs());
                worst = worst.max(err);
                if err > cfg.tol.quadrature {
                    failures.push(format!("β={beta:?} N={n_pow} n={n}: {} vs {v}", exact.0));
                }
            }
            Err(e) => failures.push(e.to_string()),
        }
    }
    outcome("A6", "radial evaluation vs Gauss–Hermite", failures, format!("10 cases, max error {worst:.1e}"))
}

fn random_trig(r: &mut ChaCha8Rng, dim: usize) -> TrigFunction {
    let count = r.random_range(1..4);
    let terms: Vec<(Vec<i64>, Cyclo8)> = (0..count)
        .map(|_| {
            let m = (0..dim).map(|_| r.random_range(-2..=2)).collect();
            (m, Cyclo8::complex(int(r.random_range(-3..=3)), int(r.random_range(-3..=3))))
        })
        .collect();
    TrigFunction::from_terms(dim as u32, terms).expect("consistent dimension")
}

pub fn a7_cocycle(cfg: &VerifyConfig) -> Outcome {
    let mut r = rng(cfg.seed, 7);
    let mut tuples: Vec<(usize, Vec<TrigFunction>)> = Vec::with_capacity(100);
    for (dim, len) in [(2, 4), (1, 3)] {
        for _ in 0..50 {
            tuples.push((dim, (0..len).map(|_| random_trig(&mut r, dim)).collect()));
        }
    }
    let failures: Vec<String> = tuples
        .par_iter()
        .enumerate()
        .filter_map(|(i, (dim, args))| {
            let phi = CmCocycle::new(*dim as u32);
            // top level and the lowest level of the same parity
            let low = if *dim == 2 { 2 } else { 1 };
            for slice in [&args[..], &args[..low]] {
                match cocycle_residual(&phi, slice) {
                    Ok(s) if s.is_zero() => {}
                    other => return Some(format!("tuple #{i} on T^{dim}, {} arguments: {other:?}", slice.len())),
                }
            }
            None
        })
        .collect();
    outcome("A7", "(b+B)φ = 0 on T² and T¹", failures, "50 tuples on T², 50 on T¹".into())
}

fn random_symbol(r: &mut ChaCha8Rng, n: u32, allow_inverse: bool) -> VolterraSymbol {
    loop {
        let mut acc = VolterraSymbol::zero(n, 1, ProductRule::Clifford, 0);
        for _ in 0..r.random_range(1..5) {
            let xv = r.random_range(0..=n);
            let x = if xv < n { Monomial::var(xv) } else { Monomial::ONE };
            let mut xi = Monomial::ONE;
            for _ in 0..2 {
                let v = r.random_range(0..=n);
                if v < n {
                    xi = xi.raise(v);
                }
            }
            let np = if allow_inverse { r.random_range(0..=1) } else { 0 };
            let mask = r.random_range(0..(1u32 << n));
            let c = r.random_range(-3i64..=3);
            let coeff = FormElement::from_blade(n, mask, Matrix::scalar(1, Cyclo8::from_int(c)));
            let t = VolterraSymbol::term(SymKey::new(x, xi, np), coeff, ProductRule::Clifford);
            acc = if acc.is_zero() { t } else { acc.add(&t).expect("same shape") };
        }
        if !acc.is_zero() {
            return acc;
        }
    }
}

pub fn a8_getzler(cfg: &VerifyConfig) -> Outcome {
    let mut r = rng(cfg.seed, 8);
    let pairs: Vec<_> = (0..20).map(|_| (random_symbol(&mut r, 3, true), random_symbol(&mut r, 3, false))).collect();
    let mut additive = 0;
    let mut failures = Vec::new();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let check = || -> Result<bool, String> {
            let (m1, p1) = model_operator(a).map_err(|e| e.to_string())?;
            let (m2, p2) = model_operator(b).map_err(|e| e.to_string())?;
            let prod = a.compose(b, None).map_err(|e| e.to_string())?;
            let models = p1.compose(&p2, None).map_err(|e| e.to_string())?;
            if models.is_zero() {
                let dropped = prod.is_zero() || getzler_order(&prod).map_err(|e| e.to_string())? < m1 + m2;
                return if dropped { Ok(false) } else { Err("order did not drop".into()) };
            }
            if getzler_order(&prod).map_err(|e| e.to_string())? != m1 + m2 || getzler_part(&prod, m1 + m2) != models {
                return Err("model of product differs from product of models".into());
            }
            Ok(true)
        };
        match check() {
            Ok(true) => additive += 1,
            Ok(false) => {}
            Err(e) => failures.push(format!("pair #{i}: {e}")),
        }
    }
    let ok = format!("20 pairs, {additive} with additive order, {} with strict drop", 20 - additive);
    outcome("A8", "Getzler filtration laws", failures, ok)
}

pub type Criterion = fn(&VerifyConfig) -> Outcome;

pub const ALL: [Criterion; 8] = [
    a1_local_index,
    a2_heat_coefficient,
    a3_mehler,
    a4_spectral_flow,
    a5_even_pairing,
    a6_radial,
    a7_cocycle,
    a8_getzler,
];

pub fn run_all(cfg: &VerifyConfig) -> Vec<Outcome> {
    ALL.iter().map(|f| f(cfg)).collect()
}
