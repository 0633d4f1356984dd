//! Floating-point oracles that share no arithmetic with the symbolic engine:
//! exact spectra, Crank–Nicolson solves, eigenvalue tracking and
//! Gauss–Hermite quadrature.

use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("least-squares fit is ill-conditioned (condition number {0:.3e}); widen the t-grid")]
    IllConditioned(f64),
    #[error("t-grid must be nonempty, positive and have more points than unknowns")]
    BadGrid,
    #[error("cutoff {cutoff} is too small for winding {winding}")]
    CutoffTooSmall { cutoff: usize, winding: i64 },
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("at = {0} is past the focal point π")]
    FocalPoint(f64),
    #[error("N = {0}: the inverse transform of (|ξ|²+iτ)^{{−N}} needs N ≥ 1")]
    Divergent(i32),
}

/// Exactly solvable operators given by their spectra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpectrumModel {
    /// Laplace–Beltrami on the unit S²: λ_l = l(l+1), multiplicity 2l+1.
    SphereLaplacian,
    /// Dirac operator on S² twisted by the monopole of charge q:
    /// ±√(m(m+|q|)) with multiplicity 2m+|q| each (m ≥ 1), kernel of dimension |q|.
    MonopoleDirac { q: i64 },
    /// −i d/dθ on S¹: every integer once.
    CircleDirac,
}

impl SpectrumModel {
    /// Dimension of the underlying manifold.
    pub fn dim(&self) -> u32 {
        match self {
            SpectrumModel::CircleDirac => 1,
            _ => 2,
        }
    }

    /// Tr e^{−tP} for P = Δ (Laplacian) or D² (Dirac), summed until the tail
    /// is below `tol` relative to the partial sum.
    pub fn heat_trace(&self, t: f64, tol: f64) -> f64 {
        let mut acc = 0.0;
        let mut k: u64 = 0;
        loop {
            let term = match *self {
                SpectrumModel::SphereLaplacian => (2 * k + 1) as f64 * (-t * (k * (k + 1)) as f64).exp(),
                SpectrumModel::MonopoleDirac { q } => {
                    let q = q.unsigned_abs();
                    if k == 0 {
                        q as f64
                    } else {
                        2.0 * (2 * k + q) as f64 * (-t * (k * (k + q)) as f64).exp()
                    }
                }
                SpectrumModel::CircleDirac => {
                    if k == 0 {
                        1.0
                    } else {
                        2.0 * (-t * (k * k) as f64).exp()
                    }
                }
            };
            acc += term;
            // terms decrease monotonically once k²t exceeds the multiplicity growth
            if k > 2 && term < tol * acc.abs() * 1e-3 && (k * k) as f64 * t > 20.0 {
                return acc;
            }
            k += 1;
        }
    }

    /// Str e^{−tD²} for the monopole: each ±λ pair contributes one mode to
    /// each chirality and cancels, leaving the kernel with chirality sign(q).
    pub fn supertrace(&self, t: f64) -> Option<f64> {
        let SpectrumModel::MonopoleDirac { q } = *self else { return None };
        let qa = q.unsigned_abs();
        let (mut plus, mut minus) = (0.0, 0.0);
        for m in 1..10_000u64 {
            let w = (-t * (m * (m + qa)) as f64).exp();
            if w < 1e-300 {
                break;
            }
            let d = (2 * m + qa) as f64;
            plus += d * w;
            minus += d * w;
        }
        Some(q as f64 + (plus - minus))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeatTraceFit {
    pub coefficients: Vec<f64>,
    pub residual: f64,
    /// (t, Tr e^{−tP}, fitted value) per grid point.
    pub table: Vec<(f64, f64, f64)>,
}

/// Least-squares fit of t^{n/2}·Tr e^{−tP} by Σ_{l≤L} c_l t^l.
pub fn heat_trace_fit(model: SpectrumModel, t_grid: &[f64], l_max: usize) -> Result<HeatTraceFit, OracleError> {
    if t_grid.len() <= l_max + 1 || t_grid.iter().any(|&t| t <= 0.0) {
        return Err(OracleError::BadGrid);
    }
    let t_max = t_grid.iter().cloned().fold(0.0, f64::max);
    let half_n = model.dim() as f64 / 2.0;
    let rows = t_grid.len();
    // scaled variable s = t/t_max keeps the Vandermonde matrix well conditioned
    let a = DMatrix::from_fn(rows, l_max + 1, |i, j| (t_grid[i] / t_max).powi(j as i32));
    let traces: Vec<f64> = t_grid.iter().map(|&t| model.heat_trace(t, 1e-16)).collect();
    let b = DVector::from_fn(rows, |i, _| t_grid[i].powf(half_n) * traces[i]);
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let cond = sv.max() / sv.min();
    if !cond.is_finite() || cond > 1e12 {
        return Err(OracleError::IllConditioned(cond));
    }
    let x = svd.solve(&b, 1e-15).map_err(|_| OracleError::IllConditioned(cond))?;
    let fitted = &a * &x;
    let residual = (&fitted - &b).norm() / b.norm();
    let coefficients = (0..=l_max).map(|j| x[j] / t_max.powi(j as i32)).collect();
    let table = (0..rows).map(|i| (t_grid[i], traces[i], fitted[i] / t_grid[i].powf(half_n))).collect();
    Ok(HeatTraceFit { coefficients, residual, table })
}

/// Evenly spaced grid of `count` points in (0, t_max].
pub fn t_grid(t_max: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|i| t_max * i as f64 / count as f64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralFlow {
    /// Net upward crossings of the level −ε along s ∈ [0, 1].
    pub sf: i64,
    /// dim ker − dim coker of the Toeplitz operator PUP.
    pub toeplitz_index: i64,
}

fn hermitian_eigenvalues(m: DMatrix<Complex<f64>>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().cloned().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Spectral flow of D + s·U*[D, U], D = −i d/dθ, U = e^{iwθ}, on the Fourier
/// modes |m| ≤ K, tracked on a grid in s; and the truncated Toeplitz index.
pub fn spectral_flow_track(winding: i64, cutoff: usize) -> Result<SpectralFlow, OracleError> {
    if cutoff as i64 <= 2 * winding.abs() {
        return Err(OracleError::CutoffTooSmall { cutoff, winding });
    }
    let k = cutoff as i64;
    let dim = (2 * k + 1) as usize;
    let mode = |i: usize| i as i64 - k;
    // U*[D, U] acts on e_m as multiplication by the symbol of U*DU − D
    let perturbation = |i: usize, j: usize| {
        let shift = mode(i) - mode(j);
        if shift == 0 {
            Complex::new(winding as f64, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    };
    let family = |s: f64| {
        DMatrix::from_fn(dim, dim, |i, j| {
            let d = if i == j { Complex::new(mode(i) as f64, 0.0) } else { Complex::new(0.0, 0.0) };
            d + perturbation(i, j) * s
        })
    };
    const EPS: f64 = 1e-3;
    let steps = 4 * (winding.unsigned_abs() as usize + 1);
    let negatives = |s: f64| hermitian_eigenvalues(family(s)).iter().filter(|&&l| l < -EPS).count() as i64;
    let mut sf = 0;
    let mut prev = negatives(0.0);
    for step in 1..=steps {
        let now = negatives(step as f64 / steps as f64);
        sf += prev - now;
        prev = now;
    }
    // boundary modes must not take part in a crossing
    let edge = hermitian_eigenvalues(family(1.0));
    if edge.first().is_some_and(|&l| l > -EPS) || edge.last().is_some_and(|&l| l < EPS) {
        return Err(OracleError::CutoffTooSmall { cutoff, winding });
    }
    Ok(SpectralFlow { sf, toeplitz_index: toeplitz_index(winding, cutoff) })
}

/// Index of PUP on span{e_m : 0 ≤ m ≤ K}, with the codomain enlarged so that
/// truncation does not cut the range.
fn toeplitz_index(winding: i64, cutoff: usize) -> i64 {
    let dim_of_kernel = |w: i64| {
        let cols = cutoff + 1;
        let rows = cutoff + 1 + w.unsigned_abs() as usize;
        let m = DMatrix::from_fn(rows, cols, |i, j| if i as i64 == j as i64 + w { 1.0 } else { 0.0 });
        cols - m.rank(1e-9)
    };
    dim_of_kernel(winding) as i64 - dim_of_kernel(-winding) as i64
}

/// Crank–Nicolson (implicit midpoint) stepping of u_t = Lu for a tridiagonal
/// L, with Dirichlet ends.
struct TridiagonalStepper {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
}

impl TridiagonalStepper {
    /// Operator L as three diagonals.
    fn new(lower: Vec<f64>, diag: Vec<f64>, upper: Vec<f64>) -> Self {
        TridiagonalStepper { lower, diag, upper }
    }

    fn apply(&self, u: &[f64]) -> Vec<f64> {
        let n = u.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * u[i];
                if i > 0 {
                    v += self.lower[i] * u[i - 1];
                }
                if i + 1 < n {
                    v += self.upper[i] * u[i + 1];
                }
                v
            })
            .collect()
    }

    /// (1 − dt/2·L)u⁺ = (1 + dt/2·L)u, solved by the Thomas algorithm.
    fn step(&self, u: &[f64], dt: f64) -> Vec<f64> {
        let n = u.len();
        let lu = self.apply(u);
        let rhs: Vec<f64> = (0..n).map(|i| u[i] + 0.5 * dt * lu[i]).collect();
        let a: Vec<f64> = self.lower.iter().map(|v| -0.5 * dt * v).collect();
        let b: Vec<f64> = self.diag.iter().map(|v| 1.0 - 0.5 * dt * v).collect();
        let c: Vec<f64> = self.upper.iter().map(|v| -0.5 * dt * v).collect();
        let mut cp = vec![0.0; n];
        let mut dp = vec![0.0; n];
        cp[0] = c[0] / b[0];
        dp[0] = rhs[0] / b[0];
        for i in 1..n {
            let m = b[i] - a[i] * cp[i - 1];
            cp[i] = c[i] / m;
            dp[i] = (rhs[i] - a[i] * dp[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PdeCheck {
    pub max_relative_error: f64,
    pub points: usize,
}

/// Grid and time-step settings for the Mehler checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PdeGrid {
    pub half_width: f64,
    pub dx: f64,
    pub dt: f64,
    /// Width parameter of the initial Gaussian (flat heat kernel at this time).
    pub eps: f64,
}

impl Default for PdeGrid {
    fn default() -> Self {
        PdeGrid { half_width: 8.0, dx: 0.0025, dt: 0.001, eps: 0.05 }
    }
}

/// 1D: solves u_t = u_xx − (a²/4)x²u from the flat heat kernel at time ε and
/// compares with (4πt)^{−1/2}(at/sinh at)^{1/2}exp(−x²·at·coth(at)/4t)
/// convolved with the same datum, on the points where the exact value exceeds
/// 10⁻³ of its peak.
pub fn mehler_pde_check_1d(a: f64, t: f64, grid: PdeGrid) -> Result<PdeCheck, OracleError> {
    let n = (2.0 * grid.half_width / grid.dx).round() as usize + 1;
    if n < 50 {
        return Err(OracleError::GridTooCoarse(format!("{n} points")));
    }
    let x = |i: usize| -grid.half_width + i as f64 * grid.dx;
    let h2 = grid.dx * grid.dx;
    let diag = (0..n).map(|i| -2.0 / h2 - 0.25 * a * a * x(i) * x(i)).collect();
    let stepper = TridiagonalStepper::new(vec![1.0 / h2; n], diag, vec![1.0 / h2; n]);
    let mut u: Vec<f64> = (0..n).map(|i| gaussian_1d(x(i), grid.eps)).collect();
    let steps = (t / grid.dt).round() as usize;
    for _ in 0..steps {
        u = stepper.step(&u, grid.dt);
    }
    let exact: Vec<f64> = (0..n).map(|i| mehler_convolved_1d(a, t, grid.eps, x(i))).collect();
    Ok(relative_error(&u, &exact))
}

fn gaussian_1d(x: f64, eps: f64) -> f64 {
    (-x * x / (4.0 * eps)).exp() / (4.0 * std::f64::consts::PI * eps).sqrt()
}

/// ∫ K_a(x, y, t)·(4πε)^{−1/2}e^{−y²/4ε} dy with the full Mehler kernel
/// K_a(x,y,t) = √(ω/(2π sinh 2ωt))·exp(−ω[(x²+y²)cosh 2ωt − 2xy]/(2 sinh 2ωt)), ω = a/2.
fn mehler_convolved_1d(a: f64, t: f64, eps: f64, x: f64) -> f64 {
    let w = 0.5 * a;
    // p = ω coth(2ωt)/2, r = ω/sinh(2ωt), norm = √(ω/(2π sinh 2ωt)); flat limits at ω → 0
    let (p, r, norm) = if w.abs() < 1e-12 {
        (1.0 / (4.0 * t), 1.0 / (2.0 * t), 1.0 / (4.0 * std::f64::consts::PI * t).sqrt())
    } else {
        let s = (2.0 * w * t).sinh();
        let c = (2.0 * w * t).cosh();
        (0.5 * w * c / s, w / s, (w / (2.0 * std::f64::consts::PI * s)).sqrt())
    };
    // exponent: −p x² − p y² + r x y − y²/(4ε)
    let big_a = p + 1.0 / (4.0 * eps);
    let big_b = r * x;
    let gauss = (std::f64::consts::PI / big_a).sqrt() * (big_b * big_b / (4.0 * big_a) - p * x * x).exp();
    norm * gauss / (4.0 * std::f64::consts::PI * eps).sqrt()
}

fn relative_error(num: &[f64], exact: &[f64]) -> PdeCheck {
    let peak = exact.iter().cloned().fold(0.0, f64::max);
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for (u, e) in num.iter().zip(exact) {
        if *e > 1e-3 * peak {
            worst = worst.max((u - e).abs() / e);
            points += 1;
        }
    }
    PdeCheck { max_relative_error: worst, points }
}

/// 2D rotation block: radial solve of u_t = u_rr + u_r/r + (a²/4)r²u from the
/// flat kernel at time ε; returns the relative error of u(0, t) against
/// (4πt)^{−1}(at/sin at) convolved with the initial datum.
pub fn mehler_pde_check_2d(a: f64, t: f64, grid: PdeGrid) -> Result<PdeCheck, OracleError> {
    if a * t >= std::f64::consts::FRAC_PI_2 {
        return Err(OracleError::FocalPoint(a * t));
    }
    let n = (grid.half_width / grid.dx).round() as usize + 1;
    if n < 50 {
        return Err(OracleError::GridTooCoarse(format!("{n} points")));
    }
    let h = grid.dx;
    let h2 = h * h;
    let r = |i: usize| i as f64 * h;
    let mut lower = vec![0.0; n];
    let mut diag = vec![0.0; n];
    let mut upper = vec![0.0; n];
    // at r = 0 the 2D Laplacian of a radial function is 4(u₁ − u₀)/h²
    diag[0] = -4.0 / h2;
    upper[0] = 4.0 / h2;
    for i in 1..n {
        lower[i] = 1.0 / h2 - 1.0 / (2.0 * r(i) * h);
        diag[i] = -2.0 / h2 + 0.25 * a * a * r(i) * r(i);
        upper[i] = 1.0 / h2 + 1.0 / (2.0 * r(i) * h);
    }
    let stepper = TridiagonalStepper::new(lower, diag, upper);
    let pi = std::f64::consts::PI;
    let mut u: Vec<f64> = (0..n).map(|i| (-r(i) * r(i) / (4.0 * grid.eps)).exp() / (4.0 * pi * grid.eps)).collect();
    let steps = (t / grid.dt).round() as usize;
    for _ in 0..steps {
        u = stepper.step(&u, grid.dt);
    }
    // K(0, y, t) = (4πt)^{−1}(at/sin at)·exp(−β|y|²), β = at·cot(at)/(4t)
    let (ratio, beta) = if a.abs() < 1e-12 {
        (1.0, 1.0 / (4.0 * t))
    } else {
        let at = a * t;
        (at / at.sin(), at / at.tan() / (4.0 * t))
    };
    let exact = ratio / (4.0 * pi * t) * pi / (beta + 1.0 / (4.0 * grid.eps)) / (4.0 * pi * grid.eps);
    Ok(relative_error(&u[..1], &[exact]))
}

/// Gauss–Hermite nodes and weights for the weight e^{−x²} (Golub–Welsch).
pub fn gauss_hermite(m: usize) -> Vec<(f64, f64)> {
    let jacobi = DMatrix::from_fn(m, m, |i, j| {
        if i + 1 == j || j + 1 == i {
            (i.max(j) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut out: Vec<(f64, f64)> =
        (0..m).map(|k| (eig.eigenvalues[k], sqrt_pi * eig.eigenvectors[(0, k)].powi(2))).collect();
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    out
}

/// (2π)^{−n}∫_{ℝⁿ} ξ^β e^{−|ξ|²} dξ / (N−1)! by tensor Gauss–Hermite quadrature.
pub fn quadrature_radial(beta: &[u32], n_pow: i32, n: u32) -> Result<f64, OracleError> {
    if n_pow <= 0 {
        return Err(OracleError::Divergent(n_pow));
    }
    let max_b = beta.iter().cloned().max().unwrap_or(0) as usize;
    let rule = gauss_hermite(max_b / 2 + 4);
    let mut acc = 1.0;
    for i in 0..n as usize {
        let b = beta.get(i).cloned().unwrap_or(0) as i32;
        acc *= rule.iter().map(|(x, w)| w * x.powi(b)).sum::<f64>();
    }
    let fact: f64 = (1..n_pow).map(|k| k as f64).product();
    Ok(acc / (2.0 * std::f64::consts::PI).powi(n as i32) / fact)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_moments() {
        let rule = gauss_hermite(6);
        let m0: f64 = rule.iter().map(|(_, w)| w).sum();
        let m2: f64 = rule.iter().map(|(x, w)| w * x * x).sum();
        assert!((m0 - std::f64::consts::PI.sqrt()).abs() < 1e-13);
        assert!((m2 - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-13);
    }

    #[test]
    fn circle_trace_is_theta_function() {
        // Σ e^{−tm²} = √(π/t)(1 + 2e^{−π²/t} + …)
        let t = 0.01;
        let v = SpectrumModel::CircleDirac.heat_trace(t, 1e-16);
        assert!((v - (std::f64::consts::PI / t).sqrt()).abs() < 1e-9);
    }

    #[test]
    fn monopole_supertrace() {
        for q in [-2, 0, 3] {
            assert_eq!(SpectrumModel::MonopoleDirac { q }.supertrace(0.3), Some(q as f64));
        }
    }

    #[test]
    fn narrow_grid_rejected() {
        assert!(matches!(heat_trace_fit(SpectrumModel::SphereLaplacian, &[0.01, 0.01 + 1e-9, 0.01 + 2e-9, 0.01 + 3e-9], 2), Err(OracleError::IllConditioned(_))));
    }
}
