//! Curvature data at a point, normal-coordinate jets and the symbols of the
//! twisted Dirac Laplacian and the Laplace–Beltrami operator.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{int, rat, AlgebraError, Cyclo8, FormElement, Matrix, ProductRule, Rational};
use crate::jet::{JetPoly, Monomial, MAX_DIM};
pub use crate::volterra::DiffOpSymbol;
use crate::volterra::{SymKey, VolterraError, VolterraSymbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Volterra(#[from] VolterraError),
    #[error("dimension {0} is outside 1..=8")]
    Dimension(u32),
    #[error("index ({0}) out of range for dimension {1}")]
    IndexOutOfRange(usize, u32),
    #[error("R[{0},{1},{2},{3}] violates antisymmetry in the first pair")]
    FirstPairAntisymmetry(usize, usize, usize, usize),
    #[error("R[{0},{1},{2},{3}] violates antisymmetry in the second pair")]
    SecondPairAntisymmetry(usize, usize, usize, usize),
    #[error("R[{0},{1},{2},{3}] violates pair exchange symmetry")]
    PairExchange(usize, usize, usize, usize),
    #[error("R[{0},{1},{2},{3}] violates the first Bianchi identity")]
    Bianchi(usize, usize, usize, usize),
    #[error("twist curvature F[{0},{1}] is not antisymmetric in (k, l)")]
    TwistAntisymmetry(usize, usize),
    #[error("twist curvature F[{0},{1}] is not antihermitian")]
    TwistNotAntihermitian(usize, usize),
    #[error("twist matrices must all be {0}x{0}")]
    TwistRank(usize),
    #[error("normal jets beyond order 2 need curvature derivatives (requested {0})")]
    JetOrder(u32),
}

/// Riemann tensor R_{ijkl} (with R_{1212} the sectional curvature of the
/// 12-plane) and twisting curvature F_{kl} at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvatureData {
    n: u32,
    riemann: Vec<Rational>,
    rank: usize,
    twist: Vec<Matrix>,
    kappa: Rational,
}

fn idx(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    ((i * n + j) * n + k) * n + l
}

impl CurvatureData {
    /// Builds curvature data from independent components (0-based indices).
    ///
    /// Each given entry is written to its own slot first; the remaining
    /// slots of its symmetry orbit are then filled from it. The result is
    /// validated against all four Riemann symmetries, so inconsistent input
    /// is reported instead of silently overwritten.
    pub fn from_components(
        n: u32,
        riemann: &[([usize; 4], Rational)],
        rank: usize,
        twist: &[([usize; 2], Matrix)],
    ) -> Result<Self, GeometryError> {
        if n == 0 || n > MAX_DIM {
            return Err(GeometryError::Dimension(n));
        }
        let nn = n as usize;
        let mut r: Vec<Option<Rational>> = vec![None; nn.pow(4)];
        for (ix, v) in riemann {
            if let Some(&bad) = ix.iter().find(|&&i| i >= nn) {
                return Err(GeometryError::IndexOutOfRange(bad, n));
            }
            r[idx(nn, ix[0], ix[1], ix[2], ix[3])] = Some(v.clone());
        }
        for ([i, j, k, l], v) in riemann {
            let (i, j, k, l) = (*i, *j, *k, *l);
            let images = [
                ((i, j, k, l), 1),
                ((j, i, k, l), -1),
                ((i, j, l, k), -1),
                ((j, i, l, k), 1),
                ((k, l, i, j), 1),
                ((l, k, i, j), -1),
                ((k, l, j, i), -1),
                ((l, k, j, i), 1),
            ];
            for ((a, b, c, d), s) in images {
                let slot = &mut r[idx(nn, a, b, c, d)];
                if slot.is_none() {
                    *slot = Some(if s > 0 { v.clone() } else { -v.clone() });
                }
            }
        }
        let dense: Vec<Rational> = r.into_iter().map(Option::unwrap_or_default).collect();

        let mut f: Vec<Option<Matrix>> = vec![None; nn * nn];
        for ([k, l], m) in twist {
            if let Some(bad) = [*k, *l].into_iter().find(|&i| i >= nn) {
                return Err(GeometryError::IndexOutOfRange(bad, n));
            }
            if m.size() != rank {
                return Err(GeometryError::TwistRank(rank));
            }
            f[k * nn + l] = Some(m.clone());
        }
        for ([k, l], m) in twist {
            let slot = &mut f[l * nn + k];
            if slot.is_none() {
                *slot = Some(m.neg());
            }
        }
        let f = f.into_iter().map(|m| m.unwrap_or_else(|| Matrix::zero(rank))).collect();
        CurvatureData::from_dense(n, dense, rank, f)
    }

    /// Validates a fully populated tensor (row-major R[i][j][k][l], F[k][l]).
    pub fn from_dense(n: u32, riemann: Vec<Rational>, rank: usize, twist: Vec<Matrix>) -> Result<Self, GeometryError> {
        if n == 0 || n > MAX_DIM {
            return Err(GeometryError::Dimension(n));
        }
        let nn = n as usize;
        assert_eq!(riemann.len(), nn.pow(4));
        assert_eq!(twist.len(), nn * nn);
        let at = |i, j, k, l| &riemann[idx(nn, i, j, k, l)];
        type Check<'a> = (&'a dyn Fn(usize, usize, usize, usize) -> bool, fn(usize, usize, usize, usize) -> GeometryError);
        let checks: [Check; 4] = [
            (&|i, j, k, l| *at(i, j, k, l) == -at(j, i, k, l).clone(), GeometryError::FirstPairAntisymmetry),
            (&|i, j, k, l| *at(i, j, k, l) == -at(i, j, l, k).clone(), GeometryError::SecondPairAntisymmetry),
            (&|i, j, k, l| at(i, j, k, l) == at(k, l, i, j), GeometryError::PairExchange),
            (&|i, j, k, l| (at(i, j, k, l) + at(i, k, l, j) + at(i, l, j, k)).is_zero(), GeometryError::Bianchi),
        ];
        for (holds, err) in checks {
            for i in 0..nn {
                for j in 0..nn {
                    for k in 0..nn {
                        for l in 0..nn {
                            if !holds(i, j, k, l) {
                                return Err(err(i + 1, j + 1, k + 1, l + 1));
                            }
                        }
                    }
                }
            }
        }
        for k in 0..nn {
            for l in 0..nn {
                let m = &twist[k * nn + l];
                if m.size() != rank {
                    return Err(GeometryError::TwistRank(rank));
                }
                if *m != twist[l * nn + k].neg() {
                    return Err(GeometryError::TwistAntisymmetry(k + 1, l + 1));
                }
                if m.adjoint() != m.neg() {
                    return Err(GeometryError::TwistNotAntihermitian(k + 1, l + 1));
                }
            }
        }
        let mut kappa = Rational::zero();
        for i in 0..nn {
            for j in 0..nn {
                kappa += at(i, j, i, j);
            }
        }
        Ok(CurvatureData { n, riemann, rank, twist, kappa })
    }

    /// Round sphere of sectional curvature K: R_{ijkl} = K(δ_ik δ_jl − δ_il δ_jk).
    pub fn constant_curvature(n: u32, k: Rational) -> Result<Self, GeometryError> {
        let h = identity_rows(n as usize);
        let half = &k * rat(1, 2);
        CurvatureData::from_symmetric_forms(n, &[(half, h)], 1, Vec::new())
    }

    pub fn flat(n: u32, rank: usize) -> Self {
        let nn = n as usize;
        CurvatureData::from_dense(n, vec![Rational::zero(); nn.pow(4)], rank, vec![Matrix::zero(rank); nn * nn])
            .expect("zero curvature is valid")
    }

    /// Σ_s c_s·(h_s ⊙ h_s) with the Kulkarni–Nomizu square
    /// (h⊙h)_{ijkl} = 2(h_ik h_jl − h_il h_jk); every algebraic curvature
    /// tensor is such a combination. Twist given as dense F[k][l] (empty = 0).
    pub fn from_symmetric_forms(
        n: u32,
        forms: &[(Rational, Vec<Vec<Rational>>)],
        rank: usize,
        twist: Vec<Matrix>,
    ) -> Result<Self, GeometryError> {
        let nn = n as usize;
        let mut r = vec![Rational::zero(); nn.pow(4)];
        for (c, h) in forms {
            for i in 0..nn {
                for j in 0..nn {
                    for k in 0..nn {
                        for l in 0..nn {
                            let v = &h[i][k] * &h[j][l] - &h[i][l] * &h[j][k];
                            r[idx(nn, i, j, k, l)] += c * v * int(2);
                        }
                    }
                }
            }
        }
        let twist = if twist.is_empty() { vec![Matrix::zero(rank); nn * nn] } else { twist };
        CurvatureData::from_dense(n, r, rank, twist)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// R_{ijkl}, 0-based.
    pub fn r(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.riemann[idx(self.n as usize, i, j, k, l)]
    }

    /// F_{kl}, 0-based.
    pub fn f(&self, k: usize, l: usize) -> &Matrix {
        &self.twist[k * self.n as usize + l]
    }

    /// Scalar curvature κ = Σ_{ij} R_{ijij}.
    pub fn kappa(&self) -> &Rational {
        &self.kappa
    }

    /// Ricci contraction Ric_{kl} = Σ_i R_{ikil}.
    pub fn ricci(&self, k: usize, l: usize) -> Rational {
        (0..self.n as usize).map(|i| self.r(i, k, i, l).clone()).sum()
    }

    pub fn is_untwisted(&self) -> bool {
        self.twist.iter().all(Matrix::is_zero)
    }

    /// Curvature-free copy with the same twist.
    pub fn with_twist(&self, rank: usize, twist: Vec<Matrix>) -> Result<Self, GeometryError> {
        CurvatureData::from_dense(self.n, self.riemann.clone(), rank, twist)
    }
}

fn identity_rows(n: usize) -> Vec<Vec<Rational>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()).collect()
}

/// Jets of the metric, its inverse, the spin connection and the
/// Christoffel symbols in synchronous normal coordinates.
#[derive(Clone, Debug)]
pub struct NormalJets {
    pub n: u32,
    /// g_{ij}, index i·n + j.
    pub g: Vec<JetPoly>,
    /// g^{ij}.
    pub g_inv: Vec<JetPoly>,
    /// ω_{ikl}, index (i·n + k)·n + l.
    pub omega: Vec<JetPoly>,
    /// Γ^k_{ij}, index (k·n + i)·n + j.
    pub gamma: Vec<JetPoly>,
}

impl NormalJets {
    pub fn g(&self, i: usize, j: usize) -> &JetPoly {
        &self.g[i * self.n as usize + j]
    }
    pub fn g_inv(&self, i: usize, j: usize) -> &JetPoly {
        &self.g_inv[i * self.n as usize + j]
    }
    pub fn omega(&self, i: usize, k: usize, l: usize) -> &JetPoly {
        let n = self.n as usize;
        &self.omega[(i * n + k) * n + l]
    }
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> &JetPoly {
        let n = self.n as usize;
        &self.gamma[(k * n + i) * n + j]
    }
}

fn quad(n: u32, order: u32, k: usize, l: usize, c: Rational) -> JetPoly {
    JetPoly::scalar_term(n, order, Monomial::var(k as u32).raise(l as u32), c)
}

/// g_ij = δ_ij − ⅓R_{ikjl}x^kx^l, g^{ij} = δ_ij + ⅓R_{ikjl}x^kx^l,
/// ω_{ikl} = −½R_{ijkl}x^j, and Γ^k_{ij} from g, all to order J ≤ 2.
pub fn build_normal_jets(curv: &CurvatureData, order: u32) -> Result<NormalJets, GeometryError> {
    if order > 2 {
        return Err(GeometryError::JetOrder(order));
    }
    let n = curv.n;
    let nn = n as usize;
    let mut g = Vec::with_capacity(nn * nn);
    let mut g_inv = Vec::with_capacity(nn * nn);
    for i in 0..nn {
        for j in 0..nn {
            let delta = if i == j { Rational::one() } else { Rational::zero() };
            let mut a = JetPoly::scalar_term(n, order, Monomial::ONE, delta.clone());
            let mut b = JetPoly::scalar_term(n, order, Monomial::ONE, delta);
            for k in 0..nn {
                for l in 0..nn {
                    let c = curv.r(i, k, j, l) * rat(1, 3);
                    if !c.is_zero() {
                        a = a.try_add(&quad(n, order, k, l, -c.clone()))?;
                        b = b.try_add(&quad(n, order, k, l, c))?;
                    }
                }
            }
            g.push(a);
            g_inv.push(b);
        }
    }
    let mut omega = Vec::with_capacity(nn.pow(3));
    for i in 0..nn {
        for k in 0..nn {
            for l in 0..nn {
                let mut w = JetPoly::zero(n, 1, order);
                for j in 0..nn {
                    let c = -curv.r(i, j, k, l) * rat(1, 2);
                    w = w.try_add(&JetPoly::scalar_term(n, order, Monomial::var(j as u32), c))?;
                }
                omega.push(w);
            }
        }
    }
    let gamma_order = order.saturating_sub(1);
    let mut gamma = Vec::with_capacity(nn.pow(3));
    for k in 0..nn {
        for i in 0..nn {
            for j in 0..nn {
                let mut acc = JetPoly::zero(n, 1, gamma_order);
                for l in 0..nn {
                    let s = g[j * nn + l]
                        .diff(i as u32)
                        .try_add(&g[i * nn + l].diff(j as u32))?
                        .try_add(&g[i * nn + j].diff(l as u32).scale(&Cyclo8::from_int(-1)))?;
                    acc = acc.try_add(&g_inv[k * nn + l].mul(&s)?)?;
                }
                gamma.push(acc.scale(&Cyclo8::from_rational(rat(1, 2))));
            }
        }
    }
    Ok(NormalJets { n, g, g_inv, omega, gamma })
}

/// A scalar jet as a symbol of degree 0 (multiplication operator).
fn jet_symbol(j: &JetPoly, rank: usize, rule: ProductRule) -> VolterraSymbol {
    let n = j.dim();
    let mut s = VolterraSymbol::zero(n, rank, rule, 0);
    for (a, c) in j.terms() {
        let v = c.as_scalar().expect("scalar jet").mantissa;
        s.insert(SymKey::new(a, Monomial::ONE, 0), FormElement::scalar(n, rank, v)).expect("degree 0");
    }
    s
}

fn sigma_pair(n: u32, rank: usize, k: usize, l: usize) -> FormElement {
    FormElement::monomial(n, rank, &[k as u32, l as u32])
}

/// Symbol of ∇_i = ∂_i + ¼ω_{ikl}c^kc^l + A_i with A_i = −½F_{ij}x^j.
pub fn connection_symbol(curv: &CurvatureData, jets: &NormalJets, i: usize, spin: bool) -> VolterraSymbol {
    let (n, rank) = (curv.n, curv.rank);
    let nn = n as usize;
    let rule = ProductRule::Clifford;
    let i_unit = FormElement::scalar(n, rank, Cyclo8::i());
    let mut s = VolterraSymbol::term(SymKey::new(Monomial::ONE, Monomial::var(i as u32), 0), i_unit, rule)
        .with_order(1)
        .expect("degree 1");
    if spin {
        for k in 0..nn {
            for l in (k + 1)..nn {
                // ¼(ω_{ikl} c^k c^l + ω_{ilk} c^l c^k) = ½ω_{ikl} c^k c^l
                let e = sigma_pair(n, rank, k, l).scale(&Cyclo8::from_rational(rat(1, 2)));
                for (a, c) in jets.omega(i, k, l).terms() {
                    let v = c.as_scalar().expect("scalar jet").mantissa;
                    s.insert(SymKey::new(a, Monomial::ONE, 0), e.scale(&v)).expect("degree 0");
                }
            }
        }
    }
    for j in 0..nn {
        let f = curv.f(i, j);
        if f.is_zero() {
            continue;
        }
        let m = f.scale(&Cyclo8::from_rational(rat(-1, 2)));
        s.insert(SymKey::new(Monomial::var(j as u32), Monomial::ONE, 0), FormElement::from_blade(n, 0, m))
            .expect("degree 0");
    }
    s
}

/// −Σ g^{ij}(∇_i∇_j − Γ^k_{ij}∇_k) for the given connection symbols.
fn bochner_part(jets: &NormalJets, nabla: &[VolterraSymbol], rank: usize) -> Result<VolterraSymbol, GeometryError> {
    let n = jets.n;
    let nn = n as usize;
    let rule = ProductRule::Clifford;
    let mut out = VolterraSymbol::zero(n, rank, rule, 2);
    for i in 0..nn {
        for j in 0..nn {
            let ginv = jets.g_inv(i, j);
            if ginv.is_zero() {
                continue;
            }
            let mut inner = nabla[i].compose(&nabla[j], None)?.truncate_x(2);
            for k in 0..nn {
                let gam = jets.gamma(k, i, j);
                if gam.is_zero() {
                    continue;
                }
                let t = jet_symbol(gam, rank, rule).mul(&nabla[k])?;
                inner = inner.sub(&t)?.truncate_x(2);
            }
            out = out.sub(&jet_symbol(ginv, rank, rule).mul(&inner)?)?.truncate_x(2);
        }
    }
    Ok(out)
}

fn finish(sym: VolterraSymbol) -> DiffOpSymbol {
    DiffOpSymbol { symbol: sym.exact_in_x(), exact_jets: Some(2) }
}

/// Symbol of D² = −g^{ij}(∇_i∇_j − Γ^k_{ij}∇_k) + Σ_{k<l} c^k c^l F_{kl} + κ/4
/// in the synchronous frame, truncated to x-degree 2.
pub fn lichnerowicz_symbol(curv: &CurvatureData) -> Result<DiffOpSymbol, GeometryError> {
    let (n, rank) = (curv.n, curv.rank);
    let nn = n as usize;
    let jets = build_normal_jets(curv, 2)?;
    let nabla: Vec<VolterraSymbol> = (0..nn).map(|i| connection_symbol(curv, &jets, i, true)).collect();
    let mut sym = bochner_part(&jets, &nabla, rank)?;
    let rule = ProductRule::Clifford;
    for k in 0..nn {
        for l in (k + 1)..nn {
            let f = curv.f(k, l);
            if !f.is_zero() {
                let c = FormElement::from_blade(n, (1 << k) | (1 << l), f.clone());
                sym = sym.add(&VolterraSymbol::constant(c, rule))?;
            }
        }
    }
    let quarter_kappa = curv.kappa() * rat(1, 4);
    if !quarter_kappa.is_zero() {
        let c = FormElement::scalar(n, rank, Cyclo8::from_rational(quarter_kappa));
        sym = sym.add(&VolterraSymbol::constant(c, rule))?;
    }
    Ok(finish(sym))
}

/// Symbol of the Laplace–Beltrami operator −g^{ij}(∂_i∂_j − Γ^k_{ij}∂_k) on
/// functions, truncated to x-degree 2.
pub fn laplace_beltrami_symbol(curv: &CurvatureData) -> Result<DiffOpSymbol, GeometryError> {
    let flat_twist = CurvatureData::from_dense(curv.n, curv.riemann.clone(), 1, vec![Matrix::zero(1); (curv.n * curv.n) as usize])?;
    let jets = build_normal_jets(curv, 2)?;
    let nabla: Vec<VolterraSymbol> =
        (0..curv.n as usize).map(|i| connection_symbol(&flat_twist, &jets, i, false)).collect();
    Ok(finish(bochner_part(&jets, &nabla, 1)?))
}

/// |ξ|² + V for a constant matrix potential V on flat space.
pub fn flat_with_potential(n: u32, v: &Matrix) -> DiffOpSymbol {
    let rule = ProductRule::Clifford;
    let p = VolterraSymbol::xi_squared(n, v.size(), rule)
        .add(&VolterraSymbol::constant(FormElement::from_blade(n, 0, v.clone()), rule))
        .expect("same shape");
    DiffOpSymbol::exact(p)
}

/// Jet of det g to order 2, by brute-force Leibniz expansion.
pub fn det_metric_jet(jets: &NormalJets) -> Result<JetPoly, GeometryError> {
    let nn = jets.n as usize;
    let mut perm: Vec<usize> = (0..nn).collect();
    let mut total = JetPoly::zero(jets.n, 1, 2);
    permute(&mut perm, 0, &mut |p, sign| {
        let mut term = JetPoly::scalar_term(jets.n, 2, Monomial::ONE, int(sign));
        for (i, &pi) in p.iter().enumerate() {
            term = term.mul(jets.g(i, pi)).expect("scalar jets");
        }
        total = total.try_add(&term).expect("scalar jets");
    });
    Ok(total)
}

fn permute(p: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize], i64)) {
    if start == p.len() {
        let mut sign = 1;
        for i in 0..p.len() {
            for j in (i + 1)..p.len() {
                if p[i] > p[j] {
                    sign = -sign;
                }
            }
        }
        f(p, sign);
        return;
    }
    for i in start..p.len() {
        p.swap(start, i);
        permute(p, start + 1, f);
        p.swap(start, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere2(k: i64) -> CurvatureData {
        CurvatureData::from_components(2, &[([0, 1, 0, 1], int(k))], 1, &[]).unwrap()
    }

    #[test]
    fn orbit_completion_and_kappa() {
        let c = sphere2(3);
        assert_eq!(c.r(1, 0, 1, 0), &int(3));
        assert_eq!(c.r(0, 1, 1, 0), &int(-3));
        assert_eq!(c.kappa(), &int(6));
        assert_eq!(CurvatureData::constant_curvature(2, int(3)).unwrap(), c);
    }

    #[test]
    fn symmetry_violations_are_named() {
        let e = CurvatureData::from_components(2, &[([0, 1, 0, 1], int(1)), ([0, 1, 1, 0], int(1))], 1, &[]);
        assert!(matches!(e, Err(GeometryError::FirstPairAntisymmetry(..))));
        let e = CurvatureData::from_components(4, &[([0, 1, 2, 3], int(1))], 1, &[]);
        assert!(matches!(e, Err(GeometryError::Bianchi(..))));
        let e = CurvatureData::from_components(2, &[([0, 0, 0, 1], int(1))], 1, &[]);
        assert!(matches!(e, Err(GeometryError::FirstPairAntisymmetry(..))));
    }

    #[test]
    fn twist_validation() {
        let real = Matrix::scalar(1, Cyclo8::from_int(1));
        let e = CurvatureData::from_components(2, &[], 1, &[([0, 1], real)]);
        assert!(matches!(e, Err(GeometryError::TwistNotAntihermitian(..))));
        let imag = Matrix::scalar(1, Cyclo8::i());
        let c = CurvatureData::from_components(2, &[], 1, &[([0, 1], imag.clone())]).unwrap();
        assert_eq!(c.f(1, 0), &imag.neg());
    }

    #[test]
    fn flat_jets_vanish() {
        let j = build_normal_jets(&CurvatureData::flat(3, 1), 2).unwrap();
        assert!(j.omega.iter().all(JetPoly::is_zero));
        assert!(j.gamma.iter().all(JetPoly::is_zero));
        assert_eq!(j.g(0, 0).scalar_coeff(Monomial::ONE), int(1));
        assert!(build_normal_jets(&CurvatureData::flat(3, 1), 3).is_err());
    }

    #[test]
    fn omega_on_unit_sphere() {
        let j = build_normal_jets(&sphere2(1), 2).unwrap();
        // ω_{1,1,2} = −½R_{1212}x²
        assert_eq!(j.omega(0, 0, 1).scalar_coeff(Monomial::var(1)), rat(-1, 2));
        assert!(j.omega(0, 0, 1).coeff(Monomial::var(0)).is_none());
    }

    #[test]
    fn flat_lichnerowicz() {
        let p = lichnerowicz_symbol(&CurvatureData::flat(2, 1)).unwrap();
        assert_eq!(p.symbol, VolterraSymbol::xi_squared(2, 1, ProductRule::Clifford));
    }

    #[test]
    fn kappa_quarter_at_origin() {
        let p = lichnerowicz_symbol(&sphere2(2)).unwrap();
        let c = p.part(0).coeff_or_zero(&SymKey::ONE);
        assert_eq!(c, FormElement::scalar(2, 1, Cyclo8::from_int(1)));
    }

    #[test]
    fn twist_term_in_potential() {
        let f = Matrix::scalar(1, Cyclo8::complex(int(0), int(3)));
        let c = CurvatureData::from_components(2, &[], 1, &[([0, 1], f.clone())]).unwrap();
        let p = lichnerowicz_symbol(&c).unwrap();
        let p0 = p.part(0).coeff_or_zero(&SymKey::ONE);
        assert_eq!(p0, FormElement::from_blade(2, 0b11, f));
        let p2 = p.part(2).at_origin();
        assert_eq!(p2.filter(|k, _| k.x.is_one()).len(), 2);
    }

    #[test]
    fn det_metric_matches_ricci() {
        let c = CurvatureData::constant_curvature(3, int(2)).unwrap();
        let j = build_normal_jets(&c, 2).unwrap();
        let d = det_metric_jet(&j).unwrap();
        for k in 0..3 {
            for l in 0..3 {
                let a = Monomial::var(k).raise(l);
                let mult = if k == l { int(1) } else { int(2) };
                if k <= l {
                    assert_eq!(d.scalar_coeff(a), -c.ricci(k as usize, l as usize) * rat(1, 3) * mult);
                }
            }
        }
    }
}
