//! Â-form, Chern character, the Mehler kernel and the local index density.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{
    bernoulli, factorial, int, rat, trace_odd, supertrace_even, AlgebraError, Cyclo8, ExtScalar, FormElement,
    ProductRule, Rational,
};
use crate::geometry::CurvatureData;
use crate::jet::Monomial;
use crate::volterra::VolterraSymbol;

const W: ProductRule = ProductRule::Wedge;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChernError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("time must be positive")]
    NonPositiveTime,
    #[error("prefactor must be polynomial in xi with form coefficients")]
    BadPrefactor,
    #[error("point has {0} coordinates, expected {1}")]
    PointDimension(usize, u32),
}

/// n×n matrix of even scalar forms (rank 1), e.g. R_{ij} = Σ_{k<l} R_{ijkl}dx^k∧dx^l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatrix {
    n: u32,
    size: usize,
    entries: Vec<FormElement>,
}

impl FormMatrix {
    pub fn zero(n: u32, size: usize) -> Self {
        FormMatrix { n, size, entries: alloc::vec![FormElement::zero(n, 1); size * size] }
    }

    pub fn identity(n: u32, size: usize) -> Self {
        let mut m = FormMatrix::zero(n, size);
        for i in 0..size {
            m.entries[i * size + i] = FormElement::one(n, 1);
        }
        m
    }

    /// Curvature matrix of the Riemann tensor.
    pub fn riemann(curv: &CurvatureData) -> Self {
        let n = curv.dim();
        let nn = n as usize;
        let mut m = FormMatrix::zero(n, nn);
        for i in 0..nn {
            for j in 0..nn {
                let mut f = FormElement::zero(n, 1);
                for k in 0..nn {
                    for l in (k + 1)..nn {
                        let r = curv.r(i, j, k, l);
                        if !r.is_zero() {
                            let blade = FormElement::monomial(n, 1, &[k as u32, l as u32]);
                            f.add_assign(&blade.scale(&Cyclo8::from_rational(r.clone()))).expect("rank 1");
                        }
                    }
                }
                m.entries[i * nn + j] = f;
            }
        }
        m
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &FormElement {
        &self.entries[i * self.size + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FormElement::is_zero)
    }

    pub fn mul(&self, other: &FormMatrix) -> FormMatrix {
        let s = self.size;
        let mut out = FormMatrix::zero(self.n, s);
        for i in 0..s {
            for k in 0..s {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let p = a.wedge(other.get(k, j)).expect("same shape");
                    out.entries[i * s + j].add_assign(&p).expect("same grade");
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> FormMatrix {
        let c = Cyclo8::from_rational(c.clone());
        FormMatrix { n: self.n, size: self.size, entries: self.entries.iter().map(|e| e.scale(&c)).collect() }
    }

    pub fn trace(&self) -> FormElement {
        let mut t = FormElement::zero(self.n, 1);
        for i in 0..self.size {
            t.add_assign(self.get(i, i)).expect("same shape");
        }
        t
    }

    /// M^0, M^2, M^4, … up to form degree n.
    fn even_powers(&self) -> Vec<FormMatrix> {
        let sq = self.mul(self);
        let mut out = alloc::vec![FormMatrix::identity(self.n, self.size)];
        let mut cur = sq.clone();
        while !cur.is_zero() {
            out.push(cur.clone());
            cur = cur.mul(&sq);
        }
        out
    }
}

/// det^{1/2}((M/2)/sinh(M/2)) = exp(−½Σ_{k≥1} B_{2k}/(2k·(2k)!)·tr M^{2k}).
pub fn a_hat_form(m: &FormMatrix) -> FormElement {
    let pw = m.even_powers();
    let b = bernoulli(2 * pw.len());
    let mut log = FormElement::zero(m.n, 1);
    for (k, p) in pw.iter().enumerate().skip(1) {
        let k = k as u32;
        let c = -&b[2 * k as usize] / (int(4 * i64::from(k)) * factorial(2 * k));
        log.add_assign(&p.trace().scale(&Cyclo8::from_rational(c))).expect("rank 1");
    }
    log.exp_nilpotent(W)
}

/// Twist curvature as a matrix-valued 2-form Σ_{k<l} F_{kl} dx^k∧dx^l.
pub fn twist_form(curv: &CurvatureData) -> FormElement {
    let n = curv.dim();
    let mut f = FormElement::zero(n, curv.rank());
    for k in 0..n as usize {
        for l in (k + 1)..n as usize {
            let m = curv.f(k, l);
            if !m.is_zero() {
                f.add_assign(&FormElement::from_blade(n, (1 << k) | (1 << l), m.clone())).expect("same shape");
            }
        }
    }
    f
}

/// Ch(F) = Tr exp(−F).
pub fn chern_form(curv: &CurvatureData) -> FormElement {
    twist_form(curv).neg().exp_nilpotent(W).trace()
}

/// (2iπ)^{−n/2}[Â(R) ∧ Ch(F)]^{(n)}.
pub fn index_density(curv: &CurvatureData) -> FormElement {
    let n = curv.dim();
    let a = a_hat_form(&FormMatrix::riemann(curv));
    let top = a.wedge(&chern_form(curv)).expect("rank 1").part(n);
    top.scale_ext(&ExtScalar::two_i_pi_pow_half(-(n as i32)))
}

/// Density as a number: the coefficient of dx¹∧…∧dxⁿ.
pub fn index_density_scalar(curv: &CurvatureData) -> ExtScalar {
    let d = index_density(curv);
    ExtScalar::new(d.top().trace(), d.pi_half())
}

/// Mehler kernel G(x, t) = t^{−n/2}·exp(gaussian)·form, where the form
/// already includes (4π)^{−n/2} and the scalar Gaussian
/// exp(−|x|²/4t) is kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MehlerValue {
    pub n: u32,
    pub t: Rational,
    /// Exponent −|x|²/(4t) of the scalar Gaussian factor.
    pub gaussian: Rational,
    pub form: FormElement,
}

/// x·coth x series coefficients applied to M/2: Σ_k B_{2k} M^{2k}/(2k)!.
fn coth_powers(m: &FormMatrix) -> Vec<(Rational, FormMatrix)> {
    let pw = m.even_powers();
    let b = bernoulli(2 * pw.len());
    pw.into_iter()
        .enumerate()
        .map(|(k, p)| (&b[2 * k] / factorial(2 * k as u32), p))
        .collect()
}

pub fn mehler_kernel(m: &FormMatrix, x: &[Rational], t: &Rational) -> Result<MehlerValue, ChernError> {
    if *t <= Rational::zero() {
        return Err(ChernError::NonPositiveTime);
    }
    let n = m.n;
    if x.len() != n as usize {
        return Err(ChernError::PointDimension(x.len(), n));
    }
    let tm = m.scale(t);
    let a = a_hat_form(&tm);
    let four_t = t * int(4);
    let mut quad = FormElement::zero(n, 1);
    for (c, p) in coth_powers(&tm).into_iter().skip(1) {
        for i in 0..m.size {
            for j in 0..m.size {
                let w = &x[i] * &x[j] * &c / &four_t;
                if !w.is_zero() {
                    quad.add_assign(&p.get(i, j).scale(&Cyclo8::from_rational(-w))).expect("rank 1");
                }
            }
        }
    }
    let gaussian = -x.iter().map(|v| v * v).sum::<Rational>() / four_t;
    let form = a
        .wedge(&quad.exp_nilpotent(W))
        .expect("rank 1")
        .scale_ext(&ExtScalar::four_pi_pow_neg_half(n));
    Ok(MehlerValue { n, t: t.clone(), gaussian, form })
}

/// e^{−|x|²/4}·Σ_a c_a x^a with form/matrix coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct GaussPoly {
    n: u32,
    terms: BTreeMap<Monomial, FormElement>,
}

impl GaussPoly {
    fn add(&mut self, a: Monomial, c: FormElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&a) {
            Some(e) => {
                e.add_assign(&c).expect("same shape");
                if e.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, c);
            }
        }
    }

    /// ∂_i(e^{−|x|²/4}f) = e^{−|x|²/4}(∂_i f − x_i f/2).
    fn diff(&self, i: u32) -> GaussPoly {
        let mut out = GaussPoly { n: self.n, terms: BTreeMap::new() };
        let half = Cyclo8::from_rational(rat(-1, 2));
        for (a, c) in &self.terms {
            if let Some(l) = a.lower(i) {
                out.add(l, c.scale(&Cyclo8::from_int(i64::from(a.exp(i)))));
            }
            out.add(a.raise(i), c.scale(&half));
        }
        out
    }
}

/// G_R(x, 1)·(4π)^{n/2} as a Gaussian times a polynomial in x.
fn mehler_gauss_poly(curv: &CurvatureData) -> GaussPoly {
    let m = FormMatrix::riemann(curv);
    let n = m.n;
    let a = a_hat_form(&m);
    // quadratic form −¼⟨(coth-series − 1)x, x⟩ as a polynomial in x
    let mut quad: BTreeMap<Monomial, FormElement> = BTreeMap::new();
    for (c, p) in coth_powers(&m).into_iter().skip(1) {
        for i in 0..m.size {
            for j in 0..m.size {
                let e = p.get(i, j).scale(&Cyclo8::from_rational(-&c * rat(1, 4)));
                if e.is_zero() {
                    continue;
                }
                let key = Monomial::var(i as u32).raise(j as u32);
                quad.entry(key).or_insert_with(|| FormElement::zero(n, 1)).add_assign(&e).expect("rank 1");
            }
        }
    }
    // exp of a nilpotent polynomial
    let mut result = GaussPoly { n, terms: BTreeMap::new() };
    result.add(Monomial::ONE, a.clone());
    let mut power: BTreeMap<Monomial, FormElement> = BTreeMap::new();
    power.insert(Monomial::ONE, FormElement::one(n, 1));
    let mut k = 1;
    loop {
        let mut next: BTreeMap<Monomial, FormElement> = BTreeMap::new();
        for (a1, c1) in &power {
            for (a2, c2) in &quad {
                let c = c1.wedge(c2).expect("rank 1");
                if c.is_zero() {
                    continue;
                }
                next.entry(a1.mul(*a2)).or_insert_with(|| FormElement::zero(n, 1)).add_assign(&c).expect("rank 1");
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.is_empty() {
            break;
        }
        let inv = Cyclo8::from_rational(Rational::one() / int(k));
        for v in next.values_mut() {
            *v = v.scale(&inv);
        }
        for (mono, c) in &next {
            result.add(*mono, a.wedge(c).expect("rank 1"));
        }
        power = next;
        k += 1;
    }
    result
}

/// Local index density with a Getzler-homogeneous prefactor model P:
/// the spinor trace of [(P·G_R)(0, 1) ∧ e^{−F}]^{(n)}, normalized by (4π)^{−n/2}.
///
/// `prefactor` must be polynomial in ξ with Wedge-rule coefficients; ξ_j acts
/// as −i∂_j. For even n the supertrace is used, for odd n the spinor trace.
pub fn index_density_with_prefactor(curv: &CurvatureData, prefactor: &VolterraSymbol) -> Result<ExtScalar, ChernError> {
    let n = curv.dim();
    let rank = curv.rank();
    if prefactor.polynomial_degree().is_none() || prefactor.terms().any(|(k, _)| k.n_pow != 0) {
        return Err(ChernError::BadPrefactor);
    }
    if prefactor.rank() != rank || prefactor.dim() != n {
        return Err(ChernError::BadPrefactor);
    }
    let g = mehler_gauss_poly(curv);
    let mut derivs: BTreeMap<Monomial, GaussPoly> = BTreeMap::new();
    derivs.insert(Monomial::ONE, g);
    let mut at_zero = FormElement::zero(n, rank);
    let minus_i = Cyclo8::complex(int(0), int(-1));
    for (k, c) in prefactor.terms() {
        // c(x) vanishes at the origin unless it is constant
        if !k.x.is_one() {
            continue;
        }
        let beta = k.xi;
        let dg = derivative(&mut derivs, beta, n);
        let Some(val) = dg.terms.get(&Monomial::ONE) else { continue };
        let phase = minus_i.pow(i64::from(beta.degree())).expect("nonnegative");
        let v = c.wedge(&val.broadcast(rank))?.scale(&phase);
        at_zero.add_assign(&v)?;
    }
    let full = at_zero.wedge(&twist_form(curv).neg().exp_nilpotent(W))?;
    let top = full.part(n).scale_ext(&ExtScalar::four_pi_pow_neg_half(n));
    Ok(if n % 2 == 0 { supertrace_even(&top)? } else { trace_odd(&top)? })
}

fn derivative<'a>(cache: &'a mut BTreeMap<Monomial, GaussPoly>, beta: Monomial, n: u32) -> &'a GaussPoly {
    if !cache.contains_key(&beta) {
        let i = (0..n).find(|&i| beta.exp(i) > 0).expect("nonzero multi-index");
        let prev = beta.lower(i).expect("positive exponent");
        let d = derivative(cache, prev, n).diff(i);
        cache.insert(beta, d);
    }
    &cache[&beta]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Matrix;

    fn random_curvature_4() -> CurvatureData {
        let h1 = alloc::vec![
            alloc::vec![int(1), int(2), int(0), int(-1)],
            alloc::vec![int(2), int(0), int(3), int(1)],
            alloc::vec![int(0), int(3), int(-2), int(1)],
            alloc::vec![int(-1), int(1), int(1), int(1)],
        ];
        let h2 = alloc::vec![
            alloc::vec![int(0), int(1), int(1), int(0)],
            alloc::vec![int(1), int(2), int(0), int(-1)],
            alloc::vec![int(1), int(0), int(1), int(2)],
            alloc::vec![int(0), int(-1), int(2), int(0)],
        ];
        CurvatureData::from_symmetric_forms(4, &[(rat(1, 3), h1), (rat(-2, 5), h2)], 1, Vec::new()).unwrap()
    }

    #[test]
    fn a_hat_degree_four() {
        let c = random_curvature_4();
        let m = FormMatrix::riemann(&c);
        let a = a_hat_form(&m);
        let expect = m.mul(&m).trace().scale(&Cyclo8::from_rational(rat(-1, 48)));
        assert_eq!(a.part(4), expect);
        assert!(a.part(2).is_zero());
        assert_eq!(a.part(0), FormElement::one(4, 1));
    }

    #[test]
    fn chern_rank_one() {
        let f = Matrix::scalar(1, Cyclo8::complex(int(0), int(5)));
        let c = CurvatureData::from_components(2, &[], 1, &[([0, 1], f.clone())]).unwrap();
        let ch = chern_form(&c);
        assert_eq!(ch.part(0), FormElement::one(2, 1));
        assert_eq!(ch.part(2), FormElement::from_blade(2, 0b11, f.neg()));
    }

    #[test]
    fn mehler_at_origin_is_a_hat() {
        let c = random_curvature_4();
        let m = FormMatrix::riemann(&c);
        let v = mehler_kernel(&m, &[int(0), int(0), int(0), int(0)], &int(1)).unwrap();
        assert_eq!(v.form, a_hat_form(&m).scale_ext(&ExtScalar::four_pi_pow_neg_half(4)));
        assert!(v.gaussian.is_zero());
        let origin: Vec<Rational> = (0..4).map(|_| int(0)).collect();
        assert!(mehler_kernel(&m, &origin, &int(0)).is_err());
    }

    #[test]
    fn flat_mehler_is_gaussian() {
        let m = FormMatrix::zero(2, 2);
        let v = mehler_kernel(&m, &[int(1), int(2)], &rat(1, 2)).unwrap();
        assert_eq!(v.gaussian, rat(-5, 2));
        assert_eq!(v.form, FormElement::scalar(2, 1, Cyclo8::from_rational(rat(1, 4))).with_pi_half(-2));
    }
}
