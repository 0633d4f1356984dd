//! Volterra symbols: finite sums of c(x)·ξ^β·(|ξ|²+iτ)^{−N}.
//!
//! Every term is kept in the canonical form with no bare powers of τ: a
//! factor iτ is rewritten as (|ξ|²+iτ) − |ξ|². The base power N may be zero
//! or negative, which is how differential operators such as p + iτ are
//! represented.

mod compose;
mod heat;
mod parametrix;

pub use heat::{heat_coefficients, radial_eval, radial_moment, DiffOpSymbol};
pub use parametrix::{parametrix, Parametrix};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraError, Cyclo8, FormElement, Matrix, ProductRule};
use crate::jet::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VolterraError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("product rules differ between operands")]
    RuleMismatch,
    #[error("requested depth {requested} but only {available} components are available")]
    DepthExceeded { requested: u32, available: u32 },
    #[error("x-jets exhausted: derivatives of order {needed} requested from jets of order {available}")]
    XOrderExhausted { needed: u32, available: u32 },
    #[error("composition would need infinitely many terms; give a depth")]
    UnboundedComposition,
    #[error("principal symbol at x = 0 is not |xi|^2 times the identity")]
    PrincipalNotLaplacian,
    #[error("parametrix x-truncation must be finite")]
    UnboundedParametrix,
    #[error("parametrix {0} residual is nonzero")]
    ParametrixResidual(&'static str),
    #[error("{requested} heat coefficients need jets of order {needed}, operator is exact only to order {available}")]
    InsufficientJets { requested: u32, needed: u32, available: u32 },
    #[error("term of degree {degree} exceeds declared order {order}")]
    OrderViolation { degree: i32, order: i32 },
}

/// Key of one term: x^x · ξ^xi · (|ξ|²+iτ)^{−n_pow}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymKey {
    pub x: Monomial,
    pub xi: Monomial,
    pub n_pow: i32,
}

impl SymKey {
    pub const ONE: SymKey = SymKey { x: Monomial::ONE, xi: Monomial::ONE, n_pow: 0 };

    pub fn new(x: Monomial, xi: Monomial, n_pow: i32) -> Self {
        SymKey { x, xi, n_pow }
    }

    /// Parabolic degree |β| − 2N.
    pub fn degree(&self) -> i32 {
        self.xi.degree() as i32 - 2 * self.n_pow
    }

    fn mul(&self, other: &SymKey) -> SymKey {
        SymKey { x: self.x.mul(other.x), xi: self.xi.mul(other.xi), n_pow: self.n_pow + other.n_pow }
    }
}

impl fmt::Debug for SymKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?} ξ^{:?} B^{}", self.x, self.xi, -self.n_pow)
    }
}

/// Truncated Volterra symbol with form/Clifford-valued coefficients.
///
/// `floor` is the lowest parabolic degree that is complete (`None` when the
/// symbol is exact); `x_order` the highest complete x-degree.
#[derive(Clone, PartialEq, Eq)]
pub struct VolterraSymbol {
    n: u32,
    rank: usize,
    rule: ProductRule,
    order: i32,
    floor: Option<i32>,
    x_order: Option<u32>,
    terms: BTreeMap<SymKey, FormElement>,
}

fn min_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

fn max_opt<T: Ord>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

impl VolterraSymbol {
    /// Empty exact symbol of the given declared order.
    pub fn zero(n: u32, rank: usize, rule: ProductRule, order: i32) -> Self {
        VolterraSymbol { n, rank, rule, order, floor: None, x_order: None, terms: BTreeMap::new() }
    }

    /// c·x^a·ξ^β·(|ξ|²+iτ)^{−N} as an exact symbol.
    pub fn term(key: SymKey, c: FormElement, rule: ProductRule) -> Self {
        let mut s = VolterraSymbol::zero(c.dim(), c.rank(), rule, key.degree());
        s.insert(key, c).expect("declared order matches");
        s
    }

    pub fn constant(c: FormElement, rule: ProductRule) -> Self {
        VolterraSymbol::term(SymKey::ONE, c, rule)
    }

    pub fn one(n: u32, rank: usize, rule: ProductRule) -> Self {
        VolterraSymbol::constant(FormElement::one(n, rank), rule)
    }

    /// (|ξ|²+iτ)^{−N}.
    pub fn base_power(n: u32, rank: usize, rule: ProductRule, n_pow: i32) -> Self {
        VolterraSymbol::term(SymKey::new(Monomial::ONE, Monomial::ONE, n_pow), FormElement::one(n, rank), rule)
    }

    /// |ξ|² = Σ ξ_i².
    pub fn xi_squared(n: u32, rank: usize, rule: ProductRule) -> Self {
        let mut s = VolterraSymbol::zero(n, rank, rule, 2);
        for i in 0..n {
            let k = SymKey::new(Monomial::ONE, Monomial::var(i).raise(i), 0);
            s.insert(k, FormElement::one(n, rank)).expect("degree 2");
        }
        s
    }

    /// iτ = (|ξ|²+iτ) − |ξ|².
    pub fn i_tau(n: u32, rank: usize, rule: ProductRule) -> Self {
        let b = VolterraSymbol::base_power(n, rank, rule, -1);
        b.sub(&VolterraSymbol::xi_squared(n, rank, rule)).expect("same shape")
    }

    /// ξ_i times the identity.
    pub fn xi_var(n: u32, rank: usize, rule: ProductRule, i: u32) -> Self {
        VolterraSymbol::term(SymKey::new(Monomial::ONE, Monomial::var(i), 0), FormElement::one(n, rank), rule)
    }

    /// x_i times the identity (parabolic degree 0).
    pub fn x_var(n: u32, rank: usize, rule: ProductRule, i: u32) -> Self {
        VolterraSymbol::term(SymKey::new(Monomial::var(i), Monomial::ONE, 0), FormElement::one(n, rank), rule)
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rule(&self) -> ProductRule {
        self.rule
    }

    /// Declared leading parabolic degree m.
    pub fn order(&self) -> i32 {
        self.order
    }

    /// Lowest complete parabolic degree, `None` when exact.
    pub fn floor(&self) -> Option<i32> {
        self.floor
    }

    /// Number of complete components below the leading one.
    pub fn depth(&self) -> Option<u32> {
        self.floor.map(|f| (self.order - f).max(0) as u32)
    }

    pub fn x_order(&self) -> Option<u32> {
        self.x_order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymKey, &FormElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: &SymKey) -> Option<&FormElement> {
        self.terms.get(k)
    }

    /// Reinterprets the coefficient product rule (e.g. Clifford → forms).
    pub fn with_rule(mut self, rule: ProductRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_order(mut self, order: i32) -> Result<Self, VolterraError> {
        if let Some(d) = self.max_degree() {
            if d > order {
                return Err(VolterraError::OrderViolation { degree: d, order });
            }
        }
        self.order = order;
        Ok(self)
    }

    /// Drops everything below parabolic degree `floor`.
    pub fn truncate_floor(mut self, floor: i32) -> Self {
        let f = max_opt(self.floor, Some(floor));
        self.floor = f;
        self.terms.retain(|k, _| k.degree() >= floor);
        self
    }

    /// Marks a symbol known to be a single homogeneous component as exact in
    /// the parabolic degree.
    pub(crate) fn homogeneous(mut self) -> Self {
        debug_assert!(self.terms.keys().map(SymKey::degree).collect::<alloc::collections::BTreeSet<_>>().len() <= 1);
        self.floor = None;
        self
    }

    /// Declares the stored x-polynomial exact (used once a truncated jet
    /// expansion has been adopted as the operator itself).
    pub fn exact_in_x(mut self) -> Self {
        self.x_order = None;
        self
    }

    /// Drops x-monomials above degree `t`.
    pub fn truncate_x(mut self, t: u32) -> Self {
        self.x_order = min_opt(self.x_order, Some(t));
        self.terms.retain(|k, _| k.x.degree() <= t);
        self
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().map(SymKey::degree).max()
    }

    /// Largest x-degree of any stored term.
    pub fn max_x_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.x.degree()).max().unwrap_or(0)
    }

    /// ξ-degree bound when the symbol is polynomial in (ξ, τ).
    pub fn polynomial_degree(&self) -> Option<u32> {
        if self.terms.keys().all(|k| k.n_pow <= 0) {
            Some(self.max_degree().unwrap_or(0).max(0) as u32)
        } else {
            None
        }
    }

    fn keeps(&self, k: &SymKey) -> bool {
        self.floor.is_none_or(|f| k.degree() >= f) && self.x_order.is_none_or(|t| k.x.degree() <= t)
    }

    /// Adds a term; terms outside the truncation window are discarded.
    pub fn insert(&mut self, k: SymKey, c: FormElement) -> Result<(), VolterraError> {
        if c.is_zero() || !self.keeps(&k) {
            return Ok(());
        }
        if k.degree() > self.order {
            return Err(VolterraError::OrderViolation { degree: k.degree(), order: self.order });
        }
        match self.terms.get_mut(&k) {
            Some(e) => {
                e.add_assign(&c)?;
                if e.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &VolterraSymbol) -> Result<(), VolterraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch(self.n, other.n).into());
        }
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch(self.rank, other.rank).into());
        }
        if self.rule != other.rule {
            return Err(VolterraError::RuleMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &VolterraSymbol) -> Result<VolterraSymbol, VolterraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.order = self.order.max(other.order);
        out.floor = max_opt(self.floor, other.floor);
        out.x_order = min_opt(self.x_order, other.x_order);
        let (f, t) = (out.floor, out.x_order);
        out.terms.retain(|k, _| f.is_none_or(|f| k.degree() >= f) && t.is_none_or(|t| k.x.degree() <= t));
        for (k, v) in &other.terms {
            out.insert(*k, v.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &VolterraSymbol) -> Result<VolterraSymbol, VolterraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> VolterraSymbol {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &Cyclo8) -> VolterraSymbol {
        self.map_coeffs(|f| f.scale(c))
    }

    /// Multiplies every coefficient on the left by a constant matrix.
    pub fn left_matrix(&self, m: &Matrix) -> VolterraSymbol {
        self.map_coeffs(|f| f.left_matrix(m))
    }

    pub(crate) fn map_coeffs(&self, f: impl Fn(&FormElement) -> FormElement) -> VolterraSymbol {
        let mut out = VolterraSymbol { terms: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.terms {
            let w = f(v);
            if !w.is_zero() {
                out.terms.insert(*k, w);
            }
        }
        out
    }

    /// Keeps the terms accepted by `keep`, leaving the declared window alone.
    pub fn filter(&self, keep: impl Fn(&SymKey, &FormElement) -> bool) -> VolterraSymbol {
        let mut out = VolterraSymbol { terms: BTreeMap::new(), ..self.clone() };
        for (k, v) in &self.terms {
            if keep(k, v) {
                out.terms.insert(*k, v.clone());
            }
        }
        out
    }

    /// Homogeneous component of parabolic degree d.
    pub fn component(&self, d: i32) -> VolterraSymbol {
        self.filter(|k, _| k.degree() == d)
    }

    /// Components q_m, q_{m−1}, … down to the floor (or lowest stored degree).
    pub fn components(&self) -> Vec<(i32, VolterraSymbol)> {
        let lo = self.floor.unwrap_or_else(|| self.terms.keys().map(SymKey::degree).min().unwrap_or(self.order));
        (lo..=self.order).rev().map(|d| (d, self.component(d))).collect()
    }

    /// Restriction to x = 0.
    pub fn at_origin(&self) -> VolterraSymbol {
        self.filter(|k, _| k.x.is_one()).truncate_x(0)
    }

    /// Pointwise product (no derivative terms).
    pub fn mul(&self, other: &VolterraSymbol) -> Result<VolterraSymbol, VolterraError> {
        self.check_compatible(other)?;
        let order = self.order + other.order;
        let floor = max_opt(self.floor.map(|f| f + other.order), other.floor.map(|f| f + self.order));
        let x_order = min_opt(self.x_order, other.x_order);
        let mut out = VolterraSymbol { n: self.n, rank: self.rank, rule: self.rule, order, floor, x_order, terms: BTreeMap::new() };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                if floor.is_some_and(|f| ka.degree() + kb.degree() < f) {
                    continue;
                }
                if x_order.is_some_and(|t| ka.x.degree() + kb.x.degree() > t) {
                    continue;
                }
                out.insert(ka.mul(kb), ca.product(cb, self.rule)?)?;
            }
        }
        Ok(out)
    }

    /// ∂/∂ξ_i, using ∂_ξi (|ξ|²+iτ)^{−N} = −2Nξ_i(|ξ|²+iτ)^{−N−1}.
    pub fn diff_xi(&self, i: u32) -> VolterraSymbol {
        let mut out = VolterraSymbol {
            order: self.order - 1,
            floor: self.floor.map(|f| f - 1),
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (k, c) in &self.terms {
            if let Some(l) = k.xi.lower(i) {
                let e = Cyclo8::from_int(i64::from(k.xi.exp(i)));
                out.insert(SymKey::new(k.x, l, k.n_pow), c.scale(&e)).expect("degree drops by one");
            }
            if k.n_pow != 0 {
                let e = Cyclo8::from_int(-2 * i64::from(k.n_pow));
                out.insert(SymKey::new(k.x, k.xi.raise(i), k.n_pow + 1), c.scale(&e)).expect("degree drops by one");
            }
        }
        out
    }

    /// ∂/∂x_i; the x-order drops by one.
    pub fn diff_x(&self, i: u32) -> VolterraSymbol {
        let mut out = VolterraSymbol {
            x_order: self.x_order.map(|t| t.saturating_sub(1)),
            terms: BTreeMap::new(),
            ..self.clone()
        };
        for (k, c) in &self.terms {
            if let Some(l) = k.x.lower(i) {
                let e = Cyclo8::from_int(i64::from(k.x.exp(i)));
                out.insert(SymKey::new(l, k.xi, k.n_pow), c.scale(&e)).expect("same degree");
            }
        }
        out
    }

    /// Whether every coefficient is zero except the constant 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&SymKey::ONE)
                .is_some_and(|c| *c == FormElement::one(self.n, self.rank))
    }

    /// Sum of coefficients at one key, zero when absent.
    pub fn coeff_or_zero(&self, k: &SymKey) -> FormElement {
        self.terms.get(k).cloned().unwrap_or_else(|| FormElement::zero(self.n, self.rank))
    }

    /// Total number of scalar entries stored, a rough size measure.
    pub fn weight(&self) -> usize {
        self.terms.values().map(|f| f.terms().count()).sum()
    }
}

impl fmt::Debug for VolterraSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "VolterraSymbol(order {}, floor {:?}, x_order {:?}) {{", self.order, self.floor, self.x_order)?;
        for (k, v) in &self.terms {
            writeln!(f, "  {:?}: {:?}", k, v)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const R: ProductRule = ProductRule::Clifford;

    #[test]
    fn i_tau_rewrite() {
        let it = VolterraSymbol::i_tau(2, 1, R);
        let b = VolterraSymbol::base_power(2, 1, R, 1);
        // iτ·B^{-1} + |ξ|²B^{-1} = 1
        let lhs = it.mul(&b).unwrap().add(&VolterraSymbol::xi_squared(2, 1, R).mul(&b).unwrap()).unwrap();
        assert!(lhs.is_one());
    }

    #[test]
    fn xi_derivative_of_base() {
        let b = VolterraSymbol::base_power(2, 1, R, 1);
        let d = b.diff_xi(0);
        let k = SymKey::new(Monomial::ONE, Monomial::var(0), 2);
        assert_eq!(d.coeff(&k), Some(&FormElement::scalar(2, 1, Cyclo8::from_int(-2))));
        assert_eq!(d.order(), -3);
    }

    #[test]
    fn degree_formula() {
        let k = SymKey::new(Monomial::var(1), Monomial::from_exponents(&[2, 1]), 3);
        assert_eq!(k.degree(), -3);
    }

    #[test]
    fn truncation_window() {
        let b = VolterraSymbol::base_power(2, 1, R, 1).add(&VolterraSymbol::base_power(2, 1, R, 3)).unwrap();
        let t = b.truncate_floor(-4);
        assert_eq!(t.len(), 1);
        assert_eq!(t.depth(), Some(2));
        assert!(VolterraSymbol::base_power(2, 1, R, 0).is_one());
    }
}
