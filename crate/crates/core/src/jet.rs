//! Packed multi-indices and truncated Taylor polynomials in x.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{factorial, AlgebraError, Cyclo8, FormElement, Rational};

/// Largest supported ambient dimension.
pub const MAX_DIM: u32 = 8;

/// Multi-index with up to eight exponents of at most 255, packed in a u64.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: u32) -> Monomial {
        debug_assert!(i < MAX_DIM);
        Monomial(1u64 << (8 * i))
    }

    pub fn from_exponents(e: &[u32]) -> Monomial {
        assert!(e.len() as u32 <= MAX_DIM);
        let mut m = 0u64;
        for (i, &x) in e.iter().enumerate() {
            assert!(x < 256, "exponent overflow");
            m |= u64::from(x) << (8 * i);
        }
        Monomial(m)
    }

    pub fn exp(self, i: u32) -> u32 {
        ((self.0 >> (8 * i)) & 0xff) as u32
    }

    pub fn exponents(self, n: u32) -> Vec<u32> {
        (0..n).map(|i| self.exp(i)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_DIM).map(|i| self.exp(i)).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product x^a·x^b. Exponents must stay below 256.
    pub fn mul(self, other: Monomial) -> Monomial {
        for i in 0..MAX_DIM {
            debug_assert!(self.exp(i) + other.exp(i) < 256, "exponent overflow");
        }
        Monomial(self.0 + other.0)
    }

    /// x^a / x_i, or None if the exponent of x_i is zero.
    pub fn lower(self, i: u32) -> Option<Monomial> {
        if self.exp(i) == 0 {
            None
        } else {
            Some(Monomial(self.0 - (1u64 << (8 * i))))
        }
    }

    pub fn raise(self, i: u32) -> Monomial {
        self.mul(Monomial::var(i))
    }

    /// Whether x^b divides x^a componentwise.
    pub fn divides(self, other: Monomial) -> bool {
        (0..MAX_DIM).all(|i| self.exp(i) <= other.exp(i))
    }

    /// α! = Π α_i!.
    pub fn factorial(self) -> Rational {
        let mut acc = factorial(0);
        for i in 0..MAX_DIM {
            let e = self.exp(i);
            if e > 1 {
                acc *= factorial(e);
            }
        }
        acc
    }

    /// All multi-indices in n variables of total degree exactly d.
    pub fn all_of_degree(n: u32, d: u32) -> Vec<Monomial> {
        fn rec(n: u32, i: u32, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i + 1 == n {
                cur.push(left);
                out.push(Monomial::from_exponents(cur));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(n, i + 1, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::ONE);
            }
            return out;
        }
        rec(n, 0, d, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<u32> = self.exponents(MAX_DIM);
        let last = e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &e[..last])
    }
}

/// Truncated polynomial Σ_{|a| ≤ J} c_a x^a with form coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct JetPoly {
    n: u32,
    rank: usize,
    order: u32,
    terms: BTreeMap<Monomial, FormElement>,
}

impl JetPoly {
    pub fn zero(n: u32, rank: usize, order: u32) -> Self {
        JetPoly { n, rank, order, terms: BTreeMap::new() }
    }

    pub fn constant(c: FormElement, order: u32) -> Self {
        let mut j = JetPoly::zero(c.dim(), c.rank(), order);
        j.add_term(Monomial::ONE, c).expect("same shape");
        j
    }

    /// Scalar rational jet of rank 1.
    pub fn scalar_term(n: u32, order: u32, a: Monomial, c: Rational) -> Self {
        let mut j = JetPoly::zero(n, 1, order);
        j.add_term(a, FormElement::scalar(n, 1, Cyclo8::from_rational(c))).expect("same shape");
        j
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &FormElement)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, a: Monomial) -> Option<&FormElement> {
        self.terms.get(&a)
    }

    /// Rational value of the scalar coefficient of x^a (rank-1 scalar jets).
    pub fn scalar_coeff(&self, a: Monomial) -> Rational {
        self.terms
            .get(&a)
            .and_then(|f| f.as_scalar())
            .map(|s| s.mantissa.coeffs()[0].clone())
            .unwrap_or_default()
    }

    /// Adds c·x^a; terms beyond the truncation order are dropped.
    pub fn add_term(&mut self, a: Monomial, c: FormElement) -> Result<(), AlgebraError> {
        if a.degree() > self.order || c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&a) {
            Some(e) => {
                e.add_assign(&c)?;
                if e.is_zero() {
                    self.terms.remove(&a);
                }
            }
            None => {
                self.terms.insert(a, c);
            }
        }
        Ok(())
    }

    pub fn try_add(&self, other: &JetPoly) -> Result<JetPoly, AlgebraError> {
        let mut out = self.clone();
        out.order = self.order.min(other.order);
        out.terms.retain(|k, _| k.degree() <= out.order);
        for (k, v) in &other.terms {
            out.add_term(*k, v.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &JetPoly) -> Result<JetPoly, AlgebraError> {
        let mut out = JetPoly::zero(self.n, self.rank, self.order.min(other.order));
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.degree() + b.degree() <= out.order {
                    out.add_term(a.mul(*b), ca.wedge(cb)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Cyclo8) -> JetPoly {
        let mut out = JetPoly::zero(self.n, self.rank, self.order);
        for (k, v) in &self.terms {
            out.add_term(*k, v.scale(c)).expect("same shape");
        }
        out
    }

    /// ∂/∂x_i; the truncation order drops by one.
    pub fn diff(&self, i: u32) -> JetPoly {
        let mut out = JetPoly::zero(self.n, self.rank, self.order.saturating_sub(1));
        for (k, v) in &self.terms {
            if let Some(l) = k.lower(i) {
                let e = Cyclo8::from_int(i64::from(k.exp(i)));
                out.add_term(l, v.scale(&e)).expect("same shape");
            }
        }
        out
    }

    /// Value at x = 0.
    pub fn at_origin(&self) -> FormElement {
        self.terms.get(&Monomial::ONE).cloned().unwrap_or_else(|| FormElement::zero(self.n, self.rank))
    }
}

impl fmt::Debug for JetPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()?;
        write!(f, " + O(|x|^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn monomial_arithmetic() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.lower(0), Some(Monomial::from_exponents(&[1, 0, 1])));
        assert_eq!(a.lower(1), None);
        assert_eq!(a.factorial(), int(2));
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(2, 0), alloc::vec![Monomial::ONE]);
    }

    #[test]
    fn jet_truncation_and_derivative() {
        let x0 = JetPoly::scalar_term(2, 2, Monomial::var(0), int(1));
        let sq = x0.mul(&x0).unwrap();
        assert_eq!(sq.scalar_coeff(Monomial::from_exponents(&[2])), int(1));
        let cube = sq.mul(&x0).unwrap();
        assert!(cube.is_zero());
        let d = sq.diff(0);
        assert_eq!(d.scalar_coeff(Monomial::var(0)), int(2));
        assert_eq!(d.order(), 1);
    }
}
