//! Matrix-valued exterior forms over {1..n}, stored by blade bitmask.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::{AlgebraError, Cyclo8, ExtScalar};

/// Dense p×p matrix over ℚ(ζ₈), row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    p: usize,
    a: Vec<Cyclo8>,
}

impl Matrix {
    pub fn zero(p: usize) -> Self {
        Matrix { p, a: alloc::vec![Cyclo8::zero(); p * p] }
    }

    pub fn identity(p: usize) -> Self {
        Matrix::scalar(p, Cyclo8::one())
    }

    pub fn scalar(p: usize, c: Cyclo8) -> Self {
        let mut m = Matrix::zero(p);
        for i in 0..p {
            m.a[i * p + i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Cyclo8>>) -> Self {
        let p = rows.len();
        let mut a = Vec::with_capacity(p * p);
        for r in rows {
            assert_eq!(r.len(), p, "matrix rows must be square");
            a.extend(r);
        }
        Matrix { p, a }
    }

    pub fn size(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclo8 {
        &self.a[i * self.p + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclo8) {
        self.a[i * self.p + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Zero::is_zero)
    }

    /// Whether this is c·1 for some c; returns c.
    pub fn as_scalar(&self) -> Option<Cyclo8> {
        let c = self.get(0, 0).clone();
        if *self == Matrix::scalar(self.p, c.clone()) {
            Some(c)
        } else {
            None
        }
    }

    pub fn trace(&self) -> Cyclo8 {
        let mut t = Cyclo8::zero();
        for i in 0..self.p {
            t += self.get(i, i);
        }
        t
    }

    pub fn scale(&self, c: &Cyclo8) -> Matrix {
        Matrix { p: self.p, a: self.a.iter().map(|x| x * c).collect() }
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        for (x, y) in self.a.iter_mut().zip(&other.a) {
            *x += y;
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { p: self.p, a: self.a.iter().map(|x| -x.clone()).collect() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let p = self.p;
        if p == 1 {
            return Matrix { p, a: alloc::vec![&self.a[0] * &other.a[0]] };
        }
        let mut out = Matrix::zero(p);
        for i in 0..p {
            for k in 0..p {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..p {
                    let y = other.get(k, j);
                    if !y.is_zero() {
                        out.a[i * p + j] += x * y;
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        let p = self.p;
        let mut out = Matrix::zero(p);
        for i in 0..p {
            for j in 0..p {
                out.a[j * p + i] = self.get(i, j).conj();
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let p = self.p + other.p;
        let mut out = Matrix::zero(p);
        for i in 0..self.p {
            for j in 0..self.p {
                out.a[i * p + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.p {
            for j in 0..other.p {
                out.a[(i + self.p) * p + j + self.p] = other.get(i, j).clone();
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.p == 1 {
            return write!(f, "{}", self.a[0]);
        }
        f.write_str("[")?;
        for i in 0..self.p {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.p {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

/// Indices (0-based, increasing) of the generators in a blade.
pub fn blade_indices(mask: u32) -> impl Iterator<Item = u32> {
    (0..32).filter(move |i| mask & (1 << i) != 0)
}

/// Sign of reordering e_A e_B into increasing order (no contractions).
pub fn blade_sign(a: u32, b: u32) -> i64 {
    let mut swaps = 0u32;
    for j in blade_indices(b) {
        swaps += (a >> (j + 1)).count_ones();
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// How two blades multiply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductRule {
    /// Exterior product: overlapping blades vanish.
    Wedge,
    /// Clifford product in the σ-image, c(e_i)² = −1.
    Clifford,
}

impl ProductRule {
    /// Product of unit blades: (sign, result) or None when it vanishes.
    pub fn blades(self, a: u32, b: u32) -> Option<(i64, u32)> {
        let overlap = a & b;
        match self {
            ProductRule::Wedge if overlap != 0 => None,
            ProductRule::Wedge => Some((blade_sign(a, b), a | b)),
            ProductRule::Clifford => {
                let s = blade_sign(a, b);
                let s = if overlap.count_ones() % 2 == 0 { s } else { -s };
                Some((s, a ^ b))
            }
        }
    }
}

/// Element of Λ(ℝⁿ) ⊗ End(ℂᵖ) with coefficients in ℚ(ζ₈)·π^{h/2}.
///
/// All coefficients share one π-grade `pi_half`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FormElement {
    n: u32,
    rank: usize,
    pi_half: i32,
    terms: BTreeMap<u32, Matrix>,
}

impl FormElement {
    pub fn zero(n: u32, rank: usize) -> Self {
        assert!(n <= 16, "dimension too large");
        FormElement { n, rank, pi_half: 0, terms: BTreeMap::new() }
    }

    pub fn one(n: u32, rank: usize) -> Self {
        FormElement::scalar(n, rank, Cyclo8::one())
    }

    pub fn scalar(n: u32, rank: usize, c: Cyclo8) -> Self {
        FormElement::from_blade(n, 0, Matrix::scalar(rank, c))
    }

    pub fn from_ext(n: u32, rank: usize, c: &ExtScalar) -> Self {
        FormElement::scalar(n, rank, c.mantissa.clone()).with_pi_half(c.pi_half)
    }

    /// Single blade with a matrix coefficient.
    pub fn from_blade(n: u32, mask: u32, m: Matrix) -> Self {
        let mut f = FormElement::zero(n, m.size());
        assert!(mask >> n == 0, "blade index out of range");
        if !m.is_zero() {
            f.terms.insert(mask, m);
        }
        f
    }

    /// The generator dx^i (0-based).
    pub fn generator(n: u32, rank: usize, i: u32) -> Self {
        FormElement::from_blade(n, 1 << i, Matrix::identity(rank))
    }

    /// Product of generators in the given order, e.g. `[1, 0]` gives −dx¹∧dx².
    pub fn monomial(n: u32, rank: usize, idx: &[u32]) -> Self {
        let mut f = FormElement::one(n, rank);
        for &i in idx {
            f = f.wedge(&FormElement::generator(n, rank, i)).expect("same shape");
        }
        f
    }

    pub fn with_pi_half(mut self, h: i32) -> Self {
        self.pi_half = h;
        self
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn pi_half(&self) -> i32 {
        self.pi_half
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Matrix)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn coeff(&self, mask: u32) -> Option<&Matrix> {
        self.terms.get(&mask)
    }

    /// Highest form degree present, if nonzero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.count_ones()).max()
    }

    /// Degree-k component.
    pub fn part(&self, k: u32) -> FormElement {
        self.filter(|mask| mask.count_ones() == k)
    }

    pub fn filter(&self, keep: impl Fn(u32) -> bool) -> FormElement {
        FormElement {
            n: self.n,
            rank: self.rank,
            pi_half: self.pi_half,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(**k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Coefficient of the top blade dx¹∧…∧dxⁿ.
    pub fn top(&self) -> Matrix {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        self.terms.get(&full).cloned().unwrap_or_else(|| Matrix::zero(self.rank))
    }

    /// Value of a degree-0 element as an exact scalar, if it is c·1.
    pub fn as_scalar(&self) -> Option<ExtScalar> {
        if self.is_zero() {
            return Some(ExtScalar::zero());
        }
        if self.terms.len() != 1 {
            return None;
        }
        let m = self.terms.get(&0)?;
        Some(ExtScalar::new(m.as_scalar()?, self.pi_half))
    }

    fn check_shape(&self, other: &FormElement) -> Result<(), AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch(self.n, other.n));
        }
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    fn check_grade(&self, other: &FormElement) -> Result<i32, AlgebraError> {
        if self.is_zero() {
            return Ok(other.pi_half);
        }
        if other.is_zero() || self.pi_half == other.pi_half {
            return Ok(self.pi_half);
        }
        Err(AlgebraError::GradeMismatch(self.pi_half, other.pi_half))
    }

    pub fn try_add(&self, other: &FormElement) -> Result<FormElement, AlgebraError> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn add_assign(&mut self, other: &FormElement) -> Result<(), AlgebraError> {
        self.check_shape(other)?;
        self.pi_half = self.check_grade(other)?;
        for (k, m) in &other.terms {
            self.add_blade(*k, m);
        }
        Ok(())
    }

    pub(crate) fn add_blade(&mut self, mask: u32, m: &Matrix) {
        match self.terms.get_mut(&mask) {
            Some(e) => {
                e.add_assign(m);
                if e.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                if !m.is_zero() {
                    self.terms.insert(mask, m.clone());
                }
            }
        }
    }

    pub fn try_sub(&self, other: &FormElement) -> Result<FormElement, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> FormElement {
        self.map(|m| m.neg())
    }

    pub fn scale(&self, c: &Cyclo8) -> FormElement {
        if c.is_zero() {
            return FormElement::zero(self.n, self.rank);
        }
        self.map(|m| m.scale(c))
    }

    pub fn scale_ext(&self, c: &ExtScalar) -> FormElement {
        let mut out = self.scale(&c.mantissa);
        out.pi_half += c.pi_half;
        out
    }

    /// Multiplies each coefficient matrix on the left by `m`.
    pub fn left_matrix(&self, m: &Matrix) -> FormElement {
        self.map(|x| m.mul(x))
    }

    fn map(&self, f: impl Fn(&Matrix) -> Matrix) -> FormElement {
        let mut out = FormElement::zero(self.n, self.rank).with_pi_half(self.pi_half);
        for (k, v) in &self.terms {
            let w = f(v);
            if !w.is_zero() {
                out.terms.insert(*k, w);
            }
        }
        out
    }

    pub fn product(&self, other: &FormElement, rule: ProductRule) -> Result<FormElement, AlgebraError> {
        self.check_shape(other)?;
        let mut out = FormElement::zero(self.n, self.rank).with_pi_half(self.pi_half + other.pi_half);
        for (ka, ma) in &self.terms {
            for (kb, mb) in &other.terms {
                if let Some((s, k)) = rule.blades(*ka, *kb) {
                    let m = ma.mul(mb);
                    let m = if s < 0 { m.neg() } else { m };
                    out.add_blade(k, &m);
                }
            }
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &FormElement) -> Result<FormElement, AlgebraError> {
        self.product(other, ProductRule::Wedge)
    }

    /// Exponential series of a nilpotent element (every blade of degree ≥ 1).
    pub fn exp_nilpotent(&self, rule: ProductRule) -> FormElement {
        debug_assert!(!self.terms.contains_key(&0), "exp needs a nilpotent argument");
        let mut acc = FormElement::one(self.n, self.rank);
        let mut term = acc.clone();
        let mut k = 1i64;
        loop {
            term = term.product(self, rule).expect("same shape").scale(&Cyclo8::from_rational(super::rat(1, k)));
            if term.is_zero() || k > 2 * self.n as i64 + 2 {
                break;
            }
            acc.add_assign(&term).expect("grade 0");
            k += 1;
        }
        acc
    }

    /// Matrix trace of every coefficient, as a rank-1 form.
    pub fn trace(&self) -> FormElement {
        let mut out = FormElement::zero(self.n, 1).with_pi_half(self.pi_half);
        for (k, m) in &self.terms {
            out.add_blade(*k, &Matrix::scalar(1, m.trace()));
        }
        out
    }

    /// Embeds a rank-1 element as c·1 in rank `p`.
    pub fn broadcast(&self, p: usize) -> FormElement {
        assert_eq!(self.rank, 1);
        let mut out = FormElement::zero(self.n, p).with_pi_half(self.pi_half);
        for (k, m) in &self.terms {
            out.add_blade(*k, &Matrix::scalar(p, m.get(0, 0).clone()));
        }
        out
    }

    pub fn direct_sum(&self, other: &FormElement) -> Result<FormElement, AlgebraError> {
        if self.n != other.n {
            return Err(AlgebraError::DimensionMismatch(self.n, other.n));
        }
        let pi_half = self.check_grade(other)?;
        let mut out = FormElement::zero(self.n, self.rank + other.rank).with_pi_half(pi_half);
        let za = Matrix::zero(self.rank);
        let zb = Matrix::zero(other.rank);
        let keys: alloc::collections::BTreeSet<u32> =
            self.terms.keys().chain(other.terms.keys()).copied().collect();
        for k in keys {
            let a = self.terms.get(&k).unwrap_or(&za);
            let b = other.terms.get(&k).unwrap_or(&zb);
            out.add_blade(k, &a.direct_sum(b));
        }
        Ok(out)
    }

    /// Float rendering of every coefficient entry, for reports.
    pub fn to_complex_f64(&self) -> Vec<(u32, Vec<(f64, f64)>)> {
        self.terms
            .iter()
            .map(|(k, m)| {
                let vals = m
                    .a
                    .iter()
                    .map(|c| ExtScalar::new(c.clone(), self.pi_half).to_complex_f64())
                    .collect();
                (*k, vals)
            })
            .collect()
    }
}

impl fmt::Debug for FormElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.pi_half != 0 {
            write!(f, "π^({}/2)·", self.pi_half)?;
        }
        f.write_str("(")?;
        for (i, (k, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({:?})", m)?;
            for j in blade_indices(*k) {
                write!(f, " dx{}", j + 1)?;
            }
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dx(i: u32) -> FormElement {
        FormElement::generator(3, 1, i)
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = dx(1).wedge(&dx(0)).unwrap();
        let b = dx(0).wedge(&dx(1)).unwrap();
        assert_eq!(a, b.neg());
        assert!(dx(0).wedge(&dx(0)).unwrap().is_zero());
        let s = dx(0).try_add(&dx(1)).unwrap().wedge(&dx(1)).unwrap();
        assert_eq!(s, b);
    }

    #[test]
    fn shape_mismatch() {
        let a = FormElement::one(2, 1);
        let b = FormElement::one(3, 1);
        assert_eq!(a.wedge(&b), Err(AlgebraError::DimensionMismatch(2, 3)));
        let c = FormElement::one(2, 2);
        assert_eq!(a.wedge(&c), Err(AlgebraError::RankMismatch(1, 2)));
    }

    #[test]
    fn clifford_blades() {
        assert_eq!(ProductRule::Clifford.blades(1, 1), Some((-1, 0)));
        assert_eq!(ProductRule::Clifford.blades(2, 1), Some((-1, 3)));
        assert_eq!(ProductRule::Clifford.blades(3, 3), Some((-1, 0)));
        assert_eq!(ProductRule::Wedge.blades(3, 1), None);
    }

    #[test]
    fn exp_of_two_form() {
        let w = FormElement::monomial(4, 1, &[0, 1]).try_add(&FormElement::monomial(4, 1, &[2, 3])).unwrap();
        let e = w.exp_nilpotent(ProductRule::Wedge);
        assert_eq!(e.part(4), FormElement::monomial(4, 1, &[0, 1, 2, 3]));
    }

    #[test]
    fn matrix_coefficients_multiply_in_order() {
        let a = Matrix::from_rows(alloc::vec![
            alloc::vec![Cyclo8::zero(), Cyclo8::one()],
            alloc::vec![Cyclo8::zero(), Cyclo8::zero()],
        ]);
        let b = a.adjoint();
        let fa = FormElement::from_blade(2, 1, a.clone());
        let fb = FormElement::from_blade(2, 0, b.clone());
        let ab = fa.wedge(&fb).unwrap();
        assert_eq!(ab.coeff(1), Some(&a.mul(&b)));
        assert_ne!(a.mul(&b), b.mul(&a));
    }
}
