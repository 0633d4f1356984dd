//! Trigonometric polynomials on T^d = ℝ^d/ℤ^d, e_m(x) = e^{2πi m·x}.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{Cyclo8, ExtScalar};

use super::{CmError, ModelFunction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigFunction {
    dim: u32,
    terms: BTreeMap<Vec<i64>, Cyclo8>,
}

impl TrigFunction {
    pub fn zero(dim: u32) -> Self {
        TrigFunction { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: u32, c: Cyclo8) -> Self {
        TrigFunction::zero(dim).with_term(alloc::vec![0; dim as usize], c)
    }

    /// The character e_m.
    pub fn exp(m: &[i64]) -> Self {
        TrigFunction::zero(m.len() as u32).with_term(m.to_vec(), Cyclo8::from_int(1))
    }

    pub fn from_terms(dim: u32, terms: impl IntoIterator<Item = (Vec<i64>, Cyclo8)>) -> Result<Self, CmError> {
        let mut f = TrigFunction::zero(dim);
        for (m, c) in terms {
            if m.len() != dim as usize {
                return Err(CmError::DimensionMismatch(dim, m.len() as u32));
            }
            f.add_term(m, c);
        }
        Ok(f)
    }

    fn with_term(mut self, m: Vec<i64>, c: Cyclo8) -> Self {
        self.add_term(m, c);
        self
    }

    fn add_term(&mut self, m: Vec<i64>, c: Cyclo8) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Cyclo8)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn coeff(&self, m: &[i64]) -> Cyclo8 {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// ∫_{T^d} f = coefficient of e_0.
    pub fn integral(&self) -> Cyclo8 {
        self.coeff(&alloc::vec![0; self.dim as usize])
    }

    /// Coefficients of ∂_j f / (2πi): m_j c_m.
    pub fn frequency_derivative(&self, j: usize) -> TrigFunction {
        let mut out = TrigFunction::zero(self.dim);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.scale(&crate::algebra::int(m[j])));
        }
        out
    }

    fn check(&self, other: &TrigFunction) -> Result<(), CmError> {
        if self.dim != other.dim {
            return Err(CmError::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }
}

fn det(rows: &[&[i64]]) -> i128 {
    let d = rows.len();
    if d == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    // fraction-free Bareiss elimination
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..d - 1 {
        if m[k][k] == 0 {
            match (k + 1..d).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..d {
            for j in k + 1..d {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[d - 1][d - 1]
}

impl ModelFunction for TrigFunction {
    fn manifold_dim(&self) -> u32 {
        self.dim
    }

    fn constant_like(&self, c: Cyclo8) -> Self {
        TrigFunction::constant(self.dim, c)
    }

    fn try_add(&self, other: &Self) -> Result<Self, CmError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    fn try_mul(&self, other: &Self) -> Result<Self, CmError> {
        self.check(other)?;
        let mut out = TrigFunction::zero(self.dim);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    fn scale(&self, c: &Cyclo8) -> Self {
        let mut out = TrigFunction::zero(self.dim);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    fn conj(&self) -> Self {
        let mut out = TrigFunction::zero(self.dim);
        for (m, v) in &self.terms {
            out.add_term(m.iter().map(|x| -x).collect(), v.conj());
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// (2πi)^d Σ c⁰_{m⁰}c¹_{m¹}⋯c^d_{m^d} det(m¹,…,m^d) over m⁰+⋯+m^d = 0.
    fn top_integral(f0: &Self, fs: &[Self]) -> Result<ExtScalar, CmError> {
        let d = f0.dim as usize;
        if fs.len() != d {
            return Err(CmError::Arity { expected: d + 1, got: fs.len() + 1 });
        }
        for f in fs {
            f0.check(f)?;
        }
        let mut acc = Cyclo8::zero();
        let mut stack: Vec<(&[i64], &Cyclo8)> = Vec::with_capacity(d);
        fn walk<'a>(
            f0: &TrigFunction,
            fs: &'a [TrigFunction],
            stack: &mut Vec<(&'a [i64], &'a Cyclo8)>,
            acc: &mut Cyclo8,
        ) {
            let level = stack.len();
            if level == fs.len() {
                let rows: Vec<&[i64]> = stack.iter().map(|(m, _)| *m).collect();
                let dt = det(&rows);
                if dt == 0 {
                    return;
                }
                let m0: Vec<i64> = (0..f0.dim as usize).map(|j| -rows.iter().map(|r| r[j]).sum::<i64>()).collect();
                let Some(c0) = f0.terms.get(&m0) else { return };
                let mut c = c0.clone();
                for (_, ci) in stack.iter() {
                    c = &c * ci;
                }
                *acc += &c.scale(&crate::algebra::Rational::from_integer((dt as i64).into()));
                return;
            }
            for (m, c) in &fs[level].terms {
                stack.push((m.as_slice(), c));
                walk(f0, fs, stack, acc);
                stack.pop();
            }
        }
        walk(f0, fs, &mut stack, &mut acc);
        let two_pi_i = ExtScalar::two_i_pi_pow_half(2 * d as i32);
        Ok(ExtScalar::new(acc, 0) * two_pi_i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant() {
        assert_eq!(det(&[&[1, 0], &[0, 1]]), 1);
        assert_eq!(det(&[&[0, 1], &[1, 0]]), -1);
        assert_eq!(det(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]), 18);
        assert_eq!(det(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]), -1);
    }

    #[test]
    fn products_and_integrals() {
        let a = TrigFunction::exp(&[1, 2]);
        let b = TrigFunction::exp(&[-1, -2]);
        let p = a.try_mul(&b).unwrap();
        assert_eq!(p, TrigFunction::constant(2, Cyclo8::from_int(1)));
        assert_eq!(a.conj(), b);
        assert_eq!(a.try_add(&a.scale(&Cyclo8::from_int(-1))).unwrap(), TrigFunction::zero(2));
    }

    #[test]
    fn circle_winding() {
        // ∫ e_{−w} de_w = 2πi w
        let v = TrigFunction::top_integral(&TrigFunction::exp(&[-3]), &[TrigFunction::exp(&[3])]).unwrap();
        assert_eq!(v, ExtScalar::two_i_pi_pow_half(2).scale(&crate::algebra::int(3)));
    }
}
