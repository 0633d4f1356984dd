//! Square matrices with entries in a model function algebra.

use alloc::vec::Vec;

use crate::algebra::Cyclo8;

use super::{CmError, ModelFunction};

#[derive(Clone, Debug, PartialEq)]
pub struct FnMatrix<F> {
    size: usize,
    entries: Vec<F>,
}

impl<F: ModelFunction> FnMatrix<F> {
    /// Row-major construction; `rows` must be square and nonempty.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, CmError> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for r in rows {
            if r.len() != size {
                return Err(CmError::SizeMismatch(size, r.len()));
            }
            entries.extend(r);
        }
        if let Some(first) = entries.first() {
            let d = first.manifold_dim();
            if let Some(bad) = entries.iter().find(|f| f.manifold_dim() != d) {
                return Err(CmError::DimensionMismatch(d, bad.manifold_dim()));
            }
        }
        Ok(FnMatrix { size, entries })
    }

    /// 1×1 matrix.
    pub fn scalar(f: F) -> Self {
        FnMatrix { size: 1, entries: alloc::vec![f] }
    }

    /// Constant matrix with the given complex entries, on the space of `like`.
    pub fn constant(like: &F, rows: &[Vec<Cyclo8>]) -> Result<Self, CmError> {
        FnMatrix::from_rows(rows.iter().map(|r| r.iter().map(|c| like.constant_like(c.clone())).collect()).collect())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.size + j]
    }

    pub fn identity_like(&self) -> Self {
        let like = &self.entries[0];
        let entries = (0..self.size * self.size)
            .map(|k| if k / self.size == k % self.size { like.unit_like() } else { like.zero_like() })
            .collect();
        FnMatrix { size: self.size, entries }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CmError> {
        if self.size != other.size {
            return Err(CmError::SizeMismatch(self.size, other.size));
        }
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.get(i, 0).zero_like();
                for k in 0..n {
                    acc = acc.try_add(&self.get(i, k).try_mul(other.get(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(FnMatrix { size: n, entries })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.size;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).conj()).collect();
        FnMatrix { size: n, entries }
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.size + other.size;
        let zero = self.entries[0].zero_like();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let e = match (i < self.size, j < self.size) {
                    (true, true) => self.get(i, j).clone(),
                    (false, false) => other.get(i - self.size, j - self.size).clone(),
                    _ => zero.clone(),
                };
                entries.push(e);
            }
        }
        FnMatrix { size: n, entries }
    }
}
