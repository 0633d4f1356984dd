//! Polynomials in the ambient coordinates (x₁, x₂, x₃) restricted to the unit
//! sphere, kept in the normal form with x₃-degree at most 1.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::{gamma_half, int, rat, Cyclo8, ExtScalar};
use crate::jet::Monomial;

use super::{CmError, FnMatrix, ModelFunction};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SphereFunction {
    terms: BTreeMap<Monomial, Cyclo8>,
}

impl SphereFunction {
    pub fn zero() -> Self {
        SphereFunction::default()
    }

    pub fn constant(c: Cyclo8) -> Self {
        SphereFunction::from_terms([(Monomial::ONE, c)])
    }

    /// The coordinate x_{i+1}, i ∈ {0, 1, 2}.
    pub fn coordinate(i: u32) -> Self {
        assert!(i < 3, "S² sits in ℝ³");
        SphereFunction::from_terms([(Monomial::var(i), Cyclo8::from_int(1))])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Cyclo8)>) -> Self {
        let mut raw = BTreeMap::new();
        for (m, c) in terms {
            push(&mut raw, m, c);
        }
        SphereFunction { terms: reduce(raw) }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Cyclo8)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }
}

/// e = ½(1 + x₁σ₁ + x₂σ₂ + x₃σ₃).
pub fn bott_projector() -> FnMatrix<SphereFunction> {
    let half = Cyclo8::from_rational(rat(1, 2));
    let ih = Cyclo8::complex(int(0), rat(1, 2));
    let f = |c: [Cyclo8; 4]| {
        SphereFunction::from_terms([
            (Monomial::ONE, c[0].clone()),
            (Monomial::var(0), c[1].clone()),
            (Monomial::var(1), c[2].clone()),
            (Monomial::var(2), c[3].clone()),
        ])
    };
    let z = Cyclo8::zero();
    FnMatrix::from_rows(alloc::vec![
        alloc::vec![f([half.clone(), z.clone(), z.clone(), half.clone()]), f([z.clone(), half.clone(), -ih.clone(), z.clone()])],
        alloc::vec![f([z.clone(), half.clone(), ih, z.clone()]), f([half.clone(), z.clone(), z, -half])],
    ])
    .expect("square")
}

fn push(map: &mut BTreeMap<Monomial, Cyclo8>, m: Monomial, c: Cyclo8) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
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

/// Rewrites x₃² = 1 − x₁² − x₂² until every x₃-exponent is 0 or 1.
fn reduce(mut raw: BTreeMap<Monomial, Cyclo8>) -> BTreeMap<Monomial, Cyclo8> {
    let mut out = BTreeMap::new();
    while let Some((m, c)) = raw.pop_first() {
        if m.exp(2) < 2 {
            push(&mut out, m, c);
            continue;
        }
        let base = m.lower(2).and_then(|b| b.lower(2)).expect("x₃ exponent ≥ 2");
        push(&mut raw, base, c.clone());
        push(&mut raw, base.raise(0).raise(0), -c.clone());
        push(&mut raw, base.raise(1).raise(1), -c);
    }
    out
}

fn diff(p: &BTreeMap<Monomial, Cyclo8>, i: u32) -> BTreeMap<Monomial, Cyclo8> {
    let mut out = BTreeMap::new();
    for (m, c) in p {
        let e = m.exp(i);
        if let Some(l) = m.lower(i) {
            push(&mut out, l, c.scale(&int(e as i64)));
        }
    }
    out
}

fn mul_raw(a: &BTreeMap<Monomial, Cyclo8>, b: &BTreeMap<Monomial, Cyclo8>) -> BTreeMap<Monomial, Cyclo8> {
    let mut out = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            push(&mut out, ma.mul(*mb), ca * cb);
        }
    }
    out
}

/// ∫_{S²} x₁^a x₂^b x₃^c dA = 2Γ((a+1)/2)Γ((b+1)/2)Γ((c+1)/2)/Γ((a+b+c+3)/2).
pub(crate) fn sphere_moment(m: Monomial) -> ExtScalar {
    let e: Vec<u32> = m.exponents(3);
    if e.iter().any(|v| v % 2 == 1) {
        return ExtScalar::zero();
    }
    let num = gamma_half(e[0] + 1) * gamma_half(e[1] + 1) * gamma_half(e[2] + 1);
    let den = gamma_half(e[0] + e[1] + e[2] + 3).inv().expect("Γ > 0");
    (num * den).scale(&int(2))
}

impl ModelFunction for SphereFunction {
    fn manifold_dim(&self) -> u32 {
        2
    }

    fn constant_like(&self, c: Cyclo8) -> Self {
        SphereFunction::constant(c)
    }

    fn try_add(&self, other: &Self) -> Result<Self, CmError> {
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            push(&mut out, *m, c.clone());
        }
        Ok(SphereFunction { terms: out })
    }

    fn try_mul(&self, other: &Self) -> Result<Self, CmError> {
        Ok(SphereFunction { terms: reduce(mul_raw(&self.terms, &other.terms)) })
    }

    fn scale(&self, c: &Cyclo8) -> Self {
        SphereFunction::from_terms(self.terms.iter().map(|(m, v)| (*m, v * c)))
    }

    fn conj(&self) -> Self {
        SphereFunction { terms: self.terms.iter().map(|(m, v)| (*m, v.conj())).collect() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// With outward orientation, df¹∧df² = det(x, ∇f¹, ∇f²) dA.
    fn top_integral(f0: &Self, fs: &[Self]) -> Result<ExtScalar, CmError> {
        if fs.len() != 2 {
            return Err(CmError::Arity { expected: 3, got: fs.len() + 1 });
        }
        let g1: Vec<_> = (0..3).map(|i| diff(&fs[0].terms, i)).collect();
        let g2: Vec<_> = (0..3).map(|i| diff(&fs[1].terms, i)).collect();
        let mut integrand = BTreeMap::new();
        for i in 0..3u32 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            // x_i (∇f¹ × ∇f²)_i
            let cross_pos = mul_raw(&g1[j as usize], &g2[k as usize]);
            let cross_neg = mul_raw(&g1[k as usize], &g2[j as usize]);
            for (m, c) in cross_pos {
                push(&mut integrand, m.raise(i), c);
            }
            for (m, c) in cross_neg {
                push(&mut integrand, m.raise(i), -c);
            }
        }
        let full = mul_raw(&f0.terms, &integrand);
        let mut acc = ExtScalar::zero();
        for (m, c) in full {
            let mom = sphere_moment(m);
            if !mom.is_zero() {
                acc = acc.try_add(&(ExtScalar::new(c, 0) * mom))?;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn area_and_moments() {
        let four_pi = ExtScalar::new(Cyclo8::from_int(4), 2);
        assert_eq!(sphere_moment(Monomial::ONE), four_pi);
        assert_eq!(sphere_moment(Monomial::from_exponents(&[2])), four_pi.scale(&rat(1, 3)));
        assert_eq!(sphere_moment(Monomial::from_exponents(&[2, 2])), four_pi.scale(&rat(1, 15)));
        assert!(sphere_moment(Monomial::from_exponents(&[1, 2])).is_zero());
    }

    #[test]
    fn sphere_relation() {
        let sq = |i| SphereFunction::coordinate(i).try_mul(&SphereFunction::coordinate(i)).unwrap();
        let s = sq(0).try_add(&sq(1)).unwrap().try_add(&sq(2)).unwrap();
        assert_eq!(s, SphereFunction::constant(Cyclo8::from_int(1)));
    }

    #[test]
    fn stokes_orientation() {
        // ∫_{S²} x₃ dx₁∧dx₂ = vol(B³) = 4π/3
        let v = SphereFunction::top_integral(
            &SphereFunction::coordinate(2),
            &[SphereFunction::coordinate(0), SphereFunction::coordinate(1)],
        )
        .unwrap();
        assert_eq!(v, ExtScalar::new(Cyclo8::from_rational(rat(4, 3)), 2));
        let exact = SphereFunction::top_integral(
            &SphereFunction::constant(Cyclo8::from_int(1)),
            &[SphereFunction::coordinate(0), SphereFunction::coordinate(1)],
        )
        .unwrap();
        assert!(exact.is_zero());
    }
}
