//! Clifford elements stored in the σ-image, and spinor (super)traces.

use num_traits::Zero;

use super::{int, AlgebraError, Cyclo8, ExtScalar, FormElement, ProductRule};

/// Clifford algebra element c(·) ⊗ End(ℂᵖ), stored through the symbol map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CliffordElement(FormElement);

impl CliffordElement {
    /// Quantization c: forms to Clifford elements.
    pub fn quantize(form: FormElement) -> Self {
        CliffordElement(form)
    }

    /// Symbol map σ.
    pub fn symbol(&self) -> &FormElement {
        &self.0
    }

    pub fn into_symbol(self) -> FormElement {
        self.0
    }

    /// c(dx^i), 0-based.
    pub fn generator(n: u32, rank: usize, i: u32) -> Self {
        CliffordElement(FormElement::generator(n, rank, i))
    }

    pub fn one(n: u32, rank: usize) -> Self {
        CliffordElement(FormElement::one(n, rank))
    }

    /// c(ξ) for a 1-form with rational-like coefficients ξ_i.
    pub fn vector(n: u32, rank: usize, xi: &[Cyclo8]) -> Self {
        let mut f = FormElement::zero(n, rank);
        for (i, c) in xi.iter().enumerate() {
            f.add_assign(&FormElement::generator(n, rank, i as u32).scale(c)).expect("same shape");
        }
        CliffordElement(f)
    }

    pub fn mul(&self, other: &CliffordElement) -> Result<CliffordElement, AlgebraError> {
        Ok(CliffordElement(self.0.product(&other.0, ProductRule::Clifford)?))
    }

    pub fn add(&self, other: &CliffordElement) -> Result<CliffordElement, AlgebraError> {
        Ok(CliffordElement(self.0.try_add(&other.0)?))
    }
}

/// Str = (−2i)^{n/2}·tr(top-degree coefficient), n even.
pub fn supertrace_even(a: &FormElement) -> Result<ExtScalar, AlgebraError> {
    let n = a.dim();
    if n % 2 != 0 {
        return Err(AlgebraError::Parity { op: "supertraceEven", expected: "even", n });
    }
    let minus_two_i = Cyclo8::complex(int(0), int(-2));
    let c = minus_two_i.pow(i64::from(n / 2)).expect("nonnegative power");
    Ok(ExtScalar::new(c * a.top().trace(), a.pi_half()))
}

/// Spinor trace for odd n: 2^{[n/2]}·tr of the scalar part plus
/// (−i)^{[n/2]+1}2^{[n/2]}·tr of the top-degree coefficient.
pub fn trace_odd(a: &FormElement) -> Result<ExtScalar, AlgebraError> {
    let n = a.dim();
    if n % 2 != 1 {
        return Err(AlgebraError::Parity { op: "traceOdd", expected: "odd", n });
    }
    let h = i64::from(n / 2);
    let two_h = Cyclo8::from_int(1i64 << h);
    let minus_i = Cyclo8::complex(int(0), int(-1));
    let top = minus_i.pow(h + 1).expect("nonnegative power") * two_h.clone() * a.top().trace();
    let scalar = a.coeff(0).map(|m| m.trace()).unwrap_or_else(Cyclo8::zero) * two_h;
    let total = top + scalar;
    if total.is_zero() {
        return Ok(ExtScalar::zero());
    }
    Ok(ExtScalar::new(total, a.pi_half()))
}

impl core::ops::Mul for CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: CliffordElement) -> CliffordElement {
        CliffordElement::mul(&self, &rhs).expect("Clifford shape mismatch")
    }
}
