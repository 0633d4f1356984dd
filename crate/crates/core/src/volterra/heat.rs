//! Kernel values at (y, t) = (0, 1) and pointwise heat coefficients.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{factorial, Cyclo8, FormElement, Rational};
use crate::jet::Monomial;

use super::{parametrix, VolterraError, VolterraSymbol};

/// Symbol of a differential operator, with the x-order to which its
/// coefficient jets are faithful (`None` for exact polynomial coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOpSymbol {
    pub symbol: VolterraSymbol,
    pub exact_jets: Option<u32>,
}

impl DiffOpSymbol {
    pub fn exact(symbol: VolterraSymbol) -> Self {
        DiffOpSymbol { symbol, exact_jets: None }
    }

    /// Homogeneous part of ξ-degree d (p₂, p₁, p₀).
    pub fn part(&self, d: i32) -> VolterraSymbol {
        self.symbol.component(d)
    }
}

/// (1/(N−1)!)·Π_i (β_i−1)!!·2^{−β_i/2}: the Gaussian moment left after
/// inverting ξ^β(|ξ|²+iτ)^{−N} at y = 0, t = 1, without (4π)^{−n/2}.
pub fn radial_moment(beta: Monomial, n_pow: i32, n: u32) -> Rational {
    if n_pow <= 0 {
        return Rational::zero();
    }
    let mut acc = Rational::one() / factorial((n_pow - 1) as u32);
    for i in 0..n {
        let b = beta.exp(i);
        if b % 2 == 1 {
            return Rational::zero();
        }
        // (b−1)!! / 2^{b/2} = b! / (4^{b/2} (b/2)!)
        let h = b / 2;
        acc *= factorial(b) / (factorial(h) * Rational::from_integer(4.into()).pow(h as i32));
    }
    acc
}

/// Inverse transform of a symbol at (x, y, t) = (0, 0, 1).
///
/// The result carries (4π)^{−n/2}: π-grade −n and a mantissa factor 2^{−n}.
/// Terms polynomial in τ contribute nothing at t = 1.
pub fn radial_eval(q: &VolterraSymbol) -> FormElement {
    let n = q.dim();
    let mut out = FormElement::zero(n, q.rank());
    for (k, c) in q.terms() {
        if !k.x.is_one() {
            continue;
        }
        let m = radial_moment(k.xi, k.n_pow, n);
        if m.is_zero() {
            continue;
        }
        out.add_assign(&c.scale(&Cyclo8::from_rational(m))).expect("uniform shape");
    }
    let norm = Rational::one() / Rational::from_integer(2.into()).pow(n as i32);
    out.scale(&Cyclo8::from_rational(norm)).with_pi_half(-(n as i32))
}

/// Pointwise heat coefficients a_0..=a_L at x = 0, or with a prefactor P of
/// order m the coefficients b_0..=b_L of P·e^{−tΔ}.
pub fn heat_coefficients(
    p: &DiffOpSymbol,
    l_max: u32,
    prefactor: Option<&DiffOpSymbol>,
) -> Result<Vec<FormElement>, VolterraError> {
    let m = prefactor.map_or(0, |pf| pf.symbol.polynomial_degree().unwrap_or(0));
    let depth = 2 * l_max + m % 2;
    let needed = depth + m;
    if let Some(avail) = p.exact_jets {
        if needed > avail {
            return Err(VolterraError::InsufficientJets { requested: l_max + 1, needed, available: avail });
        }
    }
    let q = parametrix(&p.symbol, depth, m)?;
    let r = match prefactor {
        None => q.symbol,
        Some(pf) => pf.symbol.compose(&q.symbol, Some(depth))?.at_origin(),
    };
    let lead = r.order();
    let top = if m % 2 == 0 { lead } else { lead - 1 };
    Ok((0..=l_max as i32).map(|l| radial_eval(&r.component(top - 2 * l))).collect())
}
