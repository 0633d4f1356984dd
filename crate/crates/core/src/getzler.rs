//! Getzler filtration: deg ∂_j = deg c(dx^j) = 1, deg ∂_t = 2, deg x^j = −1.

use crate::algebra::{FormElement, ProductRule};
use crate::volterra::{radial_eval, SymKey, VolterraError, VolterraSymbol};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GetzlerError {
    #[error(transparent)]
    Volterra(#[from] VolterraError),
    #[error("symbol is zero; its Getzler order is -infinity")]
    Empty,
    #[error("form degree {j} exceeds dimension {n}")]
    FormDegree { j: u32, n: u32 },
}

/// G-degree of the blade `mask` in a term with key `k`.
pub fn getzler_degree(k: &SymKey, mask: u32) -> i32 {
    k.degree() + mask.count_ones() as i32 - k.x.degree() as i32
}

/// Largest G-degree over all stored (term, blade) pairs.
pub fn getzler_order(q: &VolterraSymbol) -> Result<i32, GetzlerError> {
    q.terms()
        .flat_map(|(k, c)| c.terms().map(move |(mask, _)| getzler_degree(k, mask)))
        .max()
        .ok_or(GetzlerError::Empty)
}

/// Part of `q` of G-degree exactly `m`, reinterpreted with forms in place of
/// Clifford elements.
pub fn getzler_part(q: &VolterraSymbol, m: i32) -> VolterraSymbol {
    let mut out = VolterraSymbol::zero(q.dim(), q.rank(), ProductRule::Wedge, q.order());
    for (k, c) in q.terms() {
        let kept = c.filter(|mask| getzler_degree(k, mask) == m);
        out.insert(*k, kept).expect("same window");
    }
    match q.floor() {
        Some(f) => out.truncate_floor(f),
        None => out,
    }
}

/// Model operator: the top G-degree part, with its order.
pub fn model_operator(q: &VolterraSymbol) -> Result<(i32, VolterraSymbol), GetzlerError> {
    let m = getzler_order(q)?;
    Ok((m, getzler_part(q, m)))
}

/// Leading small-time behaviour of the form-degree-j part of the kernel at
/// the origin: coefficient·t^{t_exp2/2} + O(t^{err_exp2/2}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingTerm {
    pub t_exp2: i32,
    pub coefficient: FormElement,
    pub err_exp2: i32,
}

/// Evaluates the leading term of σ[K_Q(0,0,t)]^{(j)} for a symbol of
/// Getzler order m.
///
/// For m − j even the coefficient is the degree-j part of the inverse
/// transform of q_{m−j} at (0,0,1), at t^{(j−m−n)/2−1}. For m − j odd it is
/// zero and the bound O(t^{(j−m−n−1)/2}) is reported.
pub fn kernel_leading_term(q: &VolterraSymbol, j: u32) -> Result<LeadingTerm, GetzlerError> {
    let n = q.dim();
    if j > n {
        return Err(GetzlerError::FormDegree { j, n });
    }
    let m = getzler_order(q)?;
    let ji = j as i32;
    let ni = n as i32;
    if (m - ji).rem_euclid(2) == 1 {
        return Ok(LeadingTerm {
            t_exp2: ji - m - ni - 1,
            coefficient: FormElement::zero(n, q.rank()),
            err_exp2: ji - m - ni - 1,
        });
    }
    let d = m - ji;
    if let Some(f) = q.floor() {
        if f > d {
            return Err(VolterraError::DepthExceeded { requested: (q.order() - d) as u32, available: (q.order() - f) as u32 }.into());
        }
    }
    let value = radial_eval(&q.component(d).at_origin());
    Ok(LeadingTerm { t_exp2: ji - m - ni - 2, coefficient: value.part(j), err_exp2: ji - m - ni })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Cyclo8, FormElement};
    use crate::jet::Monomial;

    const R: ProductRule = ProductRule::Clifford;

    #[test]
    fn generator_degrees() {
        let x = SymKey::new(Monomial::var(0), Monomial::ONE, 0);
        assert_eq!(getzler_degree(&x, 0), -1);
        let xi = SymKey::new(Monomial::ONE, Monomial::var(1), 0);
        assert_eq!(getzler_degree(&xi, 0), 1);
        let tau = SymKey::new(Monomial::ONE, Monomial::ONE, -1);
        assert_eq!(getzler_degree(&tau, 0), 2);
        assert_eq!(getzler_degree(&SymKey::ONE, 0b100), 1);
    }

    #[test]
    fn order_of_x() {
        assert_eq!(getzler_order(&VolterraSymbol::x_var(2, 1, R, 1)), Ok(-1));
        assert_eq!(getzler_order(&VolterraSymbol::zero(2, 1, R, 0)), Err(GetzlerError::Empty));
    }

    #[test]
    fn odd_case_is_zero() {
        let q = VolterraSymbol::base_power(2, 1, R, 1);
        let t = kernel_leading_term(&q, 1).unwrap();
        assert!(t.coefficient.is_zero());
        let t0 = kernel_leading_term(&q, 0).unwrap();
        assert_eq!(t0.t_exp2, -2);
        let quarter = FormElement::scalar(2, 1, Cyclo8::from_rational(crate::algebra::rat(1, 4))).with_pi_half(-2);
        assert_eq!(t0.coefficient, quarter);
        assert!(kernel_leading_term(&q, 3).is_err());
    }
}
