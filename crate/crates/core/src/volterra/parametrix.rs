//! Left parametrix of p + iτ by the symbol recursion.

use alloc::vec::Vec;


use super::{VolterraError, VolterraSymbol};

/// Parametrix q ∼ q_{−2} + q_{−3} + … of a second-order operator symbol.
#[derive(Clone, Debug)]
pub struct Parametrix {
    /// q_{−2−j}, j = 0..=depth.
    pub components: Vec<VolterraSymbol>,
    /// Their sum.
    pub symbol: VolterraSymbol,
}

impl Parametrix {
    pub fn component(&self, j: usize) -> &VolterraSymbol {
        &self.components[j]
    }
}

/// Builds q with q # (p + iτ) = 1 through `depth` components, keeping x-jets
/// up to `x_order`.
///
/// `p` must be polynomial in ξ of order 2 with p₂(0, ξ) = |ξ|²·1. Both
/// q # (p+iτ) = 1 and, when the jets allow it, (p+iτ) # q = 1 are verified
/// before returning.
pub fn parametrix(p: &VolterraSymbol, depth: u32, x_order: u32) -> Result<Parametrix, VolterraError> {
    let (n, rank, rule) = (p.dim(), p.rank(), p.rule());
    if p.polynomial_degree().is_none_or(|d| d > 2) || p.floor().is_some() {
        return Err(VolterraError::PrincipalNotLaplacian);
    }
    let p = p.clone().with_order(2)?;
    let xi2 = VolterraSymbol::xi_squared(n, rank, rule);
    let e = p.component(2).sub(&xi2)?;
    if !e.at_origin().is_zero() {
        return Err(VolterraError::PrincipalNotLaplacian);
    }
    let e = e.truncate_x(x_order);
    let floor = -2 - depth as i32;

    // (p₂ + iτ)^{-1} = Σ_k (−1)^k (p₂ − |ξ|²)^k (|ξ|²+iτ)^{−k−1}
    let base = VolterraSymbol::base_power(n, rank, rule, 1).truncate_x(x_order);
    let mut q0 = base.clone();
    let mut power = base.clone();
    for _ in 0..x_order {
        power = power.mul(&e)?.mul(&VolterraSymbol::base_power(n, rank, rule, 1))?.neg();
        if power.is_zero() {
            break;
        }
        q0 = q0.add(&power)?;
    }
    let q0 = q0.with_order(-2)?;

    let mut comps = Vec::with_capacity(depth as usize + 1);
    let mut composed: Vec<VolterraSymbol> = Vec::with_capacity(depth as usize + 1);
    comps.push(q0.clone());
    composed.push(q0.compose(&p, Some(depth))?);
    for j in 1..=depth as i32 {
        let mut r = VolterraSymbol::zero(n, rank, rule, -j).truncate_x(x_order);
        for c in &composed {
            r = r.add(&c.component(-j).homogeneous().with_order(-j)?)?;
        }
        let qj = r.mul(&q0)?.neg().with_order(-2 - j)?;
        composed.push(qj.compose(&p, Some((depth as i32 - j) as u32))?);
        comps.push(qj);
    }

    let mut symbol = VolterraSymbol::zero(n, rank, rule, -2).truncate_x(x_order);
    for c in &comps {
        symbol = symbol.add(&c.clone().with_order(-2)?)?;
    }
    let symbol = symbol.truncate_floor(floor);

    let one = VolterraSymbol::one(n, rank, rule);
    let p_it = p.add(&VolterraSymbol::i_tau(n, rank, rule))?;
    let left = symbol.compose(&p_it, Some(depth))?;
    if !left.sub(&one)?.is_zero() {
        return Err(VolterraError::ParametrixResidual("left"));
    }
    if x_order >= depth.min(2) {
        let right = p_it.compose(&symbol, Some(depth))?;
        if !right.sub(&one)?.is_zero() {
            return Err(VolterraError::ParametrixResidual("right"));
        }
    }
    Ok(Parametrix { components: comps, symbol })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Cyclo8, FormElement, ProductRule};
    use crate::volterra::SymKey;

    const R: ProductRule = ProductRule::Clifford;

    #[test]
    fn flat_scalar() {
        let p = VolterraSymbol::xi_squared(2, 1, R);
        let q = parametrix(&p, 3, 2).unwrap();
        assert_eq!(q.components[0], VolterraSymbol::base_power(2, 1, R, 1).truncate_x(2));
        for c in &q.components[1..] {
            assert!(c.is_zero());
        }
    }

    #[test]
    fn constant_potential() {
        let v = FormElement::scalar(2, 1, Cyclo8::from_int(3));
        let p = VolterraSymbol::xi_squared(2, 1, R).add(&VolterraSymbol::constant(v.clone(), R)).unwrap();
        let q = parametrix(&p, 2, 0).unwrap();
        assert!(q.components[1].is_zero());
        let k = SymKey::new(crate::jet::Monomial::ONE, crate::jet::Monomial::ONE, 2);
        assert_eq!(q.components[2].coeff(&k), Some(&v.neg()));
        assert_eq!(q.components[2].len(), 1);
    }

    #[test]
    fn rejects_non_laplace_principal_part() {
        let p = VolterraSymbol::xi_squared(2, 1, R).scale(&Cyclo8::from_int(2));
        assert_eq!(parametrix(&p, 1, 0).unwrap_err(), VolterraError::PrincipalNotLaplacian);
    }
}
