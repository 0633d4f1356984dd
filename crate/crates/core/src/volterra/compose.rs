//! Symbol composition q1 # q2 ∼ Σ_α (1/α!) ∂_ξ^α q1 · D_x^α q2.

use alloc::collections::BTreeMap;

use crate::algebra::{int, Cyclo8, FormElement, Rational};
use crate::jet::Monomial;

use super::{max_opt, VolterraError, VolterraSymbol};

impl VolterraSymbol {
    /// Composition truncated to `depth` components below the leading order.
    ///
    /// With `depth = None` the result keeps every component the inputs allow;
    /// the sum over α must then terminate on its own (q1 polynomial in ξ or
    /// q2 an exact polynomial in x).
    pub fn compose(&self, other: &VolterraSymbol, depth: Option<u32>) -> Result<VolterraSymbol, VolterraError> {
        self.check_compatible(other)?;
        let order = self.order + other.order;
        let auto = max_opt(self.floor.map(|f| f + other.order), other.floor.map(|f| f + self.order));
        let floor = match (depth, auto) {
            (Some(j), Some(fa)) if fa > order - j as i32 => {
                return Err(VolterraError::DepthExceeded { requested: j, available: (order - fa).max(0) as u32 })
            }
            (Some(j), _) => Some(order - j as i32),
            (None, fa) => fa,
        };

        let mut bound: Option<u32> = floor.map(|f| (order - f).max(0) as u32);
        if let Some(d) = self.polynomial_degree() {
            bound = Some(bound.map_or(d, |b| b.min(d)));
        }
        if other.x_order.is_none() {
            let d = other.max_x_degree();
            bound = Some(bound.map_or(d, |b| b.min(d)));
        }
        let a_max = bound.ok_or(VolterraError::UnboundedComposition)?;

        let x_order = match other.x_order {
            Some(t) if a_max > t => return Err(VolterraError::XOrderExhausted { needed: a_max, available: t }),
            Some(t) => Some(self.x_order.map_or(t - a_max, |s| s.min(t - a_max))),
            None => self.x_order,
        };

        let mut out = VolterraSymbol {
            n: self.n,
            rank: self.rank,
            rule: self.rule,
            order,
            floor,
            x_order,
            terms: BTreeMap::new(),
        };

        let mut dxi: BTreeMap<Monomial, VolterraSymbol> = BTreeMap::new();
        let mut dx: BTreeMap<Monomial, VolterraSymbol> = BTreeMap::new();
        dxi.insert(Monomial::ONE, self.clone());
        dx.insert(Monomial::ONE, other.clone());
        let minus_i = Cyclo8::complex(int(0), int(-1));
        let mut phase = Cyclo8::from_int(1);

        for d in 0..=a_max {
            for alpha in Monomial::all_of_degree(self.n, d) {
                if d > 0 {
                    let i = (0..self.n).find(|&i| alpha.exp(i) > 0).expect("nonzero multi-index");
                    let prev = alpha.lower(i).expect("positive exponent");
                    let a = dxi[&prev].diff_xi(i);
                    let b = dx[&prev].diff_x(i);
                    dxi.insert(alpha, a);
                    dx.insert(alpha, b);
                }
                let a = &dxi[&alpha];
                let b = &dx[&alpha];
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let c = phase.scale(&(Rational::from_integer(1.into()) / alpha.factorial()));
                out.accumulate_product(a, b, &c)?;
            }
            phase = &phase * &minus_i;
        }
        Ok(out)
    }

    /// Adds c·(a·b) into self, honouring self's truncation window.
    pub(crate) fn accumulate_product(&mut self, a: &VolterraSymbol, b: &VolterraSymbol, c: &Cyclo8) -> Result<(), VolterraError> {
        for (ka, ca) in &a.terms {
            if self.x_order.is_some_and(|t| ka.x.degree() > t) {
                continue;
            }
            for (kb, cb) in &b.terms {
                if self.floor.is_some_and(|f| ka.degree() + kb.degree() < f) {
                    continue;
                }
                if self.x_order.is_some_and(|t| ka.x.degree() + kb.x.degree() > t) {
                    continue;
                }
                let prod: FormElement = ca.product(cb, self.rule)?;
                self.insert(ka.mul(kb), prod.scale(c))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ProductRule;
    use crate::volterra::SymKey;

    const R: ProductRule = ProductRule::Clifford;

    #[test]
    fn unit_of_composition() {
        let q = VolterraSymbol::base_power(2, 1, R, 2).add(&VolterraSymbol::x_var(2, 1, R, 0)).unwrap();
        let one = VolterraSymbol::one(2, 1, R);
        assert_eq!(one.compose(&q, None).unwrap(), q);
        assert_eq!(q.compose(&one, Some(4)).unwrap().terms().count(), q.terms().count());
    }

    #[test]
    fn flat_heat_operator_inverts() {
        let p = VolterraSymbol::xi_squared(3, 1, R).add(&VolterraSymbol::i_tau(3, 1, R)).unwrap();
        let q = VolterraSymbol::base_power(3, 1, R, 1);
        assert!(p.compose(&q, Some(4)).unwrap().is_one());
        assert!(q.compose(&p, Some(4)).unwrap().is_one());
    }

    #[test]
    fn x_derivative_on_right_factor() {
        // ξ_1 # x_1 = ξ_1 x_1 − i
        let xi = VolterraSymbol::xi_var(2, 1, R, 0);
        let x = VolterraSymbol::x_var(2, 1, R, 0);
        let r = xi.compose(&x, None).unwrap();
        let k = SymKey::new(Monomial::var(0), Monomial::var(0), 0);
        assert!(r.coeff(&k).is_some());
        assert_eq!(r.coeff(&SymKey::ONE), Some(&FormElement::scalar(2, 1, Cyclo8::complex(int(0), int(-1)))));
        let l = x.compose(&xi, None).unwrap();
        assert_eq!(l.len(), 1);
    }

    #[test]
    fn depth_exceeding_input_rejected() {
        let q = VolterraSymbol::base_power(2, 1, R, 1).truncate_floor(-3);
        let p = VolterraSymbol::xi_squared(2, 1, R);
        assert!(matches!(q.compose(&p, Some(2)), Err(VolterraError::DepthExceeded { .. })));
        assert!(q.compose(&p, Some(1)).is_ok());
    }
}
