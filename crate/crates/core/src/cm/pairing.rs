//! Pairings of the CM cocycle with idempotents and unitaries, and the
//! spectral flow formula.

use alloc::vec::Vec;

use crate::algebra::{factorial, int, ExtScalar};

use super::{Cochain, CmCocycle, CmError, FnMatrix, ModelFunction};

/// φ#Tr(M⁰,…,M^m) = Σ_{i₀,…,i_m} φ(M⁰_{i₀i₁}, M¹_{i₁i₂}, …, M^m_{i_m i₀}).
pub fn sharp_tr<F: ModelFunction, C: Cochain<F> + ?Sized>(phi: &C, mats: &[FnMatrix<F>]) -> Result<ExtScalar, CmError> {
    let q = mats.first().ok_or(CmError::Arity { expected: 1, got: 0 })?.size();
    if let Some(bad) = mats.iter().find(|m| m.size() != q) {
        return Err(CmError::SizeMismatch(q, bad.size()));
    }
    let len = mats.len();
    let mut idx = alloc::vec![0usize; len];
    let mut acc = ExtScalar::zero();
    let mut args: Vec<F> = Vec::with_capacity(len);
    loop {
        args.clear();
        let mut zero = false;
        for j in 0..len {
            let f = mats[j].get(idx[j], idx[(j + 1) % len]);
            if f.is_zero() {
                zero = true;
                break;
            }
            args.push(f.clone());
        }
        if !zero {
            acc = acc.try_add(&phi.eval(&args)?)?;
        }
        // odometer over the index tuple
        let mut p = 0;
        loop {
            if p == len {
                return Ok(acc);
            }
            idx[p] += 1;
            if idx[p] < q {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// Σ_{k≥0} (−1)^k (2k)!/k! φ_{2k}#Tr(e,…,e) for a selfadjoint idempotent e.
pub fn pair_even<F: ModelFunction>(phi: &CmCocycle, e: &FnMatrix<F>) -> Result<ExtScalar, CmError> {
    if !phi.is_even() {
        return Err(CmError::Parity { degree: 0, n: phi.dim() });
    }
    if e.try_mul(e)? != *e {
        return Err(CmError::NotIdempotent);
    }
    if e.adjoint() != *e {
        return Err(CmError::NotSelfAdjoint);
    }
    let mut acc = ExtScalar::zero();
    for k in 0..=phi.dim() / 2 {
        let mats = alloc::vec![e.clone(); 2 * k as usize + 1];
        let coef = factorial(2 * k) / factorial(k) * if k % 2 == 0 { int(1) } else { int(-1) };
        acc = acc.try_add(&sharp_tr(phi, &mats)?.scale(&coef))?;
    }
    Ok(acc)
}

fn check_unitary<F: ModelFunction>(u: &FnMatrix<F>) -> Result<FnMatrix<F>, CmError> {
    let adj = u.adjoint();
    let one = u.identity_like();
    if u.try_mul(&adj)? != one || adj.try_mul(u)? != one {
        return Err(CmError::NotUnitary);
    }
    Ok(adj)
}

/// (1/√(2iπ)) Σ_{k≥0} (−1)^k k! φ_{2k+1}#Tr(U^{-1},U,…,U^{-1},U).
pub fn pair_odd<F: ModelFunction>(phi: &CmCocycle, u: &FnMatrix<F>) -> Result<ExtScalar, CmError> {
    if phi.is_even() {
        return Err(CmError::Parity { degree: 1, n: phi.dim() });
    }
    let inv = check_unitary(u)?;
    let mut acc = ExtScalar::zero();
    for k in 0..=phi.dim() / 2 {
        let mats: Vec<FnMatrix<F>> =
            (0..2 * k + 2).map(|j| if j % 2 == 0 { inv.clone() } else { u.clone() }).collect();
        let coef = factorial(k) * if k % 2 == 0 { int(1) } else { int(-1) };
        acc = acc.try_add(&sharp_tr(phi, &mats)?.scale(&coef))?;
    }
    Ok(acc * ExtScalar::two_i_pi_pow_half(-1))
}

/// (2iπ)^{−[n/2]−1} ∫ [Â ∧ Ch U]^{(n)} with Ch U = Σ(−1)^k k!/(2k+1)! Tr(U^{-1}dU)^{2k+1},
/// on a model geometry where Â contributes only its degree-0 term.
pub fn aps_spectral_flow<F: ModelFunction>(u: &FnMatrix<F>) -> Result<ExtScalar, CmError> {
    let n = u.get(0, 0).manifold_dim();
    if n % 2 == 0 {
        return Err(CmError::EvenDimension(n));
    }
    let inv = check_unitary(u)?;
    let k = n / 2;
    let q = u.size();
    let len = n as usize;
    // Tr(U^{-1}dU)^n = Σ Π_j (U^{-1})_{a_j b_j} · dU_{b_0 a_1}∧dU_{b_1 a_2}∧⋯∧dU_{b_{n−1} a_0}
    let mut idx = alloc::vec![0usize; 2 * len];
    let mut acc = ExtScalar::zero();
    loop {
        let a = |j: usize| idx[2 * (j % len)];
        let b = |j: usize| idx[2 * j + 1];
        let mut f0 = inv.get(a(0), b(0)).clone();
        for j in 1..len {
            f0 = f0.try_mul(inv.get(a(j), b(j)))?;
        }
        if !f0.is_zero() {
            let fs: Vec<F> = (0..len).map(|j| u.get(b(j), a(j + 1)).clone()).collect();
            if !fs.iter().any(ModelFunction::is_zero) {
                acc = acc.try_add(&F::top_integral(&f0, &fs)?)?;
            }
        }
        let mut p = 0;
        loop {
            if p == 2 * len {
                let coef = factorial(k) / factorial(2 * k + 1) * if k % 2 == 0 { int(1) } else { int(-1) };
                let norm = ExtScalar::two_i_pi_pow_half(-2 * (k as i32 + 1));
                return Ok(if acc.is_zero() { acc } else { acc.scale(&coef) * norm });
            }
            idx[p] += 1;
            if idx[p] < q {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Cyclo8};
    use crate::cm::{SphereFunction, TrigFunction};

    fn winding(w: i64) -> FnMatrix<TrigFunction> {
        FnMatrix::scalar(TrigFunction::exp(&[w]))
    }

    #[test]
    fn circle_winding_numbers() {
        let phi = CmCocycle::new(1);
        for w in -2..=2 {
            assert_eq!(pair_odd(&phi, &winding(w)).unwrap(), ExtScalar::from_int(w));
            assert_eq!(aps_spectral_flow(&winding(w)).unwrap(), ExtScalar::from_int(w));
        }
    }

    #[test]
    fn block_diagonal_adds() {
        let u = winding(2).direct_sum(&winding(-3));
        assert_eq!(aps_spectral_flow(&u).unwrap(), ExtScalar::from_int(-1));
        assert_eq!(pair_odd(&CmCocycle::new(1), &u).unwrap(), ExtScalar::from_int(-1));
    }

    #[test]
    fn rejects_non_unitary() {
        let u = FnMatrix::scalar(TrigFunction::exp(&[1]).scale(&Cyclo8::from_int(2)));
        assert_eq!(pair_odd(&CmCocycle::new(1), &u), Err(CmError::NotUnitary));
    }

    fn bott() -> FnMatrix<SphereFunction> {
        let half = Cyclo8::from_rational(rat(1, 2));
        let h = half.clone();
        let x = move |i| SphereFunction::coordinate(i).scale(&h);
        let c = |v: Cyclo8| SphereFunction::constant(v);
        let i_half = Cyclo8::complex(int(0), rat(1, 2));
        // ½(1 + x₁σ₁ + x₂σ₂ + x₃σ₃)
        FnMatrix::from_rows(alloc::vec![
            alloc::vec![c(half.clone()).try_add(&x(2)).unwrap(), x(0).try_add(&SphereFunction::coordinate(1).scale(&-i_half.clone())).unwrap()],
            alloc::vec![x(0).try_add(&SphereFunction::coordinate(1).scale(&i_half)).unwrap(), c(half).try_add(&x(2).scale(&Cyclo8::from_int(-1))).unwrap()],
        ])
        .unwrap()
    }

    #[test]
    fn bott_projector_pairs_to_unit() {
        let v = pair_even(&CmCocycle::new(2), &bott()).unwrap();
        let n = v.as_integer().expect("integer pairing");
        assert_eq!(n.magnitude(), &1u32.into());
    }

    #[test]
    fn constant_projector_pairs_to_zero() {
        let like = TrigFunction::zero(2);
        let one = Cyclo8::from_int(1);
        let zero = Cyclo8::from_int(0);
        let e = FnMatrix::constant(&like, &[alloc::vec![one, zero.clone()], alloc::vec![zero.clone(), zero]]).unwrap();
        assert!(pair_even(&CmCocycle::new(2), &e).unwrap().is_zero());
    }
}
