//! Cochains, the operators b, A, B₀, B = AB₀, and the CM cocycle.

use alloc::vec::Vec;

use crate::algebra::{factorial, int, ExtScalar, GradedSum, Rational};

use super::{CmError, ModelFunction};

/// A family of multilinear forms, one for each degree (arity − 1).
pub trait Cochain<F> {
    fn eval(&self, args: &[F]) -> Result<ExtScalar, CmError>;
}

fn sign(e: usize) -> Rational {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn add(a: ExtScalar, b: &ExtScalar) -> Result<ExtScalar, CmError> {
    Ok(a.try_add(b)?)
}

/// (bψ)(a⁰,…,a^m) for ψ of degree m−1.
pub fn hochschild_b<F: ModelFunction, C: Cochain<F> + ?Sized>(psi: &C, args: &[F]) -> Result<ExtScalar, CmError> {
    let m = args.len().checked_sub(1).ok_or(CmError::Arity { expected: 1, got: 0 })?;
    let mut acc = ExtScalar::zero();
    if m == 0 {
        return Ok(acc);
    }
    let mut slot: Vec<F> = Vec::with_capacity(m);
    for j in 0..m {
        slot.clear();
        slot.extend_from_slice(&args[..j]);
        slot.push(args[j].try_mul(&args[j + 1])?);
        slot.extend_from_slice(&args[j + 2..]);
        acc = add(acc, &psi.eval(&slot)?.scale(&sign(j)))?;
    }
    slot.clear();
    slot.push(args[m].try_mul(&args[0])?);
    slot.extend_from_slice(&args[1..m]);
    add(acc, &psi.eval(&slot)?.scale(&sign(m)))
}

/// (Aψ)(a⁰,…,a^m) = Σ_j (−1)^{mj} ψ(a^j,…,a^m,a⁰,…,a^{j−1}).
pub fn cyclic_sum<F: ModelFunction, C: Cochain<F> + ?Sized>(psi: &C, args: &[F]) -> Result<ExtScalar, CmError> {
    let len = args.len();
    let m = len.saturating_sub(1);
    let mut acc = ExtScalar::zero();
    let mut rot: Vec<F> = args.to_vec();
    for j in 0..len {
        acc = add(acc, &psi.eval(&rot)?.scale(&sign(m * j)))?;
        rot.rotate_left(1);
    }
    Ok(acc)
}

struct InsertUnit<'a, C: ?Sized>(&'a C);

impl<F: ModelFunction, C: Cochain<F> + ?Sized> Cochain<F> for InsertUnit<'_, C> {
    fn eval(&self, args: &[F]) -> Result<ExtScalar, CmError> {
        b0(self.0, args)
    }
}

/// (B₀ψ)(a⁰,…,a^m) = ψ(1, a⁰,…,a^m).
pub fn b0<F: ModelFunction, C: Cochain<F> + ?Sized>(psi: &C, args: &[F]) -> Result<ExtScalar, CmError> {
    let first = args.first().ok_or(CmError::Arity { expected: 1, got: 0 })?;
    let mut full = Vec::with_capacity(args.len() + 1);
    full.push(first.unit_like());
    full.extend_from_slice(args);
    psi.eval(&full)
}

/// B = AB₀.
pub fn connes_b<F: ModelFunction, C: Cochain<F> + ?Sized>(psi: &C, args: &[F]) -> Result<ExtScalar, CmError> {
    cyclic_sum(&InsertUnit(psi), args)
}

/// ((b + B)φ)(a⁰,…,a^m) = (bφ_{m−1} + Bφ_{m+1})(a⁰,…,a^m).
pub fn cocycle_residual<F: ModelFunction, C: Cochain<F> + ?Sized>(phi: &C, args: &[F]) -> Result<GradedSum, CmError> {
    let mut out = GradedSum::new();
    out.push(&hochschild_b(phi, args)?);
    out.push(&connes_b(phi, args)?);
    Ok(out)
}

/// (2iπ)^{−n/2}/(2k)!.
pub fn even_normalization(k: u32, n: u32) -> ExtScalar {
    ExtScalar::two_i_pi_pow_half(-(n as i32)).scale(&(int(1) / factorial(2 * k)))
}

/// √(2iπ)(2iπ)^{−[n/2]−1}/(2k+1)!.
pub fn odd_normalization(k: u32, n: u32) -> ExtScalar {
    let e = 1 - 2 * (n / 2) as i32 - 2;
    ExtScalar::two_i_pi_pow_half(e).scale(&(int(1) / factorial(2 * k + 1)))
}

fn alpha_product(alpha: &[u32]) -> Rational {
    let mut acc = int(1);
    let mut partial = 0u64;
    for (j, &a) in alpha.iter().enumerate() {
        partial += a as u64;
        acc *= int((partial + j as u64 + 1) as i64);
        acc *= factorial(a);
    }
    let total: u32 = alpha.iter().sum();
    acc * sign(total as usize)
}

/// c_{k,α} of the even local index formula:
/// Γ(|α|+k) c_{k,α}^{-1} = 2(−1)^{|α|} α! (α₁+1)⋯(α₁+⋯+α_{2k}+2k).
pub fn cm_constant_even(k: u32, alpha: &[u32]) -> Result<ExtScalar, CmError> {
    if alpha.len() != 2 * k as usize {
        return Err(CmError::Arity { expected: 2 * k as usize, got: alpha.len() });
    }
    if k == 0 {
        return Err(CmError::GammaPole);
    }
    let s: u32 = alpha.iter().sum();
    let gamma = factorial(s + k - 1);
    Ok(ExtScalar::from_rational(gamma / (alpha_product(alpha) * int(2))))
}

/// c_{k,α} of the odd local index formula, α a (2k+1)-fold index:
/// Γ(|α|+k+½) c_{k,α}^{-1} = (−1)^{|α|} α! Π_{j=1}^{2k+1}(α₁+⋯+α_j+j).
pub fn cm_constant_odd(k: u32, alpha: &[u32]) -> Result<ExtScalar, CmError> {
    if alpha.len() != 2 * k as usize + 1 {
        return Err(CmError::Arity { expected: 2 * k as usize + 1, got: alpha.len() });
    }
    let s: u32 = alpha.iter().sum();
    let gamma = crate::algebra::gamma_half(2 * (s + k) + 1);
    Ok(gamma.scale(&(int(1) / alpha_product(alpha))))
}

/// The CM cocycle of the Dirac triple on an n-dimensional model geometry
/// (flat T^n or round S²), where Â(R) contributes only its degree-0 term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CmCocycle {
    n: u32,
}

impl CmCocycle {
    pub fn new(n: u32) -> Self {
        CmCocycle { n }
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn is_even(&self) -> bool {
        self.n % 2 == 0
    }

    /// φ_{2k}(f⁰,…,f^{2k}).
    pub fn even_component<F: ModelFunction>(&self, k: u32, fs: &[F]) -> Result<ExtScalar, CmError> {
        if !self.is_even() {
            return Err(CmError::Parity { degree: 2 * k as usize, n: self.n });
        }
        if fs.len() != 2 * k as usize + 1 {
            return Err(CmError::Arity { expected: 2 * k as usize + 1, got: fs.len() });
        }
        self.eval(fs)
    }

    /// φ_{2k+1}(f⁰,…,f^{2k+1}).
    pub fn odd_component<F: ModelFunction>(&self, k: u32, fs: &[F]) -> Result<ExtScalar, CmError> {
        if self.is_even() {
            return Err(CmError::Parity { degree: 2 * k as usize + 1, n: self.n });
        }
        if fs.len() != 2 * k as usize + 2 {
            return Err(CmError::Arity { expected: 2 * k as usize + 2, got: fs.len() });
        }
        self.eval(fs)
    }
}

impl<F: ModelFunction> Cochain<F> for CmCocycle {
    fn eval(&self, args: &[F]) -> Result<ExtScalar, CmError> {
        let degree = args.len().checked_sub(1).ok_or(CmError::Arity { expected: 1, got: 0 })?;
        if degree % 2 != self.n as usize % 2 {
            return Err(CmError::Parity { degree, n: self.n });
        }
        for f in args {
            if f.manifold_dim() != self.n {
                return Err(CmError::DimensionMismatch(self.n, f.manifold_dim()));
            }
        }
        if degree != self.n as usize {
            return Ok(ExtScalar::zero());
        }
        let norm = if self.is_even() {
            even_normalization(self.n / 2, self.n)
        } else {
            odd_normalization(self.n / 2, self.n)
        };
        let value = F::top_integral(&args[0], &args[1..])?;
        Ok(if value.is_zero() { value } else { value * norm })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Cyclo8};
    use crate::cm::TrigFunction;

    #[test]
    fn constants_by_hand() {
        assert_eq!(cm_constant_even(1, &[0, 0]).unwrap(), ExtScalar::from_rational(rat(1, 4)));
        // Γ(2)/(2·(−1)·1!·2·3) = −1/12
        assert_eq!(cm_constant_even(1, &[1, 0]).unwrap(), ExtScalar::from_rational(rat(-1, 12)));
        assert_eq!(cm_constant_odd(0, &[0]).unwrap(), ExtScalar::pi_power_half(1));
        assert_eq!(cm_constant_odd(1, &[0, 0, 0]).unwrap(), ExtScalar::pi_power_half(1).scale(&rat(1, 12)));
        assert_eq!(cm_constant_even(0, &[]), Err(CmError::GammaPole));
    }

    #[test]
    fn torus_example() {
        let phi = CmCocycle::new(2);
        let v = phi
            .even_component(1, &[TrigFunction::exp(&[-1, -1]), TrigFunction::exp(&[1, 0]), TrigFunction::exp(&[0, 1])])
            .unwrap();
        assert_eq!(v, ExtScalar::new(Cyclo8::i(), 2));
    }

    #[test]
    fn circle_example() {
        let phi = CmCocycle::new(1);
        let v = phi.odd_component(0, &[TrigFunction::exp(&[-1]), TrigFunction::exp(&[1])]).unwrap();
        assert_eq!(v, ExtScalar::two_i_pi_pow_half(1));
    }

    #[test]
    fn wrong_parity() {
        let phi = CmCocycle::new(2);
        assert!(matches!(phi.odd_component(0, &[TrigFunction::exp(&[0, 0]), TrigFunction::exp(&[0, 0])]), Err(CmError::Parity { .. })));
        assert!(matches!(phi.even_component(1, &[TrigFunction::exp(&[0, 0]), TrigFunction::exp(&[0, 0])]), Err(CmError::Arity { .. })));
    }
}
