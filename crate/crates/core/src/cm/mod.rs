//! Connes–Moscovici cocycle of the Dirac triple on model geometries (flat
//! tori and the round S²), its (b, B) coboundaries and the K-theory pairings.
//!
//! On both geometries Â(R) = 1 in every degree below 4, so the component of
//! degree m is nonzero only when m equals the dimension.

mod cochain;
mod matrix;
mod pairing;
mod sphere;
mod trig;

pub use cochain::{
    b0, cm_constant_even, cm_constant_odd, cocycle_residual, connes_b, cyclic_sum, even_normalization,
    hochschild_b, odd_normalization, Cochain, CmCocycle,
};
pub use matrix::FnMatrix;
pub use pairing::{aps_spectral_flow, pair_even, pair_odd, sharp_tr};
pub use sphere::{bott_projector, SphereFunction};
pub use trig::TrigFunction;

use crate::algebra::{AlgebraError, Cyclo8, ExtScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CmError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("cochain of degree {degree} does not belong to the cocycle of a {n}-dimensional triple")]
    Parity { degree: usize, n: u32 },
    #[error("functions live on spaces of dimension {0} and {1}")]
    DimensionMismatch(u32, u32),
    #[error("matrix sizes {0} and {1} differ")]
    SizeMismatch(usize, usize),
    #[error("e is not idempotent")]
    NotIdempotent,
    #[error("e is not selfadjoint")]
    NotSelfAdjoint,
    #[error("U is not unitary")]
    NotUnitary,
    #[error("the spectral flow formula needs odd dimension, got {0}")]
    EvenDimension(u32),
    #[error("Γ has a pole at 0 (k = 0 has no residue formula)")]
    GammaPole,
}

/// Smooth functions on a model geometry with exact integration.
pub trait ModelFunction: Clone + PartialEq + core::fmt::Debug {
    /// Dimension of the underlying manifold.
    fn manifold_dim(&self) -> u32;
    fn constant_like(&self, c: Cyclo8) -> Self;
    fn try_add(&self, other: &Self) -> Result<Self, CmError>;
    fn try_mul(&self, other: &Self) -> Result<Self, CmError>;
    fn scale(&self, c: &Cyclo8) -> Self;
    /// Pointwise complex conjugate.
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// ∫_M f⁰ df¹∧…∧dfⁿ with n the manifold dimension.
    fn top_integral(f0: &Self, fs: &[Self]) -> Result<ExtScalar, CmError>;

    fn unit_like(&self) -> Self {
        self.constant_like(num_traits::One::one())
    }

    fn zero_like(&self) -> Self {
        self.constant_like(num_traits::Zero::zero())
    }
}
