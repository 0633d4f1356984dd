//! Exact symbolic heat-kernel coefficients, Getzler rescaling and local
//! index densities.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is computed in
//! exact arithmetic over ℚ(ζ₈) with a formal power of √π.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod chern;
pub mod cm;
pub mod jet;
pub mod geometry;
pub mod getzler;
pub mod volterra;
