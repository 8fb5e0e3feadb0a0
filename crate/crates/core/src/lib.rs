//! Operator means, Kantorovich-type constants and positive unital linear maps
//! on finite-dimensional Hermitian matrices, together with a checker that
//! evaluates operator inequalities in the Loewner order on seeded random
//! instances.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and
//! the command-line front end live in the `opineq` crate.
//!
//! Weight convention: both weighted means put the weight `nu` on the second
//! argument, `A ∇_ν B = (1-ν)A + νB` and `A ♯_ν B = A^{1/2}(A^{-1/2} B A^{-1/2})^ν A^{1/2}`,
//! so that `A ♯_ν B ≤ A ∇_ν B` holds with matching weights.

#![no_std]
#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod constants;
pub mod error;
pub mod linalg;
pub mod maps;
pub mod means;
pub mod registry;
pub mod rng;
pub mod sampler;
pub mod verifier;

pub use error::{Error, Result};
pub use linalg::{CMatrix, HermitianMatrix, SpectralDecomposition};
pub use num_complex::Complex64;
