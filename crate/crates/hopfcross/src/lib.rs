//! Exact Hochschild (co)homology of Hopf crossed products `E = A #_f H`.
//!
//! Everything is finite-dimensional and exact (rationals or a prime field).
//! The small complexes come from a bimodule resolution of `E` built on
//! `E ⊗ H̄^s ⊗ Ā^r ⊗ E`; the normalized bar complex serves as an oracle.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod builtins;
pub mod coeff;
pub mod complex;
pub mod crossed;
pub mod homology;
pub mod lin;
pub mod linalg;
pub mod resolution;
pub mod scalar;
pub mod small;
pub mod tensor;

pub use algebra::{AlgebraData, Axiom, Elem, HopfData, Report, Tensor, Violation};
pub use crossed::{BimoduleData, CocycleData, CrossedProduct, WeakActionData};
pub use linalg::{ExactMatrix, LinalgError};
pub use scalar::{FieldSpec, Scalar};
