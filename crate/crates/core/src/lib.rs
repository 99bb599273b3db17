//! Exact calculus of mixed-symmetry tensors.
//!
//! N-multi-forms with rational, polynomial or trigonometric coefficients,
//! Young projection, slot differentials and Hodge duals, de Rham-like
//! complexes with exact cohomology ranks, duality maps between dual
//! descriptions, and a small floating-point layer for charge balance,
//! flux and multipole computations.

pub mod calculus;
pub mod charges;
pub mod cli;
pub mod complexes;
pub mod document;
pub mod duality;
pub mod error;
pub mod linalg;
pub mod rational;
pub mod sample;
pub mod tensor;

pub use error::{Error, Result};
