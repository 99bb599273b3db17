//! Multi-forms, their index combinatorics and Young projection.

pub mod coefficient;
pub mod form;
pub mod shape;
pub mod young;

pub use coefficient::{monomials_of_degree, Coefficient, Polynomial, TrigPolynomial};
pub use form::MultiForm;
pub use shape::{binomial, canonical_block, canonicalize, Block, Shape, ShapeBasis};
pub use young::{irrep_dimension, project, young_projector, ProjectorMatrix};
