//! Augmented de Rham-like complexes, their truncated operators and exact
//! cohomology dimensions.

pub mod cohomology;
pub mod operator;
pub mod reduction;
pub mod spec;
pub mod truncation;

pub use cohomology::{check_resources, cohomology, de_rham_reference, full_edge_rank, BlockReport, CohomologyReport, PositionReport};
pub use operator::{coordinates_of, form_from_coordinates, operator_matrix, operator_matrix_gaussian, projector_block};
pub use reduction::{as_reduction, AsReduction};
pub use spec::{augmentation_for, build_complex, ComplexSpec};
pub use truncation::{frequencies, strand_keys, BlockCoefficient, Domain, Truncation, DEFAULT_MAX_DIM};
