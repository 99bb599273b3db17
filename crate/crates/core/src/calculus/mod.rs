//! Slot differentials, de Rham-like differentials, Hodge duals and the
//! constructive homotopy inverse.

pub mod differential;
pub mod hodge;
pub mod homotopy;
pub mod metric;

pub use differential::{cumulative_field_strength, d_prefix, d_slot, delta, delta_k, slot_field_strength};
pub use hodge::{double_hodge_sign, hodge_block, hodge_prefix, hodge_slot};
pub use homotopy::{poincare_homotopy, HomotopyWitness};
pub use metric::{Metric, MetricKind};
