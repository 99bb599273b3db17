//! Floating-point charge computations: memory balance on null infinity,
//! flux quantization around defects and fracton multipole moments.
//!
//! Nothing here feeds back into the exact modules. Duality ratios enter as
//! `f64` values converted once at the boundary.

pub mod flux;
pub mod fracton;
pub mod memory;
pub mod quadrature;

pub use flux::{flux_quantization, flux_quantization_at, FluxReport};
pub use fracton::{boundary_field, bump, bump_field, fracton_moments, FractonMoments, TensorGrid};
pub use memory::{
    charge_at, default_balance, default_epsilon, gaussian_burst, memory_balance, refinement, simpson,
    EpsilonSamples, MemoryBalance, NewsProfile, Refinement, RefinementRow, DEFAULT_STEPS, REFINEMENT_STEPS,
};
pub use quadrature::{pairwise_sum, sphere_area, SphereQuadrature, DEFAULT_RESOLUTION};
