use serde::Serialize;

use super::cohomology::{cohomology, CohomologyReport};
use super::spec::ComplexSpec;
use super::truncation::{Domain, Truncation};
use crate::error::{Error, Result};

/// Certificate that δ restricts to a bijection Ω_AS^{p} → Ω_AS^{p+1}.
#[derive(Clone, Debug, Serialize)]
pub struct AsReduction {
    pub position: usize,
    pub potential: Vec<usize>,
    pub field_strength: Vec<usize>,
    pub potential_dimension: usize,
    pub kernel_dimension: usize,
    /// Dimension of the complement of the kernel, Ω_AS^{p}.
    pub as_potential_dimension: usize,
    /// Dimension of the image, Ω_AS^{p+1}.
    pub as_field_dimension: usize,
    pub h_potential: usize,
    pub h_field: usize,
    pub bijection: bool,
}

fn group_name(sig: &[usize]) -> String {
    let parts: Vec<String> = sig.iter().map(|p| p.to_string()).collect();
    format!("H^{{{}}}", parts.join("⊗"))
}

/// Reduces the complex around `position` to its asymptotic-symmetry part.
///
/// Requires the de Rham-like cohomology at the potential and at the field
/// strength to vanish in the truncation. On a box the degree cap applies to
/// the potential. On a torus `skip_zero_mode` restricts the check and the
/// dimensions to nonzero frequencies.
pub fn as_reduction(
    spec: &ComplexSpec,
    position: usize,
    trunc: &Truncation,
    skip_zero_mode: bool,
) -> Result<AsReduction> {
    if position >= spec.edges.len() {
        return Err(Error::Precondition(format!(
            "position {position} has no outgoing differential in a complex of length {}",
            spec.edges.len()
        )));
    }
    let anchored = match trunc.domain {
        Domain::Box { degree_cap } => Truncation {
            domain: Domain::Box {
                degree_cap: degree_cap + spec.cumulative_order(position) as u32,
            },
            ..*trunc
        },
        Domain::Torus { .. } => *trunc,
    };
    let report = cohomology(spec, &anchored)?;
    let exclude = skip_zero_mode && matches!(trunc.domain, Domain::Torus { .. });
    let h = if exclude { report.h_without_zero_mode() } else { report.h() };
    for j in [position, position + 1] {
        if h[j] != 0 {
            return Err(Error::Precondition(format!(
                "de Rham-like cohomology {} at position {j} has dimension {} in the truncation",
                group_name(spec.nodes[j].signature()),
                h[j]
            )));
        }
    }
    let (dim_p, rank) = dims_at(&report, position, exclude);
    let kernel = dim_p - rank;
    Ok(AsReduction {
        position,
        potential: spec.nodes[position].signature().to_vec(),
        field_strength: spec.nodes[position + 1].signature().to_vec(),
        potential_dimension: dim_p,
        kernel_dimension: kernel,
        as_potential_dimension: rank,
        as_field_dimension: rank,
        h_potential: h[position],
        h_field: h[position + 1],
        bijection: true,
    })
}

/// Node dimension and outgoing rank at `j`, optionally without the zero mode.
fn dims_at(report: &CohomologyReport, j: usize, exclude_zero: bool) -> (usize, usize) {
    let p = &report.positions[j];
    // the outgoing edge rank is the coboundary count of the next node
    let rank = report.positions[j + 1].coboundaries;
    if exclude_zero {
        // frequency blocks share one dimension and δ annihilates constants
        (p.dimension - p.dimension / report.blocks.len().max(1), rank)
    } else {
        (p.dimension, rank)
    }
}
