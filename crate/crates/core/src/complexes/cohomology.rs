use rayon::prelude::*;
use serde::Serialize;

use super::operator::{operator_matrix, operator_matrix_gaussian};
use super::spec::{build_complex, ComplexSpec};
use super::truncation::{frequencies, strand_keys, BlockCoefficient, Domain, Truncation};
use crate::error::{Error, Result};
use crate::linalg::fraction_free_rank;
use crate::tensor::{binomial, irrep_dimension, Polynomial, TrigPolynomial};

#[derive(Clone, Debug, Serialize)]
pub struct PositionReport {
    pub position: usize,
    pub signature: Vec<usize>,
    /// Dimension of the principal subspace in the truncation.
    pub dimension: usize,
    pub closure_order: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub h: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub label: String,
    pub zero_mode: bool,
    pub h: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyReport {
    pub dim: usize,
    pub arity: usize,
    pub augmentation: Vec<usize>,
    pub edges: Vec<usize>,
    pub truncation: Truncation,
    pub positions: Vec<PositionReport>,
    pub blocks: Vec<BlockReport>,
    /// Torus only: cohomology of the zero-frequency block.
    pub zero_mode_h: Option<Vec<usize>>,
    /// Torus only: whether every nonzero-frequency block is exact.
    pub nonzero_modes_exact: Option<bool>,
}

impl CohomologyReport {
    pub fn h(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p.h).collect()
    }

    /// Sum of h over the nonzero-frequency blocks (or all blocks on a box).
    pub fn h_without_zero_mode(&self) -> Vec<usize> {
        let mut out = vec![0; self.positions.len()];
        for b in self.blocks.iter().filter(|b| !b.zero_mode) {
            for (o, h) in out.iter_mut().zip(&b.h) {
                *o += h;
            }
        }
        out
    }
}

struct BlockRanks {
    dims: Vec<usize>,
    edge_ranks: Vec<usize>,
    closure_ranks: Vec<usize>,
}

fn block_ranks<C: BlockCoefficient>(
    spec: &ComplexSpec,
    keys_at: &(dyn Fn(usize, usize) -> Vec<C::Key> + Sync),
) -> Result<BlockRanks> {
    let n = spec.nodes.len();
    let mut dims = Vec::with_capacity(n);
    let mut edge_ranks = Vec::with_capacity(n);
    let mut closure_ranks = Vec::with_capacity(n);
    for j in 0..n {
        let shape = &spec.nodes[j];
        let keys = keys_at(j, 0);
        dims.push(irrep_dimension(shape)? * keys.len());
        let rank_of = |order: usize| -> Result<usize> {
            if keys.is_empty() || shape.raised(order).is_none() {
                return Ok(0);
            }
            let target_keys = keys_at(j, order);
            let m = operator_matrix::<C>(shape, order, &keys, &target_keys)?;
            Ok(fraction_free_rank(&m))
        };
        let edge = if j < spec.edges.len() { rank_of(spec.edges[j])? } else { 0 };
        let closure_order = spec.closure_order(j);
        let closure = if j < spec.edges.len() && spec.edges[j] == closure_order {
            edge
        } else {
            rank_of(closure_order)?
        };
        edge_ranks.push(edge);
        closure_ranks.push(closure);
    }
    Ok(BlockRanks {
        dims,
        edge_ranks,
        closure_ranks,
    })
}

fn block_h(spec: &ComplexSpec, r: &BlockRanks) -> Result<Vec<usize>> {
    (0..spec.nodes.len())
        .map(|j| {
            let z = r.dims[j] - r.closure_ranks[j];
            let b = if j == 0 { 0 } else { r.edge_ranks[j - 1] };
            z.checked_sub(b).ok_or_else(|| {
                Error::Consistency(format!(
                    "coboundaries exceed cocycles at position {j} ({b} > {z})"
                ))
            })
        })
        .collect()
}

/// Number of coefficient basis functions at node `j`, over all blocks.
fn node_key_count(spec: &ComplexSpec, trunc: &Truncation, j: usize) -> usize {
    match trunc.domain {
        Domain::Box { degree_cap } => {
            let cap = degree_cap as i64 - spec.cumulative_order(j) as i64;
            if cap < 0 {
                0
            } else {
                binomial(cap as usize + spec.dim, spec.dim)
            }
        }
        Domain::Torus { freq_cap } => (2 * freq_cap as usize + 1).pow(spec.dim as u32),
    }
}

pub fn check_resources(spec: &ComplexSpec, trunc: &Truncation) -> Result<()> {
    for (j, shape) in spec.nodes.iter().enumerate() {
        let needed = shape.block_count().saturating_mul(node_key_count(spec, trunc, j));
        if needed > trunc.max_dim {
            return Err(Error::Resource {
                what: format!("node {j} ({shape})"),
                needed,
                cap: trunc.max_dim,
            });
        }
    }
    Ok(())
}

/// De Rham-like cohomology dimensions of a complex on a truncation, computed
/// block by block (homogeneous strands on a box, frequencies on a torus).
pub fn cohomology(spec: &ComplexSpec, trunc: &Truncation) -> Result<CohomologyReport> {
    check_resources(spec, trunc)?;
    let dim = spec.dim;
    let (labels, zero_flags, results): (Vec<String>, Vec<bool>, Vec<Result<BlockRanks>>) = match trunc.domain {
        Domain::Box { degree_cap } => {
            let strands: Vec<u32> = (0..=degree_cap).collect();
            let results = strands
                .par_iter()
                .map(|&s| {
                    let keys = move |j: usize, extra: usize| {
                        strand_keys(dim, s as i64 - (spec.cumulative_order(j) + extra) as i64)
                    };
                    block_ranks::<Polynomial>(spec, &keys)
                })
                .collect();
            (
                strands.iter().map(|s| format!("degree {s}")).collect(),
                vec![false; strands.len()],
                results,
            )
        }
        Domain::Torus { freq_cap } => {
            let freqs = frequencies(dim, freq_cap);
            let results = freqs
                .par_iter()
                .map(|k| {
                    let keys = move |_j: usize, _extra: usize| vec![k.clone()];
                    block_ranks::<TrigPolynomial>(spec, &keys)
                })
                .collect();
            (
                freqs.iter().map(|k| format!("frequency {k:?}")).collect(),
                freqs.iter().map(|k| k.iter().all(|x| *x == 0)).collect(),
                results,
            )
        }
    };

    let n = spec.nodes.len();
    let mut dims = vec![0; n];
    let mut cocycles = vec![0; n];
    let mut coboundaries = vec![0; n];
    let mut blocks = Vec::with_capacity(results.len());
    for ((label, zero_mode), r) in labels.into_iter().zip(zero_flags).zip(results) {
        let r = r?;
        let h = block_h(spec, &r)?;
        for j in 0..n {
            dims[j] += r.dims[j];
            cocycles[j] += r.dims[j] - r.closure_ranks[j];
            coboundaries[j] += if j == 0 { 0 } else { r.edge_ranks[j - 1] };
        }
        blocks.push(BlockReport { label, zero_mode, h });
    }
    let positions = (0..n)
        .map(|j| PositionReport {
            position: j,
            signature: spec.nodes[j].signature().to_vec(),
            dimension: dims[j],
            closure_order: spec.closure_order(j),
            cocycles: cocycles[j],
            coboundaries: coboundaries[j],
            h: cocycles[j] - coboundaries[j],
        })
        .collect();
    let (zero_mode_h, nonzero_modes_exact) = match trunc.domain {
        Domain::Torus { .. } => (
            blocks.iter().find(|b| b.zero_mode).map(|b| b.h.clone()),
            Some(blocks.iter().filter(|b| !b.zero_mode).all(|b| b.h.iter().all(|h| *h == 0))),
        ),
        Domain::Box { .. } => (None, None),
    };
    Ok(CohomologyReport {
        dim,
        arity: spec.arity,
        augmentation: spec.augmentation.clone(),
        edges: spec.edges.clone(),
        truncation: *trunc,
        positions,
        blocks,
        zero_mode_h,
        nonzero_modes_exact,
    })
}

/// Cohomology of the ordinary de Rham complex (N = 1) on the same truncation.
pub fn de_rham_reference(dim: usize, trunc: &Truncation) -> Result<Vec<usize>> {
    Ok(cohomology(&build_complex(dim, 1, &[])?, trunc)?.h())
}

/// Rank of one edge assembled as a single matrix over all blocks, with the
/// Gaussian-rational phases left in place.
pub fn full_edge_rank(spec: &ComplexSpec, trunc: &Truncation, edge: usize) -> Result<usize> {
    check_resources(spec, trunc)?;
    let source = &spec.nodes[edge];
    let order = spec.edges[edge];
    match trunc.domain {
        Domain::Torus { freq_cap } => {
            let keys = frequencies(spec.dim, freq_cap);
            let m = operator_matrix_gaussian::<TrigPolynomial>(source, order, &keys, &keys)?;
            Ok(fraction_free_rank(&m))
        }
        Domain::Box { degree_cap } => {
            let cap_src = degree_cap as i64 - spec.cumulative_order(edge) as i64;
            let src: Vec<Vec<u32>> = (0..=cap_src.max(-1)).flat_map(|d| strand_keys(spec.dim, d)).collect();
            let tgt: Vec<Vec<u32>> =
                (0..=(cap_src - order as i64).max(-1)).flat_map(|d| strand_keys(spec.dim, d)).collect();
            if src.is_empty() {
                return Ok(0);
            }
            let m = operator_matrix_gaussian::<Polynomial>(source, order, &src, &tgt)?;
            Ok(fraction_free_rank(&m))
        }
    }
}
