//! Hodge duals acting on single slots.
//!
//! ⋆dx_I = (∏_{i∈I} g^{ii}) sgn(I, I^c) dx_{I^c}, with ε_{01…D-1} = +1.

use num_traits::One;

use super::metric::Metric;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::{Block, Coefficient, MultiForm};

/// Sign of the permutation that lists `block` followed by its complement.
fn shuffle_negative(block: Block, dim: usize) -> bool {
    let comp = block.complement(dim);
    let inversions: usize = block
        .indices()
        .into_iter()
        .map(|a| comp.count_below(a))
        .sum();
    inversions % 2 == 1
}

/// Coefficient sign and image block of ⋆ on a single basis block.
pub fn hodge_block(block: Block, metric: &Metric) -> (Block, bool) {
    let dim = metric.dim();
    let mut negative = shuffle_negative(block, dim);
    for i in block.indices() {
        if metric.flag(i) < 0 {
            negative = !negative;
        }
    }
    (block.complement(dim), negative)
}

pub fn hodge_slot<C: Coefficient>(
    t: &MultiForm<C>,
    slot: usize,
    metric: &Metric,
) -> Result<MultiForm<C>> {
    let shape = t.shape();
    if slot >= shape.arity() {
        return Err(Error::Domain(format!("slot {} out of range", slot + 1)));
    }
    if metric.dim() != shape.dim() {
        return Err(Error::Domain(format!(
            "metric of dimension {} on a form of dimension {}",
            metric.dim(),
            shape.dim()
        )));
    }
    let target = shape.with_degree(slot, shape.dim() - shape.degree(slot))?;
    let mut out = MultiForm::zero(target);
    let one = Rational::one();
    let minus = -Rational::one();
    for (blocks, c) in t.terms() {
        let (b, negative) = hodge_block(blocks[slot], metric);
        let mut nb = blocks.clone();
        nb[slot] = b;
        out.add_term(nb, c, if negative { &minus } else { &one });
    }
    Ok(out)
}

/// The cumulative Hodge map ⋆^(1)∘…∘⋆^(k) over the first `k` slots.
pub fn hodge_prefix<C: Coefficient>(
    t: &MultiForm<C>,
    k: usize,
    metric: &Metric,
) -> Result<MultiForm<C>> {
    let mut cur = t.clone();
    for slot in 0..k {
        cur = hodge_slot(&cur, slot, metric)?;
    }
    Ok(cur)
}

/// The sign s with ⋆⋆ = s·id on p-forms.
pub fn double_hodge_sign(dim: usize, p: usize, metric: &Metric) -> i8 {
    let base = if (p * (dim - p)).is_multiple_of(2) { 1 } else { -1 };
    base * metric.det_sign()
}
