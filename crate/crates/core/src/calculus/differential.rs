//! Slot differentials, de Rham-like differentials and field strengths.
//!
//! Slots are numbered from zero in the library API.

use num_traits::One;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tensor::{project, Coefficient, MultiForm};

fn check_slot<C: Coefficient>(t: &MultiForm<C>, slot: usize) -> Result<()> {
    if slot >= t.shape().arity() {
        return Err(Error::Domain(format!(
            "slot {} out of range for a {}-multi-form",
            slot + 1,
            t.shape().arity()
        )));
    }
    Ok(())
}

/// Exterior derivative acting on one slot, without projection.
///
/// Returns `None` when the slot is already at top degree, in which case the
/// target space is zero.
pub fn d_slot<C: Coefficient>(t: &MultiForm<C>, slot: usize) -> Result<Option<MultiForm<C>>> {
    check_slot(t, slot)?;
    let shape = t.shape();
    let p = shape.degree(slot);
    if p == shape.dim() {
        return Ok(None);
    }
    let target = shape.with_degree(slot, p + 1)?;
    let mut out = MultiForm::zero(target);
    let one = Rational::one();
    let minus = -Rational::one();
    for (blocks, c) in t.terms() {
        for j in 0..shape.dim() {
            let Some((b, negative)) = blocks[slot].wedge_front(j) else {
                continue;
            };
            let dc = c.partial(j);
            if dc.vanishes() {
                continue;
            }
            let mut nb = blocks.clone();
            nb[slot] = b;
            out.add_term(nb, &dc, if negative { &minus } else { &one });
        }
    }
    Ok(Some(out))
}

/// Raw composition d^(k)∘…∘d^(1) over the first `k` slots.
pub fn d_prefix<C: Coefficient>(t: &MultiForm<C>, k: usize) -> Result<Option<MultiForm<C>>> {
    if k == 0 || k > t.shape().arity() {
        return Err(Error::Domain(format!(
            "differential order {k} outside 1..={}",
            t.shape().arity()
        )));
    }
    let mut cur = t.clone();
    for slot in 0..k {
        match d_slot(&cur, slot)? {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    Ok(Some(cur))
}

/// The k-cumulative field strength: d^(k)∘…∘d^(1) followed by Young
/// projection onto (p_1+1,…,p_k+1,p_{k+1},…,p_N).
///
/// A resulting label that is not weakly decreasing has no Young diagram and
/// is rejected as not meaningful.
pub fn cumulative_field_strength<C: Coefficient>(
    t: &MultiForm<C>,
    k: usize,
) -> Result<Option<MultiForm<C>>> {
    if let Some(target) = t.shape().raised(k) {
        if !target.is_young() {
            return Err(Error::Shape(format!(
                "field strength with label {:?} is not meaningful: no Young diagram",
                target.signature()
            )));
        }
    }
    match d_prefix(t, k)? {
        Some(raw) => Ok(Some(project(&raw)?)),
        None => Ok(None),
    }
}

/// Field strength of a single slot: d^(i) followed by projection.
pub fn slot_field_strength<C: Coefficient>(
    t: &MultiForm<C>,
    slot: usize,
) -> Result<Option<MultiForm<C>>> {
    check_slot(t, slot)?;
    let p = t.shape().degree(slot);
    if p < t.shape().dim() {
        let target = t.shape().with_degree(slot, p + 1)?;
        if !target.is_young() {
            return Err(Error::Shape(format!(
                "field strength with label {:?} is not meaningful: no Young diagram",
                target.signature()
            )));
        }
    }
    match d_slot(t, slot)? {
        Some(raw) => Ok(Some(project(&raw)?)),
        None => Ok(None),
    }
}

/// The de Rham-like differential δ^(k): the first `k` slot differentials
/// followed by projection onto the raised principal subspace.
pub fn delta_k<C: Coefficient>(t: &MultiForm<C>, k: usize) -> Result<Option<MultiForm<C>>> {
    cumulative_field_strength(t, k)
}

/// δ^(N) over all slots.
pub fn delta<C: Coefficient>(t: &MultiForm<C>) -> Result<Option<MultiForm<C>>> {
    delta_k(t, t.shape().arity())
}
