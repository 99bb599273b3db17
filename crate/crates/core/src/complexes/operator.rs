//! Matrices of δ^(k)∘Π on truncated coefficient blocks.
//!
//! Coordinates are full block-tuple coordinates: column `t * n_src + a` is
//! basis tuple `t` with coefficient basis function `a`, and rows are indexed
//! the same way on the target. Because the source projector is folded into
//! every column, consecutive matrices compose to zero.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{GaussianRational, Rational};
use crate::tensor::{young_projector, MultiForm, Shape};
use crate::calculus::delta_k;

use super::truncation::BlockCoefficient;

/// Columns of δ^(order)∘Π on `source ⊗ span(source_keys)`, with row indices
/// into `target ⊗ span(target_keys)`.
fn assemble_columns<C: BlockCoefficient, T>(
    source: &Shape,
    order: usize,
    source_keys: &[C::Key],
    target_keys: &[C::Key],
    coords: impl Fn(&C) -> Result<Vec<(C::Key, T)>>,
) -> Result<(usize, Vec<Vec<(usize, T)>>)> {
    let projector = young_projector(source)?;
    let src_basis = source.basis();
    let Some(target) = source.raised(order) else {
        return Ok((0, (0..src_basis.len() * source_keys.len()).map(|_| Vec::new()).collect()));
    };
    let tgt_basis = target.basis();
    let key_index: HashMap<&C::Key, usize> =
        target_keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let nkeys = target_keys.len();
    let mut columns = Vec::with_capacity(src_basis.len() * source_keys.len());
    for t in 0..src_basis.len() {
        for key in source_keys {
            let phi = C::basis_function(key);
            let mut v: MultiForm<C> = MultiForm::zero(source.clone());
            for (i, p) in projector.column(t) {
                v.add_term(src_basis.tuple(*i).to_vec(), &phi, p);
            }
            let mut col = Vec::new();
            if let Some(img) = delta_k(&v, order)? {
                for (blocks, c) in img.terms() {
                    let row_tuple = tgt_basis.index_of(blocks).expect("canonical target tuple");
                    for (k, val) in coords(c)? {
                        let Some(a) = key_index.get(&k) else {
                            return Err(Error::Consistency(format!(
                                "truncation not closed: δ^({order}) on {source:?} produced key {k:?}"
                            )));
                        };
                        col.push((row_tuple * nkeys + a, val));
                    }
                }
            }
            columns.push(col);
        }
    }
    Ok((tgt_basis.len() * nkeys, columns))
}

/// Rational block matrix of δ^(order)∘Π; on a torus the common phase i^order
/// is divided out.
pub fn operator_matrix<C: BlockCoefficient>(
    source: &Shape,
    order: usize,
    source_keys: &[C::Key],
    target_keys: &[C::Key],
) -> Result<Matrix<Rational>> {
    let (nrows, cols) =
        assemble_columns::<C, Rational>(source, order, source_keys, target_keys, |c| c.coordinates(order))?;
    Ok(Matrix::from_sparse_columns(nrows, &cols))
}

/// The same operator with raw Gaussian-rational entries, phases included.
pub fn operator_matrix_gaussian<C: BlockCoefficient>(
    source: &Shape,
    order: usize,
    source_keys: &[C::Key],
    target_keys: &[C::Key],
) -> Result<Matrix<GaussianRational>> {
    let (nrows, cols) = assemble_columns::<C, GaussianRational>(source, order, source_keys, target_keys, |c| {
        Ok(c.raw_coordinates())
    })?;
    Ok(Matrix::from_sparse_columns(nrows, &cols))
}

/// Π ⊗ id on `shape ⊗ span(keys)`.
pub fn projector_block(shape: &Shape, nkeys: usize) -> Result<Matrix<Rational>> {
    let projector = young_projector(shape)?;
    let n = projector.size();
    let mut cols = Vec::with_capacity(n * nkeys);
    for t in 0..n {
        for a in 0..nkeys {
            cols.push(
                projector
                    .column(t)
                    .iter()
                    .map(|(i, v)| (i * nkeys + a, v.clone()))
                    .collect::<Vec<_>>(),
            );
        }
    }
    Ok(Matrix::from_sparse_columns(n * nkeys, &cols))
}

/// Rebuilds a form from full coordinates on `shape ⊗ span(keys)`.
pub fn form_from_coordinates<C: BlockCoefficient>(
    shape: &Shape,
    keys: &[C::Key],
    coords: &[Rational],
) -> MultiForm<C> {
    let basis = shape.basis();
    let mut out = MultiForm::zero(shape.clone());
    let one = Rational::from_integer(1.into());
    for (idx, v) in coords.iter().enumerate() {
        if num_traits::Zero::is_zero(v) {
            continue;
        }
        let t = idx / keys.len();
        let a = idx % keys.len();
        out.add_term(basis.tuple(t).to_vec(), &C::basis_function(&keys[a]).scaled(v), &one);
    }
    out
}

/// Full coordinates of a form on `shape ⊗ span(keys)`.
pub fn coordinates_of<C: BlockCoefficient>(
    form: &MultiForm<C>,
    keys: &[C::Key],
) -> Result<Vec<Rational>> {
    let basis = form.shape().basis();
    let key_index: HashMap<&C::Key, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut out = vec![Rational::from_integer(0.into()); basis.len() * keys.len()];
    for (blocks, c) in form.terms() {
        let t = basis.index_of(blocks).expect("canonical tuple");
        for (k, v) in c.coordinates(0)? {
            let Some(a) = key_index.get(&k) else {
                return Err(Error::Domain(format!("coefficient key {k:?} outside the truncation")));
            };
            out[t * keys.len() + a] = v;
        }
    }
    Ok(out)
}
