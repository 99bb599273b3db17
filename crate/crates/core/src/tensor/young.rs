//! Young projection onto the principal subspace of a multi-form space.
//!
//! The principal λ-component occurs once in the tensor product of the column
//! form spaces, so every equivariant idempotent onto it coincides with the
//! normalized Young symmetrizer A∘S∘A. It is built here as the orthogonal
//! projector onto the joint kernel of the index transfer maps (move one index
//! from column j into column i < j), one weight space at a time.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use once_cell::sync::Lazy;
use rayon::prelude::*;

use super::coefficient::Coefficient;
use super::form::MultiForm;
use super::shape::{Block, Shape, ShapeBasis};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{int, Rational};

#[derive(Debug)]
pub struct ProjectorMatrix {
    shape: Shape,
    /// Column j holds the image of basis element j as `(row, value)` pairs.
    columns: Vec<Vec<(usize, Rational)>>,
}

static CACHE: Lazy<Mutex<HashMap<Shape, Arc<ProjectorMatrix>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The projector onto the principal λ-subspace with λ equal to the signature.
/// Results are memoized per shape.
pub fn young_projector(shape: &Shape) -> Result<Arc<ProjectorMatrix>> {
    shape.principal_label()?;
    if let Some(p) = CACHE.lock().expect("projector cache poisoned").get(shape) {
        return Ok(p.clone());
    }
    let built = Arc::new(ProjectorMatrix::build(shape));
    Ok(CACHE
        .lock()
        .expect("projector cache poisoned")
        .entry(shape.clone())
        .or_insert(built)
        .clone())
}

/// Applies the principal projector of `t`'s shape.
pub fn project<C: Coefficient>(t: &MultiForm<C>) -> Result<MultiForm<C>> {
    young_projector(t.shape())?.apply(t)
}

impl ProjectorMatrix {
    fn build(shape: &Shape) -> ProjectorMatrix {
        let basis = shape.basis();
        let sig = shape.signature();
        let dim = shape.dim();

        let mut weights: BTreeMap<Vec<u8>, Vec<usize>> = BTreeMap::new();
        for (idx, tuple) in basis.tuples().iter().enumerate() {
            let mut w = vec![0u8; dim];
            for b in tuple {
                for i in b.indices() {
                    w[i] += 1;
                }
            }
            weights.entry(w).or_default().push(idx);
        }

        let pairs: Vec<(usize, usize)> = (0..sig.len())
            .flat_map(|i| ((i + 1)..sig.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| sig[j] > 0 && sig[i] < dim)
            .collect();

        let blocks: Vec<Vec<(usize, Vec<(usize, Rational)>)>> = weights
            .into_values()
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|members| weight_block(&basis, &pairs, &members))
            .collect();

        let mut columns: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); basis.len()];
        for block in blocks {
            for (j, col) in block {
                columns[j] = col;
            }
        }
        ProjectorMatrix {
            shape: shape.clone(),
            columns,
        }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, Rational)] {
        &self.columns[j]
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        let cols: Vec<Vec<(usize, Rational)>> = self.columns.clone();
        Matrix::from_sparse_columns(self.columns.len(), &cols)
    }

    pub fn rank(&self) -> usize {
        self.matrix().rank()
    }

    /// Basis indices whose images span the principal subspace.
    pub fn image_pivots(&self) -> Vec<usize> {
        self.matrix().independent_columns()
    }

    /// Checks P·P = P exactly.
    pub fn is_idempotent(&self) -> bool {
        let m = self.matrix();
        m.mul(&m) == m
    }

    pub fn apply<C: Coefficient>(&self, t: &MultiForm<C>) -> Result<MultiForm<C>> {
        if t.shape() != &self.shape {
            return Err(Error::Domain(format!(
                "projector for {:?} applied to a form of shape {:?}",
                self.shape,
                t.shape()
            )));
        }
        let basis = self.shape.basis();
        let mut out = MultiForm::zero(self.shape.clone());
        for (blocks, c) in t.terms() {
            let j = basis.index_of(blocks).expect("canonical tuple in basis");
            for (i, v) in &self.columns[j] {
                out.add_term(basis.tuple(*i).to_vec(), c, v);
            }
        }
        Ok(out)
    }
}

/// Images of `t` under every transfer map, keyed by (pair, target tuple).
fn transfers(t: &[Block], pairs: &[(usize, usize)]) -> Vec<((usize, Vec<Block>), i64)> {
    let mut out = Vec::new();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for (pos, a) in t[j].indices().into_iter().enumerate() {
            let Some((grown, negative)) = t[i].wedge_front(a) else { continue };
            let mut target = t.to_vec();
            target[i] = grown;
            target[j] = Block::from_mask(t[j].mask() & !(1 << a));
            let sign = if negative ^ (pos % 2 == 1) { -1 } else { 1 };
            out.push(((k, target), sign));
        }
    }
    out
}

/// Projector columns for the basis elements of one weight space.
fn weight_block(
    basis: &ShapeBasis,
    pairs: &[(usize, usize)],
    members: &[usize],
) -> Vec<(usize, Vec<(usize, Rational)>)> {
    let mut rows: HashMap<(usize, Vec<Block>), usize> = HashMap::new();
    let mut entries: Vec<(usize, usize, i64)> = Vec::new();
    for (c, &idx) in members.iter().enumerate() {
        for (key, sign) in transfers(basis.tuple(idx), pairs) {
            let n = rows.len();
            let r = *rows.entry(key).or_insert(n);
            entries.push((r, c, sign));
        }
    }
    let b = members.len();
    let mut constraint = Matrix::<Rational>::zeros(rows.len(), b);
    for (r, c, sign) in entries {
        let v = constraint.get(r, c) + int(sign);
        constraint.set(r, c, v);
    }
    let kernel = constraint.kernel();
    let local: Matrix<Rational> = if kernel.is_empty() {
        Matrix::zeros(b, b)
    } else if kernel.len() == b {
        Matrix::identity(b)
    } else {
        let k = Matrix::from_columns(b, &kernel);
        let kt = k.transpose();
        let gram_inv = kt.mul(&k).inverse().expect("Gram matrix of a basis is invertible");
        k.mul(&gram_inv).mul(&kt)
    };
    (0..b)
        .map(|c| {
            let col = (0..b)
                .filter_map(|r| {
                    let v = local.get(r, c);
                    (!v.is_zero()).then(|| (members[r], v))
                })
                .collect();
            (members[c], col)
        })
        .collect()
}

/// Dimension of the GL(D) irrep with column heights `λ`, by the hook-content formula.
pub fn irrep_dimension(shape: &Shape) -> Result<usize> {
    let sig = shape.principal_label()?;
    let d = shape.dim() as i64;
    let height = sig.first().copied().unwrap_or(0);
    let row_len: Vec<usize> = (0..height).map(|r| sig.iter().filter(|p| **p > r).count()).collect();
    let mut num = int(1);
    for (i, &p) in sig.iter().enumerate() {
        for r in 0..p {
            let content = i as i64 - r as i64;
            let arm = row_len[r] - i - 1;
            let leg = p - r - 1;
            num *= int(d + content) / int((arm + leg + 1) as i64);
        }
    }
    use num_traits::ToPrimitive;
    Ok(num.to_integer().to_usize().unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        let s = Shape::new(5, vec![1, 1]).unwrap();
        assert_eq!(young_projector(&s).unwrap().rank(), 15);
        assert_eq!(irrep_dimension(&s).unwrap(), 15);
        let h = Shape::new(5, vec![2, 1]).unwrap();
        assert_eq!(young_projector(&h).unwrap().rank(), 40);
        assert_eq!(irrep_dimension(&h).unwrap(), 40);
        assert_eq!(irrep_dimension(&Shape::new(4, vec![1]).unwrap()).unwrap(), 4);
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn sign(p: &[usize]) -> i64 {
        let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inv % 2 == 0 { 1 } else { -1 }
    }

    /// A∘S∘A summed over every column and row permutation.
    fn brute_symmetrizer(shape: &Shape) -> Matrix<Rational> {
        let basis = shape.basis();
        let sig = shape.signature();
        let height = sig[0];
        let row_len: Vec<usize> = (0..height).map(|r| sig.iter().filter(|p| **p > r).count()).collect();
        let mut columns = Vec::new();
        for tuple in basis.tuples() {
            let mut fillings: Vec<(Vec<Vec<usize>>, i64)> = vec![(Vec::new(), 1)];
            for b in tuple {
                let col = b.indices();
                fillings = fillings
                    .into_iter()
                    .flat_map(|(f, s)| {
                        let col = col.clone();
                        permutations(col.len()).into_iter().map(move |p| {
                            let mut g = f.clone();
                            g.push(p.iter().map(|&k| col[k]).collect());
                            (g, s * sign(&p))
                        })
                    })
                    .collect();
            }
            let mut rowed = Vec::new();
            for (f, s) in fillings {
                let mut acc = vec![(f, s)];
                for (r, &len) in row_len.iter().enumerate() {
                    acc = acc
                        .into_iter()
                        .flat_map(|(f, s)| {
                            permutations(len).into_iter().map(move |p| {
                                let mut g = f.clone();
                                for i in 0..len {
                                    g[i][r] = f[p[i]][r];
                                }
                                (g, s)
                            })
                        })
                        .collect();
                }
                rowed.extend(acc);
            }
            let mut col: HashMap<usize, i64> = HashMap::new();
            for (f, s) in rowed {
                let mut blocks = Vec::new();
                let mut total = s;
                let mut ok = true;
                for c in &f {
                    let mut sorted = c.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != c.len() {
                        ok = false;
                        break;
                    }
                    let p: Vec<usize> = c.iter().map(|x| sorted.iter().position(|y| y == x).unwrap()).collect();
                    total *= sign(&p);
                    blocks.push(Block::from_sorted(&sorted).unwrap());
                }
                if ok {
                    *col.entry(basis.index_of(&blocks).unwrap()).or_insert(0) += total;
                }
            }
            columns.push(col.into_iter().filter(|(_, v)| *v != 0).map(|(i, v)| (i, int(v))).collect::<Vec<_>>());
        }
        Matrix::from_sparse_columns(basis.len(), &columns)
    }

    #[test]
    fn matches_normalized_young_symmetrizer() {
        for (dim, sig) in [(2, vec![2, 1]), (3, vec![2, 1]), (3, vec![2, 2]), (4, vec![2, 1]), (4, vec![3, 1]), (3, vec![2, 1, 1]), (4, vec![2, 2, 1]), (3, vec![1, 1, 1])] {
            let shape = Shape::new(dim, sig.clone()).unwrap();
            let m = brute_symmetrizer(&shape);
            let sq = m.mul(&m);
            let (r, c) = (0..m.nrows())
                .flat_map(|r| (0..m.ncols()).map(move |c| (r, c)))
                .find(|&(r, c)| !m.get(r, c).is_zero())
                .unwrap();
            let scale = sq.get(r, c) / m.get(r, c);
            assert_eq!(sq, m.scale(&scale), "D={dim} {sig:?} not quasi-idempotent");
            let p = young_projector(&shape).unwrap();
            assert_eq!(p.matrix(), m.scale(&(int(1) / scale)), "D={dim} {sig:?}");
            assert!(p.is_idempotent());
        }
    }

    #[test]
    fn rejects_increasing_signature() {
        let s = Shape::new(3, vec![1, 2]).unwrap();
        assert!(matches!(young_projector(&s), Err(Error::Shape(_))));
    }
}
