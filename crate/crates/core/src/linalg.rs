//! Exact linear algebra over the rationals and Gaussian rationals.
//!
//! Two independent elimination routes are provided:
//!
//! * [`Matrix`] keeps rows sparse and reduces over the field to reduced row
//!   echelon form. It serves kernels, particular solutions and inverses.
//! * [`fraction_free_rank`] clears denominators row by row and eliminates
//!   over the integers (or Gaussian integers) with sparse rows, removing the
//!   integer content after each update.
//! * [`fraction_free_det`] runs dense Bareiss elimination, where every
//!   division is exact.
//!
//! Ranks from the two routes are compared in tests.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{Num, One, Zero};

use crate::rational::{denominator_lcm, GaussianRational, Rational};

/// Field operations needed for elimination.
pub trait Field: Clone + PartialEq + Debug + Num + Neg<Output = Self> + Send + Sync {}
impl<T> Field for T where T: Clone + PartialEq + Debug + Num + Neg<Output = T> + Send + Sync {}

/// Sparse-row exact matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    pub rows: Vec<BTreeMap<usize, T>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<T: Field> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix from dense column vectors.
    pub fn from_columns(nrows: usize, columns: &[Vec<T>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix from sparse columns given as `(row, value)` lists.
    pub fn from_sparse_columns(nrows: usize, columns: &[Vec<(usize, T)>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                let cur = m.get(*i, j);
                m.set(*i, j, cur + v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.rows[i].get(&j).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert!(i < self.nrows && j < self.ncols, "index out of bounds");
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, T> {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<T>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                t.rows[*j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch in product");
        let mut out = Matrix::zeros(self.nrows, other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, T> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    let e = acc.entry(*j).or_insert_with(T::zero);
                    *e = e.clone() + a.clone() * b.clone();
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.ncols, v.len(), "dimension mismatch in matrix-vector product");
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (j, a)| acc + a.clone() * v[*j].clone())
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        let mut out = self.clone();
        for (i, row) in other.rows.iter().enumerate() {
            for (j, v) in row {
                let cur = out.get(i, *j);
                out.set(i, *j, cur - v.clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        let mut out = self.clone();
        for row in &mut out.rows {
            for v in row.values_mut() {
                *v = v.clone() * s.clone();
            }
            row.retain(|_, v| !v.is_zero());
        }
        out
    }

    /// Columns `cols` of `self`, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix<T> {
        let index: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(new, old)| (*old, new)).collect();
        let mut out = Matrix::zeros(self.nrows, cols.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                if let Some(nj) = index.get(j) {
                    out.rows[i].insert(*nj, v.clone());
                }
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix<T> {
        Matrix {
            nrows: rows.len(),
            ncols: self.ncols,
            rows: rows.iter().map(|r| self.rows[*r].clone()).collect(),
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.nrows, other.nrows);
        let mut out = Matrix::zeros(self.nrows, self.ncols + other.ncols);
        for i in 0..self.nrows {
            out.rows[i] = self.rows[i].clone();
            for (j, v) in &other.rows[i] {
                out.rows[i].insert(self.ncols + j, v.clone());
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.ncols, other.ncols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix {
            nrows: self.nrows + other.nrows,
            ncols: self.ncols,
            rows,
        }
    }

    /// Gauss-Jordan reduction. Pivot rows are chosen sparsest-first.
    pub fn rref(&self) -> Rref<T> {
        self.rref_limited(self.ncols)
    }

    /// Gauss-Jordan reduction that only pivots on columns `< pivot_limit`.
    fn rref_limited(&self, pivot_limit: usize) -> Rref<T> {
        let mut rows: Vec<BTreeMap<usize, T>> =
            self.rows.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_limit.min(self.ncols) {
            if r >= rows.len() {
                break;
            }
            let best = (r..rows.len())
                .filter(|&i| rows[i].contains_key(&c))
                .min_by_key(|&i| rows[i].len());
            let Some(p) = best else { continue };
            rows.swap(r, p);
            let inv = T::one() / rows[r][&c].clone();
            for v in rows[r].values_mut() {
                *v = v.clone() * inv.clone();
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r {
                    continue;
                }
                if let Some(a) = row.get(&c).cloned() {
                    axpy(row, &pivot_row, &a);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.retain(|row| !row.is_empty());
        Rref {
            rows,
            pivots,
            ncols: self.ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let rref = self.rref();
        let pivot_set: BTreeMap<usize, usize> =
            rref.pivots.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        (0..self.ncols)
            .filter(|c| !pivot_set.contains_key(c))
            .map(|free| {
                let mut v = vec![T::zero(); self.ncols];
                v[free] = T::one();
                for (k, pc) in rref.pivots.iter().enumerate() {
                    if let Some(a) = rref.rows[k].get(&free) {
                        v[*pc] = -a.clone();
                    }
                }
                v
            })
            .collect()
    }

    /// Particular solution of `self * x = b` with free variables set to zero.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.nrows);
        let rhs = Matrix::from_columns(self.nrows, &[b.to_vec()]);
        let aug = self.hcat(&rhs);
        let rref = aug.rref_limited(self.ncols);
        let mut x = vec![T::zero(); self.ncols];
        for row in &rref.rows {
            let lead = *row.keys().next().expect("nonempty row");
            if lead == self.ncols {
                return None;
            }
        }
        for (k, pc) in rref.pivots.iter().enumerate() {
            x[*pc] = rref.rows[k].get(&self.ncols).cloned().unwrap_or_else(T::zero);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let aug = self.hcat(&Matrix::identity(n));
        let rref = aug.rref_limited(n);
        if rref.pivots.len() != n || rref.pivots.iter().enumerate().any(|(k, c)| k != *c) {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, row) in rref.rows.iter().enumerate() {
            for (j, v) in row.range(n..) {
                inv.rows[i].insert(j - n, v.clone());
            }
        }
        Some(inv)
    }

    /// Indices of a maximal set of linearly independent columns, greedy in order.
    pub fn independent_columns(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

fn axpy<T: Field>(row: &mut BTreeMap<usize, T>, pivot_row: &BTreeMap<usize, T>, a: &T) {
    for (j, pv) in pivot_row {
        let delta = a.clone() * pv.clone();
        match row.get_mut(j) {
            Some(x) => {
                *x = x.clone() - delta;
                if x.is_zero() {
                    row.remove(j);
                }
            }
            None => {
                row.insert(*j, -delta);
            }
        }
    }
}

/// Scalars whose rows can be scaled into an integral domain with exact division.
pub trait FractionFree: Field {
    type Ring: Clone + PartialEq + Debug + Num;
    fn integral_row(row: &[Self]) -> Vec<Self::Ring>;
    fn from_ring(r: Self::Ring) -> Self;
    /// Divides a row by the integer content of its entries.
    fn remove_content(row: &mut BTreeMap<usize, Self::Ring>);
}

impl FractionFree for Rational {
    type Ring = BigInt;

    fn integral_row(row: &[Self]) -> Vec<BigInt> {
        let l = denominator_lcm(row.iter());
        row.iter()
            .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
            .collect()
    }

    fn from_ring(r: BigInt) -> Self {
        Rational::from_integer(r)
    }

    fn remove_content(row: &mut BTreeMap<usize, BigInt>) {
        let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
        if g > BigInt::one() {
            for v in row.values_mut() {
                *v = &*v / &g;
            }
        }
    }
}

impl FractionFree for GaussianRational {
    type Ring = Complex<BigInt>;

    fn integral_row(row: &[Self]) -> Vec<Complex<BigInt>> {
        let l = denominator_lcm(row.iter().flat_map(|z| [&z.re, &z.im]));
        let lr = Rational::from_integer(l);
        row.iter()
            .map(|z| {
                Complex::new(
                    (&z.re * &lr).to_integer(),
                    (&z.im * &lr).to_integer(),
                )
            })
            .collect()
    }

    fn from_ring(r: Complex<BigInt>) -> Self {
        Complex::new(Rational::from_integer(r.re), Rational::from_integer(r.im))
    }

    fn remove_content(row: &mut BTreeMap<usize, Complex<BigInt>>) {
        let g = row
            .values()
            .flat_map(|z| [&z.re, &z.im])
            .fold(BigInt::zero(), |g, v| g.gcd(v));
        if g > BigInt::one() {
            for z in row.values_mut() {
                z.re = &z.re / &g;
                z.im = &z.im / &g;
            }
        }
    }
}

/// Bareiss fraction-free elimination on a dense integral matrix, in place.
/// Returns the rank and the last pivot (the determinant up to sign when the
/// matrix is square and of full rank), plus the row-swap parity.
fn bareiss<R: Clone + PartialEq + Num>(m: &mut [Vec<R>]) -> (usize, R, bool) {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = R::one();
    let mut r = 0;
    let mut odd_swaps = false;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            odd_swaps = !odd_swaps;
        }
        let pivot = m[r][c].clone();
        for i in (r + 1)..nrows {
            let lead = m[i][c].clone();
            for j in (c + 1)..ncols {
                let v = pivot.clone() * m[i][j].clone() - lead.clone() * m[r][j].clone();
                m[i][j] = v / prev.clone();
            }
            m[i][c] = R::zero();
        }
        // Rows above the next pivot that were skipped still need the division
        // invariant; columns left of c are already zero below r.
        prev = pivot;
        r += 1;
    }
    (r, prev, odd_swaps)
}

/// Rank via fraction-free elimination over the integral ring.
///
/// Rows stay sparse. Each update is `p·row − a·pivot_row` followed by removal
/// of the row's integer content, so entries stay integral and small; the
/// pivot row is the sparsest candidate in each column.
pub fn fraction_free_rank<T: FractionFree>(m: &Matrix<T>) -> usize {
    let mut rows: Vec<BTreeMap<usize, T::Ring>> = m
        .rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| {
            let values: Vec<T> = r.values().cloned().collect();
            let mut row: BTreeMap<usize, T::Ring> = r.keys().copied().zip(T::integral_row(&values)).collect();
            T::remove_content(&mut row);
            row
        })
        .collect();
    let mut rank = 0;
    for c in 0..m.ncols {
        if rank == rows.len() {
            break;
        }
        let Some(best) = (rank..rows.len())
            .filter(|&i| rows[i].contains_key(&c))
            .min_by_key(|&i| rows[i].len())
        else {
            continue;
        };
        rows.swap(rank, best);
        let pivot_row = rows[rank].clone();
        let p = pivot_row[&c].clone();
        let mut i = rank + 1;
        while i < rows.len() {
            if let Some(a) = rows[i].get(&c).cloned() {
                let mut next: BTreeMap<usize, T::Ring> = BTreeMap::new();
                for (j, v) in &rows[i] {
                    next.insert(*j, p.clone() * v.clone());
                }
                for (j, v) in &pivot_row {
                    let d = a.clone() * v.clone();
                    let e = next.entry(*j).or_insert_with(T::Ring::zero);
                    *e = e.clone() - d;
                }
                next.retain(|_, v| !v.is_zero());
                T::remove_content(&mut next);
                if next.is_empty() {
                    rows.swap_remove(i);
                    continue;
                }
                rows[i] = next;
            }
            i += 1;
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix via fraction-free elimination.
pub fn fraction_free_det<T: FractionFree>(m: &Matrix<T>) -> T {
    assert_eq!(m.nrows, m.ncols, "determinant of a non-square matrix");
    let n = m.nrows;
    if n == 0 {
        return T::one();
    }
    // det(M) = det(diag(l_i) M) / prod(l_i); scale each row separately.
    let mut scale = T::one();
    let mut dense: Vec<Vec<T::Ring>> = Vec::with_capacity(n);
    for row in m.to_dense() {
        let ints = T::integral_row(&row);
        // find the factor used: pick any nonzero entry and compare
        let factor = row
            .iter()
            .zip(&ints)
            .find(|(v, _)| !v.is_zero())
            .map(|(v, i)| T::from_ring(i.clone()) / v.clone())
            .unwrap_or_else(T::one);
        scale = scale * factor;
        dense.push(ints);
    }
    let (rank, last, odd) = bareiss(&mut dense);
    if rank < n {
        return T::zero();
    }
    let det = T::from_ring(last) / scale;
    if odd {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{gaussian, int, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize, m: usize, rank: usize) -> Matrix<Rational> {
        // product of n x rank and rank x m integer matrices
        let a: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..rank).map(|_| rat(rng.gen_range(-3..=3), rng.gen_range(1..=3))).collect())
            .collect();
        let b: Vec<Vec<Rational>> = (0..rank)
            .map(|_| (0..m).map(|_| int(rng.gen_range(-3..=3))).collect())
            .collect();
        Matrix::from_dense(&a).mul(&Matrix::from_dense(&b))
    }

    #[test]
    fn rank_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..8);
            let m = rng.gen_range(1..8);
            let r = rng.gen_range(0..=n.min(m));
            let mat = random_matrix(&mut rng, n, m, r);
            assert_eq!(mat.rank(), fraction_free_rank(&mat));
            assert!(mat.rank() <= r);
        }
    }

    #[test]
    fn kernel_is_annihilated() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mat = random_matrix(&mut rng, 4, 7, 3);
            let ker = mat.kernel();
            assert_eq!(ker.len() + mat.rank(), 7);
            for v in ker {
                assert!(mat.mul_vec(&v).iter().all(num_traits::Zero::is_zero));
            }
        }
    }

    #[test]
    fn solve_and_inverse() {
        let a = Matrix::from_dense(&[
            vec![int(2), int(1), int(0)],
            vec![int(0), int(1), int(-1)],
            vec![int(1), int(0), int(3)],
        ]);
        let b = vec![int(1), int(2), int(3)];
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(3));
        assert_eq!(fraction_free_det(&a), int(5));
        let singular = Matrix::from_dense(&[vec![int(1), int(2)], vec![int(2), int(4)]]);
        assert!(singular.inverse().is_none());
        assert!(singular.solve(&[int(1), int(0)]).is_none());
        assert_eq!(fraction_free_det(&singular), int(0));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        fn cofactor(m: &[Vec<Rational>]) -> Rational {
            if m.len() == 1 {
                return m[0][0].clone();
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<Rational>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                        .collect();
                    let s = if j % 2 == 0 { int(1) } else { int(-1) };
                    s * m[0][j].clone() * cofactor(&minor)
                })
                .fold(int(0), |a, b| a + b)
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..6 {
            let dense: Vec<Vec<Rational>> = (0..n)
                .map(|_| (0..n).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect())
                .collect();
            let m = Matrix::from_dense(&dense);
            assert_eq!(fraction_free_det(&m), cofactor(&dense));
        }
    }

    #[test]
    fn gaussian_rank() {
        let i = gaussian(int(0), int(1));
        let one = gaussian(int(1), int(0));
        // rows (1, i) and (i, -1) are dependent over Q(i)
        let m = Matrix::from_dense(&[vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]]);
        assert_eq!(fraction_free_rank(&m), 1);
        assert_eq!(m.rank(), 1);
    }
}
