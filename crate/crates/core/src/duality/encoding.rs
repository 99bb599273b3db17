use serde::Serialize;

use crate::document::{ser_matrix, ser_rationals};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Bijective encoding π of a finite space: the charge functional followed by
/// selected coordinate functionals.
#[derive(Clone, Debug, Serialize)]
pub struct EncodingMap {
    #[serde(serialize_with = "ser_rationals")]
    pub charge: Vec<Rational>,
    /// Coordinates used for rows 2…n, in order.
    pub selected: Vec<usize>,
    #[serde(serialize_with = "ser_matrix")]
    pub matrix: Matrix<Rational>,
}

impl EncodingMap {
    pub fn dim(&self) -> usize {
        self.charge.len()
    }

    pub fn apply(&self, coords: &[Rational]) -> Vec<Rational> {
        self.matrix.mul_vec(coords)
    }
}

/// Stacks the charge row on top of coordinate rows taken in order, skipping
/// any coordinate that would make the stack dependent.
pub fn build_encoding(charge: &[Rational]) -> Result<EncodingMap> {
    let n = charge.len();
    if charge.iter().all(num_traits::Zero::is_zero) {
        return Err(Error::DegenerateCharge);
    }
    let mut rows = vec![charge.to_vec()];
    let mut selected = Vec::with_capacity(n.saturating_sub(1));
    for c in 0..n {
        if rows.len() == n {
            break;
        }
        let mut e = vec![Rational::from_integer(0.into()); n];
        e[c] = Rational::from_integer(1.into());
        rows.push(e);
        if Matrix::from_dense(&rows).rank() == rows.len() {
            selected.push(c);
        } else {
            rows.pop();
        }
    }
    let matrix = Matrix::from_dense(&rows);
    if rows.len() != n || matrix.rank() != n {
        return Err(Error::Consistency("encoding stack is singular".into()));
    }
    Ok(EncodingMap {
        charge: charge.to_vec(),
        selected,
        matrix,
    })
}
