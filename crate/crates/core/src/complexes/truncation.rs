use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{i_pow, GaussianRational, Rational};
use crate::tensor::{monomials_of_degree, Coefficient, Polynomial, TrigPolynomial};

pub const DEFAULT_MAX_DIM: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    /// Polynomials of bounded total degree on a box around the origin.
    Box { degree_cap: u32 },
    /// Trigonometric polynomials with |k_j| ≤ freq_cap on the torus.
    Torus { freq_cap: u32 },
}

/// Finite slice of a complex. On a box the cap applies at the anchor node and
/// drops by the order of each later edge, so every homogeneous strand is
/// complete; on a torus every node keeps all frequencies up to the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Truncation {
    pub domain: Domain,
    /// Largest allowed dimension of any single node space.
    pub max_dim: usize,
}

impl Truncation {
    pub fn boxed(degree_cap: u32) -> Truncation {
        Truncation {
            domain: Domain::Box { degree_cap },
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    pub fn torus(freq_cap: u32) -> Truncation {
        Truncation {
            domain: Domain::Torus { freq_cap },
            max_dim: DEFAULT_MAX_DIM,
        }
    }

    pub fn with_max_dim(self, max_dim: usize) -> Truncation {
        Truncation { max_dim, ..self }
    }
}

/// All frequency vectors in `[-cap, cap]^dim`, lexicographically ordered.
pub fn frequencies(dim: usize, cap: u32) -> Vec<Vec<i32>> {
    let cap = cap as i32;
    let mut out: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-cap..=cap).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Coefficient families with a discrete basis suitable for matrix assembly.
pub trait BlockCoefficient: Coefficient {
    type Key: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn basis_function(key: &Self::Key) -> Self;

    /// Coordinates after dividing out the constant phase an operator of the
    /// given derivative order introduces, so that block matrices are rational.
    fn coordinates(&self, order: usize) -> Result<Vec<(Self::Key, Rational)>>;

    fn raw_coordinates(&self) -> Vec<(Self::Key, GaussianRational)>;
}

impl BlockCoefficient for Polynomial {
    type Key = Vec<u32>;

    fn basis_function(key: &Vec<u32>) -> Self {
        Polynomial::monomial(key.clone(), Rational::from_integer(1.into()))
    }

    fn coordinates(&self, _order: usize) -> Result<Vec<(Vec<u32>, Rational)>> {
        Ok(self.terms().iter().map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    fn raw_coordinates(&self) -> Vec<(Vec<u32>, GaussianRational)> {
        self.terms()
            .iter()
            .map(|(k, v)| (k.clone(), GaussianRational::new(v.clone(), Rational::from_integer(0.into()))))
            .collect()
    }
}

impl BlockCoefficient for TrigPolynomial {
    type Key = Vec<i32>;

    fn basis_function(key: &Vec<i32>) -> Self {
        TrigPolynomial::mode(key.clone(), i_pow(0))
    }

    fn coordinates(&self, order: usize) -> Result<Vec<(Vec<i32>, Rational)>> {
        // an order-k operator multiplies each mode by i^k times a rational
        let phase = i_pow((4 - order % 4) % 4);
        self.modes()
            .iter()
            .map(|(k, a)| {
                let v = a * &phase;
                if !num_traits::Zero::is_zero(&v.im) {
                    return Err(Error::Consistency(format!(
                        "mode {k:?} of an order-{order} image is not a real multiple of i^{order}"
                    )));
                }
                Ok((k.clone(), v.re))
            })
            .collect()
    }

    fn raw_coordinates(&self) -> Vec<(Vec<i32>, GaussianRational)> {
        self.modes().iter().map(|(k, a)| (k.clone(), a.clone())).collect()
    }
}

/// Monomial keys of one homogeneous degree, or none when the degree is negative.
pub fn strand_keys(dim: usize, degree: i64) -> Vec<Vec<u32>> {
    if degree < 0 {
        Vec::new()
    } else {
        monomials_of_degree(dim, degree as u32)
    }
}
