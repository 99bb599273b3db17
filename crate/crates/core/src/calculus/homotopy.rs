//! Constructive inverse of the de Rham-like differential on a box.
//!
//! The descent peels off, slot by slot, the terms carrying the largest index
//! m_i in every slot and integrates their coefficients from the origin along
//! x_{m_1}, …, x_{m_k}. Whatever the descent leaves behind is completed by an
//! exact linear solve on each homogeneous polynomial degree, and the final
//! potential is always checked against the input.

use std::collections::{BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::differential::delta_k;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rational::{int, Rational};
use crate::tensor::{monomials_of_degree, project, Block, MultiForm, Polynomial, Shape};

const DESCENT_STEP_CAP: usize = 256;

#[derive(Clone, Debug)]
pub struct HomotopyWitness {
    pub potential: MultiForm<Polynomial>,
    pub target: MultiForm<Polynomial>,
    /// Order k of the differential δ^(k) with δ^(k)(potential) = target.
    pub order: usize,
    pub descent_steps: usize,
    /// True when a residual left by the descent was solved for directly.
    pub completed_by_solve: bool,
}

/// Number of leading nonzero slots; the signature must vanish after them.
fn nonzero_prefix(shape: &Shape) -> Result<usize> {
    shape.principal_label()?;
    Ok(shape.signature().iter().take_while(|p| **p > 0).count())
}

/// Returns a potential S with δ^(k) S = T, where k is the number of nonzero
/// slots of T (k = N on the main spine).
pub fn poincare_homotopy(t: &MultiForm<Polynomial>) -> Result<HomotopyWitness> {
    let shape = t.shape().clone();
    let n = shape.arity();
    let k = nonzero_prefix(&shape)?;
    if k == 0 {
        return Err(Error::Precondition(
            "the homotopy needs at least one slot of positive degree".into(),
        ));
    }
    let closure = if k < n { k + 1 } else { n };
    if let Some(r) = delta_k(t, closure)? {
        if !r.is_zero() {
            return Err(Error::NotClosed {
                residual: r.describe(),
            });
        }
    }
    let mut sig = shape.signature().to_vec();
    for p in sig.iter_mut().take(k) {
        *p -= 1;
    }
    let potential_shape = Shape::new(shape.dim(), sig)?;

    let mut potential = MultiForm::zero(potential_shape.clone());
    let mut residual = t.clone();
    let mut steps = 0;
    while !residual.is_zero() && steps < DESCENT_STEP_CAP {
        let Some(c) = descent_step(&residual, &potential_shape, k)? else {
            break;
        };
        let dc = delta_k(&c, k)?.unwrap_or_else(|| MultiForm::zero(shape.clone()));
        let next = residual.sub(&dc)?;
        steps += 1;
        if next == residual {
            break;
        }
        residual = next;
        potential = potential.add(&c)?;
    }

    let completed_by_solve = !residual.is_zero();
    if completed_by_solve {
        let extra = solve_by_degree(&residual, &potential_shape, k)?;
        potential = potential.add(&extra)?;
    }

    let check = delta_k(&potential, k)?.unwrap_or_else(|| MultiForm::zero(shape.clone()));
    if &check != t {
        return Err(Error::Consistency(format!(
            "homotopy potential does not reproduce its target: {}",
            check.sub(t)?.describe()
        )));
    }
    Ok(HomotopyWitness {
        potential,
        target: t.clone(),
        order: k,
        descent_steps: steps,
        completed_by_solve,
    })
}

/// One descent step: the projected iterated integral C of the terms that
/// carry the largest index in each of the first `k` slots.
fn descent_step(
    r: &MultiForm<Polynomial>,
    potential_shape: &Shape,
    k: usize,
) -> Result<Option<MultiForm<Polynomial>>> {
    let mut m = vec![0usize; k];
    for blocks in r.terms().keys() {
        for (slot, b) in blocks.iter().take(k).enumerate() {
            if let Some(top) = b.indices().last() {
                m[slot] = m[slot].max(*top);
            }
        }
    }
    let mut c = MultiForm::zero(potential_shape.clone());
    for (blocks, coeff) in r.terms() {
        if !(0..k).all(|slot| blocks[slot].contains(m[slot])) {
            continue;
        }
        let mut reduced: Vec<Block> = blocks.clone();
        let mut odd = false;
        let mut integral = coeff.clone();
        for slot in 0..k {
            let rest = Block::from_mask(blocks[slot].mask() & !(1 << m[slot]));
            // dx_{I∪m} = (-1)^{|I|} dx_m ∧ dx_I when m exceeds every index of I
            odd ^= rest.degree() % 2 == 1;
            reduced[slot] = rest;
            integral = integral.integrate_from_origin(m[slot]);
        }
        let s = if odd { -Rational::one() } else { Rational::one() };
        c.add_term(reduced, &integral, &s);
    }
    if c.is_zero() {
        return Ok(None);
    }
    Ok(Some(project(&c)?))
}

/// Solves δ^(k) S = R exactly, one homogeneous degree of R at a time.
fn solve_by_degree(
    r: &MultiForm<Polynomial>,
    potential_shape: &Shape,
    k: usize,
) -> Result<MultiForm<Polynomial>> {
    let dim = potential_shape.dim();
    let degrees: BTreeSet<u32> = r
        .terms()
        .values()
        .flat_map(|p| p.terms().keys().map(|e| e.iter().sum::<u32>()))
        .collect();
    let basis = potential_shape.basis();
    let mut total = MultiForm::zero(potential_shape.clone());
    for d in degrees {
        let part = r.map_coefficients(|p| p.homogeneous_part(d));
        let monomials = monomials_of_degree(dim, d + k as u32);
        let mut rows: HashMap<(Vec<Block>, Vec<u32>), usize> = HashMap::new();
        let mut columns: Vec<Vec<(usize, Rational)>> = Vec::new();
        let mut unknowns: Vec<(Vec<Block>, Vec<u32>)> = Vec::new();
        for tuple in basis.tuples() {
            for mono in &monomials {
                let e = MultiForm::from_canonical(
                    potential_shape.clone(),
                    [(tuple.clone(), Polynomial::monomial(mono.clone(), int(1)))],
                );
                let Some(img) = delta_k(&e, k)? else { continue };
                let mut col = Vec::new();
                for (blocks, p) in img.terms() {
                    for (exp, v) in p.terms() {
                        let next = rows.len();
                        let row = *rows.entry((blocks.clone(), exp.clone())).or_insert(next);
                        col.push((row, v.clone()));
                    }
                }
                if !col.is_empty() {
                    columns.push(col);
                    unknowns.push((tuple.clone(), mono.clone()));
                }
            }
        }
        let mut rhs_entries = Vec::new();
        for (blocks, p) in part.terms() {
            for (exp, v) in p.terms() {
                let next = rows.len();
                let row = *rows.entry((blocks.clone(), exp.clone())).or_insert(next);
                rhs_entries.push((row, v.clone()));
            }
        }
        let nrows = rows.len();
        let a = Matrix::from_sparse_columns(nrows, &columns);
        let mut b = vec![Rational::zero(); nrows];
        for (row, v) in rhs_entries {
            b[row] += v;
        }
        let Some(x) = a.solve(&b) else {
            return Err(Error::NotExact {
                residual: part.describe(),
            });
        };
        for ((tuple, mono), v) in unknowns.into_iter().zip(x) {
            if !v.is_zero() {
                total.add_term(tuple, &Polynomial::monomial(mono, v), &Rational::one());
            }
        }
    }
    Ok(total)
}
