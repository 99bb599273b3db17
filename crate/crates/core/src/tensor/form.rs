use std::collections::BTreeMap;

use num_traits::One;

use super::coefficient::Coefficient;
use super::shape::{canonicalize, Block, Shape};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// An element of Ω^{p_1⊗…⊗p_N} with exact coefficients, stored sparsely by
/// canonical block tuple.
#[derive(Clone, PartialEq, Debug)]
pub struct MultiForm<C> {
    shape: Shape,
    terms: BTreeMap<Vec<Block>, C>,
}

impl<C: Coefficient> MultiForm<C> {
    pub fn zero(shape: Shape) -> Self {
        MultiForm {
            shape,
            terms: BTreeMap::new(),
        }
    }

    /// Assembles a form from raw (possibly unsorted) index lists.
    pub fn from_raw_terms(shape: Shape, raw: Vec<(Vec<Vec<usize>>, C)>) -> Result<Self> {
        let mut out = MultiForm::zero(shape);
        for (blocks, c) in raw {
            out.add_raw(&blocks, &c)?;
        }
        Ok(out)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Block>, C> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blocks: &[Block]) -> C {
        self.terms.get(blocks).cloned().unwrap_or_else(C::vanishing)
    }

    /// Adds `c` times the raw index tuple after canonicalization.
    pub fn add_raw(&mut self, raw: &[Vec<usize>], c: &C) -> Result<()> {
        if raw.len() != self.shape.arity() {
            return Err(Error::Domain(format!(
                "term has {} blocks, shape has {} slots",
                raw.len(),
                self.shape.arity()
            )));
        }
        for (slot, r) in raw.iter().enumerate() {
            if r.len() != self.shape.degree(slot) {
                return Err(Error::Domain(format!(
                    "block {r:?} in slot {} has length {}, expected degree {}",
                    slot + 1,
                    r.len(),
                    self.shape.degree(slot)
                )));
            }
        }
        if let Some((blocks, negative)) = canonicalize(self.shape.dim(), raw)? {
            let s = if negative { -Rational::one() } else { Rational::one() };
            self.add_term(blocks, c, &s);
        }
        Ok(())
    }

    /// Adds `s * c` to the canonical tuple `blocks`.
    pub fn add_term(&mut self, blocks: Vec<Block>, c: &C, s: &Rational) {
        debug_assert!(blocks
            .iter()
            .zip(self.shape.signature())
            .all(|(b, p)| b.degree() == *p));
        match self.terms.get_mut(&blocks) {
            Some(existing) => {
                existing.add_scaled(c, s);
                if existing.vanishes() {
                    self.terms.remove(&blocks);
                }
            }
            None => {
                let v = c.scaled(s);
                if !v.vanishes() {
                    self.terms.insert(blocks, v);
                }
            }
        }
    }

    pub fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Domain(format!(
                "shape mismatch: {:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &Self, s: &Rational) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(b.clone(), c, s);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &Rational::one())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &int(-1))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = MultiForm::zero(self.shape.clone());
        for (b, c) in &self.terms {
            out.add_term(b.clone(), c, s);
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> MultiForm<D> {
        let mut terms = BTreeMap::new();
        for (b, c) in &self.terms {
            let v = f(c);
            if !v.vanishes() {
                terms.insert(b.clone(), v);
            }
        }
        MultiForm {
            shape: self.shape.clone(),
            terms,
        }
    }

    /// Short human-readable description, used in error messages.
    pub fn describe(&self) -> String {
        match self.terms.iter().next() {
            None => format!("zero form in {}", self.shape),
            Some((b, c)) => format!(
                "{} nonzero term(s) in {}, first {:?} with coefficient {:?}",
                self.terms.len(),
                self.shape,
                b,
                c
            ),
        }
    }

    /// Builds a form directly from canonical terms.
    pub fn from_canonical(shape: Shape, terms: impl IntoIterator<Item = (Vec<Block>, C)>) -> Self {
        let mut out = MultiForm::zero(shape);
        for (b, c) in terms {
            out.add_term(b, &c, &Rational::one());
        }
        out
    }
}
