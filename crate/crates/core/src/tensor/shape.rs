use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported spacetime dimension (blocks are stored as bit masks).
pub const MAX_DIM: usize = 16;

/// A strictly increasing list of spacetime indices, stored as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block(u32);

impl Block {
    pub const EMPTY: Block = Block(0);

    /// Builds a block from indices that must be strictly increasing.
    pub fn from_sorted(indices: &[usize]) -> Result<Block> {
        let mut mask = 0u32;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i >= MAX_DIM {
                return Err(Error::Domain(format!("index {i} exceeds supported dimension")));
            }
            if last.is_some_and(|l| l >= i) {
                return Err(Error::Domain(format!("block {indices:?} is not strictly increasing")));
            }
            last = Some(i);
            mask |= 1 << i;
        }
        Ok(Block(mask))
    }

    pub fn from_mask(mask: u32) -> Block {
        Block(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.contains(*i)).collect()
    }

    /// Number of indices in the block strictly below `i`.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// `dx_i ∧ dx_I` written in canonical order: the new block and the sign.
    pub fn wedge_front(self, i: usize) -> Option<(Block, bool)> {
        if self.contains(i) {
            return None;
        }
        let negative = self.count_below(i) % 2 == 1;
        Some((Block(self.0 | (1 << i)), negative))
    }

    pub fn complement(self, dim: usize) -> Block {
        Block(!self.0 & ((1u32 << dim) - 1))
    }

    /// All blocks of the given degree, in lexicographic order of index lists.
    pub fn all_of_degree(dim: usize, degree: usize) -> Vec<Block> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(degree);
        fn rec(dim: usize, degree: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Block>) {
            if current.len() == degree {
                out.push(Block(current.iter().fold(0, |m, i| m | (1 << i))));
                return;
            }
            for i in start..dim {
                current.push(i);
                rec(dim, degree, i + 1, current, out);
                current.pop();
            }
        }
        rec(dim, degree, 0, &mut current, &mut out);
        out
    }
}

impl fmt::Debug for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// Signature of an N-multi-form in dimension D.
///
/// Signature entries are column heights of the Young diagram; rows are the
/// symmetrized direction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    dim: usize,
    signature: Vec<usize>,
}

impl Shape {
    pub fn new(dim: usize, signature: Vec<usize>) -> Result<Shape> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Shape(format!("dimension {dim} outside 1..={MAX_DIM}")));
        }
        if signature.is_empty() {
            return Err(Error::Shape("signature must have at least one slot".into()));
        }
        if let Some(p) = signature.iter().find(|p| **p > dim) {
            return Err(Error::Shape(format!("degree {p} exceeds dimension {dim}")));
        }
        Ok(Shape { dim, signature })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of slots N.
    pub fn arity(&self) -> usize {
        self.signature.len()
    }

    pub fn signature(&self) -> &[usize] {
        &self.signature
    }

    pub fn degree(&self, slot: usize) -> usize {
        self.signature[slot]
    }

    pub fn total_degree(&self) -> usize {
        self.signature.iter().sum()
    }

    pub fn is_young(&self) -> bool {
        self.signature.windows(2).all(|w| w[0] >= w[1])
    }

    /// The Young label of the principal subspace, which is the signature
    /// itself when it is weakly decreasing.
    pub fn principal_label(&self) -> Result<Vec<usize>> {
        if self.is_young() {
            Ok(self.signature.clone())
        } else {
            Err(Error::Shape(format!(
                "signature {:?} is not weakly decreasing and has no Young diagram",
                self.signature
            )))
        }
    }

    pub fn with_degree(&self, slot: usize, degree: usize) -> Result<Shape> {
        let mut sig = self.signature.clone();
        sig[slot] = degree;
        Shape::new(self.dim, sig)
    }

    /// Shape after raising the first `k` slots by one; `None` if any of them is at top degree.
    pub fn raised(&self, k: usize) -> Option<Shape> {
        let mut sig = self.signature.clone();
        for p in sig.iter_mut().take(k) {
            if *p == self.dim {
                return None;
            }
            *p += 1;
        }
        Some(Shape { dim: self.dim, signature: sig })
    }

    /// Dimension of the constant-coefficient space, the product of binomials.
    pub fn block_count(&self) -> usize {
        self.signature.iter().map(|p| binomial(self.dim, *p)).product()
    }

    pub fn basis(&self) -> Arc<ShapeBasis> {
        static CACHE: Lazy<Mutex<HashMap<Shape, Arc<ShapeBasis>>>> =
            Lazy::new(|| Mutex::new(HashMap::new()));
        if let Some(b) = CACHE.lock().expect("basis cache poisoned").get(self) {
            return b.clone();
        }
        let built = Arc::new(ShapeBasis::build(self));
        CACHE
            .lock()
            .expect("basis cache poisoned")
            .entry(self.clone())
            .or_insert(built)
            .clone()
    }
}

impl fmt::Debug for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}{:?}", self.dim, self.signature)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signature.iter().map(|p| p.to_string()).collect();
        write!(f, "Ω^{{{}}}", parts.join("⊗"))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumeration of canonical block tuples for a shape.
#[derive(Debug)]
pub struct ShapeBasis {
    tuples: Vec<Vec<Block>>,
    index: HashMap<Vec<Block>, usize>,
}

impl ShapeBasis {
    fn build(shape: &Shape) -> ShapeBasis {
        let mut tuples: Vec<Vec<Block>> = vec![Vec::new()];
        for &p in shape.signature() {
            let blocks = Block::all_of_degree(shape.dim(), p);
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    blocks.iter().map(move |b| {
                        let mut t = t.clone();
                        t.push(*b);
                        t
                    })
                })
                .collect();
        }
        let index = tuples.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        ShapeBasis { tuples, index }
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[Block] {
        &self.tuples[i]
    }

    pub fn tuples(&self) -> &[Vec<Block>] {
        &self.tuples
    }

    pub fn index_of(&self, blocks: &[Block]) -> Option<usize> {
        self.index.get(blocks).copied()
    }
}

/// Sorts a raw index list into a canonical block, returning whether the
/// sorting permutation was odd. Repeated indices give `Ok(None)`.
pub fn canonical_block(dim: usize, raw: &[usize]) -> Result<Option<(Block, bool)>> {
    if let Some(i) = raw.iter().find(|i| **i >= dim) {
        return Err(Error::Domain(format!("index {i} outside [0, {}]", dim - 1)));
    }
    let mut mask = 0u32;
    let mut inversions = 0usize;
    for &i in raw {
        if mask & (1 << i) != 0 {
            return Ok(None);
        }
        // earlier indices larger than i each contribute one inversion
        inversions += (mask >> i).count_ones() as usize;
        mask |= 1 << i;
    }
    Ok(Some((Block(mask), inversions % 2 == 1)))
}

/// Canonicalizes a tuple of raw index lists. Returns the canonical blocks and
/// whether the combined sign is negative, or `None` for a vanishing term.
pub fn canonicalize(dim: usize, raw: &[Vec<usize>]) -> Result<Option<(Vec<Block>, bool)>> {
    let mut blocks = Vec::with_capacity(raw.len());
    let mut negative = false;
    let mut vanishes = false;
    for r in raw {
        match canonical_block(dim, r)? {
            Some((b, neg)) => {
                blocks.push(b);
                negative ^= neg;
            }
            None => vanishes = true,
        }
    }
    Ok(if vanishes { None } else { Some((blocks, negative)) })
}
