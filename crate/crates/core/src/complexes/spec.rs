use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::Shape;

/// A (k_1,…,k_{N-1})-augmented N-de Rham-like complex: D+1 node shapes and
/// the order k of the differential δ^(k) on each of its D edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSpec {
    pub dim: usize,
    pub arity: usize,
    pub augmentation: Vec<usize>,
    pub nodes: Vec<Shape>,
    pub edges: Vec<usize>,
}

pub fn build_complex(dim: usize, arity: usize, augmentation: &[usize]) -> Result<ComplexSpec> {
    if arity == 0 {
        return Err(Error::Shape("a complex needs at least one slot".into()));
    }
    if augmentation.len() + 1 != arity {
        return Err(Error::Precondition(format!(
            "an {arity}-multi-form complex takes {} augmentation entries, got {}",
            arity - 1,
            augmentation.len()
        )));
    }
    let prefix: usize = augmentation.iter().sum();
    if prefix > dim {
        return Err(Error::Precondition(format!(
            "augmentation length {prefix} exceeds the complex length {dim}"
        )));
    }
    let mut edges = Vec::with_capacity(dim);
    for (i, k) in augmentation.iter().enumerate() {
        edges.extend(std::iter::repeat_n(i + 1, *k));
    }
    edges.extend(std::iter::repeat_n(arity, dim - prefix));
    let mut nodes = vec![Shape::new(dim, vec![0; arity])?];
    for &k in &edges {
        let next = nodes
            .last()
            .and_then(|s| s.raised(k))
            .expect("augmented complexes stay within top degree");
        nodes.push(next);
    }
    Ok(ComplexSpec {
        dim,
        arity,
        augmentation: augmentation.to_vec(),
        nodes,
        edges,
    })
}

impl ComplexSpec {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Sum of edge orders before node `j`: the polynomial degree lost on the way there.
    pub fn cumulative_order(&self, j: usize) -> usize {
        self.edges[..j].iter().sum()
    }

    /// Order of the differential whose kernel defines the cocycles at node `j`.
    ///
    /// Node 0 uses its outgoing edge. Elsewhere a node with i nonzero slots
    /// uses δ^(i+1), capped at δ^(N).
    pub fn closure_order(&self, j: usize) -> usize {
        if j == 0 {
            return self.edges.first().copied().unwrap_or(self.arity);
        }
        let nonzero = self.nodes[j].signature().iter().filter(|p| **p > 0).count();
        (nonzero + 1).min(self.arity)
    }

    /// Position of a shape in this complex, if it is one of the nodes.
    pub fn position_of(&self, shape: &Shape) -> Option<usize> {
        self.nodes.iter().position(|s| s == shape)
    }
}

/// The augmentation whose complex passes through the shape q:
/// (q_1−q_2, …, q_{N−1}−q_N).
pub fn augmentation_for(shape: &Shape) -> Result<Vec<usize>> {
    shape.principal_label()?;
    let sig = shape.signature();
    Ok(sig.windows(2).map(|w| w[0] - w[1]).collect())
}
