use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_RESOLUTION: usize = 24;

/// Sum in a fixed binary tree, independent of thread count.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n if n <= 8 => values.iter().sum(),
        n => {
            let (a, b) = values.split_at(n / 2);
            pairwise_sum(a) + pairwise_sum(b)
        }
    }
}

/// Area of the unit sphere S^m in R^{m+1}.
pub fn sphere_area(m: usize) -> f64 {
    let k = (m + 1) as f64;
    2.0 * PI.powf(k / 2.0) / libm::tgamma(k / 2.0)
}

/// Product quadrature on S^m: Gauss–Legendre in the colatitudes θ_1…θ_{m−1}
/// with sin^k weights, trapezoid in the azimuth φ.
#[derive(Clone, Debug, Serialize)]
pub struct SphereQuadrature {
    /// Sphere dimension m = D − 2.
    pub m: usize,
    pub resolution: usize,
    /// Unit vectors in R^{m+1}.
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    /// Orthonormal tangent frame (e_θ1,…,e_θ{m−1}, e_φ) at each node.
    pub frames: Vec<Vec<Vec<f64>>>,
}

impl SphereQuadrature {
    pub fn new(m: usize, resolution: usize) -> Result<SphereQuadrature> {
        if m == 0 {
            return Err(Error::Domain("sphere dimension must be at least 1".into()));
        }
        let res = NonZeroUsize::new(resolution)
            .ok_or_else(|| Error::Domain("quadrature resolution must be positive".into()))?;
        let rule = GaussLegendre::new(res);
        let colat: Vec<(f64, f64)> = rule
            .as_node_weight_pairs()
            .iter()
            .map(|(x, w)| (0.5 * PI * (x + 1.0), 0.5 * PI * w))
            .collect();
        let n_phi = 2 * resolution;
        let d_phi = 2.0 * PI / n_phi as f64;

        let mut angle_sets: Vec<(Vec<f64>, f64)> = vec![(Vec::new(), 1.0)];
        for j in 0..m - 1 {
            let power = (m - 1 - j) as i32;
            angle_sets = angle_sets
                .into_iter()
                .flat_map(|(angles, w)| {
                    colat.iter().map(move |(t, wt)| {
                        let mut a = angles.clone();
                        a.push(*t);
                        (a, w * wt * t.sin().powi(power))
                    })
                })
                .collect();
        }
        let mut nodes = Vec::new();
        let mut weights = Vec::new();
        let mut frames = Vec::new();
        for (angles, w) in &angle_sets {
            for k in 0..n_phi {
                let phi = k as f64 * d_phi;
                let mut a = angles.clone();
                a.push(phi);
                nodes.push(embed(&a));
                frames.push(frame(&a));
                weights.push(w * d_phi);
            }
        }
        Ok(SphereQuadrature {
            m,
            resolution,
            nodes,
            weights,
            frames,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// ∫ f dΩ with an ordered pairwise sum.
    pub fn integrate(&self, values: &[f64]) -> Result<f64> {
        if values.len() != self.len() {
            return Err(Error::Domain(format!(
                "{} samples on a quadrature with {} nodes",
                values.len(),
                self.len()
            )));
        }
        let terms: Vec<f64> = values.iter().zip(&self.weights).map(|(v, w)| v * w).collect();
        Ok(pairwise_sum(&terms))
    }

    pub fn area(&self) -> f64 {
        pairwise_sum(&self.weights)
    }
}

/// Point of S^m for angles (θ_1,…,θ_{m−1}, φ).
fn embed(angles: &[f64]) -> Vec<f64> {
    let m = angles.len();
    let mut x = Vec::with_capacity(m + 1);
    let mut s = 1.0;
    for t in &angles[..m - 1] {
        x.push(s * t.cos());
        s *= t.sin();
    }
    let phi = angles[m - 1];
    x.push(s * phi.cos());
    x.push(s * phi.sin());
    x
}

fn frame(angles: &[f64]) -> Vec<Vec<f64>> {
    let m = angles.len();
    let mut out = Vec::with_capacity(m);
    for j in 0..m - 1 {
        let mut e = vec![0.0; m + 1];
        e[j] = -angles[j].sin();
        let tail = embed(&angles[j + 1..]);
        for (i, y) in tail.iter().enumerate() {
            e[j + 1 + i] = angles[j].cos() * y;
        }
        out.push(e);
    }
    let phi = angles[m - 1];
    let mut e = vec![0.0; m + 1];
    e[m - 1] = -phi.sin();
    e[m] = phi.cos();
    out.push(e);
    out
}

/// Determinant by partial-pivot elimination.
pub fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))
            .unwrap_or(c);
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for i in (c + 1)..n {
            let f = a[i][c] / a[c][c];
            for j in c..n {
                a[i][j] -= f * a[c][j];
            }
        }
    }
    det
}
