use rayon::prelude::*;
use serde::Serialize;

use super::quadrature::pairwise_sum;
use crate::error::{Error, Result};

/// Symmetric tensor field E^{ij} sampled on an n³ grid over [−L, L]³.
#[derive(Clone, Debug)]
pub struct TensorGrid {
    pub n: usize,
    pub half_width: f64,
    /// Six components (xx, yy, zz, xy, xz, yz) per point, x-major order.
    pub values: Vec<[f64; 6]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FractonMoments {
    pub n: usize,
    pub spacing: f64,
    /// ∫ρ with ρ = ∂_i∂_j E^{ij}.
    pub charge: f64,
    /// ∫ x^k ρ.
    pub dipole: [f64; 3],
    /// max |E^{ij}|.
    pub field_norm: f64,
    /// The support of E reaches within two cells of the boundary.
    pub boundary_warning: bool,
}

impl FractonMoments {
    /// Largest moment relative to the field norm.
    pub fn relative(&self) -> f64 {
        let m = self.dipole.iter().fold(self.charge.abs(), |a, d| a.max(d.abs()));
        if self.field_norm > 0.0 { m / self.field_norm } else { m }
    }
}

fn comp(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 1) => 3,
        (0, 2) => 4,
        _ => 5,
    }
}

impl TensorGrid {
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.spacing()
    }

    fn index(&self, p: [usize; 3]) -> usize {
        (p[0] * self.n + p[1]) * self.n + p[2]
    }

    fn at(&self, p: [usize; 3], c: usize) -> f64 {
        self.values[self.index(p)][c]
    }

    /// Samples `f(x, y, z)` on the grid.
    pub fn sample(n: usize, half_width: f64, f: impl Fn([f64; 3]) -> [f64; 6] + Sync) -> Result<TensorGrid> {
        if n < 5 {
            return Err(Error::Domain(format!("grid needs at least 5 points per axis, got {n}")));
        }
        let h = 2.0 * half_width / (n - 1) as f64;
        let values = (0..n * n * n)
            .into_par_iter()
            .map(|idx| {
                let (a, b, c) = (idx / (n * n), (idx / n) % n, idx % n);
                f([-half_width + a as f64 * h, -half_width + b as f64 * h, -half_width + c as f64 * h])
            })
            .collect();
        Ok(TensorGrid { n, half_width, values })
    }

    /// ∂_i∂_j E^{ij} by central differences at an interior point.
    fn divergence2(&self, p: [usize; 3]) -> f64 {
        let h = self.spacing();
        let shift = |p: [usize; 3], axis: usize, d: isize| {
            let mut q = p;
            q[axis] = (q[axis] as isize + d) as usize;
            q
        };
        let mut total = 0.0;
        for i in 0..3 {
            let c = comp(i, i);
            total += (self.at(shift(p, i, 1), c) - 2.0 * self.at(p, c) + self.at(shift(p, i, -1), c)) / (h * h);
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let c = comp(i, j);
                let pp = self.at(shift(shift(p, i, 1), j, 1), c);
                let pm = self.at(shift(shift(p, i, 1), j, -1), c);
                let mp = self.at(shift(shift(p, i, -1), j, 1), c);
                let mm = self.at(shift(shift(p, i, -1), j, -1), c);
                // off-diagonal pair counted twice in ∂_i∂_j E^{ij}
                total += 2.0 * (pp - pm - mp + mm) / (4.0 * h * h);
            }
        }
        total
    }
}

/// Total charge and dipole moment of ρ = ∂_i∂_j E^{ij} by Riemann sums over
/// the interior points.
pub fn fracton_moments(e: &TensorGrid) -> Result<FractonMoments> {
    let n = e.n;
    if e.values.len() != n * n * n {
        return Err(Error::Domain(format!("{} samples on an {n}³ grid", e.values.len())));
    }
    let h = e.spacing();
    let vol = h * h * h;
    let interior: Vec<[usize; 3]> = (1..n - 1)
        .flat_map(|a| (1..n - 1).flat_map(move |b| (1..n - 1).map(move |c| [a, b, c])))
        .collect();
    let rho: Vec<f64> = interior.par_iter().map(|p| e.divergence2(*p)).collect();
    let charge = pairwise_sum(&rho.iter().map(|r| r * vol).collect::<Vec<_>>());
    let mut dipole = [0.0; 3];
    for (k, d) in dipole.iter_mut().enumerate() {
        let terms: Vec<f64> = interior.iter().zip(&rho).map(|(p, r)| e.coordinate(p[k]) * r * vol).collect();
        *d = pairwise_sum(&terms);
    }
    let field_norm = e.values.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    let near_boundary = |i: usize| i < 2 || i + 2 >= n;
    let boundary_warning = (0..n * n * n).any(|idx| {
        let p = [idx / (n * n), (idx / n) % n, idx % n];
        p.iter().any(|i| near_boundary(*i)) && e.values[idx].iter().any(|v| *v != 0.0)
    });
    Ok(FractonMoments {
        n,
        spacing: h,
        charge,
        dipole,
        field_norm,
        boundary_warning,
    })
}

/// Smooth compactly supported bump exp(1 − 1/(1 − r²/a²)), peak value 1.
pub fn bump(x: [f64; 3], center: [f64; 3], radius: f64) -> f64 {
    let r2: f64 = x.iter().zip(&center).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / (radius * radius);
    if r2 >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - r2)).exp()
    }
}

/// E^{ij} = b(x) δ^{ij} + ½ b(x) x_i x_j for an off-center bump inside [−1, 1]³.
pub fn bump_field(n: usize) -> Result<TensorGrid> {
    let center = [0.1, -0.05, 0.08];
    TensorGrid::sample(n, 1.0, move |x| {
        let b = bump(x, center, 0.6);
        let s = 0.5 * b;
        [b + s * x[0] * x[0], b + s * x[1] * x[1], b + s * x[2] * x[2], s * x[0] * x[1], s * x[0] * x[2], s * x[1] * x[2]]
    })
}

/// A field whose support is cut off by the boundary of the box.
pub fn boundary_field(n: usize) -> Result<TensorGrid> {
    TensorGrid::sample(n, 1.0, |x| {
        let b = bump(x, [0.9, 0.0, 0.0], 0.6);
        [b, 0.0, 0.0, 0.0, 0.0, 0.0]
    })
}
