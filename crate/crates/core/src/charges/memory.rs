use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::quadrature::{SphereQuadrature, DEFAULT_RESOLUTION};
use crate::error::{Error, Result};

/// Samples of the leading radiative data on S^{D−2} × [u_0, u_M].
///
/// Tensors of rank `rank` are stored by components in the orthonormal
/// angular frame of each node, m^rank components with m = D − 2.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NewsProfile {
    #[serde(rename = "D")]
    pub dim: usize,
    pub rank: usize,
    pub resolution: usize,
    pub u: Vec<f64>,
    /// N(u, x): `[u index][node][component]`.
    pub news: Vec<Vec<Vec<f64>>>,
    /// H(u_0, x) and H(u_M, x): `[node][component]`.
    pub field_initial: Vec<Vec<f64>>,
    pub field_final: Vec<Vec<f64>>,
    /// Fall-off exponent (D−2)/2 of the radiative field.
    pub falloff: f64,
}

/// Charge parameter ε(x) sampled at the quadrature nodes.
pub type EpsilonSamples = Vec<Vec<f64>>;

#[derive(Clone, Debug, Serialize)]
pub struct MemoryBalance {
    pub delta_direct: f64,
    pub delta_news: f64,
    pub residual: f64,
    /// ΔQ_j = η_j ΔQ_0 for each supplied η_j.
    pub dual_channels: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefinementRow {
    pub steps: usize,
    pub h: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Refinement {
    pub rows: Vec<RefinementRow>,
    /// Least-squares slope of log residual against log h.
    pub observed_order: f64,
}

fn components(m: usize, rank: usize) -> usize {
    m.pow(rank as u32)
}

impl NewsProfile {
    pub fn sphere(&self) -> Result<SphereQuadrature> {
        if self.dim < 3 {
            return Err(Error::Domain(format!("radiative data needs D ≥ 3, got {}", self.dim)));
        }
        SphereQuadrature::new(self.dim - 2, self.resolution)
    }

    /// Checks sample counts against the grid.
    pub fn validate(&self, sphere: &SphereQuadrature) -> Result<()> {
        let nc = components(sphere.m, self.rank);
        let nodes = sphere.len();
        if self.u.len() < 3 || self.u.len().is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "Simpson's rule needs an odd number (≥ 3) of u samples, got {}",
                self.u.len()
            )));
        }
        let h = (self.u[self.u.len() - 1] - self.u[0]) / (self.u.len() - 1) as f64;
        if self.u.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.abs().max(1.0)) {
            return Err(Error::Domain("u grid must be uniform".into()));
        }
        if self.news.len() != self.u.len() {
            return Err(Error::Domain(format!("{} news slices for {} u samples", self.news.len(), self.u.len())));
        }
        let check = |s: &Vec<Vec<f64>>, what: &str| -> Result<()> {
            if s.len() != nodes || s.iter().any(|c| c.len() != nc) {
                return Err(Error::Domain(format!(
                    "{what} does not match {nodes} nodes × {nc} components"
                )));
            }
            if s.iter().flatten().any(|v| !v.is_finite()) {
                return Err(Error::Domain(format!("{what} has non-finite samples")));
            }
            Ok(())
        };
        for slice in &self.news {
            check(slice, "news slice")?;
        }
        check(&self.field_initial, "initial field")?;
        check(&self.field_final, "final field")
    }
}

/// Q(u) = ∫ ⟨ε(x), H(u, x)⟩ dΩ with full index contraction in the frame.
pub fn charge_at(sphere: &SphereQuadrature, field: &[Vec<f64>], eps: &[Vec<f64>]) -> Result<f64> {
    if field.len() != sphere.len() || eps.len() != sphere.len() {
        return Err(Error::Domain(format!(
            "field has {} and ε has {} samples on {} nodes",
            field.len(),
            eps.len(),
            sphere.len()
        )));
    }
    let pointwise: Vec<f64> = field
        .par_iter()
        .zip(eps)
        .map(|(h, e)| {
            if h.len() != e.len() {
                return Err(Error::Domain("ε and field have different component counts".into()));
            }
            Ok(h.iter().zip(e).map(|(a, b)| a * b).sum())
        })
        .collect::<Result<_>>()?;
    sphere.integrate(&pointwise)
}

/// Composite Simpson rule on a uniform grid with an even number of intervals.
pub fn simpson(h: f64, values: &[f64]) -> f64 {
    let n = values.len() - 1;
    let mut acc = values[0] + values[n];
    for (i, v) in values.iter().enumerate().take(n).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    acc * h / 3.0
}

/// ΔQ from the charge at both ends of the grid and, independently, from the
/// time-integrated news.
pub fn memory_balance(profile: &NewsProfile, eps: &[Vec<f64>], etas: &[f64]) -> Result<MemoryBalance> {
    let sphere = profile.sphere()?;
    profile.validate(&sphere)?;
    let delta_direct =
        charge_at(&sphere, &profile.field_final, eps)? - charge_at(&sphere, &profile.field_initial, eps)?;
    let h = (profile.u[profile.u.len() - 1] - profile.u[0]) / (profile.u.len() - 1) as f64;
    let nc = components(sphere.m, profile.rank);
    let integrated: Vec<Vec<f64>> = (0..sphere.len())
        .into_par_iter()
        .map(|node| {
            (0..nc)
                .map(|c| {
                    let series: Vec<f64> = profile.news.iter().map(|slice| slice[node][c]).collect();
                    simpson(h, &series)
                })
                .collect()
        })
        .collect();
    let delta_news = charge_at(&sphere, &integrated, eps)?;
    Ok(MemoryBalance {
        delta_direct,
        delta_news,
        residual: (delta_direct - delta_news).abs(),
        dual_channels: etas.iter().map(|eta| eta * delta_news).collect(),
    })
}

/// Angular profile of the synthetic burst: a smooth frame tensor field.
fn burst_amplitude(x: &[f64], m: usize, rank: usize) -> Vec<f64> {
    (0..components(m, rank))
        .map(|flat| {
            let mut idx = Vec::with_capacity(rank);
            let mut r = flat;
            for _ in 0..rank {
                idx.push(r % m);
                r /= m;
            }
            let diag = idx.windows(2).all(|w| w[0] == w[1]);
            let base = if diag { 1.0 + x[0] * x[0] } else { 0.5 * x[0] * x[x.len() - 1] };
            base + 0.25 * idx.iter().map(|i| x[(i + 1) % x.len()]).sum::<f64>()
        })
        .collect()
}

/// Default charge parameter for the synthetic burst.
pub fn default_epsilon(sphere: &SphereQuadrature, rank: usize) -> EpsilonSamples {
    let m = sphere.m;
    sphere
        .nodes
        .iter()
        .map(|x| {
            (0..components(m, rank))
                .map(|flat| {
                    let i = flat % m;
                    1.0 + 0.5 * x[i % x.len()] + 0.1 * flat as f64
                })
                .collect()
        })
        .collect()
}

/// Gaussian burst N(u, x) = A(x) exp(−(u−u_c)²/(2σ²)) with the exact
/// primitive H(u, x) = A(x) σ√(π/2) (1 + erf((u−u_c)/(σ√2))).
pub fn gaussian_burst(dim: usize, resolution: usize, steps: usize) -> Result<NewsProfile> {
    if dim < 3 {
        return Err(Error::Domain(format!("radiative data needs D ≥ 3, got {dim}")));
    }
    if steps < 2 || steps % 2 == 1 {
        return Err(Error::Domain(format!("burst needs an even number of time steps, got {steps}")));
    }
    let sphere = SphereQuadrature::new(dim - 2, resolution)?;
    let rank = 2;
    let (sigma, center, half_width) = (0.7, 0.3, 6.0);
    let (ui, uf) = (center - half_width, center + half_width);
    let u: Vec<f64> = (0..=steps).map(|k| ui + (uf - ui) * k as f64 / steps as f64).collect();
    let amps: Vec<Vec<f64>> = sphere.nodes.iter().map(|x| burst_amplitude(x, sphere.m, rank)).collect();
    let primitive = |t: f64| sigma * (std::f64::consts::PI / 2.0).sqrt() * (1.0 + libm::erf((t - center) / (sigma * 2f64.sqrt())));
    let scaled = |s: f64| -> Vec<Vec<f64>> { amps.iter().map(|a| a.iter().map(|v| v * s).collect()).collect() };
    let news = u
        .iter()
        .map(|t| scaled((-(t - center).powi(2) / (2.0 * sigma * sigma)).exp()))
        .collect();
    Ok(NewsProfile {
        dim,
        rank,
        resolution,
        field_initial: scaled(primitive(ui)),
        field_final: scaled(primitive(uf)),
        u,
        news,
        falloff: (dim as f64 - 2.0) / 2.0,
    })
}

/// Residual of the Gaussian burst under time refinement.
pub fn refinement(dim: usize, resolution: usize, steps: &[usize]) -> Result<Refinement> {
    let mut rows = Vec::with_capacity(steps.len());
    for &s in steps {
        let p = gaussian_burst(dim, resolution, s)?;
        let sphere = p.sphere()?;
        let eps = default_epsilon(&sphere, p.rank);
        let b = memory_balance(&p, &eps, &[])?;
        rows.push(RefinementRow {
            steps: s,
            h: (p.u[p.u.len() - 1] - p.u[0]) / s as f64,
            residual: b.residual,
        });
    }
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.residual > 0.0)
        .map(|r| (r.h.ln(), r.residual.ln()))
        .collect();
    let observed_order = if pts.len() < 2 {
        f64::NAN
    } else {
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    Ok(Refinement { rows, observed_order })
}

pub const DEFAULT_STEPS: usize = 400;
pub const REFINEMENT_STEPS: [usize; 3] = [8, 16, 32];

/// The default balance check: Gaussian burst at the default quadrature.
pub fn default_balance(dim: usize) -> Result<MemoryBalance> {
    let p = gaussian_burst(dim, DEFAULT_RESOLUTION, DEFAULT_STEPS)?;
    let sphere = p.sphere()?;
    let eps = default_epsilon(&sphere, p.rank);
    memory_balance(&p, &eps, &[])
}
