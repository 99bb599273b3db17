use rayon::prelude::*;
use serde::Serialize;

use super::quadrature::{determinant, sphere_area, SphereQuadrature, DEFAULT_RESOLUTION};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct FluxReport {
    pub n: i64,
    pub k: usize,
    pub radius: f64,
    pub resolution: usize,
    /// (1/2π)∮H over the linking sphere.
    pub value: f64,
    pub rounded: i64,
    pub error: f64,
}

/// Period of H = (2πn / |S^{k−1}|) ι_x vol / |x|^k over a sphere of radius
/// `radius` linking a codimension-k defect at the origin.
///
/// The form is pulled back by evaluating it on the radius-scaled tangent
/// frame at each node of the unit-sphere quadrature.
pub fn flux_quantization_at(n: i64, k: usize, radius: f64, resolution: usize) -> Result<FluxReport> {
    if k < 2 {
        return Err(Error::Domain(format!("flux through S^(k−1) needs k ≥ 2, got {k}")));
    }
    if radius <= 0.0 || !radius.is_finite() {
        return Err(Error::Domain(format!("sphere radius must be positive, got {radius}")));
    }
    let sphere = SphereQuadrature::new(k - 1, resolution)?;
    let c = 2.0 * std::f64::consts::PI * n as f64 / sphere_area(k - 1);
    let density: Vec<f64> = sphere
        .nodes
        .par_iter()
        .zip(&sphere.frames)
        .map(|(x, frame)| {
            let mut rows: Vec<Vec<f64>> = vec![x.iter().map(|v| v * radius).collect()];
            rows.extend(frame.iter().map(|e| e.iter().map(|v| v * radius).collect::<Vec<f64>>()));
            c * determinant(rows) / radius.powi(k as i32)
        })
        .collect();
    let value = sphere.integrate(&density)? / (2.0 * std::f64::consts::PI);
    Ok(FluxReport {
        n,
        k,
        radius,
        resolution,
        value,
        rounded: value.round() as i64,
        error: (value - n as f64).abs(),
    })
}

pub fn flux_quantization(n: i64, k: usize) -> Result<f64> {
    Ok(flux_quantization_at(n, k, 1.0, DEFAULT_RESOLUTION)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independent_of_radius() {
        for r in [0.3, 1.0, 4.5] {
            let f = flux_quantization_at(-2, 3, r, DEFAULT_RESOLUTION).unwrap();
            assert!(f.error < 1e-9, "{f:?}");
        }
    }

    #[test]
    fn codimension_one_is_rejected() {
        assert!(matches!(flux_quantization(1, 1), Err(Error::Domain(_))));
    }
}
