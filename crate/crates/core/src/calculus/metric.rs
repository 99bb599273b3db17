use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Flat diagonal metric with entries ±1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metric {
    flags: Vec<i8>,
}

impl Metric {
    pub fn new(flags: Vec<i8>) -> Result<Metric> {
        if flags.is_empty() || flags.iter().any(|f| *f != 1 && *f != -1) {
            return Err(Error::Domain(format!("metric flags must be ±1, got {flags:?}")));
        }
        Ok(Metric { flags })
    }

    pub fn euclidean(dim: usize) -> Metric {
        Metric { flags: vec![1; dim] }
    }

    /// Mostly-plus Minkowski metric with time along index 0.
    pub fn minkowski(dim: usize) -> Metric {
        let mut flags = vec![1; dim];
        flags[0] = -1;
        Metric { flags }
    }

    pub fn dim(&self) -> usize {
        self.flags.len()
    }

    /// g^{ii}, equal to g_{ii} for a diagonal ±1 metric.
    pub fn flag(&self, i: usize) -> i8 {
        self.flags[i]
    }

    pub fn det_sign(&self) -> i8 {
        self.flags.iter().product()
    }
}

/// Metric family, resolved against a dimension with [`MetricKind::build`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    #[default]
    Euclidean,
    Minkowski,
}

impl MetricKind {
    pub fn build(self, dim: usize) -> Metric {
        match self {
            MetricKind::Euclidean => Metric::euclidean(dim),
            MetricKind::Minkowski => Metric::minkowski(dim),
        }
    }
}
