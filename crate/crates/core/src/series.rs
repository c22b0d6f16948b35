//! Per-region attribute values and z-score normalization.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{MoranError, Result};

/// Attribute values keyed by region id, in dataset order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttributeSeries {
    ids: Vec<String>,
    values: Vec<f64>,
    zvalues: Option<Vec<f64>>,
}

impl AttributeSeries {
    pub fn new(ids: Vec<String>, values: Vec<f64>) -> Result<Self> {
        if ids.len() != values.len() {
            return Err(MoranError::LengthMismatch {
                expected: ids.len(),
                actual: values.len(),
            });
        }
        let mut seen = HashSet::with_capacity(ids.len());
        for id in &ids {
            if !seen.insert(id.as_str()) {
                return Err(MoranError::DuplicateId(id.clone()));
            }
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(MoranError::NonFinite(pos));
        }
        Ok(Self {
            ids,
            values,
            zvalues: None,
        })
    }

    /// Computes and stores the z-scores. Idempotent.
    pub fn normalize(&mut self) -> Result<&[f64]> {
        if self.zvalues.is_none() {
            self.zvalues = Some(zscore_normalize(&self.values)?);
        }
        Ok(self.zvalues.as_deref().unwrap_or_default())
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn zvalues(&self) -> Option<&[f64]> {
        self.zvalues.as_deref()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Returns a copy with regions reordered so that position `i` holds the
    /// region previously at `order[i]`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        Self {
            ids: order.iter().map(|&i| self.ids[i].clone()).collect(),
            values: order.iter().map(|&i| self.values[i]).collect(),
            zvalues: self
                .zvalues
                .as_ref()
                .map(|z| order.iter().map(|&i| z[i]).collect()),
        }
    }
}

/// Arithmetic mean and sample standard deviation (denominator n - 1).
pub(crate) fn mean_and_sample_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0)).sqrt())
}

/// Z-scores using the sample standard deviation, so that `sum(z^2) = n - 1`.
pub fn zscore_normalize(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(MoranError::TooFewValues(values.len()));
    }
    if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
        return Err(MoranError::NonFinite(pos));
    }
    let (mean, std) = mean_and_sample_std(values);
    if std == 0.0 || !std.is_finite() {
        return Err(MoranError::ZeroVariance);
    }
    Ok(values.iter().map(|v| (v - mean) / std).collect())
}
