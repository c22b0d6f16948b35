//! End-to-end local analysis: normalize, lag, statistic, inference, label.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MoranError, Result};
use crate::inference::{
    check_alpha, conditional_permutation, min_permutations, pseudo_p, significance_thresholds,
    PermutationSummary,
};
use crate::label::{assign_label, Label};
use crate::moran::local_statistic;
use crate::series::AttributeSeries;
use crate::weights::{row_normalize, spatial_lag, SpatialWeights};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisConfig {
    pub permutations: usize,
    pub seed: u64,
    pub alpha: f64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            permutations: 999,
            seed: 0,
            alpha: 0.05,
        }
    }
}

impl AnalysisConfig {
    pub fn validate(&self) -> Result<()> {
        if self.permutations == 0 {
            return Err(MoranError::ZeroPermutations);
        }
        check_alpha(self.alpha)?;
        let required = min_permutations(self.alpha);
        if self.permutations < required {
            return Err(MoranError::TooFewPermutations {
                count: self.permutations,
                alpha: self.alpha,
                required,
            });
        }
        Ok(())
    }
}

/// Everything known about one region after analysis.
///
/// `lag`, `statistic` and `permutation` are absent for isolated regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalMoranResult {
    pub id: String,
    pub z: f64,
    pub lag: Option<f64>,
    pub statistic: Option<f64>,
    pub permutation: Option<PermutationSummary>,
    pub label: Label,
}

impl LocalMoranResult {
    pub fn is_isolated(&self) -> bool {
        self.label == Label::Isolated
    }

    pub fn pseudo_p(&self) -> Option<f64> {
        self.permutation.as_ref().map(|p| p.pseudo_p)
    }
}

/// Runs the full analysis. Weights may be raw or already row-normalized;
/// region `i` of `weights` is the region at position `i` of `series`.
///
/// Per-location permutation loops run on the current rayon pool. Output is
/// identical for any pool size.
pub fn analyze(
    series: &AttributeSeries,
    weights: &SpatialWeights,
    config: &AnalysisConfig,
) -> Result<Vec<LocalMoranResult>> {
    config.validate()?;
    if series.len() != weights.n() {
        return Err(MoranError::IdMismatch(format!(
            "{} attribute values for {} weight rows",
            series.len(),
            weights.n()
        )));
    }
    let mut series = series.clone();
    let z = series.normalize()?.to_vec();
    let normalized = row_normalize(weights)?;
    let lags = spatial_lag(&z, &normalized)?;
    let n = z.len();

    (0..n)
        .into_par_iter()
        .map(|i| {
            let id = series.ids()[i].clone();
            let Some(lag) = lags[i] else {
                return Ok(LocalMoranResult {
                    id,
                    z: z[i],
                    lag: None,
                    statistic: None,
                    permutation: None,
                    label: Label::Isolated,
                });
            };
            let statistic = local_statistic(z[i], lag, n);
            let permuted =
                conditional_permutation(i, &z, &normalized, config.permutations, config.seed)?;
            let p = pseudo_p(statistic, &permuted)?;
            let (low, high) = significance_thresholds(&permuted, config.alpha)?;
            Ok(LocalMoranResult {
                id,
                z: z[i],
                lag: Some(lag),
                statistic: Some(statistic),
                permutation: Some(PermutationSummary {
                    count: permuted.len(),
                    permuted_statistics: permuted,
                    pseudo_p: p,
                    low_threshold: low,
                    high_threshold: high,
                    seed: config.seed,
                }),
                label: assign_label(z[i], lag, p, config.alpha),
            })
        })
        .collect()
}
