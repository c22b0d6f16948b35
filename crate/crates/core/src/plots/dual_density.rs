use serde::{Deserialize, Serialize};

use super::{check_aligned, normalized, position};
use crate::analysis::LocalMoranResult;
use crate::density::{kde, kde_silverman, DensityCurve, DEFAULT_GRID_SIZE};
use crate::error::{MoranError, Result};
use crate::label::Label;
use crate::weights::SpatialWeights;

pub const POSITIVE_COLOR: &str = "#d7191c";
pub const NEGATIVE_COLOR: &str = "#2c7bb6";

/// Relative bandwidth used when every permuted statistic is identical.
const DEGENERATE_BANDWIDTH: f64 = 1e-6;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColorMode {
    /// Significance areas keyed positive/negative autocorrelation.
    Autocorrelation,
    /// Significance areas keyed by the label a result there would receive.
    #[default]
    Label,
}

/// A neighbor's normalized value and its row-normalized weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NeighborPoint {
    pub id: String,
    pub z: f64,
    pub weight: f64,
}

/// A shaded significance area on the statistic axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AreaLabel {
    pub range: [f64; 2],
    pub text: String,
    /// `positive`/`negative` or a label name, depending on the color mode.
    pub key: String,
    pub color_key: String,
}

/// One focal result: value density on top (focal value, neighbor values and
/// weights, lag) and the permuted-statistic density below (statistic,
/// thresholds, pseudo p).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DualDensityPayload {
    pub focal_id: String,
    pub focal_z: f64,
    pub neighbor_points: Vec<NeighborPoint>,
    pub lag: f64,
    pub statistic: f64,
    pub value_density: DensityCurve,
    pub permuted_density: DensityCurve,
    pub low_threshold: f64,
    pub high_threshold: f64,
    pub pseudo_p: f64,
    pub label: Label,
    pub color_mode: ColorMode,
    pub area_labels: Vec<AreaLabel>,
}

fn permuted_curve(permuted: &[f64]) -> Result<DensityCurve> {
    match kde_silverman(permuted, DEFAULT_GRID_SIZE) {
        Err(MoranError::ZeroVariance) => {
            let scale = permuted[0].abs().max(1.0);
            kde(permuted, DEGENERATE_BANDWIDTH * scale, DEFAULT_GRID_SIZE)
        }
        other => other,
    }
}

fn areas(mode: ColorMode, focal_z: f64, extent: [f64; 2], low: f64, high: f64) -> Vec<AreaLabel> {
    let area = |range, text: &str, key: &str, color: &str| AreaLabel {
        range,
        text: text.to_string(),
        key: key.to_string(),
        color_key: color.to_string(),
    };
    let lower = [extent[0].min(low), low];
    let upper = [high, extent[1].max(high)];
    match mode {
        ColorMode::Autocorrelation => vec![
            area(
                lower,
                "Negative spatial autocorrelation",
                "negative",
                NEGATIVE_COLOR,
            ),
            area(
                upper,
                "Positive spatial autocorrelation",
                "positive",
                POSITIVE_COLOR,
            ),
        ],
        ColorMode::Label => {
            // A negative focal value flips which label each tail implies.
            let (below, above) = if focal_z >= 0.0 {
                (Label::HighLow, Label::HighHigh)
            } else {
                (Label::LowHigh, Label::LowLow)
            };
            vec![
                area(lower, below.as_str(), below.as_str(), below.color_key()),
                area(upper, above.as_str(), above.as_str(), above.color_key()),
            ]
        }
    }
}

pub fn build_dual_density(
    focal_id: &str,
    results: &[LocalMoranResult],
    weights: &SpatialWeights,
    mode: ColorMode,
) -> Result<DualDensityPayload> {
    check_aligned(results, weights)?;
    let weights = normalized(weights)?;
    let focal = position(results, focal_id)?;
    let result = &results[focal];
    let (Some(lag), Some(statistic), Some(perm)) =
        (result.lag, result.statistic, result.permutation.as_ref())
    else {
        return Err(MoranError::IsolatedRegion(focal_id.to_string()));
    };

    let neighbor_points = weights
        .row(focal)
        .iter()
        .map(|&(j, w)| NeighborPoint {
            id: results[j].id.clone(),
            z: results[j].z,
            weight: w,
        })
        .collect();

    let all_z: Vec<f64> = results.iter().map(|r| r.z).collect();
    let value_density = kde_silverman(&all_z, DEFAULT_GRID_SIZE)?;
    let permuted_density = permuted_curve(&perm.permuted_statistics)?;

    let grid = &permuted_density.grid_x;
    let extent = [grid[0].min(statistic), grid[grid.len() - 1].max(statistic)];
    let area_labels = areas(
        mode,
        result.z,
        extent,
        perm.low_threshold,
        perm.high_threshold,
    );

    Ok(DualDensityPayload {
        focal_id: result.id.clone(),
        focal_z: result.z,
        neighbor_points,
        lag,
        statistic,
        value_density,
        permuted_density,
        low_threshold: perm.low_threshold,
        high_threshold: perm.high_threshold,
        pseudo_p: perm.pseudo_p,
        label: result.label,
        color_mode: mode,
        area_labels,
    })
}
