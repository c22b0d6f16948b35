//! Local and global Moran's I.

use crate::error::{MoranError, Result};
use crate::weights::{require_normalized, spatial_lag, SpatialWeights};

/// The local statistic for one region: `z * lag / (n - 1)`.
#[inline]
pub fn local_statistic(z: f64, lag: f64, n: usize) -> f64 {
    z * lag / (n as f64 - 1.0)
}

/// Local Moran's I for every region; `None` for isolated regions.
pub fn local_moran(z: &[f64], weights: &SpatialWeights) -> Result<Vec<Option<f64>>> {
    let n = z.len();
    Ok(spatial_lag(z, weights)?
        .into_iter()
        .zip(z)
        .map(|(lag, &zi)| lag.map(|lag| local_statistic(zi, lag, n)))
        .collect())
}

/// Global Moran's I for row-normalized weights: `sum(z * lag) / sum(z^2)`.
///
/// With sample-standard-deviation z-scores this equals the sum of the local
/// statistics. Isolated regions are rejected.
pub fn global_moran(z: &[f64], weights: &SpatialWeights) -> Result<f64> {
    require_normalized(z, weights)?;
    let lags = spatial_lag(z, weights)?;
    let mut cross = 0.0;
    for (i, (lag, zi)) in lags.iter().zip(z).enumerate() {
        let lag = lag.ok_or_else(|| MoranError::IsolatedRegion(i.to_string()))?;
        cross += zi * lag;
    }
    let ss: f64 = z.iter().map(|v| v * v).sum();
    if ss == 0.0 {
        return Err(MoranError::ZeroVariance);
    }
    Ok(cross / ss)
}
