//! Gaussian kernel density estimation on an evaluation grid.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{MoranError, Result};
use crate::series::mean_and_sample_std;

pub const DEFAULT_GRID_SIZE: usize = 256;
pub const MIN_GRID_SIZE: usize = 16;

/// Kernels are evaluated over `[min - TAIL * h, max + TAIL * h]`.
const TAIL: f64 = 3.0;

/// Grid spacing never exceeds `h / MIN_POINTS_PER_BANDWIDTH`, up to
/// `MAX_GRID_SIZE` points.
const MIN_POINTS_PER_BANDWIDTH: f64 = 2.0;
const MAX_GRID_SIZE: usize = 1 << 16;

/// Half-width, in bandwidths, of the fine windows used when a uniform grid
/// would exceed `MAX_GRID_SIZE`. The kernel is below 1e-13 of its peak there.
const WINDOW: f64 = 8.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityCurve {
    pub grid_x: Vec<f64>,
    pub grid_y: Vec<f64>,
    pub bandwidth: f64,
}

impl DensityCurve {
    /// Trapezoidal integral over the grid.
    pub fn integral(&self) -> f64 {
        self.grid_x
            .windows(2)
            .zip(self.grid_y.windows(2))
            .map(|(x, y)| (x[1] - x[0]) * (y[0] + y[1]) / 2.0)
            .sum()
    }

    pub fn max_density(&self) -> f64 {
        self.grid_y.iter().copied().fold(0.0, f64::max)
    }
}

/// Linear-interpolation quantile of ascending `sorted` data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Silverman's rule of thumb: `0.9 * min(sd, IQR / 1.34) * n^(-1/5)`.
///
/// When the interquartile range is zero but the standard deviation is not,
/// the standard deviation alone is used.
pub fn silverman_bandwidth(samples: &[f64]) -> Result<f64> {
    if samples.len() < 2 {
        return Err(MoranError::TooFewValues(samples.len()));
    }
    if let Some(pos) = samples.iter().position(|v| !v.is_finite()) {
        return Err(MoranError::NonFinite(pos));
    }
    let (_, sd) = mean_and_sample_std(samples);
    if sd == 0.0 {
        return Err(MoranError::ZeroVariance);
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let iqr = quantile(&sorted, 0.75) - quantile(&sorted, 0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    Ok(0.9 * spread * (samples.len() as f64).powf(-0.2))
}

/// Density at a single point.
pub fn density_at(samples: &[f64], bandwidth: f64, x: f64) -> f64 {
    let norm = 1.0 / (samples.len() as f64 * bandwidth * (2.0 * PI).sqrt());
    norm * samples
        .iter()
        .map(|s| {
            let u = (x - s) / bandwidth;
            (-0.5 * u * u).exp()
        })
        .sum::<f64>()
}

/// Gaussian KDE on a grid spanning `[min - 3h, max + 3h]`.
///
/// `grid_size` is a lower bound. The grid is uniform whenever at most
/// `MAX_GRID_SIZE` points resolve every kernel at `MIN_POINTS_PER_BANDWIDTH`.
/// Otherwise (a tight cluster plus far outliers) it is piecewise uniform:
/// fine windows of half-width `WINDOW * h` around the samples, joined
/// directly across the empty stretches where the density is negligible.
pub fn kde(samples: &[f64], bandwidth: f64, grid_size: usize) -> Result<DensityCurve> {
    if samples.is_empty() {
        return Err(MoranError::EmptyDistribution);
    }
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(MoranError::BadBandwidth(bandwidth));
    }
    if grid_size < MIN_GRID_SIZE {
        return Err(MoranError::BadGridSize(grid_size));
    }
    if let Some(pos) = samples.iter().position(|v| !v.is_finite()) {
        return Err(MoranError::NonFinite(pos));
    }
    let (min, max) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let start = min - TAIL * bandwidth;
    let end = max + TAIL * bandwidth;
    let resolved = ((end - start) / bandwidth * MIN_POINTS_PER_BANDWIDTH).ceil() as usize + 1;
    let grid_x = if resolved <= MAX_GRID_SIZE {
        uniform_grid(start, end, grid_size.max(resolved))
    } else {
        windowed_grid(samples, bandwidth, start, end, grid_size)
    };
    let grid_y = grid_x
        .iter()
        .map(|&x| density_at(samples, bandwidth, x))
        .collect();
    Ok(DensityCurve {
        grid_x,
        grid_y,
        bandwidth,
    })
}

fn uniform_grid(start: f64, end: f64, size: usize) -> Vec<f64> {
    let step = (end - start) / (size - 1) as f64;
    // Mirror-symmetric placement: grid point i and its counterpart are
    // computed from opposite ends.
    (0..size)
        .map(|i| {
            if 2 * i < size {
                start + i as f64 * step
            } else {
                end - (size - 1 - i) as f64 * step
            }
        })
        .collect()
}

fn windowed_grid(samples: &[f64], h: f64, start: f64, end: f64, grid_size: usize) -> Vec<f64> {
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut windows: Vec<(f64, f64)> = Vec::new();
    for s in sorted {
        let (lo, hi) = ((s - WINDOW * h).max(start), (s + WINDOW * h).min(end));
        match windows.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => windows.push((lo, hi)),
        }
    }
    let covered: f64 = windows.iter().map(|(lo, hi)| hi - lo).sum();
    let step = (h / MIN_POINTS_PER_BANDWIDTH).min(covered / (grid_size - 1) as f64);
    let mut grid = Vec::new();
    for (lo, hi) in windows {
        let intervals = ((hi - lo) / step).ceil().max(1.0) as usize;
        grid.extend(uniform_grid(lo, hi, intervals + 1));
    }
    grid
}

/// KDE with Silverman's bandwidth.
pub fn kde_silverman(samples: &[f64], grid_size: usize) -> Result<DensityCurve> {
    kde(samples, silverman_bandwidth(samples)?, grid_size)
}
