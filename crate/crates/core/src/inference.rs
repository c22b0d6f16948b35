//! Conditional permutation inference for the local statistic.
//!
//! Each focal region keeps its own value while `k` values, drawn without
//! replacement from the other `n - 1` regions, fill its neighbor slots.
//! Replicate streams are keyed by `(seed, focal index)`, so results do not
//! depend on how locations are scheduled across threads.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MoranError, Result};
use crate::moran::local_statistic;
use crate::weights::{require_normalized, SpatialWeights};

/// Reference distribution and derived quantities for one region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PermutationSummary {
    pub count: usize,
    pub permuted_statistics: Vec<f64>,
    pub pseudo_p: f64,
    pub low_threshold: f64,
    pub high_threshold: f64,
    pub seed: u64,
}

/// Random stream for one focal location.
pub(crate) fn location_rng(seed: u64, focal: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(focal as u64);
    rng
}

/// `M` permuted local statistics for the region at `focal`.
pub fn conditional_permutation(
    focal: usize,
    z: &[f64],
    weights: &SpatialWeights,
    permutations: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    require_normalized(z, weights)?;
    if focal >= z.len() {
        return Err(MoranError::IndexOutOfRange {
            index: focal,
            n: z.len(),
        });
    }
    if permutations == 0 {
        return Err(MoranError::ZeroPermutations);
    }
    let row = weights.row(focal);
    if row.is_empty() {
        return Err(MoranError::IsolatedRegion(focal.to_string()));
    }
    let mut others: Vec<f64> = z
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != focal)
        .map(|(_, &v)| v)
        .collect();
    let mut rng = location_rng(seed, focal);
    let zi = z[focal];
    let n = z.len();
    let k = row.len();

    Ok((0..permutations)
        .map(|_| {
            let (chosen, _) = others.partial_shuffle(&mut rng, k);
            let lag: f64 = row
                .iter()
                .zip(chosen.iter())
                .map(|(&(_, w), v)| w * v)
                .sum();
            local_statistic(zi, lag, n)
        })
        .collect())
}

/// Relative tolerance under which two statistics count as tied. Values that
/// are equal in exact arithmetic can differ by a few ulps depending on the
/// summation order of the lag.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// One-sided pseudo p-value `(R + 1) / (M + 1)`.
///
/// The tail is chosen relative to the permutation mean: at or above the
/// mean, `R` counts permuted values `>= observed`, otherwise values
/// `<= observed`. Ties, up to [`TIE_TOLERANCE`] relative to the largest
/// magnitude involved, count as extreme.
pub fn pseudo_p(observed: f64, permuted: &[f64]) -> Result<f64> {
    if permuted.is_empty() {
        return Err(MoranError::EmptyDistribution);
    }
    let m = permuted.len();
    let mean = permuted.iter().sum::<f64>() / m as f64;
    let scale = permuted
        .iter()
        .fold(observed.abs(), |acc, p| acc.max(p.abs()));
    let tol = TIE_TOLERANCE * scale;
    let extreme = if observed >= mean - tol {
        permuted.iter().filter(|&&p| p >= observed - tol).count()
    } else {
        permuted.iter().filter(|&&p| p <= observed + tol).count()
    };
    Ok((extreme + 1) as f64 / (m + 1) as f64)
}

/// Smallest number of permutations supporting thresholds at `alpha`.
pub fn min_permutations(alpha: f64) -> usize {
    (1.0 / alpha - 1e-9).ceil() as usize
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 0.5 {
        Ok(())
    } else {
        Err(MoranError::BadAlpha(alpha))
    }
}

fn nearest_rank(sorted: &[f64], q: f64) -> f64 {
    let m = sorted.len();
    // Guard against products like 0.95 * 100 landing a hair above an integer.
    let rank = (q * m as f64 - 1e-9).ceil().max(1.0) as usize;
    sorted[rank.min(m) - 1]
}

/// Nearest-rank empirical quantiles at `alpha` and `1 - alpha`.
pub fn significance_thresholds(permuted: &[f64], alpha: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    if permuted.is_empty() {
        return Err(MoranError::EmptyDistribution);
    }
    let required = min_permutations(alpha);
    if permuted.len() < required {
        return Err(MoranError::TooFewPermutations {
            count: permuted.len(),
            alpha,
            required,
        });
    }
    let mut sorted = permuted.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok((
        nearest_rank(&sorted, alpha),
        nearest_rank(&sorted, 1.0 - alpha),
    ))
}
