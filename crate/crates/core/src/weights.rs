//! Sparse spatial weights and the spatial lag operator.

use serde::{Deserialize, Serialize};

use crate::error::{MoranError, Result};

/// Sparse region-adjacency operator stored as per-region rows of
/// `(neighbor index, weight)` pairs sorted by neighbor index.
///
/// Rows never contain their own index and the neighbor structure is
/// symmetric, although row-normalized weights generally are not.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpatialWeights {
    n: usize,
    rows: Vec<Vec<(usize, f64)>>,
    normalized: bool,
}

impl SpatialWeights {
    /// Binary weights from neighbor lists. Duplicates are collapsed.
    pub fn from_neighbors(neighbors: Vec<Vec<usize>>) -> Result<Self> {
        let rows = neighbors
            .into_iter()
            .map(|row| row.into_iter().map(|j| (j, 1.0)).collect())
            .collect();
        Self::from_rows(rows)
    }

    /// Raw (not normalized) weights. Zero weights are dropped, so an
    /// explicit zero means "not a neighbor".
    pub fn from_rows(rows: Vec<Vec<(usize, f64)>>) -> Result<Self> {
        let n = rows.len();
        let mut clean = Vec::with_capacity(n);
        for (i, mut row) in rows.into_iter().enumerate() {
            for &(j, w) in &row {
                if j >= n {
                    return Err(MoranError::IndexOutOfRange { index: j, n });
                }
                if j == i {
                    return Err(MoranError::SelfLoop(i));
                }
                if w < 0.0 {
                    return Err(MoranError::NegativeWeight { row: i, weight: w });
                }
                if !w.is_finite() {
                    return Err(MoranError::NonFinite(i));
                }
            }
            row.retain(|&(_, w)| w > 0.0);
            row.sort_by_key(|&(j, _)| j);
            row.dedup_by_key(|&mut (j, _)| j);
            clean.push(row);
        }
        let weights = Self {
            n,
            rows: clean,
            normalized: false,
        };
        weights.check_symmetric()?;
        Ok(weights)
    }

    fn check_symmetric(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, _) in row {
                if !self.has_edge(j, i) {
                    return Err(MoranError::Asymmetric { from: i, to: j });
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<(usize, f64)>] {
        &self.rows
    }

    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].len()
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.rows[i].is_empty()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[i].iter().map(|&(j, _)| j)
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.rows[i]
            .binary_search_by_key(&j, |&(k, _)| k)
            .ok()
            .map(|pos| self.rows[i][pos].1)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weight(i, j).is_some()
    }

    /// Number of unordered neighbor pairs.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Relabels regions so that new index `k` is old index `order[k]`.
    pub fn reordered(&self, order: &[usize]) -> Self {
        let mut inverse = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let rows = order
            .iter()
            .map(|&old| {
                let mut row: Vec<_> = self.rows[old]
                    .iter()
                    .map(|&(j, w)| (inverse[j], w))
                    .collect();
                row.sort_by_key(|&(j, _)| j);
                row
            })
            .collect();
        Self {
            n: self.n,
            rows,
            normalized: self.normalized,
        }
    }
}

/// Scales every non-empty row to sum to one. Empty rows stay empty.
pub fn row_normalize(weights: &SpatialWeights) -> Result<SpatialWeights> {
    let rows = weights
        .rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if let Some(&(_, w)) = row.iter().find(|&&(_, w)| w < 0.0) {
                return Err(MoranError::NegativeWeight { row: i, weight: w });
            }
            let total: f64 = row.iter().map(|&(_, w)| w).sum();
            Ok(row.iter().map(|&(j, w)| (j, w / total)).collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpatialWeights {
        n: weights.n,
        rows,
        normalized: true,
    })
}

pub(crate) fn require_normalized(z: &[f64], weights: &SpatialWeights) -> Result<()> {
    if !weights.normalized {
        return Err(MoranError::NotNormalized);
    }
    if z.len() != weights.n {
        return Err(MoranError::LengthMismatch {
            expected: weights.n,
            actual: z.len(),
        });
    }
    Ok(())
}

/// Weighted sum of neighbor values; `None` for isolated regions.
pub fn spatial_lag(z: &[f64], weights: &SpatialWeights) -> Result<Vec<Option<f64>>> {
    require_normalized(z, weights)?;
    Ok(weights
        .rows
        .iter()
        .map(|row| {
            if row.is_empty() {
                None
            } else {
                Some(row.iter().map(|&(j, w)| w * z[j]).sum())
            }
        })
        .collect())
}
