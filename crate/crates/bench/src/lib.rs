//! Deterministic workloads shared by the benchmarks.

use moran_core::{AttributeSeries, RegionGeometry, SpatialWeights};

/// Unit squares on a `rows x cols` grid, ids in row-major order.
pub fn grid_regions(rows: usize, cols: usize) -> Vec<RegionGeometry> {
    (0..rows * cols)
        .map(|i| {
            let (x, y) = ((i % cols) as f64, (i / cols) as f64);
            RegionGeometry::from_ring(
                i.to_string(),
                vec![[x, y], [x + 1.0, y], [x + 1.0, y + 1.0], [x, y + 1.0]],
            )
            .expect("unit square")
        })
        .collect()
}

/// Triangulated torus: every region has exactly six neighbors.
pub fn torus_weights(rows: usize, cols: usize) -> SpatialWeights {
    let idx = |r: usize, c: usize| (r % rows) * cols + c % cols;
    let mut neighbors = vec![Vec::new(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            for (a, b) in [(r, c + 1), (r + 1, c), (r + 1, c + 1)] {
                neighbors[idx(r, c)].push(idx(a, b));
                neighbors[idx(a, b)].push(idx(r, c));
            }
        }
    }
    SpatialWeights::from_neighbors(neighbors).expect("symmetric")
}

/// A smooth east-west trend with deterministic jitter.
pub fn trend_series(n: usize, cols: usize) -> AttributeSeries {
    let values = (0..n)
        .map(|i| (i % cols) as f64 * 0.1 + ((i as f64) * 12.9898).sin() * 0.5)
        .collect();
    AttributeSeries::new((0..n).map(|i| i.to_string()).collect(), values).expect("finite values")
}
