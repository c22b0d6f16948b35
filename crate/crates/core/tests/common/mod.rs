#![allow(dead_code)]

use moran_core::{AttributeSeries, SpatialWeights};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

/// Random connected graph: a random spanning tree plus `extra` random edges.
pub fn connected_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> SpatialWeights {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut neighbors = vec![Vec::new(); n];
    for k in 1..n {
        let parent = order[rng.random_range(0..k)];
        neighbors[order[k]].push(parent);
        neighbors[parent].push(order[k]);
    }
    for _ in 0..extra {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b {
            neighbors[a].push(b);
            neighbors[b].push(a);
        }
    }
    SpatialWeights::from_neighbors(neighbors).unwrap()
}

pub fn random_series<R: Rng>(rng: &mut R, n: usize) -> AttributeSeries {
    let ids = (0..n).map(|i| format!("r{i}")).collect();
    let values = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
    AttributeSeries::new(ids, values).unwrap()
}

/// Row-major grid of unit squares as a GeoJSON FeatureCollection with
/// numeric ids `0..rows*cols`.
pub fn grid_document(rows: usize, cols: usize) -> Value {
    let features: Vec<Value> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .map(|(r, c)| {
            let (x, y) = (c as f64, r as f64);
            json!({
                "type": "Feature",
                "properties": {"id": r * cols + c},
                "geometry": {"type": "Polygon", "coordinates": [[
                    [x, y], [x + 1.0, y], [x + 1.0, y + 1.0], [x, y + 1.0], [x, y]
                ]]}
            })
        })
        .collect();
    json!({"type": "FeatureCollection", "features": features})
}

/// Triangulated torus: grid neighbors plus one diagonal per cell, wrapped
/// at the edges so every region has degree 6. Needs `rows, cols >= 3`.
pub fn triangulated_grid(rows: usize, cols: usize) -> SpatialWeights {
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
    SpatialWeights::from_neighbors(neighbors).unwrap()
}

/// Every ordered selection of `k` items from `pool`.
pub fn ordered_selections(pool: &[f64], k: usize) -> Vec<Vec<f64>> {
    fn go(
        pool: &[f64],
        used: &mut Vec<bool>,
        current: &mut Vec<f64>,
        k: usize,
        out: &mut Vec<Vec<f64>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in 0..pool.len() {
            if !used[i] {
                used[i] = true;
                current.push(pool[i]);
                go(pool, used, current, k, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(
        pool,
        &mut vec![false; pool.len()],
        &mut Vec::new(),
        k,
        &mut out,
    );
    out
}

/// Exact permutation distribution of the local statistic at `focal`:
/// every assignment of non-focal values to the neighbor slots.
pub fn exact_distribution(focal: usize, z: &[f64], weights: &SpatialWeights) -> Vec<f64> {
    let n = z.len();
    let pool: Vec<f64> = (0..n).filter(|&j| j != focal).map(|j| z[j]).collect();
    let slots: Vec<f64> = weights.row(focal).iter().map(|&(_, w)| w).collect();
    ordered_selections(&pool, slots.len())
        .into_iter()
        .map(|values| {
            let lag: f64 = slots.iter().zip(&values).map(|(w, v)| w * v).sum();
            z[focal] * lag / (n as f64 - 1.0)
        })
        .collect()
}

/// Exact one-sided tail probability, tail chosen against the exact mean.
/// Values within 1e-12 of each other (relative) are the same value computed
/// in a different summation order, so they count as ties.
pub fn exact_tail(observed: f64, distribution: &[f64]) -> f64 {
    let mean = distribution.iter().sum::<f64>() / distribution.len() as f64;
    let scale = distribution
        .iter()
        .map(|v| v.abs())
        .fold(observed.abs(), f64::max);
    let tied = |v: f64| (v - observed).abs() <= 1e-12 * scale;
    let hits = if observed >= mean || tied(mean) {
        distribution
            .iter()
            .filter(|&&v| v > observed || tied(v))
            .count()
    } else {
        distribution
            .iter()
            .filter(|&&v| v < observed || tied(v))
            .count()
    };
    hits as f64 / distribution.len() as f64
}

/// Label-filtered reachability by transitive closure (Warshall), independent
/// of any queue-based traversal.
pub fn closure_component(
    focal: usize,
    labels: &[u8],
    significant: &[bool],
    adjacency: &[Vec<usize>],
) -> Vec<usize> {
    let n = labels.len();
    if !significant[focal] {
        return vec![focal];
    }
    let keep = |i: usize| labels[i] == labels[focal];
    let mut reach = vec![vec![false; n]; n];
    for i in 0..n {
        reach[i][i] = keep(i);
        for &j in &adjacency[i] {
            if keep(i) && keep(j) {
                reach[i][j] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (target, &hop) in reach[i].iter_mut().zip(&via) {
                    *target |= hop;
                }
            }
        }
    }
    (0..n).filter(|&j| reach[focal][j]).collect()
}
