use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::{Point, RegionGeometry};
use crate::weights::SpatialWeights;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContiguityKind {
    /// Any shared boundary vertex.
    #[default]
    Queen,
    /// A shared boundary edge.
    Rook,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ContiguityRule {
    pub kind: ContiguityKind,
    pub snap_tolerance: f64,
}

impl Default for ContiguityRule {
    fn default() -> Self {
        Self {
            kind: ContiguityKind::Queen,
            snap_tolerance: 1e-7,
        }
    }
}

impl ContiguityRule {
    pub fn queen() -> Self {
        Self::default()
    }

    pub fn rook() -> Self {
        Self {
            kind: ContiguityKind::Rook,
            ..Self::default()
        }
    }
}

type VertexKey = (i64, i64);

fn snap(point: Point, tolerance: f64) -> VertexKey {
    if tolerance > 0.0 {
        (
            (point[0] / tolerance).round() as i64,
            (point[1] / tolerance).round() as i64,
        )
    } else {
        // Exact comparison; normalize -0.0 so it hashes like 0.0.
        (
            (point[0] + 0.0).to_bits() as i64,
            (point[1] + 0.0).to_bits() as i64,
        )
    }
}

/// Binary contiguity weights from snapped exterior-ring vertices.
///
/// Queen: regions sharing at least one snapped vertex. Rook: regions where
/// two consecutive vertices of one region's boundary are both vertices of
/// the other. Holes do not contribute.
pub fn build_contiguity(regions: &[RegionGeometry], rule: ContiguityRule) -> SpatialWeights {
    let tolerance = rule.snap_tolerance.max(0.0);

    // Snapped vertex -> sorted, deduplicated owning regions.
    let mut owners: HashMap<VertexKey, Vec<usize>> = HashMap::new();
    for (index, region) in regions.iter().enumerate() {
        for ring in region.exteriors() {
            for &point in ring {
                let entry = owners.entry(snap(point, tolerance)).or_default();
                if entry.last() != Some(&index) {
                    entry.push(index);
                }
            }
        }
    }

    let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); regions.len()];
    let mut link = |a: usize, b: usize| {
        if a != b {
            neighbors[a].insert(b);
            neighbors[b].insert(a);
        }
    };

    match rule.kind {
        ContiguityKind::Queen => {
            for shared in owners.values().filter(|o| o.len() > 1) {
                for (k, &a) in shared.iter().enumerate() {
                    for &b in &shared[k + 1..] {
                        link(a, b);
                    }
                }
            }
        }
        ContiguityKind::Rook => {
            for (index, region) in regions.iter().enumerate() {
                for ring in region.exteriors() {
                    for pair in ring.windows(2) {
                        let a = snap(pair[0], tolerance);
                        let b = snap(pair[1], tolerance);
                        if a == b {
                            continue;
                        }
                        let (Some(at_a), Some(at_b)) = (owners.get(&a), owners.get(&b)) else {
                            continue;
                        };
                        if at_a.len() < 2 || at_b.len() < 2 {
                            continue;
                        }
                        for &other in at_a {
                            if other != index && at_b.binary_search(&other).is_ok() {
                                link(index, other);
                            }
                        }
                    }
                }
            }
        }
    }

    SpatialWeights::from_neighbors(
        neighbors
            .into_iter()
            .map(|set| set.into_iter().collect())
            .collect(),
    )
    .expect("contiguity produces a symmetric loop-free structure")
}
