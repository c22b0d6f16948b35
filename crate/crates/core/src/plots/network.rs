use serde::{Deserialize, Serialize};

use super::{check_aligned, normalized};
use crate::analysis::LocalMoranResult;
use crate::error::Result;
use crate::label::Label;
use crate::weights::SpatialWeights;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NetworkPoint {
    pub id: String,
    pub z: f64,
    pub lag: f64,
    pub label: Label,
    pub pseudo_p: f64,
}

/// An undirected neighbor pair. Row normalization makes the two directions
/// differ, so both are kept: `weight` is source to target and
/// `reverse_weight` is target to source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NetworkEdge {
    pub source_id: String,
    pub target_id: String,
    pub weight: f64,
    pub reverse_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NetworkScatterPayload {
    pub points: Vec<NetworkPoint>,
    pub edges: Vec<NetworkEdge>,
    pub n: usize,
}

/// Moran scatter points for every non-isolated region plus one edge per
/// unordered neighbor pair.
pub fn build_network_scatter(
    results: &[LocalMoranResult],
    weights: &SpatialWeights,
) -> Result<NetworkScatterPayload> {
    check_aligned(results, weights)?;
    let weights = normalized(weights)?;

    let points = results
        .iter()
        .filter_map(|r| {
            Some(NetworkPoint {
                id: r.id.clone(),
                z: r.z,
                lag: r.lag?,
                label: r.label,
                pseudo_p: r.pseudo_p()?,
            })
        })
        .collect();

    let mut edges = Vec::with_capacity(weights.edge_count());
    for (i, row) in weights.rows().iter().enumerate() {
        for &(j, w) in row.iter().filter(|&&(j, _)| j > i) {
            edges.push(NetworkEdge {
                source_id: results[i].id.clone(),
                target_id: results[j].id.clone(),
                weight: w,
                reverse_weight: weights.weight(j, i).unwrap_or(0.0),
            });
        }
    }

    Ok(NetworkScatterPayload {
        points,
        edges,
        n: results.len(),
    })
}
