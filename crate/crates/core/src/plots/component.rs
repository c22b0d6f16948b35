use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{check_aligned, position};
use crate::analysis::LocalMoranResult;
use crate::error::Result;
use crate::label::Label;
use crate::weights::SpatialWeights;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ComponentPayload {
    pub focal_id: String,
    pub label: Label,
    /// Component members in dataset order.
    pub ids: Vec<String>,
}

/// Regions reachable from the focal region through neighbors carrying the
/// same significant label. Non-significant and isolated focals return only
/// themselves.
pub fn same_label_component(
    focal_id: &str,
    results: &[LocalMoranResult],
    weights: &SpatialWeights,
) -> Result<ComponentPayload> {
    check_aligned(results, weights)?;
    let focal = position(results, focal_id)?;
    let label = results[focal].label;

    let mut member = vec![false; results.len()];
    member[focal] = true;
    if label.is_significant() {
        let mut queue = VecDeque::from([focal]);
        while let Some(i) = queue.pop_front() {
            for j in weights.neighbors(i) {
                if !member[j] && results[j].label == label {
                    member[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }

    Ok(ComponentPayload {
        focal_id: results[focal].id.clone(),
        label,
        ids: member
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m)
            .map(|(i, _)| results[i].id.clone())
            .collect(),
    })
}
