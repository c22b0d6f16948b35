use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::LocalMoranResult;
use crate::label::Label;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterMapEntry {
    pub id: String,
    pub label: Label,
    pub statistic: Option<f64>,
    pub pseudo_p: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterMapPayload {
    pub entries: Vec<ClusterMapEntry>,
    pub legend: BTreeMap<Label, String>,
}

/// One entry per region, isolated ones included, with the full six-label
/// legend.
pub fn build_cluster_map(results: &[LocalMoranResult]) -> ClusterMapPayload {
    ClusterMapPayload {
        entries: results
            .iter()
            .map(|r| ClusterMapEntry {
                id: r.id.clone(),
                label: r.label,
                statistic: r.statistic,
                pseudo_p: r.pseudo_p(),
            })
            .collect(),
        legend: Label::ALL
            .iter()
            .map(|&l| (l, l.color_key().to_string()))
            .collect(),
    }
}
