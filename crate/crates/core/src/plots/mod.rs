//! Serializable payloads for the linked views.
//!
//! Builders copy values out of [`LocalMoranResult`]s and never recompute
//! them, so every number shown in any view is bit-identical to the analysis.

mod cluster_map;
mod component;
mod dual_density;
mod network;
mod radial;

use std::borrow::Cow;

pub use cluster_map::{build_cluster_map, ClusterMapEntry, ClusterMapPayload};
pub use component::{same_label_component, ComponentPayload};
pub use dual_density::{
    build_dual_density, AreaLabel, ColorMode, DualDensityPayload, NeighborPoint,
};
pub use network::{build_network_scatter, NetworkEdge, NetworkPoint, NetworkScatterPayload};
pub use radial::{build_radial, RadialPayload, Spoke, RADIAL_PADDING};

use crate::analysis::LocalMoranResult;
use crate::error::{MoranError, Result};
use crate::weights::{row_normalize, SpatialWeights};

fn position(results: &[LocalMoranResult], id: &str) -> Result<usize> {
    results
        .iter()
        .position(|r| r.id == id)
        .ok_or_else(|| MoranError::UnknownId(id.to_string()))
}

fn check_aligned(results: &[LocalMoranResult], weights: &SpatialWeights) -> Result<()> {
    if results.len() != weights.n() {
        return Err(MoranError::LengthMismatch {
            expected: weights.n(),
            actual: results.len(),
        });
    }
    Ok(())
}

fn normalized(weights: &SpatialWeights) -> Result<Cow<'_, SpatialWeights>> {
    if weights.is_normalized() {
        Ok(Cow::Borrowed(weights))
    } else {
        Ok(Cow::Owned(row_normalize(weights)?))
    }
}
