use serde::{Deserialize, Serialize};

use super::{check_aligned, normalized, position};
use crate::analysis::LocalMoranResult;
use crate::error::{MoranError, Result};
use crate::geo::{bearing, CoordinateSystem, Point};
use crate::weights::SpatialWeights;

/// Presentation margin beyond the radial domain, as a fraction of its span.
pub const RADIAL_PADDING: f64 = 0.05;

/// One neighbor axis: direction from the focal centroid, value and weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Spoke {
    pub neighbor_id: String,
    pub angle: f64,
    pub z: f64,
    pub weight: f64,
}

/// Radii are in z units; the dashboard maps `radial_domain` onto the radius.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RadialPayload {
    pub focal_id: String,
    pub spokes: Vec<Spoke>,
    pub lag_radius_value: f64,
    pub zero_ring_value: f64,
    pub min_disc_value: f64,
    pub radial_domain: [f64; 2],
    pub padding_fraction: f64,
}

/// `centroids[i]` is the centroid of the region behind `results[i]`.
pub fn build_radial(
    focal_id: &str,
    results: &[LocalMoranResult],
    weights: &SpatialWeights,
    centroids: &[Point],
    coords: CoordinateSystem,
) -> Result<RadialPayload> {
    check_aligned(results, weights)?;
    if centroids.len() != results.len() {
        return Err(MoranError::LengthMismatch {
            expected: results.len(),
            actual: centroids.len(),
        });
    }
    let weights = normalized(weights)?;
    let focal = position(results, focal_id)?;
    let Some(lag) = results[focal].lag else {
        return Err(MoranError::IsolatedRegion(focal_id.to_string()));
    };

    let spokes = weights
        .row(focal)
        .iter()
        .map(|&(j, w)| {
            let angle = bearing(centroids[focal], centroids[j], coords).map_err(|_| {
                MoranError::DegenerateGeometry(format!(
                    "regions {} and {} share a centroid",
                    results[focal].id, results[j].id
                ))
            })?;
            Ok(Spoke {
                neighbor_id: results[j].id.clone(),
                angle,
                z: results[j].z,
                weight: w,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let (z_min, z_max) = results
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.z), hi.max(r.z))
        });
    let radial_domain = [z_min.min(0.0).min(lag), z_max.max(0.0).max(lag)];

    Ok(RadialPayload {
        focal_id: results[focal].id.clone(),
        spokes,
        lag_radius_value: lag,
        zero_ring_value: 0.0,
        min_disc_value: z_min,
        radial_domain,
        padding_fraction: RADIAL_PADDING,
    })
}
