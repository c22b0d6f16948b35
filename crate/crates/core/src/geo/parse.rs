use std::collections::HashSet;

use geojson::{feature::Id, GeoJson, Value};

use super::{Point, Polygon, RegionGeometry};
use crate::error::{MoranError, Result};

pub const DEFAULT_ID_PROPERTY: &str = "id";

/// Parses a GeoJSON FeatureCollection of Polygon/MultiPolygon features.
pub fn parse_regions(document: &str, id_property: &str) -> Result<Vec<RegionGeometry>> {
    let value: serde_json::Value =
        serde_json::from_str(document).map_err(|e| MoranError::MalformedDocument(e.to_string()))?;
    parse_regions_value(&value, id_property)
}

/// As [`parse_regions`], from an already-decoded JSON value.
///
/// The id is read from `properties[id_property]`; when the property is
/// absent and `id_property` is `"id"`, the feature-level `id` member is used.
/// Numeric ids are rendered in their JSON form (`7`, not `7.0`).
pub fn parse_regions_value(
    document: &serde_json::Value,
    id_property: &str,
) -> Result<Vec<RegionGeometry>> {
    let geojson = GeoJson::from_json_value(document.clone())
        .map_err(|e| MoranError::MalformedDocument(e.to_string()))?;
    let GeoJson::FeatureCollection(collection) = geojson else {
        return Err(MoranError::MalformedDocument(
            "expected a FeatureCollection".into(),
        ));
    };

    let mut seen = HashSet::new();
    let mut regions = Vec::with_capacity(collection.features.len());
    for (index, feature) in collection.features.into_iter().enumerate() {
        let from_properties = feature
            .properties
            .as_ref()
            .and_then(|p| p.get(id_property))
            .and_then(json_id);
        let from_member = match (&feature.id, id_property == DEFAULT_ID_PROPERTY) {
            (Some(Id::String(s)), true) => Some(s.clone()),
            (Some(Id::Number(n)), true) => Some(n.to_string()),
            _ => None,
        };
        let id = from_properties
            .or(from_member)
            .ok_or(MoranError::MissingId(index))?;
        if !seen.insert(id.clone()) {
            return Err(MoranError::DuplicateId(id));
        }

        let geometry = feature.geometry.ok_or_else(|| {
            MoranError::MalformedDocument(format!("feature {index} has no geometry"))
        })?;
        let polygons = match geometry.value {
            Value::Polygon(rings) => vec![polygon(rings)],
            Value::MultiPolygon(parts) => parts.into_iter().map(polygon).collect(),
            other => {
                return Err(MoranError::UnsupportedGeometry {
                    feature: index,
                    kind: other.type_name().to_string(),
                })
            }
        };
        regions.push(RegionGeometry::new(id, polygons)?);
    }
    Ok(regions)
}

fn json_id(value: &serde_json::Value) -> Option<String> {
    match value {
        serde_json::Value::String(s) => Some(s.clone()),
        serde_json::Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn ring(positions: Vec<Vec<f64>>) -> Vec<Point> {
    positions.into_iter().map(|p| [p[0], p[1]]).collect()
}

fn polygon(mut rings: Vec<Vec<Vec<f64>>>) -> Polygon {
    if rings.is_empty() {
        return Polygon {
            exterior: Vec::new(),
            interiors: Vec::new(),
        };
    }
    let exterior = ring(rings.remove(0));
    Polygon {
        exterior,
        interiors: rings.into_iter().map(ring).collect(),
    }
}
