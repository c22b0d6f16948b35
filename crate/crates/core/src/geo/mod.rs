//! Region geometry: GeoJSON ingest, contiguity, centroids and bearings.

mod contiguity;
mod parse;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{MoranError, Result};

pub use contiguity::{build_contiguity, ContiguityKind, ContiguityRule};
pub use parse::{parse_regions, parse_regions_value, DEFAULT_ID_PROPERTY};

pub type Point = [f64; 2];

/// One polygon: a closed exterior ring plus optional closed holes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polygon {
    pub exterior: Vec<Point>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub interiors: Vec<Vec<Point>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGeometry {
    pub id: String,
    pub polygons: Vec<Polygon>,
    pub centroid: Point,
}

impl RegionGeometry {
    /// Builds a region, closing any open rings and computing the centroid.
    pub fn new(id: impl Into<String>, polygons: Vec<Polygon>) -> Result<Self> {
        let id = id.into();
        let polygons = polygons
            .into_iter()
            .map(|p| {
                Ok(Polygon {
                    exterior: close_ring(p.exterior, &id)?,
                    interiors: p
                        .interiors
                        .into_iter()
                        .map(|r| close_ring(r, &id))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if polygons.is_empty() {
            return Err(MoranError::DegenerateGeometry(format!(
                "region {id} has no polygons"
            )));
        }
        let centroid = polygon_centroid(&polygons, &id)?;
        Ok(Self {
            id,
            polygons,
            centroid,
        })
    }

    /// Convenience constructor for a single exterior ring.
    pub fn from_ring(id: impl Into<String>, ring: Vec<Point>) -> Result<Self> {
        Self::new(
            id,
            vec![Polygon {
                exterior: ring,
                interiors: Vec::new(),
            }],
        )
    }

    pub fn exteriors(&self) -> impl Iterator<Item = &[Point]> {
        self.polygons.iter().map(|p| p.exterior.as_slice())
    }

    pub fn translated(&self, dx: f64, dy: f64) -> Result<Self> {
        let shift = |ring: &Vec<Point>| ring.iter().map(|[x, y]| [x + dx, y + dy]).collect();
        Self::new(
            self.id.clone(),
            self.polygons
                .iter()
                .map(|p| Polygon {
                    exterior: shift(&p.exterior),
                    interiors: p.interiors.iter().map(shift).collect(),
                })
                .collect(),
        )
    }
}

fn close_ring(mut ring: Vec<Point>, id: &str) -> Result<Vec<Point>> {
    if let (Some(first), Some(last)) = (ring.first().copied(), ring.last()) {
        if first != *last {
            ring.push(first);
        }
    }
    if ring.len() < 4 {
        return Err(MoranError::MalformedDocument(format!(
            "region {id} has a ring with fewer than 4 positions"
        )));
    }
    if ring.iter().flatten().any(|c| !c.is_finite()) {
        return Err(MoranError::MalformedDocument(format!(
            "region {id} has a non-finite coordinate"
        )));
    }
    Ok(ring)
}

/// Signed area and area-weighted centroid of a closed ring, computed about
/// the ring's first vertex.
fn ring_moments(ring: &[Point]) -> (f64, Point) {
    let [ox, oy] = ring[0];
    let mut twice_area = 0.0;
    let (mut cx, mut cy) = (0.0, 0.0);
    for pair in ring.windows(2) {
        let (x0, y0) = (pair[0][0] - ox, pair[0][1] - oy);
        let (x1, y1) = (pair[1][0] - ox, pair[1][1] - oy);
        let cross = x0 * y1 - x1 * y0;
        twice_area += cross;
        cx += (x0 + x1) * cross;
        cy += (y0 + y1) * cross;
    }
    let area = twice_area / 2.0;
    if area == 0.0 {
        return (0.0, ring[0]);
    }
    (area, [ox + cx / (6.0 * area), oy + cy / (6.0 * area)])
}

fn polygon_centroid(polygons: &[Polygon], id: &str) -> Result<Point> {
    let mut total = 0.0;
    let (mut x, mut y) = (0.0, 0.0);
    for polygon in polygons {
        let (area, [cx, cy]) = ring_moments(&polygon.exterior);
        let weight = area.abs();
        total += weight;
        x += weight * cx;
        y += weight * cy;
    }
    if total == 0.0 {
        return Err(MoranError::DegenerateGeometry(format!(
            "region {id} has zero area"
        )));
    }
    Ok([x / total, y / total])
}

/// Area-weighted centroid of the region's exterior rings.
pub fn centroid(region: &RegionGeometry) -> Result<Point> {
    polygon_centroid(&region.polygons, &region.id)
}

/// How coordinates are interpreted for bearings.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoordinateSystem {
    Planar,
    /// Longitude/latitude in degrees.
    #[default]
    LonLat,
}

/// Direction from `focal` to `neighbor`, counterclockwise from east, in
/// `[0, 2π)`.
///
/// For lon/lat input the longitude difference is wrapped to `[-180, 180]`
/// and scaled by the cosine of the mean latitude.
pub fn bearing(focal: Point, neighbor: Point, coords: CoordinateSystem) -> Result<f64> {
    let mut dx = neighbor[0] - focal[0];
    let dy = neighbor[1] - focal[1];
    if coords == CoordinateSystem::LonLat {
        dx = (dx + 180.0).rem_euclid(360.0) - 180.0;
        dx *= ((focal[1] + neighbor[1]) / 2.0).to_radians().cos();
    }
    if dx == 0.0 && dy == 0.0 {
        return Err(MoranError::CoincidentPoints);
    }
    let mut angle = dy.atan2(dx);
    if angle < 0.0 {
        angle += TAU;
    }
    if angle >= TAU {
        angle -= TAU;
    }
    Ok(angle + 0.0)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    pub(crate) fn square(id: &str, x: f64, y: f64) -> RegionGeometry {
        RegionGeometry::from_ring(
            id,
            vec![
                [x, y],
                [x + 1.0, y],
                [x + 1.0, y + 1.0],
                [x, y + 1.0],
                [x, y],
            ],
        )
        .unwrap()
    }

    #[test]
    fn centroids() {
        assert_eq!(square("a", 0.0, 0.0).centroid, [0.5, 0.5]);
        let tri = RegionGeometry::from_ring("t", vec![[0.0, 0.0], [2.0, 0.0], [0.0, 2.0]]).unwrap();
        assert_abs_diff_eq!(tri.centroid[0], 2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(tri.centroid[1], 2.0 / 3.0, epsilon = 1e-12);
        assert_eq!(centroid(&tri).unwrap(), tri.centroid);
    }

    #[test]
    fn multipolygon_centroid_weights_by_area() {
        let big = vec![[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        let small = vec![[10.0, 0.0], [11.0, 0.0], [11.0, 1.0], [10.0, 1.0]];
        let region = RegionGeometry::new(
            "m",
            vec![
                Polygon {
                    exterior: big,
                    interiors: vec![],
                },
                Polygon {
                    exterior: small,
                    interiors: vec![],
                },
            ],
        )
        .unwrap();
        // (4 * (1, 1) + 1 * (10.5, 0.5)) / 5
        assert_abs_diff_eq!(region.centroid[0], 14.5 / 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(region.centroid[1], 4.5 / 5.0, epsilon = 1e-12);
    }

    #[test]
    fn clockwise_ring_same_centroid() {
        let cw =
            RegionGeometry::from_ring("cw", vec![[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]])
                .unwrap();
        assert_eq!(cw.centroid, [0.5, 0.5]);
    }

    #[test]
    fn degenerate_sliver() {
        let err = RegionGeometry::from_ring("s", vec![[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        assert!(matches!(err, Err(MoranError::DegenerateGeometry(_))));
        let err = RegionGeometry::from_ring("s", vec![[0.0, 0.0], [1.0, 0.0]]);
        assert!(matches!(err, Err(MoranError::MalformedDocument(_))));
    }

    #[test]
    fn compass_bearings() {
        let planar = CoordinateSystem::Planar;
        assert_eq!(bearing([0.0, 0.0], [1.0, 0.0], planar).unwrap(), 0.0);
        assert_abs_diff_eq!(bearing([0.0, 0.0], [0.0, 1.0], planar).unwrap(), PI / 2.0);
        assert_abs_diff_eq!(
            bearing([0.0, 0.0], [-1.0, -1.0], planar).unwrap(),
            5.0 * PI / 4.0
        );
        assert!(matches!(
            bearing([1.0, 1.0], [1.0, 1.0], planar),
            Err(MoranError::CoincidentPoints)
        ));
    }

    #[test]
    fn lonlat_bearings() {
        let ll = CoordinateSystem::LonLat;
        // At 60 degrees a degree of longitude is half a degree of latitude.
        let a = bearing([0.0, 60.0], [1.0, 60.0 + 0.5], ll).unwrap();
        assert_abs_diff_eq!(a, PI / 4.0, epsilon = 1e-2);
        // Across the antimeridian, east stays east.
        assert_abs_diff_eq!(
            bearing([179.5, 0.0], [-179.5, 0.0], ll).unwrap(),
            0.0,
            epsilon = 1e-12
        );
    }

    proptest! {
        #[test]
        fn reverse_bearing(ax in -50.0f64..50.0, ay in -50.0f64..50.0, bx in -50.0f64..50.0, by in -50.0f64..50.0) {
            prop_assume!((ax - bx).abs() > 1e-6 || (ay - by).abs() > 1e-6);
            let planar = CoordinateSystem::Planar;
            let ab = bearing([ax, ay], [bx, by], planar).unwrap();
            let ba = bearing([bx, by], [ax, ay], planar).unwrap();
            prop_assert!((0.0..TAU).contains(&ab));
            let diff = (ab - (ba + PI).rem_euclid(TAU)).abs();
            prop_assert!(diff < 1e-9 || (TAU - diff) < 1e-9);
        }

        #[test]
        fn translation_moves_centroid(dx in -1e3f64..1e3, dy in -1e3f64..1e3) {
            let tri = RegionGeometry::from_ring("t", vec![[0.0, 0.0], [3.0, 0.0], [1.0, 2.0]]).unwrap();
            let moved = tri.translated(dx, dy).unwrap();
            prop_assert!((moved.centroid[0] - tri.centroid[0] - dx).abs() < 1e-9);
            prop_assert!((moved.centroid[1] - tri.centroid[1] - dy).abs() < 1e-9);
        }
    }
}
