#![allow(dead_code)]

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

/// Unit squares in a row with ids `1..=n`, plus one far-away square per
/// entry of `isolated`.
pub fn row_geojson(n: usize, isolated: &[&str]) -> Value {
    let square = |id: Value, x: f64, y: f64| {
        json!({
            "type": "Feature",
            "properties": {"id": id},
            "geometry": {"type": "Polygon", "coordinates": [[
                [x, y], [x + 1.0, y], [x + 1.0, y + 1.0], [x, y + 1.0], [x, y]
            ]]}
        })
    };
    let mut features: Vec<Value> = (0..n)
        .map(|i| square(json!(i + 1), i as f64, 0.0))
        .collect();
    for (k, id) in isolated.iter().enumerate() {
        features.push(square(json!(id), 3.0 * k as f64, 20.0));
    }
    json!({"type": "FeatureCollection", "features": features})
}

pub fn write(dir: &Path, name: &str, contents: impl AsRef<[u8]>) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

/// The five-region path with values 1..5.
pub fn fixture_inputs(dir: &Path) -> (PathBuf, PathBuf) {
    let geo = write(dir, "regions.geojson", row_geojson(5, &[]).to_string());
    let csv = write(dir, "values.csv", "region,rate\n1,1\n2,2\n3,3\n4,4\n5,5\n");
    (geo, csv)
}
