//! Local Moran's I with conditional permutation inference, contiguity
//! weights from region geometry, and payloads for linked exploratory views:
//! the dual-density plot, the network scatterplot, the spatial lag radial
//! plot and the LISA cluster map.
//!
//! ```
//! use moran_core::{analyze, AnalysisConfig, AttributeSeries, SpatialWeights};
//!
//! let ids = (1..=5).map(|i| i.to_string()).collect();
//! let series = AttributeSeries::new(ids, vec![1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
//! let path = SpatialWeights::from_neighbors(vec![
//!     vec![1], vec![0, 2], vec![1, 3], vec![2, 4], vec![3],
//! ]).unwrap();
//! let results = analyze(&series, &path, &AnalysisConfig::default()).unwrap();
//! assert!((results[0].statistic.unwrap() - 0.2).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod bundle;
pub mod density;
pub mod error;
pub mod geo;
pub mod inference;
pub mod label;
pub mod moran;
pub mod plots;
pub mod series;
pub mod weights;

pub use analysis::{analyze, AnalysisConfig, LocalMoranResult};
pub use bundle::{align_series, AnalysisBundle, BundleConfig, GeometryRef, Meta, SCHEMA_VERSION};
pub use density::{kde, silverman_bandwidth, DensityCurve};
pub use error::{MoranError, Result};
pub use geo::{
    bearing, build_contiguity, centroid, parse_regions, ContiguityKind, ContiguityRule,
    CoordinateSystem, RegionGeometry,
};
pub use inference::{
    conditional_permutation, pseudo_p, significance_thresholds, PermutationSummary,
};
pub use label::{assign_label, Label};
pub use moran::{global_moran, local_moran};
pub use plots::ColorMode;
pub use series::{zscore_normalize, AttributeSeries};
pub use weights::{row_normalize, spatial_lag, SpatialWeights};
