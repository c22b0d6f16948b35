//! The analysis bundle: a self-contained JSON document holding the config,
//! per-region results, the raw neighbor structure, centroids and geometry.
//!
//! Files ending in `.gz` are gzip-compressed.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use flate2::read::GzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};

use crate::analysis::{analyze, AnalysisConfig, LocalMoranResult};
use crate::error::{MoranError, Result};
use crate::geo::{
    build_contiguity, parse_regions_value, ContiguityKind, ContiguityRule, CoordinateSystem, Point,
    RegionGeometry,
};
use crate::label::Label;
use crate::plots::{
    build_cluster_map, build_dual_density, build_network_scatter, build_radial,
    same_label_component, ClusterMapPayload, ColorMode, ComponentPayload, DualDensityPayload,
    NetworkScatterPayload, RadialPayload,
};
use crate::series::AttributeSeries;
use crate::weights::SpatialWeights;

pub const SCHEMA_VERSION: u32 = 1;

/// Offending ids listed in an id-mismatch message.
const MAX_LISTED_IDS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BundleConfig {
    pub permutations: usize,
    pub seed: u64,
    pub alpha: f64,
    pub contiguity: ContiguityKind,
    pub snap_tolerance: f64,
    pub coordinate_system: CoordinateSystem,
    pub id_property: String,
}

impl Default for BundleConfig {
    fn default() -> Self {
        let analysis = AnalysisConfig::default();
        let rule = ContiguityRule::default();
        Self {
            permutations: analysis.permutations,
            seed: analysis.seed,
            alpha: analysis.alpha,
            contiguity: rule.kind,
            snap_tolerance: rule.snap_tolerance,
            coordinate_system: CoordinateSystem::default(),
            id_property: crate::geo::DEFAULT_ID_PROPERTY.to_string(),
        }
    }
}

impl BundleConfig {
    pub fn analysis(&self) -> AnalysisConfig {
        AnalysisConfig {
            permutations: self.permutations,
            seed: self.seed,
            alpha: self.alpha,
        }
    }

    pub fn contiguity_rule(&self) -> ContiguityRule {
        ContiguityRule {
            kind: self.contiguity,
            snap_tolerance: self.snap_tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum GeometryRef {
    Embedded { document: serde_json::Value },
    Path { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PayloadCache {
    pub network: NetworkScatterPayload,
    pub cluster_map: ClusterMapPayload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Meta {
    pub dataset_name: String,
    pub config: BundleConfig,
    pub region_count: usize,
    pub edge_count: usize,
    pub label_counts: BTreeMap<Label, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisBundle {
    pub schema_version: u32,
    pub dataset_name: String,
    pub config: BundleConfig,
    pub results: Vec<LocalMoranResult>,
    /// Raw binary contiguity, indexed like `results`.
    pub weights: SpatialWeights,
    pub centroids: Vec<Point>,
    pub geometry_ref: GeometryRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub payload_cache: Option<PayloadCache>,
}

/// Orders attribute values to match `regions`, failing with every id found
/// on only one side (up to ten listed).
pub fn align_series(
    regions: &[RegionGeometry],
    ids: &[String],
    values: &[f64],
) -> Result<AttributeSeries> {
    if ids.len() != values.len() {
        return Err(MoranError::LengthMismatch {
            expected: ids.len(),
            actual: values.len(),
        });
    }
    let mut by_id = HashMap::with_capacity(ids.len());
    for (id, &v) in ids.iter().zip(values) {
        if by_id.insert(id.as_str(), v).is_some() {
            return Err(MoranError::DuplicateId(id.clone()));
        }
    }
    let geometry_ids: HashSet<&str> = regions.iter().map(|r| r.id.as_str()).collect();

    let mut offending: Vec<String> = ids
        .iter()
        .filter(|id| !geometry_ids.contains(id.as_str()))
        .map(|id| format!("{id} (not in geometry)"))
        .collect();
    offending.extend(
        regions
            .iter()
            .filter(|r| !by_id.contains_key(r.id.as_str()))
            .map(|r| format!("{} (no attribute value)", r.id)),
    );
    if !offending.is_empty() {
        let total = offending.len();
        offending.truncate(MAX_LISTED_IDS);
        let more = if total > MAX_LISTED_IDS {
            format!(" and {} more", total - MAX_LISTED_IDS)
        } else {
            String::new()
        };
        return Err(MoranError::IdMismatch(format!(
            "{}{more}",
            offending.join(", ")
        )));
    }

    AttributeSeries::new(
        regions.iter().map(|r| r.id.clone()).collect(),
        regions.iter().map(|r| by_id[r.id.as_str()]).collect(),
    )
}

impl AnalysisBundle {
    /// Parses the geometry, builds contiguity, aligns values and analyzes.
    pub fn compute(
        dataset_name: impl Into<String>,
        document: serde_json::Value,
        ids: &[String],
        values: &[f64],
        config: BundleConfig,
    ) -> Result<Self> {
        config.analysis().validate()?;
        if config.snap_tolerance.is_nan() || config.snap_tolerance < 0.0 {
            return Err(MoranError::Bundle(format!(
                "snap tolerance must be non-negative, got {}",
                config.snap_tolerance
            )));
        }
        let regions = parse_regions_value(&document, &config.id_property)?;
        let series = align_series(&regions, ids, values)?;
        let weights = build_contiguity(&regions, config.contiguity_rule());
        let results = analyze(&series, &weights, &config.analysis())?;
        Ok(Self {
            schema_version: SCHEMA_VERSION,
            dataset_name: dataset_name.into(),
            config,
            results,
            weights,
            centroids: regions.iter().map(|r| r.centroid).collect(),
            geometry_ref: GeometryRef::Embedded { document },
            payload_cache: None,
        })
    }

    pub fn with_payload_cache(mut self) -> Result<Self> {
        self.payload_cache = Some(PayloadCache {
            network: build_network_scatter(&self.results, &self.weights)?,
            cluster_map: build_cluster_map(&self.results),
        });
        Ok(self)
    }

    /// Checks the invariants a reader relies on.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(MoranError::Bundle(format!(
                "unsupported schema version {}",
                self.schema_version
            )));
        }
        let n = self.results.len();
        if self.weights.n() != n || self.centroids.len() != n {
            return Err(MoranError::Bundle(format!(
                "{n} results, {} weight rows, {} centroids",
                self.weights.n(),
                self.centroids.len()
            )));
        }
        let mut seen = HashSet::with_capacity(n);
        for r in &self.results {
            if !seen.insert(r.id.as_str()) {
                return Err(MoranError::DuplicateId(r.id.clone()));
            }
        }
        Ok(())
    }

    pub fn to_json_bytes(&self) -> Result<Vec<u8>> {
        Ok(serde_json::to_vec(self)?)
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self> {
        let bundle: Self = serde_json::from_slice(bytes)?;
        bundle.validate()?;
        Ok(bundle)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let file = BufWriter::new(File::create(path)?);
        if is_gzip(path) {
            let mut encoder = GzEncoder::new(file, Compression::default());
            serde_json::to_writer(&mut encoder, self)?;
            encoder.finish()?.flush()?;
        } else {
            let mut file = file;
            serde_json::to_writer(&mut file, self)?;
            file.flush()?;
        }
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let mut reader: Box<dyn Read> = if is_gzip(path) {
            Box::new(GzDecoder::new(BufReader::new(File::open(path)?)))
        } else {
            Box::new(BufReader::new(File::open(path)?))
        };
        let mut bytes = Vec::new();
        reader.read_to_end(&mut bytes)?;
        Self::from_json_bytes(&bytes)
    }

    /// The region geometry document, loading it when stored by path.
    pub fn geometry_document(&self) -> Result<serde_json::Value> {
        match &self.geometry_ref {
            GeometryRef::Embedded { document } => Ok(document.clone()),
            GeometryRef::Path { path } => {
                let text = std::fs::read_to_string(path)?;
                serde_json::from_str(&text)
                    .map_err(|e| MoranError::MalformedDocument(e.to_string()))
            }
        }
    }

    pub fn meta(&self) -> Meta {
        let mut label_counts: BTreeMap<Label, usize> = Label::ALL.iter().map(|&l| (l, 0)).collect();
        for r in &self.results {
            *label_counts.entry(r.label).or_default() += 1;
        }
        Meta {
            dataset_name: self.dataset_name.clone(),
            config: self.config.clone(),
            region_count: self.results.len(),
            edge_count: self.weights.edge_count(),
            label_counts,
        }
    }

    pub fn network(&self) -> Result<NetworkScatterPayload> {
        match &self.payload_cache {
            Some(cache) => Ok(cache.network.clone()),
            None => build_network_scatter(&self.results, &self.weights),
        }
    }

    pub fn cluster_map(&self) -> ClusterMapPayload {
        match &self.payload_cache {
            Some(cache) => cache.cluster_map.clone(),
            None => build_cluster_map(&self.results),
        }
    }

    pub fn dual_density(&self, id: &str, mode: ColorMode) -> Result<DualDensityPayload> {
        build_dual_density(id, &self.results, &self.weights, mode)
    }

    pub fn radial(&self, id: &str) -> Result<RadialPayload> {
        build_radial(
            id,
            &self.results,
            &self.weights,
            &self.centroids,
            self.config.coordinate_system,
        )
    }

    pub fn component(&self, id: &str) -> Result<ComponentPayload> {
        same_label_component(id, &self.results, &self.weights)
    }
}

fn is_gzip(path: &Path) -> bool {
    path.extension().is_some_and(|ext| ext == "gz")
}
