//! Response bodies for every API endpoint.
//!
//! `respond` is a pure function of the bundle and the endpoint. The HTTP
//! service and `moran export` both call it, so an exported file is
//! byte-identical to the matching response body.

use moran_core::{AnalysisBundle, ColorMode, MoranError, SCHEMA_VERSION};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint {
    Meta,
    Results,
    Network,
    ClusterMap,
    DualDensity { id: String, mode: ColorMode },
    Radial { id: String },
    Component { id: String },
    Geometry,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    pub status: u16,
    pub kind: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: u16, kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            kind,
            message: message.into(),
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(404, "notFound", message)
    }

    pub fn body(&self) -> Vec<u8> {
        #[derive(Serialize)]
        #[serde(rename_all = "camelCase")]
        struct ErrorBody<'a> {
            schema_version: u32,
            error: &'a ApiError,
        }
        serde_json::to_vec(&ErrorBody {
            schema_version: SCHEMA_VERSION,
            error: self,
        })
        .expect("error body serializes")
    }
}

impl From<MoranError> for ApiError {
    fn from(e: MoranError) -> Self {
        let message = e.to_string();
        match e {
            MoranError::UnknownId(_) => Self::new(404, "unknownId", message),
            MoranError::IsolatedRegion(_) => Self::new(422, "isolatedRegion", message),
            MoranError::DegenerateGeometry(_) => Self::new(422, "degenerateGeometry", message),
            _ => Self::new(500, "internal", message),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Envelope<T> {
    schema_version: u32,
    #[serde(flatten)]
    payload: T,
}

#[derive(Serialize)]
struct Results<'a> {
    results: &'a [moran_core::LocalMoranResult],
}

fn envelope<T: Serialize>(payload: T) -> Result<Vec<u8>, ApiError> {
    serde_json::to_vec(&Envelope {
        schema_version: SCHEMA_VERSION,
        payload,
    })
    .map_err(|e| ApiError::new(500, "internal", e.to_string()))
}

/// JSON body for `endpoint`. Every body carries `schemaVersion`.
pub fn respond(bundle: &AnalysisBundle, endpoint: &Endpoint) -> Result<Vec<u8>, ApiError> {
    match endpoint {
        Endpoint::Meta => envelope(bundle.meta()),
        Endpoint::Results => envelope(Results {
            results: &bundle.results,
        }),
        Endpoint::Network => envelope(bundle.network()?),
        Endpoint::ClusterMap => envelope(bundle.cluster_map()),
        Endpoint::DualDensity { id, mode } => envelope(bundle.dual_density(id, *mode)?),
        Endpoint::Radial { id } => envelope(bundle.radial(id)?),
        Endpoint::Component { id } => envelope(bundle.component(id)?),
        Endpoint::Geometry => {
            // GeoJSON allows foreign members, so the document stays usable as-is.
            let mut document = bundle.geometry_document()?;
            match document.as_object_mut() {
                Some(object) => {
                    object.insert("schemaVersion".into(), SCHEMA_VERSION.into());
                }
                None => {
                    return Err(ApiError::new(
                        500,
                        "internal",
                        "geometry is not a JSON object",
                    ))
                }
            }
            serde_json::to_vec(&document).map_err(|e| ApiError::new(500, "internal", e.to_string()))
        }
    }
}

/// Parses the `mode` query value; absent means the label mode.
pub fn parse_mode(value: Option<&str>) -> Result<ColorMode, ApiError> {
    match value {
        None => Ok(ColorMode::default()),
        Some(raw) => serde_json::from_value(raw.into()).map_err(|_| {
            ApiError::new(
                400,
                "badRequest",
                format!("unknown mode {raw:?}, expected label or autocorrelation"),
            )
        }),
    }
}
