//! Read-only HTTP service over a loaded bundle.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::get;
use axum::Router;
use moran_core::AnalysisBundle;
use tower_http::services::ServeDir;

use crate::api::{parse_mode, respond, ApiError, Endpoint};
use crate::error::{CliError, Result};

type Shared = Arc<AnalysisBundle>;

fn json(status: u16, body: Vec<u8>) -> Response {
    let status = StatusCode::from_u16(status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

fn reply(bundle: &AnalysisBundle, endpoint: std::result::Result<Endpoint, ApiError>) -> Response {
    match endpoint.and_then(|e| respond(bundle, &e)) {
        Ok(body) => json(200, body),
        Err(error) => {
            log::debug!("{} {}", error.status, error.message);
            json(error.status, error.body())
        }
    }
}

fn fixed(endpoint: Endpoint) -> impl Fn(State<Shared>) -> std::future::Ready<Response> + Clone {
    move |State(bundle): State<Shared>| std::future::ready(reply(&bundle, Ok(endpoint.clone())))
}

async fn dual_density(
    State(bundle): State<Shared>,
    Path(id): Path<String>,
    Query(query): Query<HashMap<String, String>>,
) -> Response {
    let endpoint = parse_mode(query.get("mode").map(String::as_str))
        .map(|mode| Endpoint::DualDensity { id, mode });
    reply(&bundle, endpoint)
}

async fn radial(State(bundle): State<Shared>, Path(id): Path<String>) -> Response {
    reply(&bundle, Ok(Endpoint::Radial { id }))
}

async fn component(State(bundle): State<Shared>, Path(id): Path<String>) -> Response {
    reply(&bundle, Ok(Endpoint::Component { id }))
}

async fn api_not_found() -> Response {
    json(404, ApiError::not_found("no such endpoint").body())
}

/// Routes for `bundle`, with `static_dir` (if any) served at `/`.
pub fn router(bundle: AnalysisBundle, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/meta", get(fixed(Endpoint::Meta)))
        .route("/results", get(fixed(Endpoint::Results)))
        .route("/plots/network", get(fixed(Endpoint::Network)))
        .route("/plots/cluster-map", get(fixed(Endpoint::ClusterMap)))
        .route("/plots/dual-density/{id}", get(dual_density))
        .route("/plots/radial/{id}", get(radial))
        .route("/component/{id}", get(component))
        .route("/geometry", get(fixed(Endpoint::Geometry)))
        .fallback(api_not_found);
    let app = Router::new().nest("/api", api);
    let app = match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.fallback(api_not_found),
    };
    app.with_state(Arc::new(bundle))
}

/// Binds `port` on all interfaces and serves until interrupted.
pub async fn serve(bundle: AnalysisBundle, port: u16, static_dir: Option<PathBuf>) -> Result<()> {
    let addr = SocketAddr::from(([0, 0, 0, 0], port));
    let listener = tokio::net::TcpListener::bind(addr)
        .await
        .map_err(|e| match e.kind() {
            std::io::ErrorKind::AddrInUse => CliError::PortInUse(port),
            _ => CliError::io(format!("binding {addr}"), e),
        })?;
    log::info!("serving {} regions on http://{addr}", bundle.results.len());
    axum::serve(listener, router(bundle, static_dir))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
            log::info!("shutting down");
        })
        .await
        .map_err(|e| CliError::io("serving", e))
}
