//! The `moran` command-line workflow: compute a bundle from GeoJSON and CSV,
//! serve it over HTTP, or export single plot payloads.

pub mod api;
pub mod commands;
pub mod data;
pub mod error;
pub mod server;

pub use error::{CliError, Result};
