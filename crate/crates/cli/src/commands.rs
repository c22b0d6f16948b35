use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use moran_core::{AnalysisBundle, BundleConfig, ContiguityKind, CoordinateSystem, GeometryRef};

use crate::api::{respond, Endpoint};
use crate::data::read_attributes;
use crate::error::{CliError, Result};
use crate::server;

#[derive(Debug, Parser)]
#[command(
    name = "moran",
    version,
    about = "Local Moran's I with conditional permutation inference"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a geometry and attribute table and write a bundle.
    Compute(ComputeArgs),
    /// Serve a bundle over HTTP.
    Serve(ServeArgs),
    /// Write one plot payload from a bundle as JSON.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Contiguity {
    Queen,
    Rook,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Coords {
    Planar,
    Lonlat,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    /// GeoJSON FeatureCollection of polygons.
    #[arg(long)]
    pub geo: PathBuf,
    /// CSV attribute table with a header row.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long)]
    pub id_col: String,
    #[arg(long)]
    pub value_col: String,
    #[arg(long, value_enum, default_value = "queen")]
    pub contiguity: Contiguity,
    #[arg(long, default_value_t = 999)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Bundle path; gzip-compressed when it ends in .gz.
    #[arg(long)]
    pub out: PathBuf,
    /// Coordinate system used for radial bearings.
    #[arg(long, value_enum, default_value = "lonlat")]
    pub coords: Coords,
    /// Feature property holding the region id.
    #[arg(long, default_value = moran_core::geo::DEFAULT_ID_PROPERTY)]
    pub id_property: String,
    /// Vertex snapping tolerance for contiguity.
    #[arg(long, default_value_t = 1e-7)]
    pub snap_tolerance: f64,
    /// Dataset name recorded in the bundle; defaults to the data file stem.
    #[arg(long)]
    pub name: Option<String>,
    /// Reference the geometry file by path instead of embedding it.
    #[arg(long)]
    pub link_geometry: bool,
    /// Precompute the network and cluster-map payloads into the bundle.
    #[arg(long)]
    pub cache_payloads: bool,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub bundle: PathBuf,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// Directory of dashboard assets served at /.
    #[arg(long = "static")]
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PlotKind {
    DualDensity,
    Network,
    Radial,
    ClusterMap,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long)]
    pub bundle: PathBuf,
    #[arg(long, value_enum)]
    pub plot: PlotKind,
    /// Region id, required for dual-density and radial.
    #[arg(long)]
    pub location: Option<String>,
    /// Color mode for dual-density.
    #[arg(long, value_enum, default_value = "label")]
    pub mode: Mode,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Mode {
    Label,
    Autocorrelation,
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Compute(args) => compute(&args),
        Command::Serve(args) => serve(args),
        Command::Export(args) => export(&args),
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value> {
    let file =
        File::open(path).map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
    serde_json::from_reader(BufReader::new(file))
        .map_err(|e| CliError::Malformed(format!("{}: invalid JSON: {e}", path.display())))
}

pub fn compute(args: &ComputeArgs) -> Result<()> {
    let document = read_json(&args.geo)?;
    let data = File::open(&args.data)
        .map_err(|e| CliError::io(format!("reading {}", args.data.display()), e))?;
    let (ids, values) = read_attributes(BufReader::new(data), &args.id_col, &args.value_col)?;
    log::info!(
        "read {} attribute rows from {}",
        ids.len(),
        args.data.display()
    );

    let config = BundleConfig {
        permutations: args.permutations,
        seed: args.seed,
        alpha: args.alpha,
        contiguity: match args.contiguity {
            Contiguity::Queen => ContiguityKind::Queen,
            Contiguity::Rook => ContiguityKind::Rook,
        },
        snap_tolerance: args.snap_tolerance,
        coordinate_system: match args.coords {
            Coords::Planar => CoordinateSystem::Planar,
            Coords::Lonlat => CoordinateSystem::LonLat,
        },
        id_property: args.id_property.clone(),
    };
    let name = args.name.clone().unwrap_or_else(|| {
        args.data
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });
    let mut bundle = AnalysisBundle::compute(name, document, &ids, &values, config)
        .map_err(|e| CliError::core("analysis failed", e))?;
    if args.link_geometry {
        let path = std::fs::canonicalize(&args.geo)
            .map_err(|e| CliError::io(format!("resolving {}", args.geo.display()), e))?;
        bundle.geometry_ref = GeometryRef::Path { path };
    }
    if args.cache_payloads {
        bundle = bundle
            .with_payload_cache()
            .map_err(|e| CliError::core("payload cache", e))?;
    }
    bundle
        .write(&args.out)
        .map_err(|e| CliError::core(format!("writing {}", args.out.display()), e))?;
    let meta = bundle.meta();
    log::info!(
        "wrote {} ({} regions, {} edges)",
        args.out.display(),
        meta.region_count,
        meta.edge_count
    );
    Ok(())
}

pub fn load_bundle(path: &Path) -> Result<AnalysisBundle> {
    AnalysisBundle::read(path).map_err(|e| CliError::Input {
        context: format!("reading bundle {}", path.display()),
        source: e,
    })
}

fn serve(args: ServeArgs) -> Result<()> {
    let bundle = load_bundle(&args.bundle)?;
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| CliError::io("starting runtime", e))?;
    runtime.block_on(server::serve(bundle, args.port, args.static_dir))
}

/// The endpoint an export corresponds to.
pub fn export_endpoint(args: &ExportArgs) -> Result<Endpoint> {
    let location = || {
        args.location
            .clone()
            .ok_or_else(|| CliError::Usage("--location is required for this plot".into()))
    };
    Ok(match args.plot {
        PlotKind::Network => Endpoint::Network,
        PlotKind::ClusterMap => Endpoint::ClusterMap,
        PlotKind::Radial => Endpoint::Radial { id: location()? },
        PlotKind::DualDensity => Endpoint::DualDensity {
            id: location()?,
            mode: match args.mode {
                Mode::Label => moran_core::ColorMode::Label,
                Mode::Autocorrelation => moran_core::ColorMode::Autocorrelation,
            },
        },
    })
}

pub fn export(args: &ExportArgs) -> Result<()> {
    let endpoint = export_endpoint(args)?;
    let bundle = load_bundle(&args.bundle)?;
    let body = respond(&bundle, &endpoint).map_err(|e| match e.kind {
        "isolatedRegion" => CliError::IsolatedRegion(args.location.clone().unwrap_or_default()),
        _ => CliError::Malformed(e.message),
    })?;
    std::fs::write(&args.out, body)
        .map_err(|e| CliError::io(format!("writing {}", args.out.display()), e))
}
