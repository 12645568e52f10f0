use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use identispace_core::geom::surface_point;
use identispace_core::mesh::{validate, MeshReport};
use identispace_core::stl::{read_stl, write_stl, StlError, StlMode};
use identispace_core::topology::{self, builtin_complex, format_group, SpaceName};
use identispace_core::wireframe::{build_wireframe, plan_segments};
use thiserror::Error;

use crate::config::{ConfigError, Settings};
use crate::{EXIT_INVALID_MESH, EXIT_OK};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Stl { path: String, source: StlError },
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

/// Shortest round-trip decimal, with negative zero printed as `0`.
pub fn format_coord(x: f64) -> String {
    format!("{}", x + 0.0)
}

fn format_point(p: [f64; 3]) -> String {
    p.map(format_coord).join(" ")
}

fn print_report(report: &MeshReport) {
    println!("triangles: {}", report.triangle_count);
    println!(
        "components: {} (watertight: {})",
        report.component_count,
        report.watertight_count()
    );
    println!("boundary edges: {}", report.boundary_edge_count);
    println!("non-manifold edges: {}", report.nonmanifold_edge_count);
    println!("degenerate triangles: {}", report.degenerate_count);
    let off_sphere = report
        .euler_characteristic_per_component
        .iter()
        .filter(|&&x| x != 2)
        .count();
    println!("components with euler characteristic != 2: {off_sphere}");
    println!("bbox min: {}", format_point(report.bbox_min));
    println!("bbox max: {}", format_point(report.bbox_max));
    println!(
        "verdict: {}",
        if report.all_watertight() { "watertight" } else { "NOT watertight" }
    );
}

pub fn generate(settings: &Settings) -> Result<u8, CliError> {
    let spec = settings.wireframe_spec()?;
    let plan = plan_segments(&spec);
    let degenerate = plan.iter().filter(|s| s.is_degenerate()).count();
    let mesh = build_wireframe(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let report = validate(&mesh);

    let path = settings.output_path();
    let shown = path.display().to_string();
    let mode = if settings.ascii.unwrap_or(false) { StlMode::Ascii } else { StlMode::Binary };
    let io_err = |source| CliError::Io { path: shown.clone(), source };
    let mut out = BufWriter::new(File::create(&path).map_err(io_err)?);
    write_stl(&mesh, mode, &mut out).map_err(|source| CliError::Stl {
        path: shown.clone(),
        source,
    })?;
    out.flush().map_err(io_err)?;
    let written = std::fs::metadata(&path).map_err(io_err)?.len();

    println!("surface: {}", spec.surface.kind);
    println!("segments: {} (degenerate, emitted as spheres: {})", plan.len(), degenerate);
    print_report(&report);
    println!(
        "wrote {} ({} bytes, {})",
        shown,
        written,
        if mode == StlMode::Binary { "binary" } else { "ascii" }
    );
    if report.all_watertight() {
        Ok(EXIT_OK)
    } else {
        eprintln!("warning: mesh failed validation; STL written anyway");
        Ok(EXIT_INVALID_MESH)
    }
}

pub fn validate_file(path: &Path, json: bool) -> Result<u8, CliError> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let mesh = read_stl(&bytes).map_err(|source| CliError::Stl { path: shown, source })?;
    drop(bytes);
    let report = validate(&mesh);
    print_report(&report);
    if json {
        let text = serde_json::to_string(&report).expect("report serializes");
        println!("{text}");
    }
    Ok(if report.all_watertight() { EXIT_OK } else { EXIT_INVALID_MESH })
}

pub fn homology(settings: &Settings) -> Result<u8, CliError> {
    let space: SpaceName = settings.space.ok_or(ConfigError::Missing("--space"))?;
    let complex = builtin_complex(space);
    let degrees: Vec<usize> = match settings.dim {
        Some(k) if k > complex.dimension() => {
            return Err(CliError::Usage(format!(
                "--dim {k} is outside 0..={} for {space}",
                complex.dimension()
            )))
        }
        Some(k) => vec![k],
        None => (0..=complex.dimension()).collect(),
    };
    for k in degrees {
        let group = topology::homology(&complex, k).map_err(|e| CliError::Usage(e.to_string()))?;
        println!("H_{k}({space}) = {}", format_group(&group));
    }
    Ok(EXIT_OK)
}

pub fn sample(settings: &Settings, i: f64, j: f64) -> Result<u8, CliError> {
    if !(i.is_finite() && j.is_finite()) {
        return Err(CliError::Usage("grid coordinates must be finite".into()));
    }
    let params = settings.surface_params()?;
    let p = surface_point(i, j, &params);
    println!("{}", format_point([p.x, p.y, p.z]));
    Ok(EXIT_OK)
}
