use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use identispace_core::geom::SurfaceKind;
use identispace_core::topology::SpaceName;

mod commands;
mod config;

use config::Settings;

/// Exit codes shared by all subcommands.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID_MESH: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "identispace", version, about = "Wireframe models and homology of the square's identification spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a capsule wireframe, validate it and write STL.
    Generate {
        #[command(flatten)]
        surface: SurfaceFlags,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write ASCII instead of binary STL.
        #[arg(long)]
        ascii: bool,
        /// Walk one substep past each grid edge like the original loop bounds.
        #[arg(long)]
        legacy_overshoot: bool,
    },
    /// Check an STL file for watertight components.
    Validate {
        path: PathBuf,
        /// Also print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print integer homology of a built-in space.
    Homology {
        #[arg(long)]
        space: Option<SpaceName>,
        #[arg(long)]
        dim: Option<usize>,
        #[command(flatten)]
        config: ConfigFlag,
    },
    /// Evaluate a surface at grid coordinates (i, j).
    Sample {
        #[command(flatten)]
        surface: SurfaceFlags,
        #[arg(allow_negative_numbers = true)]
        i: f64,
        #[arg(allow_negative_numbers = true)]
        j: f64,
    },
}

#[derive(Args)]
struct ConfigFlag {
    /// Config file of `key = value` lines.
    #[arg(long, env = "IDENTISPACE_CONFIG")]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SurfaceFlags {
    #[arg(long)]
    surface: Option<SurfaceKind>,
    #[arg(long)]
    outer_radius: Option<f64>,
    #[arg(long)]
    inner_radius: Option<f64>,
    #[arg(long)]
    lat_ribs: Option<u32>,
    #[arg(long)]
    long_ribs: Option<u32>,
    #[arg(long)]
    outer_density: Option<u32>,
    #[arg(long)]
    inner_density: Option<u32>,
    /// Capsule radius in mm.
    #[arg(long)]
    thickness: Option<f64>,
    #[arg(long)]
    amplitude: Option<f64>,
    /// Sides per capsule.
    #[arg(long)]
    resolution: Option<u32>,
    #[command(flatten)]
    config: ConfigFlag,
}

impl SurfaceFlags {
    fn settings(&self) -> Settings {
        Settings {
            surface: self.surface,
            outer_radius: self.outer_radius,
            inner_radius: self.inner_radius,
            lat_ribs: self.lat_ribs,
            long_ribs: self.long_ribs,
            outer_density: self.outer_density,
            inner_density: self.inner_density,
            thickness: self.thickness,
            amplitude: self.amplitude,
            resolution: self.resolution,
            ..Settings::default()
        }
    }
}

fn layered(config: &ConfigFlag, flags: Settings) -> Result<Settings, config::ConfigError> {
    let file = match &config.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    Ok(Settings::default().overlay(file).overlay(flags))
}

fn run(cli: Cli) -> Result<u8, commands::CliError> {
    match cli.command {
        Command::Generate {
            surface,
            output,
            ascii,
            legacy_overshoot,
        } => {
            let flags = Settings {
                output,
                ascii: ascii.then_some(true),
                legacy_overshoot: legacy_overshoot.then_some(true),
                ..surface.settings()
            };
            commands::generate(&layered(&surface.config, flags)?)
        }
        Command::Validate { path, json } => commands::validate_file(&path, json),
        Command::Homology { space, dim, config } => {
            let flags = Settings {
                space,
                dim,
                ..Settings::default()
            };
            commands::homology(&layered(&config, flags)?)
        }
        Command::Sample { surface, i, j } => {
            commands::sample(&layered(&surface.config, surface.settings())?, i, j)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
