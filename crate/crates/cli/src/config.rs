//! Layered settings: built-in defaults, then a `key = value` config file,
//! then command-line flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use identispace_core::geom::{SurfaceKind, SurfaceParams};
use identispace_core::topology::SpaceName;
use identispace_core::wireframe::WireframeSpec;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}:{line}: unknown key '{key}'")]
    UnknownKey { path: String, line: usize, key: String },
    #[error("{path}:{line}: expected 'key = value'")]
    Syntax { path: String, line: usize },
    #[error("{path}:{line}: invalid value for '{key}': {message}")]
    Value {
        path: String,
        line: usize,
        key: String,
        message: String,
    },
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("{0} is required")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}

/// Every configurable value, unset by default so layers can be stacked.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub surface: Option<SurfaceKind>,
    pub outer_radius: Option<f64>,
    pub inner_radius: Option<f64>,
    pub lat_ribs: Option<u32>,
    pub long_ribs: Option<u32>,
    pub outer_density: Option<u32>,
    pub inner_density: Option<u32>,
    pub thickness: Option<f64>,
    pub amplitude: Option<f64>,
    pub resolution: Option<u32>,
    pub output: Option<PathBuf>,
    pub ascii: Option<bool>,
    pub legacy_overshoot: Option<bool>,
    pub space: Option<SpaceName>,
    pub dim: Option<usize>,
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(format!("expected true or false, got '{s}'")),
    }
}

fn parse<T: FromStr>(s: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    s.parse::<T>().map_err(|e| e.to_string())
}

impl Settings {
    /// Values set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            surface: top.surface.or(self.surface),
            outer_radius: top.outer_radius.or(self.outer_radius),
            inner_radius: top.inner_radius.or(self.inner_radius),
            lat_ribs: top.lat_ribs.or(self.lat_ribs),
            long_ribs: top.long_ribs.or(self.long_ribs),
            outer_density: top.outer_density.or(self.outer_density),
            inner_density: top.inner_density.or(self.inner_density),
            thickness: top.thickness.or(self.thickness),
            amplitude: top.amplitude.or(self.amplitude),
            resolution: top.resolution.or(self.resolution),
            output: top.output.or(self.output),
            ascii: top.ascii.or(self.ascii),
            legacy_overshoot: top.legacy_overshoot.or(self.legacy_overshoot),
            space: top.space.or(self.space),
            dim: top.dim.or(self.dim),
        }
    }

    /// Parses config text. Keys are the long flag names without dashes;
    /// `#` starts a comment.
    pub fn parse_config(text: &str, path: &str) -> Result<Settings, ConfigError> {
        let mut s = Settings::default();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ConfigError::Syntax { path: path.into(), line });
            };
            let (key, value) = (key.trim(), value.trim());
            let bad = |message: String| ConfigError::Value {
                path: path.into(),
                line,
                key: key.into(),
                message,
            };
            match key {
                "surface" => s.surface = Some(parse(value).map_err(bad)?),
                "outer-radius" => s.outer_radius = Some(parse(value).map_err(bad)?),
                "inner-radius" => s.inner_radius = Some(parse(value).map_err(bad)?),
                "lat-ribs" => s.lat_ribs = Some(parse(value).map_err(bad)?),
                "long-ribs" => s.long_ribs = Some(parse(value).map_err(bad)?),
                "outer-density" => s.outer_density = Some(parse(value).map_err(bad)?),
                "inner-density" => s.inner_density = Some(parse(value).map_err(bad)?),
                "thickness" => s.thickness = Some(parse(value).map_err(bad)?),
                "amplitude" => s.amplitude = Some(parse(value).map_err(bad)?),
                "resolution" => s.resolution = Some(parse(value).map_err(bad)?),
                "output" => s.output = Some(PathBuf::from(value)),
                "ascii" => s.ascii = Some(parse_bool(value).map_err(bad)?),
                "legacy-overshoot" => s.legacy_overshoot = Some(parse_bool(value).map_err(bad)?),
                "space" => s.space = Some(parse(value).map_err(bad)?),
                "dim" => s.dim = Some(parse(value).map_err(bad)?),
                _ => {
                    return Err(ConfigError::UnknownKey {
                        path: path.into(),
                        line,
                        key: key.into(),
                    })
                }
            }
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Settings, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: shown.clone(),
            source,
        })?;
        Self::parse_config(&text, &shown)
    }

    pub fn surface_params(&self) -> Result<SurfaceParams, ConfigError> {
        let kind = self.surface.ok_or(ConfigError::Missing("--surface"))?;
        let mut p = SurfaceParams::new(kind);
        p.outer_radius = self.outer_radius.unwrap_or(p.outer_radius);
        p.inner_radius = self.inner_radius.unwrap_or(p.inner_radius);
        p.lat_ribs = self.lat_ribs.unwrap_or(p.lat_ribs);
        p.long_ribs = self.long_ribs.unwrap_or(p.long_ribs);
        p.amplitude = self.amplitude.unwrap_or(p.amplitude);
        p.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(p)
    }

    pub fn wireframe_spec(&self) -> Result<WireframeSpec, ConfigError> {
        let mut spec = WireframeSpec::new(self.surface_params()?);
        spec.outer_density = self.outer_density.unwrap_or(spec.outer_density);
        spec.inner_density = self.inner_density.unwrap_or(spec.inner_density);
        spec.thickness = self.thickness.unwrap_or(spec.thickness);
        spec.capsule_resolution = self.resolution.unwrap_or(spec.capsule_resolution);
        spec.legacy_overshoot = self.legacy_overshoot.unwrap_or(false);
        spec.validate().map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(spec)
    }

    pub fn output_path(&self) -> PathBuf {
        self.output.clone().unwrap_or_else(|| {
            let name = self.surface.map_or("wireframe", SurfaceKind::name);
            PathBuf::from(format!("{name}.stl"))
        })
    }
}
