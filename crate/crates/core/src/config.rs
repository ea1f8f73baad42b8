//! Flat `key = value` run configuration.
//!
//! Lines starting with `#` are comments. Every key has a default, so an empty
//! file describes the reference study: the 7.60 × 3.00 × 2.70 m room with the
//! reference constructions, category II comfort band, 2° orientation steps and
//! 0.10 m width steps.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::comfort::ComfortCategory;
use crate::sweep::{orientation_steps, width_steps, ScenarioGrid, StudySettings};
use crate::zone::{CapacityClass, FloorBoundary, RoomScenario, WallExposure};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("config line {line}: bad value for {key}: {reason}")]
    Value { line: usize, key: String, reason: String },
}

/// Every recognised key with its default value.
pub const TEMPLATE: &str = "\
# weather file (EPW), or synthetic:coimbra for the built-in synthetic year
weather =
out = results
# 0 = all cores
workers = 0

# room geometry, m
floor_length = 7.60
floor_depth = 3.00
ceiling_height = 2.70
sill_height = 0.50
window_height = 2.00
infiltration_ach = 0.4

# constructions, W/m2K
u_wall = 0.43
u_floor = 0.45
u_roof = 0.37
u_window = 2.60
shgc = 0.63
vt = 0.56
# light | medium | heavy
capacity_class = medium
# all | facade
wall_exposure = all
# ground | exterior | adiabatic
floor_boundary = ground

# comfort and solar
comfort_category = II
running_mean_alpha = 0.8
albedo = 0.2
# divisor for relative overhang depth, m; empty = window height
relative_depth_basis =

# grid
orientation_step = 2
width_first = 0.01
width_step = 0.10
width_max = 7.00
d_max = 3.0
coarse_step = 0.10
refine_tolerance = 0.005
";

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub weather: Option<PathBuf>,
    pub out: PathBuf,
    pub workers: usize,
    pub room: RoomScenario,
    pub settings: StudySettings,
    pub grid: ScenarioGrid,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            weather: None,
            out: PathBuf::from("results"),
            workers: 0,
            room: RoomScenario::default(),
            settings: StudySettings::default(),
            grid: ScenarioGrid::default(),
        }
    }
}

struct GridKnobs {
    orientation_step: f64,
    width_first: f64,
    width_step: f64,
    width_max: f64,
}

impl RunConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut cfg = Self::default();
        let mut knobs = GridKnobs { orientation_step: 2.0, width_first: 0.01, width_step: 0.10, width_max: 7.00 };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
            let (key, value) = (key.trim(), value.trim());
            cfg.apply(line, key, value, &mut knobs)?;
        }
        cfg.grid.orientations = orientation_steps(knobs.orientation_step);
        cfg.grid.widths = width_steps(knobs.width_first, knobs.width_step, knobs.width_max);
        Ok(cfg)
    }

    fn apply(&mut self, line: usize, key: &str, value: &str, knobs: &mut GridKnobs) -> Result<(), ConfigError> {
        let bad = |reason: String| ConfigError::Value { line, key: key.to_string(), reason };
        let num = || -> Result<f64, ConfigError> {
            let v: f64 = value.parse().map_err(|_| bad(format!("{value:?} is not a number")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(bad("must be finite".into()))
            }
        };
        let positive = || -> Result<f64, ConfigError> {
            let v = num()?;
            if v > 0.0 {
                Ok(v)
            } else {
                Err(bad(format!("{v} must be positive")))
            }
        };
        let non_negative = || -> Result<f64, ConfigError> {
            let v = num()?;
            if v >= 0.0 {
                Ok(v)
            } else {
                Err(bad(format!("{v} must not be negative")))
            }
        };
        let unit = || -> Result<f64, ConfigError> {
            let v = num()?;
            if v > 0.0 && v <= 1.0 {
                Ok(v)
            } else {
                Err(bad(format!("{v} must lie in (0, 1]")))
            }
        };
        let room = &mut self.room;
        let c = &mut room.constructions;
        match key {
            "weather" => self.weather = (!value.is_empty()).then(|| PathBuf::from(value)),
            "out" => {
                if value.is_empty() {
                    return Err(bad("output directory must not be empty".into()));
                }
                self.out = PathBuf::from(value)
            }
            "workers" => self.workers = value.parse().map_err(|_| bad(format!("{value:?} is not a worker count")))?,
            "floor_length" => room.floor_length = positive()?,
            "floor_depth" => room.floor_depth = positive()?,
            "ceiling_height" => room.ceiling_height = positive()?,
            "sill_height" => room.sill_height = non_negative()?,
            "window_height" => room.window_height = positive()?,
            "infiltration_ach" => room.infiltration_ach = non_negative()?,
            "u_wall" => c.u_wall = positive()?,
            "u_floor" => c.u_floor = positive()?,
            "u_roof" => c.u_roof = positive()?,
            "u_window" => c.u_window = positive()?,
            "shgc" => c.shgc = unit()?,
            "vt" => c.vt = unit()?,
            "capacity_class" => c.capacity = value.parse::<CapacityClass>().map_err(bad)?,
            "wall_exposure" => {
                room.wall_exposure = match value {
                    "all" => WallExposure::AllExterior,
                    "facade" => WallExposure::FacadeOnly,
                    other => return Err(bad(format!("expected all or facade, got {other:?}"))),
                }
            }
            "floor_boundary" => {
                room.floor_boundary = match value {
                    "ground" => FloorBoundary::Ground,
                    "exterior" => FloorBoundary::Exterior,
                    "adiabatic" => FloorBoundary::Adiabatic,
                    other => return Err(bad(format!("expected ground, exterior or adiabatic, got {other:?}"))),
                }
            }
            "comfort_category" => self.settings.category = value.parse::<ComfortCategory>().map_err(bad)?,
            "running_mean_alpha" => {
                let a = num()?;
                if !(a > 0.0 && a < 1.0) {
                    return Err(bad(format!("{a} must lie in (0, 1)")));
                }
                self.settings.running_mean_alpha = a;
            }
            "albedo" => {
                let a = num()?;
                if !(0.0..=1.0).contains(&a) {
                    return Err(bad(format!("{a} must lie in [0, 1]")));
                }
                self.settings.albedo = a;
            }
            "relative_depth_basis" => {
                self.settings.depth_normalizer = if value.is_empty() { None } else { Some(positive()?) };
            }
            "orientation_step" => {
                let s = positive()?;
                if s >= 360.0 {
                    return Err(bad("step must be below 360".into()));
                }
                knobs.orientation_step = s;
            }
            "width_first" => knobs.width_first = positive()?,
            "width_step" => knobs.width_step = positive()?,
            "width_max" => knobs.width_max = positive()?,
            "d_max" => self.grid.depth_search.d_max = positive()?,
            "coarse_step" => self.grid.depth_search.coarse_step = positive()?,
            "refine_tolerance" => self.grid.depth_search.refine_tolerance = positive()?,
            _ => return Err(ConfigError::UnknownKey { line, key: key.to_string() }),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_is_the_reference_study() {
        let cfg = RunConfig::parse("").unwrap();
        assert_eq!(cfg, RunConfig::default());
        assert_eq!(cfg.grid, ScenarioGrid::default());
    }

    #[test]
    fn template_matches_defaults() {
        assert_eq!(RunConfig::parse(TEMPLATE).unwrap(), RunConfig::default());
    }

    #[test]
    fn overrides_and_comments() {
        let cfg = RunConfig::parse(
            "# comment\n capacity_class = heavy # trailing\nwall_exposure=facade\norientation_step = 90\nwidth_first=1\nwidth_step=1\nwidth_max=3\nworkers = 3\nrelative_depth_basis = 1.0\n",
        )
        .unwrap();
        assert_eq!(cfg.room.constructions.capacity, CapacityClass::Heavy);
        assert_eq!(cfg.room.wall_exposure, WallExposure::FacadeOnly);
        assert_eq!(cfg.grid.orientations, vec![0.0, 90.0, 180.0, 270.0]);
        assert_eq!(cfg.grid.widths, vec![1.0, 2.0, 3.0]);
        assert_eq!(cfg.workers, 3);
        assert_eq!(cfg.settings.depth_normalizer, Some(1.0));
    }

    #[test]
    fn errors_name_the_line() {
        assert!(matches!(RunConfig::parse("a b"), Err(ConfigError::Syntax { line: 1 })));
        assert!(matches!(RunConfig::parse("\nfoo = 1"), Err(ConfigError::UnknownKey { line: 2, .. })));
        assert!(matches!(RunConfig::parse("u_wall = -1"), Err(ConfigError::Value { line: 1, .. })));
        assert!(matches!(RunConfig::parse("shgc = 1.2"), Err(ConfigError::Value { .. })));
        assert!(matches!(RunConfig::parse("capacity_class = marble"), Err(ConfigError::Value { .. })));
    }
}
