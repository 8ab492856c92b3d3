//! TOML run configuration: schema, defaults, and conversion into the
//! library's validated parameter types.
//!
//! Every section and key is optional except the scenario required by `gen`;
//! omitted keys fall back to the documented defaults and unknown keys are
//! rejected anywhere in the file. Angles are written in degrees and
//! converted to radians on load.

use flightdiff::difficulty::{VoSampling, VoSamplingConfig};
use flightdiff::scenegen::{ForestSpec, MazeSpec};
use flightdiff::{CorrelationKind, CorrelationMode, CorridorConfig, FinalColumn, SensorConfig};
use serde::Deserialize;
use std::path::Path;
use thiserror::Error;

/// Configuration problems; always input errors (exit code 2).
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip)]
    source: String,
    #[serde(default)]
    sensor: SensorSection,
    #[serde(default)]
    corridor: CorridorSection,
    #[serde(default)]
    occlusion: OcclusionSection,
    #[serde(default)]
    planner: PlannerSection,
    #[serde(default)]
    goal: GoalSection,
    #[serde(default)]
    correlation: CorrelationSection,
    scenario: Option<ScenarioSection>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SensorSection {
    sensing_range: Option<f64>,
    drone_radius: Option<f64>,
    fov_horizontal_deg: Option<f64>,
    fov_vertical_deg: Option<f64>,
    fov_sectors: Option<usize>,
    /// Omitted: symmetric triangular weights over `fov_sectors` wedges.
    sector_weights: Option<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorridorSection {
    candidates_per_step: Option<usize>,
    sigma: Option<f64>,
    k1: Option<f64>,
    k2: Option<f64>,
    k3: Option<f64>,
    k4: Option<f64>,
    min_radius: Option<f64>,
    max_spheres: Option<usize>,
    rng_seed: Option<u64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OcclusionSection {
    /// Meters between view samples along the path; mutually exclusive with
    /// `sample_count`.
    sample_spacing: Option<f64>,
    sample_count: Option<usize>,
    /// Omitted: unlimited.
    max_range: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlannerSection {
    voxel: Option<f64>,
    /// Extra clearance on top of drone radius + minimum corridor sphere.
    clearance_margin: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoalSection {
    radius: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorrelationSection {
    kind: Option<String>,
    mode: Option<String>,
    final_column: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioSection {
    forest: Option<ForestSection>,
    maze: Option<MazeSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ForestSection {
    width: Option<f64>,
    depth: Option<f64>,
    tree_density: Option<f64>,
    trunk_radius_min: Option<f64>,
    trunk_radius_max: Option<f64>,
    height: Option<f64>,
    clearance: Option<f64>,
    surface_density: Option<f64>,
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MazeSection {
    /// Character map: `#` wall, `.` free, `S` start, `G` goal.
    layout: Vec<String>,
    cell_size: Option<f64>,
    wall_height: Option<f64>,
    box_fill_fraction: Option<f64>,
    surface_density: Option<f64>,
    seed: Option<u64>,
}

/// A scene recipe for `gen`.
#[derive(Debug, Clone)]
pub enum Scenario {
    Forest(ForestSpec),
    Maze(MazeSpec),
}

impl RunConfig {
    pub fn load(path: impl AsRef<Path>) -> Result<RunConfig, ConfigError> {
        let path = path.as_ref();
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: name.clone(),
            source,
        })?;
        let mut cfg: RunConfig = toml::from_str(&text).map_err(|e| ConfigError::Schema {
            path: name.clone(),
            // toml's message already contains line/column context.
            message: e.to_string().trim().replace('\n', " "),
        })?;
        cfg.source = name;
        Ok(cfg)
    }

    /// All defaults; what commands use when `--config` is omitted.
    pub fn defaults() -> RunConfig {
        RunConfig {
            source: "<defaults>".into(),
            ..RunConfig::default()
        }
    }

    fn schema(&self, message: String) -> ConfigError {
        ConfigError::Schema {
            path: self.source.clone(),
            message,
        }
    }

    pub fn sensor(&self) -> Result<SensorConfig, ConfigError> {
        let s = &self.sensor;
        SensorConfig::new(
            s.sensing_range.unwrap_or(10.0),
            s.drone_radius.unwrap_or(0.3),
            s.fov_horizontal_deg.unwrap_or(87.0).to_radians(),
            s.fov_vertical_deg.unwrap_or(58.0).to_radians(),
            s.fov_sectors.unwrap_or(9),
            s.sector_weights.clone(),
        )
        .map_err(|e| self.schema(format!("[sensor] {e}")))
    }

    pub fn corridor(&self) -> Result<CorridorConfig, ConfigError> {
        let c = &self.corridor;
        let d = CorridorConfig::default();
        let cfg = CorridorConfig {
            candidates_per_step: c.candidates_per_step.unwrap_or(d.candidates_per_step),
            sigma: c.sigma.unwrap_or(d.sigma),
            k1: c.k1.unwrap_or(d.k1),
            k2: c.k2.unwrap_or(d.k2),
            k3: c.k3.unwrap_or(d.k3),
            k4: c.k4.unwrap_or(d.k4),
            min_radius: c.min_radius.unwrap_or(d.min_radius),
            max_spheres: c.max_spheres.unwrap_or(d.max_spheres),
            rng_seed: c.rng_seed.unwrap_or(d.rng_seed),
        };
        cfg.validate()
            .map_err(|e| self.schema(format!("[corridor] {e}")))?;
        Ok(cfg)
    }

    pub fn occlusion(&self) -> Result<VoSamplingConfig, ConfigError> {
        let o = &self.occlusion;
        let sampling = match (o.sample_spacing, o.sample_count) {
            (Some(_), Some(_)) => {
                return Err(self.schema(
                    "[occlusion] sample_spacing and sample_count are mutually exclusive".into(),
                ))
            }
            (None, Some(n)) => VoSampling::Count(n),
            (spacing, None) => VoSampling::Spacing(spacing.unwrap_or(0.5)),
        };
        let cfg = VoSamplingConfig {
            sampling,
            max_range: o.max_range.unwrap_or(f64::INFINITY),
        };
        cfg.validate()
            .map_err(|e| self.schema(format!("[occlusion] {e}")))?;
        Ok(cfg)
    }

    /// Voxel edge for guide-path planning, meters.
    pub fn planner_voxel(&self) -> Result<f64, ConfigError> {
        let v = self.planner.voxel.unwrap_or(0.25);
        if !(v > 0.0 && v.is_finite()) {
            return Err(self.schema(format!("[planner] voxel must be positive, got {v}")));
        }
        Ok(v)
    }

    /// Clearance for guide-path planning: the drone radius padded by the
    /// smallest acceptable corridor sphere plus a margin, so every point of
    /// the planned path admits a legal corridor sphere.
    pub fn planner_clearance(
        &self,
        sensor: &SensorConfig,
        corridor: &CorridorConfig,
    ) -> Result<f64, ConfigError> {
        let margin = self.planner.clearance_margin.unwrap_or(0.1);
        if !(margin >= 0.0 && margin.is_finite()) {
            return Err(self.schema(format!(
                "[planner] clearance_margin must be >= 0, got {margin}"
            )));
        }
        Ok(sensor.drone_radius + corridor.min_radius + margin)
    }

    pub fn goal_radius(&self) -> Result<f64, ConfigError> {
        let r = self.goal.radius.unwrap_or(1.5);
        if !(r > 0.0 && r.is_finite()) {
            return Err(self.schema(format!("[goal] radius must be positive, got {r}")));
        }
        Ok(r)
    }

    pub fn correlation(
        &self,
    ) -> Result<(CorrelationKind, CorrelationMode, FinalColumn), ConfigError> {
        let c = &self.correlation;
        let kind = match c.kind.as_deref().unwrap_or("pearson") {
            "pearson" => CorrelationKind::Pearson,
            "spearman" => CorrelationKind::Spearman,
            other => {
                return Err(self.schema(format!(
                    "[correlation] unknown kind {other:?} (expected \"pearson\" or \"spearman\")"
                )))
            }
        };
        let mode = match c.mode.as_deref().unwrap_or("pooled") {
            "pooled" => CorrelationMode::Pooled,
            "per-method-mean" => CorrelationMode::PerMethodMean,
            other => {
                return Err(self.schema(format!(
                    "[correlation] unknown mode {other:?} (expected \"pooled\" or \
                     \"per-method-mean\")"
                )))
            }
        };
        let final_column = match c.final_column.as_deref().unwrap_or("progress") {
            "progress" => FinalColumn::Progress,
            "computation-time" => FinalColumn::ComputationTime,
            other => {
                return Err(self.schema(format!(
                    "[correlation] unknown final_column {other:?} (expected \"progress\" or \
                     \"computation-time\")"
                )))
            }
        };
        Ok((kind, mode, final_column))
    }

    /// The scene recipe for `gen`; `seed` overrides the configured one.
    pub fn scenario(&self, seed: Option<u64>) -> Result<Scenario, ConfigError> {
        let Some(s) = &self.scenario else {
            return Err(
                self.schema("gen needs a [scenario.forest] or [scenario.maze] section".into())
            );
        };
        match (&s.forest, &s.maze) {
            (Some(_), Some(_)) => {
                Err(self.schema("[scenario] forest and maze are mutually exclusive".into()))
            }
            (None, None) => Err(self.schema("[scenario] needs a forest or maze subsection".into())),
            (Some(f), None) => {
                let d = ForestSpec::default();
                Ok(Scenario::Forest(ForestSpec {
                    width: f.width.unwrap_or(d.width),
                    depth: f.depth.unwrap_or(d.depth),
                    tree_density: f.tree_density.unwrap_or(d.tree_density),
                    trunk_radius_range: (
                        f.trunk_radius_min.unwrap_or(d.trunk_radius_range.0),
                        f.trunk_radius_max.unwrap_or(d.trunk_radius_range.1),
                    ),
                    height: f.height.unwrap_or(d.height),
                    clearance: f.clearance.unwrap_or(d.clearance),
                    surface_density: f.surface_density.unwrap_or(d.surface_density),
                    seed: seed.or(f.seed).unwrap_or(d.seed),
                }))
            }
            (None, Some(m)) => {
                let mut spec = MazeSpec::from_layout(
                    &m.layout,
                    m.cell_size.unwrap_or(2.0),
                    m.wall_height.unwrap_or(3.0),
                    m.box_fill_fraction.unwrap_or(0.0),
                    seed.or(m.seed).unwrap_or(0),
                )
                .map_err(|e| self.schema(format!("[scenario.maze] {e}")))?;
                if let Some(density) = m.surface_density {
                    spec.surface_density = density;
                }
                Ok(Scenario::Maze(spec))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn parse(text: &str) -> RunConfig {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        RunConfig::load(file.path()).unwrap()
    }

    fn parse_err(text: &str) -> String {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        RunConfig::load(file.path()).unwrap_err().to_string()
    }

    #[test]
    fn empty_config_yields_documented_defaults() {
        let cfg = parse("");
        let sensor = cfg.sensor().unwrap();
        assert_eq!(sensor.sensing_range, 10.0);
        assert_eq!(sensor.drone_radius, 0.3);
        assert_eq!(sensor.fov_sectors, 9);
        assert!((sensor.fov_horizontal - 87.0f64.to_radians()).abs() < 1e-15);
        assert_eq!(cfg.corridor().unwrap(), CorridorConfig::default());
        assert_eq!(cfg.occlusion().unwrap(), VoSamplingConfig::default());
        assert_eq!(cfg.goal_radius().unwrap(), 1.5);
        assert_eq!(cfg.planner_voxel().unwrap(), 0.25);
        let clearance = cfg
            .planner_clearance(&sensor, &cfg.corridor().unwrap())
            .unwrap();
        assert!((clearance - 0.45).abs() < 1e-15);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_err("[sensor]\nrange = 10.0\n");
        assert!(err.contains("range"), "{err}");
    }

    #[test]
    fn occlusion_spacing_and_count_conflict() {
        let cfg = parse("[occlusion]\nsample_spacing = 0.5\nsample_count = 4\n");
        let err = cfg.occlusion().unwrap_err().to_string();
        assert!(err.contains("mutually exclusive"), "{err}");
    }

    #[test]
    fn forest_scenario_with_seed_override() {
        let cfg = parse("[scenario.forest]\ntree_density = 0.2\nseed = 3\n");
        match cfg.scenario(Some(9)).unwrap() {
            Scenario::Forest(spec) => {
                assert_eq!(spec.tree_density, 0.2);
                assert_eq!(spec.seed, 9);
                assert_eq!(spec.width, ForestSpec::default().width);
            }
            other => panic!("expected forest, got {other:?}"),
        }
    }

    #[test]
    fn maze_scenario_parses_layout() {
        let cfg = parse("[scenario.maze]\nlayout = [\"S.G\"]\ncell_size = 1.5\n");
        match cfg.scenario(None).unwrap() {
            Scenario::Maze(spec) => {
                assert_eq!(spec.cell_size, 1.5);
                assert_eq!(spec.start_cell, (0, 0));
                assert_eq!(spec.goal_cell, (0, 2));
            }
            other => panic!("expected maze, got {other:?}"),
        }
    }

    #[test]
    fn missing_scenario_is_a_schema_error() {
        let cfg = parse("[goal]\nradius = 2.0\n");
        let err = cfg.scenario(None).unwrap_err().to_string();
        assert!(err.contains("scenario"), "{err}");
    }

    #[test]
    fn bad_correlation_kind_is_rejected() {
        let cfg = parse("[correlation]\nkind = \"kendall\"\n");
        let err = cfg.correlation().unwrap_err().to_string();
        assert!(err.contains("kendall"), "{err}");
    }
}
