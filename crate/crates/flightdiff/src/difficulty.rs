//! The three task-difficulty metrics for a navigation test case.
//!
//! - **Traversability obstruction (TO)** — how narrow the free space around
//!   the guide path is, from the smallest half of the corridor sphere radii
//!   relative to the sensing range.
//! - **View occlusion (VO)** — how much obstacles fill a forward-looking
//!   field of view sampled along the guide path, weighting obstacles near
//!   the view center more.
//! - **Angle over length (AOL)** — how sharply the guide path turns,
//!   penalizing each corner exponentially and normalizing by path length.
//!
//! All three are non-negative; larger means harder.

use crate::corridor::{grow_corridor, CorridorConfig, CorridorError, SphereCorridor};
use crate::geometry::{GuidePath, ObstacleScene, SensorConfig};
use nalgebra::{Point3, Vector3};
use std::f64::consts::PI;
use thiserror::Error;

/// Errors from difficulty scoring, annotated with the metric that failed.
#[derive(Debug, Error)]
pub enum DifficultyError {
    /// Corridor growth for the traversability metric failed.
    #[error("traversability: {0}")]
    Corridor(#[from] CorridorError),
    /// A corridor sphere has zero radius, so the obstruction ratio is
    /// undefined.
    #[error("traversability: corridor contains a zero-radius sphere")]
    DegenerateCorridor,
    /// A sampling or sensor configuration is invalid.
    #[error("view occlusion: {0}")]
    Config(String),
}

/// How view-occlusion samples are placed along the guide path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VoSampling {
    /// Exactly this many samples, evenly spaced over the full path
    /// (endpoints included).
    Count(usize),
    /// Samples every this many meters from the start, endpoint included.
    Spacing(f64),
}

/// Sampling parameters of the view-occlusion metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoSamplingConfig {
    pub sampling: VoSampling,
    /// Obstacle search cutoff per sector, meters; obstacles farther than
    /// this are ignored.
    pub max_range: f64,
}

impl Default for VoSamplingConfig {
    fn default() -> Self {
        VoSamplingConfig {
            sampling: VoSampling::Spacing(0.5),
            max_range: f64::INFINITY,
        }
    }
}

impl VoSamplingConfig {
    pub fn validate(&self) -> Result<(), DifficultyError> {
        match self.sampling {
            VoSampling::Count(n) if n < 1 => {
                return Err(DifficultyError::Config("sample count must be >= 1".into()))
            }
            VoSampling::Spacing(s) if !(s > 0.0) => {
                return Err(DifficultyError::Config(format!(
                    "sample spacing must be > 0, got {s}"
                )))
            }
            _ => {}
        }
        if !(self.max_range > 0.0) {
            return Err(DifficultyError::Config("max_range must be > 0".into()));
        }
        Ok(())
    }
}

/// Configuration snapshot recorded with every difficulty score so results
/// can be reproduced.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreProvenance {
    pub sensor: SensorConfig,
    pub corridor: CorridorConfig,
    pub vo: VoSamplingConfig,
}

/// The three difficulty metrics of one test case, with the configuration
/// that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct DifficultyScores {
    /// Traversability obstruction, dimensionless, >= 0.
    pub to: f64,
    /// View occlusion, dimensionless, >= 0.
    pub vo: f64,
    /// Angle over length, 1/meters, >= 0.
    pub aol: f64,
    pub provenance: ScoreProvenance,
}

/// Traversability obstruction of a corridor for sensing range `R`.
///
/// Radii are sorted ascending and the smallest half (`⌊N/2⌋` of `N`)
/// contribute `R / r_i` each; the sum is normalized by `N`. A single-sphere
/// corridor scores 0. Any zero radius makes the ratio undefined and errors
/// with [`DifficultyError::DegenerateCorridor`].
pub fn traversability_obstruction(
    corridor: &SphereCorridor,
    sensing_range: f64,
) -> Result<f64, DifficultyError> {
    if corridor.spheres.is_empty() {
        return Err(DifficultyError::DegenerateCorridor);
    }
    let mut radii: Vec<f64> = corridor.spheres.iter().map(|s| s.radius).collect();
    if radii.iter().any(|&r| r <= 0.0) {
        return Err(DifficultyError::DegenerateCorridor);
    }
    radii.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = radii.len();
    let sum: f64 = radii[..n / 2].iter().map(|r| sensing_range / r).sum();
    Ok(sum / n as f64)
}

/// Right-handed viewing frame for a forward direction: `(right, up)` such
/// that `right ⟂ forward`, `up = right × forward`.
///
/// `right` is the horizontal right-hand direction when `forward` is not
/// vertical; for (near-)vertical forward directions the frame is anchored to
/// the world y axis instead, which keeps it deterministic.
fn view_frame(forward: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let world_up = Vector3::new(0.0, 0.0, 1.0);
    let mut right = forward.cross(&world_up);
    if right.norm() < 1e-9 {
        right = forward.cross(&Vector3::new(0.0, 1.0, 0.0));
    }
    let right = right.normalize();
    let up = right.cross(forward);
    (right, up)
}

/// View occlusion of a scene along a guide path.
///
/// At each path sample the field of view looks along the path tangent and is
/// split into `sensor.fov_sectors` equal azimuthal wedges. Each wedge
/// contributes `weight · R / s` with `s` the distance to the nearest scene
/// point inside the wedge (and inside the vertical FOV and `cfg.max_range`);
/// wedges without an obstacle contribute 0. The per-sample sums are averaged
/// over all samples.
pub fn view_occlusion(
    scene: &ObstacleScene,
    path: &GuidePath,
    sensor: &SensorConfig,
    cfg: &VoSamplingConfig,
) -> Result<f64, DifficultyError> {
    sensor
        .validate()
        .map_err(|e| DifficultyError::Config(e.to_string()))?;
    cfg.validate()?;

    let samples: Vec<(Point3<f64>, Vector3<f64>)> = match cfg.sampling {
        VoSampling::Count(n) => {
            let total = path.total_length();
            (0..n)
                .map(|k| {
                    let s = if n == 1 {
                        0.0
                    } else {
                        total * k as f64 / (n - 1) as f64
                    };
                    (path.point_at(s), path.tangent_at(s))
                })
                .collect()
        }
        VoSampling::Spacing(ds) => path
            .sample(ds)
            .map_err(|e| DifficultyError::Config(e.to_string()))?
            .into_iter()
            .map(|s| (s.position, s.tangent))
            .collect(),
    };

    let m = sensor.fov_sectors;
    let half_h = sensor.fov_horizontal / 2.0;
    let half_v = sensor.fov_vertical / 2.0;
    let wedge_width = sensor.fov_horizontal / m as f64;

    let mut total = 0.0;
    let mut nearest = vec![f64::INFINITY; m];
    for (q, v) in &samples {
        let (right, up) = view_frame(v);
        nearest.fill(f64::INFINITY);
        for p in scene.points() {
            let d = p - q;
            let dist = d.norm();
            if dist < 1e-12 || dist > cfg.max_range {
                continue;
            }
            let fwd = d.dot(v);
            let rgt = d.dot(&right);
            let az = rgt.atan2(fwd);
            if az.abs() > half_h {
                continue;
            }
            let el = d.dot(&up).atan2((fwd * fwd + rgt * rgt).sqrt());
            if el.abs() > half_v {
                continue;
            }
            let wedge = (((az + half_h) / wedge_width) as usize).min(m - 1);
            if dist < nearest[wedge] {
                nearest[wedge] = dist;
            }
        }
        for (j, &s) in nearest.iter().enumerate() {
            if s.is_finite() {
                total += sensor.sector_weights[j] * sensor.sensing_range / s;
            }
        }
    }
    Ok(total / samples.len() as f64)
}

/// Angle over length of a guide path.
///
/// Each interior waypoint contributes `exp(θ / (π/6)) − 1` with `θ ∈ [0, π]`
/// the turning angle between its incoming and outgoing segments; the sum is
/// divided by the total path length. Collinear waypoints contribute 0.
pub fn angle_over_length(path: &GuidePath) -> f64 {
    let wps = path.waypoints();
    let mut sum = 0.0;
    for i in 1..wps.len() - 1 {
        let incoming = (wps[i] - wps[i - 1]).normalize();
        let outgoing = (wps[i + 1] - wps[i]).normalize();
        let theta = incoming.dot(&outgoing).clamp(-1.0, 1.0).acos();
        sum += (theta / (PI / 6.0)).exp() - 1.0;
    }
    sum / path.total_length()
}

/// Scores a full test case: grows a corridor for the traversability metric,
/// evaluates view occlusion and angle over length, and records the complete
/// configuration. `scene: None` means an obstacle-free environment, which
/// scores 0 obstruction and 0 occlusion.
pub fn score_test_case(
    scene: Option<&ObstacleScene>,
    path: &GuidePath,
    sensor: &SensorConfig,
    corridor_cfg: &CorridorConfig,
    vo_cfg: &VoSamplingConfig,
) -> Result<DifficultyScores, DifficultyError> {
    score_test_case_detailed(scene, path, sensor, corridor_cfg, vo_cfg).map(|(scores, _)| scores)
}

/// Like [`score_test_case`] but also returns the grown corridor (when a
/// scene is present) for export or visualization.
pub fn score_test_case_detailed(
    scene: Option<&ObstacleScene>,
    path: &GuidePath,
    sensor: &SensorConfig,
    corridor_cfg: &CorridorConfig,
    vo_cfg: &VoSamplingConfig,
) -> Result<(DifficultyScores, Option<SphereCorridor>), DifficultyError> {
    let provenance = ScoreProvenance {
        sensor: sensor.clone(),
        corridor: corridor_cfg.clone(),
        vo: *vo_cfg,
    };
    let (to, vo, corridor) = match scene {
        None => (0.0, 0.0, None),
        Some(scene) => {
            let corridor = grow_corridor(scene, path, sensor, corridor_cfg)?;
            let to = traversability_obstruction(&corridor, sensor.sensing_range)?;
            let vo = view_occlusion(scene, path, sensor, vo_cfg)?;
            (to, vo, Some(corridor))
        }
    };
    let aol = angle_over_length(path);
    Ok((
        DifficultyScores {
            to,
            vo,
            aol,
            provenance,
        },
        corridor,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_scene, Sphere};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn corridor_of(radii: &[f64]) -> SphereCorridor {
        SphereCorridor {
            spheres: radii
                .iter()
                .enumerate()
                .map(|(i, &r)| Sphere::new(Point3::new(i as f64, 0.0, 0.0), r))
                .collect(),
            coverage_lengths: (0..radii.len()).map(|i| i as f64).collect(),
        }
    }

    #[test]
    fn to_single_sphere_is_zero() {
        assert_eq!(
            traversability_obstruction(&corridor_of(&[3.0]), 10.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn to_uniform_radii_equal_to_range() {
        // Four spheres with radius R: two terms of 1 each, normalized by 4.
        assert_eq!(
            traversability_obstruction(&corridor_of(&[7.0; 4]), 7.0).unwrap(),
            0.5
        );
    }

    #[test]
    fn to_hand_evaluated_case() {
        let to = traversability_obstruction(&corridor_of(&[1.0, 2.0, 3.0, 4.0, 5.0]), 2.0);
        assert_eq!(to.unwrap(), 0.6);
    }

    #[test]
    fn to_order_free() {
        let a = traversability_obstruction(&corridor_of(&[5.0, 1.0, 4.0, 2.0, 3.0]), 2.0).unwrap();
        let b = traversability_obstruction(&corridor_of(&[1.0, 2.0, 3.0, 4.0, 5.0]), 2.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn to_linear_in_sensing_range() {
        let c = corridor_of(&[0.7, 1.3, 2.9, 0.4]);
        let r1 = traversability_obstruction(&c, 3.0).unwrap();
        let r2 = traversability_obstruction(&c, 6.0).unwrap();
        assert_relative_eq!(r2, 2.0 * r1, epsilon = 1e-12);
    }

    #[test]
    fn to_zero_radius_rejected() {
        assert!(matches!(
            traversability_obstruction(&corridor_of(&[1.0, 0.0]), 2.0),
            Err(DifficultyError::DegenerateCorridor)
        ));
    }

    fn fixture_sensor(m: usize) -> SensorConfig {
        SensorConfig::new(5.0, 0.3, PI / 2.0, PI / 2.0, m, None).unwrap()
    }

    fn straight_path() -> GuidePath {
        GuidePath::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(10.0, 0.0, 0.0),
        ])
        .unwrap()
    }

    #[test]
    fn vo_no_obstacle_in_view_is_zero() {
        // Single point far behind the path: never inside the forward FOV.
        let scene = build_scene(vec![Point3::new(-50.0, 0.0, 0.0)]).unwrap();
        let vo = view_occlusion(
            &scene,
            &straight_path(),
            &fixture_sensor(3),
            &VoSamplingConfig::default(),
        )
        .unwrap();
        assert_eq!(vo, 0.0);
    }

    #[test]
    fn vo_single_obstacle_at_sensing_range() {
        // One sample, one sector, obstacle straight ahead at distance R.
        let scene = build_scene(vec![Point3::new(5.0, 0.0, 0.0)]).unwrap();
        let cfg = VoSamplingConfig {
            sampling: VoSampling::Count(1),
            max_range: f64::INFINITY,
        };
        let vo = view_occlusion(&scene, &straight_path(), &fixture_sensor(1), &cfg).unwrap();
        assert_relative_eq!(vo, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn vo_hand_traced_three_sector_fixture() {
        // Two samples on a straight path (start and end), M = 3 wedges of
        // 30° covering a 90° FOV, weights (0.25, 0.5, 0.25), R = 5.
        //
        // From the start sample, looking along +x (left wedge = negative
        // azimuth = +y side, since +azimuth points right = -y):
        //   (3, 1, 0)       azimuth −18.4° → wedge 0, distance √10
        //   (3, 0, 0)       azimuth 0°     → wedge 1, distance 3
        //   (4, −1.5, 0.5)  azimuth +20.6° → wedge 2, distance √18.5
        //   (−2, 0, 0)      behind the sensor, excluded
        //   (8.5, 0.5, 0)   azimuth −3.4°  → wedge 1, distance √72.5 (not
        //                   the wedge minimum, so it contributes nothing)
        // The end sample at (10, 0, 0) has every point behind or outside
        // the FOV and contributes 0.
        let scene = build_scene(vec![
            Point3::new(3.0, 1.0, 0.0),
            Point3::new(3.0, 0.0, 0.0),
            Point3::new(4.0, -1.5, 0.5),
            Point3::new(-2.0, 0.0, 0.0),
            Point3::new(8.5, 0.5, 0.0),
        ])
        .unwrap();
        let cfg = VoSamplingConfig {
            sampling: VoSampling::Count(2),
            max_range: f64::INFINITY,
        };
        let sensor = fixture_sensor(3);
        assert_eq!(sensor.sector_weights, vec![0.25, 0.5, 0.25]);

        let expected =
            0.5 * (0.25 * 5.0 / 10.0_f64.sqrt() + 0.5 * 5.0 / 3.0 + 0.25 * 5.0 / 18.5_f64.sqrt());
        let vo = view_occlusion(&scene, &straight_path(), &sensor, &cfg).unwrap();
        assert!((vo - expected).abs() <= 1e-9, "vo {vo} != {expected}");
    }

    #[test]
    fn vo_linear_in_sensing_range() {
        let scene = build_scene(vec![
            Point3::new(3.0, 1.0, 0.0),
            Point3::new(3.0, 0.0, 0.0),
            Point3::new(4.0, -1.5, 0.5),
        ])
        .unwrap();
        let cfg = VoSamplingConfig {
            sampling: VoSampling::Count(2),
            max_range: f64::INFINITY,
        };
        let mut s1 = fixture_sensor(3);
        let mut s2 = fixture_sensor(3);
        s1.sensing_range = 5.0;
        s2.sensing_range = 12.5;
        let v1 = view_occlusion(&scene, &straight_path(), &s1, &cfg).unwrap();
        let v2 = view_occlusion(&scene, &straight_path(), &s2, &cfg).unwrap();
        assert_relative_eq!(v2, v1 * 2.5, epsilon = 1e-12);
    }

    #[test]
    fn vo_increases_when_obstacle_moves_closer() {
        let cfg = VoSamplingConfig {
            sampling: VoSampling::Count(1),
            max_range: f64::INFINITY,
        };
        let far = build_scene(vec![Point3::new(4.0, 0.0, 0.0)]).unwrap();
        let near = build_scene(vec![Point3::new(2.0, 0.0, 0.0)]).unwrap();
        let sensor = fixture_sensor(3);
        let v_far = view_occlusion(&far, &straight_path(), &sensor, &cfg).unwrap();
        let v_near = view_occlusion(&near, &straight_path(), &sensor, &cfg).unwrap();
        assert!(v_near > v_far);
    }

    #[test]
    fn vo_respects_max_range() {
        let scene = build_scene(vec![Point3::new(4.0, 0.0, 0.0)]).unwrap();
        let cfg = VoSamplingConfig {
            sampling: VoSampling::Count(1),
            max_range: 3.0,
        };
        let vo = view_occlusion(&scene, &straight_path(), &fixture_sensor(3), &cfg).unwrap();
        assert_eq!(vo, 0.0);
    }

    #[test]
    fn vo_rejects_mismatched_sector_weights() {
        let mut sensor = fixture_sensor(3);
        sensor.sector_weights.pop();
        let scene = build_scene(vec![Point3::new(3.0, 0.0, 0.0)]).unwrap();
        let out = view_occlusion(
            &scene,
            &straight_path(),
            &sensor,
            &VoSamplingConfig::default(),
        );
        assert!(matches!(out, Err(DifficultyError::Config(_))));
    }

    #[test]
    fn vo_vertical_travel_uses_deterministic_frame() {
        // Path straight up: the horizontal-right reference degenerates and
        // the fallback frame applies; the metric must stay finite and the
        // obstacle ahead (above) must register.
        let path =
            GuidePath::new(vec![Point3::new(0.0, 0.0, 0.0), Point3::new(0.0, 0.0, 8.0)]).unwrap();
        let scene = build_scene(vec![Point3::new(0.0, 0.0, 4.0)]).unwrap();
        let cfg = VoSamplingConfig {
            sampling: VoSampling::Count(1),
            max_range: f64::INFINITY,
        };
        let vo = view_occlusion(&scene, &path, &fixture_sensor(3), &cfg).unwrap();
        assert_relative_eq!(vo, 0.5 * 5.0 / 4.0, epsilon = 1e-12);
    }

    #[test]
    fn aol_straight_path_is_zero() {
        let path = GuidePath::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(3.0, 0.0, 0.0),
            Point3::new(7.0, 0.0, 0.0),
            Point3::new(10.0, 0.0, 0.0),
        ])
        .unwrap();
        assert_eq!(angle_over_length(&path), 0.0);
    }

    #[test]
    fn aol_single_right_angle() {
        // One 90° corner on a 10 m path: (e³ − 1) / 10.
        let path = GuidePath::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(5.0, 0.0, 0.0),
            Point3::new(5.0, 5.0, 0.0),
        ])
        .unwrap();
        let expect = (3.0_f64.exp() - 1.0) / 10.0;
        assert!((angle_over_length(&path) - expect).abs() <= 1e-9);
        assert_relative_eq!(expect, 1.9085536923187668, epsilon = 1e-12);
    }

    #[test]
    fn aol_two_thirty_degree_corners() {
        // Two π/6 corners on a 12 m path: 2(e − 1) / 12.
        let a = Point3::new(0.0, 0.0, 0.0);
        let d1 = Vector3::new(1.0, 0.0, 0.0);
        let d2 = Vector3::new((PI / 6.0).cos(), (PI / 6.0).sin(), 0.0);
        let d3 = Vector3::new((PI / 3.0).cos(), (PI / 3.0).sin(), 0.0);
        let b = a + d1 * 4.0;
        let c = b + d2 * 4.0;
        let d = c + d3 * 4.0;
        let path = GuidePath::new(vec![a, b, c, d]).unwrap();
        let expect = 2.0 * (1.0_f64.exp() - 1.0) / 12.0;
        assert!((angle_over_length(&path) - expect).abs() <= 1e-9);
    }

    #[test]
    fn aol_collinear_insertion_is_neutral() {
        let base = GuidePath::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(5.0, 0.0, 0.0),
            Point3::new(5.0, 5.0, 0.0),
        ])
        .unwrap();
        let split = GuidePath::new(vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(2.5, 0.0, 0.0),
            Point3::new(5.0, 0.0, 0.0),
            Point3::new(5.0, 2.0, 0.0),
            Point3::new(5.0, 5.0, 0.0),
        ])
        .unwrap();
        assert!((angle_over_length(&base) - angle_over_length(&split)).abs() <= 1e-12);
    }

    #[test]
    fn score_empty_scene_straight_path() {
        let scores = score_test_case(
            None,
            &straight_path(),
            &SensorConfig::default_config(),
            &CorridorConfig::default(),
            &VoSamplingConfig::default(),
        )
        .unwrap();
        assert_eq!((scores.to, scores.vo, scores.aol), (0.0, 0.0, 0.0));
    }

    #[test]
    fn score_records_provenance() {
        let sensor = SensorConfig::default_config();
        let ccfg = CorridorConfig {
            rng_seed: 99,
            ..CorridorConfig::default()
        };
        let vcfg = VoSamplingConfig {
            sampling: VoSampling::Count(7),
            max_range: 25.0,
        };
        let scores = score_test_case(None, &straight_path(), &sensor, &ccfg, &vcfg).unwrap();
        assert_eq!(scores.provenance.sensor, sensor);
        assert_eq!(scores.provenance.corridor, ccfg);
        assert_eq!(scores.provenance.vo, vcfg);
    }

    #[test]
    fn score_with_scene_returns_corridor() {
        let scene = build_scene(vec![Point3::new(5.0, 4.0, 0.0)]).unwrap();
        let (scores, corridor) = score_test_case_detailed(
            Some(&scene),
            &straight_path(),
            &SensorConfig::default_config(),
            &CorridorConfig::default(),
            &VoSamplingConfig::default(),
        )
        .unwrap();
        let corridor = corridor.unwrap();
        assert!(!corridor.spheres.is_empty());
        assert!(scores.to > 0.0);
        assert!(scores.vo > 0.0);
        assert_eq!(scores.aol, 0.0);
    }

    proptest! {
        #[test]
        fn aol_rigid_motion_invariant(
            yaw in 0.0f64..(2.0 * PI),
            tx in -10.0f64..10.0,
            ty in -10.0f64..10.0,
            tz in -10.0f64..10.0,
        ) {
            let wps = vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(3.0, 0.0, 0.0),
                Point3::new(3.0, 2.0, 1.0),
                Point3::new(5.0, 2.0, 1.0),
            ];
            let rot = nalgebra::Rotation3::from_axis_angle(&Vector3::z_axis(), yaw);
            let shift = Vector3::new(tx, ty, tz);
            let moved: Vec<Point3<f64>> = wps.iter().map(|p| rot * p + shift).collect();
            let a = angle_over_length(&GuidePath::new(wps).unwrap());
            let b = angle_over_length(&GuidePath::new(moved).unwrap());
            prop_assert!((a - b).abs() <= 1e-9);
        }

        #[test]
        fn aol_scales_inversely_with_size(c in 0.2f64..5.0) {
            let wps = vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(3.0, 0.0, 0.0),
                Point3::new(3.0, 2.0, 1.0),
            ];
            let scaled: Vec<Point3<f64>> =
                wps.iter().map(|p| Point3::from(p.coords * c)).collect();
            let a = angle_over_length(&GuidePath::new(wps).unwrap());
            let b = angle_over_length(&GuidePath::new(scaled).unwrap());
            prop_assert!((b - a / c).abs() <= 1e-9 * a.max(1.0));
        }
    }
}
