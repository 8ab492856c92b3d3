//! Obstacle scenes, guide paths, spheres, and the sensor model.
//!
//! All quantities are SI: positions and radii in meters, angles in radians.
//! Scenes are immutable after construction; queries borrow them read-only
//! and are safe to run concurrently.

mod kdtree;
pub mod primitives;

use kdtree::KdTree;
use nalgebra::{Point3, Vector3};
use std::f64::consts::PI;
use thiserror::Error;

/// Errors from scene, path, and sensor construction or queries.
#[derive(Debug, Error)]
pub enum GeometryError {
    /// A scene was built from an empty point list.
    #[error("scene contains no obstacle points")]
    EmptyScene,
    /// A coordinate was NaN/infinite or a shape was otherwise malformed.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    /// An operation parameter was out of range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A sensor configuration violated its invariants.
    #[error("invalid sensor config: {0}")]
    InvalidConfig(String),
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3<f64>,
    pub max: Point3<f64>,
}

impl Aabb {
    /// Tight box around a non-empty point set.
    pub fn from_points(points: &[Point3<f64>]) -> Self {
        let mut min = points[0];
        let mut max = points[0];
        for p in points {
            for a in 0..3 {
                min[a] = min[a].min(p[a]);
                max[a] = max[a].max(p[a]);
            }
        }
        Aabb { min, max }
    }

    pub fn contains(&self, p: &Point3<f64>) -> bool {
        (0..3).all(|a| p[a] >= self.min[a] && p[a] <= self.max[a])
    }

    /// Box grown by `margin` on every side.
    pub fn inflated(&self, margin: f64) -> Self {
        let m = Vector3::repeat(margin);
        Aabb {
            min: self.min - m,
            max: self.max + m,
        }
    }

    /// Smallest box containing both `self` and `p`.
    pub fn including(&self, p: &Point3<f64>) -> Self {
        let mut b = *self;
        for a in 0..3 {
            b.min[a] = b.min[a].min(p[a]);
            b.max[a] = b.max[a].max(p[a]);
        }
        b
    }
}

/// Obstacle environment as a set of surface sample points with a spatial
/// nearest-neighbor index. Guaranteed non-empty.
pub struct ObstacleScene {
    points: Vec<Point3<f64>>,
    index: KdTree,
    bounds: Aabb,
}

impl ObstacleScene {
    /// Builds a scene from obstacle surface points, preserving point order.
    ///
    /// Errors with [`GeometryError::EmptyScene`] on an empty list and
    /// [`GeometryError::InvalidGeometry`] on non-finite coordinates.
    pub fn from_points(points: Vec<Point3<f64>>) -> Result<Self, GeometryError> {
        if points.is_empty() {
            return Err(GeometryError::EmptyScene);
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(GeometryError::InvalidGeometry(format!(
                    "non-finite coordinate in point {i}"
                )));
            }
        }
        let index = KdTree::build(&points);
        let bounds = Aabb::from_points(&points);
        Ok(ObstacleScene {
            points,
            index,
            bounds,
        })
    }

    /// The obstacle point nearest to `p` and its Euclidean distance.
    /// Distance ties resolve to the point with the lowest index.
    pub fn nearest_obstacle(&self, p: &Point3<f64>) -> (Point3<f64>, f64) {
        let (i, d2) = self.index.nearest(&self.points, p);
        (self.points[i], d2.sqrt())
    }

    /// Distance from `p` to the nearest obstacle point.
    pub fn nearest_distance(&self, p: &Point3<f64>) -> f64 {
        self.index.nearest(&self.points, p).1.sqrt()
    }

    pub fn points(&self) -> &[Point3<f64>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn bounds(&self) -> &Aabb {
        &self.bounds
    }
}

impl std::fmt::Debug for ObstacleScene {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ObstacleScene")
            .field("points", &self.points.len())
            .field("bounds", &self.bounds)
            .finish()
    }
}

/// Builds an [`ObstacleScene`] from a point list.
pub fn build_scene(points: Vec<Point3<f64>>) -> Result<ObstacleScene, GeometryError> {
    ObstacleScene::from_points(points)
}

/// One sample along a guide path: position, unit tangent of the containing
/// segment, and the arc length at which it was taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSample {
    pub position: Point3<f64>,
    pub tangent: Vector3<f64>,
    pub arc_length: f64,
}

/// Polyline guide path with arc-length parameterization.
///
/// At waypoints the tangent belongs to the *outgoing* segment; the path end
/// uses the last segment's direction.
#[derive(Debug, Clone, PartialEq)]
pub struct GuidePath {
    waypoints: Vec<Point3<f64>>,
    cumulative: Vec<f64>,
}

impl GuidePath {
    /// Builds a path from ordered waypoints.
    ///
    /// Requires at least two waypoints, finite coordinates, and no two
    /// identical consecutive waypoints.
    pub fn new(waypoints: Vec<Point3<f64>>) -> Result<Self, GeometryError> {
        if waypoints.len() < 2 {
            return Err(GeometryError::InvalidGeometry(
                "guide path needs at least 2 waypoints".into(),
            ));
        }
        for (i, p) in waypoints.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(GeometryError::InvalidGeometry(format!(
                    "non-finite coordinate in waypoint {i}"
                )));
            }
        }
        let mut cumulative = Vec::with_capacity(waypoints.len());
        cumulative.push(0.0);
        for i in 1..waypoints.len() {
            let len = (waypoints[i] - waypoints[i - 1]).norm();
            if len == 0.0 {
                return Err(GeometryError::InvalidGeometry(format!(
                    "waypoints {} and {} are identical",
                    i - 1,
                    i
                )));
            }
            cumulative.push(cumulative[i - 1] + len);
        }
        Ok(GuidePath {
            waypoints,
            cumulative,
        })
    }

    pub fn waypoints(&self) -> &[Point3<f64>] {
        &self.waypoints
    }

    /// Arc length from the start to each waypoint; starts at 0, strictly
    /// increasing.
    pub fn cumulative_lengths(&self) -> &[f64] {
        &self.cumulative
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    pub fn start(&self) -> Point3<f64> {
        self.waypoints[0]
    }

    pub fn end(&self) -> Point3<f64> {
        *self.waypoints.last().unwrap()
    }

    /// Index of the segment containing arc length `s` (outgoing segment at
    /// waypoints, last segment at the end).
    fn segment_index(&self, s: f64) -> usize {
        let last_seg = self.waypoints.len() - 2;
        match self
            .cumulative
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(i) => i.min(last_seg),
            Err(i) => (i.saturating_sub(1)).min(last_seg),
        }
    }

    /// Position at arc length `s` (clamped to `[0, L]`).
    pub fn point_at(&self, s: f64) -> Point3<f64> {
        let s = s.clamp(0.0, self.total_length());
        let i = self.segment_index(s);
        let seg_len = self.cumulative[i + 1] - self.cumulative[i];
        let t = (s - self.cumulative[i]) / seg_len;
        self.waypoints[i] + (self.waypoints[i + 1] - self.waypoints[i]) * t
    }

    /// Unit tangent at arc length `s` (direction of the containing segment).
    pub fn tangent_at(&self, s: f64) -> Vector3<f64> {
        let s = s.clamp(0.0, self.total_length());
        let i = self.segment_index(s);
        (self.waypoints[i + 1] - self.waypoints[i]).normalize()
    }

    /// Samples the path at arc lengths `0, spacing, 2·spacing, …` plus the
    /// endpoint, which is always included. Consecutive gaps equal `spacing`
    /// except the final gap, which lies in `(0, spacing]`.
    pub fn sample(&self, spacing: f64) -> Result<Vec<PathSample>, GeometryError> {
        if !(spacing > 0.0) {
            return Err(GeometryError::InvalidParameter(format!(
                "sample spacing must be > 0, got {spacing}"
            )));
        }
        let total = self.total_length();
        let eps = 1e-12 * total.max(1.0);
        let mut samples = Vec::new();
        let mut k = 0u64;
        loop {
            let s = k as f64 * spacing;
            if s >= total - eps {
                break;
            }
            samples.push(self.sample_at(s));
            k += 1;
        }
        samples.push(self.sample_at(total));
        Ok(samples)
    }

    fn sample_at(&self, s: f64) -> PathSample {
        PathSample {
            position: self.point_at(s),
            tangent: self.tangent_at(s),
            arc_length: s,
        }
    }
}

/// Sphere by center and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere {
    pub center: Point3<f64>,
    pub radius: f64,
}

impl Sphere {
    /// New sphere; `radius` must be non-negative.
    pub fn new(center: Point3<f64>, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Sphere { center, radius }
    }

    pub fn volume(&self) -> f64 {
        4.0 / 3.0 * PI * self.radius.powi(3)
    }

    pub fn contains(&self, p: &Point3<f64>) -> bool {
        (p - self.center).norm_squared() <= self.radius * self.radius
    }
}

/// Exact volume of the intersection of two spheres (the lens body).
///
/// Returns 0 for disjoint spheres and the smaller sphere's volume when one
/// contains the other.
pub fn sphere_overlap_volume(a: &Sphere, b: &Sphere) -> f64 {
    let d = (a.center - b.center).norm();
    let (r1, r2) = (a.radius, b.radius);
    if d >= r1 + r2 {
        return 0.0;
    }
    if d + r1 <= r2 {
        return a.volume();
    }
    if d + r2 <= r1 {
        return b.volume();
    }
    let s = r1 + r2 - d;
    PI * s * s * (d * d + 2.0 * d * (r1 + r2) - 3.0 * (r1 - r2) * (r1 - r2)) / (12.0 * d)
}

/// Depth-sensor and platform model: sensing range `R`, drone radius `r_d`,
/// field-of-view extents, and the angular-sector weights used by the view
/// occlusion metric.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorConfig {
    /// Maximum perception distance R, meters.
    pub sensing_range: f64,
    /// Collision-inflation radius r_d, meters.
    pub drone_radius: f64,
    /// Horizontal field of view, radians, in (0, π].
    pub fov_horizontal: f64,
    /// Vertical field of view, radians, in (0, π].
    pub fov_vertical: f64,
    /// Number of azimuthal sectors M the horizontal FOV is divided into.
    pub fov_sectors: usize,
    /// Per-sector weights m_j, length M, non-negative, summing to 1.
    pub sector_weights: Vec<f64>,
}

impl SensorConfig {
    /// Validated construction. `sector_weights` of `None` selects the
    /// default symmetric triangular profile over `fov_sectors` wedges.
    pub fn new(
        sensing_range: f64,
        drone_radius: f64,
        fov_horizontal: f64,
        fov_vertical: f64,
        fov_sectors: usize,
        sector_weights: Option<Vec<f64>>,
    ) -> Result<Self, GeometryError> {
        let sector_weights =
            sector_weights.unwrap_or_else(|| Self::triangular_weights(fov_sectors));
        let cfg = SensorConfig {
            sensing_range,
            drone_radius,
            fov_horizontal,
            fov_vertical,
            fov_sectors,
            sector_weights,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sensible defaults: 10 m range, 0.3 m drone radius, 87°×58° FOV,
    /// 9 triangular-weighted sectors.
    pub fn default_config() -> Self {
        SensorConfig {
            sensing_range: 10.0,
            drone_radius: 0.3,
            fov_horizontal: 87.0_f64.to_radians(),
            fov_vertical: 58.0_f64.to_radians(),
            fov_sectors: 9,
            sector_weights: Self::triangular_weights(9),
        }
    }

    /// Symmetric triangular weight profile peaking at the center wedge,
    /// normalized to sum 1. For m = 3 this is (0.25, 0.5, 0.25).
    pub fn triangular_weights(m: usize) -> Vec<f64> {
        assert!(m >= 1);
        let raw: Vec<f64> = (0..m).map(|j| (j + 1).min(m - j) as f64).collect();
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|w| w / sum).collect()
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if !(self.sensing_range > 0.0) {
            return Err(GeometryError::InvalidConfig(
                "sensing_range must be > 0".into(),
            ));
        }
        if !(self.drone_radius > 0.0) {
            return Err(GeometryError::InvalidConfig(
                "drone_radius must be > 0".into(),
            ));
        }
        for (name, fov) in [
            ("fov_horizontal", self.fov_horizontal),
            ("fov_vertical", self.fov_vertical),
        ] {
            if !(fov > 0.0 && fov <= PI) {
                return Err(GeometryError::InvalidConfig(format!(
                    "{name} must lie in (0, pi], got {fov}"
                )));
            }
        }
        if self.fov_sectors < 1 {
            return Err(GeometryError::InvalidConfig(
                "fov_sectors must be >= 1".into(),
            ));
        }
        if self.sector_weights.len() != self.fov_sectors {
            return Err(GeometryError::InvalidConfig(format!(
                "fov_sectors = {} but {} sector weights given",
                self.fov_sectors,
                self.sector_weights.len()
            )));
        }
        if self.sector_weights.iter().any(|&w| !(w >= 0.0)) {
            return Err(GeometryError::InvalidConfig(
                "sector weights must be non-negative".into(),
            ));
        }
        let sum: f64 = self.sector_weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(GeometryError::InvalidConfig(format!(
                "sector weights must sum to 1, got {sum}"
            )));
        }
        Ok(())
    }
}
