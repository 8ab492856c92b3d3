//! Random tree-trunk forests with controllable obstacle density.

use super::ScenegenError;
use crate::geometry::{build_scene, primitives, ObstacleScene};
use nalgebra::Point3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Parameters of a forest scenario.
///
/// Trees are vertical cylinders on a `width × depth` ground rectangle.
/// The tree count is `round(width · depth · tree_density)`; placement is
/// rejection-sampled so trunk centers keep at least twice the maximum trunk
/// radius of separation and stay clear of the start and goal.
#[derive(Debug, Clone, PartialEq)]
pub struct ForestSpec {
    /// Extent along x, meters. Start and goal sit on the two x edges.
    pub width: f64,
    /// Extent along y, meters.
    pub depth: f64,
    /// Trees per square meter.
    pub tree_density: f64,
    /// Trunk radius bounds (min, max), meters.
    pub trunk_radius_range: (f64, f64),
    /// Tree height, meters.
    pub height: f64,
    /// Minimum distance from trunk surfaces to start and goal, meters.
    pub clearance: f64,
    /// Obstacle surface sample density, points per square meter.
    pub surface_density: f64,
    pub seed: u64,
}

impl Default for ForestSpec {
    fn default() -> Self {
        ForestSpec {
            width: 12.0,
            depth: 8.0,
            tree_density: 0.1,
            trunk_radius_range: (0.15, 0.35),
            height: 4.0,
            clearance: 1.5,
            surface_density: 20.0,
            seed: 0,
        }
    }
}

impl ForestSpec {
    fn validate(&self) -> Result<(), ScenegenError> {
        let err = |msg: String| Err(ScenegenError::InvalidSpec(msg));
        if !(self.width > 0.0 && self.depth > 0.0) {
            return err(format!(
                "area must be positive, got {} x {}",
                self.width, self.depth
            ));
        }
        if !(self.tree_density > 0.0) {
            return err("tree_density must be > 0".into());
        }
        let (rmin, rmax) = self.trunk_radius_range;
        if !(rmin > 0.0 && rmax >= rmin) {
            return err(format!("bad trunk radius range ({rmin}, {rmax})"));
        }
        if !(self.height > 0.0) {
            return err("height must be > 0".into());
        }
        if !(self.clearance >= 0.0) {
            return err("clearance must be >= 0".into());
        }
        if !(self.surface_density > 0.0) {
            return err("surface_density must be > 0".into());
        }
        if self.tree_count() < 1 {
            return err(format!(
                "width · depth · density = {:.3} rounds to zero trees",
                self.width * self.depth * self.tree_density
            ));
        }
        Ok(())
    }

    /// Number of trees this spec asks for.
    pub fn tree_count(&self) -> usize {
        (self.width * self.depth * self.tree_density).round() as usize
    }
}

/// One placed trunk (base-circle center and radius).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trunk {
    pub x: f64,
    pub y: f64,
    pub radius: f64,
}

/// A generated forest: the obstacle scene, suggested start and goal at
/// mid-height on opposite x edges, and the placed trunks.
pub struct ForestScene {
    pub scene: ObstacleScene,
    pub start: Point3<f64>,
    pub goal: Point3<f64>,
    pub trunks: Vec<Trunk>,
}

/// Generates a forest scene. Deterministic per spec (seed included).
///
/// Errors with [`ScenegenError::DensityInfeasible`] when the requested tree
/// count cannot be placed in `10 × count` sampling attempts.
pub fn generate_forest(spec: &ForestSpec) -> Result<ForestScene, ScenegenError> {
    spec.validate()?;
    let count = spec.tree_count();
    let (rmin, rmax) = spec.trunk_radius_range;
    let start = Point3::new(0.0, spec.depth / 2.0, spec.height / 2.0);
    let goal = Point3::new(spec.width, spec.depth / 2.0, spec.height / 2.0);
    let min_sep_sq = (2.0 * rmax) * (2.0 * rmax);

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut trunks: Vec<Trunk> = Vec::with_capacity(count);
    let budget = 10 * count;
    for _ in 0..budget {
        if trunks.len() == count {
            break;
        }
        let x = rng.random_range(0.0..spec.width);
        let y = rng.random_range(0.0..spec.depth);
        let radius = if rmin == rmax {
            rmin
        } else {
            rng.random_range(rmin..rmax)
        };
        let separated = trunks.iter().all(|t| {
            let (dx, dy) = (t.x - x, t.y - y);
            dx * dx + dy * dy >= min_sep_sq
        });
        let clear_of = |p: &Point3<f64>| {
            let (dx, dy) = (p.x - x, p.y - y);
            (dx * dx + dy * dy).sqrt() >= spec.clearance + radius
        };
        if separated && clear_of(&start) && clear_of(&goal) {
            trunks.push(Trunk { x, y, radius });
        }
    }
    if trunks.len() < count {
        return Err(ScenegenError::DensityInfeasible {
            requested: count,
            placed: trunks.len(),
        });
    }

    let mut points = Vec::new();
    for t in &trunks {
        primitives::cylinder_lateral_surface(
            Point3::new(t.x, t.y, 0.0),
            t.radius,
            spec.height,
            spec.surface_density,
            &mut points,
        );
    }
    Ok(ForestScene {
        scene: build_scene(points)?,
        start,
        goal,
        trunks,
    })
}
