//! Sampling-based growth of a sphere corridor along a guide path.
//!
//! Starting from a sphere at the path start, growth repeatedly looks at the
//! coverage frontier — the farthest arc length up to which the sphere union
//! covers the path without gaps — and samples candidate sphere centers from
//! an isotropic Gaussian around that frontier point. Each candidate gets the
//! largest obstacle-free radius available at its center; candidates that do
//! not contain the frontier point are discarded, since they cannot close the
//! coverage gap there. The rest are scored by a weighted combination of
//! volume, overlap with the previous sphere, and drift from the frontier,
//! and the best one is kept. Growth stops when the whole path is covered or
//! the sphere budget runs out.

use crate::geometry::{sphere_overlap_volume, GuidePath, ObstacleScene, SensorConfig, Sphere};
use nalgebra::{Point3, Vector3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use thiserror::Error;

/// Consecutive steps (accepted or all-discarded) that may fail to advance the
/// coverage frontier before growth aborts.
const MAX_STALLED_STEPS: u32 = 20;

/// Errors from corridor growth.
#[derive(Debug, Error)]
pub enum CorridorError {
    /// Configuration violated an invariant.
    #[error("invalid corridor config: {0}")]
    InvalidConfig(String),
    /// The obstacle-free radius at the path start is below `min_radius`, so
    /// no starting sphere can be placed.
    #[error(
        "free radius {radius:.6} m at the path start is below the minimum \
         sphere radius {min_radius:.6} m"
    )]
    ZeroRadiusStart { radius: f64, min_radius: f64 },
    /// Growth made no coverage progress for too many consecutive steps.
    #[error(
        "corridor growth stalled after {MAX_STALLED_STEPS} non-advancing steps \
         at {covered:.3} of {total:.3} m covered"
    )]
    CoverageStall { covered: f64, total: f64 },
}

/// Parameters of corridor growth.
///
/// The score coefficients `k1..k4` are all positive; `k1`, `k2` weight
/// volumes (per m³) while `k3`, `k4` weight distances (per m), so every score
/// term is dimensionless.
#[derive(Debug, Clone, PartialEq)]
pub struct CorridorConfig {
    /// Candidate centers drawn per growth step (K).
    pub candidates_per_step: usize,
    /// Standard deviation of the isotropic Gaussian candidate distribution,
    /// meters.
    pub sigma: f64,
    /// Weight of the candidate's own volume.
    pub k1: f64,
    /// Weight of the overlap volume with the previous sphere.
    pub k2: f64,
    /// Penalty per meter of drift past the frontier along the growth
    /// direction.
    pub k3: f64,
    /// Penalty per meter of lateral drift off the growth direction.
    pub k4: f64,
    /// Candidates with a smaller free radius than this are discarded, meters.
    pub min_radius: f64,
    /// Hard cap on the number of corridor spheres.
    pub max_spheres: usize,
    /// Seed of the candidate-sampling RNG; growth is deterministic given the
    /// seed.
    pub rng_seed: u64,
}

impl Default for CorridorConfig {
    fn default() -> Self {
        CorridorConfig {
            candidates_per_step: 100,
            sigma: 1.0,
            k1: 1.0,
            k2: 1.0,
            k3: 1.0,
            k4: 1.0,
            min_radius: 0.05,
            max_spheres: 10_000,
            rng_seed: 0,
        }
    }
}

impl CorridorConfig {
    pub fn validate(&self) -> Result<(), CorridorError> {
        if self.candidates_per_step < 1 {
            return Err(CorridorError::InvalidConfig(
                "candidates_per_step must be >= 1".into(),
            ));
        }
        if !(self.sigma > 0.0) {
            return Err(CorridorError::InvalidConfig("sigma must be > 0".into()));
        }
        for (name, k) in [
            ("k1", self.k1),
            ("k2", self.k2),
            ("k3", self.k3),
            ("k4", self.k4),
        ] {
            if !(k > 0.0) {
                return Err(CorridorError::InvalidConfig(format!("{name} must be > 0")));
            }
        }
        if !(self.min_radius >= 0.0) {
            return Err(CorridorError::InvalidConfig(
                "min_radius must be >= 0".into(),
            ));
        }
        if self.max_spheres < 1 {
            return Err(CorridorError::InvalidConfig(
                "max_spheres must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Geometry of one growth step: the frontier point on the path, the unit
/// growth direction, and the most recently accepted sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthStep {
    /// Next sampling center: the farthest path point the sphere union covers.
    pub frontier: Point3<f64>,
    /// Unit vector from the previous sphere center toward the frontier.
    pub direction: Vector3<f64>,
    /// Most recently accepted corridor sphere.
    pub prev: Sphere,
}

/// Ordered spheres covering the guide path, with the covered arc length
/// recorded after each sphere was accepted.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereCorridor {
    pub spheres: Vec<Sphere>,
    /// Arc length of the path covered after each sphere; non-decreasing,
    /// same length as `spheres`.
    pub coverage_lengths: Vec<f64>,
}

impl SphereCorridor {
    /// Arc length covered by the full corridor.
    pub fn covered_length(&self) -> f64 {
        self.coverage_lengths.last().copied().unwrap_or(0.0)
    }
}

/// Largest obstacle-free sphere radius at `p_cand` for a drone of radius
/// `r_d`: nearest-obstacle distance minus `r_d`, clamped at 0.
pub fn candidate_radius(scene: &ObstacleScene, p_cand: &Point3<f64>, r_d: f64) -> f64 {
    (scene.nearest_distance(p_cand) - r_d).max(0.0)
}

/// Scores a candidate sphere for one growth step.
///
/// With `d` the offset from the frontier to the candidate center and `z` the
/// growth direction, the score is
/// `k1·V_cand + k2·V_overlap − k3·(d·z) − k4·‖d − (d·z)z‖`:
/// volume and overlap with the previous sphere are rewarded, drift past the
/// frontier and off the growth axis are penalized.
pub fn score_candidate(cand: &Sphere, step: &GrowthStep, cfg: &CorridorConfig) -> f64 {
    let v_cand = cand.volume();
    let v_inter = sphere_overlap_volume(cand, &step.prev);
    let d = cand.center - step.frontier;
    let along = d.dot(&step.direction);
    let lateral = (d - step.direction * along).norm();
    cfg.k1 * v_cand + cfg.k2 * v_inter - cfg.k3 * along - cfg.k4 * lateral
}

/// Sorted, disjoint arc-length intervals; tracks how far from 0 the union
/// reaches without a gap.
struct IntervalSet {
    /// Disjoint intervals sorted by start.
    intervals: Vec<(f64, f64)>,
    /// Gap tolerance when merging, meters.
    eps: f64,
}

impl IntervalSet {
    fn new(eps: f64) -> Self {
        IntervalSet {
            intervals: Vec::new(),
            eps,
        }
    }

    fn insert(&mut self, start: f64, end: f64) {
        debug_assert!(start <= end);
        let mut merged = (start, end);
        let mut out = Vec::with_capacity(self.intervals.len() + 1);
        let mut placed = false;
        for &(s, e) in &self.intervals {
            if e + self.eps < merged.0 {
                out.push((s, e)); // entirely before, keep
            } else if s > merged.1 + self.eps {
                if !placed {
                    out.push(merged);
                    placed = true;
                }
                out.push((s, e)); // entirely after
            } else {
                merged.0 = merged.0.min(s);
                merged.1 = merged.1.max(e);
            }
        }
        if !placed {
            out.push(merged);
        }
        self.intervals = out;
    }

    /// Largest `f` such that `[0, f]` lies inside the union; 0 if the union
    /// does not reach 0.
    fn frontier(&self) -> f64 {
        match self.intervals.first() {
            Some(&(s, e)) if s <= self.eps => e,
            _ => 0.0,
        }
    }
}

/// Appends the arc-length intervals of `path` that lie inside `sphere`.
fn path_sphere_intervals(path: &GuidePath, sphere: &Sphere, set: &mut IntervalSet) {
    let wps = path.waypoints();
    let cum = path.cumulative_lengths();
    for i in 0..wps.len() - 1 {
        let a = wps[i];
        let b = wps[i + 1];
        let ab = b - a;
        let am = a - sphere.center;
        // |a + t·ab − c|² = r², t ∈ [0, 1]
        let qa = ab.norm_squared();
        let qb = 2.0 * am.dot(&ab);
        let qc = am.norm_squared() - sphere.radius * sphere.radius;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc <= 0.0 {
            continue;
        }
        let sqrt_disc = disc.sqrt();
        let t0 = ((-qb - sqrt_disc) / (2.0 * qa)).max(0.0);
        let t1 = ((-qb + sqrt_disc) / (2.0 * qa)).min(1.0);
        if t0 < t1 {
            let seg_len = cum[i + 1] - cum[i];
            set.insert(cum[i] + t0 * seg_len, cum[i] + t1 * seg_len);
        }
    }
}

/// Grows a sphere corridor covering `path` from start to end.
///
/// The first sphere sits at the path start with the free radius available
/// there. Each subsequent step evaluates the frontier point itself plus
/// `cfg.candidates_per_step` Gaussian samples around it, discards candidates
/// whose free radius is below `cfg.min_radius` or that do not contain the
/// frontier point, and accepts the highest-scoring remainder (ties break to
/// the earliest candidate, so results are independent of evaluation order).
/// Accepted spheres therefore always extend coverage. Growth ends when the
/// path end is covered or `cfg.max_spheres` is reached — the returned
/// corridor may then cover the path only partially.
///
/// Errors with [`CorridorError::ZeroRadiusStart`] when no starting sphere
/// fits and [`CorridorError::CoverageStall`] when the frontier stops moving.
pub fn grow_corridor(
    scene: &ObstacleScene,
    path: &GuidePath,
    sensor: &SensorConfig,
    cfg: &CorridorConfig,
) -> Result<SphereCorridor, CorridorError> {
    cfg.validate()?;
    let r_d = sensor.drone_radius;
    let total = path.total_length();

    let start_radius = candidate_radius(scene, &path.start(), r_d);
    if start_radius < cfg.min_radius {
        return Err(CorridorError::ZeroRadiusStart {
            radius: start_radius,
            min_radius: cfg.min_radius,
        });
    }
    let first = Sphere::new(path.start(), start_radius.max(cfg.min_radius));

    let mut coverage = IntervalSet::new(1e-9);
    path_sphere_intervals(path, &first, &mut coverage);
    let mut frontier = coverage.frontier().min(total);

    let mut spheres = vec![first];
    let mut coverage_lengths = vec![frontier];

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let normal = Normal::new(0.0, cfg.sigma).expect("sigma validated > 0");
    let mut stalled: u32 = 0;

    while frontier < total && spheres.len() < cfg.max_spheres {
        let prev = *spheres.last().unwrap();
        let p_hi = path.point_at(frontier);
        let z = {
            let v = p_hi - prev.center;
            let n = v.norm();
            if n > 1e-12 {
                v / n
            } else {
                path.tangent_at(frontier)
            }
        };
        let step = GrowthStep {
            frontier: p_hi,
            direction: z,
            prev,
        };

        // Candidate 0 is the frontier point itself, so any step where a
        // legal sphere exists right at the frontier is guaranteed to
        // advance; the rest are Gaussian samples. Argmax, ties broken to
        // the lowest candidate index.
        let mut best: Option<(f64, Sphere)> = None;
        for i in 0..=cfg.candidates_per_step {
            let center = if i == 0 {
                p_hi
            } else {
                p_hi + Vector3::new(
                    normal.sample(&mut rng),
                    normal.sample(&mut rng),
                    normal.sample(&mut rng),
                )
            };
            let radius = candidate_radius(scene, &center, r_d);
            if radius < cfg.min_radius {
                continue;
            }
            // A sphere that misses the frontier point cannot close the
            // coverage gap there no matter how large it is; without this
            // rule, volume-heavy clearings behind the frontier win the
            // argmax and growth stalls.
            if (center - p_hi).norm() >= radius {
                continue;
            }
            let cand = Sphere::new(center, radius);
            let score = score_candidate(&cand, &step, cfg);
            if best.as_ref().is_none_or(|(s, _)| score > *s) {
                best = Some((score, cand));
            }
        }

        let advanced = if let Some((_, cand)) = best {
            path_sphere_intervals(path, &cand, &mut coverage);
            let new_frontier = coverage.frontier().min(total);
            spheres.push(cand);
            coverage_lengths.push(new_frontier);
            let advanced = new_frontier > frontier;
            frontier = new_frontier;
            advanced
        } else {
            false // no legal candidate contained the frontier; resample
        };

        if advanced {
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= MAX_STALLED_STEPS {
                return Err(CorridorError::CoverageStall {
                    covered: frontier,
                    total,
                });
            }
        }
    }

    Ok(SphereCorridor {
        spheres,
        coverage_lengths,
    })
}
