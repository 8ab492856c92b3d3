//! Performance metrics over recorded flight trajectories.
//!
//! A [`TrajectoryLog`] carries timestamped positions and optional velocity,
//! acceleration, and jerk channels; [`derive_kinematics`] fills any missing
//! channel by finite differences. The metrics follow these conventions:
//!
//! - **average speed** — time average of `‖v‖` over the flight duration;
//! - **average acceleration / jerk** — integral of `‖a‖²` (resp. `‖j‖²`)
//!   divided by the flown arc length, so units are m·s⁻³ (resp. m·s⁻⁵);
//! - **average curvature** — arc-length average of `κ = ‖v×a‖/‖v‖³`, which
//!   is a property of the flown geometry and independent of how fast it was
//!   flown;
//! - **success** — ends within the goal radius and never comes closer than
//!   the drone radius to an obstacle;
//! - **progress** — fraction of the reference path completed before the
//!   first collision, exactly 1 when the goal condition holds.
//!
//! All integrals use the trapezoidal rule on the native timestamps.

use crate::geometry::{GuidePath, ObstacleScene, SensorConfig};
use nalgebra::{Point3, Vector3};
use thiserror::Error;

/// Samples slower than this are excluded from the curvature integral, since
/// curvature is undefined at rest (m/s).
const MIN_CURVATURE_SPEED: f64 = 1e-3;

/// Default goal acceptance radius, meters.
pub const DEFAULT_GOAL_RADIUS: f64 = 1.5;

/// Errors from trajectory evaluation.
#[derive(Debug, Error)]
pub enum TrajectoryError {
    /// Too few samples for the requested computation.
    #[error("trajectory log has {got} samples but {needed} are required")]
    InsufficientData { needed: usize, got: usize },
    /// The log violates a structural invariant (timestamps, channel lengths,
    /// finiteness) or a required channel is missing.
    #[error("invalid trajectory log: {0}")]
    InvalidLog(String),
    /// The trajectory carries no usable motion for the requested metric.
    #[error("degenerate trajectory: {0}")]
    DegenerateTrajectory(String),
}

/// Per-stage computation times of the system that flew the trajectory,
/// milliseconds. Ingested bookkeeping only; nothing here is measured.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageTimings {
    pub mapping_ms: f64,
    pub planning_ms: f64,
    pub control_ms: f64,
}

impl StageTimings {
    pub fn total_ms(&self) -> f64 {
        self.mapping_ms + self.planning_ms + self.control_ms
    }
}

/// A recorded flight: strictly increasing timestamps, positions, and
/// optional velocity/acceleration/jerk channels of matching length.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryLog {
    /// Sample times, seconds, strictly increasing.
    pub t: Vec<f64>,
    /// Positions, meters.
    pub pos: Vec<Point3<f64>>,
    /// Velocities, m/s.
    pub vel: Option<Vec<Vector3<f64>>>,
    /// Accelerations, m/s².
    pub acc: Option<Vec<Vector3<f64>>>,
    /// Jerks, m/s³.
    pub jerk: Option<Vec<Vector3<f64>>>,
    /// Computation-time bookkeeping, if the source system reported it.
    pub timing: Option<StageTimings>,
}

impl TrajectoryLog {
    /// A log with positions only; derivative channels can be provided by
    /// assignment or filled with [`derive_kinematics`].
    pub fn new(t: Vec<f64>, pos: Vec<Point3<f64>>) -> Result<Self, TrajectoryError> {
        let log = TrajectoryLog {
            t,
            pos,
            vel: None,
            acc: None,
            jerk: None,
            timing: None,
        };
        log.validate()?;
        Ok(log)
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Flight duration, seconds.
    pub fn duration(&self) -> f64 {
        match (self.t.first(), self.t.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }

    /// Flown arc length: sum of consecutive position distances, meters.
    pub fn flown_length(&self) -> f64 {
        self.pos.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    /// Checks timestamps, channel lengths, and finiteness.
    pub fn validate(&self) -> Result<(), TrajectoryError> {
        if self.t.is_empty() {
            return Err(TrajectoryError::InvalidLog("log is empty".into()));
        }
        if self.pos.len() != self.t.len() {
            return Err(TrajectoryError::InvalidLog(format!(
                "{} timestamps but {} positions",
                self.t.len(),
                self.pos.len()
            )));
        }
        for (i, w) in self.t.windows(2).enumerate() {
            if !(w[1] > w[0]) {
                return Err(TrajectoryError::InvalidLog(format!(
                    "timestamps must be strictly increasing, violated at sample {}",
                    i + 1
                )));
            }
        }
        if self.t.iter().any(|v| !v.is_finite())
            || self
                .pos
                .iter()
                .any(|p| !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()))
        {
            return Err(TrajectoryError::InvalidLog(
                "non-finite timestamp or position".into(),
            ));
        }
        for (name, ch) in [
            ("velocity", &self.vel),
            ("acceleration", &self.acc),
            ("jerk", &self.jerk),
        ] {
            if let Some(ch) = ch {
                if ch.len() != self.t.len() {
                    return Err(TrajectoryError::InvalidLog(format!(
                        "{name} channel has {} entries for {} samples",
                        ch.len(),
                        self.t.len()
                    )));
                }
                if ch
                    .iter()
                    .any(|v| !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()))
                {
                    return Err(TrajectoryError::InvalidLog(format!(
                        "non-finite value in {name} channel"
                    )));
                }
            }
        }
        Ok(())
    }

    fn channel<'a>(
        &'a self,
        name: &str,
        ch: &'a Option<Vec<Vector3<f64>>>,
    ) -> Result<&'a [Vector3<f64>], TrajectoryError> {
        ch.as_deref().ok_or_else(|| {
            TrajectoryError::InvalidLog(format!(
                "{name} channel missing; run derive_kinematics first"
            ))
        })
    }
}

/// Goal position with an acceptance radius (default 1.5 m).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoalSpec {
    pub position: Point3<f64>,
    pub radius: f64,
}

impl GoalSpec {
    pub fn new(position: Point3<f64>) -> Self {
        GoalSpec {
            position,
            radius: DEFAULT_GOAL_RADIUS,
        }
    }

    pub fn with_radius(position: Point3<f64>, radius: f64) -> Self {
        debug_assert!(radius > 0.0);
        GoalSpec { position, radius }
    }
}

/// Everything measured about one flight.
#[derive(Debug, Clone, PartialEq)]
pub struct PerformanceReport {
    /// Reached the goal without ever violating obstacle clearance.
    pub success: bool,
    /// m/s.
    pub avg_speed: f64,
    /// 1/m.
    pub avg_curvature: f64,
    /// m·s⁻³ (`∫‖a‖²dt / L`).
    pub avg_acceleration: f64,
    /// m·s⁻⁵ (`∫‖j‖²dt / L`).
    pub avg_jerk: f64,
    /// Flight duration, seconds.
    pub total_time: f64,
    /// Flown arc length, meters.
    pub path_length: f64,
    /// Fraction of the reference path completed before collision, in [0, 1].
    pub progress: f64,
    /// Sum of the reported computation stages, milliseconds, when provided.
    pub computation_time_ms: Option<f64>,
}

/// Derivative of `f(t)` by finite differences on non-uniform timestamps:
/// three-point central stencils in the interior, two-point one-sided at the
/// ends. Exact for quadratics in the interior.
fn differentiate(t: &[f64], f: &[Vector3<f64>]) -> Vec<Vector3<f64>> {
    let n = f.len();
    let mut out = Vec::with_capacity(n);
    out.push((f[1] - f[0]) / (t[1] - t[0]));
    for i in 1..n - 1 {
        let h0 = t[i] - t[i - 1];
        let h1 = t[i + 1] - t[i];
        let w0 = -h1 / (h0 * (h0 + h1));
        let w1 = (h1 - h0) / (h0 * h1);
        let w2 = h0 / (h1 * (h0 + h1));
        out.push(f[i - 1] * w0 + f[i] * w1 + f[i + 1] * w2);
    }
    out.push((f[n - 1] - f[n - 2]) / (t[n - 1] - t[n - 2]));
    out
}

/// Fills missing velocity/acceleration/jerk channels by finite differences.
/// Channels already present are copied through untouched, never recomputed.
///
/// Requires at least 4 samples so every channel has interior stencils.
pub fn derive_kinematics(log: &TrajectoryLog) -> Result<TrajectoryLog, TrajectoryError> {
    log.validate()?;
    if log.len() < 4 {
        return Err(TrajectoryError::InsufficientData {
            needed: 4,
            got: log.len(),
        });
    }
    let mut out = log.clone();
    if out.vel.is_none() {
        let coords: Vec<Vector3<f64>> = out.pos.iter().map(|p| p.coords).collect();
        out.vel = Some(differentiate(&out.t, &coords));
    }
    if out.acc.is_none() {
        out.acc = Some(differentiate(&out.t, out.vel.as_ref().unwrap()));
    }
    if out.jerk.is_none() {
        out.jerk = Some(differentiate(&out.t, out.acc.as_ref().unwrap()));
    }
    Ok(out)
}

/// Trapezoidal integral of per-sample values `g` over the log timestamps.
fn trapezoid(t: &[f64], g: &[f64]) -> f64 {
    let mut sum = 0.0;
    for i in 0..t.len() - 1 {
        sum += 0.5 * (g[i] + g[i + 1]) * (t[i + 1] - t[i]);
    }
    sum
}

/// Time-averaged speed `(1/T)·∫‖v‖dt`, m/s.
pub fn average_speed(log: &TrajectoryLog) -> Result<f64, TrajectoryError> {
    log.validate()?;
    let vel = log.channel("velocity", &log.vel)?;
    let duration = log.duration();
    if !(duration > 0.0) {
        return Err(TrajectoryError::InvalidLog(
            "flight duration is zero".into(),
        ));
    }
    let speeds: Vec<f64> = vel.iter().map(|v| v.norm()).collect();
    Ok(trapezoid(&log.t, &speeds) / duration)
}

fn length_normalized_square_integral(
    log: &TrajectoryLog,
    name: &str,
    ch: &Option<Vec<Vector3<f64>>>,
) -> Result<f64, TrajectoryError> {
    log.validate()?;
    let ch = log.channel(name, ch)?;
    let length = log.flown_length();
    if !(length > 0.0) {
        return Err(TrajectoryError::InvalidLog(
            "flown arc length is zero".into(),
        ));
    }
    let sq: Vec<f64> = ch.iter().map(|v| v.norm_squared()).collect();
    Ok(trapezoid(&log.t, &sq) / length)
}

/// `∫‖a‖²dt / L` with `L` the flown arc length; m·s⁻³.
pub fn average_acceleration(log: &TrajectoryLog) -> Result<f64, TrajectoryError> {
    length_normalized_square_integral(log, "acceleration", &log.acc)
}

/// `∫‖j‖²dt / L` with `L` the flown arc length; m·s⁻⁵.
pub fn average_jerk(log: &TrajectoryLog) -> Result<f64, TrajectoryError> {
    length_normalized_square_integral(log, "jerk", &log.jerk)
}

/// Arc-length-averaged curvature `(1/L)·∫κ‖v‖dt` with
/// `κ = ‖v×a‖/‖v‖³`; 1/m.
///
/// Samples with `‖v‖ ≤ 1e-3 m/s` are excluded (curvature is undefined at
/// rest); an interval contributes only when both endpoints are valid. If no
/// sample moves, the metric is undefined and errors with
/// [`TrajectoryError::DegenerateTrajectory`].
pub fn average_curvature(log: &TrajectoryLog) -> Result<f64, TrajectoryError> {
    log.validate()?;
    let vel = log.channel("velocity", &log.vel)?;
    let acc = log.channel("acceleration", &log.acc)?;
    let length = log.flown_length();
    if !(length > 0.0) {
        return Err(TrajectoryError::InvalidLog(
            "flown arc length is zero".into(),
        ));
    }

    // κ‖v‖ = ‖v×a‖ / ‖v‖².
    let integrand: Vec<Option<f64>> = vel
        .iter()
        .zip(acc)
        .map(|(v, a)| {
            let speed = v.norm();
            (speed > MIN_CURVATURE_SPEED).then(|| v.cross(a).norm() / (speed * speed))
        })
        .collect();
    if integrand.iter().all(|g| g.is_none()) {
        return Err(TrajectoryError::DegenerateTrajectory(
            "no sample exceeds the minimum speed for curvature".into(),
        ));
    }
    let mut sum = 0.0;
    for i in 0..log.len() - 1 {
        if let (Some(g0), Some(g1)) = (integrand[i], integrand[i + 1]) {
            sum += 0.5 * (g0 + g1) * (log.t[i + 1] - log.t[i]);
        }
    }
    Ok(sum / length)
}

/// Whether the flight ends within the goal radius and keeps at least `r_d`
/// clearance to every obstacle at every sample. `scene: None` means an
/// obstacle-free environment, leaving only the goal condition.
pub fn success(
    log: &TrajectoryLog,
    goal: &GoalSpec,
    scene: Option<&ObstacleScene>,
    r_d: f64,
) -> bool {
    let Some(last) = log.pos.last() else {
        return false;
    };
    if (last - goal.position).norm() > goal.radius {
        return false;
    }
    match scene {
        None => true,
        Some(scene) => log.pos.iter().all(|p| scene.nearest_distance(p) >= r_d),
    }
}

/// Arc length along `reference` of the point nearest to `p`, by exact
/// projection onto every segment. Ties resolve to the smallest arc length.
fn project_arc_length(reference: &GuidePath, p: &Point3<f64>) -> f64 {
    let wps = reference.waypoints();
    let cum = reference.cumulative_lengths();
    let mut best = (f64::INFINITY, 0.0);
    for i in 0..wps.len() - 1 {
        let a = wps[i];
        let ab = wps[i + 1] - a;
        let t = ((p - a).dot(&ab) / ab.norm_squared()).clamp(0.0, 1.0);
        let d2 = (p - (a + ab * t)).norm_squared();
        if d2 < best.0 {
            best = (d2, cum[i] + t * (cum[i + 1] - cum[i]));
        }
    }
    best.1
}

/// Fraction of the reference path completed, in [0, 1].
///
/// Exactly 1 when the log's final position satisfies the goal condition;
/// otherwise the arc-length fraction of the reference point nearest to the
/// final position. An empty log scores 0. Pass a log already truncated at
/// its first collision to measure progress "before the collision" —
/// [`evaluate`] does this.
pub fn progress(log: &TrajectoryLog, reference: &GuidePath, goal: &GoalSpec) -> f64 {
    let Some(last) = log.pos.last() else {
        return 0.0;
    };
    if (last - goal.position).norm() <= goal.radius {
        return 1.0;
    }
    (project_arc_length(reference, last) / reference.total_length()).clamp(0.0, 1.0)
}

/// Index of the first sample violating `r_d` clearance, if any.
fn first_collision(log: &TrajectoryLog, scene: &ObstacleScene, r_d: f64) -> Option<usize> {
    log.pos.iter().position(|p| scene.nearest_distance(p) < r_d)
}

/// Runs the full metric suite on one flight.
///
/// Derivative channels are filled if missing. The six performance metrics
/// are computed over the entire log; progress alone is computed on the log
/// truncated at the first collision sample.
pub fn evaluate(
    log: &TrajectoryLog,
    scene: Option<&ObstacleScene>,
    reference: &GuidePath,
    goal: &GoalSpec,
    sensor: &SensorConfig,
) -> Result<PerformanceReport, TrajectoryError> {
    let full = derive_kinematics(log)?;
    let r_d = sensor.drone_radius;

    let success = success(&full, goal, scene, r_d);
    let avg_speed = average_speed(&full)?;
    let avg_curvature = average_curvature(&full)?;
    let avg_acceleration = average_acceleration(&full)?;
    let avg_jerk = average_jerk(&full)?;

    let progress = match scene.and_then(|s| first_collision(&full, s, r_d)) {
        Some(0) => 0.0,
        Some(idx) => {
            let truncated = TrajectoryLog {
                t: full.t[..idx].to_vec(),
                pos: full.pos[..idx].to_vec(),
                vel: None,
                acc: None,
                jerk: None,
                timing: None,
            };
            progress(&truncated, reference, goal)
        }
        None => progress(&full, reference, goal),
    };

    Ok(PerformanceReport {
        success,
        avg_speed,
        avg_curvature,
        avg_acceleration,
        avg_jerk,
        total_time: full.duration(),
        path_length: full.flown_length(),
        progress,
        computation_time_ms: full.timing.map(|t| t.total_ms()),
    })
}
