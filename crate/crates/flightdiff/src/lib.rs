//! Difficulty scoring and flight evaluation for quadrotor navigation scenarios.
//!
//! The crate quantifies how hard a navigation test case is and how well a
//! recorded flight performed on it:
//!
//! - [`geometry`] — obstacle scenes backed by a nearest-neighbor index,
//!   polyline guide paths, and sphere primitives.
//! - [`corridor`] — sampling-based growth of a sphere corridor covering the
//!   guide path.
//! - [`difficulty`] — the three task-difficulty metrics: traversability
//!   obstruction (TO), view occlusion (VO), and angle over length (AOL).
//! - [`trajmetrics`] — performance metrics over recorded trajectories
//!   (success, speed, acceleration, jerk, curvature, progress).
//! - [`analysis`] — cross-run aggregation and difficulty/performance
//!   correlation matrices.
//! - [`scenegen`] — procedural forest and maze scenarios plus voxel-grid
//!   guide-path computation.
//! - [`io`] — file formats for scenes, paths, trajectory logs, and corridors.

// Parameter validation deliberately writes `!(x > 0.0)` rather than
// `x <= 0.0`: the negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod corridor;
pub mod difficulty;
pub mod geometry;
pub mod io;
pub mod scenegen;
pub mod trajmetrics;

pub use analysis::{
    aggregate_runs, correlation_matrix, AggregatePerformance, AnalysisError, CorrelationKind,
    CorrelationMatrix, CorrelationMode, FinalColumn, RunRecord, RunTable,
};
pub use corridor::{
    candidate_radius, grow_corridor, score_candidate, CorridorConfig, CorridorError, GrowthStep,
    SphereCorridor,
};
pub use difficulty::{
    angle_over_length, score_test_case, score_test_case_detailed, traversability_obstruction,
    view_occlusion, DifficultyError, DifficultyScores, VoSampling, VoSamplingConfig,
};
pub use geometry::{
    build_scene, sphere_overlap_volume, Aabb, GeometryError, GuidePath, ObstacleScene, PathSample,
    SensorConfig, Sphere,
};
pub use io::{fmt_sig9, IoError, JsonValue};
pub use scenegen::{
    compute_guide_path, generate_forest, generate_maze, ForestScene, ForestSpec, MazeScene,
    MazeSpec, ScenegenError,
};
pub use trajmetrics::{
    average_acceleration, average_curvature, average_jerk, average_speed, derive_kinematics,
    evaluate, progress, success, GoalSpec, PerformanceReport, StageTimings, TrajectoryError,
    TrajectoryLog,
};

/// Crate version string, embedded in every output artifact.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
