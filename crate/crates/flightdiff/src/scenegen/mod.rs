//! Procedural test scenarios and guide-path computation.
//!
//! Two scene families are provided — tree-trunk forests with controllable
//! density and wall/box mazes built from an occupancy grid — plus a voxel
//! A* planner that turns any scene into a collision-free polyline guide
//! path. Everything is a pure, seeded function of its spec, so scenarios
//! regenerate identically.

mod forest;
mod guidepath;
mod maze;

pub use forest::{generate_forest, ForestScene, ForestSpec, Trunk};
pub use guidepath::compute_guide_path;
pub use maze::{generate_maze, MazeScene, MazeSpec};

use crate::geometry::GeometryError;
use thiserror::Error;

/// Errors from scenario generation and path planning.
#[derive(Debug, Error)]
pub enum ScenegenError {
    /// A spec field is out of range or inconsistent.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    /// Rejection sampling could not place the requested number of trees
    /// within the attempt budget.
    #[error("placed only {placed} of {requested} trees within the attempt budget; lower the density or shrink the radii")]
    DensityInfeasible { requested: usize, placed: usize },
    /// The maze grid has no free connection between start and goal cells.
    #[error("infeasible maze: {0}")]
    InfeasibleMaze(String),
    /// No collision-free route exists between start and goal.
    #[error("unreachable: {0}")]
    Unreachable(String),
    /// Generated geometry failed validation.
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}
