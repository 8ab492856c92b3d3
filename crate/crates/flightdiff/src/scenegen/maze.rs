//! Wall-and-box mazes extruded from a 2D occupancy grid.

use super::ScenegenError;
use crate::geometry::{build_scene, primitives, ObstacleScene};
use nalgebra::{Point3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::VecDeque;

/// Parameters of a maze scenario.
///
/// `grid[row][col] = true` marks a wall cell; the maze is implicitly
/// surrounded by a one-cell wall ring. Cell `(row, col)` occupies
/// `x ∈ [col·s, (col+1)·s]`, `y ∈ [row·s, (row+1)·s]` with `s = cell_size`.
/// Free cells may additionally receive a random box obstacle, creating
/// narrow gaps without blocking connectivity.
#[derive(Debug, Clone, PartialEq)]
pub struct MazeSpec {
    /// Grid cell edge length, meters.
    pub cell_size: f64,
    /// Wall occupancy, row-major; all rows must have equal length.
    pub grid: Vec<Vec<bool>>,
    /// Extrusion height of walls, meters.
    pub wall_height: f64,
    /// Probability that a free cell (other than start/goal) holds a box.
    pub box_fill_fraction: f64,
    /// Start cell as (row, col); must be free.
    pub start_cell: (usize, usize),
    /// Goal cell as (row, col); must be free.
    pub goal_cell: (usize, usize),
    /// Obstacle surface sample density, points per square meter.
    pub surface_density: f64,
    pub seed: u64,
}

impl MazeSpec {
    /// Builds a spec from a character map: `#` wall, `.` free, `S` start,
    /// `G` goal (both free). Row 0 of the layout is the row at y = 0.
    pub fn from_layout(
        layout: &[impl AsRef<str>],
        cell_size: f64,
        wall_height: f64,
        box_fill_fraction: f64,
        seed: u64,
    ) -> Result<Self, ScenegenError> {
        let mut grid = Vec::with_capacity(layout.len());
        let mut start = None;
        let mut goal = None;
        for (i, row) in layout.iter().enumerate() {
            let mut cells = Vec::new();
            for (j, ch) in row.as_ref().chars().enumerate() {
                match ch {
                    '#' => cells.push(true),
                    '.' => cells.push(false),
                    'S' => {
                        start = Some((i, j));
                        cells.push(false);
                    }
                    'G' => {
                        goal = Some((i, j));
                        cells.push(false);
                    }
                    other => {
                        return Err(ScenegenError::InvalidSpec(format!(
                            "unknown maze layout character '{other}' at row {i}, column {j}"
                        )))
                    }
                }
            }
            grid.push(cells);
        }
        let start_cell =
            start.ok_or_else(|| ScenegenError::InvalidSpec("layout has no 'S' cell".into()))?;
        let goal_cell =
            goal.ok_or_else(|| ScenegenError::InvalidSpec("layout has no 'G' cell".into()))?;
        Ok(MazeSpec {
            cell_size,
            grid,
            wall_height,
            box_fill_fraction,
            start_cell,
            goal_cell,
            surface_density: 20.0,
            seed,
        })
    }

    fn validate(&self) -> Result<(), ScenegenError> {
        let err = |msg: String| Err(ScenegenError::InvalidSpec(msg));
        if !(self.cell_size > 0.0) {
            return err("cell_size must be > 0".into());
        }
        if !(self.wall_height > 0.0) {
            return err("wall_height must be > 0".into());
        }
        if !(0.0..=1.0).contains(&self.box_fill_fraction) {
            return err(format!(
                "box_fill_fraction must lie in [0, 1], got {}",
                self.box_fill_fraction
            ));
        }
        if !(self.surface_density > 0.0) {
            return err("surface_density must be > 0".into());
        }
        if self.grid.is_empty() || self.grid[0].is_empty() {
            return err("grid must be non-empty".into());
        }
        let cols = self.grid[0].len();
        if self.grid.iter().any(|row| row.len() != cols) {
            return err("grid rows must all have the same length".into());
        }
        for (name, (r, c)) in [("start", self.start_cell), ("goal", self.goal_cell)] {
            if r >= self.grid.len() || c >= cols {
                return err(format!("{name} cell ({r}, {c}) is outside the grid"));
            }
        }
        Ok(())
    }
}

/// A generated maze: the obstacle scene plus start and goal positions at
/// the centers of their cells, mid-height.
pub struct MazeScene {
    pub scene: ObstacleScene,
    pub start: Point3<f64>,
    pub goal: Point3<f64>,
}

/// 4-connected reachability between start and goal over free cells.
fn connected(grid: &[Vec<bool>], start: (usize, usize), goal: (usize, usize)) -> bool {
    let (n, m) = (grid.len(), grid[0].len());
    let mut seen = vec![vec![false; m]; n];
    let mut queue = VecDeque::from([start]);
    seen[start.0][start.1] = true;
    while let Some((r, c)) = queue.pop_front() {
        if (r, c) == goal {
            return true;
        }
        let neighbors = [
            (r.wrapping_sub(1), c),
            (r + 1, c),
            (r, c.wrapping_sub(1)),
            (r, c + 1),
        ];
        for (nr, nc) in neighbors {
            if nr < n && nc < m && !grid[nr][nc] && !seen[nr][nc] {
                seen[nr][nc] = true;
                queue.push_back((nr, nc));
            }
        }
    }
    false
}

/// Generates a maze scene. Deterministic per spec (seed included).
///
/// Wall faces are emitted only where they border free space, plus all top
/// faces (bottoms are unreachable and skipped). Errors with
/// [`ScenegenError::InfeasibleMaze`] when start and goal are walled off
/// from each other.
pub fn generate_maze(spec: &MazeSpec) -> Result<MazeScene, ScenegenError> {
    spec.validate()?;
    let (n, m) = (spec.grid.len(), spec.grid[0].len());
    for (name, (r, c)) in [("start", spec.start_cell), ("goal", spec.goal_cell)] {
        if spec.grid[r][c] {
            return Err(ScenegenError::InfeasibleMaze(format!(
                "{name} cell ({r}, {c}) is a wall"
            )));
        }
    }
    if !connected(&spec.grid, spec.start_cell, spec.goal_cell) {
        return Err(ScenegenError::InfeasibleMaze(
            "start and goal cells are not connected through free cells".into(),
        ));
    }

    let s = spec.cell_size;
    let h = spec.wall_height;
    let rho = spec.surface_density;
    // Walls extend one ring beyond the grid; only in-grid non-wall cells
    // are free.
    let is_free = |r: isize, c: isize| {
        r >= 0
            && c >= 0
            && (r as usize) < n
            && (c as usize) < m
            && !spec.grid[r as usize][c as usize]
    };

    let mut points = Vec::new();
    for r in -1..=(n as isize) {
        for c in -1..=(m as isize) {
            if is_free(r, c) {
                continue; // not a wall cell
            }
            let (x0, y0) = (c as f64 * s, r as f64 * s);
            // Side faces toward free neighbors.
            if is_free(r, c - 1) {
                primitives::rect_face(
                    Point3::new(x0, y0, 0.0),
                    Vector3::new(0.0, s, 0.0),
                    Vector3::new(0.0, 0.0, h),
                    rho,
                    &mut points,
                );
            }
            if is_free(r, c + 1) {
                primitives::rect_face(
                    Point3::new(x0 + s, y0, 0.0),
                    Vector3::new(0.0, s, 0.0),
                    Vector3::new(0.0, 0.0, h),
                    rho,
                    &mut points,
                );
            }
            if is_free(r - 1, c) {
                primitives::rect_face(
                    Point3::new(x0, y0, 0.0),
                    Vector3::new(s, 0.0, 0.0),
                    Vector3::new(0.0, 0.0, h),
                    rho,
                    &mut points,
                );
            }
            if is_free(r + 1, c) {
                primitives::rect_face(
                    Point3::new(x0, y0 + s, 0.0),
                    Vector3::new(s, 0.0, 0.0),
                    Vector3::new(0.0, 0.0, h),
                    rho,
                    &mut points,
                );
            }
            // Top face (nothing flies under a wall, so bottoms are skipped).
            primitives::rect_face(
                Point3::new(x0, y0, h),
                Vector3::new(s, 0.0, 0.0),
                Vector3::new(0.0, s, 0.0),
                rho,
                &mut points,
            );
        }
    }

    // Random boxes in free cells (start/goal cells stay empty).
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for r in 0..n {
        for c in 0..m {
            if spec.grid[r][c] || (r, c) == spec.start_cell || (r, c) == spec.goal_cell {
                continue;
            }
            if !rng.random_bool(spec.box_fill_fraction) {
                continue;
            }
            let side = s * rng.random_range(0.2..0.4);
            let jx = s * rng.random_range(-0.1..0.1);
            let jy = s * rng.random_range(-0.1..0.1);
            let bh = h * rng.random_range(0.3..0.7);
            let cx = c as f64 * s + s / 2.0 + jx;
            let cy = r as f64 * s + s / 2.0 + jy;
            emit_box(
                Point3::new(cx - side / 2.0, cy - side / 2.0, 0.0),
                side,
                side,
                bh,
                rho,
                &mut points,
            );
        }
    }

    let mid = h / 2.0;
    let center =
        |(r, c): (usize, usize)| Point3::new(c as f64 * s + s / 2.0, r as f64 * s + s / 2.0, mid);
    Ok(MazeScene {
        scene: build_scene(points)?,
        start: center(spec.start_cell),
        goal: center(spec.goal_cell),
    })
}

/// Axis-aligned box surfaces: four sides and the top; no bottom.
fn emit_box(min: Point3<f64>, dx: f64, dy: f64, dz: f64, density: f64, out: &mut Vec<Point3<f64>>) {
    let ex = Vector3::new(dx, 0.0, 0.0);
    let ey = Vector3::new(0.0, dy, 0.0);
    let ez = Vector3::new(0.0, 0.0, dz);
    primitives::rect_face(min, ey, ez, density, out); // x = min.x
    primitives::rect_face(min + ex, ey, ez, density, out); // x = max.x
    primitives::rect_face(min, ex, ez, density, out); // y = min.y
    primitives::rect_face(min + ey, ex, ez, density, out); // y = max.y
    primitives::rect_face(min + ez, ex, ey, density, out); // top
}
