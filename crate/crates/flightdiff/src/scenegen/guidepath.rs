//! Collision-free guide paths through point-cloud scenes.
//!
//! Plans on a uniform voxel grid with 26-connected A*, then simplifies the
//! cell path by greedy line-of-sight shortcutting. The result is a coarse
//! reference route — good enough to anchor difficulty scoring — not a
//! dynamically feasible trajectory.

use super::ScenegenError;
use crate::geometry::{GuidePath, ObstacleScene};
use nalgebra::Point3;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Hard cap on grid size to keep memory bounded on huge scenes.
const MAX_CELLS: usize = 20_000_000;

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    f: f64,
    seq: u64,
    cell: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on f, ties broken by insertion order for determinism.
        other
            .f
            .partial_cmp(&self.f)
            .unwrap_or(Ordering::Equal)
            .then(other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Grid<'a> {
    scene: &'a ObstacleScene,
    origin: Point3<f64>,
    voxel: f64,
    dims: [usize; 3],
    clearance: f64,
    /// Lazy blocked memo: 0 unknown, 1 free, 2 blocked.
    occupancy: Vec<u8>,
}

impl<'a> Grid<'a> {
    fn index(&self, c: [usize; 3]) -> usize {
        (c[2] * self.dims[1] + c[1]) * self.dims[0] + c[0]
    }

    fn center(&self, c: [usize; 3]) -> Point3<f64> {
        Point3::new(
            self.origin.x + (c[0] as f64 + 0.5) * self.voxel,
            self.origin.y + (c[1] as f64 + 0.5) * self.voxel,
            self.origin.z + (c[2] as f64 + 0.5) * self.voxel,
        )
    }

    fn cell_of(&self, p: &Point3<f64>) -> [usize; 3] {
        let mut c = [0usize; 3];
        for (k, (px, ox)) in [
            (p.x, self.origin.x),
            (p.y, self.origin.y),
            (p.z, self.origin.z),
        ]
        .into_iter()
        .enumerate()
        {
            let i = ((px - ox) / self.voxel).floor() as isize;
            c[k] = i.clamp(0, self.dims[k] as isize - 1) as usize;
        }
        c
    }

    fn blocked(&mut self, c: [usize; 3]) -> bool {
        let idx = self.index(c);
        if self.occupancy[idx] == 0 {
            let free = self.scene.nearest_distance(&self.center(c)) > self.clearance;
            self.occupancy[idx] = if free { 1 } else { 2 };
        }
        self.occupancy[idx] == 2
    }
}

/// Computes a collision-free polyline from `start` to `goal`.
///
/// `None` for the scene means empty space: the path is the straight segment
/// between the endpoints. Otherwise the planner searches a voxel grid of
/// resolution `voxel` covering the scene bounds (inflated by one voxel and
/// extended to contain both endpoints), treating any cell whose center lies
/// within `drone_radius` of an obstacle point as blocked. Start and goal
/// cells are always kept free so the search can leave/enter them, but the
/// endpoints themselves must clear the obstacles or the problem is reported
/// as [`ScenegenError::Unreachable`].
pub fn compute_guide_path(
    scene: Option<&ObstacleScene>,
    start: Point3<f64>,
    goal: Point3<f64>,
    voxel: f64,
    drone_radius: f64,
) -> Result<GuidePath, ScenegenError> {
    if !(voxel > 0.0) || !voxel.is_finite() {
        return Err(ScenegenError::InvalidSpec(format!(
            "voxel size must be positive and finite, got {voxel}"
        )));
    }
    if !(drone_radius >= 0.0) || !drone_radius.is_finite() {
        return Err(ScenegenError::InvalidSpec(format!(
            "drone radius must be non-negative, got {drone_radius}"
        )));
    }
    if start == goal {
        return Err(ScenegenError::InvalidSpec(
            "start and goal coincide; no path to plan".into(),
        ));
    }
    let Some(scene) = scene else {
        return Ok(GuidePath::new(vec![start, goal])?);
    };

    for (name, p) in [("start", &start), ("goal", &goal)] {
        if scene.nearest_distance(p) <= drone_radius {
            return Err(ScenegenError::Unreachable(format!(
                "{name} position lies within the drone radius of an obstacle"
            )));
        }
    }

    let bounds = scene
        .bounds()
        .including(&start)
        .including(&goal)
        .inflated(voxel);
    let extent = bounds.max - bounds.min;
    let mut dims = [0usize; 3];
    for k in 0..3 {
        dims[k] = ((extent[k] / voxel).ceil() as usize).max(1);
    }
    let total = dims[0]
        .checked_mul(dims[1])
        .and_then(|v| v.checked_mul(dims[2]))
        .filter(|&v| v <= MAX_CELLS)
        .ok_or_else(|| {
            ScenegenError::InvalidSpec(format!(
                "voxel grid {}x{}x{} exceeds the planner size limit; increase the voxel size",
                dims[0], dims[1], dims[2]
            ))
        })?;

    let mut grid = Grid {
        scene,
        origin: bounds.min,
        voxel,
        dims,
        clearance: drone_radius,
        occupancy: vec![0u8; total],
    };
    let start_cell = grid.cell_of(&start);
    let goal_cell = grid.cell_of(&goal);
    // The endpoints were verified clear above; their cell centers may still
    // sit near obstacles, so force both cells traversable.
    let si = grid.index(start_cell);
    let gi = grid.index(goal_cell);
    grid.occupancy[si] = 1;
    grid.occupancy[gi] = 1;

    let cells = astar(&mut grid, start_cell, goal_cell).ok_or_else(|| {
        ScenegenError::Unreachable("no collision-free route exists at this resolution".into())
    })?;

    let corners = extract_corners(&cells);
    let mut waypoints: Vec<Point3<f64>> = corners.iter().map(|&c| grid.center(c)).collect();
    *waypoints.first_mut().unwrap() = start;
    *waypoints.last_mut().unwrap() = goal;
    let waypoints = shortcut(&grid, scene, waypoints);

    let mut deduped: Vec<Point3<f64>> = Vec::with_capacity(waypoints.len());
    for w in waypoints {
        if deduped.last() != Some(&w) {
            deduped.push(w);
        }
    }
    Ok(GuidePath::new(deduped)?)
}

/// 26-connected A* over the voxel grid; returns the cell path or `None`.
fn astar(grid: &mut Grid, start: [usize; 3], goal: [usize; 3]) -> Option<Vec<[usize; 3]>> {
    // Neighbor offsets with their Euclidean step costs.
    let mut offsets = Vec::with_capacity(26);
    for di in -1i32..=1 {
        for dj in -1i32..=1 {
            for dk in -1i32..=1 {
                if (di, dj, dk) == (0, 0, 0) {
                    continue;
                }
                let cost = grid.voxel * f64::from(di * di + dj * dj + dk * dk).sqrt();
                offsets.push(([di, dj, dk], cost));
            }
        }
    }
    let voxel = grid.voxel;
    let heuristic = move |c: [usize; 3]| {
        let mut d2 = 0.0;
        for k in 0..3 {
            let d = (c[k] as f64 - goal[k] as f64) * voxel;
            d2 += d * d;
        }
        d2.sqrt()
    };

    let total = grid.occupancy.len();
    let mut g = vec![f64::INFINITY; total];
    let mut parent: Vec<u32> = vec![u32::MAX; total];
    let mut closed = vec![false; total];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;

    let si = grid.index(start);
    g[si] = 0.0;
    heap.push(HeapEntry {
        f: heuristic(start),
        seq,
        cell: si,
    });

    while let Some(HeapEntry { cell, .. }) = heap.pop() {
        if closed[cell] {
            continue;
        }
        closed[cell] = true;
        let c = [
            cell % grid.dims[0],
            (cell / grid.dims[0]) % grid.dims[1],
            cell / (grid.dims[0] * grid.dims[1]),
        ];
        if c == goal {
            let mut cells = vec![c];
            let mut at = cell;
            while parent[at] != u32::MAX {
                at = parent[at] as usize;
                cells.push([
                    at % grid.dims[0],
                    (at / grid.dims[0]) % grid.dims[1],
                    at / (grid.dims[0] * grid.dims[1]),
                ]);
            }
            cells.reverse();
            return Some(cells);
        }
        for &([di, dj, dk], cost) in &offsets {
            let ni = c[0] as i64 + i64::from(di);
            let nj = c[1] as i64 + i64::from(dj);
            let nk = c[2] as i64 + i64::from(dk);
            if ni < 0
                || nj < 0
                || nk < 0
                || ni >= grid.dims[0] as i64
                || nj >= grid.dims[1] as i64
                || nk >= grid.dims[2] as i64
            {
                continue;
            }
            let nc = [ni as usize, nj as usize, nk as usize];
            let nidx = grid.index(nc);
            if closed[nidx] || grid.blocked(nc) {
                continue;
            }
            // Midpoint clearance: keeps diagonal steps from slipping
            // between the cell centers of a thin obstacle sheet.
            let mid = nalgebra::center(&grid.center(c), &grid.center(nc));
            if grid.scene.nearest_distance(&mid) <= grid.clearance {
                continue;
            }
            let tentative = g[cell] + cost;
            if tentative < g[nidx] {
                g[nidx] = tentative;
                parent[nidx] = cell as u32;
                seq += 1;
                heap.push(HeapEntry {
                    f: tentative + heuristic(nc),
                    seq,
                    cell: nidx,
                });
            }
        }
    }
    None
}

/// Keeps only cells where the integer step direction changes.
fn extract_corners(cells: &[[usize; 3]]) -> Vec<[usize; 3]> {
    if cells.len() <= 2 {
        return cells.to_vec();
    }
    let delta = |a: [usize; 3], b: [usize; 3]| {
        [
            b[0] as i64 - a[0] as i64,
            b[1] as i64 - a[1] as i64,
            b[2] as i64 - a[2] as i64,
        ]
    };
    let mut corners = vec![cells[0]];
    for i in 1..cells.len() - 1 {
        if delta(cells[i - 1], cells[i]) != delta(cells[i], cells[i + 1]) {
            corners.push(cells[i]);
        }
    }
    corners.push(*cells.last().unwrap());
    corners
}

/// Greedy line-of-sight smoothing: from each waypoint, jump to the farthest
/// later waypoint reachable along a straight, collision-free segment.
fn shortcut(grid: &Grid, scene: &ObstacleScene, waypoints: Vec<Point3<f64>>) -> Vec<Point3<f64>> {
    if waypoints.len() <= 2 {
        return waypoints;
    }
    let step = grid.voxel / 2.0;
    let clear = |a: &Point3<f64>, b: &Point3<f64>| {
        let len = (b - a).norm();
        let samples = (len / step).ceil() as usize;
        (0..=samples).all(|i| {
            let t = i as f64 / samples.max(1) as f64;
            let p = a + (b - a) * t;
            scene.nearest_distance(&p) > grid.clearance
        })
    };
    let mut out = vec![waypoints[0]];
    let mut i = 0;
    while i + 1 < waypoints.len() {
        let mut j = waypoints.len() - 1;
        while j > i + 1 && !clear(&waypoints[i], &waypoints[j]) {
            j -= 1;
        }
        // Falls back to the raw A* edge (i → i+1) when no longer jump is
        // provably clear; that edge came from adjacent free cells.
        out.push(waypoints[j]);
        i = j;
    }
    out
}
