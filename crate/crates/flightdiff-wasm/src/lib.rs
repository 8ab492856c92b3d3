//! Browser bindings for the difficulty-scoring library.
//!
//! Three operations are exported, each returning a JSON string so the
//! demo page needs nothing beyond the wasm-bindgen loader:
//!
//! - [`forest_case`] — generate a random trunk forest, plan a guide path
//!   through it, grow the sphere corridor, and score the three difficulty
//!   metrics;
//! - [`maze_case`] — the same pipeline for a wall maze described as text;
//! - [`evaluate_log`] — compute the flight-performance metrics for a
//!   pasted trajectory CSV against a straight-line reference to a goal.
//!
//! On failure every function returns `{"error": "..."}` instead of
//! throwing, which keeps the calling JavaScript to a single code path.
//! All functions are pure computation over their arguments; results are
//! deterministic per seed, exactly like the CLI.

// Same validation idiom as the library: `!(x > 0.0)` also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use flightdiff::io::parse_trajectory;
use flightdiff::scenegen::MazeSpec;
use flightdiff::{
    compute_guide_path, evaluate, generate_forest, generate_maze, score_test_case_detailed,
    CorridorConfig, ForestSpec, GoalSpec, GuidePath, ObstacleScene, SensorConfig, VoSamplingConfig,
};
use nalgebra::Point3;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Planner grid resolution, meters.
const VOXEL: f64 = 0.25;

/// Extra clearance on top of the radii the corridor needs, meters. The
/// guide path must stay far enough from obstacles that a legal sphere
/// exists at every point along it, or corridor growth would stall in
/// pinches narrower than the minimum sphere radius.
const PLANNER_MARGIN: f64 = 0.1;

fn planner_clearance(sensor: &SensorConfig, corridor: &CorridorConfig) -> f64 {
    sensor.drone_radius + corridor.min_radius + PLANNER_MARGIN
}

fn err_json(message: impl std::fmt::Display) -> String {
    json!({ "error": message.to_string() }).to_string()
}

fn point(p: &Point3<f64>) -> Value {
    json!([p.x, p.y, p.z])
}

/// Runs plan → corridor → score for a generated scene and assembles the
/// shared part of the response.
fn scored_case(
    scene: &ObstacleScene,
    start: Point3<f64>,
    goal: Point3<f64>,
) -> Result<Value, String> {
    let sensor = SensorConfig::default_config();
    let corridor_cfg = CorridorConfig::default();
    let vo_cfg = VoSamplingConfig::default();

    let clearance = planner_clearance(&sensor, &corridor_cfg);
    let path = compute_guide_path(Some(scene), start, goal, VOXEL, clearance)
        .map_err(|e| e.to_string())?;
    let (scores, corridor) =
        score_test_case_detailed(Some(scene), &path, &sensor, &corridor_cfg, &vo_cfg)
            .map_err(|e| e.to_string())?;

    let waypoints: Vec<Value> = path.waypoints().iter().map(point).collect();
    let spheres: Vec<Value> = corridor
        .map(|c| {
            c.spheres
                .iter()
                .map(|s| json!([s.center.x, s.center.y, s.center.z, s.radius]))
                .collect()
        })
        .unwrap_or_default();

    Ok(json!({
        "start": point(&start),
        "goal": point(&goal),
        "path": waypoints,
        "path_length": path.total_length(),
        "corridor": spheres,
        "scores": {
            "to": scores.to,
            "vo": scores.vo,
            "aol": scores.aol,
        },
        "scene_points": scene.len(),
    }))
}

/// Generates a random trunk forest, plans a guide path across it, grows
/// the sphere corridor, and scores the three difficulty metrics.
///
/// Returns JSON with `start`, `goal`, `path` (waypoints), `corridor`
/// (`[cx, cy, cz, r]` spheres), `scores` (`to`/`vo`/`aol`), `trunks`
/// (`[x, y, r]` base circles for drawing), and `bounds`
/// (`[xmin, ymin, xmax, ymax]`), or `{"error": "..."}`.
#[wasm_bindgen]
pub fn forest_case(width: f64, depth: f64, tree_density: f64, seed: u32) -> String {
    let spec = ForestSpec {
        width,
        depth,
        tree_density,
        seed: seed as u64,
        ..ForestSpec::default()
    };
    let forest = match generate_forest(&spec) {
        Ok(f) => f,
        Err(e) => return err_json(e),
    };
    let mut case = match scored_case(&forest.scene, forest.start, forest.goal) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };
    let trunks: Vec<Value> = forest
        .trunks
        .iter()
        .map(|t| json!([t.x, t.y, t.radius]))
        .collect();
    case["kind"] = json!("forest");
    case["trunks"] = json!(trunks);
    case["bounds"] = json!([0.0, 0.0, spec.width, spec.depth]);
    case.to_string()
}

/// Generates a wall maze from a text layout, plans a guide path through
/// it, grows the sphere corridor, and scores the three difficulty
/// metrics.
///
/// `layout` is newline-separated rows of equal length over the alphabet
/// `#` (wall), `.` (free), `S` (start cell), `G` (goal cell). Returns the
/// same JSON as [`forest_case`] with `walls` (`[x0, y0]` cell corners, one
/// per wall cell of edge `cell_size`, including the sealed border ring)
/// instead of `trunks`, or `{"error": "..."}`.
#[wasm_bindgen]
pub fn maze_case(layout: &str, cell_size: f64, seed: u32) -> String {
    let rows: Vec<&str> = layout
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .collect();
    let spec = match MazeSpec::from_layout(&rows, cell_size, 3.0, 0.0, seed as u64) {
        Ok(s) => s,
        Err(e) => return err_json(e),
    };
    let maze = match generate_maze(&spec) {
        Ok(m) => m,
        Err(e) => return err_json(e),
    };
    let mut case = match scored_case(&maze.scene, maze.start, maze.goal) {
        Ok(v) => v,
        Err(e) => return err_json(e),
    };

    // Wall cells for drawing, including the sealed one-cell border ring
    // the generator adds around the grid.
    let (n, m) = (spec.grid.len() as isize, spec.grid[0].len() as isize);
    let s = spec.cell_size;
    let mut walls = Vec::new();
    for r in -1..=n {
        for c in -1..=m {
            let free = r >= 0 && c >= 0 && r < n && c < m && !spec.grid[r as usize][c as usize];
            if !free {
                walls.push(json!([c as f64 * s, r as f64 * s]));
            }
        }
    }
    case["kind"] = json!("maze");
    case["walls"] = json!(walls);
    case["cell_size"] = json!(s);
    case["bounds"] = json!([-s, -s, (m as f64 + 1.0) * s, (n as f64 + 1.0) * s]);
    case.to_string()
}

/// Evaluates a trajectory CSV (`t,x,y,z` header, optional derivative
/// columns) against a straight-line reference from the first sample to
/// the given goal.
///
/// No obstacle scene is involved, so `success` means reaching the goal
/// ball. Returns JSON with the performance metrics, or
/// `{"error": "..."}`.
#[wasm_bindgen]
pub fn evaluate_log(
    log_csv: &str,
    goal_x: f64,
    goal_y: f64,
    goal_z: f64,
    goal_radius: f64,
) -> String {
    let log = match parse_trajectory(log_csv) {
        Ok(l) => l,
        Err(e) => return err_json(e),
    };
    let start = log.pos[0];
    let goal = Point3::new(goal_x, goal_y, goal_z);
    if !(goal_radius > 0.0) {
        return err_json("goal radius must be positive");
    }
    let reference = match GuidePath::new(vec![start, goal]) {
        Ok(p) => p,
        Err(e) => return err_json(e),
    };
    let goal = GoalSpec::with_radius(goal, goal_radius);
    let sensor = SensorConfig::default_config();
    let report = match evaluate(&log, None, &reference, &goal, &sensor) {
        Ok(r) => r,
        Err(e) => return err_json(e),
    };
    json!({
        "success": report.success,
        "avg_speed": report.avg_speed,
        "avg_curvature": report.avg_curvature,
        "avg_acceleration": report.avg_acceleration,
        "avg_jerk": report.avg_jerk,
        "total_time": report.total_time,
        "path_length": report.path_length,
        "progress": report.progress,
        "samples": log.t.len(),
    })
    .to_string()
}
