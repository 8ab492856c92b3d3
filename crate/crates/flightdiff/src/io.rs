//! File formats for scenes, guide paths, trajectory logs, corridors, and
//! run tables.
//!
//! All writers are deterministic: floating-point values are rendered with
//! [`fmt_sig9`] (up to nine significant digits, shortest form), so saving
//! the same data twice produces byte-identical files.
//!
//! | data | format |
//! |------|--------|
//! | obstacle scene | whitespace-separated `x y z` lines (`#` comments), or a JSON primitive description (`.json`) |
//! | guide path | `x y z` waypoint lines |
//! | trajectory log | CSV with header `t,x,y,z[,vx,vy,vz[,ax,ay,az[,jx,jy,jz]]]` |
//! | stage timings | JSON object with `mapping_ms`, `planning_ms`, `control_ms` |
//! | corridor | JSON array of `{center, radius, coverage_length}` |
//! | run table | CSV, one row per (test case, method) pair |

use crate::analysis::{RunRecord, RunTable};
use crate::corridor::SphereCorridor;
use crate::geometry::{build_scene, primitives, GuidePath, ObstacleScene, Sphere};
use crate::trajmetrics::{StageTimings, TrajectoryLog};
use nalgebra::{Point3, Vector3};
use serde::Deserialize;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// File reading, writing, or content errors, always carrying the file path.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: PathBuf, message: String },
}

fn io_err(path: &Path, source: std::io::Error) -> IoError {
    IoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn invalid_err(path: &Path, message: impl ToString) -> IoError {
    IoError::Invalid {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn read_file(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|e| io_err(path, e))
}

fn write_file(path: &Path, content: &str) -> Result<(), IoError> {
    fs::write(path, content).map_err(|e| io_err(path, e))
}

// ---------------------------------------------------------------------------
// Deterministic number and JSON rendering
// ---------------------------------------------------------------------------

/// Formats a float with up to nine significant digits in its shortest form.
///
/// Values whose decimal exponent lies in `[-4, 9)` are written positionally
/// (`0.001`, `123456789`), everything else in scientific notation (`1e-5`,
/// `2.5e12`). Trailing zeros are trimmed; zero is `"0"`.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    debug_assert!(x.is_finite(), "fmt_sig9 expects finite input");
    let sci = format!("{x:.8e}");
    let (mantissa, exp_str) = sci.split_once('e').expect("exponential format");
    let exp: i32 = exp_str.parse().expect("exponent");
    if (-4..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// A JSON document with insertion-ordered object keys and [`fmt_sig9`]
/// number rendering, so serialized output is reproducible byte for byte.
#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Null,
    Bool(bool),
    /// Rendered via [`fmt_sig9`]; non-finite values render as `null`.
    Number(f64),
    Int(i64),
    String(String),
    Array(Vec<JsonValue>),
    /// Key/value pairs, serialized in the order given.
    Object(Vec<(String, JsonValue)>),
}

impl JsonValue {
    pub fn array_of_numbers(values: impl IntoIterator<Item = f64>) -> Self {
        JsonValue::Array(values.into_iter().map(JsonValue::Number).collect())
    }

    pub fn point(p: &Point3<f64>) -> Self {
        Self::array_of_numbers([p.x, p.y, p.z])
    }

    fn is_scalar(&self) -> bool {
        !matches!(self, JsonValue::Array(_) | JsonValue::Object(_))
    }

    /// Pretty-prints with two-space indentation; arrays of scalars stay on
    /// one line. No trailing newline.
    pub fn to_pretty_string(&self) -> String {
        let mut out = String::new();
        self.write_at(0, &mut out);
        out
    }

    fn write_at(&self, indent: usize, out: &mut String) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Number(x) => {
                if x.is_finite() {
                    out.push_str(&fmt_sig9(*x));
                } else {
                    out.push_str("null");
                }
            }
            JsonValue::Int(i) => {
                let _ = write!(out, "{i}");
            }
            JsonValue::String(s) => write_escaped(s, out),
            JsonValue::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                } else if items.iter().all(JsonValue::is_scalar) {
                    out.push('[');
                    for (i, item) in items.iter().enumerate() {
                        if i > 0 {
                            out.push_str(", ");
                        }
                        item.write_at(indent, out);
                    }
                    out.push(']');
                } else {
                    out.push_str("[\n");
                    for (i, item) in items.iter().enumerate() {
                        push_indent(indent + 2, out);
                        item.write_at(indent + 2, out);
                        if i + 1 < items.len() {
                            out.push(',');
                        }
                        out.push('\n');
                    }
                    push_indent(indent, out);
                    out.push(']');
                }
            }
            JsonValue::Object(entries) => {
                if entries.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push_str("{\n");
                for (i, (key, value)) in entries.iter().enumerate() {
                    push_indent(indent + 2, out);
                    write_escaped(key, out);
                    out.push_str(": ");
                    value.write_at(indent + 2, out);
                    if i + 1 < entries.len() {
                        out.push(',');
                    }
                    out.push('\n');
                }
                push_indent(indent, out);
                out.push('}');
            }
        }
    }
}

impl std::fmt::Display for JsonValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_pretty_string())
    }
}

fn push_indent(n: usize, out: &mut String) {
    for _ in 0..n {
        out.push(' ');
    }
}

fn write_escaped(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

// ---------------------------------------------------------------------------
// Point lists: scenes and guide paths
// ---------------------------------------------------------------------------

/// Reads whitespace-separated `x y z` lines; blank lines and lines starting
/// with `#` are skipped.
pub fn load_points(path: impl AsRef<Path>) -> Result<Vec<Point3<f64>>, IoError> {
    let path = path.as_ref();
    let content = read_file(path)?;
    let mut points = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(parse_err(
                path,
                idx + 1,
                format!("expected 3 coordinates, found {} fields", fields.len()),
            ));
        }
        let mut coords = [0.0f64; 3];
        for (k, field) in fields.iter().enumerate() {
            coords[k] = field
                .parse()
                .map_err(|_| parse_err(path, idx + 1, format!("invalid number '{field}'")))?;
        }
        points.push(Point3::new(coords[0], coords[1], coords[2]));
    }
    Ok(points)
}

/// Writes one `x y z` line per point.
pub fn save_points(path: impl AsRef<Path>, points: &[Point3<f64>]) -> Result<(), IoError> {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{} {} {}", fmt_sig9(p.x), fmt_sig9(p.y), fmt_sig9(p.z));
    }
    write_file(path.as_ref(), &out)
}

/// Loads an obstacle scene. Files with a `.json` extension are parsed as
/// primitive descriptions and sampled into points; anything else is read as
/// `x y z` lines.
pub fn load_scene(path: impl AsRef<Path>) -> Result<ObstacleScene, IoError> {
    let path = path.as_ref();
    let is_json = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let points = if is_json {
        sample_primitive_scene(path)?
    } else {
        load_points(path)?
    };
    build_scene(points).map_err(|e| invalid_err(path, e))
}

/// Loads a guide path from `x y z` waypoint lines.
pub fn load_path(path: impl AsRef<Path>) -> Result<GuidePath, IoError> {
    let path = path.as_ref();
    let points = load_points(path)?;
    GuidePath::new(points).map_err(|e| invalid_err(path, e))
}

/// Writes guide-path waypoints as `x y z` lines.
pub fn save_path(path: impl AsRef<Path>, guide: &GuidePath) -> Result<(), IoError> {
    save_points(path, guide.waypoints())
}

// ---------------------------------------------------------------------------
// Primitive scene descriptions (JSON)
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    /// Surface sample density, points per square meter.
    #[serde(default = "default_surface_density")]
    surface_density: f64,
    primitives: Vec<Primitive>,
}

fn default_surface_density() -> f64 {
    20.0
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum Primitive {
    Sphere {
        center: [f64; 3],
        radius: f64,
    },
    /// Vertical cylinder standing on its base circle.
    Cylinder {
        base: [f64; 3],
        radius: f64,
        height: f64,
    },
    /// Axis-aligned box given by its minimum corner and edge lengths.
    Box {
        min: [f64; 3],
        size: [f64; 3],
    },
}

fn sample_primitive_scene(path: &Path) -> Result<Vec<Point3<f64>>, IoError> {
    let content = read_file(path)?;
    let file: SceneFile = serde_json::from_str(&content).map_err(|e| invalid_err(path, e))?;
    if !(file.surface_density > 0.0) || !file.surface_density.is_finite() {
        return Err(invalid_err(path, "surface_density must be positive"));
    }
    let rho = file.surface_density;
    let mut points = Vec::new();
    for (i, prim) in file.primitives.iter().enumerate() {
        let bad = |msg: &str| invalid_err(path, format!("primitive {i}: {msg}"));
        match prim {
            Primitive::Sphere { center, radius } => {
                if !(*radius > 0.0) {
                    return Err(bad("radius must be > 0"));
                }
                primitives::sphere_surface(Point3::from(*center), *radius, rho, &mut points);
            }
            Primitive::Cylinder {
                base,
                radius,
                height,
            } => {
                if !(*radius > 0.0) || !(*height > 0.0) {
                    return Err(bad("radius and height must be > 0"));
                }
                primitives::cylinder_lateral_surface(
                    Point3::from(*base),
                    *radius,
                    *height,
                    rho,
                    &mut points,
                );
            }
            Primitive::Box { min, size } => {
                if size.iter().any(|&s| !(s > 0.0)) {
                    return Err(bad("size components must be > 0"));
                }
                emit_box_faces(Point3::from(*min), *size, rho, &mut points);
            }
        }
    }
    Ok(points)
}

/// All six faces of an axis-aligned box.
fn emit_box_faces(min: Point3<f64>, size: [f64; 3], density: f64, out: &mut Vec<Point3<f64>>) {
    let ex = Vector3::new(size[0], 0.0, 0.0);
    let ey = Vector3::new(0.0, size[1], 0.0);
    let ez = Vector3::new(0.0, 0.0, size[2]);
    primitives::rect_face(min, ey, ez, density, out);
    primitives::rect_face(min + ex, ey, ez, density, out);
    primitives::rect_face(min, ex, ez, density, out);
    primitives::rect_face(min + ey, ex, ez, density, out);
    primitives::rect_face(min, ex, ey, density, out);
    primitives::rect_face(min + ez, ex, ey, density, out);
}

// ---------------------------------------------------------------------------
// Trajectory logs (CSV) and timing sidecars (JSON)
// ---------------------------------------------------------------------------

const TRAJECTORY_COLUMNS: [&str; 13] = [
    "t", "x", "y", "z", "vx", "vy", "vz", "ax", "ay", "az", "jx", "jy", "jz",
];

fn csv_err(path: &Path, e: csv::Error) -> IoError {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(source) => io_err(path, source),
            _ => unreachable!("is_io_error guarantees an Io kind"),
        }
    } else {
        invalid_err(path, e)
    }
}

/// Loads a trajectory log from CSV.
///
/// The header must be a prefix-complete subset of
/// `t,x,y,z,vx,vy,vz,ax,ay,az,jx,jy,jz`: time and position are required,
/// each derivative channel is optional but must be complete (all three
/// components) and in order. Timing data lives in a separate JSON sidecar
/// (see [`load_timings`]).
pub fn load_trajectory(path: impl AsRef<Path>) -> Result<TrajectoryLog, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    parse_trajectory_text(&text, path)
}

/// Parses a trajectory log from in-memory CSV text — the same format
/// [`load_trajectory`] reads from disk. Errors cite the pseudo-path
/// `<inline>`.
pub fn parse_trajectory(text: &str) -> Result<TrajectoryLog, IoError> {
    parse_trajectory_text(text, Path::new("<inline>"))
}

fn parse_trajectory_text(text: &str, path: &Path) -> Result<TrajectoryLog, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| csv_err(path, e))?.clone();
    let n = headers.len();
    if ![4, 7, 10, 13].contains(&n) {
        return Err(parse_err(
            path,
            1,
            format!("expected 4, 7, 10, or 13 columns, found {n}"),
        ));
    }
    for (k, header) in headers.iter().enumerate() {
        if header != TRAJECTORY_COLUMNS[k] {
            return Err(parse_err(
                path,
                1,
                format!(
                    "column {} must be '{}', found '{header}'",
                    k + 1,
                    TRAJECTORY_COLUMNS[k]
                ),
            ));
        }
    }

    let mut t = Vec::new();
    let mut pos = Vec::new();
    let mut vel = Vec::new();
    let mut acc = Vec::new();
    let mut jerk = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(path, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != n {
            return Err(parse_err(
                path,
                line,
                format!("expected {n} fields, found {}", record.len()),
            ));
        }
        let mut values = [0.0f64; 13];
        for (k, field) in record.iter().enumerate() {
            values[k] = field.parse().map_err(|_| {
                parse_err(
                    path,
                    line,
                    format!(
                        "invalid number '{field}' in column '{}'",
                        TRAJECTORY_COLUMNS[k]
                    ),
                )
            })?;
        }
        t.push(values[0]);
        pos.push(Point3::new(values[1], values[2], values[3]));
        if n >= 7 {
            vel.push(Vector3::new(values[4], values[5], values[6]));
        }
        if n >= 10 {
            acc.push(Vector3::new(values[7], values[8], values[9]));
        }
        if n >= 13 {
            jerk.push(Vector3::new(values[10], values[11], values[12]));
        }
    }

    let log = TrajectoryLog {
        t,
        pos,
        vel: (n >= 7).then_some(vel),
        acc: (n >= 10).then_some(acc),
        jerk: (n >= 13).then_some(jerk),
        timing: None,
    };
    log.validate().map_err(|e| invalid_err(path, e))?;
    Ok(log)
}

/// Writes a trajectory log as CSV, emitting exactly the channels present.
pub fn save_trajectory(path: impl AsRef<Path>, log: &TrajectoryLog) -> Result<(), IoError> {
    let n = if log.jerk.is_some() {
        13
    } else if log.acc.is_some() {
        10
    } else if log.vel.is_some() {
        7
    } else {
        4
    };
    let mut out = TRAJECTORY_COLUMNS[..n].join(",");
    out.push('\n');
    for i in 0..log.t.len() {
        let mut fields = vec![
            fmt_sig9(log.t[i]),
            fmt_sig9(log.pos[i].x),
            fmt_sig9(log.pos[i].y),
            fmt_sig9(log.pos[i].z),
        ];
        for channel in [&log.vel, &log.acc, &log.jerk].into_iter().flatten() {
            let v = channel[i];
            fields.extend([fmt_sig9(v.x), fmt_sig9(v.y), fmt_sig9(v.z)]);
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    write_file(path.as_ref(), &out)
}

/// Loads a stage-timing sidecar: a JSON object with `mapping_ms`,
/// `planning_ms`, and `control_ms`.
pub fn load_timings(path: impl AsRef<Path>) -> Result<StageTimings, IoError> {
    let path = path.as_ref();
    let content = read_file(path)?;
    let timings: StageTimings = serde_json::from_str(&content).map_err(|e| invalid_err(path, e))?;
    for (name, v) in [
        ("mapping_ms", timings.mapping_ms),
        ("planning_ms", timings.planning_ms),
        ("control_ms", timings.control_ms),
    ] {
        if !v.is_finite() || v < 0.0 {
            return Err(invalid_err(
                path,
                format!("{name} must be a non-negative finite number, got {v}"),
            ));
        }
    }
    Ok(timings)
}

// ---------------------------------------------------------------------------
// Corridors (JSON)
// ---------------------------------------------------------------------------

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CorridorSphereFile {
    center: [f64; 3],
    radius: f64,
    coverage_length: f64,
}

/// Loads a corridor from a JSON array of spheres with coverage marks.
pub fn load_corridor(path: impl AsRef<Path>) -> Result<SphereCorridor, IoError> {
    let path = path.as_ref();
    let content = read_file(path)?;
    let entries: Vec<CorridorSphereFile> =
        serde_json::from_str(&content).map_err(|e| invalid_err(path, e))?;
    if entries.is_empty() {
        return Err(invalid_err(
            path,
            "corridor must contain at least one sphere",
        ));
    }
    let mut spheres = Vec::with_capacity(entries.len());
    let mut coverage_lengths = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let ok = entry.center.iter().all(|c| c.is_finite())
            && entry.radius.is_finite()
            && entry.coverage_length.is_finite();
        if !ok {
            return Err(invalid_err(path, format!("sphere {i}: non-finite value")));
        }
        spheres.push(Sphere {
            center: Point3::from(entry.center),
            radius: entry.radius,
        });
        coverage_lengths.push(entry.coverage_length);
    }
    Ok(SphereCorridor {
        spheres,
        coverage_lengths,
    })
}

/// Writes a corridor as a JSON array of spheres with coverage marks.
pub fn save_corridor(path: impl AsRef<Path>, corridor: &SphereCorridor) -> Result<(), IoError> {
    let entries = corridor
        .spheres
        .iter()
        .zip(&corridor.coverage_lengths)
        .map(|(sphere, &covered)| {
            JsonValue::Object(vec![
                ("center".into(), JsonValue::point(&sphere.center)),
                ("radius".into(), JsonValue::Number(sphere.radius)),
                ("coverage_length".into(), JsonValue::Number(covered)),
            ])
        })
        .collect();
    let mut content = JsonValue::Array(entries).to_pretty_string();
    content.push('\n');
    write_file(path.as_ref(), &content)
}

// ---------------------------------------------------------------------------
// Run tables (CSV)
// ---------------------------------------------------------------------------

const RUN_COLUMNS: [&str; 12] = [
    "test_case_id",
    "method",
    "to",
    "vo",
    "aol",
    "success_rate",
    "avg_speed",
    "avg_curvature",
    "avg_acceleration",
    "avg_jerk",
    "progress",
    "computation_time_ms",
];

/// Loads a run table from CSV. The trailing `computation_time_ms` column is
/// optional; when present, individual fields may be empty to mean "not
/// reported".
pub fn load_run_table(path: impl AsRef<Path>) -> Result<RunTable, IoError> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| csv_err(path, e))?;
    let headers = reader.headers().map_err(|e| csv_err(path, e))?.clone();
    let n = headers.len();
    if n != 11 && n != 12 {
        return Err(parse_err(
            path,
            1,
            format!("expected 11 or 12 columns, found {n}"),
        ));
    }
    for (k, header) in headers.iter().enumerate() {
        if header != RUN_COLUMNS[k] {
            return Err(parse_err(
                path,
                1,
                format!(
                    "column {} must be '{}', found '{header}'",
                    k + 1,
                    RUN_COLUMNS[k]
                ),
            ));
        }
    }

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(path, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.len() != n {
            return Err(parse_err(
                path,
                line,
                format!("expected {n} fields, found {}", record.len()),
            ));
        }
        let number = |k: usize| -> Result<f64, IoError> {
            record[k].parse().map_err(|_| {
                parse_err(
                    path,
                    line,
                    format!(
                        "invalid number '{}' in column '{}'",
                        &record[k], RUN_COLUMNS[k]
                    ),
                )
            })
        };
        let computation_time_ms = if n == 12 && !record[11].is_empty() {
            Some(number(11)?)
        } else {
            None
        };
        rows.push(RunRecord {
            test_case_id: record[0].to_string(),
            method: record[1].to_string(),
            to: number(2)?,
            vo: number(3)?,
            aol: number(4)?,
            success_rate: number(5)?,
            avg_speed: number(6)?,
            avg_curvature: number(7)?,
            avg_acceleration: number(8)?,
            avg_jerk: number(9)?,
            progress: number(10)?,
            computation_time_ms,
        });
    }
    Ok(RunTable { rows })
}

/// Writes a run table as CSV. The `computation_time_ms` column appears when
/// any row carries a value; rows without one leave the field empty.
pub fn save_run_table(path: impl AsRef<Path>, table: &RunTable) -> Result<(), IoError> {
    let with_timing = table.rows.iter().any(|r| r.computation_time_ms.is_some());
    let n = if with_timing { 12 } else { 11 };
    let mut out = RUN_COLUMNS[..n].join(",");
    out.push('\n');
    for row in &table.rows {
        let mut fields = vec![
            csv_escape(&row.test_case_id),
            csv_escape(&row.method),
            fmt_sig9(row.to),
            fmt_sig9(row.vo),
            fmt_sig9(row.aol),
            fmt_sig9(row.success_rate),
            fmt_sig9(row.avg_speed),
            fmt_sig9(row.avg_curvature),
            fmt_sig9(row.avg_acceleration),
            fmt_sig9(row.avg_jerk),
            fmt_sig9(row.progress),
        ];
        if with_timing {
            fields.push(row.computation_time_ms.map(fmt_sig9).unwrap_or_default());
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    write_file(path.as_ref(), &out)
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}
