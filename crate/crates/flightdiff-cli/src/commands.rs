//! The four workflows behind the subcommands: scene generation, difficulty
//! scoring, flight evaluation, and cross-run correlation.
//!
//! Every output artifact embeds the tool version and the effective
//! configuration that produced it, uses fixed key order, and formats floats
//! at nine significant digits, so reruns on identical inputs are
//! byte-identical.

use crate::config::{RunConfig, Scenario};
use crate::error::CliError;
use crate::svg;
use flightdiff::difficulty::{VoSampling, VoSamplingConfig};
use flightdiff::trajmetrics::{GoalSpec, PerformanceReport};
use flightdiff::{
    compute_guide_path, correlation_matrix, evaluate, fmt_sig9, generate_forest, generate_maze, io,
    score_test_case, CorrelationKind, CorrelationMode, CorridorConfig, JsonValue, ObstacleScene,
    SensorConfig,
};
use std::path::{Path, PathBuf};

/// Output layout selected with `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

pub struct GenArgs {
    pub config: PathBuf,
    pub out: PathBuf,
    pub seed: Option<u64>,
}

pub struct ScoreArgs {
    pub config: Option<PathBuf>,
    pub scene: Option<PathBuf>,
    pub path: PathBuf,
    pub out: PathBuf,
    pub format: OutputFormat,
}

pub struct EvalArgs {
    pub config: Option<PathBuf>,
    pub logs: Vec<PathBuf>,
    pub scene: Option<PathBuf>,
    pub path: PathBuf,
    pub out: PathBuf,
    pub format: OutputFormat,
}

pub struct CorrArgs {
    pub table: PathBuf,
    pub config: Option<PathBuf>,
    pub out: PathBuf,
}

fn load_config(path: &Option<PathBuf>) -> Result<RunConfig, CliError> {
    match path {
        Some(p) => Ok(RunConfig::load(p)?),
        None => Ok(RunConfig::defaults()),
    }
}

fn ensure_out_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))
}

fn write_text(path: &Path, content: &str) -> Result<(), CliError> {
    std::fs::write(path, content).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Provenance header shared by all JSON artifacts.
fn meta(command: &str, config: JsonValue) -> JsonValue {
    JsonValue::Object(vec![
        ("tool".into(), JsonValue::String("flightdiff".into())),
        (
            "version".into(),
            JsonValue::String(flightdiff::VERSION.into()),
        ),
        ("command".into(), JsonValue::String(command.into())),
        ("config".into(), config),
    ])
}

fn sensor_json(s: &SensorConfig) -> JsonValue {
    JsonValue::Object(vec![
        ("sensing_range".into(), JsonValue::Number(s.sensing_range)),
        ("drone_radius".into(), JsonValue::Number(s.drone_radius)),
        (
            "fov_horizontal_rad".into(),
            JsonValue::Number(s.fov_horizontal),
        ),
        ("fov_vertical_rad".into(), JsonValue::Number(s.fov_vertical)),
        ("fov_sectors".into(), JsonValue::Int(s.fov_sectors as i64)),
        (
            "sector_weights".into(),
            JsonValue::array_of_numbers(s.sector_weights.iter().copied()),
        ),
    ])
}

fn corridor_json(c: &CorridorConfig) -> JsonValue {
    JsonValue::Object(vec![
        (
            "candidates_per_step".into(),
            JsonValue::Int(c.candidates_per_step as i64),
        ),
        ("sigma".into(), JsonValue::Number(c.sigma)),
        ("k1".into(), JsonValue::Number(c.k1)),
        ("k2".into(), JsonValue::Number(c.k2)),
        ("k3".into(), JsonValue::Number(c.k3)),
        ("k4".into(), JsonValue::Number(c.k4)),
        ("min_radius".into(), JsonValue::Number(c.min_radius)),
        ("max_spheres".into(), JsonValue::Int(c.max_spheres as i64)),
        ("rng_seed".into(), JsonValue::Int(c.rng_seed as i64)),
    ])
}

fn occlusion_json(v: &VoSamplingConfig) -> JsonValue {
    let sampling = match v.sampling {
        VoSampling::Count(n) => ("sample_count".to_string(), JsonValue::Int(n as i64)),
        VoSampling::Spacing(s) => ("sample_spacing".to_string(), JsonValue::Number(s)),
    };
    JsonValue::Object(vec![
        sampling,
        // Non-finite numbers render as null, which reads as "unlimited".
        ("max_range".into(), JsonValue::Number(v.max_range)),
    ])
}

/// Generates the configured scenario, plans its guide path, and writes
/// `scene.xyz`, `path.json`, and `case.json` into the output directory.
pub fn cmd_gen(args: &GenArgs) -> Result<(), CliError> {
    let cfg = RunConfig::load(&args.config)?;
    let scenario = cfg.scenario(args.seed)?;
    let sensor = cfg.sensor()?;
    let corridor = cfg.corridor()?;
    let voxel = cfg.planner_voxel()?;
    let clearance = cfg.planner_clearance(&sensor, &corridor)?;

    let (scene, start, goal, scenario_json) = match &scenario {
        Scenario::Forest(spec) => {
            let forest = generate_forest(spec)?;
            let echo = JsonValue::Object(vec![
                ("kind".into(), JsonValue::String("forest".into())),
                ("width".into(), JsonValue::Number(spec.width)),
                ("depth".into(), JsonValue::Number(spec.depth)),
                ("tree_density".into(), JsonValue::Number(spec.tree_density)),
                (
                    "trunk_radius_min".into(),
                    JsonValue::Number(spec.trunk_radius_range.0),
                ),
                (
                    "trunk_radius_max".into(),
                    JsonValue::Number(spec.trunk_radius_range.1),
                ),
                ("height".into(), JsonValue::Number(spec.height)),
                ("clearance".into(), JsonValue::Number(spec.clearance)),
                (
                    "surface_density".into(),
                    JsonValue::Number(spec.surface_density),
                ),
                ("seed".into(), JsonValue::Int(spec.seed as i64)),
                ("trees".into(), JsonValue::Int(forest.trunks.len() as i64)),
            ]);
            (forest.scene, forest.start, forest.goal, echo)
        }
        Scenario::Maze(spec) => {
            let maze = generate_maze(spec)?;
            let echo = JsonValue::Object(vec![
                ("kind".into(), JsonValue::String("maze".into())),
                ("rows".into(), JsonValue::Int(spec.grid.len() as i64)),
                ("cols".into(), JsonValue::Int(spec.grid[0].len() as i64)),
                ("cell_size".into(), JsonValue::Number(spec.cell_size)),
                ("wall_height".into(), JsonValue::Number(spec.wall_height)),
                (
                    "box_fill_fraction".into(),
                    JsonValue::Number(spec.box_fill_fraction),
                ),
                (
                    "surface_density".into(),
                    JsonValue::Number(spec.surface_density),
                ),
                ("seed".into(), JsonValue::Int(spec.seed as i64)),
            ]);
            (maze.scene, maze.start, maze.goal, echo)
        }
    };
    let path = compute_guide_path(Some(&scene), start, goal, voxel, clearance)?;

    ensure_out_dir(&args.out)?;
    io::save_points(args.out.join("scene.xyz"), scene.points())?;
    io::save_path(args.out.join("path.json"), &path)?;

    let config_echo = JsonValue::Object(vec![
        ("scenario".into(), scenario_json),
        (
            "planner".into(),
            JsonValue::Object(vec![
                ("voxel".into(), JsonValue::Number(voxel)),
                ("clearance".into(), JsonValue::Number(clearance)),
            ]),
        ),
    ]);
    let case = JsonValue::Object(vec![
        ("meta".into(), meta("gen", config_echo)),
        ("start".into(), JsonValue::point(&start)),
        ("goal".into(), JsonValue::point(&goal)),
        ("obstacle_points".into(), JsonValue::Int(scene.len() as i64)),
        (
            "path_waypoints".into(),
            JsonValue::Int(path.waypoints().len() as i64),
        ),
        ("path_length".into(), JsonValue::Number(path.total_length())),
    ]);
    write_text(
        &args.out.join("case.json"),
        &(case.to_pretty_string() + "\n"),
    )?;

    println!(
        "wrote scene.xyz ({} points), path.json ({} waypoints, {} m), case.json",
        scene.len(),
        path.waypoints().len(),
        fmt_sig9(path.total_length())
    );
    Ok(())
}

fn load_scene_arg(path: &Option<PathBuf>) -> Result<Option<ObstacleScene>, CliError> {
    Ok(match path {
        Some(p) => Some(io::load_scene(p)?),
        None => None,
    })
}

/// Scores test-case difficulty for a scene and guide path; writes
/// `scores.json` or `scores.csv`.
pub fn cmd_score(args: &ScoreArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let sensor = cfg.sensor()?;
    let corridor = cfg.corridor()?;
    let vo_cfg = cfg.occlusion()?;
    let scene = load_scene_arg(&args.scene)?;
    let path = io::load_path(&args.path)?;

    let scores = score_test_case(scene.as_ref(), &path, &sensor, &corridor, &vo_cfg)?;

    ensure_out_dir(&args.out)?;
    match args.format {
        OutputFormat::Json => {
            let config_echo = JsonValue::Object(vec![
                ("sensor".into(), sensor_json(&scores.provenance.sensor)),
                (
                    "corridor".into(),
                    corridor_json(&scores.provenance.corridor),
                ),
                ("occlusion".into(), occlusion_json(&scores.provenance.vo)),
            ]);
            let doc = JsonValue::Object(vec![
                ("meta".into(), meta("score", config_echo)),
                (
                    "scores".into(),
                    JsonValue::Object(vec![
                        ("to".into(), JsonValue::Number(scores.to)),
                        ("vo".into(), JsonValue::Number(scores.vo)),
                        ("aol".into(), JsonValue::Number(scores.aol)),
                    ]),
                ),
            ]);
            write_text(
                &args.out.join("scores.json"),
                &(doc.to_pretty_string() + "\n"),
            )?;
            println!("wrote scores.json");
        }
        OutputFormat::Csv => {
            let csv = format!(
                "# flightdiff {} score\nto,vo,aol\n{},{},{}\n",
                flightdiff::VERSION,
                fmt_sig9(scores.to),
                fmt_sig9(scores.vo),
                fmt_sig9(scores.aol)
            );
            write_text(&args.out.join("scores.csv"), &csv)?;
            println!("wrote scores.csv");
        }
    }
    println!(
        "to {}  vo {}  aol {}",
        fmt_sig9(scores.to),
        fmt_sig9(scores.vo),
        fmt_sig9(scores.aol)
    );
    Ok(())
}

fn report_json(report: &PerformanceReport, sensor: &SensorConfig, goal: &GoalSpec) -> JsonValue {
    let config_echo = JsonValue::Object(vec![
        (
            "drone_radius".into(),
            JsonValue::Number(sensor.drone_radius),
        ),
        ("goal".into(), JsonValue::point(&goal.position)),
        ("goal_radius".into(), JsonValue::Number(goal.radius)),
    ]);
    JsonValue::Object(vec![
        ("meta".into(), meta("eval", config_echo)),
        (
            "report".into(),
            JsonValue::Object(vec![
                ("success".into(), JsonValue::Bool(report.success)),
                ("avg_speed".into(), JsonValue::Number(report.avg_speed)),
                (
                    "avg_curvature".into(),
                    JsonValue::Number(report.avg_curvature),
                ),
                (
                    "avg_acceleration".into(),
                    JsonValue::Number(report.avg_acceleration),
                ),
                ("avg_jerk".into(), JsonValue::Number(report.avg_jerk)),
                ("total_time".into(), JsonValue::Number(report.total_time)),
                ("path_length".into(), JsonValue::Number(report.path_length)),
                ("progress".into(), JsonValue::Number(report.progress)),
                (
                    "computation_time_ms".into(),
                    match report.computation_time_ms {
                        Some(ms) => JsonValue::Number(ms),
                        None => JsonValue::Null,
                    },
                ),
            ]),
        ),
    ])
}

fn report_csv(report: &PerformanceReport) -> String {
    let mut line = format!(
        "{},{},{},{},{},{},{},{}",
        report.success,
        fmt_sig9(report.avg_speed),
        fmt_sig9(report.avg_curvature),
        fmt_sig9(report.avg_acceleration),
        fmt_sig9(report.avg_jerk),
        fmt_sig9(report.total_time),
        fmt_sig9(report.path_length),
        fmt_sig9(report.progress),
    );
    match report.computation_time_ms {
        Some(ms) => {
            line.push(',');
            line.push_str(&fmt_sig9(ms));
        }
        None => line.push(','),
    }
    format!(
        "# flightdiff {} eval\nsuccess,avg_speed,avg_curvature,avg_acceleration,avg_jerk,\
         total_time,path_length,progress,computation_time_ms\n{line}\n",
        flightdiff::VERSION
    )
}

/// Stage-timing sidecar convention: `<log stem>.timings.json` next to the
/// log, attached when present.
fn timing_sidecar(log: &Path) -> Option<PathBuf> {
    let stem = log.file_stem()?.to_str()?;
    let sidecar = log.with_file_name(format!("{stem}.timings.json"));
    sidecar.exists().then_some(sidecar)
}

/// Evaluates recorded flight logs against a reference path; one
/// `<log stem>.report.json` (or `.csv`) per log. Multiple logs fan out over
/// a thread pool capped by `FLIGHTDIFF_THREADS`.
pub fn cmd_eval(args: &EvalArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let sensor = cfg.sensor()?;
    let goal_radius = cfg.goal_radius()?;
    let scene = load_scene_arg(&args.scene)?;
    let reference = io::load_path(&args.path)?;
    let goal = GoalSpec::with_radius(reference.end(), goal_radius);

    ensure_out_dir(&args.out)?;

    let evaluate_one = |log_path: &PathBuf| -> Result<(String, String), CliError> {
        let mut log = io::load_trajectory(log_path)?;
        if let Some(sidecar) = timing_sidecar(log_path) {
            log.timing = Some(io::load_timings(&sidecar)?);
        }
        let report = evaluate(&log, scene.as_ref(), &reference, &goal, &sensor)?;
        let stem = log_path
            .file_stem()
            .and_then(|s| s.to_str())
            .unwrap_or("log");
        let name = match args.format {
            OutputFormat::Json => {
                let name = format!("{stem}.report.json");
                let doc = report_json(&report, &sensor, &goal);
                write_text(&args.out.join(&name), &(doc.to_pretty_string() + "\n"))?;
                name
            }
            OutputFormat::Csv => {
                let name = format!("{stem}.report.csv");
                write_text(&args.out.join(&name), &report_csv(&report))?;
                name
            }
        };
        let summary = format!(
            "wrote {name}: success {} progress {}",
            report.success,
            fmt_sig9(report.progress)
        );
        Ok((name, summary))
    };

    let results: Vec<Result<(String, String), CliError>> = if args.logs.len() > 1 {
        let pool = thread_pool()?;
        pool.install(|| {
            use rayon::prelude::*;
            args.logs.par_iter().map(evaluate_one).collect()
        })
    } else {
        args.logs.iter().map(evaluate_one).collect()
    };
    for result in results {
        let (_, summary) = result?;
        println!("{summary}");
    }
    Ok(())
}

/// Builds the rayon pool, honoring the FLIGHTDIFF_THREADS cap.
fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("FLIGHTDIFF_THREADS") {
        let threads: usize = raw.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            CliError::Usage(format!(
                "FLIGHTDIFF_THREADS must be a positive integer, got {raw:?}"
            ))
        })?;
        builder = builder.num_threads(threads);
    }
    builder.build().map_err(|e| CliError::Usage(e.to_string()))
}

/// Correlates difficulty and performance over a run table; writes
/// `correlation.csv` and `correlation.svg`.
pub fn cmd_corr(args: &CorrArgs) -> Result<(), CliError> {
    let cfg = load_config(&args.config)?;
    let (kind, mode, final_column) = cfg.correlation()?;
    let table = io::load_run_table(&args.table)?;
    let matrix = correlation_matrix(&table, kind, mode, final_column)?;

    let kind_name = match kind {
        CorrelationKind::Pearson => "pearson",
        CorrelationKind::Spearman => "spearman",
    };
    let mode_name = match mode {
        CorrelationMode::Pooled => "pooled",
        CorrelationMode::PerMethodMean => "per-method-mean",
    };

    ensure_out_dir(&args.out)?;

    let mut csv = format!(
        "# flightdiff {} corr kind={kind_name} mode={mode_name} rows={}\n",
        flightdiff::VERSION,
        table.rows.len()
    );
    csv.push_str("metric,");
    csv.push_str(&matrix.col_labels.join(","));
    csv.push('\n');
    for (label, row) in matrix.row_labels.iter().zip(&matrix.values) {
        csv.push_str(label);
        for value in row {
            csv.push(',');
            if let Some(v) = value {
                csv.push_str(&fmt_sig9(*v));
            }
        }
        csv.push('\n');
    }
    write_text(&args.out.join("correlation.csv"), &csv)?;

    let title = format!("difficulty vs performance |r| ({kind_name}, {mode_name})");
    let drawing = svg::heatmap(&matrix, &title, flightdiff::VERSION);
    write_text(&args.out.join("correlation.svg"), &drawing)?;

    println!(
        "wrote correlation.csv and correlation.svg ({kind_name}, {mode_name}, {} rows)",
        table.rows.len()
    );
    Ok(())
}
