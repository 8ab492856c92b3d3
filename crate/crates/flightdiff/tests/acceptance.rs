//! End-to-end acceptance checks for the difficulty and evaluation library.
//!
//! Each test prints one `acceptance NN PASS` line; a failed assertion marks
//! the corresponding check as FAIL in the test summary. CLI output checks
//! live in the CLI crate's own acceptance test.

use flightdiff::difficulty::{VoSampling, VoSamplingConfig};
use flightdiff::scenegen::{MazeSpec, ScenegenError};
use flightdiff::trajmetrics::GoalSpec;
use flightdiff::{
    angle_over_length, build_scene, compute_guide_path, correlation_matrix, derive_kinematics,
    evaluate, generate_forest, generate_maze, grow_corridor, progress, score_candidate,
    score_test_case, sphere_overlap_volume, success, traversability_obstruction, view_occlusion,
    CorrelationKind, CorrelationMode, CorridorConfig, FinalColumn, ForestSpec, GrowthStep,
    GuidePath, RunRecord, RunTable, SensorConfig, Sphere, SphereCorridor, TrajectoryLog,
};
use nalgebra::{Point3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

#[test]
fn c01_spatial_index_equals_linear_scan() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for scene_idx in 0..50 {
        let n = rng.random_range(1..=10_000);
        let points: Vec<Point3<f64>> = (0..n)
            .map(|_| {
                Point3::new(
                    rng.random_range(-50.0..50.0),
                    rng.random_range(-50.0..50.0),
                    rng.random_range(-50.0..50.0),
                )
            })
            .collect();
        let scene = build_scene(points.clone()).unwrap();
        for _ in 0..100 {
            let q = Point3::new(
                rng.random_range(-60.0..60.0),
                rng.random_range(-60.0..60.0),
                rng.random_range(-60.0..60.0),
            );
            let indexed = scene.nearest_distance(&q);
            let brute = points
                .iter()
                .map(|p| (p - q).norm_squared())
                .fold(f64::INFINITY, f64::min)
                .sqrt();
            assert_eq!(
                indexed, brute,
                "scene {scene_idx}: index {indexed} != scan {brute} at query {q}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!(
        "acceptance 01 PASS: nearest-neighbor index matches linear scan exactly on 50 scenes x 100 queries ({elapsed:.2?})"
    );
}

#[test]
fn c02_overlap_volume_matches_monte_carlo() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    const SAMPLES: usize = 1_000_000;
    for pair in 0..20 {
        let r1 = rng.random_range(0.8..1.5);
        let r2 = rng.random_range(0.8..1.5);
        let d = rng.random_range(0.2..0.7 * (r1 + r2));
        let a = Sphere::new(Point3::origin(), r1);
        let b = Sphere::new(Point3::new(d, 0.0, 0.0), r2);
        let analytic = sphere_overlap_volume(&a, &b);

        // Uniform samples inside sphere A via cube rejection; the fraction
        // also inside B estimates overlap / vol(A).
        let mut hits = 0usize;
        let mut accepted = 0usize;
        while accepted < SAMPLES {
            let p = Point3::new(
                rng.random_range(-r1..r1),
                rng.random_range(-r1..r1),
                rng.random_range(-r1..r1),
            );
            if p.coords.norm_squared() > r1 * r1 {
                continue;
            }
            accepted += 1;
            if (p - b.center).norm_squared() <= r2 * r2 {
                hits += 1;
            }
        }
        let estimate = hits as f64 / SAMPLES as f64 * a.volume();
        let rel = (analytic - estimate).abs() / analytic;
        assert!(
            rel < 0.01,
            "pair {pair} (r1={r1:.3}, r2={r2:.3}, d={d:.3}): analytic {analytic:.6} vs MC {estimate:.6} ({rel:.4} rel)"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "acceptance 02 PASS: sphere-overlap volume within 1% of 1e6-sample Monte-Carlo on 20 pairs ({elapsed:.2?})"
    );
}

/// Candidate score recomputed from scratch with scalar arithmetic only.
fn oracle_candidate_score(
    cand_center: [f64; 3],
    cand_radius: f64,
    frontier: [f64; 3],
    direction: [f64; 3],
    prev_center: [f64; 3],
    prev_radius: f64,
    k: [f64; 4],
) -> f64 {
    let sphere_vol = |r: f64| 4.0 / 3.0 * PI * r * r * r;
    let dist = {
        let dx = cand_center[0] - prev_center[0];
        let dy = cand_center[1] - prev_center[1];
        let dz = cand_center[2] - prev_center[2];
        (dx * dx + dy * dy + dz * dz).sqrt()
    };
    let (rs, rb) = (cand_radius.min(prev_radius), cand_radius.max(prev_radius));
    let v_inter = if dist >= cand_radius + prev_radius {
        0.0
    } else if dist + rs <= rb {
        sphere_vol(rs)
    } else {
        let rsum = cand_radius + prev_radius;
        let rdiff = cand_radius - prev_radius;
        PI * (rsum - dist).powi(2) * (dist * dist + 2.0 * dist * rsum - 3.0 * rdiff * rdiff)
            / (12.0 * dist)
    };
    let d = [
        cand_center[0] - frontier[0],
        cand_center[1] - frontier[1],
        cand_center[2] - frontier[2],
    ];
    let along = d[0] * direction[0] + d[1] * direction[1] + d[2] * direction[2];
    let lat = {
        let lx = d[0] - along * direction[0];
        let ly = d[1] - along * direction[1];
        let lz = d[2] - along * direction[2];
        (lx * lx + ly * ly + lz * lz).sqrt()
    };
    k[0] * sphere_vol(cand_radius) + k[1] * v_inter - k[2] * along - k[3] * lat
}

#[test]
fn c03_candidate_score_matches_scalar_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for case in 0..1000 {
        let rand_point = |rng: &mut ChaCha8Rng| -> [f64; 3] {
            [
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
                rng.random_range(-5.0..5.0),
            ]
        };
        let cand_center = rand_point(&mut rng);
        let frontier = rand_point(&mut rng);
        let prev_center = rand_point(&mut rng);
        let cand_radius = rng.random_range(0.01..3.0);
        let prev_radius = rng.random_range(0.01..3.0);
        let dir_raw = rand_point(&mut rng);
        let dir_norm =
            (dir_raw[0] * dir_raw[0] + dir_raw[1] * dir_raw[1] + dir_raw[2] * dir_raw[2]).sqrt();
        if dir_norm < 1e-6 {
            continue;
        }
        let direction = [
            dir_raw[0] / dir_norm,
            dir_raw[1] / dir_norm,
            dir_raw[2] / dir_norm,
        ];
        let k = [
            rng.random_range(0.1..3.0),
            rng.random_range(0.1..3.0),
            rng.random_range(0.1..3.0),
            rng.random_range(0.1..3.0),
        ];

        let cand = Sphere::new(Point3::from(cand_center), cand_radius);
        let step = GrowthStep {
            frontier: Point3::from(frontier),
            direction: Vector3::from(direction),
            prev: Sphere::new(Point3::from(prev_center), prev_radius),
        };
        let cfg = CorridorConfig {
            k1: k[0],
            k2: k[1],
            k3: k[2],
            k4: k[3],
            ..CorridorConfig::default()
        };
        let got = score_candidate(&cand, &step, &cfg);
        let want = oracle_candidate_score(
            cand_center,
            cand_radius,
            frontier,
            direction,
            prev_center,
            prev_radius,
            k,
        );
        let tol = 1e-12 * want.abs().max(1.0);
        assert!(
            (got - want).abs() <= tol,
            "case {case}: {got} vs oracle {want}"
        );
    }
    println!("acceptance 03 PASS: candidate scoring matches independent scalar oracle to 1e-12 on 1000 inputs");
}

/// Clearance for guide-path planning ahead of corridor growth: the drone
/// radius padded by the smallest acceptable corridor sphere plus a margin
/// for the planner's finite sampling, so every frontier point on the path
/// admits a legal sphere.
fn planner_clearance(sensor: &SensorConfig, cfg: &CorridorConfig) -> f64 {
    sensor.drone_radius + cfg.min_radius + 0.1
}

#[test]
fn c04_corridor_safety_and_determinism() {
    let sensor = SensorConfig::default_config();
    let corridor_cfg = CorridorConfig::default();
    for seed in 0..10 {
        let spec = ForestSpec {
            seed,
            ..ForestSpec::default()
        };
        let forest = generate_forest(&spec).unwrap();
        let path = compute_guide_path(
            Some(&forest.scene),
            forest.start,
            forest.goal,
            0.25,
            planner_clearance(&sensor, &corridor_cfg),
        )
        .unwrap();
        let corridor = grow_corridor(&forest.scene, &path, &sensor, &corridor_cfg).unwrap();
        for (i, sphere) in corridor.spheres.iter().enumerate() {
            let limit = forest.scene.nearest_distance(&sphere.center) - sensor.drone_radius;
            assert!(
                sphere.radius <= limit + 1e-9,
                "seed {seed}, sphere {i}: radius {} exceeds clearance {limit}",
                sphere.radius
            );
        }

        // Byte-level determinism of the serialized corridor for a repeated
        // seed.
        let again = grow_corridor(&forest.scene, &path, &sensor, &corridor_cfg).unwrap();
        let dir = tempfile::TempDir::new().unwrap();
        let (fa, fb) = (dir.path().join("a.json"), dir.path().join("b.json"));
        flightdiff::io::save_corridor(&fa, &corridor).unwrap();
        flightdiff::io::save_corridor(&fb, &again).unwrap();
        assert_eq!(
            std::fs::read(&fa).unwrap(),
            std::fs::read(&fb).unwrap(),
            "seed {seed}: corridor serialization not byte-identical"
        );
    }
    println!("acceptance 04 PASS: corridor spheres respect obstacle clearance and regrowth is byte-identical on 10 forests");
}

#[test]
fn c05_traversability_closed_forms() {
    let corridor = |radii: &[f64]| SphereCorridor {
        spheres: radii
            .iter()
            .enumerate()
            .map(|(i, &r)| Sphere::new(Point3::new(i as f64, 0.0, 0.0), r))
            .collect(),
        coverage_lengths: radii.iter().enumerate().map(|(i, _)| i as f64).collect(),
    };
    let to = traversability_obstruction(&corridor(&[1.0, 2.0, 3.0, 4.0, 5.0]), 2.0).unwrap();
    assert_eq!(to, 0.6, "five-sphere closed form");
    let single = traversability_obstruction(&corridor(&[0.7]), 2.0).unwrap();
    assert_eq!(single, 0.0, "single sphere averages no terms");
    println!(
        "acceptance 05 PASS: narrow-half radius average hits 0.6 exactly; single sphere scores 0"
    );
}

#[test]
fn c06_view_occlusion_hand_traced() {
    // M = 3 wedges over a 90° x 90° FOV, weights (0.25, 0.5, 0.25), R = 5,
    // sampled at both ends of a straight 10 m path. Wedge minima from the
    // start sample: √10 (left), 3 (center), √18.5 (right); one point behind
    // the sensor and one non-minimal point contribute nothing; the end
    // sample sees nothing ahead.
    let scene = build_scene(vec![
        Point3::new(3.0, 1.0, 0.0),
        Point3::new(3.0, 0.0, 0.0),
        Point3::new(4.0, -1.5, 0.5),
        Point3::new(-2.0, 0.0, 0.0),
        Point3::new(8.5, 0.5, 0.0),
    ])
    .unwrap();
    let path = GuidePath::new(vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(10.0, 0.0, 0.0),
    ])
    .unwrap();
    let sensor = SensorConfig::new(5.0, 0.3, PI / 2.0, PI / 2.0, 3, None).unwrap();
    let cfg = VoSamplingConfig {
        sampling: VoSampling::Count(2),
        max_range: f64::INFINITY,
    };
    let expected =
        0.5 * (0.25 * 5.0 / 10.0_f64.sqrt() + 0.5 * 5.0 / 3.0 + 0.25 * 5.0 / 18.5_f64.sqrt());
    let vo = view_occlusion(&scene, &path, &sensor, &cfg).unwrap();
    assert!(
        (vo - expected).abs() <= 1e-9,
        "vo {vo} != hand-traced {expected}"
    );

    // Obstacle-free test case: occlusion is exactly zero.
    let empty_scores = score_test_case(
        None,
        &path,
        &sensor,
        &CorridorConfig::default(),
        &VoSamplingConfig::default(),
    )
    .unwrap();
    assert_eq!(empty_scores.vo, 0.0);

    // Linearity in the sensing range at two values.
    let sensor_wide = SensorConfig::new(12.5, 0.3, PI / 2.0, PI / 2.0, 3, None).unwrap();
    let vo_wide = view_occlusion(&scene, &path, &sensor_wide, &cfg).unwrap();
    assert!(
        (vo_wide - 2.5 * vo).abs() <= 1e-9 * vo_wide.abs(),
        "scaling R x2.5 must scale the score x2.5: {vo_wide} vs {}",
        2.5 * vo
    );
    println!("acceptance 06 PASS: view occlusion matches the hand-traced wedge fixture to 1e-9, zero without obstacles, linear in range");
}

#[test]
fn c07_turn_sharpness_closed_forms() {
    let straight = GuidePath::new(vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(4.0, 0.0, 0.0),
        Point3::new(10.0, 0.0, 0.0),
    ])
    .unwrap();
    assert_eq!(angle_over_length(&straight), 0.0);

    // One right-angle corner on a 10 m path: (e^(θ/30°) − 1) / L with θ=90°.
    let corner = GuidePath::new(vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(5.0, 0.0, 0.0),
        Point3::new(5.0, 5.0, 0.0),
    ])
    .unwrap();
    let expected = (3.0_f64.exp() - 1.0) / 10.0;
    let aol = angle_over_length(&corner);
    assert!((aol - expected).abs() <= 1e-9, "aol {aol} != {expected}");

    // Inserting a waypoint on an existing straight segment changes nothing.
    let augmented = GuidePath::new(vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(2.5, 0.0, 0.0),
        Point3::new(5.0, 0.0, 0.0),
        Point3::new(5.0, 5.0, 0.0),
    ])
    .unwrap();
    assert!((angle_over_length(&augmented) - aol).abs() <= 1e-12);
    println!("acceptance 07 PASS: turn-sharpness closed forms hold (straight 0, right angle (e^3-1)/10, collinear insertion neutral)");
}

/// Circle of radius `r` flown at constant speed `s`, positions only.
fn circle_positions(r: f64, s: f64, revs: f64, hz: f64) -> TrajectoryLog {
    let omega = s / r;
    let duration = revs * 2.0 * PI / omega;
    let n = (duration * hz).ceil() as usize + 1;
    let t: Vec<f64> = (0..n).map(|i| i as f64 / hz).collect();
    let pos = t
        .iter()
        .map(|&t| Point3::new(r * (omega * t).cos(), r * (omega * t).sin(), 0.0))
        .collect();
    TrajectoryLog::new(t, pos).unwrap()
}

#[test]
fn c08_circle_kinematics_analytic() {
    let mut curvatures = Vec::new();
    for s in [1.0, 2.0, 4.0] {
        let log = derive_kinematics(&circle_positions(2.0, s, 1.0, 1000.0)).unwrap();
        let kappa = flightdiff::average_curvature(&log).unwrap();
        assert!(
            (kappa - 0.5).abs() <= 1e-3,
            "s={s}: curvature {kappa} != 1/r"
        );
        let acc = flightdiff::average_acceleration(&log).unwrap();
        let expected = s.powi(3) / 4.0;
        assert!(
            (acc - expected).abs() / expected <= 1e-3,
            "s={s}: acceleration {acc} != {expected}"
        );
        curvatures.push(kappa);
    }
    assert!(
        (curvatures[0] - curvatures[2]).abs() <= 1e-3,
        "curvature must not depend on speed: {curvatures:?}"
    );
    println!("acceptance 08 PASS: circle fixtures give curvature 0.5 +/- 1e-3 and acceleration s^3/4 +/- 0.1%, speed-invariant");
}

#[test]
fn c09_success_implies_complete_progress() {
    let reference = GuidePath::new(vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(6.0, 0.0, 0.0),
        Point3::new(6.0, 4.0, 0.0),
    ])
    .unwrap();
    let goal = GoalSpec::new(Point3::new(6.0, 4.0, 0.0));
    let scene = build_scene(vec![Point3::new(3.0, 2.0, 0.0)]).unwrap();
    let sensor = SensorConfig::default_config();

    let mut rng = ChaCha8Rng::seed_from_u64(909);
    let mut successes = 0;
    for case in 0..100 {
        let n = rng.random_range(4..40);
        let t: Vec<f64> = (0..n).map(|i| i as f64 * 0.1).collect();
        let mut pos: Vec<Point3<f64>> = (0..n)
            .map(|_| {
                Point3::new(
                    rng.random_range(-1.0..7.0),
                    rng.random_range(-1.0..5.0),
                    rng.random_range(-0.5..0.5),
                )
            })
            .collect();
        // Half the logs are steered to finish at the goal so both branches
        // of the contract are exercised.
        if case % 2 == 0 {
            let last = pos.len() - 1;
            pos[last] = goal.position + Vector3::new(0.3, -0.2, 0.1);
        }
        let log = TrajectoryLog::new(t, pos).unwrap();
        let report = evaluate(&log, Some(&scene), &reference, &goal, &sensor).unwrap();
        if report.success {
            successes += 1;
            assert_eq!(
                report.progress, 1.0,
                "case {case}: successful flight must have complete progress"
            );
        }
    }
    assert!(successes > 0, "fixture produced no successful flights");

    // Goal-radius boundary: 1.4 m inside, 1.6 m outside a 1.5 m radius.
    let line = GuidePath::new(vec![
        Point3::new(0.0, 0.0, 0.0),
        Point3::new(10.0, 0.0, 0.0),
    ])
    .unwrap();
    let boundary_log = |end_x: f64| {
        let t = vec![0.0, 1.0, 2.0, 3.0];
        let pos = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(3.0, 0.0, 0.0),
            Point3::new(6.0, 0.0, 0.0),
            Point3::new(end_x, 0.0, 0.0),
        ];
        TrajectoryLog::new(t, pos).unwrap()
    };
    let goal_end = GoalSpec::new(Point3::new(10.0, 0.0, 0.0));
    let near = boundary_log(8.6); // 1.4 m short of the goal
    let edge = boundary_log(8.5); // exactly on the 1.5 m goal radius
    let far = boundary_log(8.4); // 1.6 m short of the goal
    assert!(success(&near, &goal_end, None, sensor.drone_radius));
    assert_eq!(progress(&near, &line, &goal_end), 1.0);
    assert!(
        success(&edge, &goal_end, None, sensor.drone_radius),
        "the goal radius is inclusive"
    );
    assert_eq!(progress(&edge, &line, &goal_end), 1.0);
    assert!(!success(&far, &goal_end, None, sensor.drone_radius));
    assert!(progress(&far, &line, &goal_end) < 1.0);
    println!("acceptance 09 PASS: success implies progress exactly 1.0 on {successes}/100 random successful flights; 1.5 m goal boundary respected");
}

#[test]
fn c10_correlation_matches_textbook_formula() {
    // 8 rows with full-variance columns; every matrix entry must equal the
    // n*Σxy - Σx*Σy textbook form to 1e-12.
    let make_row = |i: usize| {
        let x = i as f64;
        RunRecord {
            test_case_id: format!("case-{i}"),
            method: "solver".into(),
            to: 0.3 + 0.07 * x + 0.01 * x * x,
            vo: 1.2 - 0.09 * x,
            aol: (0.4 * x).sin() + 2.0,
            success_rate: 1.0 / (1.0 + x),
            avg_speed: 2.0 + 0.5 * (0.7 * x).cos(),
            avg_curvature: 0.1 * x * x - 0.3 * x + 1.0,
            avg_acceleration: 3.0 + (x * 1.3).sin() * 0.8,
            avg_jerk: 20.0 - x * 1.7,
            progress: 0.5 + 0.05 * x,
            computation_time_ms: Some(10.0 + x * x),
        }
    };
    let table = RunTable {
        rows: (0..8).map(make_row).collect(),
    };
    let matrix = correlation_matrix(
        &table,
        CorrelationKind::Pearson,
        CorrelationMode::Pooled,
        FinalColumn::Progress,
    )
    .unwrap();

    let textbook = |x: &[f64], y: &[f64]| {
        let n = x.len() as f64;
        let sx: f64 = x.iter().sum();
        let sy: f64 = y.iter().sum();
        let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        let sxx: f64 = x.iter().map(|a| a * a).sum();
        let syy: f64 = y.iter().map(|a| a * a).sum();
        ((n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())).abs()
    };
    let difficulty: [Vec<f64>; 3] = [
        table.rows.iter().map(|r| r.to).collect(),
        table.rows.iter().map(|r| r.vo).collect(),
        table.rows.iter().map(|r| r.aol).collect(),
    ];
    let performance: [Vec<f64>; 6] = [
        table.rows.iter().map(|r| r.success_rate).collect(),
        table.rows.iter().map(|r| r.avg_speed).collect(),
        table.rows.iter().map(|r| r.avg_curvature).collect(),
        table.rows.iter().map(|r| r.avg_acceleration).collect(),
        table.rows.iter().map(|r| r.avg_jerk).collect(),
        table.rows.iter().map(|r| r.progress).collect(),
    ];
    for (i, x) in difficulty.iter().enumerate() {
        for (j, y) in performance.iter().enumerate() {
            let got = matrix.values[i][j].expect("full-variance entry");
            let want = textbook(x, y);
            assert!(
                (got - want).abs() <= 1e-12,
                "entry ({i}, {j}): {got} vs {want}"
            );
        }
    }

    // Affine invariance: |corr(a*x + b, y)| == |corr(x, y)| on random pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for _ in 0..100 {
        let x: Vec<f64> = (0..50).map(|_| rng.random_range(-10.0..10.0)).collect();
        let y: Vec<f64> = (0..50).map(|_| rng.random_range(-10.0..10.0)).collect();
        let a = rng.random_range(0.25..4.0) * if rng.random_bool(0.5) { -1.0 } else { 1.0 };
        let b = rng.random_range(-10.0..10.0);
        let as_table = |xs: &[f64]| RunTable {
            rows: xs
                .iter()
                .zip(&y)
                .enumerate()
                .map(|(i, (&xi, &yi))| RunRecord {
                    test_case_id: format!("r{i}"),
                    method: "m".into(),
                    to: xi,
                    vo: 0.0,
                    aol: 0.0,
                    success_rate: yi,
                    avg_speed: 0.0,
                    avg_curvature: 0.0,
                    avg_acceleration: 0.0,
                    avg_jerk: 0.0,
                    progress: 0.0,
                    computation_time_ms: None,
                })
                .collect(),
        };
        let scaled: Vec<f64> = x.iter().map(|&v| a * v + b).collect();
        let entry = |t: &RunTable| {
            correlation_matrix(
                t,
                CorrelationKind::Pearson,
                CorrelationMode::Pooled,
                FinalColumn::Progress,
            )
            .unwrap()
            .values[0][0]
                .unwrap()
        };
        let base = entry(&as_table(&x));
        let transformed = entry(&as_table(&scaled));
        assert!(
            (base - transformed).abs() <= 1e-9,
            "affine transform changed |r|: {base} vs {transformed} (a={a}, b={b})"
        );
    }
    println!("acceptance 10 PASS: correlation entries match the textbook formula to 1e-12; affine invariance holds on 100 pairs");
}

#[test]
fn c11_density_and_corner_difficulty_trends() {
    let start = Instant::now();
    let sensor = SensorConfig::default_config();
    let corridor_cfg = CorridorConfig::default();
    let vo_cfg = VoSamplingConfig::default();

    let densities = [0.05, 0.1, 0.2];
    let mut mean_to = Vec::new();
    let mut mean_vo = Vec::new();
    for &density in &densities {
        let mut sum_to = 0.0;
        let mut sum_vo = 0.0;
        for seed in 0..10 {
            let spec = ForestSpec {
                tree_density: density,
                seed,
                ..ForestSpec::default()
            };
            let forest = generate_forest(&spec)
                .unwrap_or_else(|e| panic!("density {density}, seed {seed}: {e}"));
            let path = compute_guide_path(
                Some(&forest.scene),
                forest.start,
                forest.goal,
                0.25,
                planner_clearance(&sensor, &corridor_cfg),
            )
            .unwrap_or_else(|e| panic!("density {density}, seed {seed}: {e}"));
            let scores =
                score_test_case(Some(&forest.scene), &path, &sensor, &corridor_cfg, &vo_cfg)
                    .unwrap_or_else(|e| panic!("density {density}, seed {seed}: {e}"));
            sum_to += scores.to;
            sum_vo += scores.vo;
        }
        mean_to.push(sum_to / 10.0);
        mean_vo.push(sum_vo / 10.0);
    }
    assert!(
        mean_to[0] < mean_to[1] && mean_to[1] < mean_to[2],
        "mean narrow-space score must rise with density: {mean_to:?}"
    );
    assert!(
        mean_vo[0] < mean_vo[1] && mean_vo[1] < mean_vo[2],
        "mean occlusion score must rise with density: {mean_vo:?}"
    );

    // More corners in the maze route must raise the turn-sharpness score.
    let straight_spec = MazeSpec::from_layout(&["S......G"], 2.0, 3.0, 0.0, 0).unwrap();
    let twisty_spec = MazeSpec::from_layout(
        &["S.#...#..", "..#.#.#..", "..#.#.#..", "....#...G"],
        2.0,
        3.0,
        0.0,
        0,
    )
    .unwrap();
    let maze_aol = |spec: &MazeSpec| -> Result<f64, ScenegenError> {
        let maze = generate_maze(spec)?;
        let path = compute_guide_path(Some(&maze.scene), maze.start, maze.goal, 0.25, 0.3)?;
        Ok(angle_over_length(&path))
    };
    let aol_straight = maze_aol(&straight_spec).unwrap();
    let aol_twisty = maze_aol(&twisty_spec).unwrap();
    assert!(
        aol_twisty > aol_straight,
        "serpentine maze must score sharper turns: {aol_twisty} vs {aol_straight}"
    );

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    println!(
        "acceptance 11 PASS: mean narrow-space {mean_to:?} and occlusion {mean_vo:?} rise strictly with tree density; maze corners raise turn score ({aol_straight:.4} -> {aol_twisty:.4}) in {elapsed:.2?}"
    );
}
