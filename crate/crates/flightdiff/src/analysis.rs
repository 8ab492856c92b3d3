//! Cross-run aggregation and difficulty-vs-performance correlation.
//!
//! A [`RunTable`] holds one row per test case (and method): its three
//! difficulty scores and its aggregated performance. [`correlation_matrix`]
//! turns the table into a 3×6 grid of absolute correlation coefficients
//! between each difficulty metric and each performance metric, either pooled
//! over all rows or averaged over per-method matrices.

use crate::trajmetrics::PerformanceReport;
use thiserror::Error;

/// Errors from aggregation and correlation.
#[derive(Debug, Error)]
pub enum AnalysisError {
    /// Input is structurally unusable (empty list, missing column).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Not enough rows to compute the requested statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

/// One run-table row: a test case, the method that flew it, its difficulty
/// scores, and its (typically run-averaged) performance values.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub test_case_id: String,
    pub method: String,
    pub to: f64,
    pub vo: f64,
    pub aol: f64,
    /// Fraction of successful runs in [0, 1].
    pub success_rate: f64,
    pub avg_speed: f64,
    pub avg_curvature: f64,
    pub avg_acceleration: f64,
    pub avg_jerk: f64,
    pub progress: f64,
    pub computation_time_ms: Option<f64>,
}

/// Rows of (test case × method) entries feeding the correlation matrix.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunTable {
    pub rows: Vec<RunRecord>,
}

/// Mean performance over repeated runs of one test case.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregatePerformance {
    /// Fraction of successful runs.
    pub success_rate: f64,
    pub avg_speed: f64,
    pub avg_curvature: f64,
    pub avg_acceleration: f64,
    pub avg_jerk: f64,
    pub total_time: f64,
    pub path_length: f64,
    pub progress: f64,
    /// Mean computation time; present only when every run reported one.
    pub computation_time_ms: Option<f64>,
    /// Number of runs aggregated.
    pub runs: usize,
}

/// Means each numeric metric over the reports and turns the success flags
/// into a success rate.
pub fn aggregate_runs(
    reports: &[PerformanceReport],
) -> Result<AggregatePerformance, AnalysisError> {
    if reports.is_empty() {
        return Err(AnalysisError::InvalidInput(
            "cannot aggregate zero runs".into(),
        ));
    }
    let n = reports.len() as f64;
    let mean = |f: fn(&PerformanceReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
    let computation_time_ms = reports
        .iter()
        .map(|r| r.computation_time_ms)
        .collect::<Option<Vec<f64>>>()
        .map(|ts| ts.iter().sum::<f64>() / n);
    Ok(AggregatePerformance {
        success_rate: reports.iter().filter(|r| r.success).count() as f64 / n,
        avg_speed: mean(|r| r.avg_speed),
        avg_curvature: mean(|r| r.avg_curvature),
        avg_acceleration: mean(|r| r.avg_acceleration),
        avg_jerk: mean(|r| r.avg_jerk),
        total_time: mean(|r| r.total_time),
        path_length: mean(|r| r.path_length),
        progress: mean(|r| r.progress),
        computation_time_ms,
        runs: reports.len(),
    })
}

/// Correlation coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationKind {
    Pearson,
    /// Rank correlation (Pearson over average-ranked values).
    Spearman,
}

/// How rows are grouped before correlating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMode {
    /// One matrix over all rows at once.
    Pooled,
    /// One matrix per method (methods with fewer than 2 rows are skipped),
    /// then entries averaged across methods.
    PerMethodMean,
}

/// What the sixth performance column holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinalColumn {
    Progress,
    ComputationTime,
}

/// Difficulty metric labels, in matrix row order.
pub const DIFFICULTY_LABELS: [&str; 3] = ["to", "vo", "aol"];

/// 3×6 grid of |correlation| values between difficulty metrics (rows) and
/// performance metrics (columns). `None` marks an undefined entry (zero
/// variance in either series).
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    /// `values[row][col]`, each in [0, 1] or `None` when undefined.
    pub values: Vec<Vec<Option<f64>>>,
    pub kind: CorrelationKind,
    pub mode: CorrelationMode,
}

/// Pearson correlation coefficient; `None` when either series has zero
/// variance (undefined, deliberately distinct from 0).
fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Average ranks (1-based); ties share the mean of their rank range.
fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].partial_cmp(&xs[b]).unwrap());
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let mean_rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = mean_rank;
        }
        i = j + 1;
    }
    ranks
}

/// |correlation| between two series under the chosen kind, clamped to
/// [0, 1]; `None` when undefined.
fn abs_correlation(xs: &[f64], ys: &[f64], kind: CorrelationKind) -> Option<f64> {
    let r = match kind {
        CorrelationKind::Pearson => pearson(xs, ys)?,
        CorrelationKind::Spearman => pearson(&average_ranks(xs), &average_ranks(ys))?,
    };
    Some(r.abs().clamp(0.0, 1.0))
}

fn difficulty_column(rows: &[&RunRecord], idx: usize) -> Vec<f64> {
    rows.iter()
        .map(|r| match idx {
            0 => r.to,
            1 => r.vo,
            _ => r.aol,
        })
        .collect()
}

fn performance_column(
    rows: &[&RunRecord],
    idx: usize,
    final_column: FinalColumn,
) -> Result<Vec<f64>, AnalysisError> {
    rows.iter()
        .map(|r| match idx {
            0 => Ok(r.success_rate),
            1 => Ok(r.avg_speed),
            2 => Ok(r.avg_curvature),
            3 => Ok(r.avg_acceleration),
            4 => Ok(r.avg_jerk),
            _ => match final_column {
                FinalColumn::Progress => Ok(r.progress),
                FinalColumn::ComputationTime => r.computation_time_ms.ok_or_else(|| {
                    AnalysisError::InvalidInput(format!(
                        "row '{}' has no computation time but the final column requires it",
                        r.test_case_id
                    ))
                }),
            },
        })
        .collect()
}

fn matrix_for(
    rows: &[&RunRecord],
    kind: CorrelationKind,
    final_column: FinalColumn,
) -> Result<Vec<Vec<Option<f64>>>, AnalysisError> {
    let mut values = vec![vec![None; 6]; 3];
    for (d, row) in values.iter_mut().enumerate() {
        let xs = difficulty_column(rows, d);
        for (p, cell) in row.iter_mut().enumerate() {
            let ys = performance_column(rows, p, final_column)?;
            *cell = abs_correlation(&xs, &ys, kind);
        }
    }
    Ok(values)
}

/// Correlates each difficulty metric with each performance metric across
/// the table rows.
///
/// `Pooled` computes one matrix over all rows. `PerMethodMean` computes a
/// matrix per method label (skipping methods with fewer than 2 rows) and
/// averages corresponding entries, ignoring entries undefined for a method;
/// an entry undefined for every method stays `None`.
///
/// Errors with [`AnalysisError::InsufficientData`] when fewer than 2 rows
/// qualify.
pub fn correlation_matrix(
    table: &RunTable,
    kind: CorrelationKind,
    mode: CorrelationMode,
    final_column: FinalColumn,
) -> Result<CorrelationMatrix, AnalysisError> {
    let col_labels: Vec<String> = [
        "success_rate",
        "avg_speed",
        "avg_curvature",
        "avg_acceleration",
        "avg_jerk",
        match final_column {
            FinalColumn::Progress => "progress",
            FinalColumn::ComputationTime => "computation_time_ms",
        },
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let row_labels: Vec<String> = DIFFICULTY_LABELS.iter().map(|s| s.to_string()).collect();

    let values = match mode {
        CorrelationMode::Pooled => {
            if table.rows.len() < 2 {
                return Err(AnalysisError::InsufficientData(format!(
                    "correlation needs at least 2 rows, got {}",
                    table.rows.len()
                )));
            }
            let rows: Vec<&RunRecord> = table.rows.iter().collect();
            matrix_for(&rows, kind, final_column)?
        }
        CorrelationMode::PerMethodMean => {
            let mut methods: Vec<&str> = table.rows.iter().map(|r| r.method.as_str()).collect();
            methods.sort_unstable();
            methods.dedup();
            let mut per_method = Vec::new();
            for m in methods {
                let rows: Vec<&RunRecord> = table.rows.iter().filter(|r| r.method == m).collect();
                if rows.len() >= 2 {
                    per_method.push(matrix_for(&rows, kind, final_column)?);
                }
            }
            if per_method.is_empty() {
                return Err(AnalysisError::InsufficientData(
                    "no method has at least 2 rows".into(),
                ));
            }
            let mut values = vec![vec![None; 6]; 3];
            for (d, row) in values.iter_mut().enumerate() {
                for (p, cell) in row.iter_mut().enumerate() {
                    let defined: Vec<f64> = per_method.iter().filter_map(|m| m[d][p]).collect();
                    if !defined.is_empty() {
                        *cell = Some(defined.iter().sum::<f64>() / defined.len() as f64);
                    }
                }
            }
            values
        }
    };

    Ok(CorrelationMatrix {
        row_labels,
        col_labels,
        values,
        kind,
        mode,
    })
}
