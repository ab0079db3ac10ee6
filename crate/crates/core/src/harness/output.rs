//! CSV files and manifests written for a finished plan.
//!
//! `raw.csv` has one row per run, `summary.csv` one row per (instance,
//! algorithm) and `pairwise.csv` one row per unordered algorithm pair per
//! instance. Summaries are a pure function of the raw rows, so
//! `summarize(read_raw_csv(raw.csv))` reproduces `summary.csv` byte for byte.
//! Nothing written here depends on wall-clock time; timestamps go to the
//! separate `run.manifest`.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ExperimentResult, Family, HarnessError};
use crate::algorithms::SearchResult;
use crate::stats::{mann_whitney_u, vargha_delaney_a12};

/// Version tag written into every CSV row.
pub const SCHEMA_VERSION: u32 = 1;

/// Significance level for the "better than" column.
const ALPHA: f64 = 0.05;

pub const RAW_FILE: &str = "raw.csv";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const PAIRWISE_FILE: &str = "pairwise.csv";
pub const PROBLEMS_MANIFEST: &str = "problems.manifest";
pub const RUN_MANIFEST: &str = "run.manifest";

/// One run, as stored in `raw.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub family: String,
    /// Grid parameter (`z`, infeasible count) or SUT name.
    pub instance: String,
    pub targets: usize,
    pub feasible_targets: usize,
    pub algorithm: String,
    pub repetition: u32,
    pub seed: u64,
    pub covered: usize,
    /// `covered / feasible_targets`.
    pub coverage: f64,
    /// Sum over all targets of the best heuristic reached.
    pub coverage_sum: f64,
    pub suite_size: usize,
    pub evaluations: u64,
}

impl RunRecord {
    #[allow(clippy::too_many_arguments)]
    pub(super) fn from_result(
        family: Family,
        instance: &str,
        targets: usize,
        feasible_targets: usize,
        algorithm: &str,
        repetition: u32,
        seed: u64,
        result: &SearchResult,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            family: family.name().to_string(),
            instance: instance.to_string(),
            targets,
            feasible_targets,
            algorithm: algorithm.to_string(),
            repetition,
            seed,
            covered: result.covered(),
            coverage: coverage_fraction(result.covered(), feasible_targets),
            coverage_sum: result.heuristic_sum,
            suite_size: result.suite.len(),
            evaluations: result.evaluations,
        }
    }
}

fn coverage_fraction(covered: usize, feasible: usize) -> f64 {
    if feasible == 0 {
        0.0
    } else {
        covered as f64 / feasible as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub family: String,
    pub instance: String,
    pub algorithm: String,
    pub runs: usize,
    pub targets: usize,
    pub feasible_targets: usize,
    pub mean_covered: f64,
    pub mean_coverage: f64,
    pub median_coverage: f64,
    pub mean_coverage_sum: f64,
    pub mean_suite_size: f64,
    /// Algorithms this one beats (`Â12 > 0.5`, `p < 0.05` on covered
    /// counts), formatted `NAME(Â12)` and space separated.
    pub better_than: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseRow {
    pub family: String,
    pub instance: String,
    pub algorithm_a: String,
    pub algorithm_b: String,
    /// `Â12(a, b)` on covered counts.
    pub a12: f64,
    pub p_value: f64,
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    if sorted.len().is_multiple_of(2) {
        (sorted[mid - 1] + sorted[mid]) / 2.0
    } else {
        sorted[mid]
    }
}

type AlgorithmRuns<'a> = (String, Vec<&'a RunRecord>);

/// Aggregates raw runs into per-(instance, algorithm) summaries and
/// per-instance pairwise statistics. Instances and algorithms keep the
/// order of their first appearance in `runs`.
pub fn summarize(runs: &[RunRecord]) -> (Vec<SummaryRow>, Vec<PairwiseRow>) {
    let mut instance_order: Vec<(String, String)> = Vec::new();
    let mut groups: HashMap<(String, String), Vec<AlgorithmRuns<'_>>> = HashMap::new();
    for run in runs {
        let key = (run.family.clone(), run.instance.clone());
        let algorithms = groups.entry(key.clone()).or_insert_with(|| {
            instance_order.push(key);
            Vec::new()
        });
        match algorithms.iter_mut().find(|(a, _)| *a == run.algorithm) {
            Some((_, rows)) => rows.push(run),
            None => algorithms.push((run.algorithm.clone(), vec![run])),
        }
    }

    let mut summaries = Vec::new();
    let mut pairwise = Vec::new();
    for key in &instance_order {
        let algorithms = &groups[key];
        let covered: Vec<Vec<f64>> = algorithms
            .iter()
            .map(|(_, rows)| rows.iter().map(|r| r.covered as f64).collect())
            .collect();
        let n = algorithms.len();
        let mut a12 = vec![vec![0.5; n]; n];
        let mut p = vec![vec![1.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    // Samples are never empty: every group holds a run.
                    a12[i][j] = vargha_delaney_a12(&covered[i], &covered[j]).unwrap_or(0.5);
                    p[i][j] = mann_whitney_u(&covered[i], &covered[j]).unwrap_or(1.0);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                pairwise.push(PairwiseRow {
                    family: key.0.clone(),
                    instance: key.1.clone(),
                    algorithm_a: algorithms[i].0.clone(),
                    algorithm_b: algorithms[j].0.clone(),
                    a12: a12[i][j],
                    p_value: p[i][j],
                });
            }
        }
        for (i, (algorithm, rows)) in algorithms.iter().enumerate() {
            let mut beaten: Vec<(String, f64)> = (0..n)
                .filter(|&j| j != i && a12[i][j] > 0.5 && p[i][j] < ALPHA)
                .map(|j| (algorithms[j].0.clone(), a12[i][j]))
                .collect();
            beaten.sort_by(|a, b| a.0.cmp(&b.0));
            let better_than: Vec<String> = beaten
                .iter()
                .map(|(name, a)| format!("{name}({a:.2})"))
                .collect();
            let coverage: Vec<f64> = rows.iter().map(|r| r.coverage).collect();
            let first = rows[0];
            summaries.push(SummaryRow {
                family: key.0.clone(),
                instance: key.1.clone(),
                algorithm: algorithm.clone(),
                runs: rows.len(),
                targets: first.targets,
                feasible_targets: first.feasible_targets,
                mean_covered: mean(&covered[i]),
                mean_coverage: mean(&coverage),
                median_coverage: median(&coverage),
                mean_coverage_sum: mean(&rows.iter().map(|r| r.coverage_sum).collect::<Vec<_>>()),
                mean_suite_size: mean(
                    &rows.iter().map(|r| r.suite_size as f64).collect::<Vec<_>>(),
                ),
                better_than: better_than.join(" "),
            });
        }
    }
    (summaries, pairwise)
}

fn io_error(path: &Path, source: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn csv_error(path: &Path, source: csv::Error) -> HarnessError {
    HarnessError::Csv {
        path: path.display().to_string(),
        source,
    }
}

fn create(path: &Path) -> Result<csv::Writer<fs::File>, HarnessError> {
    let file = fs::File::create(path).map_err(|e| io_error(path, e))?;
    Ok(csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(file))
}

const RAW_HEADER: [&str; 13] = [
    "schema_version",
    "family",
    "instance",
    "targets",
    "feasible_targets",
    "algorithm",
    "repetition",
    "seed",
    "covered",
    "coverage",
    "coverage_sum",
    "suite_size",
    "evaluations",
];

pub fn write_raw_csv(path: &Path, runs: &[RunRecord]) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    w.write_record(RAW_HEADER).map_err(|e| csv_error(path, e))?;
    for run in runs {
        w.serialize(run).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

pub fn read_raw_csv(path: &Path) -> Result<Vec<RunRecord>, HarnessError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| csv_error(path, e))?;
    let headers = reader.headers().map_err(|e| csv_error(path, e))?.clone();
    if headers.iter().ne(RAW_HEADER) {
        return Err(HarnessError::Io {
            path: path.display().to_string(),
            source: std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                "not a raw results file (unexpected header)",
            ),
        });
    }
    let mut runs = Vec::new();
    for row in reader.deserialize() {
        let run: RunRecord = row.map_err(|e| csv_error(path, e))?;
        if run.schema_version != SCHEMA_VERSION {
            return Err(HarnessError::Io {
                path: path.display().to_string(),
                source: std::io::Error::new(
                    std::io::ErrorKind::InvalidData,
                    format!("unsupported schema_version {}", run.schema_version),
                ),
            });
        }
        runs.push(run);
    }
    Ok(runs)
}

pub fn write_summary_csv(path: &Path, rows: &[SummaryRow]) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    w.write_record([
        "schema_version",
        "family",
        "instance",
        "algorithm",
        "runs",
        "targets",
        "feasible_targets",
        "mean_covered",
        "mean_coverage",
        "median_coverage",
        "mean_coverage_sum",
        "mean_suite_size",
        "better_than",
    ])
    .map_err(|e| csv_error(path, e))?;
    for r in rows {
        w.write_record([
            SCHEMA_VERSION.to_string(),
            r.family.clone(),
            r.instance.clone(),
            r.algorithm.clone(),
            r.runs.to_string(),
            r.targets.to_string(),
            r.feasible_targets.to_string(),
            format!("{:.6}", r.mean_covered),
            format!("{:.6}", r.mean_coverage),
            format!("{:.6}", r.median_coverage),
            format!("{:.6}", r.mean_coverage_sum),
            format!("{:.6}", r.mean_suite_size),
            r.better_than.clone(),
        ])
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

pub fn write_pairwise_csv(path: &Path, rows: &[PairwiseRow]) -> Result<(), HarnessError> {
    let mut w = create(path)?;
    w.write_record([
        "schema_version",
        "family",
        "instance",
        "algorithm_a",
        "algorithm_b",
        "a12",
        "p_value",
    ])
    .map_err(|e| csv_error(path, e))?;
    for r in rows {
        w.write_record([
            SCHEMA_VERSION.to_string(),
            r.family.clone(),
            r.instance.clone(),
            r.algorithm_a.clone(),
            r.algorithm_b.clone(),
            format!("{:.6}", r.a12),
            format!("{:.6}", r.p_value),
        ])
        .map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| io_error(path, e))
}

/// Line-oriented description of the plan and of every problem instance it
/// ran, including optima and seeds.
pub fn problems_manifest(result: &ExperimentResult) -> String {
    let plan = &result.plan;
    let labels: Vec<&str> = plan.algorithms.iter().map(|a| a.label()).collect();
    let mut out = String::new();
    out.push_str(&format!(
        "# miosearch problems manifest, schema_version={SCHEMA_VERSION}\n"
    ));
    out.push_str(&format!(
        "plan name={} budget={} repetitions={} base_seed={} range={} algorithms={}\n",
        plan.name,
        plan.budget,
        plan.repetitions,
        plan.base_seed,
        plan.range,
        labels.join(",")
    ));
    for i in &result.instances {
        out.push_str(&format!(
            "instance family={} instance={} repetition={} cell_seed={} targets={} feasible={} {}\n",
            i.family,
            i.instance,
            i.repetition,
            i.cell_seed,
            i.targets,
            i.feasible_targets,
            i.description
        ));
    }
    for s in &result.skipped {
        out.push_str(&format!(
            "skipped family={} instance={} algorithm={} reason={}\n",
            s.family, s.instance, s.algorithm, s.reason
        ));
    }
    out
}

/// Writes raw, summary and pairwise CSVs plus the problems manifest into
/// `dir`, creating it if needed. Returns the written paths.
pub fn emit_csv(result: &ExperimentResult, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let raw = dir.join(RAW_FILE);
    let summary = dir.join(SUMMARY_FILE);
    let pairwise = dir.join(PAIRWISE_FILE);
    let manifest = dir.join(PROBLEMS_MANIFEST);
    write_raw_csv(&raw, &result.runs)?;
    write_summary_csv(&summary, &result.summaries)?;
    write_pairwise_csv(&pairwise, &result.pairwise)?;
    fs::write(&manifest, problems_manifest(result)).map_err(|e| io_error(&manifest, e))?;
    Ok(vec![raw, summary, pairwise, manifest])
}

/// Sidecar with the wall-clock details that are kept out of the
/// deterministic outputs.
pub fn write_run_manifest(
    dir: &Path,
    result: &ExperimentResult,
    started_unix: u64,
    finished_unix: u64,
    execution: super::Execution,
) -> Result<PathBuf, HarnessError> {
    let path = dir.join(RUN_MANIFEST);
    let mut file = fs::File::create(&path).map_err(|e| io_error(&path, e))?;
    let body = format!(
        "plan={}\nversion={}\nexecution={:?}\nstarted_unix={}\nfinished_unix={}\nruns={}\nskipped={}\n",
        result.plan.name,
        env!("CARGO_PKG_VERSION"),
        execution,
        started_unix,
        finished_unix,
        result.runs.len(),
        result.skipped.len()
    );
    file.write_all(body.as_bytes())
        .map_err(|e| io_error(&path, e))?;
    Ok(path)
}
