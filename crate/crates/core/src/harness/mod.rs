//! Experiment plans, their execution and CSV output.
//!
//! A plan is a grid of problem instances (one per parameter value and
//! repetition) crossed with a list of algorithms. Each (instance, repetition)
//! cell builds its problem once from a derived seed and hands the same
//! instance to every algorithm, each with its own algorithm-tagged seed, so
//! adding or removing an algorithm never changes the others' results.

mod config;
mod output;
mod plans;

use std::fmt;

use thiserror::Error;

use crate::algorithms::{
    run_mio, run_mosa, run_random, run_wts, MioConfig, MosaConfig, SearchError, SearchResult,
    WtsConfig,
};
use crate::budget::Budget;
use crate::problems::{ArtificialProblem, LandscapeKind, Problem, SutKind, SutProblem};
use crate::seed::{derive_seed, seeded_rng, tag};

pub use config::{parse_config, ConfigError};
pub use output::{
    emit_csv, problems_manifest, read_raw_csv, summarize, write_pairwise_csv, write_raw_csv,
    write_run_manifest, write_summary_csv, PairwiseRow, RunRecord, SummaryRow, SCHEMA_VERSION,
};
pub use plans::{builtin_plan, figure_plans, table1_plan, FIGURE_Z_VALUES, INFEASIBLE_COUNTS};

/// Input range `r` of the artificial problems.
pub const DEFAULT_RANGE: u32 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Artificial(LandscapeKind),
    Sut,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Artificial(kind) => kind.name(),
            Family::Sut => "sut",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "sut" => Some(Family::Sut),
            other => LandscapeKind::parse(other).map(Family::Artificial),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One point of a plan's parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceSpec {
    /// `z` targets, or for the infeasible kind the number of infeasible
    /// targets added to the ten feasible ones.
    Artificial {
        kind: LandscapeKind,
        param: usize,
    },
    Sut(SutKind),
}

impl InstanceSpec {
    pub fn family(&self) -> Family {
        match self {
            InstanceSpec::Artificial { kind, .. } => Family::Artificial(*kind),
            InstanceSpec::Sut(_) => Family::Sut,
        }
    }

    /// Grid label written to the `instance` CSV column.
    pub fn label(&self) -> String {
        match self {
            InstanceSpec::Artificial { param, .. } => param.to_string(),
            InstanceSpec::Sut(kind) => kind.name().to_string(),
        }
    }

    fn seed_part(&self) -> u64 {
        match self {
            InstanceSpec::Artificial { param, .. } => *param as u64,
            InstanceSpec::Sut(kind) => tag(kind.name()),
        }
    }

    fn validate(&self) -> Result<(), String> {
        match self {
            InstanceSpec::Artificial { kind, param: 0 } if *kind != LandscapeKind::Infeasible => {
                Err("an artificial problem needs at least one target".into())
            }
            _ => Ok(()),
        }
    }
}

/// An algorithm with its configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmSpec {
    Mio(MioConfig),
    Mosa(MosaConfig),
    Wts(WtsConfig),
    Random,
}

impl AlgorithmSpec {
    /// Column label; MIO with FDS disabled is reported as `MIO-noFDS`.
    pub fn label(&self) -> &'static str {
        match self {
            AlgorithmSpec::Mio(c) if c.fds_enabled => "MIO",
            AlgorithmSpec::Mio(_) => "MIO-noFDS",
            AlgorithmSpec::Mosa(_) => "MOSA",
            AlgorithmSpec::Wts(_) => "WTS",
            AlgorithmSpec::Random => "RAND",
        }
    }

    /// Default configuration for a label (case-insensitive).
    pub fn parse(label: &str) -> Option<Self> {
        match label.to_ascii_uppercase().as_str() {
            "MIO" => Some(AlgorithmSpec::Mio(MioConfig::default())),
            "MIO-NOFDS" => Some(AlgorithmSpec::Mio(MioConfig::without_fds())),
            "MOSA" => Some(AlgorithmSpec::Mosa(MosaConfig::default())),
            "WTS" => Some(AlgorithmSpec::Wts(WtsConfig::default())),
            "RAND" | "RANDOM" => Some(AlgorithmSpec::Random),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        match self {
            AlgorithmSpec::Mio(c) => c.validate(),
            AlgorithmSpec::Mosa(c) => c.validate(),
            AlgorithmSpec::Wts(c) => c.validate(),
            AlgorithmSpec::Random => Ok(()),
        }
    }

    pub fn run<P: Problem + ?Sized>(
        &self,
        problem: &P,
        budget: u64,
        seed: u64,
    ) -> Result<SearchResult, SearchError> {
        let mut rng = seeded_rng(seed);
        let budget = Budget::new(budget);
        match self {
            AlgorithmSpec::Mio(c) => run_mio(problem, c, budget, &mut rng),
            AlgorithmSpec::Mosa(c) => run_mosa(problem, c, budget, &mut rng),
            AlgorithmSpec::Wts(c) => run_wts(problem, c, budget, &mut rng),
            AlgorithmSpec::Random => run_random(problem, budget, &mut rng),
        }
    }
}

/// How cells are scheduled. `Parallel` falls back to sequential execution
/// when the crate is built without the `parallel` feature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub name: String,
    pub instances: Vec<InstanceSpec>,
    pub algorithms: Vec<AlgorithmSpec>,
    pub repetitions: u32,
    pub budget: u64,
    pub base_seed: u64,
    pub range: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanError {
    #[error("plan has no instances")]
    NoInstances,
    #[error("plan has no algorithms")]
    NoAlgorithms,
    #[error("plan needs at least one repetition")]
    NoRepetitions,
    #[error("algorithm {0} is listed twice")]
    DuplicateAlgorithm(String),
}

impl ExperimentPlan {
    pub fn new(
        name: impl Into<String>,
        instances: Vec<InstanceSpec>,
        algorithms: Vec<AlgorithmSpec>,
    ) -> Self {
        Self {
            name: name.into(),
            instances,
            algorithms,
            repetitions: 100,
            budget: 1000,
            base_seed: 0,
            range: DEFAULT_RANGE,
        }
    }

    pub fn with_repetitions(mut self, repetitions: u32) -> Self {
        self.repetitions = repetitions;
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_seed(mut self, base_seed: u64) -> Self {
        self.base_seed = base_seed;
        self
    }

    /// Structural checks. Individual invalid cells (a bad algorithm config,
    /// an empty problem) do not fail the plan; `run_plan` reports and skips
    /// them.
    pub fn validate(&self) -> Result<(), PlanError> {
        if self.instances.is_empty() {
            return Err(PlanError::NoInstances);
        }
        if self.algorithms.is_empty() {
            return Err(PlanError::NoAlgorithms);
        }
        if self.repetitions == 0 {
            return Err(PlanError::NoRepetitions);
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].iter().any(|b| b.label() == a.label()) {
                return Err(PlanError::DuplicateAlgorithm(a.label().to_string()));
            }
        }
        Ok(())
    }

    /// Seed of an (instance, repetition) cell.
    pub fn cell_seed(&self, instance: &InstanceSpec, repetition: u32) -> u64 {
        derive_seed(
            self.base_seed,
            &[
                tag(instance.family().name()),
                instance.seed_part(),
                u64::from(repetition),
            ],
        )
    }

    fn build_problem(&self, instance: &InstanceSpec, cell_seed: u64) -> BuiltProblem {
        match instance {
            InstanceSpec::Artificial { kind, param } => {
                let mut rng = seeded_rng(derive_seed(cell_seed, &[tag("problem")]));
                BuiltProblem::Artificial(ArtificialProblem::generate(
                    *kind, *param, self.range, &mut rng,
                ))
            }
            InstanceSpec::Sut(kind) => BuiltProblem::Sut(SutProblem::new(*kind)),
        }
    }
}

enum BuiltProblem {
    Artificial(ArtificialProblem),
    Sut(SutProblem),
}

impl BuiltProblem {
    fn as_problem(&self) -> &dyn Problem {
        match self {
            BuiltProblem::Artificial(p) => p,
            BuiltProblem::Sut(p) => p,
        }
    }

    /// Manifest text: optima for artificial problems, input domains and
    /// target names for SUTs.
    fn describe(&self) -> String {
        match self {
            BuiltProblem::Artificial(p) => {
                let optima: Vec<String> = p.optima().iter().map(u32::to_string).collect();
                format!(
                    "range={} infeasible={} optima={}",
                    p.range(),
                    p.infeasible_count(),
                    optima.join(",")
                )
            }
            BuiltProblem::Sut(p) => {
                let domains: Vec<String> = p
                    .input_domains()
                    .iter()
                    .map(|d| format!("{:?}[{},{}]", d.kind, d.lo, d.hi).to_lowercase())
                    .collect();
                let targets: Vec<String> = p.targets().iter().map(ToString::to_string).collect();
                format!("inputs={} targets={}", domains.join(";"), targets.join(","))
            }
        }
    }
}

/// A concrete problem instance as seen by the algorithms of one cell.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    pub family: Family,
    pub instance: String,
    pub repetition: u32,
    pub cell_seed: u64,
    pub targets: usize,
    pub feasible_targets: usize,
    /// Optima for artificial problems, target names for SUTs.
    pub description: String,
}

/// A cell that was not run, and why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedCell {
    pub family: Family,
    pub instance: String,
    pub algorithm: String,
    pub reason: String,
}

impl fmt::Display for SkippedCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "skipped {} {} {}: {}",
            self.family, self.instance, self.algorithm, self.reason
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub plan: ExperimentPlan,
    /// Raw runs ordered by instance, repetition, then algorithm in plan
    /// order.
    pub runs: Vec<RunRecord>,
    pub instances: Vec<InstanceRecord>,
    pub summaries: Vec<SummaryRow>,
    pub pairwise: Vec<PairwiseRow>,
    pub skipped: Vec<SkippedCell>,
}

impl ExperimentResult {
    pub fn runs_for<'a>(
        &'a self,
        instance: &'a str,
        algorithm: &'a str,
    ) -> impl Iterator<Item = &'a RunRecord> + 'a {
        self.runs
            .iter()
            .filter(move |r| r.instance == instance && r.algorithm == algorithm)
    }

    pub fn summary(&self, instance: &str, algorithm: &str) -> Option<&SummaryRow> {
        self.summaries
            .iter()
            .find(|s| s.instance == instance && s.algorithm == algorithm)
    }

    pub fn pair(&self, instance: &str, a: &str, b: &str) -> Option<&PairwiseRow> {
        self.pairwise
            .iter()
            .find(|p| p.instance == instance && p.algorithm_a == a && p.algorithm_b == b)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error("run failed: {0}")]
    Search(#[from] SearchError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv { path: String, source: csv::Error },
}

struct Cell<'a> {
    instance: &'a InstanceSpec,
    repetition: u32,
}

struct CellOutcome {
    instance: InstanceRecord,
    runs: Vec<RunRecord>,
}

fn run_cell(
    plan: &ExperimentPlan,
    cell: &Cell<'_>,
    algorithms: &[AlgorithmSpec],
) -> Result<CellOutcome, SearchError> {
    let seed = plan.cell_seed(cell.instance, cell.repetition);
    let built = plan.build_problem(cell.instance, seed);
    let problem = built.as_problem();
    let family = cell.instance.family();
    let label = cell.instance.label();
    let (targets, feasible) = (problem.target_count(), problem.feasible_target_count());
    let mut runs = Vec::with_capacity(algorithms.len());
    for algorithm in algorithms {
        let run_seed = derive_seed(seed, &[tag(algorithm.label())]);
        let result = algorithm.run(problem, plan.budget, run_seed)?;
        runs.push(RunRecord::from_result(
            family,
            &label,
            targets,
            feasible,
            algorithm.label(),
            cell.repetition,
            run_seed,
            &result,
        ));
    }
    let instance = InstanceRecord {
        family,
        instance: label,
        repetition: cell.repetition,
        cell_seed: seed,
        targets,
        feasible_targets: feasible,
        description: built.describe(),
    };
    Ok(CellOutcome { instance, runs })
}

#[cfg(feature = "parallel")]
fn execute<T: Send, F: Fn(&Cell<'_>) -> T + Sync>(
    cells: &[Cell<'_>],
    execution: Execution,
    f: F,
) -> Vec<T> {
    use rayon::prelude::*;
    match execution {
        Execution::Parallel => cells.par_iter().map(&f).collect(),
        Execution::Sequential => cells.iter().map(&f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn execute<T, F: Fn(&Cell<'_>) -> T>(cells: &[Cell<'_>], _execution: Execution, f: F) -> Vec<T> {
    cells.iter().map(&f).collect()
}

/// Runs every cell of `plan` and aggregates the results.
///
/// Cells whose algorithm configuration or problem parameters are invalid are
/// listed in `skipped` rather than failing the whole plan. Output is
/// identical whichever `execution` mode is used.
pub fn run_plan(
    plan: &ExperimentPlan,
    execution: Execution,
) -> Result<ExperimentResult, HarnessError> {
    plan.validate()?;
    let mut skipped = Vec::new();
    let mut algorithms = Vec::new();
    for a in &plan.algorithms {
        match a.validate() {
            Ok(()) => algorithms.push(*a),
            Err(e) => {
                for instance in &plan.instances {
                    skipped.push(SkippedCell {
                        family: instance.family(),
                        instance: instance.label(),
                        algorithm: a.label().to_string(),
                        reason: e.to_string(),
                    });
                }
            }
        }
    }
    let mut cells = Vec::new();
    for instance in &plan.instances {
        if let Err(reason) = instance.validate() {
            for a in &plan.algorithms {
                skipped.push(SkippedCell {
                    family: instance.family(),
                    instance: instance.label(),
                    algorithm: a.label().to_string(),
                    reason: reason.clone(),
                });
            }
            continue;
        }
        if algorithms.is_empty() {
            continue;
        }
        for repetition in 0..plan.repetitions {
            cells.push(Cell {
                instance,
                repetition,
            });
        }
    }

    let outcomes = execute(&cells, execution, |cell| run_cell(plan, cell, &algorithms));
    let mut runs = Vec::with_capacity(cells.len() * algorithms.len());
    let mut instances = Vec::with_capacity(cells.len());
    for outcome in outcomes {
        let outcome = outcome?;
        runs.extend(outcome.runs);
        instances.push(outcome.instance);
    }
    let (summaries, pairwise) = summarize(&runs);
    Ok(ExperimentResult {
        plan: plan.clone(),
        runs,
        instances,
        summaries,
        pairwise,
        skipped,
    })
}
