//! MIO and the three baselines it is compared against.
//!
//! All algorithms share the same random sampling, mutation operator and
//! archive, and pay one unit of budget per test execution, so that
//! comparisons isolate the search strategy itself.

mod mio;
mod mosa;
mod random;
pub mod sorting;
mod wts;

use rand::Rng;
use thiserror::Error;

use crate::archive::{Archive, ArchiveError};
use crate::budget::Budget;
use crate::problems::{random_test, Problem, ProblemError};
use crate::types::{HeuristicVector, TestCase};

pub use mio::{run_mio, MioConfig};
pub use mosa::{run_mosa, MosaConfig};
pub use random::run_random;
pub use wts::{run_wts, WtsConfig};

/// Probability of the disruptive mutation that re-draws id and inputs.
pub const DISRUPTIVE_MUTATION_PROBABILITY: f64 = 0.01;
/// Largest exponent `i` in the `±2^i` input perturbation.
pub const MAX_STEP_EXPONENT: u32 = 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Archive(#[from] ArchiveError),
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Outcome of one search run.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// One test per covered target, deduplicated.
    pub suite: Vec<TestCase>,
    /// Covered-target count after each evaluation.
    pub trace: Vec<u32>,
    pub evaluations: u64,
    pub covered_targets: Vec<usize>,
    /// Sum over targets of the best heuristic reached.
    pub heuristic_sum: f64,
}

impl SearchResult {
    pub fn covered(&self) -> usize {
        self.covered_targets.len()
    }
}

/// Budget, archive and trace of a run in progress. Fitness values are only
/// handed out after the evaluation has been charged.
pub(crate) struct SearchContext<'a, P: Problem + ?Sized> {
    problem: &'a P,
    budget: Budget,
    archive: Archive,
    trace: Vec<u32>,
}

impl<'a, P: Problem + ?Sized> SearchContext<'a, P> {
    pub fn new(problem: &'a P, budget: Budget, archive: Archive) -> Self {
        let trace = Vec::with_capacity(budget.max().min(1 << 20) as usize);
        Self {
            problem,
            budget,
            archive,
            trace,
        }
    }

    pub fn exhausted(&self) -> bool {
        self.budget.is_exhausted()
    }

    pub fn elapsed(&self) -> f64 {
        self.budget.elapsed()
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn archive_mut(&mut self) -> &mut Archive {
        &mut self.archive
    }

    /// Executes `test`, offers it to the archive with per-target `capacity`
    /// and records the trace. Returns `None` once the budget is spent.
    pub fn evaluate(
        &mut self,
        test: &TestCase,
        capacity: usize,
    ) -> Result<Option<HeuristicVector>, SearchError> {
        if self.budget.consume().is_err() {
            return Ok(None);
        }
        let h = self.problem.evaluate(test)?;
        self.archive.save(test, &h, capacity)?;
        self.trace.push(self.archive.covered_count() as u32);
        Ok(Some(h))
    }

    pub fn finish(self) -> SearchResult {
        SearchResult {
            suite: self.archive.extract_suite(),
            covered_targets: self.archive.covered_targets(),
            heuristic_sum: self.archive.heuristic_sum(),
            evaluations: self.budget.used(),
            trace: self.trace,
        }
    }
}

/// The shared mutation operator.
///
/// With probability [`DISRUPTIVE_MUTATION_PROBABILITY`] the test is replaced
/// by a fresh random one (new id and inputs). Otherwise inputs are perturbed
/// by `±2^i`, `i` uniform in `0..=10`, and clamped to their domain. Each input
/// is perturbed with probability `1/len`, and at least one always is.
pub fn mutate<P: Problem + ?Sized, R: Rng + ?Sized>(
    test: &TestCase,
    problem: &P,
    rng: &mut R,
) -> TestCase {
    if rng.gen_bool(DISRUPTIVE_MUTATION_PROBABILITY) {
        let mut fresh = random_test(problem, rng);
        fresh.size = test.size;
        return fresh;
    }
    let domains = problem.input_domains();
    let mut out = test.clone();
    let len = out.inputs.len();
    if len == 0 {
        return out;
    }
    let mut touched = false;
    for (x, domain) in out.inputs.iter_mut().zip(domains) {
        if len == 1 || rng.gen_bool(1.0 / len as f64) {
            *x = perturb(*x, domain, rng);
            touched = true;
        }
    }
    if !touched {
        let i = rng.gen_range(0..len);
        out.inputs[i] = perturb(out.inputs[i], &domains[i], rng);
    }
    out
}

fn perturb<R: Rng + ?Sized>(x: f64, domain: &crate::problems::InputDomain, rng: &mut R) -> f64 {
    let step = f64::from(1u32 << rng.gen_range(0..=MAX_STEP_EXPONENT));
    let delta = if rng.gen_bool(0.5) { step } else { -step };
    domain.clamp(x + delta)
}

/// Applies a single `±2^exponent` step, exposed for testing the operator's
/// arithmetic and clamping.
pub fn step_input(
    x: f64,
    exponent: u32,
    positive: bool,
    domain: &crate::problems::InputDomain,
) -> f64 {
    let step = f64::from(1u32 << exponent);
    domain.clamp(if positive { x + step } else { x - step })
}
