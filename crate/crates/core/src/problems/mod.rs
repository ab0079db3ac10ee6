//! Benchmark problems: synthetic fitness landscapes and instrumented
//! numerical functions.

mod artificial;
pub mod branch;
mod expint;
mod gammq;
mod sut;
mod triangle;

use rand::Rng;
use thiserror::Error;

use crate::types::{HeuristicVector, TestCase};

pub use artificial::{ArtificialProblem, LandscapeKind, FEASIBLE_IN_INFEASIBLE};
pub use sut::{SutKind, SutProblem, TargetKind};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("test id {id} out of range, problem has {ids} entry points")]
    IdOutOfRange { id: usize, ids: usize },
    #[error("expected {expected} inputs, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("input {index} = {value} outside [{lo}, {hi}]")]
    InputOutOfRange {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    Integer,
    Real,
}

/// Closed range an input is drawn from and clamped to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputDomain {
    pub lo: f64,
    pub hi: f64,
    pub kind: InputKind,
}

impl InputDomain {
    pub const fn integer(lo: i64, hi: i64) -> Self {
        Self {
            lo: lo as f64,
            hi: hi as f64,
            kind: InputKind::Integer,
        }
    }

    pub const fn real(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            kind: InputKind::Real,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            InputKind::Integer => rng.gen_range(self.lo as i64..=self.hi as i64) as f64,
            InputKind::Real => rng.gen_range(self.lo..=self.hi),
        }
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.lo..=self.hi).contains(&x) && (self.kind == InputKind::Real || x.fract() == 0.0)
    }
}

/// A system under test as seen by the search algorithms.
pub trait Problem: Send + Sync {
    /// Total number of targets `z`.
    fn target_count(&self) -> usize;

    /// Targets that some input can cover; coverage fractions are reported
    /// against this.
    fn feasible_target_count(&self) -> usize {
        self.target_count()
    }

    /// Number of distinct entry points a test may call.
    fn id_count(&self) -> usize;

    fn input_domains(&self) -> &[InputDomain];

    /// Runs `test` and scores it against every target.
    fn evaluate(&self, test: &TestCase) -> Result<HeuristicVector, ProblemError>;

    fn validate(&self, test: &TestCase) -> Result<(), ProblemError> {
        if test.id >= self.id_count() {
            return Err(ProblemError::IdOutOfRange {
                id: test.id,
                ids: self.id_count(),
            });
        }
        let domains = self.input_domains();
        if test.inputs.len() != domains.len() {
            return Err(ProblemError::Arity {
                expected: domains.len(),
                got: test.inputs.len(),
            });
        }
        for (index, (&value, d)) in test.inputs.iter().zip(domains).enumerate() {
            if !d.contains(value) {
                return Err(ProblemError::InputOutOfRange {
                    index,
                    value,
                    lo: d.lo,
                    hi: d.hi,
                });
            }
        }
        Ok(())
    }
}

/// Uniformly random test: id over all entry points, each input over its
/// domain.
pub fn random_test<P: Problem + ?Sized, R: Rng + ?Sized>(problem: &P, rng: &mut R) -> TestCase {
    let id = rng.gen_range(0..problem.id_count());
    let inputs = problem
        .input_domains()
        .iter()
        .map(|d| d.sample(rng))
        .collect();
    TestCase::new(id, inputs)
}

pub fn target_count<P: Problem + ?Sized>(problem: &P) -> usize {
    problem.target_count()
}
