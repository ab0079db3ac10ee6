//! Instrumented numerical functions exposed as search problems.
//!
//! Targets are the function's statements followed by a true/false pair per
//! branch. Statements score 1 when executed and 0 otherwise; branch outcomes
//! are scored from branch distance by the tracer.

use super::branch::Tracer;
use super::{expint, gammq, triangle, InputDomain, Problem, ProblemError};
use crate::types::{HeuristicVector, TestCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SutKind {
    Expint,
    Gammq,
    Triangle,
}

impl SutKind {
    pub const ALL: [SutKind; 3] = [SutKind::Expint, SutKind::Gammq, SutKind::Triangle];

    pub fn name(self) -> &'static str {
        match self {
            Self::Expint => "expint",
            Self::Gammq => "gammq",
            Self::Triangle => "triangle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    fn shape(self) -> (usize, usize) {
        match self {
            Self::Expint => (expint::STATEMENTS, expint::BRANCHES),
            Self::Gammq => (gammq::STATEMENTS, gammq::BRANCHES),
            Self::Triangle => (triangle::STATEMENTS, triangle::BRANCHES),
        }
    }
}

const EXPINT_DOMAINS: [InputDomain; 2] = [
    InputDomain::integer(-10, 50),
    InputDomain::real(-10.0, 50.0),
];
const GAMMQ_DOMAINS: [InputDomain; 2] = [
    InputDomain::real(-10.0, 50.0),
    InputDomain::real(-10.0, 50.0),
];
const TRIANGLE_DOMAINS: [InputDomain; 3] = [
    InputDomain::integer(-1000, 1000),
    InputDomain::integer(-1000, 1000),
    InputDomain::integer(-1000, 1000),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    Statement(usize),
    BranchTrue(usize),
    BranchFalse(usize),
}

impl std::fmt::Display for TargetKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Statement(s) => write!(f, "S{s}"),
            Self::BranchTrue(b) => write!(f, "B{b}T"),
            Self::BranchFalse(b) => write!(f, "B{b}F"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SutProblem {
    kind: SutKind,
}

impl SutProblem {
    pub fn new(kind: SutKind) -> Self {
        Self { kind }
    }

    pub fn kind(&self) -> SutKind {
        self.kind
    }

    pub fn statement_count(&self) -> usize {
        self.kind.shape().0
    }

    pub fn branch_count(&self) -> usize {
        self.kind.shape().1
    }

    /// Target layout: statements, then a true/false pair per branch.
    pub fn targets(&self) -> Vec<TargetKind> {
        let (s, b) = self.kind.shape();
        (0..s)
            .map(TargetKind::Statement)
            .chain((0..b).flat_map(|b| [TargetKind::BranchTrue(b), TargetKind::BranchFalse(b)]))
            .collect()
    }

    /// Executes the function on `inputs`, returning the trace. Faults end
    /// execution early; the trace covers whatever ran before.
    pub fn execute(&self, inputs: &[f64]) -> Tracer {
        let (s, b) = self.kind.shape();
        let mut t = Tracer::new(s, b);
        match self.kind {
            SutKind::Expint => {
                let _ = expint::expint(&mut t, inputs[0] as i64, inputs[1]);
            }
            SutKind::Gammq => {
                let _ = gammq::gammq(&mut t, inputs[0], inputs[1]);
            }
            SutKind::Triangle => {
                triangle::classify(&mut t, inputs[0] as i64, inputs[1] as i64, inputs[2] as i64);
            }
        }
        t
    }
}

impl Problem for SutProblem {
    fn target_count(&self) -> usize {
        let (s, b) = self.kind.shape();
        s + 2 * b
    }

    fn id_count(&self) -> usize {
        1
    }

    fn input_domains(&self) -> &[InputDomain] {
        match self.kind {
            SutKind::Expint => &EXPINT_DOMAINS,
            SutKind::Gammq => &GAMMQ_DOMAINS,
            SutKind::Triangle => &TRIANGLE_DOMAINS,
        }
    }

    fn evaluate(&self, test: &TestCase) -> Result<HeuristicVector, ProblemError> {
        self.validate(test)?;
        Ok(HeuristicVector::new(
            self.execute(&test.inputs).heuristics(),
        ))
    }
}
