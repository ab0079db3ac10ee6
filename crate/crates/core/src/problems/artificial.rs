//! Synthetic landscapes with independent targets.
//!
//! A test is an entry-point id plus one integer `x` in `[0, r]`. Target `k`
//! can only be scored by tests with `id == k`; every other target sees 0.
//! Each feasible target has a single optimum `g_k` drawn uniformly from
//! `[0, r]`, and the landscape around it is one of four shapes.

use rand::Rng;

use super::{InputDomain, Problem, ProblemError};
use crate::types::{HeuristicVector, TestCase};

/// Number of gradient targets placed in front of the infeasible ones.
pub const FEASIBLE_IN_INFEASIBLE: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LandscapeKind {
    /// Smooth slope towards the optimum from both sides.
    Gradient,
    /// Slope below the optimum, flat plateau above it.
    Plateau,
    /// Slope below the optimum, slope away from it (towards `r`) above.
    Deceptive,
    /// Ten gradient targets followed by targets stuck at a constant score.
    Infeasible,
}

impl LandscapeKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Gradient => "gradient",
            Self::Plateau => "plateau",
            Self::Deceptive => "deceptive",
            Self::Infeasible => "infeasible",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "gradient" => Some(Self::Gradient),
            "plateau" => Some(Self::Plateau),
            "deceptive" => Some(Self::Deceptive),
            "infeasible" => Some(Self::Infeasible),
            _ => None,
        }
    }
}

/// Maps a distance onto `(0, 1]`.
pub fn rho(d: f64) -> f64 {
    1.0 / (1.0 + d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ArtificialProblem {
    kind: LandscapeKind,
    range: u32,
    optima: Vec<u32>,
    infeasible: usize,
    domains: [InputDomain; 1],
}

impl ArtificialProblem {
    /// Builds an instance with explicit optima. For the infeasible kind the
    /// optima are those of the feasible targets only.
    pub fn with_optima(
        kind: LandscapeKind,
        range: u32,
        optima: Vec<u32>,
        infeasible: usize,
    ) -> Self {
        assert!(optima.iter().all(|&g| g <= range), "optimum outside [0, r]");
        let infeasible = if kind == LandscapeKind::Infeasible {
            infeasible
        } else {
            0
        };
        Self {
            kind,
            range,
            optima,
            infeasible,
            domains: [InputDomain::integer(0, i64::from(range))],
        }
    }

    /// Random instance with `z` targets (non-infeasible kinds).
    pub fn generate<R: Rng + ?Sized>(
        kind: LandscapeKind,
        z: usize,
        range: u32,
        rng: &mut R,
    ) -> Self {
        if kind == LandscapeKind::Infeasible {
            return Self::generate_infeasible(z, range, rng);
        }
        let optima = (0..z).map(|_| rng.gen_range(0..=range)).collect();
        Self::with_optima(kind, range, optima, 0)
    }

    /// Ten gradient targets plus `infeasible` constant targets.
    pub fn generate_infeasible<R: Rng + ?Sized>(
        infeasible: usize,
        range: u32,
        rng: &mut R,
    ) -> Self {
        let optima = (0..FEASIBLE_IN_INFEASIBLE)
            .map(|_| rng.gen_range(0..=range))
            .collect();
        Self::with_optima(LandscapeKind::Infeasible, range, optima, infeasible)
    }

    pub fn kind(&self) -> LandscapeKind {
        self.kind
    }

    pub fn range(&self) -> u32 {
        self.range
    }

    pub fn optima(&self) -> &[u32] {
        &self.optima
    }

    pub fn infeasible_count(&self) -> usize {
        self.infeasible
    }

    /// Heuristic of target `k` for input `x`, assuming the test's id is `k`.
    pub fn score(&self, k: usize, x: u32) -> f64 {
        let Some(&g) = self.optima.get(k) else {
            // Infeasible targets sit after the feasible ones.
            return rho(1.0);
        };
        let (g, x, r) = (f64::from(g), f64::from(x), f64::from(self.range));
        match self.kind {
            LandscapeKind::Gradient | LandscapeKind::Infeasible => rho((x - g).abs()),
            LandscapeKind::Plateau if g >= x => rho(g - x),
            LandscapeKind::Plateau => rho(0.1 * r),
            LandscapeKind::Deceptive if g >= x => rho(g - x),
            LandscapeKind::Deceptive => rho(1.0 + r - x),
        }
    }
}

impl Problem for ArtificialProblem {
    fn target_count(&self) -> usize {
        self.optima.len() + self.infeasible
    }

    fn feasible_target_count(&self) -> usize {
        self.optima.len()
    }

    fn id_count(&self) -> usize {
        self.target_count()
    }

    fn input_domains(&self) -> &[InputDomain] {
        &self.domains
    }

    fn evaluate(&self, test: &TestCase) -> Result<HeuristicVector, ProblemError> {
        self.validate(test)?;
        let mut values = vec![0.0; self.target_count()];
        values[test.id] = self.score(test.id, test.inputs[0] as u32);
        Ok(HeuristicVector::new(values))
    }
}
