use rand::Rng;

use super::{mutate, SearchContext, SearchError, SearchResult};
use crate::archive::Archive;
use crate::budget::Budget;
use crate::problems::{random_test, Problem};
use crate::schedule::ParameterSchedule;
use crate::types::HeuristicVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MioConfig {
    pub schedule: ParameterSchedule,
    pub fds_enabled: bool,
}

impl Default for MioConfig {
    fn default() -> Self {
        Self {
            schedule: ParameterSchedule::default(),
            fds_enabled: true,
        }
    }
}

impl MioConfig {
    pub fn without_fds() -> Self {
        Self {
            fds_enabled: false,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        let s = &self.schedule;
        let probability = |p: f64| (0.0..=1.0).contains(&p);
        if !probability(s.focus_fraction) {
            return Err(SearchError::Config(format!(
                "focus fraction {} not in [0, 1]",
                s.focus_fraction
            )));
        }
        if !probability(s.pr_start) || !probability(s.pr_end) {
            return Err(SearchError::Config(
                "random-sampling probabilities must lie in [0, 1]".into(),
            ));
        }
        if s.n_start == 0 || s.n_end == 0 {
            return Err(SearchError::Config(
                "population capacities must be at least 1".into(),
            ));
        }
        if s.m_start == 0 || s.m_end == 0 {
            return Err(SearchError::Config(
                "mutation counts must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

/// Runs MIO until the budget is spent.
///
/// Each step either samples a fresh random test (probability `Pr(t)`, and
/// always while the archive is empty) or draws a test from the archive and
/// follows a lineage of up to `m(t)` mutants. Every mutant is evaluated and
/// offered to the archive; the lineage moves on to a mutant unless the
/// current test (initially the sampled parent) is at least as good on every
/// target. After each evaluation
/// the archive is shrunk to the current capacity `n(t)`.
pub fn run_mio<P: Problem + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    config: &MioConfig,
    budget: Budget,
    rng: &mut R,
) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let schedule = config.schedule;
    let archive =
        Archive::new(problem.target_count()).with_feedback_directed_sampling(config.fds_enabled);
    let mut ctx = SearchContext::new(problem, budget, archive);

    while !ctx.exhausted() {
        let t = ctx.elapsed();
        let capacity = schedule.capacity(t);
        let explore = ctx.archive().is_empty() || rng.gen_bool(schedule.random_probability(t));
        if explore {
            let test = random_test(problem, rng);
            ctx.evaluate(&test, capacity)?;
            let capacity = schedule.capacity(ctx.elapsed());
            ctx.archive_mut().shrink_to(capacity);
            continue;
        }

        let (mut current, parent_h) = ctx.archive_mut().sample_scored(rng)?;
        let mut current_h = HeuristicVector::clone(&parent_h);
        let lineage = schedule.mutations(t);
        for _ in 0..lineage {
            let mutant = mutate(&current, problem, rng);
            let capacity = schedule.capacity(ctx.elapsed());
            let Some(h) = ctx.evaluate(&mutant, capacity)? else {
                break;
            };
            let capacity = schedule.capacity(ctx.elapsed());
            ctx.archive_mut().shrink_to(capacity);
            if !current_h.subsumes(&h) {
                current = mutant;
                current_h = h;
            }
        }
    }
    Ok(ctx.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{ArtificialProblem, LandscapeKind};
    use crate::seed::seeded_rng;

    #[test]
    fn zero_budget_does_nothing() {
        let p = ArtificialProblem::with_optima(LandscapeKind::Gradient, 1000, vec![3], 0);
        let r = run_mio(
            &p,
            &MioConfig::default(),
            Budget::new(0),
            &mut seeded_rng(1),
        )
        .unwrap();
        assert_eq!(r.evaluations, 0);
        assert!(r.suite.is_empty());
        assert!(r.trace.is_empty());
    }

    #[test]
    fn spends_exact_budget() {
        let mut rng = seeded_rng(5);
        let p = ArtificialProblem::generate(LandscapeKind::Plateau, 20, 1000, &mut rng);
        let r = run_mio(&p, &MioConfig::default(), Budget::new(777), &mut rng).unwrap();
        assert_eq!(r.evaluations, 777);
        assert_eq!(r.trace.len(), 777);
        assert!(r.trace.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn single_gradient_target_is_almost_always_covered() {
        let covered = (0..100)
            .filter(|&seed| {
                let mut rng = seeded_rng(seed);
                let p = ArtificialProblem::generate(LandscapeKind::Gradient, 1, 1000, &mut rng);
                let r = run_mio(&p, &MioConfig::default(), Budget::new(1000), &mut rng).unwrap();
                r.covered() == 1
            })
            .count();
        assert!(covered >= 95, "{covered}/100");
    }

    #[test]
    fn same_seed_same_run() {
        let run = || {
            let mut rng = seeded_rng(42);
            let p = ArtificialProblem::generate(LandscapeKind::Deceptive, 10, 1000, &mut rng);
            run_mio(&p, &MioConfig::default(), Budget::new(1000), &mut rng).unwrap()
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn focused_degenerate_config_behaves_like_parallel_hill_climbers() {
        let config = MioConfig {
            schedule: ParameterSchedule {
                focus_fraction: 0.0,
                n_start: 1,
                ..ParameterSchedule::default()
            },
            fds_enabled: true,
        };
        for t in [1e-6, 0.1, 0.5, 1.0] {
            assert_eq!(
                config.schedule.random_probability(t),
                config.schedule.pr_end
            );
            assert_eq!(config.schedule.capacity(t), 1);
        }
        let mut rng = seeded_rng(9);
        let p = ArtificialProblem::generate(LandscapeKind::Gradient, 5, 1000, &mut rng);
        let r = run_mio(&p, &config, Budget::new(500), &mut rng).unwrap();
        assert_eq!(r.evaluations, 500);
    }

    #[test]
    fn rejects_invalid_config() {
        let mut config = MioConfig::default();
        config.schedule.n_end = 0;
        let p = ArtificialProblem::with_optima(LandscapeKind::Gradient, 10, vec![1], 0);
        assert!(matches!(
            run_mio(&p, &config, Budget::new(10), &mut seeded_rng(0)),
            Err(SearchError::Config(_))
        ));
    }
}
