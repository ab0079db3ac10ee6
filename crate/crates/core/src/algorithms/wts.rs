use rand::distributions::WeightedIndex;
use rand::prelude::Distribution;
use rand::Rng;

use super::{mutate, SearchContext, SearchError, SearchResult};
use crate::archive::Archive;
use crate::budget::Budget;
use crate::problems::{random_test, Problem};
use crate::types::{HeuristicVector, TestCase};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WtsConfig {
    pub population_size: usize,
    pub max_suite_size: usize,
    pub crossover_probability: f64,
    pub tournament_size: usize,
    /// Weights of the add / remove / modify suite mutations.
    pub add_weight: f64,
    pub remove_weight: f64,
    pub modify_weight: f64,
    /// Best suites copied unchanged into the next generation.
    pub elitism: usize,
}

impl Default for WtsConfig {
    fn default() -> Self {
        Self {
            population_size: 50,
            max_suite_size: 50,
            crossover_probability: 0.7,
            tournament_size: 10,
            add_weight: 1.0 / 3.0,
            remove_weight: 1.0 / 3.0,
            modify_weight: 1.0 / 3.0,
            elitism: 1,
        }
    }
}

impl WtsConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.population_size == 0 || self.max_suite_size == 0 || self.tournament_size == 0 {
            return Err(SearchError::Config("WTS sizes must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return Err(SearchError::Config(
                "crossover probability must lie in [0, 1]".into(),
            ));
        }
        let weights = [self.add_weight, self.remove_weight, self.modify_weight];
        if weights.iter().any(|w| !(0.0..=1.0).contains(w))
            || (weights.iter().sum::<f64>() - 1.0).abs() > 1e-9
        {
            return Err(SearchError::Config(
                "suite mutation weights must sum to 1".into(),
            ));
        }
        if self.elitism >= self.population_size {
            return Err(SearchError::Config(
                "elitism must be smaller than the population".into(),
            ));
        }
        Ok(())
    }
}

type Members = Vec<(TestCase, HeuristicVector)>;

#[derive(Clone)]
struct Suite {
    tests: Members,
    fitness: f64,
}

impl Suite {
    fn new(tests: Members, targets: usize) -> Self {
        let mut s = Self {
            tests,
            fitness: 0.0,
        };
        s.refresh(targets);
        s
    }

    /// Sum over all targets of `1 - best h in the suite`; lower is better.
    fn refresh(&mut self, targets: usize) {
        let mut best = vec![0.0f64; targets];
        for (_, h) in &self.tests {
            for (b, &v) in best.iter_mut().zip(h.values()) {
                *b = b.max(v);
            }
        }
        self.fitness = best.iter().map(|b| 1.0 - b).sum();
    }
}

enum SuiteMutation {
    Add,
    Remove,
    Modify,
}

fn tournament<R: Rng + ?Sized>(population: &[Suite], size: usize, rng: &mut R) -> usize {
    let mut best = rng.gen_range(0..population.len());
    for _ in 1..size {
        let c = rng.gen_range(0..population.len());
        if population[c].fitness < population[best].fitness {
            best = c;
        }
    }
    best
}

/// Cuts both parents at the same relative position and swaps the tails.
fn crossover<R: Rng + ?Sized>(a: &Suite, b: &Suite, max: usize, rng: &mut R) -> (Members, Members) {
    let alpha: f64 = rng.gen();
    let cut_a = (alpha * a.tests.len() as f64).round() as usize;
    let cut_b = (alpha * b.tests.len() as f64).round() as usize;
    let mut c1: Vec<_> = a.tests[..cut_a]
        .iter()
        .chain(&b.tests[cut_b..])
        .cloned()
        .collect();
    let mut c2: Vec<_> = b.tests[..cut_b]
        .iter()
        .chain(&a.tests[cut_a..])
        .cloned()
        .collect();
    c1.truncate(max);
    c2.truncate(max);
    (c1, c2)
}

/// Whole Test Suite: a GA whose individuals are test suites, minimising the
/// summed distance to covering every target. Every test execution, including
/// those needed to build the initial random suites, is charged to the
/// budget, and every executed test is offered to the archive.
pub fn run_wts<P: Problem + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    config: &WtsConfig,
    budget: Budget,
    rng: &mut R,
) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let z = problem.target_count();
    let mut ctx = SearchContext::new(problem, budget, Archive::new(z));
    let mutation_kind = WeightedIndex::new([
        config.add_weight,
        config.remove_weight,
        config.modify_weight,
    ])
    .map_err(|e| SearchError::Config(e.to_string()))?;

    let mut population: Vec<Suite> = Vec::with_capacity(config.population_size);
    'init: while population.len() < config.population_size {
        let len = rng.gen_range(1..=config.max_suite_size);
        let mut tests = Vec::with_capacity(len);
        for _ in 0..len {
            let test = random_test(problem, rng);
            match ctx.evaluate(&test, 1)? {
                Some(h) => tests.push((test, h)),
                None => {
                    if !tests.is_empty() {
                        population.push(Suite::new(tests, z));
                    }
                    break 'init;
                }
            }
        }
        population.push(Suite::new(tests, z));
    }

    while !ctx.exhausted() && !population.is_empty() {
        population.sort_by(|a, b| a.fitness.total_cmp(&b.fitness));
        let mut next: Vec<Suite> = population.iter().take(config.elitism).cloned().collect();
        'breed: while next.len() < config.population_size {
            let p1 = &population[tournament(&population, config.tournament_size, rng)];
            let p2 = &population[tournament(&population, config.tournament_size, rng)];
            let (c1, c2) = if rng.gen_bool(config.crossover_probability) {
                crossover(p1, p2, config.max_suite_size, rng)
            } else {
                (p1.tests.clone(), p2.tests.clone())
            };
            for mut tests in [c1, c2] {
                let kind = match mutation_kind.sample(rng) {
                    0 => SuiteMutation::Add,
                    1 => SuiteMutation::Remove,
                    _ => SuiteMutation::Modify,
                };
                let mut out_of_budget = false;
                match kind {
                    SuiteMutation::Add if tests.len() < config.max_suite_size => {
                        let test = random_test(problem, rng);
                        match ctx.evaluate(&test, 1)? {
                            Some(h) => tests.push((test, h)),
                            None => out_of_budget = true,
                        }
                    }
                    SuiteMutation::Remove if tests.len() > 1 => {
                        let i = rng.gen_range(0..tests.len());
                        tests.remove(i);
                    }
                    SuiteMutation::Modify if !tests.is_empty() => {
                        let i = rng.gen_range(0..tests.len());
                        let test = mutate(&tests[i].0, problem, rng);
                        match ctx.evaluate(&test, 1)? {
                            Some(h) => tests[i] = (test, h),
                            None => out_of_budget = true,
                        }
                    }
                    _ => {}
                }
                if next.len() < config.population_size {
                    next.push(Suite::new(tests, z));
                }
                if out_of_budget {
                    break 'breed;
                }
            }
        }
        population = next;
    }
    Ok(ctx.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{ArtificialProblem, LandscapeKind, SutKind, SutProblem};
    use crate::seed::seeded_rng;

    #[test]
    fn initial_population_exceeds_small_budget() {
        // 50 suites of expected size 25.5 need ~1275 evaluations, more than
        // the whole budget of 1000.
        let mut rng = seeded_rng(6);
        let p = ArtificialProblem::generate(LandscapeKind::Gradient, 10, 1000, &mut rng);
        let r = run_wts(&p, &WtsConfig::default(), Budget::new(1000), &mut rng).unwrap();
        assert_eq!(r.evaluations, 1000);
    }

    #[test]
    fn zero_budget() {
        let p = SutProblem::new(SutKind::Triangle);
        let r = run_wts(
            &p,
            &WtsConfig::default(),
            Budget::new(0),
            &mut seeded_rng(0),
        )
        .unwrap();
        assert!(r.suite.is_empty());
        assert_eq!(r.evaluations, 0);
    }

    #[test]
    fn evolves_beyond_initialisation() {
        let p = SutProblem::new(SutKind::Triangle);
        let r = run_wts(
            &p,
            &WtsConfig::default(),
            Budget::new(5000),
            &mut seeded_rng(1),
        )
        .unwrap();
        assert_eq!(r.evaluations, 5000);
        assert!(r.trace.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn suite_fitness_sums_distance_to_coverage() {
        let s = Suite::new(
            vec![
                (
                    TestCase::new(0, vec![0.0]),
                    HeuristicVector::new(vec![1.0, 0.2, 0.0]),
                ),
                (
                    TestCase::new(0, vec![1.0]),
                    HeuristicVector::new(vec![0.5, 0.6, 0.0]),
                ),
            ],
            3,
        );
        assert!((s.fitness - (0.0 + 0.4 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn bad_weights_rejected() {
        let config = WtsConfig {
            add_weight: 0.5,
            ..WtsConfig::default()
        };
        assert!(config.validate().is_err());
    }
}
