use rand::Rng;

use super::sorting::{select_survivors, Objectives, Standing};
use super::{mutate, SearchContext, SearchError, SearchResult};
use crate::archive::Archive;
use crate::budget::Budget;
use crate::problems::{random_test, Problem};
use crate::types::{HeuristicVector, TestCase};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MosaConfig {
    pub population_size: usize,
    pub tournament_size: usize,
    /// Single-point crossover of input vectors between same-id parents.
    pub crossover: bool,
    pub crossover_probability: f64,
}

impl Default for MosaConfig {
    fn default() -> Self {
        Self {
            population_size: 50,
            tournament_size: 10,
            crossover: false,
            crossover_probability: 0.75,
        }
    }
}

impl MosaConfig {
    pub fn validate(&self) -> Result<(), SearchError> {
        if self.population_size == 0 || self.tournament_size == 0 {
            return Err(SearchError::Config(
                "population and tournament sizes must be positive".into(),
            ));
        }
        if self.tournament_size > self.population_size {
            return Err(SearchError::Config(format!(
                "tournament size {} exceeds population size {}",
                self.tournament_size, self.population_size
            )));
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return Err(SearchError::Config(
                "crossover probability must lie in [0, 1]".into(),
            ));
        }
        Ok(())
    }
}

struct Individual {
    test: TestCase,
    h: HeuristicVector,
}

fn tournament<R: Rng + ?Sized>(standings: &[Standing], size: usize, rng: &mut R) -> usize {
    let mut best = rng.gen_range(0..standings.len());
    for _ in 1..size {
        let c = rng.gen_range(0..standings.len());
        if standings[c].compare(&standings[best]).is_lt() {
            best = c;
        }
    }
    best
}

fn crossover<R: Rng + ?Sized>(a: &TestCase, b: &TestCase, rng: &mut R) -> TestCase {
    let mut child = a.clone();
    if a.id == b.id && a.inputs.len() > 1 {
        let cut = rng.gen_range(1..a.inputs.len());
        child.inputs[cut..].copy_from_slice(&b.inputs[cut..]);
    }
    child
}

/// Ranks `population` on the uncovered targets and keeps the best
/// `keep`, returning their standings in the new order.
fn survive(
    population: Vec<Individual>,
    uncovered: &[usize],
    keep: usize,
) -> (Vec<Individual>, Vec<Standing>) {
    let objs: Vec<Objectives> = population
        .iter()
        .map(|ind| Objectives::restrict(&ind.h, uncovered))
        .collect();
    let sizes: Vec<usize> = population.iter().map(|ind| ind.test.size).collect();
    let chosen = select_survivors(&objs, &sizes, keep);
    let mut slots: Vec<Option<Individual>> = population.into_iter().map(Some).collect();
    let mut survivors = Vec::with_capacity(chosen.len());
    let mut standings = Vec::with_capacity(chosen.len());
    for (i, standing) in chosen {
        if let Some(ind) = slots[i].take() {
            survivors.push(ind);
            standings.push(standing);
        }
    }
    (survivors, standings)
}

/// Many-Objective Sorting Algorithm.
///
/// An NSGA-II style loop over a population of tests where every uncovered
/// target is an objective. Survivor selection uses preference sorting: the
/// best test for each uncovered target is placed in front 0, the rest are
/// ranked by non-dominated sorting with crowding distance as tie-break.
/// Covered targets leave the objective set and their tests live on in the
/// archive.
pub fn run_mosa<P: Problem + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    config: &MosaConfig,
    budget: Budget,
    rng: &mut R,
) -> Result<SearchResult, SearchError> {
    config.validate()?;
    let mut ctx = SearchContext::new(problem, budget, Archive::new(problem.target_count()));

    let mut population = Vec::with_capacity(config.population_size);
    while population.len() < config.population_size {
        let test = random_test(problem, rng);
        match ctx.evaluate(&test, 1)? {
            Some(h) => population.push(Individual { test, h }),
            None => return Ok(ctx.finish()),
        }
    }
    let uncovered = ctx.archive().uncovered_targets();
    let (mut population, mut standings) = survive(population, &uncovered, config.population_size);

    while !ctx.exhausted() {
        let mut offspring = Vec::with_capacity(config.population_size);
        while offspring.len() < config.population_size {
            let parent = tournament(&standings, config.tournament_size, rng);
            let mut child = population[parent].test.clone();
            if config.crossover && rng.gen_bool(config.crossover_probability) {
                let other = tournament(&standings, config.tournament_size, rng);
                child = crossover(&child, &population[other].test, rng);
            }
            let child = mutate(&child, problem, rng);
            match ctx.evaluate(&child, 1)? {
                Some(h) => offspring.push(Individual { test: child, h }),
                None => break,
            }
        }
        if offspring.is_empty() {
            break;
        }
        population.extend(offspring);
        let uncovered = ctx.archive().uncovered_targets();
        (population, standings) = survive(population, &uncovered, config.population_size);
    }
    Ok(ctx.finish())
}
