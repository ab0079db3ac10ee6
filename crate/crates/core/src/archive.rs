//! The MIO archive: one bounded population of tests per target.
//!
//! A population only ever holds tests with a non-zero heuristic for its
//! target. Once any test covers the target the population collapses to that
//! single test and never grows again; later covering tests may only replace
//! it if they are smaller, or equally small with a larger heuristic sum over
//! all targets.
//!
//! Each population also carries a feedback-directed sampling counter that
//! grows every time the population is sampled and resets whenever a strictly
//! better test is admitted, so targets that stopped improving are sampled
//! less and less.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::types::{HeuristicVector, TestCase};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArchiveError {
    #[error("heuristic vector has {got} entries but the archive tracks {expected} targets")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cannot sample from an empty archive")]
    Empty,
}

/// A stored test together with its score for the owning target.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoredTest {
    pub test: TestCase,
    pub h: f64,
    /// Sum of the test's heuristics over all targets, fixed at evaluation.
    pub coverage_sum: f64,
    /// The full vector the test was evaluated to, shared by every
    /// population holding it.
    pub heuristics: Arc<HeuristicVector>,
    /// Insertion stamp, larger is newer.
    age: u64,
}

impl ScoredTest {
    /// True when `self` ranks strictly above `other` in a population:
    /// higher heuristic, or equal heuristic and smaller size.
    fn strictly_better_than(&self, other: &ScoredTest) -> bool {
        self.h > other.h || (self.h == other.h && self.test.size < other.test.size)
    }
}

#[derive(Debug, Clone, Default)]
pub struct TargetPopulation {
    entries: Vec<ScoredTest>,
    covered: bool,
    counter: u64,
}

impl TargetPopulation {
    pub fn entries(&self) -> &[ScoredTest] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_covered(&self) -> bool {
        self.covered
    }

    /// Feedback-directed sampling counter.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn best_h(&self) -> f64 {
        self.entries.iter().map(|e| e.h).fold(0.0, f64::max)
    }

    /// Index of the entry to evict first: lowest h, then largest size, then
    /// oldest.
    fn worst_index(&self) -> Option<usize> {
        self.entries
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.h.total_cmp(&b.h)
                    .then(b.test.size.cmp(&a.test.size))
                    .then(a.age.cmp(&b.age))
            })
            .map(|(i, _)| i)
    }

    fn best(&self) -> Option<&ScoredTest> {
        self.entries.iter().reduce(|best, e| {
            if e.strictly_better_than(best) {
                e
            } else {
                best
            }
        })
    }
}

/// What `save` did for one target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    /// Zero heuristic, already covered with a better test, or not good
    /// enough to displace anything.
    Rejected,
    Added,
    Replaced,
    /// The test covered a target that was not covered before.
    NewlyCovered,
}

impl Admission {
    pub fn admitted(self) -> bool {
        self != Admission::Rejected
    }
}

#[derive(Debug, Clone)]
pub struct Archive {
    populations: Vec<TargetPopulation>,
    covered_count: usize,
    next_age: u64,
    fds: bool,
}

impl Archive {
    pub fn new(target_count: usize) -> Self {
        Self {
            populations: vec![TargetPopulation::default(); target_count],
            covered_count: 0,
            next_age: 0,
            fds: true,
        }
    }

    /// Toggles feedback-directed sampling; without it targets are sampled
    /// uniformly.
    pub fn with_feedback_directed_sampling(mut self, enabled: bool) -> Self {
        self.fds = enabled;
        self
    }

    pub fn target_count(&self) -> usize {
        self.populations.len()
    }

    pub fn population(&self, target: usize) -> &TargetPopulation {
        &self.populations[target]
    }

    pub fn populations(&self) -> &[TargetPopulation] {
        &self.populations
    }

    pub fn covered_count(&self) -> usize {
        self.covered_count
    }

    pub fn is_covered(&self, target: usize) -> bool {
        self.populations[target].covered
    }

    pub fn covered_targets(&self) -> Vec<usize> {
        (0..self.populations.len())
            .filter(|&k| self.populations[k].covered)
            .collect()
    }

    pub fn uncovered_targets(&self) -> Vec<usize> {
        (0..self.populations.len())
            .filter(|&k| !self.populations[k].covered)
            .collect()
    }

    pub fn stored_tests(&self) -> usize {
        self.populations.iter().map(TargetPopulation::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.populations.iter().all(TargetPopulation::is_empty)
    }

    /// Sum over targets of the best heuristic stored for each.
    pub fn heuristic_sum(&self) -> f64 {
        self.populations.iter().map(TargetPopulation::best_h).sum()
    }

    /// Offers an evaluated test to every population. `capacity` is the
    /// current per-target bound for populations that are not covered.
    pub fn save(
        &mut self,
        test: &TestCase,
        h: &HeuristicVector,
        capacity: usize,
    ) -> Result<Vec<Admission>, ArchiveError> {
        if h.len() != self.populations.len() {
            return Err(ArchiveError::DimensionMismatch {
                expected: self.populations.len(),
                got: h.len(),
            });
        }
        let coverage_sum = h.sum();
        let shared = Arc::new(h.clone());
        let mut report = Vec::with_capacity(h.len());
        for k in 0..h.len() {
            let score = h.get(k);
            let outcome = if score <= 0.0 {
                Admission::Rejected
            } else {
                let candidate = ScoredTest {
                    test: test.clone(),
                    h: score,
                    coverage_sum,
                    heuristics: Arc::clone(&shared),
                    age: self.next_age,
                };
                self.offer(k, candidate, capacity.max(1))
            };
            report.push(outcome);
        }
        self.next_age += 1;
        Ok(report)
    }

    fn offer(&mut self, k: usize, candidate: ScoredTest, capacity: usize) -> Admission {
        let pop = &mut self.populations[k];
        if candidate.h >= 1.0 {
            if !pop.covered {
                pop.covered = true;
                pop.entries.clear();
                pop.entries.push(candidate);
                pop.counter = 0;
                self.covered_count += 1;
                return Admission::NewlyCovered;
            }
            let incumbent = &pop.entries[0];
            let shorter = candidate.test.size < incumbent.test.size;
            let broader = candidate.test.size == incumbent.test.size
                && candidate.coverage_sum > incumbent.coverage_sum;
            if shorter || broader {
                pop.entries[0] = candidate;
                return Admission::Replaced;
            }
            return Admission::Rejected;
        }
        if pop.covered {
            return Admission::Rejected;
        }
        if pop.entries.len() < capacity {
            let improves = pop
                .best()
                .is_none_or(|best| candidate.strictly_better_than(best));
            pop.entries.push(candidate);
            if improves {
                pop.counter = 0;
            }
            return Admission::Added;
        }
        let Some(w) = pop.worst_index() else {
            return Admission::Rejected;
        };
        let worst = &pop.entries[w];
        let not_worse = candidate.h > worst.h
            || (candidate.h == worst.h && candidate.test.size <= worst.test.size);
        if !not_worse {
            return Admission::Rejected;
        }
        if candidate.strictly_better_than(worst) {
            pop.counter = 0;
        }
        pop.entries[w] = candidate;
        Admission::Replaced
    }

    /// Picks a population to draw from and returns a copy of one of its
    /// tests.
    ///
    /// Uncovered, non-empty populations are preferred. With feedback-directed
    /// sampling the one with the lowest counter wins (ties at random) and its
    /// counter is bumped; otherwise the choice is uniform. When every
    /// non-empty population is covered, one of them is chosen uniformly.
    pub fn sample<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<TestCase, ArchiveError> {
        self.sample_scored(rng).map(|(test, _)| test)
    }

    /// Like [`Archive::sample`], also returning the heuristics the copied
    /// test was evaluated to.
    pub fn sample_scored<R: Rng + ?Sized>(
        &mut self,
        rng: &mut R,
    ) -> Result<(TestCase, Arc<HeuristicVector>), ArchiveError> {
        let open: Vec<usize> = (0..self.populations.len())
            .filter(|&k| !self.populations[k].covered && !self.populations[k].is_empty())
            .collect();
        let k = if open.is_empty() {
            let closed: Vec<usize> = (0..self.populations.len())
                .filter(|&k| !self.populations[k].is_empty())
                .collect();
            *closed.choose(rng).ok_or(ArchiveError::Empty)?
        } else if self.fds {
            let lowest = open
                .iter()
                .map(|&k| self.populations[k].counter)
                .min()
                .unwrap_or(0);
            let tied: Vec<usize> = open
                .into_iter()
                .filter(|&k| self.populations[k].counter == lowest)
                .collect();
            let k = *tied.choose(rng).ok_or(ArchiveError::Empty)?;
            self.populations[k].counter += 1;
            k
        } else {
            *open.choose(rng).ok_or(ArchiveError::Empty)?
        };
        let entry = self.populations[k]
            .entries
            .choose(rng)
            .ok_or(ArchiveError::Empty)?;
        Ok((entry.test.clone(), Arc::clone(&entry.heuristics)))
    }

    /// Evicts the worst entries of every uncovered population larger than
    /// `capacity`.
    pub fn shrink_to(&mut self, capacity: usize) {
        let capacity = capacity.max(1);
        for pop in self.populations.iter_mut().filter(|p| !p.covered) {
            while pop.entries.len() > capacity {
                if let Some(w) = pop.worst_index() {
                    pop.entries.remove(w);
                }
            }
        }
    }

    /// One test per covered target, with structurally identical tests kept
    /// once. Ordered by the first target each test covers.
    pub fn extract_suite(&self) -> Vec<TestCase> {
        let mut suite: Vec<TestCase> = Vec::new();
        for pop in self.populations.iter().filter(|p| p.covered) {
            let test = &pop.entries[0].test;
            if !suite.contains(test) {
                suite.push(test.clone());
            }
        }
        suite
    }

    #[cfg(test)]
    fn set_counters(&mut self, counters: &[u64]) {
        for (pop, &c) in self.populations.iter_mut().zip(counters) {
            pop.counter = c;
        }
    }
}
