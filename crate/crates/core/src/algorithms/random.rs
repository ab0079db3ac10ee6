use rand::Rng;

use super::{SearchContext, SearchError, SearchResult};
use crate::archive::Archive;
use crate::budget::Budget;
use crate::problems::{random_test, Problem};

/// Samples uniformly random tests until the budget is spent, keeping the
/// best ones in an archive.
pub fn run_random<P: Problem + ?Sized, R: Rng + ?Sized>(
    problem: &P,
    budget: Budget,
    rng: &mut R,
) -> Result<SearchResult, SearchError> {
    let mut ctx = SearchContext::new(problem, budget, Archive::new(problem.target_count()));
    while !ctx.exhausted() {
        let test = random_test(problem, rng);
        ctx.evaluate(&test, 1)?;
    }
    Ok(ctx.finish())
}
