use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("evaluation budget of {max} exhausted")]
pub struct BudgetExhausted {
    pub max: u64,
}

/// Fitness-evaluation budget. One evaluation is one execution of a single
/// test against all targets; search time is measured in these units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    max: u64,
    used: u64,
}

impl Budget {
    pub fn new(max_evaluations: u64) -> Self {
        Self {
            max: max_evaluations,
            used: 0,
        }
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max
    }

    /// Charges one evaluation and reports whether any budget is left
    /// afterwards.
    pub fn consume(&mut self) -> Result<bool, BudgetExhausted> {
        if self.used >= self.max {
            return Err(BudgetExhausted { max: self.max });
        }
        self.used += 1;
        Ok(self.used < self.max)
    }

    /// Elapsed fraction of the budget in `[0, 1]`. A zero budget counts as
    /// fully elapsed.
    pub fn elapsed(&self) -> f64 {
        if self.max == 0 {
            1.0
        } else {
            self.used as f64 / self.max as f64
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_evaluation_leaves_budget() {
        let mut b = Budget::new(1000);
        assert_eq!(b.consume(), Ok(true));
        assert_eq!(b.used(), 1);
    }

    #[test]
    fn last_evaluation_reports_no_remaining() {
        let mut b = Budget {
            max: 1000,
            used: 999,
        };
        assert_eq!(b.consume(), Ok(false));
        assert_eq!(b.used(), 1000);
        assert!(b.is_exhausted());
    }

    #[test]
    fn exhausted_budget_errors() {
        let mut b = Budget {
            max: 1000,
            used: 1000,
        };
        assert_eq!(b.consume(), Err(BudgetExhausted { max: 1000 }));
        assert_eq!(b.used(), 1000);
    }

    #[test]
    fn elapsed_fraction() {
        let mut b = Budget::new(4);
        assert_eq!(b.elapsed(), 0.0);
        b.consume().unwrap();
        assert_eq!(b.elapsed(), 0.25);
        assert_eq!(Budget::new(0).elapsed(), 1.0);
    }
}
