//! Branch distances and execution tracing for instrumented functions.
//!
//! Every decision in an instrumented function goes through [`Tracer::branch`]
//! with a [`Cond`] carrying the distance to each outcome. A target list is
//! laid out as all statements first, then a true/false pair per branch.

/// Offset added to strict inequalities on integers.
pub const INT_KAPPA: f64 = 1.0;
/// Offset added to strict inequalities on reals.
pub const REAL_KAPPA: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl CmpOp {
    fn negate(self) -> Self {
        match self {
            Self::Eq => Self::Ne,
            Self::Ne => Self::Eq,
            Self::Lt => Self::Ge,
            Self::Le => Self::Gt,
            Self::Gt => Self::Le,
            Self::Ge => Self::Lt,
        }
    }
}

/// One atomic comparison as evaluated at run time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPredicate {
    pub op: CmpOp,
    pub left: f64,
    pub right: f64,
    pub kappa: f64,
}

fn finite_distance(d: f64) -> f64 {
    if d.is_nan() || d.is_infinite() {
        f64::MAX
    } else {
        d
    }
}

impl BranchPredicate {
    pub fn holds(&self) -> bool {
        let (a, b) = (self.left, self.right);
        match self.op {
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Gt => a > b,
            CmpOp::Ge => a >= b,
        }
    }

    /// Distance to making the comparison true; zero exactly when it holds.
    pub fn distance(&self) -> f64 {
        Self::distance_for(self.op, self.left, self.right, self.kappa)
    }

    /// Distance to making the comparison false.
    pub fn negated_distance(&self) -> f64 {
        Self::distance_for(self.op.negate(), self.left, self.right, self.kappa)
    }

    fn distance_for(op: CmpOp, a: f64, b: f64, kappa: f64) -> f64 {
        let pred = BranchPredicate {
            op,
            left: a,
            right: b,
            kappa,
        };
        if pred.holds() {
            return 0.0;
        }
        let raw = match op {
            CmpOp::Eq => (a - b).abs(),
            CmpOp::Ne => kappa,
            CmpOp::Lt => a - b + kappa,
            CmpOp::Le => a - b,
            CmpOp::Gt => b - a + kappa,
            CmpOp::Ge => b - a,
        };
        // NaN operands make every ordered comparison false; keep the
        // distance positive and finite so the heuristic stays above zero.
        let d = finite_distance(raw);
        if d > 0.0 {
            d
        } else {
            f64::MIN_POSITIVE
        }
    }
}

/// A (possibly compound) condition with its distance to either outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cond {
    pub holds: bool,
    pub d_true: f64,
    pub d_false: f64,
}

impl Cond {
    pub fn from_predicate(p: BranchPredicate) -> Self {
        Self {
            holds: p.holds(),
            d_true: p.distance(),
            d_false: p.negated_distance(),
        }
    }

    fn real(op: CmpOp, a: f64, b: f64) -> Self {
        Self::from_predicate(BranchPredicate {
            op,
            left: a,
            right: b,
            kappa: REAL_KAPPA,
        })
    }

    fn int(op: CmpOp, a: i64, b: i64) -> Self {
        Self::from_predicate(BranchPredicate {
            op,
            left: a as f64,
            right: b as f64,
            kappa: INT_KAPPA,
        })
    }

    pub fn eq(a: f64, b: f64) -> Self {
        Self::real(CmpOp::Eq, a, b)
    }
    pub fn lt(a: f64, b: f64) -> Self {
        Self::real(CmpOp::Lt, a, b)
    }
    pub fn le(a: f64, b: f64) -> Self {
        Self::real(CmpOp::Le, a, b)
    }
    pub fn gt(a: f64, b: f64) -> Self {
        Self::real(CmpOp::Gt, a, b)
    }
    pub fn int_eq(a: i64, b: i64) -> Self {
        Self::int(CmpOp::Eq, a, b)
    }
    pub fn int_ne(a: i64, b: i64) -> Self {
        Self::int(CmpOp::Ne, a, b)
    }
    pub fn int_lt(a: i64, b: i64) -> Self {
        Self::int(CmpOp::Lt, a, b)
    }
    pub fn int_le(a: i64, b: i64) -> Self {
        Self::int(CmpOp::Le, a, b)
    }
    pub fn int_gt(a: i64, b: i64) -> Self {
        Self::int(CmpOp::Gt, a, b)
    }

    pub fn and(self, other: Cond) -> Cond {
        Cond {
            holds: self.holds && other.holds,
            d_true: finite_distance(self.d_true + other.d_true),
            d_false: self.d_false.min(other.d_false),
        }
    }

    pub fn or(self, other: Cond) -> Cond {
        Cond {
            holds: self.holds || other.holds,
            d_true: self.d_true.min(other.d_true),
            d_false: finite_distance(self.d_false + other.d_false),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct BranchRecord {
    reached: bool,
    taken_true: bool,
    taken_false: bool,
    last_d_true: f64,
    last_d_false: f64,
}

/// Records which statements ran and how close each branch came to each
/// outcome.
#[derive(Debug, Clone)]
pub struct Tracer {
    statements: Vec<bool>,
    branches: Vec<BranchRecord>,
}

impl Tracer {
    pub fn new(statements: usize, branches: usize) -> Self {
        Self {
            statements: vec![false; statements],
            branches: vec![BranchRecord::default(); branches],
        }
    }

    pub fn stmt(&mut self, id: usize) {
        self.statements[id] = true;
    }

    /// Records the evaluation of decision `id` and returns its outcome.
    pub fn branch(&mut self, id: usize, cond: Cond) -> bool {
        let rec = &mut self.branches[id];
        rec.reached = true;
        rec.last_d_true = cond.d_true;
        rec.last_d_false = cond.d_false;
        if cond.holds {
            rec.taken_true = true;
        } else {
            rec.taken_false = true;
        }
        cond.holds
    }

    /// Scores all targets: executed statements and taken branch outcomes get
    /// 1, outcomes of reached branches get `1 / (1 + d)` for the latest
    /// distance, everything unreached gets 0.
    pub fn heuristics(&self) -> Vec<f64> {
        let mut h: Vec<f64> = self
            .statements
            .iter()
            .map(|&s| if s { 1.0 } else { 0.0 })
            .collect();
        for rec in &self.branches {
            let outcome = |taken: bool, d: f64| {
                if taken {
                    1.0
                } else if rec.reached {
                    // Keep reached-but-far outcomes strictly above zero.
                    (1.0 / (1.0 + d)).max(f64::MIN_POSITIVE)
                } else {
                    0.0
                }
            };
            h.push(outcome(rec.taken_true, rec.last_d_true));
            h.push(outcome(rec.taken_false, rec.last_d_false));
        }
        h
    }
}
