use std::fmt;

/// One candidate test: which entry point to call (`id`) and its inputs.
///
/// Artificial problems use a single integer-valued input; the numerical
/// functions use a fixed arity per function. Inputs are stored as `f64`
/// throughout, integer domains only ever hold exactly representable values.
#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub id: usize,
    pub inputs: Vec<f64>,
    /// Cost measure used to break ties between covering tests.
    pub size: usize,
}

impl TestCase {
    pub fn new(id: usize, inputs: Vec<f64>) -> Self {
        Self {
            id,
            inputs,
            size: 1,
        }
    }
}

impl fmt::Display for TestCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}(", self.id)?;
        for (i, x) in self.inputs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Per-target heuristic scores of one executed test, each in `[0, 1]`.
///
/// A value of `1` means the target is covered, `0` means the test gives no
/// guidance at all towards it.
#[derive(Debug, Clone, PartialEq)]
pub struct HeuristicVector(Vec<f64>);

impl HeuristicVector {
    /// Wraps raw scores. Panics if any value lies outside `[0, 1]`.
    pub fn new(values: Vec<f64>) -> Self {
        assert!(
            values.iter().all(|h| (0.0..=1.0).contains(h)),
            "heuristic values must lie in [0, 1]"
        );
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, target: usize) -> f64 {
        self.0[target]
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn is_covered(&self, target: usize) -> bool {
        self.0[target] >= 1.0
    }

    /// Sum of all scores; the secondary key when comparing covering tests.
    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Whether `self` is at least as good as `other` on every target.
    pub fn subsumes(&self, other: &HeuristicVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}
