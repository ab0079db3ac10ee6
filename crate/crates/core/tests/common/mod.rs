//! Property checks shared by the proptest suite and the acceptance runner.
#![allow(dead_code)]

use miosearch::algorithms::{MioConfig, MosaConfig, SearchResult, WtsConfig};
use miosearch::harness::AlgorithmSpec;
use miosearch::problems::branch::{BranchPredicate, CmpOp};
use miosearch::problems::{ArtificialProblem, LandscapeKind, Problem};
use miosearch::stats::{
    mann_whitney_u_exact, mann_whitney_u_normal, u_statistic, vargha_delaney_a12,
};
use miosearch::{seeded_rng, Archive, HeuristicVector, ParameterSchedule, TestCase};
use proptest::collection::vec;
use proptest::prelude::*;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        match $cond {
            true => {}
            false => return Err(format!($($fmt)+)),
        }
    };
}

#[derive(Debug, Clone)]
pub enum ArchiveOp {
    Save { size: usize, h: Vec<f64> },
    Shrink(usize),
    Sample,
}

fn score() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(1.0), Just(0.5), 0.001f64..0.999]
}

fn archive_op(targets: usize) -> impl Strategy<Value = ArchiveOp> {
    prop_oneof![
        6 => (1usize..4, vec(score(), targets)).prop_map(|(size, h)| ArchiveOp::Save { size, h }),
        1 => (1usize..8).prop_map(ArchiveOp::Shrink),
        2 => Just(ArchiveOp::Sample),
    ]
}

/// Target count and an operation sequence over it.
pub fn archive_script() -> impl Strategy<Value = (usize, Vec<ArchiveOp>)> {
    (1usize..6).prop_flat_map(|t| (Just(t), vec(archive_op(t), 1..80)))
}

fn test_of_size(size: usize, tag: usize) -> TestCase {
    let mut test = TestCase::new(0, vec![tag as f64]);
    test.size = size;
    test
}

/// Covered populations stay covered with exactly one covering test,
/// uncovered ones respect the capacity they were filled and shrunk with,
/// and nothing with a zero heuristic is ever stored.
pub fn archive_invariants(targets: usize, ops: &[ArchiveOp], fds: bool) -> Check {
    let mut archive = Archive::new(targets).with_feedback_directed_sampling(fds);
    let mut rng = seeded_rng(targets as u64);
    let mut capacity = 10;
    let mut covered = vec![false; targets];
    for (step, op) in ops.iter().enumerate() {
        match op {
            ArchiveOp::Save { size, h } => {
                archive
                    .save(
                        &test_of_size(*size, step),
                        &HeuristicVector::new(h.clone()),
                        capacity,
                    )
                    .map_err(|e| e.to_string())?;
            }
            ArchiveOp::Shrink(c) => {
                capacity = *c;
                archive.shrink_to(capacity);
            }
            ArchiveOp::Sample => {
                let sampled = archive.sample(&mut rng);
                ensure!(
                    sampled.is_ok() == !archive.is_empty(),
                    "step {step}: sample on empty={}",
                    archive.is_empty()
                );
            }
        }
        for (k, was_covered) in covered.iter_mut().enumerate() {
            let pop = archive.population(k);
            ensure!(
                !*was_covered || pop.is_covered(),
                "step {step}: target {k} lost coverage"
            );
            *was_covered = pop.is_covered();
            if pop.is_covered() {
                ensure!(
                    pop.len() == 1,
                    "step {step}: covered target {k} holds {} tests",
                    pop.len()
                );
                ensure!(
                    pop.entries()[0].h >= 1.0,
                    "step {step}: covered target {k} entry h < 1"
                );
            } else {
                ensure!(
                    pop.len() <= capacity,
                    "step {step}: target {k} holds {} > {capacity}",
                    pop.len()
                );
                ensure!(
                    pop.entries().iter().all(|e| e.h < 1.0),
                    "step {step}: covering test in open population"
                );
            }
            ensure!(
                pop.entries().iter().all(|e| e.h > 0.0),
                "step {step}: zero-heuristic entry at {k}"
            );
        }
        let count = covered.iter().filter(|&&c| c).count();
        ensure!(
            archive.covered_count() == count,
            "step {step}: covered_count out of sync"
        );
    }
    Ok(())
}

/// With feedback-directed sampling every draw comes from an open population
/// whose counter is minimal, and only that counter moves.
pub fn fds_picks_lowest_counter(targets: usize, ops: &[ArchiveOp], seed: u64) -> Check {
    let mut archive = Archive::new(targets).with_feedback_directed_sampling(true);
    let mut rng = seeded_rng(seed);
    for (step, op) in ops.iter().enumerate() {
        if let ArchiveOp::Save { size, h } = op {
            archive
                .save(
                    &test_of_size(*size, step),
                    &HeuristicVector::new(h.clone()),
                    10,
                )
                .map_err(|e| e.to_string())?;
        }
        let open: Vec<usize> = (0..targets)
            .filter(|&k| !archive.population(k).is_covered() && !archive.population(k).is_empty())
            .collect();
        let before: Vec<u64> = (0..targets)
            .map(|k| archive.population(k).counter())
            .collect();
        if archive.sample(&mut rng).is_err() {
            continue;
        }
        let after: Vec<u64> = (0..targets)
            .map(|k| archive.population(k).counter())
            .collect();
        let moved: Vec<usize> = (0..targets).filter(|&k| before[k] != after[k]).collect();
        if open.is_empty() {
            ensure!(
                moved.is_empty(),
                "step {step}: counters moved with no open population"
            );
            continue;
        }
        let lowest = open.iter().map(|&k| before[k]).min().unwrap();
        ensure!(
            moved.len() == 1,
            "step {step}: {} counters moved",
            moved.len()
        );
        let k = moved[0];
        ensure!(open.contains(&k), "step {step}: sampled closed target {k}");
        ensure!(
            before[k] == lowest,
            "step {step}: target {k} had counter {} > {lowest}",
            before[k]
        );
        ensure!(
            after[k] == before[k] + 1,
            "step {step}: counter not bumped by one"
        );
    }
    Ok(())
}

pub fn schedule_strategy() -> impl Strategy<Value = ParameterSchedule> {
    (
        0.05f64..=1.0,
        0.0f64..=1.0,
        0.0f64..=1.0,
        1usize..30,
        1usize..30,
        1usize..30,
        1usize..30,
    )
        .prop_map(
            |(focus_fraction, pr_start, pr_end, n_start, n_end, m_start, m_end)| {
                ParameterSchedule {
                    focus_fraction,
                    pr_start,
                    pr_end,
                    n_start,
                    n_end,
                    m_start,
                    m_end,
                }
            },
        )
}

/// Linear from start to end over `[0, F]`, constant at the end value after.
pub fn schedule_linear_then_flat(s: &ParameterSchedule, t: f64) -> Check {
    let f = s.focus_fraction;
    let expect = |a: f64, b: f64| if t >= f { b } else { a + (b - a) * t / f };
    let pr = s.random_probability(t);
    ensure!(
        (pr - expect(s.pr_start, s.pr_end)).abs() < 1e-12,
        "Pr({t}) = {pr}"
    );
    let n = expect(s.n_start as f64, s.n_end as f64);
    ensure!(
        (s.capacity(t) as f64 - n).abs() <= 0.5,
        "n({t}) = {} vs {n}",
        s.capacity(t)
    );
    let m = expect(s.m_start as f64, s.m_end as f64);
    ensure!(
        (s.mutations(t) as f64 - m).abs() <= 0.5,
        "m({t}) = {} vs {m}",
        s.mutations(t)
    );
    if t >= f {
        ensure!(
            pr == s.pr_end && s.capacity(t) == s.n_end && s.mutations(t) == s.m_end,
            "not flat at {t}"
        );
    }
    Ok(())
}

pub fn predicate_strategy() -> impl Strategy<Value = BranchPredicate> {
    let op = prop_oneof![
        Just(CmpOp::Eq),
        Just(CmpOp::Ne),
        Just(CmpOp::Lt),
        Just(CmpOp::Le),
        Just(CmpOp::Gt),
        Just(CmpOp::Ge)
    ];
    let operand = prop_oneof![(-5i32..5).prop_map(f64::from), -1e6f64..1e6];
    let kappa = prop_oneof![Just(1.0), Just(1e-6)];
    (op, operand.clone(), operand, kappa, any::<bool>()).prop_map(
        |(op, left, right, kappa, same)| BranchPredicate {
            op,
            left,
            right: if same { left } else { right },
            kappa,
        },
    )
}

pub fn distance_zero_iff_taken(p: &BranchPredicate) -> Check {
    let (d, nd) = (p.distance(), p.negated_distance());
    ensure!(
        d.is_finite() && d >= 0.0 && nd.is_finite() && nd >= 0.0,
        "{p:?}: distances {d}, {nd}"
    );
    ensure!(
        (d == 0.0) == p.holds(),
        "{p:?}: distance {d} but holds={}",
        p.holds()
    );
    ensure!(
        (nd == 0.0) == !p.holds(),
        "{p:?}: negated distance {nd} but holds={}",
        p.holds()
    );
    Ok(())
}

/// Pairwise-comparison definitions of Â12 and U.
pub fn a12_matches_brute_force(a: &[f64], b: &[f64]) -> Check {
    let (mut wins, mut ties) = (0.0, 0.0);
    for x in a {
        for y in b {
            if x > y {
                wins += 1.0;
            } else if x == y {
                ties += 1.0;
            }
        }
    }
    let pairs = (a.len() * b.len()) as f64;
    let brute = (wins + 0.5 * ties) / pairs;
    let a12 = vargha_delaney_a12(a, b).map_err(|e| e.to_string())?;
    ensure!(
        (a12 - brute).abs() < 1e-12,
        "{a:?} vs {b:?}: A12 {a12} brute {brute}"
    );
    let u = u_statistic(a, b).map_err(|e| e.to_string())?;
    ensure!(
        (u - (wins + 0.5 * ties)).abs() < 1e-9,
        "{a:?} vs {b:?}: U {u}"
    );
    Ok(())
}

/// Every multiset of size 1..=`max_len` over `alphabet`, as sorted vectors.
pub fn multisets(alphabet: &[f64], max_len: usize) -> Vec<Vec<f64>> {
    fn grow(
        alphabet: &[f64],
        from: usize,
        left: usize,
        current: &mut Vec<f64>,
        out: &mut Vec<Vec<f64>>,
    ) {
        if !current.is_empty() {
            out.push(current.clone());
        }
        if left == 0 {
            return;
        }
        for i in from..alphabet.len() {
            current.push(alphabet[i]);
            grow(alphabet, i, left - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    grow(alphabet, 0, max_len, &mut Vec::new(), &mut out);
    out
}

/// Largest allowed gap between exact and normal-approximation p-values for
/// groups of 10 to 20 values.
pub const U_AGREEMENT: f64 = 0.02;

pub fn u_samples() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    let value = prop_oneof![(0i32..8).prop_map(f64::from), 0.0f64..10.0];
    (vec(value.clone(), 10..=20), vec(value, 10..=20))
}

pub fn exact_and_normal_agree(a: &[f64], b: &[f64]) -> Check {
    let exact = mann_whitney_u_exact(a, b).map_err(|e| e.to_string())?;
    let normal = mann_whitney_u_normal(a, b).map_err(|e| e.to_string())?;
    ensure!(
        (exact - normal).abs() <= U_AGREEMENT,
        "|a|={} |b|={}: exact {exact} normal {normal}",
        a.len(),
        b.len()
    );
    Ok(())
}

/// MIO, MIO without FDS, MOSA, WTS and random search with default settings.
pub fn all_algorithms() -> Vec<AlgorithmSpec> {
    vec![
        AlgorithmSpec::Mio(MioConfig::default()),
        AlgorithmSpec::Mio(MioConfig::without_fds()),
        AlgorithmSpec::Mosa(MosaConfig::default()),
        AlgorithmSpec::Wts(WtsConfig::default()),
        AlgorithmSpec::Random,
    ]
}

pub fn gradient_problem(z: usize, seed: u64) -> ArtificialProblem {
    ArtificialProblem::generate(LandscapeKind::Gradient, z, 1000, &mut seeded_rng(seed))
}

fn same_result(x: &SearchResult, y: &SearchResult) -> bool {
    x.suite == y.suite
        && x.trace == y.trace
        && x.evaluations == y.evaluations
        && x.covered_targets == y.covered_targets
        && x.heuristic_sum.to_bits() == y.heuristic_sum.to_bits()
}

/// Two runs with the same seed agree bit for bit.
pub fn reproducible<P: Problem + ?Sized>(
    algorithm: &AlgorithmSpec,
    problem: &P,
    budget: u64,
    seed: u64,
) -> Check {
    let first = algorithm
        .run(problem, budget, seed)
        .map_err(|e| e.to_string())?;
    let second = algorithm
        .run(problem, budget, seed)
        .map_err(|e| e.to_string())?;
    ensure!(
        same_result(&first, &second),
        "{} not reproducible with seed {seed}",
        algorithm.label()
    );
    Ok(())
}

/// `b = 0` runs nothing and returns an empty suite; `b = 1` runs exactly one
/// test.
pub fn degenerate_budgets<P: Problem + ?Sized>(algorithm: &AlgorithmSpec, problem: &P) -> Check {
    let label = algorithm.label();
    let none = algorithm.run(problem, 0, 1).map_err(|e| e.to_string())?;
    ensure!(
        none.suite.is_empty(),
        "{label}: b=0 suite has {} tests",
        none.suite.len()
    );
    ensure!(
        none.evaluations == 0,
        "{label}: b=0 used {} evaluations",
        none.evaluations
    );
    let one = algorithm.run(problem, 1, 1).map_err(|e| e.to_string())?;
    ensure!(
        one.evaluations == 1,
        "{label}: b=1 used {} evaluations",
        one.evaluations
    );
    ensure!(
        one.suite.len() <= 1,
        "{label}: b=1 suite has {} tests",
        one.suite.len()
    );
    Ok(())
}
