//! Built-in landscape and SUT experiment grids.

use super::{AlgorithmSpec, ExperimentPlan, InstanceSpec};
use crate::algorithms::{MioConfig, MosaConfig, WtsConfig};
use crate::problems::{LandscapeKind, SutKind};

/// Target counts of the gradient, plateau and deceptive plans.
pub const FIGURE_Z_VALUES: [usize; 15] = [1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100];

/// Infeasible targets added to the ten gradient ones.
pub const INFEASIBLE_COUNTS: [usize; 16] =
    [0, 1, 2, 3, 4, 5, 10, 20, 30, 40, 50, 60, 70, 80, 90, 100];

const FIGURE_BUDGET: u64 = 1000;
const TABLE_BUDGET: u64 = 5000;
const REPETITIONS: u32 = 100;

fn standard_algorithms() -> Vec<AlgorithmSpec> {
    vec![
        AlgorithmSpec::Mio(MioConfig::default()),
        AlgorithmSpec::Mosa(MosaConfig::default()),
        AlgorithmSpec::Wts(WtsConfig::default()),
        AlgorithmSpec::Random,
    ]
}

fn landscape_plan(
    name: &str,
    kind: LandscapeKind,
    params: &[usize],
    algorithms: Vec<AlgorithmSpec>,
    seed: u64,
) -> ExperimentPlan {
    let instances = params
        .iter()
        .map(|&param| InstanceSpec::Artificial { kind, param })
        .collect();
    ExperimentPlan::new(name, instances, algorithms)
        .with_budget(FIGURE_BUDGET)
        .with_repetitions(REPETITIONS)
        .with_seed(seed)
}

/// The gradient, plateau, deceptive and infeasible plans, in that order.
pub fn figure_plans(seed: u64) -> Vec<ExperimentPlan> {
    let mut with_no_fds = standard_algorithms();
    with_no_fds.insert(1, AlgorithmSpec::Mio(MioConfig::without_fds()));
    vec![
        landscape_plan(
            "fig1-gradient",
            LandscapeKind::Gradient,
            &FIGURE_Z_VALUES,
            standard_algorithms(),
            seed,
        ),
        landscape_plan(
            "fig2-plateau",
            LandscapeKind::Plateau,
            &FIGURE_Z_VALUES,
            standard_algorithms(),
            seed,
        ),
        landscape_plan(
            "fig3-deceptive",
            LandscapeKind::Deceptive,
            &FIGURE_Z_VALUES,
            standard_algorithms(),
            seed,
        ),
        landscape_plan(
            "fig4-infeasible",
            LandscapeKind::Infeasible,
            &INFEASIBLE_COUNTS,
            with_no_fds,
            seed,
        ),
    ]
}

/// Expint, Gammq and Triangle with the four algorithms at `b = 5000`.
pub fn table1_plan(seed: u64) -> ExperimentPlan {
    let instances = SutKind::ALL.iter().map(|&k| InstanceSpec::Sut(k)).collect();
    ExperimentPlan::new("table1", instances, standard_algorithms())
        .with_budget(TABLE_BUDGET)
        .with_repetitions(REPETITIONS)
        .with_seed(seed)
}

/// Looks a built-in plan up by name (`fig1-gradient` ... `fig4-infeasible`,
/// `table1`).
pub fn builtin_plan(name: &str, seed: u64) -> Option<ExperimentPlan> {
    if name == "table1" {
        return Some(table1_plan(seed));
    }
    figure_plans(seed).into_iter().find(|p| p.name == name)
}
