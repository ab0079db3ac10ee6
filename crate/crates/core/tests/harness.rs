use std::fs;
use std::path::Path;

use miosearch::algorithms::{MioConfig, WtsConfig};
use miosearch::harness::{
    emit_csv, read_raw_csv, run_plan, summarize, table1_plan, write_pairwise_csv,
    write_summary_csv, AlgorithmSpec, Execution, ExperimentPlan, InstanceSpec, SCHEMA_VERSION,
};
use miosearch::problems::{LandscapeKind, SutKind};

const RAW_HEADER: &str = "schema_version,family,instance,targets,feasible_targets,algorithm,repetition,seed,covered,coverage,coverage_sum,suite_size,evaluations";
const SUMMARY_HEADER: &str = "schema_version,family,instance,algorithm,runs,targets,feasible_targets,mean_covered,mean_coverage,median_coverage,mean_coverage_sum,mean_suite_size,better_than";
const PAIRWISE_HEADER: &str = "schema_version,family,instance,algorithm_a,algorithm_b,a12,p_value";

fn labels(names: &[&str]) -> Vec<AlgorithmSpec> {
    names
        .iter()
        .map(|n| AlgorithmSpec::parse(n).unwrap())
        .collect()
}

fn landscape(kind: LandscapeKind, params: &[usize], algorithms: &[&str]) -> ExperimentPlan {
    let instances = params
        .iter()
        .map(|&param| InstanceSpec::Artificial { kind, param })
        .collect();
    ExperimentPlan::new("test", instances, labels(algorithms))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    fs::read(dir.join(name)).unwrap()
}

const OUTPUTS: [&str; 4] = [
    "raw.csv",
    "summary.csv",
    "pairwise.csv",
    "problems.manifest",
];

#[test]
fn same_plan_twice_is_byte_identical() {
    let plan = landscape(
        LandscapeKind::Deceptive,
        &[2, 20],
        &["MIO", "MOSA", "WTS", "RAND"],
    )
    .with_repetitions(6)
    .with_budget(400)
    .with_seed(11);
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a"),
        dir.path().join("b"),
        dir.path().join("c"),
    );
    emit_csv(&run_plan(&plan, Execution::Parallel).unwrap(), &a).unwrap();
    emit_csv(&run_plan(&plan, Execution::Parallel).unwrap(), &b).unwrap();
    emit_csv(&run_plan(&plan, Execution::Sequential).unwrap(), &c).unwrap();
    for name in OUTPUTS {
        assert_eq!(read(&a, name), read(&b, name), "{name}");
        assert_eq!(read(&a, name), read(&c, name), "{name}");
    }
}

#[test]
fn different_seeds_differ() {
    let plan = landscape(LandscapeKind::Gradient, &[30], &["MIO"])
        .with_repetitions(3)
        .with_budget(300);
    let x = run_plan(&plan.clone().with_seed(1), Execution::Sequential).unwrap();
    let y = run_plan(&plan.with_seed(2), Execution::Sequential).unwrap();
    assert_ne!(x.instances[0].description, y.instances[0].description);
}

#[test]
fn algorithms_share_instances_and_do_not_perturb_each_other() {
    let base = landscape(LandscapeKind::Plateau, &[5, 30], &["MIO", "RAND"])
        .with_repetitions(4)
        .with_budget(300);
    let wider = ExperimentPlan {
        algorithms: labels(&["MOSA", "MIO", "WTS", "RAND"]),
        ..base.clone()
    };
    let narrow = run_plan(&base, Execution::Parallel).unwrap();
    let wide = run_plan(&wider, Execution::Parallel).unwrap();

    // One instance per cell, whatever the algorithm list.
    assert_eq!(narrow.instances, wide.instances);
    let dir = tempfile::tempdir().unwrap();
    emit_csv(&narrow, &dir.path().join("n")).unwrap();
    emit_csv(&wide, &dir.path().join("w")).unwrap();
    let instance_lines = |d: &str| -> Vec<String> {
        fs::read_to_string(dir.path().join(d).join("problems.manifest"))
            .unwrap()
            .lines()
            .filter(|l| l.starts_with("instance "))
            .map(String::from)
            .collect()
    };
    assert_eq!(instance_lines("n"), instance_lines("w"));
    assert_eq!(instance_lines("n").len(), 2 * 4);

    for label in ["MIO", "RAND"] {
        let a: Vec<_> = narrow
            .runs
            .iter()
            .filter(|r| r.algorithm == label)
            .collect();
        let b: Vec<_> = wide.runs.iter().filter(|r| r.algorithm == label).collect();
        assert_eq!(a, b, "{label}");
    }
}

#[test]
fn raw_count_matches_repetitions_per_cell() {
    let plan = landscape(
        LandscapeKind::Infeasible,
        &[0, 10],
        &["MIO", "MIO-noFDS", "RAND"],
    )
    .with_repetitions(7)
    .with_budget(200);
    let result = run_plan(&plan, Execution::Parallel).unwrap();
    assert_eq!(result.runs.len(), 2 * 7 * 3);
    for instance in ["0", "10"] {
        for algorithm in ["MIO", "MIO-noFDS", "RAND"] {
            assert_eq!(result.runs_for(instance, algorithm).count(), 7);
            assert_eq!(result.summary(instance, algorithm).unwrap().runs, 7);
        }
    }
    let r = result.runs_for("10", "MIO").next().unwrap();
    assert_eq!((r.targets, r.feasible_targets), (20, 10));
}

#[test]
fn single_cell_single_rep() {
    let plan = landscape(LandscapeKind::Gradient, &[3], &["MIO"])
        .with_repetitions(1)
        .with_budget(100);
    let result = run_plan(&plan, Execution::Sequential).unwrap();
    assert_eq!(result.runs.len(), 1);
    assert_eq!(result.summaries.len(), 1);
    assert!(result.pairwise.is_empty());
    assert_eq!(result.runs[0].evaluations, 100);
}

#[test]
fn summary_recomputes_exactly_from_raw() {
    let plan = landscape(
        LandscapeKind::Gradient,
        &[1, 10, 40],
        &["MIO", "MOSA", "WTS", "RAND"],
    )
    .with_repetitions(12)
    .with_budget(300);
    let result = run_plan(&plan, Execution::Parallel).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_csv(&result, dir.path()).unwrap();

    let runs = read_raw_csv(&dir.path().join("raw.csv")).unwrap();
    assert_eq!(runs, result.runs);
    let (summaries, pairwise) = summarize(&runs);
    let again = dir.path().join("again");
    fs::create_dir(&again).unwrap();
    write_summary_csv(&again.join("summary.csv"), &summaries).unwrap();
    write_pairwise_csv(&again.join("pairwise.csv"), &pairwise).unwrap();
    assert_eq!(read(dir.path(), "summary.csv"), read(&again, "summary.csv"));
    assert_eq!(
        read(dir.path(), "pairwise.csv"),
        read(&again, "pairwise.csv")
    );
}

#[test]
fn schema_columns_and_row_shape() {
    let plan = landscape(
        LandscapeKind::Gradient,
        &[1, 10],
        &["MIO", "MOSA", "WTS", "RAND"],
    )
    .with_repetitions(3)
    .with_budget(200);
    let result = run_plan(&plan, Execution::Parallel).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit_csv(&result, dir.path()).unwrap();

    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(lines.next(), Some(SUMMARY_HEADER));
    // One row per (z, algorithm), ready for line plots.
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 2 * 4);
    let keys: Vec<(&str, &str)> = rows.iter().map(|r| (r[2], r[3])).collect();
    assert_eq!(
        keys,
        [
            ("1", "MIO"),
            ("1", "MOSA"),
            ("1", "WTS"),
            ("1", "RAND"),
            ("10", "MIO"),
            ("10", "MOSA"),
            ("10", "WTS"),
            ("10", "RAND")
        ]
    );
    for row in &rows {
        assert_eq!(row.len(), 13);
        assert_eq!(row[0], SCHEMA_VERSION.to_string());
        let coverage: f64 = row[8].parse().unwrap();
        assert!((0.0..=1.0).contains(&coverage));
    }

    let raw = fs::read_to_string(dir.path().join("raw.csv")).unwrap();
    assert_eq!(raw.lines().next(), Some(RAW_HEADER));
    assert!(raw.lines().skip(1).all(|l| l.split(',').count() == 13));
    let pairwise = fs::read_to_string(dir.path().join("pairwise.csv")).unwrap();
    assert_eq!(pairwise.lines().next(), Some(PAIRWISE_HEADER));
    // 4 choose 2 per instance.
    assert_eq!(pairwise.lines().count() - 1, 2 * 6);
}

#[test]
fn invalid_cells_are_reported_and_empty_outputs_keep_headers() {
    let broken = WtsConfig {
        population_size: 0,
        ..WtsConfig::default()
    };
    let plan = ExperimentPlan::new(
        "broken",
        vec![InstanceSpec::Artificial {
            kind: LandscapeKind::Plateau,
            param: 4,
        }],
        vec![AlgorithmSpec::Wts(broken)],
    )
    .with_repetitions(2);
    let result = run_plan(&plan, Execution::Parallel).unwrap();
    assert!(result.runs.is_empty());
    assert_eq!(result.skipped.len(), 1);
    assert_eq!(result.skipped[0].algorithm, "WTS");
    assert!(result.skipped[0].to_string().contains("plateau 4 WTS"));

    let dir = tempfile::tempdir().unwrap();
    emit_csv(&result, dir.path()).unwrap();
    for (name, header) in [
        ("raw.csv", RAW_HEADER),
        ("summary.csv", SUMMARY_HEADER),
        ("pairwise.csv", PAIRWISE_HEADER),
    ] {
        assert_eq!(
            fs::read_to_string(dir.path().join(name)).unwrap(),
            format!("{header}\n"),
            "{name}"
        );
    }
    let manifest = fs::read_to_string(dir.path().join("problems.manifest")).unwrap();
    assert!(manifest.contains("skipped family=plateau instance=4 algorithm=WTS"));
}

#[test]
fn zero_target_instance_is_skipped_not_dropped() {
    let plan = landscape(LandscapeKind::Deceptive, &[0, 2], &["MIO", "RAND"])
        .with_repetitions(2)
        .with_budget(50);
    let result = run_plan(&plan, Execution::Parallel).unwrap();
    assert_eq!(result.skipped.len(), 2);
    assert!(result.skipped.iter().all(|s| s.instance == "0"));
    assert_eq!(result.runs.len(), 2 * 2);
}

#[test]
fn invalid_mio_schedule_is_skipped() {
    let mut config = MioConfig::default();
    config.schedule.n_end = 0;
    let plan = ExperimentPlan::new(
        "x",
        vec![InstanceSpec::Artificial {
            kind: LandscapeKind::Gradient,
            param: 2,
        }],
        vec![AlgorithmSpec::Mio(config), AlgorithmSpec::Random],
    )
    .with_repetitions(2)
    .with_budget(50);
    let result = run_plan(&plan, Execution::Sequential).unwrap();
    assert_eq!(result.skipped.len(), 1);
    assert_eq!(result.runs.len(), 2);
    assert!(result.runs.iter().all(|r| r.algorithm == "RAND"));
}

#[test]
fn structural_plan_errors() {
    let plan = landscape(LandscapeKind::Gradient, &[1], &["MIO", "mio"]);
    assert!(run_plan(&plan, Execution::Sequential)
        .unwrap_err()
        .to_string()
        .contains("MIO"));
    let plan = landscape(LandscapeKind::Gradient, &[1], &["MIO"]).with_repetitions(0);
    assert!(run_plan(&plan, Execution::Sequential).is_err());
    let plan = landscape(LandscapeKind::Gradient, &[], &["MIO"]);
    assert!(run_plan(&plan, Execution::Sequential).is_err());
}

#[test]
fn better_than_column_format() {
    let mut plan = table1_plan(5).with_repetitions(8).with_budget(2000);
    plan.instances = vec![InstanceSpec::Sut(SutKind::Triangle)];
    let result = run_plan(&plan, Execution::Parallel).unwrap();
    let mio = result.summary("triangle", "MIO").unwrap();
    assert!(!mio.better_than.is_empty(), "MIO beats nobody on Triangle");
    for entry in mio.better_than.split(' ') {
        let (name, rest) = entry.split_once('(').unwrap();
        assert!(["MOSA", "WTS", "RAND"].contains(&name), "{entry}");
        let value: f64 = rest.strip_suffix(')').unwrap().parse().unwrap();
        assert!(value > 0.5 && rest.len() == "0.00)".len(), "{entry}");
    }
}
