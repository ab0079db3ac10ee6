use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use miosearch::harness::{
    emit_csv, figure_plans, parse_config, read_raw_csv, run_plan, summarize, table1_plan,
    write_pairwise_csv, write_run_manifest, write_summary_csv, AlgorithmSpec, Execution,
    ExperimentPlan, Family, InstanceSpec,
};
use miosearch::problems::{LandscapeKind, SutKind};

#[derive(Parser)]
#[command(
    name = "miosearch",
    version,
    about = "MIO, MOSA, WTS and random search experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a plan given by a config file and/or flags.
    Run(RunArgs),
    /// Run the four artificial-landscape plans.
    ReplicateFigures(ReplicateArgs),
    /// Run Expint, Gammq and Triangle at b = 5000.
    ReplicateTable1(ReplicateArgs),
    /// Recompute summary and pairwise statistics from a raw CSV.
    Stats(StatsArgs),
}

#[derive(Args)]
struct Common {
    /// Output directory.
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Run cells one after another instead of on the thread pool.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct RunArgs {
    /// Plan file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// gradient, plateau, deceptive, infeasible or sut.
    #[arg(long)]
    family: Option<String>,
    /// Comma-separated z values (infeasible counts for the infeasible family).
    #[arg(long, allow_hyphen_values = true)]
    z_list: Option<String>,
    /// Comma-separated SUT names for the sut family.
    #[arg(long)]
    suts: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    budget: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    reps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    /// Comma-separated labels: MIO, MIO-noFDS, MOSA, WTS, RAND.
    #[arg(long)]
    algorithms: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ReplicateArgs {
    #[arg(long, allow_hyphen_values = true)]
    reps: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct StatsArgs {
    /// Raw CSV written by a previous run.
    #[arg(long)]
    raw: PathBuf,
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
}

fn number<T: std::str::FromStr>(flag: &str, raw: &str) -> Result<T, String> {
    raw.trim()
        .parse()
        .map_err(|_| format!("--{flag}: invalid value {raw:?}, expected a non-negative integer"))
}

fn list(flag: &str, raw: &str) -> Result<Vec<String>, String> {
    let items: Vec<String> = raw.split(',').map(|s| s.trim().to_string()).collect();
    if items.iter().any(String::is_empty) {
        return Err(format!("--{flag}: empty item in {raw:?}"));
    }
    Ok(items)
}

fn build_plan(args: &RunArgs) -> Result<ExperimentPlan, String> {
    let mut plan = match &args.config {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            Some(parse_config(&text).map_err(|e| format!("{}: {e}", path.display()))?)
        }
        None => None,
    };

    let family = match &args.family {
        Some(raw) => {
            Some(Family::parse(raw).ok_or_else(|| format!("--family: unknown family {raw:?}"))?)
        }
        None => None,
    };
    let family = match (family, &plan) {
        (Some(f), _) => f,
        (None, Some(p)) => p.instances[0].family(),
        (None, None) => return Err("--family is required without --config".into()),
    };

    let from_flags = args.z_list.is_some() || args.suts.is_some() || args.family.is_some();
    if from_flags || plan.is_none() {
        let instances = match family {
            Family::Artificial(kind) => {
                if args.suts.is_some() {
                    return Err("--suts: only valid with --family sut".into());
                }
                let raw = args
                    .z_list
                    .as_deref()
                    .ok_or("--z-list is required for artificial families")?;
                let mut instances = Vec::new();
                for item in list("z-list", raw)? {
                    let param: usize = number("z-list", &item)?;
                    if param == 0 && kind != LandscapeKind::Infeasible {
                        return Err("--z-list: z must be at least 1".into());
                    }
                    instances.push(InstanceSpec::Artificial { kind, param });
                }
                instances
            }
            Family::Sut => {
                if args.z_list.is_some() {
                    return Err("--z-list: not valid with --family sut".into());
                }
                match &args.suts {
                    Some(raw) => list("suts", raw)?
                        .iter()
                        .map(|s| {
                            SutKind::parse(s)
                                .map(InstanceSpec::Sut)
                                .ok_or(format!("--suts: unknown SUT {s:?}"))
                        })
                        .collect::<Result<_, _>>()?,
                    None => SutKind::ALL.iter().map(|&k| InstanceSpec::Sut(k)).collect(),
                }
            }
        };
        match &mut plan {
            Some(p) => p.instances = instances,
            None => {
                let defaults = ["MIO", "MOSA", "WTS", "RAND"]
                    .map(|l| AlgorithmSpec::parse(l).unwrap())
                    .to_vec();
                plan = Some(ExperimentPlan::new("run", instances, defaults));
            }
        }
    }
    let mut plan = plan.expect("plan built above");

    if let Some(raw) = &args.algorithms {
        plan.algorithms = list("algorithms", raw)?
            .iter()
            .map(|l| {
                AlgorithmSpec::parse(l).ok_or(format!("--algorithms: unknown algorithm {l:?}"))
            })
            .collect::<Result<_, _>>()?;
    }
    if let Some(raw) = &args.budget {
        plan.budget = number("budget", raw)?;
    }
    if let Some(raw) = &args.reps {
        plan.repetitions = number("reps", raw)?;
        if plan.repetitions == 0 {
            return Err("--reps: must be at least 1".into());
        }
    }
    if let Some(raw) = &args.seed {
        plan.base_seed = number("seed", raw)?;
    }
    Ok(plan)
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

fn execute(plan: &ExperimentPlan, dir: &Path, sequential: bool) -> Result<(), String> {
    let execution = if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let started = unix_now();
    let result = run_plan(plan, execution).map_err(|e| e.to_string())?;
    for skipped in &result.skipped {
        eprintln!("warning: {skipped}");
    }
    let written = emit_csv(&result, dir).map_err(|e| e.to_string())?;
    write_run_manifest(dir, &result, started, unix_now(), execution).map_err(|e| e.to_string())?;
    for path in written {
        println!("{}", path.display());
    }
    Ok(())
}

fn replicate_settings(args: &ReplicateArgs) -> Result<(Option<u32>, u64), String> {
    let reps = match &args.reps {
        Some(raw) => match number("reps", raw)? {
            0 => return Err("--reps: must be at least 1".into()),
            n => Some(n),
        },
        None => None,
    };
    let seed = args
        .seed
        .as_deref()
        .map(|raw| number("seed", raw))
        .transpose()?
        .unwrap_or(0);
    Ok((reps, seed))
}

fn dispatch(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Run(args) => {
            let plan = build_plan(&args)?;
            execute(&plan, &args.common.out_dir, args.common.sequential)
        }
        Command::ReplicateFigures(args) => {
            let (reps, seed) = replicate_settings(&args)?;
            for mut plan in figure_plans(seed) {
                if let Some(r) = reps {
                    plan.repetitions = r;
                }
                let dir = args.common.out_dir.join(&plan.name);
                execute(&plan, &dir, args.common.sequential)?;
            }
            Ok(())
        }
        Command::ReplicateTable1(args) => {
            let (reps, seed) = replicate_settings(&args)?;
            let mut plan = table1_plan(seed);
            if let Some(r) = reps {
                plan.repetitions = r;
            }
            execute(&plan, &args.common.out_dir, args.common.sequential)
        }
        Command::Stats(args) => {
            let runs = read_raw_csv(&args.raw).map_err(|e| e.to_string())?;
            let (summaries, pairwise) = summarize(&runs);
            std::fs::create_dir_all(&args.out_dir)
                .map_err(|e| format!("{}: {e}", args.out_dir.display()))?;
            let summary = args.out_dir.join("summary.csv");
            let pairs = args.out_dir.join("pairwise.csv");
            write_summary_csv(&summary, &summaries).map_err(|e| e.to_string())?;
            write_pairwise_csv(&pairs, &pairwise).map_err(|e| e.to_string())?;
            println!("{}\n{}", summary.display(), pairs.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.render().to_string();
            eprintln!(
                "{}",
                rendered
                    .lines()
                    .next()
                    .unwrap_or("error: invalid arguments")
            );
            return ExitCode::from(2);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}
