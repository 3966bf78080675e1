use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use modrep_cli::{run_scenario, Cache, Failure, FailureClass, RunOptions, Scenario, Task, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "modrep", version, about = "Modular representation theory workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: CommonFlags,
}

#[derive(Args)]
struct CommonFlags {
    /// Seed for all randomized routines.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Directory of the artifact cache; no caching without it.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Time budget per stage in seconds.
    #[arg(long, global = true)]
    budget_secs: Option<f64>,
    /// Add timings and cache statistics to the report.
    #[arg(long, global = true)]
    diagnostics: bool,
}

#[derive(Args)]
struct Groups {
    /// First group: a name such as `SL2(11)`, or generators in 1-based cycle notation separated by `;`.
    first: String,
    /// Second group; defaults to the first.
    second: Option<String>,
    /// Characteristic of the coefficient field.
    #[arg(long)]
    prime: u32,
    /// Work over GF(prime^field_degree); raised automatically if it does not split.
    #[arg(long, default_value_t = 1)]
    field_degree: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Orders, Sylow subgroups and centers.
    Group(Groups),
    /// Fusion systems on a common Sylow subgroup, their classes and centralizers.
    Fusion(Groups),
    /// Principal blocks and their simple modules.
    Block(Groups),
    /// The Scott bimodule with diagonal vertex.
    Scott(Groups),
    /// The Brauer indecomposability criterion for the Scott bimodule.
    Brauer(Groups),
    /// Individual checks comparing the principal blocks of two groups.
    #[command(subcommand)]
    Check(Check),
    /// Bundled end-to-end scenarios.
    #[command(subcommand)]
    Pipeline(Pipeline),
    /// Run a scenario file.
    Run { scenario: PathBuf },
}

#[derive(Subcommand)]
enum Check {
    /// Whether the Scott bimodule induces a stable equivalence.
    StableEquivalence(Groups),
    /// The gluing condition on the local stable equivalences.
    Gluing(Groups),
    /// Brauer indecomposability of the Scott bimodule.
    BrauerIndec(Groups),
    /// Whether the stable equivalence lifts to a Morita equivalence.
    MoritaLift(Groups),
}

#[derive(Subcommand)]
enum Pipeline {
    /// `SL2(11)` against `SL2(3)` in characteristic 2.
    Sl2Example,
}

fn adhoc(g: Groups, tasks: &[Task]) -> Scenario {
    Scenario::adhoc(&g.first, g.second.as_deref(), g.prime, g.field_degree, tasks.to_vec())
}

fn scenario(cmd: Command) -> Result<Scenario, Failure> {
    use Task::*;
    Ok(match cmd {
        Command::Group(g) => adhoc(g, &[Group]),
        Command::Fusion(g) => adhoc(g, &[Identification, Fusion, FusionClasses, Centralizers]),
        Command::Block(g) => adhoc(g, &[Blocks]),
        Command::Scott(g) => adhoc(g, &[Identification, Scott]),
        Command::Brauer(g) => adhoc(g, &[Identification, BrauerCriterion]),
        Command::Check(Check::StableEquivalence(g)) => adhoc(g, &[Identification, StableEquivalence]),
        Command::Check(Check::Gluing(g)) => adhoc(g, &[Identification, Gluing]),
        Command::Check(Check::BrauerIndec(g)) => adhoc(g, &[Identification, BrauerIndec]),
        Command::Check(Check::MoritaLift(g)) => adhoc(g, &[Identification, MoritaLift]),
        Command::Pipeline(Pipeline::Sl2Example) => Scenario::sl2_example(),
        Command::Run { scenario } => Scenario::load(&scenario)?,
    })
}

fn write_report(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::new(FailureClass::Internal, format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let flags = cli.common;
    let code = match execute(cli.command, &flags) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("modrep: {f}");
            f.exit_code
        }
    };
    ExitCode::from(code as u8)
}

fn execute(cmd: Command, flags: &CommonFlags) -> Result<i32, Failure> {
    let sc = scenario(cmd)?;
    let cache = match &flags.cache_dir {
        Some(dir) => Some(Cache::new(dir)?),
        None => None,
    };
    let budget = match flags.budget_secs {
        Some(s) if s.is_finite() && s >= 0.0 => Some(Duration::from_secs_f64(s)),
        Some(s) => return Err(Failure::new(FailureClass::Schema, format!("bad budget {s}"))),
        None => None,
    };
    let opts = RunOptions {
        seed: flags.seed,
        budget,
        diagnostics: flags.diagnostics,
    };
    let report = run_scenario(&sc, &opts, cache.as_ref());
    print!("{}", report.summary());
    if let Some(path) = flags.report.as_ref().or(sc.output.as_ref()) {
        write_report(path, &report.to_json())?;
    }
    Ok(report.exit_code())
}
