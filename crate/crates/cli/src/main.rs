use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use runway_core::bench::{run_benchmark, write_report, BenchOptions, GenSpec, TaskMix};
use runway_core::io::{instance_to_json, parse_instance, parse_model, solution_to_json};
use runway_core::model::{forward_schedule, validate_separation_model};
use runway_core::oracle::{brute_force_optimum, dominance_dp_optimum, export_mip, OracleMethod};
use runway_core::{Error, Instance, RunwayMode, SearchBounds, SeparationModel, Solution, SolverConfig, SolverStats};

const EXIT_OTHER: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MALFORMED: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;
const EXIT_CAP: u8 = 5;
const EXIT_MODEL_REJECTED: u8 = 6;

#[derive(Parser)]
#[command(name = "runway", version, about = "Minimum total-delay runway sequencing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a separation model against the structural assumptions.
    Validate {
        #[command(flatten)]
        model: ModelArg,
        /// Also parse this instance file.
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
    /// Sequence an instance file.
    Solve(SolveArgs),
    /// Exact optimum of a small instance.
    Oracle {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OracleArg::Dp)]
        oracle: OracleArg,
        /// Largest instance the oracle accepts.
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        model: ModelArg,
    },
    /// Write a seeded random instance.
    Generate {
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value_t = MixArg::Mixed)]
        mix: MixArg,
        /// Earliest times are drawn from [0, te] minutes.
        #[arg(long, default_value_t = 20)]
        te: u32,
        /// Window length in minutes.
        #[arg(long, default_value_t = 60)]
        tw: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate, solve and report a grid of instances.
    Bench {
        /// Comma-separated aircraft counts.
        #[arg(long, value_delimiter = ',', default_values_t = [30usize, 40, 50, 60])]
        counts: Vec<usize>,
        #[arg(long, value_enum, default_value_t = MixArg::Mixed)]
        mix: MixArg,
        #[arg(long, default_value_t = 20)]
        te: u32,
        #[arg(long, default_value_t = 60)]
        tw: u32,
        /// Seeds per count, starting at --seed.
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OracleArg::Dp)]
        oracle: OracleArg,
        /// Run the oracle on instances up to this size; 0 disables it.
        #[arg(long, default_value_t = 0)]
        cap: usize,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Write the instance as an LP-format mixed-integer model.
    ExportMip {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Upper end for open windows, in seconds.
        #[arg(long)]
        horizon: Option<i64>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[command(flatten)]
        model: ModelArg,
    },
}

#[derive(Args)]
struct ModelArg {
    /// `default` or a separation-model JSON file.
    #[arg(long, default_value = "default")]
    model: String,
}

#[derive(Args)]
struct SolverArgs {
    /// Worker threads; 0 uses all cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Disable every bound-based elimination.
    #[arg(long)]
    no_prune: bool,
    /// Solver settings file (flat TOML).
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[command(flatten)]
    model: ModelArg,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Single,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Brute,
    Dp,
}

#[derive(Clone, Copy, ValueEnum)]
enum MixArg {
    TakeoffOnly,
    LandingOnly,
    Mixed,
    Dual,
}

impl From<MixArg> for TaskMix {
    fn from(m: MixArg) -> Self {
        match m {
            MixArg::TakeoffOnly => TaskMix::TakeoffOnly,
            MixArg::LandingOnly => TaskMix::LandingOnly,
            MixArg::Mixed => TaskMix::Mixed,
            MixArg::Dual => TaskMix::Dual,
        }
    }
}

impl From<OracleArg> for OracleMethod {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Brute => OracleMethod::BruteForce,
            OracleArg::Dp => OracleMethod::DominanceDp,
        }
    }
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::InvalidInstance(_) | Error::Json(_) | Error::Config(_) | Error::ModelMismatch { .. } | Error::InvalidModel(_) => {
                (EXIT_MALFORMED, "malformed")
            }
            Error::Infeasible { .. } => (EXIT_INFEASIBLE, "infeasible"),
            Error::OracleCap { .. } => (EXIT_CAP, "cap"),
            _ => (EXIT_OTHER, "error"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

type Run = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let line = serde_json::json!({ "error": f.kind, "exit": f.code, "message": f.message });
            eprintln!("{line}");
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Run {
    match command {
        Command::Validate { model, input } => {
            let m = load_model(&model)?;
            let report = validate_separation_model(&m);
            print!("{}", report.render());
            if let Some(path) = input {
                parse_instance(&read(&path)?, &m)?;
            }
            if report.all_passed() {
                Ok(())
            } else {
                let failed = report.failures().count();
                Err(Failure { code: EXIT_MODEL_REJECTED, kind: "model_rejected", message: format!("{failed} predicates failed") })
            }
        }
        Command::Solve(args) => {
            let inst = load_instance(&args.input, &args.model, args.mode)?;
            let cfg = solver_config(&args.solver)?;
            let sol = runway_core::solve(&inst, &cfg)?;
            emit(args.out.as_deref(), &solution_to_json(&inst, &sol))
        }
        Command::Oracle { input, out, oracle, cap, mode, model } => {
            let inst = load_instance(&input, &model, mode)?;
            let result = match oracle {
                OracleArg::Brute => brute_force_optimum(&inst, cap.unwrap_or(runway_core::oracle::BRUTE_FORCE_CAP)),
                OracleArg::Dp => dominance_dp_optimum(&inst, cap.unwrap_or(runway_core::oracle::DP_CAP)),
            }?;
            let schedule = forward_schedule(&inst, &result.order)?;
            let bound = SearchBounds { lower: result.objective, upper: result.objective };
            let sol = Solution { schedule, bounds: Some(bound), certified: true, stats: SolverStats::default() };
            emit(out.as_deref(), &solution_to_json(&inst, &sol))
        }
        Command::Generate { count, mix, te, tw, seed, out } => {
            let inst = runway_core::bench::generate_instance(&GenSpec::new(count, mix.into(), te, tw, seed))?;
            emit(out.as_deref(), &(instance_to_json(&inst) + "\n"))
        }
        Command::Bench { counts, mix, te, tw, seeds, seed, oracle, cap, out, solver } => {
            let specs: Vec<GenSpec> = counts
                .iter()
                .flat_map(|&n| (seed..seed + seeds).map(move |s| GenSpec::new(n, mix.into(), te, tw, s)))
                .collect();
            let opts = BenchOptions { solver: solver_config(&solver)?, oracle_cap: cap, oracle: oracle.into() };
            let rows = run_benchmark(&specs, &opts);
            write_report(&rows, &out)?;
            print!("{}", runway_core::bench::report_summary(&rows));
            Ok(())
        }
        Command::ExportMip { input, out, horizon, mode, model } => {
            let inst = load_instance(&input, &model, mode)?;
            emit(out.as_deref(), &export_mip(&inst, horizon)?)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    Ok(std::fs::read_to_string(path)?)
}

fn emit(out: Option<&Path>, text: &str) -> Run {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_model(arg: &ModelArg) -> Result<SeparationModel, Failure> {
    if arg.model == "default" {
        Ok(SeparationModel::default())
    } else {
        Ok(parse_model(&read(Path::new(&arg.model))?)?)
    }
}

fn load_instance(path: &Path, model: &ModelArg, mode: Option<ModeArg>) -> Result<Instance, Failure> {
    let inst = parse_instance(&read(path)?, &load_model(model)?)?;
    Ok(match mode {
        Some(ModeArg::Single) => inst.with_mode(RunwayMode::Single),
        Some(ModeArg::Dual) => inst.with_mode(RunwayMode::Dual),
        None => inst,
    })
}

fn solver_config(args: &SolverArgs) -> Result<SolverConfig, Failure> {
    let mut cfg = match &args.config {
        Some(p) => SolverConfig::from_toml_str(&read(p)?)?,
        None => SolverConfig::default(),
    };
    if let Some(w) = args.workers {
        cfg.workers = w;
    }
    if args.no_prune {
        cfg.prune = false;
    }
    Ok(cfg)
}
