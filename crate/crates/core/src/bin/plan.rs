use clap::{Parser, ValueEnum};
use nbp_tamp::executive::{
    aggregate, format_aggregate, run_benchmark, write_csv, Algorithm, BenchmarkConfig, Clock, Task,
    TrialConfig,
};
use nbp_tamp::kitchen::KitchenModel;
use nbp_tamp::par::ExecMode;
use nbp_tamp::pmpnbp::trace_csv;
use nbp_tamp::samplers::NoiseModel;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClockArg {
    Work,
    Wall,
}

/// Run a planning benchmark in the simulated kitchen.
#[derive(Debug, Parser)]
#[command(name = "plan", version)]
struct Args {
    /// retrieve, wash, cook or serve-meal
    #[arg(long, default_value = "retrieve")]
    task: Task,
    /// shycobra or mlo
    #[arg(long, default_value = "shycobra")]
    alg: Algorithm,
    #[arg(long, default_value_t = 12)]
    trials: usize,
    /// Particles per variable (M)
    #[arg(long, default_value_t = 100)]
    samples: usize,
    /// Message-passing iterations per planning cycle
    #[arg(long, default_value_t = 10)]
    iterations: usize,
    #[arg(long, default_value_t = 0.10)]
    noise_pose: f64,
    #[arg(long, default_value_t = 0.25)]
    noise_config: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// World description (JSON); the bundled kitchen when omitted
    #[arg(long)]
    world: Option<PathBuf>,
    /// Per-trial CSV output
    #[arg(long, default_value = "metrics.csv")]
    out: PathBuf,
    /// work: reproducible counted-work time; wall: elapsed time
    #[arg(long, value_enum, default_value_t = ClockArg::Work)]
    clock: ClockArg,
    /// Run everything on the calling thread
    #[arg(long)]
    sequential: bool,
    /// Write every message and belief of every trial to this CSV
    #[arg(long)]
    trace: Option<PathBuf>,
}

fn run(args: Args) -> Result<(), String> {
    if args.trials == 0 || args.samples == 0 {
        return Err("--trials and --samples must be positive".into());
    }
    for (name, v) in [
        ("--noise-pose", args.noise_pose),
        ("--noise-config", args.noise_config),
    ] {
        if !v.is_finite() || v < 0.0 {
            return Err(format!("{name} must be a non-negative number"));
        }
    }
    let model = match &args.world {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            KitchenModel::from_json(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => KitchenModel::default_world(),
    };
    let cfg = BenchmarkConfig {
        algorithm: args.alg,
        task: args.task,
        trials: args.trials,
        trial: TrialConfig {
            algorithm: args.alg,
            particles: args.samples,
            iterations: args.iterations,
            noise: NoiseModel::new(args.noise_pose, args.noise_config),
            seed: args.seed,
            clock: match args.clock {
                ClockArg::Work => Clock::Work,
                ClockArg::Wall => Clock::Wall,
            },
            mode: if args.sequential {
                ExecMode::Sequential
            } else {
                ExecMode::Parallel
            },
            trace: args.trace.is_some(),
        },
    };
    let rows = run_benchmark(&cfg, &model);
    let file =
        std::fs::File::create(&args.out).map_err(|e| format!("{}: {e}", args.out.display()))?;
    write_csv(&rows, file).map_err(|e| format!("{}: {e}", args.out.display()))?;
    if let Some(p) = &args.trace {
        let records: Vec<_> = rows
            .iter()
            .flat_map(|r| r.metrics.trace.iter().cloned())
            .collect();
        std::fs::write(p, trace_csv(&records)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    print!("{}", format_aggregate(&aggregate(&rows)));
    Ok(())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("plan: {e}");
            ExitCode::from(2)
        }
    }
}
