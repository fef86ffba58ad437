use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use cuboid_core::{
    check_one_parameter_cases, CoreError, RootStrategy, SignFilter, SweepDir, SweepOptions,
    SweepPlan, Verbosity,
};

mod trace;

/// Exact-rational search for perfect cuboids through the two-parameter family.
#[derive(Parser, Debug)]
#[command(name = "cuboid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep every (b, c) pair up to a height bound.
    Sweep(SweepArgs),
    /// Evaluate one pair and print the full pipeline trace.
    Eval {
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Check a candidate tuple x1 x2 x3 d1 d2 d3 L against every equation system.
    VerifyTuple {
        #[arg(num_args = 7, value_names = ["X1", "X2", "X3", "D1", "D2", "D3", "L"], allow_hyphen_values = true)]
        values: Vec<String>,
    },
    /// Regression checks for the one-parameter families.
    NogoReport {
        #[arg(long, default_value_t = 20)]
        height: u64,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, default_value_t = 50)]
    height: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Directory for records.jsonl and checkpoint.toml.
    #[arg(long, default_value = "sweep-out")]
    out: PathBuf,
    /// Continue from the checkpoint in the output directory.
    #[arg(long)]
    resume: bool,
    /// Also write degenerate and cubic-failure records.
    #[arg(long)]
    all_records: bool,
    /// Only this slice of the grid, as INDEX/COUNT.
    #[arg(long, value_parser = parse_shard)]
    shard: Option<(u64, u64)>,
    #[arg(long, default_value = "any")]
    b_sign: SignFilter,
    #[arg(long, default_value = "any")]
    c_sign: SignFilter,
    /// isolation, divisors, or divisors:BUDGET
    #[arg(long, default_value = "isolation", value_parser = parse_strategy)]
    root_strategy: RootStrategy,
    #[arg(long, default_value_t = 100_000)]
    checkpoint_every: u64,
}

fn parse_shard(s: &str) -> Result<(u64, u64), String> {
    let (i, n) = s.split_once('/').ok_or("expected INDEX/COUNT")?;
    let i = i.trim().parse::<u64>().map_err(|e| e.to_string())?;
    let n = n.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if n == 0 || i >= n {
        return Err(format!(
            "shard index must be below the shard count, got {i}/{n}"
        ));
    }
    Ok((i, n))
}

fn parse_strategy(s: &str) -> Result<RootStrategy, String> {
    match s.split_once(':') {
        None if s == "isolation" => Ok(RootStrategy::Isolation),
        None if s == "divisors" => Ok(RootStrategy::divisors()),
        Some(("divisors", budget)) => budget
            .parse()
            .map(|budget| RootStrategy::Divisors { budget })
            .map_err(|e| format!("budget: {e}")),
        _ => Err(format!("unknown root strategy {s:?}")),
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 3;
const EXIT_INTERRUPTED: u8 = 130;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Eval { b, c } => trace::eval(&b, &c),
        Command::VerifyTuple { values } => trace::verify_tuple(&values),
        Command::NogoReport { height } => nogo(height),
        Command::Sweep(args) => sweep(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn nogo(height: u64) -> anyhow::Result<u8> {
    if height == 0 {
        bail!("height must be at least 1");
    }
    let report = check_one_parameter_cases(height);
    println!("{report}");
    if report.pass() {
        println!("PASS");
        Ok(0)
    } else {
        println!("FAIL");
        Ok(1)
    }
}

fn sweep(args: SweepArgs) -> anyhow::Result<u8> {
    let (index, count) = args.shard.unwrap_or((0, 1));
    let plan = SweepPlan {
        b_filter: args.b_sign,
        c_filter: args.c_sign,
        strategy: args.root_strategy,
        ..SweepPlan::new(args.height)
    }
    .with_shard(index, count)
    .with_verbosity(if args.all_records {
        Verbosity::Full
    } else {
        Verbosity::Summary
    });
    plan.validate().map_err(|e| anyhow!(e))?;

    let stop = Arc::new(AtomicBool::new(false));
    {
        let stop = stop.clone();
        ctrlc::set_handler(move || stop.store(true, Ordering::SeqCst))
            .context("installing the signal handler")?;
    }
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let opts = SweepOptions {
        workers,
        checkpoint_every: args.checkpoint_every,
        stop: Some(stop),
        ..Default::default()
    };

    let dir = SweepDir::new(&args.out);
    eprintln!(
        "sweeping height {} with {} worker(s) into {}",
        plan.height,
        workers,
        args.out.display()
    );
    match dir.run(&plan, &opts, args.resume) {
        Ok(summary) => {
            println!("{summary}");
            for p in &summary.perfect {
                println!(
                    "FINDING: PERFECT_CUBOID at b={} c={}; audit with `cuboid eval`",
                    cuboid_core::rational_to_string(&p.b),
                    cuboid_core::rational_to_string(&p.c)
                );
            }
            Ok(0)
        }
        Err(CoreError::Interrupted { next_index }) => {
            eprintln!(
                "interrupted before pair {next_index}; checkpoint saved, rerun with --resume"
            );
            Ok(EXIT_INTERRUPTED)
        }
        Err(e @ CoreError::InvalidPlan(_)) => Err(anyhow!(e)),
        Err(e) => {
            eprintln!("error: {e}");
            Ok(EXIT_IO)
        }
    }
}
