use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use jointree::{SchemeConfig, SchemeKind, WithScheme};
use jointree_bench::bench::{append_csv, median_millis, run_bench, BenchConfig, Op};
use jointree_bench::fault::NoRotateAvl;
use jointree_bench::scaling::{run_scaling, sweep_sizes};
use jointree_bench::verify::{verify, VerifyReport};
use jointree_bench::workload::{generate, write_keys, Distribution};
use jointree_bench::{BenchError, DEFAULT_SEED};

#[derive(Parser)]
#[command(
    name = "jointree",
    version,
    about = "Benchmarks and checks for join-based ordered sets"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write distinct random keys, one per line.
    Gen(GenArgs),
    /// Time a set operation and append one CSV row per repeat.
    Bench(BenchArgs),
    /// Randomized trials of every operation against the reference oracle.
    Verify(VerifyArgs),
    /// Comparison counts with the larger input fixed and the smaller swept.
    Scaling(ScalingArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Uniform,
    Gaussian,
}

#[derive(Args)]
struct SeedArg {
    #[arg(long, env = "JOINTREE_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    dist: DistArg,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_parser = parse_op)]
    op: Op,
    #[arg(long, value_parser = parse_scheme)]
    scheme: SchemeKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    dist: DistArg,
    /// Mean of the first input (Gaussian only).
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Mean of the second input (Gaussian only).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mu2: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    repeats: u64,
    #[arg(long, default_value_t = jointree::Parallelism::DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Weight-balance parameter for `wb`.
    #[arg(long, default_value_t = jointree::WeightBalanced::DEFAULT_ALPHA)]
    alpha: f64,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    csv: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_scheme)]
    scheme: SchemeKind,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[command(flatten)]
    seed: SeedArg,
    /// Replace the AVL join with one that never rotates.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct ScalingArgs {
    #[arg(long, value_parser = parse_scheme)]
    scheme: SchemeKind,
    #[arg(long, value_parser = parse_op)]
    op: Op,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    seed: SeedArg,
    #[arg(long)]
    csv: PathBuf,
}

fn parse_scheme(s: &str) -> Result<SchemeKind, String> {
    s.parse().map_err(|e: jointree::ConfigError| e.to_string())
}

fn parse_op(s: &str) -> Result<Op, String> {
    s.parse()
}

fn distribution(d: DistArg, mu: f64, sigma: f64) -> Result<Distribution, BenchError> {
    match d {
        DistArg::Uniform => Ok(Distribution::Uniform),
        DistArg::Gaussian => Distribution::gaussian(mu, sigma),
    }
}

fn gen(a: GenArgs) -> Result<(), BenchError> {
    let dist = distribution(a.dist, a.mu, a.sigma)?;
    let keys = generate(dist, a.n, a.seed.seed, 0);
    write_keys(&a.out, &keys)?;
    Ok(())
}

fn bench(a: BenchArgs) -> Result<(), BenchError> {
    let scheme = SchemeConfig::new(a.scheme).with_alpha(a.alpha)?;
    let mut cfg = BenchConfig::new(scheme, a.op, a.n, a.m, distribution(a.dist, a.mu, a.sigma)?);
    cfg.mu2 = a.mu2;
    cfg.threads = a.threads as usize;
    cfg.repeats = a.repeats as usize;
    cfg.cutoff = a.cutoff;
    cfg.seed = a.seed.seed;
    let rows = run_bench(&cfg)?;
    append_csv(&a.csv, &rows)?;
    println!(
        "{} {} n={} m={} threads={}: median {:.3} ms over {} repeats, {} comparisons",
        a.scheme,
        a.op,
        a.n,
        a.m,
        cfg.threads,
        median_millis(&rows),
        rows.len(),
        rows[0].comparisons
    );
    Ok(())
}

struct RunVerify {
    trials: usize,
    seed: u64,
}

impl WithScheme for RunVerify {
    type Output = VerifyReport;

    fn run<S: jointree::Scheme>(self, s: S) -> VerifyReport {
        verify(&s, self.trials, self.seed)
    }
}

fn verify_cmd(a: VerifyArgs) -> Result<ExitCode, BenchError> {
    let report = if a.inject_fault {
        if a.scheme != SchemeKind::Avl {
            return Err(BenchError::Config("fault injection is only available for avl".into()));
        }
        verify(&NoRotateAvl, a.trials, a.seed.seed)
    } else {
        SchemeConfig::new(a.scheme).dispatch(RunVerify {
            trials: a.trials,
            seed: a.seed.seed,
        })?
    };
    match &report.failure {
        None => {
            println!(
                "{}: {} trials, {} checks passed, digest {:016x}",
                a.scheme, report.trials, report.checks, report.digest
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(cx) => {
            println!("{}: violation in trial {} of {}", a.scheme, report.trials, a.trials);
            println!("{cx}");
            println!(
                "reproduce: jointree verify --scheme {} --trials 1 --seed {}",
                a.scheme, cx.seed
            );
            Ok(ExitCode::from(1))
        }
    }
}

fn scaling(a: ScalingArgs) -> Result<(), BenchError> {
    let rows = run_scaling(&SchemeConfig::new(a.scheme), a.op, a.n, &sweep_sizes(a.n), a.seed.seed)?;
    append_csv(&a.csv, &rows)?;
    for r in &rows {
        println!("m={:>9} comparisons={:>10} ratio={:.4}", r.m, r.comparisons, r.ratio);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match cli.cmd {
        Cmd::Gen(a) => gen(a).map(|_| ExitCode::SUCCESS),
        Cmd::Bench(a) => bench(a).map(|_| ExitCode::SUCCESS),
        Cmd::Verify(a) => verify_cmd(a),
        Cmd::Scaling(a) => scaling(a).map(|_| ExitCode::SUCCESS),
    };
    match out {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
