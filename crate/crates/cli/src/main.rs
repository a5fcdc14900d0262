// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use planted_clique::detection::rectangular_audit;
use planted_clique::graph::{AdjacencyOracle, InstanceKind, InstanceSpec};
use planted_clique::harness::{
    read_ledger, read_plan, run_bench, run_experiment, AlgorithmId, BenchConfig, ExperimentConfig, KRule,
    THREADS_ENV,
};

#[derive(Parser)]
#[command(name = "pclique", version, about = "Planted clique instances, recovery and detection experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance descriptor. No edges are materialized.
    Gen(GenArgs),
    /// Run a recovery experiment.
    Run(RunArgs),
    /// Run paired null/planted detection trials.
    Detect(RunArgs),
    /// Sweep an experiment over several (n, k) points.
    Bench(BenchArgs),
    /// Check a recorded ledger dump against a rectangle plan.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Kv,
    Json,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    kind: InstanceKind,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p_clique: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Kv)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Flags shared by `run`, `detect` and `bench`. Each overrides the matching
/// key of `--config`.
#[derive(Args, Clone)]
struct ExperimentArgs {
    /// `key=value` or JSON experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    algorithm: Option<AlgorithmId>,
    #[arg(long)]
    kind: Option<InstanceKind>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p_clique: Option<f64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Seed of trial 0; trial t uses seed + t.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    l_in: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    memoize: bool,
    /// Worker threads.
    #[arg(long, env = THREADS_ENV)]
    parallelism: Option<usize>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    record_queries: bool,
    /// Audit every detection run; implies --record-queries.
    #[arg(long)]
    audit: bool,
    /// Directory for per-trial ledger and plan dumps; implies --record-queries.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    exp: ExperimentArgs,
    /// Comma-separated vertex counts.
    #[arg(long = "ns", value_delimiter = ',', required = true)]
    ns: Vec<usize>,
    /// Comma-separated clique sizes, one per n or a single value for all.
    #[arg(long = "ks", value_delimiter = ',', conflicts_with = "k_rule")]
    ks: Vec<usize>,
    /// `sqrt:<m>`, `pow:<e>` or `fixed:<k>`.
    #[arg(long)]
    k_rule: Option<KRule>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    ledger: PathBuf,
    #[arg(long)]
    plan: PathBuf,
    /// Offending pairs to print.
    #[arg(long, default_value_t = 20)]
    show: usize,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn gen(args: GenArgs) -> Result<()> {
    let spec = InstanceSpec {
        kind: args.kind,
        n: args.n,
        k: args.k,
        p_clique: args.p_clique,
        seed: args.seed,
    };
    AdjacencyOracle::build(&spec)?;
    let text = match args.format {
        Format::Kv => spec.to_kv(),
        Format::Json => spec.to_json()? + "\n",
    };
    emit(args.out.as_deref(), &text)
}

fn experiment(args: &ExperimentArgs, default_algorithm: AlgorithmId) -> Result<ExperimentConfig> {
    let mut c = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            ExperimentConfig::parse(&text)?
        }
        None => ExperimentConfig {
            algorithm: default_algorithm,
            ..ExperimentConfig::default()
        },
    };
    macro_rules! set {
        ($($field:ident),*) => {$(
            if let Some(v) = args.$field.clone() {
                c.$field = v;
            }
        )*};
    }
    set!(algorithm, kind, n, trials, c);
    if let Some(v) = args.seed {
        c.seed_base = v;
    }
    if let Some(v) = args.parallelism {
        c.parallelism = v;
    }
    if args.k.is_some() {
        c.k = args.k;
    }
    if args.p_clique.is_some() {
        c.p_clique = args.p_clique;
    }
    if args.l_in.is_some() {
        c.l_in = args.l_in;
    }
    if args.p.is_some() {
        c.p = args.p;
    }
    if args.threshold.is_some() {
        c.threshold = args.threshold;
    }
    if args.budget.is_some() {
        c.budget = args.budget;
    }
    if args.dump_dir.is_some() {
        c.dump_dir = args.dump_dir.clone();
    }
    c.memoize |= args.memoize;
    c.audit |= args.audit;
    c.record_queries |= args.record_queries || c.audit || c.dump_dir.is_some();
    if args.out.is_some() {
        c.output = args.out.clone();
    }
    if c.n == 0 {
        bail!("--n (or `n` in --config) is required");
    }
    c.validate()?;
    Ok(c)
}

fn run(args: RunArgs, detection: bool) -> Result<ExitCode> {
    let default = if detection { AlgorithmId::DetectSubsampled } else { AlgorithmId::Khdac };
    let mut c = experiment(&args.exp, default)?;
    if c.algorithm.is_detection() != detection {
        bail!(
            "`{}` is not a {} algorithm",
            c.algorithm,
            if detection { "detection" } else { "recovery" }
        );
    }
    let out = c.output.take();
    let report = run_experiment(&c)?;
    emit(out.as_deref(), &report.to_csv())?;
    let agg = report.aggregate();
    eprintln!("{}", agg.line());
    Ok(if agg.errors > 0 { ExitCode::from(3) } else { ExitCode::SUCCESS })
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    // Validation needs some n and k; every point overrides both.
    let mut exp = args.exp.clone();
    exp.n = exp.n.or(Some(args.ns[0]));
    let k0 = match (&args.k_rule, args.ks.first()) {
        (Some(rule), _) => rule.k(args.ns[0]),
        (None, Some(&k)) => k,
        (None, None) => bail!("bench needs --ks or --k-rule"),
    };
    exp.k = Some(k0);
    let out = exp.out.take();
    let base = experiment(&exp, AlgorithmId::Khdac)?;
    let cfg = match args.k_rule {
        Some(rule) => BenchConfig::from_rule(base, &args.ns, rule),
        None => {
            let ks = match args.ks.len() {
                1 => vec![args.ks[0]; args.ns.len()],
                l if l == args.ns.len() => args.ks.clone(),
                _ => bail!("--ks needs one value or one per n"),
            };
            BenchConfig {
                base,
                points: args.ns.iter().copied().zip(ks).collect(),
            }
        }
    };
    let report = run_bench(&cfg)?;
    emit(out.as_deref(), &report.to_csv())?;
    if let Some(s) = report.query_slope() {
        eprintln!("log-log slope of mean queries vs n: {s:.4}");
    }
    Ok(ExitCode::SUCCESS)
}

fn audit(args: AuditArgs) -> Result<ExitCode> {
    let ledger = read_ledger(&args.ledger).with_context(|| format!("reading {}", args.ledger.display()))?;
    let plan = read_plan(&args.plan).with_context(|| format!("reading {}", args.plan.display()))?;
    let report = rectangular_audit(&ledger, &plan)?;
    if report.passed {
        println!("PASS: {} queries inside the rectangle", ledger.raw_count());
        return Ok(ExitCode::SUCCESS);
    }
    println!(
        "FAIL: {} pairs outside the rectangle; plan registered before first query: {}",
        report.offending.len(),
        report.registered_before_first_query
    );
    for (u, v) in report.offending.iter().take(args.show) {
        println!("  {u},{v}");
    }
    Ok(ExitCode::from(1))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(a) => gen(a).map(|_| ExitCode::SUCCESS),
        Command::Run(a) => run(a, false),
        Command::Detect(a) => run(a, true),
        Command::Bench(a) => bench(a),
        Command::Audit(a) => audit(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
