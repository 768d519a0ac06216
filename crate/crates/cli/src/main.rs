use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hypermatch::estimators::{
    estimate_L_stats, sweep_constant, DimsRule, Experiment, ModelFamily, SweepConfig, DEFAULT_SIZE_FACTOR,
};
use hypermatch::graph::is_chain;
use hypermatch::io::{read_instance, write_instance, InstanceHeader};
use hypermatch::suites::{run_suite, Suite};
use hypermatch::{longest_noncrossing_matching, EdgeGuard, Error, ModelKind, ModelSpec, Seed};
use serde_json::{json, Value};

const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_RESOURCE: u8 = 3;
const EXIT_SUITE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "hypermatch",
    version,
    about = "Longest non-crossing matchings in random hyper-graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one instance and write it as JSONL.
    Sample {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        guard: GuardArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute L of an instance file.
    Solve {
        /// Instance file, `-` for stdin.
        input: PathBuf,
        /// Also print one largest matching.
        #[arg(long)]
        witness: bool,
    },
    /// Monte Carlo summary of L.
    Estimate {
        #[command(flatten)]
        model: ModelArgs,
        /// Point or permutation count for `permutation-array` and `unit-cube`.
        #[arg(long)]
        n: Option<usize>,
        /// Pair count for `involution`.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        guard: GuardArgs,
        /// Per-replicate JSONL output.
        #[arg(long)]
        replicates: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Normalized L over a grid of p or k.
    Sweep {
        #[arg(long)]
        model: ModelKind,
        /// Number of classes (binomial/word).
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_delimiter = ',', conflicts_with = "k_grid")]
        p_grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        k_grid: Option<Vec<u32>>,
        /// `N`, `C/sqrt(p)`, `C*sqrt(k)` or `C*t^lambda`.
        #[arg(long)]
        n_rule: DimsRule,
        #[arg(long, default_value_t = 400)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `A` in the size condition `N >= A t^lambda`.
        #[arg(long, default_value_t = DEFAULT_SIZE_FACTOR)]
        size_factor: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        guard: GuardArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run named verification suites.
    Verify {
        /// Suite name, or `all`; repeatable.
        #[arg(long, required = true)]
        suite: Vec<String>,
        /// Instances or replicates; defaults per suite.
        #[arg(long)]
        cases: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        run: RunArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// binomial, word, symmetric, antisymmetric, oriented; for `estimate`
    /// also permutation-array, unit-cube, involution.
    #[arg(long)]
    model: String,
    /// Class sizes, or the single size `n` of the square models.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<u32>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    /// Dimension for `permutation-array` and `unit-cube`.
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads; results do not depend on it.
    #[arg(long, env = "HYPERMATCH_WORKERS")]
    workers: Option<usize>,
}

impl RunArgs {
    fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
            .max(1)
    }
}

#[derive(Args)]
struct GuardArgs {
    /// Refuse instances with more expected edges than this.
    #[arg(long, default_value_t = hypermatch::samplers::DEFAULT_MAX_EDGES)]
    max_edges: f64,
    /// Disable the edge guard.
    #[arg(long)]
    force: bool,
}

impl GuardArgs {
    fn guard(&self) -> EdgeGuard {
        if self.force {
            EdgeGuard::unlimited()
        } else {
            EdgeGuard {
                max_edges: self.max_edges,
            }
        }
    }

    fn config(&self) -> Value {
        json!({"max_edges": self.max_edges, "force": self.force})
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.root() {
            Error::Resource(_) => EXIT_RESOURCE,
            _ => EXIT_VALIDATION,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

type CliResult<T = ()> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Command) -> CliResult {
    match cmd {
        Command::Sample {
            model,
            seed,
            guard,
            output,
        } => cmd_sample(&model, Seed(seed), &guard, output),
        Command::Solve { input, witness } => cmd_solve(input, witness),
        Command::Estimate {
            model,
            n,
            m,
            reps,
            seed,
            run,
            guard,
            replicates,
            output,
        } => {
            let experiment = experiment(&model, n, m, &guard)?;
            cmd_estimate(experiment, &guard, reps, Seed(seed), run.workers(), replicates, output)
        }
        Command::Sweep {
            model,
            d,
            p_grid,
            k_grid,
            n_rule,
            reps,
            seed,
            size_factor,
            format,
            run,
            guard,
            output,
        } => {
            let grid = match (model, p_grid, k_grid) {
                (ModelKind::Word, None, Some(k)) => k.into_iter().map(f64::from).collect(),
                (ModelKind::Word, _, _) => return Err(usage("word sweeps take --k-grid")),
                (_, Some(p), None) => p,
                _ => return Err(usage("this model takes --p-grid")),
            };
            let cfg = SweepConfig {
                family: ModelFamily { kind: model, d },
                grid,
                rule: n_rule,
                reps,
                seed: Seed(seed),
                workers: run.workers(),
                size_factor,
                guard: guard.guard(),
            };
            cmd_sweep(&cfg, &guard, format, output)
        }
        Command::Verify {
            suite,
            cases,
            seed,
            run,
            output,
        } => cmd_verify(&suite, cases, Seed(seed), run.workers(), output),
    }
}

fn model_spec(a: &ModelArgs) -> CliResult<ModelSpec> {
    let kind: ModelKind = a.model.parse().map_err(|e: Error| usage(e.to_string()))?;
    if a.dims.is_empty() {
        return Err(usage("--dims is required"));
    }
    Ok(ModelSpec::build(kind, a.dims.clone(), a.p, a.k)?)
}

fn experiment(a: &ModelArgs, n: Option<usize>, m: Option<usize>, guard: &GuardArgs) -> CliResult<Experiment> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for {}", a.model)));
    Ok(match a.model.as_str() {
        "permutation-array" => Experiment::PermutationArray {
            n: need(n, "n")?,
            d: need(a.d, "d")?,
        },
        "unit-cube" => Experiment::UnitCube {
            n: need(n, "n")?,
            d: need(a.d, "d")?,
        },
        "involution" => Experiment::Involution { m: need(m, "m")? },
        _ => Experiment::Model {
            spec: model_spec(a)?,
            guard: guard.guard(),
        },
    })
}

fn open_output(path: &Option<PathBuf>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit_json(path: &Option<PathBuf>, v: &Value) -> CliResult {
    let mut w = open_output(path)?;
    writeln!(w, "{}", serde_json::to_string_pretty(v).expect("serializable"))?;
    w.flush()?;
    Ok(())
}

fn cmd_sample(model: &ModelArgs, seed: Seed, guard: &GuardArgs, output: Option<PathBuf>) -> CliResult {
    let spec = model_spec(model)?;
    let s = spec.sample(seed, &guard.guard())?;
    let header = InstanceHeader::for_sample(&spec, seed, s.words.as_deref());
    write_instance(open_output(&output)?, &header, &s.graph)?;
    Ok(())
}

fn cmd_solve(input: PathBuf, witness: bool) -> CliResult {
    let (_, h) = if input.as_os_str() == "-" {
        read_instance(io::stdin().lock())?
    } else {
        read_instance(BufReader::new(File::open(&input)?))?
    };
    let r = longest_noncrossing_matching(&h, witness);
    let mut out = json!({"L": r.length});
    if let Some(w) = &r.witness {
        if w.len() != r.length || !is_chain(w) || !w.iter().all(|e| h.contains(&e.0)) {
            return Err(Failure {
                code: EXIT_VALIDATION,
                msg: "witness failed revalidation".into(),
            });
        }
        out["witness"] = json!(w);
    }
    println!("{out}");
    Ok(())
}

fn cmd_estimate(
    experiment: Experiment,
    guard: &GuardArgs,
    reps: usize,
    seed: Seed,
    workers: usize,
    replicates: Option<PathBuf>,
    output: Option<PathBuf>,
) -> CliResult {
    let est = estimate_L_stats(&experiment, reps, seed, workers)?;
    if let Some(path) = &replicates {
        let mut w = BufWriter::new(File::create(path)?);
        for r in &est.records {
            writeln!(w, "{}", serde_json::to_string(r).expect("serializable"))?;
        }
        w.flush()?;
    }
    let config = json!({
        "command": "estimate",
        "version": VERSION,
        "experiment": experiment,
        "reps": reps,
        "seed": seed,
        "guard": guard.config(),
    });
    emit_json(&output, &json!({"config": config, "stats": est.stats}))
}

fn cmd_sweep(cfg: &SweepConfig, guard: &GuardArgs, format: Format, output: Option<PathBuf>) -> CliResult {
    let report = sweep_constant(cfg)?;
    let config = json!({
        "command": "sweep",
        "version": VERSION,
        "family": cfg.family,
        "grid": cfg.grid,
        "n_rule": cfg.rule,
        "reps": cfg.reps,
        "seed": cfg.seed,
        "size_factor": cfg.size_factor,
        "guard": guard.config(),
    });
    for r in &report.rows {
        if let Some(w) = &r.warning {
            eprintln!("warning: grid point {}: {w}", r.param);
        }
    }
    match format {
        Format::Json => emit_json(&output, &json!({"config": config, "report": report})),
        Format::Csv => {
            let mut w = open_output(&output)?;
            writeln!(w, "# {config}")?;
            w.write_all(report.to_csv().as_bytes())?;
            w.flush()?;
            Ok(())
        }
    }
}

fn cmd_verify(
    names: &[String],
    cases: Option<usize>,
    seed: Seed,
    workers: usize,
    output: Option<PathBuf>,
) -> CliResult {
    let mut suites = Vec::new();
    for n in names {
        if n == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(n.parse::<Suite>().map_err(|e| usage(e.to_string()))?);
        }
    }
    let mut reports = Vec::new();
    for s in &suites {
        let c = cases.unwrap_or(s.default_cases());
        let r = run_suite(*s, c, seed, workers)?;
        eprintln!("{}: {}", s, if r.passed { "pass" } else { "FAIL" });
        reports.push(r);
    }
    let passed = reports.iter().all(|r| r.passed);
    let config = json!({
        "command": "verify",
        "version": VERSION,
        "suites": suites,
        "cases": cases,
        "seed": seed,
    });
    emit_json(
        &output,
        &json!({"config": config, "passed": passed, "reports": reports}),
    )?;
    if passed {
        Ok(())
    } else {
        Err(Failure {
            code: EXIT_SUITE,
            msg: "suite failure".into(),
        })
    }
}
