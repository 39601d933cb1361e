//! Command-line interface.
//!
//! Exit codes: 0 success, 1 usage error (bad flags, unknown preset,
//! missing formula inputs), 2 runtime error (I/O, config file contents,
//! numeric failures).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use blindrank_core::{
    eigenvector_centrality, infer_centrality, leading_eigenpair, sample_bound, BoundInputs,
    Graph, NoiseLaw, SignalBatch, DEFAULT_MAX_ITER, DEFAULT_TOL,
};

use crate::config::{ExperimentConfig, OutputFormat, Preset};
use crate::error::CliError;
use crate::runner::run_experiment;
use crate::table::emit_results;

/// Environment variable holding the default output directory; relative
/// output paths are resolved against it. The CLI reads no other
/// environment state.
pub const OUT_DIR_ENV: &str = "BLINDRANK_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "blindrank",
    version,
    about = "Infer eigenvector-centrality rankings of an unobserved graph from graph signals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a preset or configured experiment and write its results table.
    Run(RunArgs),
    /// Run the inference pipeline on a stored signal batch.
    Infer(InferArgs),
    /// Evaluate the sample-complexity calculators.
    Bound(BoundArgs),
    /// Generate or inspect graphs.
    Graph(GraphArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Experiment preset to run.
    #[arg(long, required_unless_present = "config", conflicts_with = "config")]
    preset: Option<Preset>,
    /// JSON config file (see `ExperimentConfig`); flags below override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Output path; defaults to `<preset>.<format>` in the output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format override.
    #[arg(long)]
    format: Option<OutputFormat>,
    /// Number of runs override.
    #[arg(long)]
    runs: Option<usize>,
    /// Sample-grid override, comma-separated (e.g. "100,1000,10000").
    #[arg(long)]
    samples: Option<String>,
    /// fig3: trials per grid point override.
    #[arg(long)]
    trials: Option<usize>,
    /// Noise law override (gaussian | rademacher | uniform).
    #[arg(long, value_parser = NoiseLaw::from_str)]
    noise: Option<NoiseLaw>,
}

#[derive(Debug, Args)]
struct InferArgs {
    /// Signal batch CSV written by the library (with its .meta.json sidecar).
    #[arg(long)]
    signals: PathBuf,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Power-iteration tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    /// General sample bound from coherence, spikiness, and gap.
    Sample,
    /// Dense ER bound on kappa: C n^(3/2) p.
    ErKappa,
    /// Dense ER sample bound: C t^2 m n / ln n.
    ErSample,
}

#[derive(Debug, Args)]
struct BoundArgs {
    #[arg(long, value_enum, default_value_t = Formula::Sample)]
    formula: Formula,
    /// Coherence mu (sample).
    #[arg(long)]
    mu: Option<f64>,
    /// Residual spikiness kappa (sample).
    #[arg(long)]
    kappa: Option<f64>,
    /// Leading covariance eigenvalue (sample).
    #[arg(long)]
    beta1: Option<f64>,
    /// Signal-energy bound m (sample, er-sample).
    #[arg(long)]
    m: Option<f64>,
    /// Node count (all formulas).
    #[arg(long)]
    n: Option<usize>,
    /// Centrality gap alpha (sample).
    #[arg(long)]
    alpha: Option<f64>,
    /// Confidence parameter t (sample, er-sample).
    #[arg(long)]
    t: Option<f64>,
    /// Edge probability (er-kappa).
    #[arg(long)]
    p: Option<f64>,
    /// Absolute constant.
    #[arg(long = "C", default_value_t = 1.0)]
    constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphModel {
    Er,
    Ba,
    Karate,
}

#[derive(Debug, Args)]
struct GraphArgs {
    /// Graph model to generate.
    #[arg(long, required_unless_present = "load", conflicts_with = "load")]
    model: Option<GraphModel>,
    /// Inspect an existing edge-list file instead of generating.
    #[arg(long)]
    load: Option<PathBuf>,
    /// Node count (er, ba).
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability (er).
    #[arg(long)]
    p: Option<f64>,
    /// Edges per entrant (ba).
    #[arg(long)]
    m: Option<usize>,
    /// Seed nodes (ba); defaults to m.
    #[arg(long)]
    m0: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the graph as an edge list.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print a summary (default when --out is absent).
    #[arg(long)]
    info: bool,
}

/// Errors grouped by which exit code they map to.
enum ExecError {
    Usage(String),
    Runtime(CliError),
}

impl From<CliError> for ExecError {
    fn from(e: CliError) -> Self {
        ExecError::Runtime(e)
    }
}

impl From<blindrank_core::Error> for ExecError {
    fn from(e: blindrank_core::Error) -> Self {
        ExecError::Runtime(CliError::Core(e))
    }
}

/// Entry point shared by the binary and tests. Returns the process exit
/// code: 0 success, 1 usage error, 2 runtime error.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    1
                }
            };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(ExecError::Usage(message)) => {
            eprintln!("usage error: {message}");
            1
        }
        Err(ExecError::Runtime(e)) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<(), ExecError> {
    match cli.command {
        Command::Run(args) => run_command(args, std::env::var(OUT_DIR_ENV).ok()),
        Command::Infer(args) => infer_command(args, std::env::var(OUT_DIR_ENV).ok()),
        Command::Bound(args) => bound_command(args),
        Command::Graph(args) => graph_command(args, std::env::var(OUT_DIR_ENV).ok()),
    }
}

/// Resolve an output path: explicit absolute paths win; relative paths land
/// in the directory named by `OUT_DIR_ENV` when it is set.
pub fn resolve_output(out: Option<PathBuf>, default_name: &str, out_dir: Option<&str>) -> PathBuf {
    let path = out.unwrap_or_else(|| PathBuf::from(default_name));
    match out_dir {
        Some(dir) if path.is_relative() => Path::new(dir).join(path),
        _ => path,
    }
}

fn run_command(args: RunArgs, out_dir: Option<String>) -> Result<(), ExecError> {
    let mut config = match (&args.preset, &args.config) {
        (Some(preset), None) => ExperimentConfig::preset_defaults(*preset),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(CliError::file(path))?;
            ExperimentConfig::from_json(&text)?
        }
        _ => unreachable!("clap enforces exactly one source"),
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }
    if let Some(runs) = args.runs {
        config.runs = runs;
    }
    if let Some(noise) = args.noise {
        config.noise = noise;
    }
    if let Some(format) = args.format {
        config.format = format;
    }
    if let Some(spec) = &args.samples {
        let grid: Result<Vec<usize>, _> = spec.split(',').map(|s| s.trim().parse()).collect();
        let grid = grid.map_err(|e| ExecError::Usage(format!("--samples: {e}")))?;
        match config.preset {
            Preset::Fig3 => {
                config.protocol.sample_grid = grid;
                config.protocol.max_samples =
                    *config.protocol.sample_grid.last().unwrap_or(&0);
            }
            _ => config.sample_grid = grid,
        }
    }
    if let Some(trials) = args.trials {
        config.protocol.trials_per_point = trials;
    }
    config.validate()?;

    let table = run_experiment(&config)?;
    // The output path is not part of the experiment: identical configs give
    // byte-identical files wherever they are written.
    let default_name = config.default_output_name();
    let out = resolve_output(
        args.out.or_else(|| config.output.as_ref().map(PathBuf::from)),
        &default_name,
        out_dir.as_deref(),
    );
    emit_results(&table, &out, config.format)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn infer_command(args: InferArgs, out_dir: Option<String>) -> Result<(), ExecError> {
    let batch = SignalBatch::read_csv(&args.signals)?;
    let profile = infer_centrality(&batch, args.tol)?;
    match args.out {
        Some(out) => {
            let out = resolve_output(Some(out), "centrality.csv", out_dir.as_deref());
            let mut buffer = Vec::new();
            profile
                .write_csv(&mut buffer)
                .map_err(|e| CliError::File {
                    path: out.display().to_string(),
                    source: e,
                })?;
            std::fs::write(&out, buffer).map_err(CliError::file(&out))?;
            println!("wrote {}", out.display());
        }
        None => {
            let mut stdout = std::io::stdout();
            profile.write_csv(&mut stdout).map_err(|e| {
                CliError::File {
                    path: "<stdout>".into(),
                    source: e,
                }
            })?;
        }
    }
    Ok(())
}

fn require<T>(value: Option<T>, flag: &str, formula: &str) -> Result<T, ExecError> {
    value.ok_or_else(|| ExecError::Usage(format!("{flag} is required for --formula {formula}")))
}

fn bound_command(args: BoundArgs) -> Result<(), ExecError> {
    match args.formula {
        Formula::Sample => {
            let inputs = BoundInputs {
                mu: require(args.mu, "--mu", "sample")?,
                kappa: require(args.kappa, "--kappa", "sample")?,
                beta1: require(args.beta1, "--beta1", "sample")?,
                m: require(args.m, "--m", "sample")?,
                n: require(args.n, "--n", "sample")?,
                alpha: require(args.alpha, "--alpha", "sample")?,
                t: require(args.t, "--t", "sample")?,
                constant: args.constant,
            };
            println!("{}", sample_bound(&inputs)?);
        }
        Formula::ErKappa => {
            let n = require(args.n, "--n", "er-kappa")?;
            let p = require(args.p, "--p", "er-kappa")?;
            println!("{}", blindrank_core::er_kappa_bound(n, p, args.constant)?);
        }
        Formula::ErSample => {
            let n = require(args.n, "--n", "er-sample")?;
            let m = require(args.m, "--m", "er-sample")?;
            let t = require(args.t, "--t", "er-sample")?;
            println!("{}", blindrank_core::er_sample_bound(n, m, t, args.constant)?);
        }
    }
    Ok(())
}

fn graph_command(args: GraphArgs, out_dir: Option<String>) -> Result<(), ExecError> {
    let graph = match (&args.model, &args.load) {
        (Some(GraphModel::Er), None) => {
            let n = require(args.n, "--n", "er")?;
            let p = require(args.p, "--p", "er")?;
            blindrank_core::erdos_renyi(
                n,
                p,
                &mut blindrank_core::seeding::stream_rng(args.seed),
            )?
        }
        (Some(GraphModel::Ba), None) => {
            let n = require(args.n, "--n", "ba")?;
            let m = require(args.m, "--m", "ba")?;
            let m0 = args.m0.unwrap_or(m);
            blindrank_core::barabasi_albert(
                n,
                m,
                m0,
                &mut blindrank_core::seeding::stream_rng(args.seed),
            )?
        }
        (Some(GraphModel::Karate), None) => blindrank_core::load_karate()?,
        (None, Some(path)) => Graph::read_edge_list(path)?,
        _ => unreachable!("clap enforces exactly one source"),
    };

    let wants_info = args.info || args.out.is_none();
    if let Some(out) = args.out {
        let out = resolve_output(Some(out), "graph.txt", out_dir.as_deref());
        graph.write_edge_list(&out)?;
        println!("wrote {}", out.display());
    }
    if wants_info {
        print_graph_info(&graph)?;
    }
    Ok(())
}

fn print_graph_info(graph: &Graph) -> Result<(), ExecError> {
    let (lambda1, _) = leading_eigenpair(graph.adjacency(), DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let profile = eigenvector_centrality(graph, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    println!(
        "nodes={} edges={} connected={} max_degree={} lambda1={:.6}",
        graph.node_count(),
        graph.edge_count(),
        graph.is_connected(),
        graph.max_degree(),
        lambda1
    );
    let mut by_rank: Vec<usize> = (0..graph.node_count()).collect();
    by_rank.sort_by_key(|&i| profile.rank(i));
    let top: Vec<String> = by_rank
        .iter()
        .take(5)
        .map(|&i| {
            let label = graph
                .label(i)
                .map(|l| format!("[{l}]"))
                .unwrap_or_default();
            format!("{i}{label}:{:.4}", profile.value(i))
        })
        .collect();
    println!("top_centrality: {}", top.join(" "));
    Ok(())
}
