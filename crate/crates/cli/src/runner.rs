//! Experiment protocols: graph generation, signal synthesis, inference, and
//! metric evaluation per preset, assembled into deterministic tables.
//!
//! Seeding layout: graphs draw from `(master, GRAPH, sweep, run)`, signal
//! batches from `(master, SIGNAL, sweep, run, grid_index)`, and the fig3
//! protocol from `(master, PROTOCOL)`. Work items are independent, so runs
//! execute in parallel and the assembled table is schedule-independent.

use rayon::prelude::*;

use blindrank_core::seeding::{derive_path, stream_rng};
use blindrank_core::{
    barabasi_albert, eigenvector_centrality, erdos_renyi, generate_signals, infer_centrality,
    load_karate, make_normalized_filter, spearman, sufficiency_profile, windowed_spearman, Graph,
    DEFAULT_MAX_ITER, DEFAULT_TOL,
};

use crate::config::{ExperimentConfig, GraphSpec, Preset};
use crate::error::CliError;
use crate::table::{Cell, ResultsTable};

const GRAPH_STREAM: u64 = 1;
const SIGNAL_STREAM: u64 = 2;
const PROTOCOL_STREAM: u64 = 3;

/// Seed of the graph generated for `(sweep, run)`.
pub fn graph_seed(master: u64, sweep: usize, run: usize) -> u64 {
    derive_path(master, &[GRAPH_STREAM, sweep as u64, run as u64])
}

/// Seed of the signal batch generated for `(sweep, run, grid_index)`.
pub fn signal_seed(master: u64, sweep: usize, run: usize, grid_index: usize) -> u64 {
    derive_path(
        master,
        &[SIGNAL_STREAM, sweep as u64, run as u64, grid_index as u64],
    )
}

/// Materialize a graph specification.
pub fn build_graph(spec: &GraphSpec, seed: u64) -> Result<Graph, blindrank_core::Error> {
    match spec {
        GraphSpec::Er { n, p } => erdos_renyi(*n, *p, &mut stream_rng(seed)),
        GraphSpec::Ba { n, m, m0 } => barabasi_albert(*n, *m, *m0, &mut stream_rng(seed)),
        GraphSpec::Karate => load_karate(),
        GraphSpec::EdgeList { path } => Graph::read_edge_list(path),
    }
}

/// Run the configured experiment and return its results table.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    config.validate()?;
    let mut table = match config.preset {
        Preset::Fig2a => run_fig2a(config)?,
        Preset::Fig2b => run_fig2b(config)?,
        Preset::Fig2c => run_fig2c(config)?,
        Preset::Fig2d => run_fig2d(config)?,
        Preset::Fig3 => run_fig3(config)?,
        Preset::Custom => run_custom(config)?,
    };
    let mut metadata = vec![
        ("preset".to_string(), config.preset.name().to_string()),
        ("master_seed".to_string(), config.master_seed.to_string()),
        (
            "version".to_string(),
            env!("CARGO_PKG_VERSION").to_string(),
        ),
        (
            "config".to_string(),
            serde_json::to_string(config).expect("config serializes"),
        ),
    ];
    metadata.append(&mut table.metadata);
    table.metadata = metadata;
    Ok(table)
}

fn mean(values: impl Iterator<Item = f64>) -> f64 {
    let collected: Vec<f64> = values.collect();
    collected.iter().sum::<f64>() / collected.len() as f64
}

/// Truth-vs-estimate Spearman for each grid entry on one generated graph.
fn spearman_curve(
    graph: &Graph,
    config: &ExperimentConfig,
    grid: &[usize],
    sweep: usize,
    run: usize,
    context: &str,
) -> Result<Vec<f64>, CliError> {
    let ctx = |stage: &str| format!("{context}, run {run} ({stage})");
    let filter =
        make_normalized_filter(graph, config.filter_order).map_err(CliError::in_context(ctx("filter")))?;
    let truth = eigenvector_centrality(graph, DEFAULT_TOL, DEFAULT_MAX_ITER)
        .map_err(CliError::in_context(ctx("centrality")))?;
    grid.iter()
        .enumerate()
        .map(|(grid_index, &num_samples)| {
            let seed = signal_seed(config.master_seed, sweep, run, grid_index);
            let batch = generate_signals(&filter, num_samples, config.noise, seed)
                .map_err(CliError::in_context(format!("{context}, run {run}, N={num_samples}")))?;
            let estimate = infer_centrality(&batch, DEFAULT_TOL)
                .map_err(CliError::in_context(format!("{context}, run {run}, N={num_samples}")))?;
            spearman(truth.values().as_slice(), estimate.values().as_slice())
                .map_err(CliError::in_context(format!("{context}, run {run}, N={num_samples}")))
        })
        .collect()
}

fn run_fig2a(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    let n = match config.graph {
        GraphSpec::Er { n, .. } => n,
        _ => unreachable!("validated"),
    };
    let runs = config.runs;
    let tasks: Vec<(usize, usize)> = (0..config.p_values.len())
        .flat_map(|s| (0..runs).map(move |r| (s, r)))
        .collect();
    let results: Vec<(bool, Vec<f64>)> = tasks
        .par_iter()
        .map(|&(sweep, run)| {
            let p = config.p_values[sweep];
            let context = format!("fig2a p={p}");
            let graph = erdos_renyi(
                n,
                p,
                &mut stream_rng(graph_seed(config.master_seed, sweep, run)),
            )
            .map_err(CliError::in_context(context.clone()))?;
            let curve = spearman_curve(&graph, config, &config.sample_grid, sweep, run, &context)?;
            Ok((graph.is_connected(), curve))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = ResultsTable::new(vec!["p", "N", "run", "spearman", "connected"]);
    for (sweep, &p) in config.p_values.iter().enumerate() {
        for (grid_index, &num_samples) in config.sample_grid.iter().enumerate() {
            for run in 0..runs {
                let (connected, curve) = &results[sweep * runs + run];
                table.push_row(vec![
                    Cell::Float(p),
                    Cell::from(num_samples),
                    Cell::from(run),
                    Cell::Float(curve[grid_index]),
                    Cell::Bool(*connected),
                ]);
            }
        }
    }
    for (sweep, &p) in config.p_values.iter().enumerate() {
        for (grid_index, &num_samples) in config.sample_grid.iter().enumerate() {
            let m = mean((0..runs).map(|run| results[sweep * runs + run].1[grid_index]));
            table.push_row(vec![
                Cell::Float(p),
                Cell::from(num_samples),
                Cell::text("mean"),
                Cell::Float(m),
                Cell::Empty,
            ]);
        }
    }
    Ok(table)
}

/// Map a normalized sample size to an absolute count for a given graph size.
pub fn normalized_to_samples(s: f64, n: usize) -> usize {
    ((s * n as f64 / (n as f64).ln()).round() as usize).max(1)
}

fn run_fig2b(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    let runs = config.runs;
    let sizes = &config.n_values;
    let grids: Vec<Vec<usize>> = sizes
        .iter()
        .map(|&n| {
            config
                .normalized_grid
                .iter()
                .map(|&s| normalized_to_samples(s, n))
                .collect()
        })
        .collect();

    let tasks: Vec<(usize, usize)> = (0..sizes.len())
        .flat_map(|s| (0..runs).map(move |r| (s, r)))
        .collect();
    let results: Vec<(bool, Vec<f64>)> = tasks
        .par_iter()
        .map(|&(sweep, run)| {
            let n = sizes[sweep];
            let p = 4.0 * (n as f64).ln() / n as f64;
            let context = format!("fig2b n={n}");
            let graph = erdos_renyi(
                n,
                p,
                &mut stream_rng(graph_seed(config.master_seed, sweep, run)),
            )
            .map_err(CliError::in_context(context.clone()))?;
            let curve = spearman_curve(&graph, config, &grids[sweep], sweep, run, &context)?;
            Ok((graph.is_connected(), curve))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = ResultsTable::new(vec![
        "n",
        "p",
        "N",
        "normalized_N",
        "run",
        "spearman",
        "connected",
    ]);
    for (sweep, &n) in sizes.iter().enumerate() {
        let p = 4.0 * (n as f64).ln() / n as f64;
        for (grid_index, &s) in config.normalized_grid.iter().enumerate() {
            for run in 0..runs {
                let (connected, curve) = &results[sweep * runs + run];
                table.push_row(vec![
                    Cell::from(n),
                    Cell::Float(p),
                    Cell::from(grids[sweep][grid_index]),
                    Cell::Float(s),
                    Cell::from(run),
                    Cell::Float(curve[grid_index]),
                    Cell::Bool(*connected),
                ]);
            }
        }
    }
    for (sweep, &n) in sizes.iter().enumerate() {
        let p = 4.0 * (n as f64).ln() / n as f64;
        for (grid_index, &s) in config.normalized_grid.iter().enumerate() {
            let m = mean((0..runs).map(|run| results[sweep * runs + run].1[grid_index]));
            table.push_row(vec![
                Cell::from(n),
                Cell::Float(p),
                Cell::from(grids[sweep][grid_index]),
                Cell::Float(s),
                Cell::text("mean"),
                Cell::Float(m),
                Cell::Empty,
            ]);
        }
    }
    Ok(table)
}

fn run_fig2c(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    let (n, p) = match config.graph {
        GraphSpec::Er { n, p } => (n, p),
        _ => unreachable!("validated"),
    };
    // The comparison graph is a Barabási–Albert model of matched density.
    let specs = [
        ("er", GraphSpec::Er { n, p }),
        ("ba", GraphSpec::Ba { n, m: 3, m0: 3 }),
    ];
    let runs = config.runs;
    let tasks: Vec<(usize, usize)> = (0..2).flat_map(|s| (0..runs).map(move |r| (s, r))).collect();
    let results: Vec<(bool, Vec<f64>)> = tasks
        .par_iter()
        .map(|&(sweep, run)| {
            let (name, spec) = &specs[sweep];
            let context = format!("fig2c {name}");
            let graph = build_graph(spec, graph_seed(config.master_seed, sweep, run))
                .map_err(CliError::in_context(context.clone()))?;
            let truth = eigenvector_centrality(&graph, DEFAULT_TOL, DEFAULT_MAX_ITER)
                .map_err(CliError::in_context(context))?;
            let mut values: Vec<f64> = truth.values().iter().copied().collect();
            values.sort_by(|a, b| a.partial_cmp(b).expect("finite centralities"));
            Ok((graph.is_connected(), values))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = ResultsTable::new(vec!["model", "position", "run", "centrality", "connected"]);
    for (sweep, (name, _)) in specs.iter().enumerate() {
        for position in 0..n {
            for run in 0..runs {
                let (connected, values) = &results[sweep * runs + run];
                table.push_row(vec![
                    Cell::text(*name),
                    Cell::from(position),
                    Cell::from(run),
                    Cell::Float(values[position]),
                    Cell::Bool(*connected),
                ]);
            }
        }
    }
    for (sweep, (name, _)) in specs.iter().enumerate() {
        for position in 0..n {
            let m = mean((0..runs).map(|run| results[sweep * runs + run].1[position]));
            table.push_row(vec![
                Cell::text(*name),
                Cell::from(position),
                Cell::text("mean"),
                Cell::Float(m),
                Cell::Empty,
            ]);
        }
    }
    Ok(table)
}

fn run_fig2d(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    let runs = config.runs;
    let grid = &config.sample_grid;
    // windows per (run, N): Vec<(start, rho)>.
    let results: Vec<(bool, Vec<Vec<(usize, f64)>>)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let context = "fig2d".to_string();
            let graph = build_graph(&config.graph, graph_seed(config.master_seed, 0, run))
                .map_err(CliError::in_context(context.clone()))?;
            let filter = make_normalized_filter(&graph, config.filter_order)
                .map_err(CliError::in_context(context.clone()))?;
            let truth = eigenvector_centrality(&graph, DEFAULT_TOL, DEFAULT_MAX_ITER)
                .map_err(CliError::in_context(context.clone()))?;
            let per_grid = grid
                .iter()
                .enumerate()
                .map(|(grid_index, &num_samples)| {
                    let ctx = format!("fig2d run {run}, N={num_samples}");
                    let seed = signal_seed(config.master_seed, 0, run, grid_index);
                    let batch = generate_signals(&filter, num_samples, config.noise, seed)
                        .map_err(CliError::in_context(ctx.clone()))?;
                    let estimate = infer_centrality(&batch, DEFAULT_TOL)
                        .map_err(CliError::in_context(ctx.clone()))?;
                    windowed_spearman(
                        truth.values().as_slice(),
                        estimate.values().as_slice(),
                        config.window_width,
                        config.window_stride,
                    )
                    .map_err(CliError::in_context(ctx))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((graph.is_connected(), per_grid))
        })
        .collect::<Result<_, CliError>>()?;

    let window_starts: Vec<usize> = results[0].1[0].iter().map(|&(s, _)| s).collect();
    let mut table = ResultsTable::new(vec!["N", "window_start", "run", "spearman", "connected"]);
    for (grid_index, &num_samples) in grid.iter().enumerate() {
        for (w, &start) in window_starts.iter().enumerate() {
            for run in 0..runs {
                let (connected, per_grid) = &results[run];
                table.push_row(vec![
                    Cell::from(num_samples),
                    Cell::from(start),
                    Cell::from(run),
                    Cell::Float(per_grid[grid_index][w].1),
                    Cell::Bool(*connected),
                ]);
            }
        }
    }
    for (grid_index, &num_samples) in grid.iter().enumerate() {
        for (w, &start) in window_starts.iter().enumerate() {
            let m = mean((0..runs).map(|run| results[run].1[grid_index][w].1));
            table.push_row(vec![
                Cell::from(num_samples),
                Cell::from(start),
                Cell::text("mean"),
                Cell::Float(m),
                Cell::Empty,
            ]);
        }
    }
    Ok(table)
}

fn run_fig3(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    let graph = load_karate().map_err(CliError::in_context("fig3"))?;
    let filter = make_normalized_filter(&graph, config.filter_order)
        .map_err(CliError::in_context("fig3 filter"))?;
    let truth = eigenvector_centrality(&graph, DEFAULT_TOL, DEFAULT_MAX_ITER)
        .map_err(CliError::in_context("fig3 centrality"))?;
    let seed = derive_path(config.master_seed, &[PROTOCOL_STREAM]);
    let result = sufficiency_profile(&graph, &filter, config.noise, &config.protocol, seed)
        .map_err(CliError::in_context("fig3 protocol"))?;

    let mut table = ResultsTable::new(vec![
        "node",
        "label",
        "centrality",
        "rank",
        "sufficient_samples",
    ]);
    for node in 0..graph.node_count() {
        table.push_row(vec![
            Cell::from(node),
            Cell::text(graph.label(node).unwrap_or("")),
            Cell::Float(truth.value(node)),
            Cell::from(truth.rank(node)),
            Cell::from(result.sufficient_samples[node]),
        ]);
    }
    Ok(table)
}

fn run_custom(config: &ExperimentConfig) -> Result<ResultsTable, CliError> {
    let runs = config.runs;
    let results: Vec<(bool, Vec<f64>)> = (0..runs)
        .into_par_iter()
        .map(|run| {
            let context = "custom".to_string();
            let graph = build_graph(&config.graph, graph_seed(config.master_seed, 0, run))
                .map_err(CliError::in_context(context.clone()))?;
            let curve = spearman_curve(&graph, config, &config.sample_grid, 0, run, &context)?;
            Ok((graph.is_connected(), curve))
        })
        .collect::<Result<_, CliError>>()?;

    let mut table = ResultsTable::new(vec!["N", "run", "spearman", "connected"]);
    for (grid_index, &num_samples) in config.sample_grid.iter().enumerate() {
        for run in 0..runs {
            let (connected, curve) = &results[run];
            table.push_row(vec![
                Cell::from(num_samples),
                Cell::from(run),
                Cell::Float(curve[grid_index]),
                Cell::Bool(*connected),
            ]);
        }
    }
    for (grid_index, &num_samples) in config.sample_grid.iter().enumerate() {
        let m = mean((0..runs).map(|run| results[run].1[grid_index]));
        table.push_row(vec![
            Cell::from(num_samples),
            Cell::text("mean"),
            Cell::Float(m),
            Cell::Empty,
        ]);
    }
    Ok(table)
}

/// Convenience accessors over a results table, used by tests and acceptance
/// checks.
pub mod query {
    use super::ResultsTable;
    use crate::table::Cell;

    fn cell_f64(cell: &Cell) -> Option<f64> {
        match cell {
            Cell::Float(v) => Some(*v),
            Cell::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    fn cell_matches(cell: &Cell, needle: &str) -> bool {
        match cell {
            Cell::Int(v) => v.to_string() == needle,
            Cell::Float(v) => v.to_string() == needle,
            Cell::Text(s) => s == needle,
            Cell::Bool(b) => b.to_string() == needle,
            Cell::Empty => needle.is_empty(),
        }
    }

    /// Value of `value_column` in the unique row matching all `filters`
    /// (column name, cell rendering) pairs.
    pub fn lookup(
        table: &ResultsTable,
        filters: &[(&str, &str)],
        value_column: &str,
    ) -> Option<f64> {
        let col = |name: &str| table.columns.iter().position(|&c| c == name);
        let value_idx = col(value_column)?;
        let filter_idx: Vec<(usize, &str)> = filters
            .iter()
            .map(|&(name, needle)| (col(name).expect("filter column exists"), needle))
            .collect();
        let mut found = None;
        for row in &table.rows {
            if filter_idx
                .iter()
                .all(|&(idx, needle)| cell_matches(&row[idx], needle))
            {
                assert!(found.is_none(), "filters match more than one row");
                found = cell_f64(&row[value_idx]);
            }
        }
        found
    }
}
