//! Ranking-quality metrics: absolute Spearman correlation, windowed
//! Spearman over centrality-sorted node blocks, and the per-node
//! sample-sufficiency protocol on a fixed graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::centrality::eigenvector_centrality;
use crate::error::{Error, Result};
use crate::estimator::infer_centrality;
use crate::filter::GraphFilter;
use crate::graph::Graph;
use crate::seeding::derive_path;
use crate::signal::{generate_signals, NoiseLaw};
use crate::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Fractional (average-tie) ranks, 1-based: tied values share the mean of
/// the positions they occupy.
pub fn fractional_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start..end hold equal values; average rank of the block.
        let average = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = average;
        }
        start = end;
    }
    ranks
}

/// Absolute Spearman correlation: |Pearson| of the fractional ranks.
pub fn spearman(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::Shape {
            expected: x.len(),
            got: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(Error::Parameter(format!(
            "correlation needs at least 2 points, got {}",
            x.len()
        )));
    }
    for (name, v) in [("first", x), ("second", y)] {
        if v.iter().all(|&a| a == v[0]) {
            return Err(Error::UndefinedCorrelation(format!(
                "{name} input vector is constant"
            )));
        }
    }
    let rx = fractional_ranks(x);
    let ry = fractional_ranks(y);
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut vx = 0.0;
    let mut vy = 0.0;
    for i in 0..x.len() {
        let dx = rx[i] - mx;
        let dy = ry[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    Ok((cov / (vx * vy).sqrt()).abs())
}

/// Absolute Spearman over sliding blocks of nodes ordered by true
/// centrality.
///
/// Nodes are sorted ascending by `u_true` (ties broken by index); each
/// window covers `width` consecutive sorted nodes and advances by `stride`.
/// Returns `(window_start, correlation)` pairs, where `window_start` indexes
/// into the sorted order.
pub fn windowed_spearman(
    u_true: &[f64],
    u_est: &[f64],
    width: usize,
    stride: usize,
) -> Result<Vec<(usize, f64)>> {
    let n = u_true.len();
    if u_est.len() != n {
        return Err(Error::Shape {
            expected: n,
            got: u_est.len(),
        });
    }
    if width < 2 {
        return Err(Error::Parameter(format!(
            "window width must be at least 2, got {width}"
        )));
    }
    if width > n {
        return Err(Error::Parameter(format!(
            "window width {width} exceeds {n} nodes"
        )));
    }
    if stride == 0 {
        return Err(Error::Parameter("stride must be positive".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        u_true[a]
            .partial_cmp(&u_true[b])
            .expect("finite values")
            .then(a.cmp(&b))
    });
    let mut out = Vec::new();
    let mut start = 0;
    while start + width <= n {
        let idx = &order[start..start + width];
        let tw: Vec<f64> = idx.iter().map(|&i| u_true[i]).collect();
        let ew: Vec<f64> = idx.iter().map(|&i| u_est[i]).collect();
        out.push((start, spearman(&tw, &ew)?));
        start += stride;
    }
    Ok(out)
}

/// Whether a node's estimated rank is within `tolerance` of its true rank.
pub fn rank_correct(
    r_true: &[usize],
    r_est: &[usize],
    node: usize,
    tolerance: usize,
) -> bool {
    r_true[node].abs_diff(r_est[node]) <= tolerance
}

/// Parameters of the per-node sample-sufficiency protocol.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SufficiencyProtocol {
    /// Allowed rank deviation for a node to count as correctly ranked.
    pub rank_tolerance: usize,
    /// Required empirical probability of correct ranking (strict).
    pub probability_threshold: f64,
    /// Saturation cap returned when no grid point qualifies.
    pub max_samples: usize,
    /// Strictly increasing sample counts to test; the last entry must equal
    /// `max_samples`.
    pub sample_grid: Vec<usize>,
    /// Independent batches per grid point.
    pub trials_per_point: usize,
}

impl Default for SufficiencyProtocol {
    fn default() -> Self {
        Self {
            rank_tolerance: 1,
            probability_threshold: 0.95,
            max_samples: 1000,
            sample_grid: (1..=100).map(|k| 10 * k).collect(),
            trials_per_point: 100,
        }
    }
}

impl SufficiencyProtocol {
    pub fn validate(&self) -> Result<()> {
        if !(self.probability_threshold > 0.0 && self.probability_threshold < 1.0) {
            return Err(Error::Parameter(format!(
                "probability threshold must lie in (0, 1), got {}",
                self.probability_threshold
            )));
        }
        if self.sample_grid.is_empty() {
            return Err(Error::Parameter("sample grid is empty".into()));
        }
        if self.sample_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(
                "sample grid must be strictly increasing".into(),
            ));
        }
        if self.sample_grid[0] == 0 {
            return Err(Error::Parameter("sample counts must be positive".into()));
        }
        if *self.sample_grid.last().expect("non-empty") != self.max_samples {
            return Err(Error::Parameter(format!(
                "grid maximum {} must equal max_samples {}",
                self.sample_grid.last().expect("non-empty"),
                self.max_samples
            )));
        }
        if self.trials_per_point == 0 {
            return Err(Error::Parameter("trials_per_point must be positive".into()));
        }
        Ok(())
    }
}

/// Empirical correct-ranking probabilities and per-node sufficiency counts
/// for one graph/filter pair.
#[derive(Debug, Clone)]
pub struct SufficiencyResult {
    /// Grid copied from the protocol.
    pub sample_grid: Vec<usize>,
    /// `probabilities[g][i]`: empirical probability that node `i` is ranked
    /// within tolerance at `sample_grid[g]` samples.
    pub probabilities: Vec<Vec<f64>>,
    /// Smallest grid point from which every later grid point keeps the node
    /// correctly ranked with probability above the threshold; `max_samples`
    /// when no such point exists.
    pub sufficient_samples: Vec<usize>,
}

/// Run the sufficiency protocol for every node at once.
///
/// Batches are seeded by `(seed, N', trial)`, so all nodes share the same
/// trials and a single sweep answers every per-node query. The result is
/// identical regardless of parallel schedule.
pub fn sufficiency_profile(
    graph: &Graph,
    filter: &GraphFilter,
    law: NoiseLaw,
    protocol: &SufficiencyProtocol,
    seed: u64,
) -> Result<SufficiencyResult> {
    protocol.validate()?;
    let truth = eigenvector_centrality(graph, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let r_true = truth.ranks().to_vec();
    let n = graph.node_count();
    let grid = &protocol.sample_grid;
    let trials = protocol.trials_per_point;

    let tasks: Vec<(usize, usize)> = (0..grid.len())
        .flat_map(|g| (0..trials).map(move |t| (g, t)))
        .collect();
    let outcomes: Vec<(usize, Vec<bool>)> = tasks
        .par_iter()
        .map(|&(g, trial)| {
            let num_samples = grid[g];
            let batch_seed = derive_path(seed, &[num_samples as u64, trial as u64]);
            let batch = generate_signals(filter, num_samples, law, batch_seed)?;
            let estimate = infer_centrality(&batch, DEFAULT_TOL)?;
            let correct = (0..n)
                .map(|i| rank_correct(&r_true, estimate.ranks(), i, protocol.rank_tolerance))
                .collect();
            Ok((g, correct))
        })
        .collect::<Result<_>>()?;

    let mut counts = vec![vec![0usize; n]; grid.len()];
    for (g, correct) in outcomes {
        for (i, ok) in correct.into_iter().enumerate() {
            if ok {
                counts[g][i] += 1;
            }
        }
    }
    let probabilities: Vec<Vec<f64>> = counts
        .iter()
        .map(|row| row.iter().map(|&c| c as f64 / trials as f64).collect())
        .collect();

    let sufficient_samples = (0..n)
        .map(|i| {
            let mut first_good = grid.len();
            for g in (0..grid.len()).rev() {
                if probabilities[g][i] > protocol.probability_threshold {
                    first_good = g;
                } else {
                    break;
                }
            }
            if first_good < grid.len() {
                grid[first_good]
            } else {
                protocol.max_samples
            }
        })
        .collect();

    Ok(SufficiencyResult {
        sample_grid: grid.clone(),
        probabilities,
        sufficient_samples,
    })
}

/// Smallest sample count after which `node` stays correctly ranked with
/// probability above the threshold, up to the saturation cap.
///
/// Runs the full per-node sweep; use [`sufficiency_profile`] when several
/// nodes are needed.
pub fn sufficiency_samples(
    graph: &Graph,
    filter: &GraphFilter,
    node: usize,
    law: NoiseLaw,
    protocol: &SufficiencyProtocol,
    seed: u64,
) -> Result<usize> {
    if node >= graph.node_count() {
        return Err(Error::Parameter(format!(
            "node {node} out of range for {} nodes",
            graph.node_count()
        )));
    }
    Ok(sufficiency_profile(graph, filter, law, protocol, seed)?.sufficient_samples[node])
}
