//! Random graph generators.

use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Erdős–Rényi G(n, p): each unordered pair is an edge independently with
/// probability `p`. Deterministic given the generator state.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("node count must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Barabási–Albert preferential attachment.
///
/// Starts from `m0` isolated seed nodes; each subsequent node attaches to
/// `m` distinct existing nodes drawn proportionally to degree, falling back
/// to a uniform draw whenever the remaining candidates all have degree zero.
pub fn barabasi_albert<R: Rng>(n: usize, m: usize, m0: usize, rng: &mut R) -> Result<Graph> {
    if m < 1 || m > m0 {
        return Err(Error::Parameter(format!(
            "attachment count m={m} must satisfy 1 <= m <= m0={m0}"
        )));
    }
    if m0 > n {
        return Err(Error::Parameter(format!(
            "seed size m0={m0} exceeds node count n={n}"
        )));
    }
    let mut edges = Vec::new();
    let mut degree = vec![0u64; n];
    for v in m0..n {
        let mut chosen = vec![false; v];
        for _ in 0..m {
            let total: u64 = (0..v).filter(|&i| !chosen[i]).map(|i| degree[i]).sum();
            let target = if total == 0 {
                // All remaining candidates isolated: draw uniformly.
                let free: Vec<usize> = (0..v).filter(|&i| !chosen[i]).collect();
                free[rng.random_range(0..free.len())]
            } else {
                let mut ticket = rng.random_range(0..total);
                let mut pick = None;
                for i in (0..v).filter(|&i| !chosen[i]) {
                    if ticket < degree[i] {
                        pick = Some(i);
                        break;
                    }
                    ticket -= degree[i];
                }
                pick.expect("ticket below total degree")
            };
            chosen[target] = true;
            edges.push((target, v));
            degree[target] += 1;
            degree[v] += 1;
        }
    }
    Graph::from_edges(n, &edges)
}
