//! Centrality values, sign orientation, and the induced rank vector.

use std::io::Write;

use nalgebra::DVector;

use crate::error::Result;
use crate::graph::Graph;
use crate::spectral::{leading_eigenpair, orient_max_abs};

/// Rank of each entry: `ranks[i]` counts the entries `>= values[i]`,
/// including `i` itself. The largest value has rank 1; equal values share a
/// rank.
pub fn rank_from_values(values: &[f64]) -> Vec<usize> {
    values
        .iter()
        .map(|&vi| values.iter().filter(|&&vj| vj >= vi).count())
        .collect()
}

/// A centrality vector together with its rank vector and sign convention.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityProfile {
    values: DVector<f64>,
    ranks: Vec<usize>,
    oriented: bool,
}

impl CentralityProfile {
    /// Wrap a centrality vector, applying the sign convention (entry of
    /// maximum absolute value made nonnegative) before ranking.
    pub fn from_values(mut values: DVector<f64>) -> Self {
        orient_max_abs(&mut values);
        let ranks = rank_from_values(values.as_slice());
        Self {
            values,
            ranks,
            oriented: true,
        }
    }

    /// Wrap a centrality vector as-is, without the sign convention.
    pub fn from_values_unoriented(values: DVector<f64>) -> Self {
        let ranks = rank_from_values(values.as_slice());
        Self {
            values,
            ranks,
            oriented: false,
        }
    }

    pub fn node_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    pub fn value(&self, node: usize) -> f64 {
        self.values[node]
    }

    pub fn rank(&self, node: usize) -> usize {
        self.ranks[node]
    }

    /// Write `node,centrality,rank` rows with a header.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "node,centrality,rank")?;
        for i in 0..self.node_count() {
            writeln!(out, "{i},{},{}", self.values[i], self.ranks[i])?;
        }
        Ok(())
    }
}

/// Eigenvector centrality: the oriented leading eigenvector of the adjacency
/// matrix with its rank vector.
pub fn eigenvector_centrality(graph: &Graph, tol: f64, max_iter: usize) -> Result<CentralityProfile> {
    let (_, v) = leading_eigenpair(graph.adjacency(), tol, max_iter)?;
    Ok(CentralityProfile::from_values(v))
}
