//! Graph filters: nonnegative matrix polynomials in the adjacency matrix.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seeding::fnv1a64;
use crate::spectral::{leading_eigenpair, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// A polynomial graph filter `H(A) = sum_k gamma_k A^k` with `gamma_k >= 0`,
/// materialized as a dense symmetric operator.
#[derive(Debug, Clone)]
pub struct GraphFilter {
    coefficients: Vec<f64>,
    operator: DMatrix<f64>,
    source_lambda1: Option<f64>,
    digest: String,
}

impl GraphFilter {
    /// Polynomial degree `T`.
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Coefficients `gamma_0 ..= gamma_T`.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn operator(&self) -> &DMatrix<f64> {
        &self.operator
    }

    pub fn node_count(&self) -> usize {
        self.operator.nrows()
    }

    /// Leading adjacency eigenvalue used for normalization, when the filter
    /// was built by [`make_normalized_filter`].
    pub fn source_lambda1(&self) -> Option<f64> {
        self.source_lambda1
    }

    /// Stable identifier of the filter (hash of size, coefficients, and
    /// normalization), used to tag signal batches.
    pub fn digest(&self) -> &str {
        &self.digest
    }

    /// Scalar frequency response `H(lambda) = sum_k gamma_k lambda^k`,
    /// evaluated at an adjacency eigenvalue.
    pub fn response(&self, lambda: f64) -> f64 {
        let mut acc = 0.0;
        let mut power = 1.0;
        for &c in &self.coefficients {
            acc += c * power;
            power *= lambda;
        }
        acc
    }

    /// Apply the filter to a single graph signal.
    pub fn apply(&self, signal: &DVector<f64>) -> DVector<f64> {
        &self.operator * signal
    }

    /// Apply the filter to a matrix whose columns are graph signals.
    pub fn apply_matrix(&self, signals: &DMatrix<f64>) -> DMatrix<f64> {
        &self.operator * signals
    }

    /// Covariance of filter outputs under white input noise: `H(A)^2`.
    pub fn population_covariance(&self) -> DMatrix<f64> {
        &self.operator * &self.operator
    }
}

fn build(
    graph: &Graph,
    coefficients: Vec<f64>,
    source_lambda1: Option<f64>,
) -> Result<GraphFilter> {
    let n = graph.node_count();
    let adjacency = graph.adjacency();
    let mut operator = DMatrix::<f64>::identity(n, n) * coefficients[0];
    // Powers by iterated multiplication against A.
    let mut power = DMatrix::<f64>::identity(n, n);
    for &c in &coefficients[1..] {
        power = &power * adjacency;
        if c != 0.0 {
            operator += &power * c;
        }
    }
    // Rounding in the products is the only source of asymmetry; fold it away.
    operator = (&operator + operator.transpose()) * 0.5;

    let mut bytes = Vec::with_capacity(8 * (coefficients.len() + 2));
    bytes.extend_from_slice(&(n as u64).to_le_bytes());
    for &c in &coefficients {
        bytes.extend_from_slice(&c.to_bits().to_le_bytes());
    }
    bytes.extend_from_slice(&source_lambda1.unwrap_or(0.0).to_bits().to_le_bytes());
    let digest = format!("{:016x}", fnv1a64(&bytes));

    Ok(GraphFilter {
        coefficients,
        operator,
        source_lambda1,
        digest,
    })
}

/// Build `H(A) = sum_k gamma_k A^k` from explicit nonnegative coefficients.
pub fn make_polynomial_filter(graph: &Graph, coefficients: &[f64]) -> Result<GraphFilter> {
    if coefficients.is_empty() {
        return Err(Error::Parameter("filter needs at least one coefficient".into()));
    }
    if let Some(neg) = coefficients.iter().find(|&&c| c < 0.0) {
        return Err(Error::ModelAssumption(format!(
            "filter coefficients must be nonnegative, got {neg}"
        )));
    }
    if coefficients.iter().all(|&c| c == 0.0) {
        return Err(Error::Parameter(
            "filter needs at least one positive coefficient".into(),
        ));
    }
    build(graph, coefficients.to_vec(), None)
}

/// Normalized filter `H(A) = sum_{k=0}^{order} (A / lambda_1)^k` with
/// `lambda_1` the leading adjacency eigenvalue of `graph`.
pub fn make_normalized_filter(graph: &Graph, order: usize) -> Result<GraphFilter> {
    let (lambda1, _) = leading_eigenpair(graph.adjacency(), DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    if lambda1 <= 0.0 {
        return Err(Error::DegenerateSpectrum(format!(
            "normalized filter needs lambda_1 > 0, got {lambda1} (empty graph?)"
        )));
    }
    let coefficients: Vec<f64> = (0..=order).map(|k| lambda1.powi(-(k as i32))).collect();
    build(graph, coefficients, Some(lambda1))
}
