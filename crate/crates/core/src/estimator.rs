//! Blind centrality inference: sample covariance of observed signals, its
//! leading eigenvector, and the induced ranking.

use nalgebra::{DMatrix, DVectorView};

use crate::centrality::{rank_from_values, CentralityProfile};
use crate::error::{Error, Result};
use crate::signal::SignalBatch;
use crate::spectral::{power_iteration, DEFAULT_MAX_ITER};

/// Streaming uncentered second-moment accumulator.
///
/// Internally stores the running sum of outer products and the sample count;
/// [`CovarianceEstimate::moment`] divides on demand, so accumulation order
/// never introduces error beyond f64 addition itself. Single-writer by
/// design: parallel use means one accumulator per thread, combined with
/// [`CovarianceEstimate::merge`].
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceEstimate {
    sum: DMatrix<f64>,
    count: usize,
}

impl CovarianceEstimate {
    pub fn new(node_count: usize) -> Self {
        Self {
            sum: DMatrix::zeros(node_count, node_count),
            count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.sum.nrows()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Absorb one signal.
    pub fn push(&mut self, y: DVectorView<'_, f64>) -> Result<()> {
        if y.len() != self.node_count() {
            return Err(Error::Shape {
                expected: self.node_count(),
                got: y.len(),
            });
        }
        self.sum.ger(1.0, &y, &y, 1.0);
        self.count += 1;
        Ok(())
    }

    /// Weighted merge of two accumulators.
    pub fn merge(&mut self, other: &CovarianceEstimate) -> Result<()> {
        if other.node_count() != self.node_count() {
            return Err(Error::Shape {
                expected: self.node_count(),
                got: other.node_count(),
            });
        }
        self.sum += &other.sum;
        self.count += other.count;
        Ok(())
    }

    /// The moment matrix `(1/N) sum_i y_i y_i^T`; zero when no samples have
    /// been absorbed.
    pub fn moment(&self) -> DMatrix<f64> {
        if self.count == 0 {
            return DMatrix::zeros(self.node_count(), self.node_count());
        }
        &self.sum / self.count as f64
    }
}

/// Uncentered sample covariance `(1/N) sum_i y_i y_i^T` of a batch.
///
/// No mean subtraction: the signal model has zero mean and the estimator
/// uses the raw second moment.
pub fn sample_covariance(batch: &SignalBatch) -> CovarianceEstimate {
    let signals = batch.signals();
    CovarianceEstimate {
        sum: signals * signals.transpose(),
        count: batch.num_samples(),
    }
}

/// Leading eigenpair of a positive-semidefinite moment matrix via plain
/// power iteration (no shift needed).
fn leading_of_moment(moment: &DMatrix<f64>, tol: f64) -> Result<(f64, nalgebra::DVector<f64>)> {
    if moment.amax() == 0.0 {
        return Err(Error::DegenerateSpectrum(
            "covariance is identically zero".into(),
        ));
    }
    let (beta1, v) = power_iteration(moment, 0.0, tol, DEFAULT_MAX_ITER)?;
    if beta1 <= 0.0 {
        return Err(Error::DegenerateSpectrum(format!(
            "leading covariance eigenvalue {beta1} is not positive"
        )));
    }
    Ok((beta1, v))
}

/// Infer the centrality profile from a moment matrix directly.
///
/// Useful as an oracle mode: feeding the population covariance recovers the
/// true centrality exactly (up to the solver tolerance).
pub fn infer_from_moment(moment: &DMatrix<f64>, tol: f64) -> Result<CentralityProfile> {
    let (_, v) = leading_of_moment(moment, tol)?;
    Ok(CentralityProfile::from_values(v))
}

/// Blind centrality inference on a batch of graph signals: sample
/// covariance, leading eigenvector, orientation, and ranking.
pub fn infer_centrality(batch: &SignalBatch, tol: f64) -> Result<CentralityProfile> {
    infer_from_moment(&sample_covariance(batch).moment(), tol)
}

/// Whether `u` and `u_hat` order nodes `i` and `j` the same way: the
/// biconditional `r_i >= r_j  iff  r'_i >= r'_j` on the rank vectors,
/// evaluated literally. Note the predicate is directional when exactly one
/// vector ties the pair: a tie in `u` demands `r'_i >= r'_j` to hold.
pub fn preserves_relative_order(u: &[f64], u_hat: &[f64], i: usize, j: usize) -> bool {
    let r = rank_from_values(u);
    let r_hat = rank_from_values(u_hat);
    (r[i] >= r[j]) == (r_hat[i] >= r_hat[j])
}
