//! Symmetric eigensolvers: shifted power iteration for the leading pair and
//! a dense decomposition used as the test oracle and for second-eigenvalue
//! queries.

use nalgebra::{DMatrix, DVector};
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::seeding::stream_rng;

/// Default residual tolerance for power iteration.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default iteration cap for power iteration.
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Largest dimension accepted by the dense decomposition.
pub const DENSE_LIMIT: usize = 5000;

/// Full eigendecomposition of a symmetric matrix, eigenvalues sorted
/// descending, eigenvector columns orthonormal.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<f64>,
}

impl SpectralDecomposition {
    /// Eigenvalues in non-increasing order.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Eigenvector columns aligned with [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    /// Leading eigenpair with the eigenvector oriented by [`orient_max_abs`].
    pub fn leading(&self) -> (f64, DVector<f64>) {
        let mut v = self.eigenvectors.column(0).into_owned();
        orient_max_abs(&mut v);
        (self.eigenvalues[0], v)
    }

    /// Frobenius norm of `M V - V diag(lambda)`, which equals the Frobenius
    /// reconstruction error when `V` is orthogonal.
    pub fn residual(&self, matrix: &DMatrix<f64>) -> f64 {
        let mv = matrix * &self.eigenvectors;
        let mut vl = self.eigenvectors.clone();
        for (j, mut col) in vl.column_iter_mut().enumerate() {
            col *= self.eigenvalues[j];
        }
        (mv - vl).norm()
    }

    /// Largest absolute entry of `V^T V - I`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n = self.eigenvectors.ncols();
        let gram = self.eigenvectors.transpose() * &self.eigenvectors;
        let mut defect = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((gram[(i, j)] - target).abs());
            }
        }
        defect
    }
}

/// Max absolute row sum; the matrix norm induced by the sup norm.
pub fn infinity_norm(matrix: &DMatrix<f64>) -> f64 {
    (0..matrix.nrows())
        .map(|i| matrix.row(i).iter().map(|a| a.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn check_symmetric(matrix: &DMatrix<f64>) -> Result<()> {
    let n = matrix.nrows();
    if n == 0 || matrix.ncols() != n {
        return Err(Error::Parameter(format!(
            "matrix must be square and non-empty, got {}x{}",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let scale = infinity_norm(matrix).max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (matrix[(i, j)] - matrix[(j, i)]).abs() > 1e-10 * scale {
                return Err(Error::Parameter(format!(
                    "matrix is not symmetric at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

/// Flip the sign so the entry of maximum absolute value is nonnegative.
/// Ties resolve to the first such entry, making orientation deterministic.
pub fn orient_max_abs(v: &mut DVector<f64>) {
    let mut arg = 0;
    let mut best = f64::NEG_INFINITY;
    for (i, &x) in v.iter().enumerate() {
        if x.abs() > best {
            best = x.abs();
            arg = i;
        }
    }
    if v[arg] < 0.0 {
        *v = -&*v;
    }
}

/// Power iteration on `matrix + shift * I`.
///
/// Returns the eigenpair of `matrix` reached by the iteration: eigenvalue via
/// the Rayleigh quotient of the unshifted matrix, eigenvector unit-norm and
/// oriented. Convergence is declared when
/// `|matrix v - lambda v| <= tol * max(1, |lambda|)`.
pub fn power_iteration(
    matrix: &DMatrix<f64>,
    shift: f64,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, DVector<f64>)> {
    let n = matrix.nrows();
    // Deterministic pseudo-random start: almost surely non-orthogonal to the
    // leading eigenvector, identical on every call.
    let mut rng = stream_rng(0x706f_7765_7269_7465);
    let mut v = DVector::<f64>::from_fn(n, |_, _| rand::Rng::sample(&mut rng, StandardNormal));
    v /= v.norm();

    let mut residual = f64::INFINITY;
    for _ in 0..max_iter {
        let mv = matrix * &v;
        let lambda = v.dot(&mv);
        residual = (&mv - lambda * &v).norm();
        if residual <= tol * lambda.abs().max(1.0) {
            orient_max_abs(&mut v);
            return Ok((lambda, v));
        }
        let mut next = mv + shift * &v;
        let norm = next.norm();
        if norm == 0.0 {
            // v lies in the kernel of the shifted matrix; it is an exact
            // eigenvector of `matrix` with eigenvalue -shift.
            orient_max_abs(&mut v);
            return Ok((-shift, v));
        }
        next /= norm;
        v = next;
    }
    Err(Error::Convergence {
        iterations: max_iter,
        residual,
    })
}

/// Leading (largest) eigenvalue and unit eigenvector of a symmetric matrix.
///
/// Iterates on `matrix + |matrix|_inf * I`: the shift makes the spectrum
/// nonnegative, so the algebraically largest eigenvalue dominates in
/// magnitude without changing eigenvectors or their order. For an adjacency
/// matrix the shift equals the maximum degree.
pub fn leading_eigenpair(
    matrix: &DMatrix<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<(f64, DVector<f64>)> {
    check_symmetric(matrix)?;
    power_iteration(matrix, infinity_norm(matrix), tol, max_iter)
}

/// Dense eigendecomposition of a symmetric matrix, `n <= 5000`.
pub fn full_spectrum(matrix: &DMatrix<f64>) -> Result<SpectralDecomposition> {
    let n = matrix.nrows();
    if n > DENSE_LIMIT {
        return Err(Error::SizeLimit {
            n,
            limit: DENSE_LIMIT,
        });
    }
    check_symmetric(matrix)?;
    let eig = matrix.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let eigenvalues = DVector::from_fn(n, |i, _| eig.eigenvalues[order[i]]);
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    let decomposition = SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    };

    let scale = decomposition.eigenvalues[0].abs().max(1.0);
    if decomposition.residual(matrix) > 1e-8 * scale {
        return Err(Error::Numeric(format!(
            "eigendecomposition residual {} exceeds tolerance",
            decomposition.residual(matrix)
        )));
    }
    if decomposition.orthonormality_defect() > 1e-10 {
        return Err(Error::Numeric(format!(
            "eigenvector columns not orthonormal (defect {})",
            decomposition.orthonormality_defect()
        )));
    }
    Ok(decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use approx::assert_relative_eq;

    fn k2() -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0])
    }

    fn complete(n: usize) -> DMatrix<f64> {
        DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { 1.0 })
    }

    #[test]
    fn k2_leading_pair() {
        let (lambda, v) = leading_eigenpair(&k2(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_relative_eq!(lambda, 1.0, epsilon = 1e-9);
        let r = 1.0 / 2.0_f64.sqrt();
        assert_relative_eq!(v[0], r, epsilon = 1e-8);
        assert_relative_eq!(v[1], r, epsilon = 1e-8);
    }

    #[test]
    fn k3_leading_pair() {
        let (lambda, v) = leading_eigenpair(&complete(3), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_relative_eq!(lambda, 2.0, epsilon = 1e-9);
        let r = 1.0 / 3.0_f64.sqrt();
        for i in 0..3 {
            assert_relative_eq!(v[i], r, epsilon = 1e-8);
        }
    }

    #[test]
    fn star_leading_pair_is_analytic() {
        // Star on 5 nodes, center 0: lambda = 2, v = (1/sqrt(2), 1/(2 sqrt(2)), ...).
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let (lambda, v) = leading_eigenpair(g.adjacency(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_relative_eq!(lambda, 2.0, epsilon = 1e-9);
        assert_relative_eq!(v[0], 1.0 / 2.0_f64.sqrt(), epsilon = 1e-8);
        for leaf in 1..5 {
            assert_relative_eq!(v[leaf], 1.0 / (2.0 * 2.0_f64.sqrt()), epsilon = 1e-8);
        }
        // Cross-check against the dense oracle.
        let spec = full_spectrum(g.adjacency()).unwrap();
        let (l0, v0) = spec.leading();
        assert_relative_eq!(lambda, l0, epsilon = 1e-9);
        assert!((v - v0).norm() <= 1e-8);
    }

    #[test]
    fn bipartite_negative_eigenvalue_does_not_capture_iteration() {
        // K2 has spectrum {1, -1}; without the shift, power iteration on the
        // raw matrix would oscillate between the two.
        let spec = full_spectrum(&k2()).unwrap();
        assert_relative_eq!(spec.eigenvalues()[0], 1.0, epsilon = 1e-10);
        assert_relative_eq!(spec.eigenvalues()[1], -1.0, epsilon = 1e-10);
        let (lambda, _) = leading_eigenpair(&k2(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_relative_eq!(lambda, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn full_spectrum_identity() {
        let spec = full_spectrum(&DMatrix::identity(3, 3)).unwrap();
        for i in 0..3 {
            assert_relative_eq!(spec.eigenvalues()[i], 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn full_spectrum_rejects_non_square() {
        let m = DMatrix::<f64>::zeros(2, 3);
        assert!(full_spectrum(&m).is_err());
    }

    #[test]
    fn full_spectrum_rejects_oversized() {
        let m = DMatrix::<f64>::zeros(DENSE_LIMIT + 1, DENSE_LIMIT + 1);
        assert!(matches!(
            full_spectrum(&m),
            Err(Error::SizeLimit { n, limit }) if n == DENSE_LIMIT + 1 && limit == DENSE_LIMIT
        ));
    }

    #[test]
    fn leading_matches_oracle_on_random_matrices() {
        use rand::Rng;
        let mut rng = stream_rng(31);
        for trial in 0..20 {
            let n = rng.random_range(2..=10);
            let raw = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
            let sym = (&raw + raw.transpose()) * 0.5;
            let spec = full_spectrum(&sym).unwrap();
            if n > 1 && spec.eigenvalues()[0] - spec.eigenvalues()[1] <= 1e-6 {
                continue;
            }
            let (lambda, v) = leading_eigenpair(&sym, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            let (l0, v0) = spec.leading();
            assert_relative_eq!(lambda, l0, epsilon = 1e-8, max_relative = 1e-8);
            assert!(
                (&v - &v0).norm() <= 1e-8 || (&v + &v0).norm() <= 1e-8,
                "trial {trial}: eigenvector mismatch"
            );
        }
    }

    #[test]
    fn perron_orientation_is_entrywise_nonnegative() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let (_, v) = leading_eigenpair(g.adjacency(), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(v.iter().all(|&x| x >= -1e-10));
    }

    #[test]
    fn zero_matrix_converges() {
        let (lambda, v) = leading_eigenpair(&DMatrix::zeros(3, 3), DEFAULT_TOL, 100).unwrap();
        assert_eq!(lambda, 0.0);
        assert_relative_eq!(v.norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn non_convergence_reports_residual() {
        let err = power_iteration(&complete(3), 3.0, 1e-10, 1).unwrap_err();
        match err {
            Error::Convergence {
                iterations,
                residual,
            } => {
                assert_eq!(iterations, 1);
                assert!(residual > 0.0);
            }
            other => panic!("expected convergence error, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_input_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(leading_eigenpair(&m, DEFAULT_TOL, 10).is_err());
    }
}
