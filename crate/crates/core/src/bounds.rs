//! Sample-complexity calculators: coherence, residual spikiness, the general
//! sample bound, and its dense Erdős–Rényi specializations.
//!
//! The absolute constants in these formulas are not identifiable from the
//! analysis they come from; every calculator exposes the constant as a
//! parameter (default 1) and is intended as an order-of-magnitude and
//! monotonicity tool, not a point prediction.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::infinity_norm;

/// Inputs to [`sample_bound`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs {
    /// Coherence `mu = n |u|_inf^2`, in `[1, n]`.
    pub mu: f64,
    /// Residual spikiness `kappa = |C_y - beta_1 u u^T|_inf`.
    pub kappa: f64,
    /// Leading covariance eigenvalue.
    pub beta1: f64,
    /// Signal-energy bound `|y|^2 <= m`.
    pub m: f64,
    /// Node count.
    pub n: usize,
    /// Centrality gap to resolve.
    pub alpha: f64,
    /// Confidence parameter; the guarantee holds with probability
    /// `1 - n^(-t^2)`.
    pub t: f64,
    /// Absolute constant, caller-chosen.
    pub constant: f64,
}

impl BoundInputs {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Parameter(format!("need n >= 2, got {}", self.n)));
        }
        if !(1.0..=self.n as f64).contains(&self.mu) {
            return Err(Error::Parameter(format!(
                "coherence mu must lie in [1, n] = [1, {}], got {}",
                self.n, self.mu
            )));
        }
        for (name, value) in [
            ("kappa", self.kappa),
            ("beta1", self.beta1),
            ("m", self.m),
            ("alpha", self.alpha),
            ("t", self.t),
            ("constant", self.constant),
        ] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::Parameter(format!(
                    "{name} must be finite and nonnegative, got {value}"
                )));
            }
        }
        if self.beta1 <= 0.0 || self.alpha <= 0.0 || self.t <= 0.0 || self.constant <= 0.0 {
            return Err(Error::Parameter(
                "beta1, alpha, t, and the constant must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Coherence `mu = n * max_i u_i^2` of a unit vector; 1 when fully
/// delocalized, n when concentrated on one node.
pub fn coherence_mu(u: &DVector<f64>) -> Result<f64> {
    let norm = u.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnit { norm });
    }
    Ok(u.len() as f64 * u.amax().powi(2))
}

/// `kappa = |C_y - beta_1 u u^T|_inf`: the max absolute row sum of the
/// covariance once its leading rank-one part is removed.
pub fn kappa(c_y: &DMatrix<f64>, beta1: f64, u: &DVector<f64>) -> f64 {
    let mut residual = c_y.clone();
    residual.ger(-beta1, u, u, 1.0);
    infinity_norm(&residual)
}

/// Samples sufficient to order nodes whose centralities differ by more than
/// `alpha`, with probability at least `1 - n^(-t^2)`:
/// `N >= C mu^4 (t/alpha)^2 m ln(n) / (beta_1 (1 - kappa/beta_1)^2)`,
/// rounded up. Natural logarithm; the constant absorbs the base.
pub fn sample_bound(inputs: &BoundInputs) -> Result<u64> {
    inputs.validate()?;
    if inputs.kappa >= inputs.beta1 {
        return Err(Error::VacuousBound {
            kappa: inputs.kappa,
            beta1: inputs.beta1,
        });
    }
    let gap = 1.0 - inputs.kappa / inputs.beta1;
    let value = inputs.constant
        * inputs.mu.powi(4)
        * (inputs.t / inputs.alpha).powi(2)
        * inputs.m
        * (inputs.n as f64).ln()
        / (inputs.beta1 * gap * gap);
    Ok(value.ceil() as u64)
}

/// Dense Erdős–Rényi bound on kappa: `constant * n^(3/2) * p`.
pub fn er_kappa_bound(n: usize, p: f64, constant: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Parameter("need n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!(
            "edge probability must lie in [0, 1], got {p}"
        )));
    }
    Ok(constant * (n as f64).powf(1.5) * p)
}

/// Samples sufficient to order the extreme centrality pair of a dense
/// Erdős–Rényi graph: `ceil(C t^2 m n / ln n)`, the sub-polynomial factor
/// taken as 1.
pub fn er_sample_bound(n: usize, m: f64, t: f64, constant: f64) -> Result<u64> {
    if n < 2 {
        return Err(Error::Parameter(format!(
            "need n >= 2 for a positive log, got {n}"
        )));
    }
    Ok((constant * t * t * m * n as f64 / (n as f64).ln()).ceil() as u64)
}

/// Observed quantities of the spectral-gap assumption
/// `beta_1 - kappa = Omega(mu^2 |E|_inf)`.
#[derive(Debug, Clone, Serialize)]
pub struct AssumptionDiagnostic {
    pub beta1: f64,
    pub kappa: f64,
    pub mu: f64,
    /// `|C_y - C_hat|_inf`.
    pub error_inf_norm: f64,
    /// `(beta_1 - kappa) / (mu^2 |E|_inf)`; infinite when the error is zero.
    pub ratio: f64,
    /// Implied constant the ratio is compared against.
    pub constant: f64,
    pub pass: bool,
}

/// Evaluate the spectral-gap assumption on an observed covariance pair.
/// `beta1` is computed from `c_y` as the Rayleigh quotient of `u`.
pub fn assumption_diagnostic(
    c_y: &DMatrix<f64>,
    c_hat: &DMatrix<f64>,
    u: &DVector<f64>,
    constant: f64,
) -> Result<AssumptionDiagnostic> {
    if c_y.nrows() != c_hat.nrows() || c_y.ncols() != c_hat.ncols() || c_y.nrows() != u.len() {
        return Err(Error::Shape {
            expected: c_y.nrows(),
            got: c_hat.nrows().max(u.len()),
        });
    }
    let mu = coherence_mu(u)?;
    let beta1 = u.dot(&(c_y * u));
    let kappa = kappa(c_y, beta1, u);
    let error_inf_norm = infinity_norm(&(c_y - c_hat));
    let ratio = if error_inf_norm == 0.0 {
        f64::INFINITY
    } else {
        (beta1 - kappa) / (mu * mu * error_inf_norm)
    };
    Ok(AssumptionDiagnostic {
        beta1,
        kappa,
        mu,
        error_inf_norm,
        ratio,
        constant,
        pass: ratio >= constant,
    })
}

/// Delocalization summary of a unit centrality vector.
#[derive(Debug, Clone, Serialize)]
pub struct DelocalizationReport {
    pub n: usize,
    /// `|u|_inf`.
    pub sup_entry: f64,
    /// Implied exponent `g` with `|u|_inf^2 = n^(-1+g)`.
    pub g: f64,
    /// Largest meaningful centrality gap, `|u|_inf`.
    pub max_alpha: f64,
}

/// Report how delocalized a unit centrality vector is.
pub fn delocalization_report(u: &DVector<f64>) -> Result<DelocalizationReport> {
    let n = u.len();
    if n < 2 {
        return Err(Error::Parameter(format!("need n >= 2, got {n}")));
    }
    let norm = u.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnit { norm });
    }
    let sup = u.amax();
    let g = 1.0 + (sup * sup).ln() / (n as f64).ln();
    Ok(DelocalizationReport {
        n,
        sup_entry: sup,
        g,
        max_alpha: sup,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(values: Vec<f64>) -> DVector<f64> {
        let v = DVector::from_vec(values);
        &v / v.norm()
    }

    #[test]
    fn coherence_of_uniform_vector_is_one() {
        let u = unit(vec![1.0; 4]);
        assert_relative_eq!(coherence_mu(&u).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn coherence_of_basis_vector_is_n() {
        let mut e1 = DVector::zeros(5);
        e1[0] = 1.0;
        assert_relative_eq!(coherence_mu(&e1).unwrap(), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn coherence_of_star_center() {
        // Star on 5 nodes: center 1/sqrt(2), mu = 5/2.
        let s = 1.0 / (2.0 * 2.0_f64.sqrt());
        let u = DVector::from_vec(vec![1.0 / 2.0_f64.sqrt(), s, s, s, s]);
        assert_relative_eq!(coherence_mu(&u).unwrap(), 2.5, epsilon = 1e-12);
    }

    #[test]
    fn coherence_rejects_non_unit() {
        let u = DVector::from_vec(vec![1.0, 1.0]);
        assert!(matches!(coherence_mu(&u), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn kappa_of_exact_rank_one_is_zero() {
        let u = unit(vec![3.0, 1.0, -2.0]);
        let mut c = DMatrix::zeros(3, 3);
        c.ger(4.2, &u, &u, 0.0);
        assert!(kappa(&c, 4.2, &u) <= 1e-12);
    }

    #[test]
    fn kappa_of_identity_with_basis_vector() {
        let mut e1 = DVector::zeros(3);
        e1[0] = 1.0;
        let c = DMatrix::identity(3, 3);
        assert_relative_eq!(kappa(&c, 1.0, &e1), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn kappa_on_k3_normalized_filter() {
        // Residual is 0.47265625 (I - u u^T) with uniform u; each absolute
        // row sum is 4/3 of that.
        let g = crate::graph::Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let f = crate::filter::make_normalized_filter(&g, 4).unwrap();
        let c = f.population_covariance();
        let u = unit(vec![1.0; 3]);
        let k = kappa(&c, 25.0, &u);
        assert_relative_eq!(k, 0.47265625 * 4.0 / 3.0, epsilon = 1e-8);
        assert_relative_eq!(k, 0.6302, epsilon = 1e-4);
    }

    fn example_inputs() -> BoundInputs {
        BoundInputs {
            mu: 1.0,
            kappa: 5.0,
            beta1: 25.0,
            m: 10.0,
            n: 100,
            alpha: 0.1,
            t: 1.0,
            constant: 1.0,
        }
    }

    #[test]
    fn sample_bound_worked_example() {
        // 100 * 10 * ln(100) / 16 = 287.8 -> 288.
        assert_eq!(sample_bound(&example_inputs()).unwrap(), 288);
    }

    #[test]
    fn sample_bound_quadratic_in_t_and_inverse_alpha() {
        let base = example_inputs();
        let mut doubled_t = base.clone();
        doubled_t.t = 2.0;
        let mut halved_alpha = base.clone();
        halved_alpha.alpha = 0.05;
        // Compare the pre-ceiling values through exact multiples.
        let raw = |i: &BoundInputs| {
            i.constant * i.mu.powi(4) * (i.t / i.alpha).powi(2) * i.m * (i.n as f64).ln()
                / (i.beta1 * (1.0 - i.kappa / i.beta1).powi(2))
        };
        assert_relative_eq!(raw(&doubled_t), 4.0 * raw(&base), epsilon = 1e-9);
        assert_relative_eq!(raw(&halved_alpha), 4.0 * raw(&base), epsilon = 1e-9);
        assert_eq!(sample_bound(&doubled_t).unwrap(), 1152);
        assert_eq!(sample_bound(&halved_alpha).unwrap(), 1152);
    }

    #[test]
    fn sample_bound_vacuous_when_kappa_reaches_beta1() {
        let mut inputs = example_inputs();
        inputs.kappa = 25.0;
        assert!(matches!(
            sample_bound(&inputs),
            Err(Error::VacuousBound { .. })
        ));
        inputs.kappa = 26.0;
        assert!(sample_bound(&inputs).is_err());
    }

    #[test]
    fn sample_bound_rejects_invalid_inputs() {
        let mut inputs = example_inputs();
        inputs.mu = 0.5;
        assert!(sample_bound(&inputs).is_err());
        let mut inputs = example_inputs();
        inputs.mu = 101.0;
        assert!(sample_bound(&inputs).is_err());
        let mut inputs = example_inputs();
        inputs.alpha = 0.0;
        assert!(sample_bound(&inputs).is_err());
    }

    #[test]
    fn er_kappa_bound_values() {
        assert_relative_eq!(er_kappa_bound(100, 0.1, 1.0).unwrap(), 100.0, epsilon = 1e-9);
        assert_eq!(er_kappa_bound(64, 0.0, 3.0).unwrap(), 0.0);
        assert!(er_kappa_bound(0, 0.1, 1.0).is_err());
    }

    #[test]
    fn er_sample_bound_values() {
        // 100 / ln(100) = 21.7 -> 22.
        assert_eq!(er_sample_bound(100, 1.0, 1.0, 1.0).unwrap(), 22);
        // Linear in m.
        assert_eq!(er_sample_bound(100, 4.0, 1.0, 1.0).unwrap(), 87);
        assert!(er_sample_bound(1, 1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn er_sample_bound_scales_as_n_over_log_n() {
        for n in [10usize, 100, 1000] {
            let b = er_sample_bound(n, 1.0, 1.0, 1.0).unwrap() as f64;
            let target = n as f64 / (n as f64).ln();
            assert!((b - target).abs() <= 1.0, "n={n}: {b} vs {target}");
        }
    }

    #[test]
    fn diagnostic_zero_error_passes_with_infinite_ratio() {
        let u = unit(vec![1.0, 2.0, 3.0]);
        let mut c = DMatrix::zeros(3, 3);
        c.ger(2.0, &u, &u, 0.0);
        let d = assumption_diagnostic(&c, &c, &u, 1.0).unwrap();
        assert_eq!(d.error_inf_norm, 0.0);
        assert!(d.ratio.is_infinite());
        assert!(d.pass);
        assert!(d.kappa <= 1e-12);
        assert_relative_eq!(d.beta1, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn diagnostic_serializes_to_json() {
        let u = unit(vec![1.0, 1.0]);
        let c = DMatrix::identity(2, 2);
        let d = assumption_diagnostic(&c, &(c.clone() * 0.9), &u, 1.0).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert!(json.contains("\"beta1\""));
        assert!(json.contains("\"pass\""));
    }

    #[test]
    fn delocalization_uniform_vector() {
        let u = unit(vec![1.0; 16]);
        let r = delocalization_report(&u).unwrap();
        assert_relative_eq!(r.g, 0.0, epsilon = 1e-10);
        assert_relative_eq!(r.max_alpha, 0.25, epsilon = 1e-12);
    }

    #[test]
    fn delocalization_basis_vector() {
        let mut e1 = DVector::zeros(10);
        e1[0] = 1.0;
        let r = delocalization_report(&e1).unwrap();
        assert_relative_eq!(r.g, 1.0, epsilon = 1e-12);
        assert_relative_eq!(r.max_alpha, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn delocalization_rejects_tiny_or_non_unit() {
        assert!(delocalization_report(&DVector::from_vec(vec![1.0])).is_err());
        assert!(delocalization_report(&DVector::from_vec(vec![1.0, 1.0])).is_err());
    }
}
