//! Blind eigenvector-centrality ranking from graph signals.
//!
//! Infers the centrality ranking of an unobserved graph from signals shaped
//! by a polynomial graph filter driven by white noise: the sample covariance
//! of the observations shares the adjacency matrix's leading eigenvector, so
//! its top eigenvector ranks the nodes. The crate bundles the pieces needed
//! to study when this works:
//!
//! - [`graph`]: dense simple graphs, Erdős–Rényi and Barabási–Albert
//!   generators, the karate-club network, edge-list I/O.
//! - [`spectral`]: shifted power iteration and a dense eigendecomposition
//!   oracle.
//! - [`filter`] / [`signal`]: graph filters, white-noise sources, and
//!   reproducible signal batches.
//! - [`estimator`]: the covariance-based inference pipeline.
//! - [`bounds`]: sample-complexity calculators and diagnostics.
//! - [`evaluation`]: Spearman metrics and the per-node sufficiency protocol.
//!
//! All randomized operations are seeded explicitly and are deterministic
//! under any thread count; see [`seeding`].

pub mod bounds;
pub mod centrality;
pub mod error;
pub mod estimator;
pub mod evaluation;
pub mod filter;
pub mod graph;
pub mod seeding;
pub mod signal;
pub mod spectral;

pub use bounds::{
    assumption_diagnostic, coherence_mu, delocalization_report, er_kappa_bound, er_sample_bound,
    kappa, sample_bound, AssumptionDiagnostic, BoundInputs, DelocalizationReport,
};
pub use centrality::{eigenvector_centrality, rank_from_values, CentralityProfile};
pub use error::{Error, Result};
pub use estimator::{
    infer_centrality, infer_from_moment, preserves_relative_order, sample_covariance,
    CovarianceEstimate,
};
pub use evaluation::{
    fractional_ranks, rank_correct, spearman, sufficiency_profile, sufficiency_samples,
    windowed_spearman, SufficiencyProtocol, SufficiencyResult,
};
pub use filter::{make_normalized_filter, make_polynomial_filter, GraphFilter};
pub use graph::generators::{barabasi_albert, erdos_renyi};
pub use graph::karate::{load_karate, INSTRUCTOR, PRESIDENT};
pub use graph::Graph;
pub use signal::{generate_signals, sample_white_noise, NoiseLaw, SignalBatch};
pub use spectral::{
    full_spectrum, infinity_norm, leading_eigenpair, power_iteration, SpectralDecomposition,
    DEFAULT_MAX_ITER, DEFAULT_TOL, DENSE_LIMIT,
};
