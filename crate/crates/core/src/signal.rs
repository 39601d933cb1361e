//! White-noise sources and synthesis of observed graph signals.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, DVectorView};
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filter::GraphFilter;
use crate::seeding::{derive_seed, stream_rng};

/// Zero-mean, unit-variance input noise distributions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseLaw {
    /// Standard normal entries.
    Gaussian,
    /// +-1 entries with equal probability; makes the signal-energy bound
    /// `|y|^2 <= m` of the sample-complexity analysis exactly satisfiable.
    Rademacher,
    /// Uniform on `[-sqrt(3), sqrt(3)]`.
    Uniform,
}

impl fmt::Display for NoiseLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            NoiseLaw::Gaussian => "gaussian",
            NoiseLaw::Rademacher => "rademacher",
            NoiseLaw::Uniform => "uniform",
        };
        f.write_str(name)
    }
}

impl FromStr for NoiseLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(NoiseLaw::Gaussian),
            "rademacher" => Ok(NoiseLaw::Rademacher),
            "uniform" => Ok(NoiseLaw::Uniform),
            other => Err(Error::Parameter(format!("unknown noise law '{other}'"))),
        }
    }
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn draw<R: Rng>(law: NoiseLaw, rng: &mut R) -> f64 {
    match law {
        NoiseLaw::Gaussian => rng.sample(StandardNormal),
        NoiseLaw::Rademacher => {
            if rng.random::<bool>() {
                1.0
            } else {
                -1.0
            }
        }
        NoiseLaw::Uniform => rng.random::<f64>() * (2.0 * SQRT3) - SQRT3,
    }
}

/// One i.i.d. white-noise vector of length `n`.
pub fn sample_white_noise<R: Rng>(n: usize, law: NoiseLaw, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(n, |_, _| draw(law, rng))
}

/// A batch of observed graph signals `y_i = H(A) w_i` plus generation
/// metadata sufficient to replay it.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalBatch {
    /// Column `i` is signal `y_i`.
    signals: DMatrix<f64>,
    noise_law: NoiseLaw,
    seed: u64,
    filter_digest: String,
}

#[derive(Serialize, Deserialize)]
struct BatchMetadata {
    node_count: usize,
    num_samples: usize,
    noise_law: NoiseLaw,
    seed: u64,
    filter_digest: String,
}

impl SignalBatch {
    pub fn node_count(&self) -> usize {
        self.signals.nrows()
    }

    pub fn num_samples(&self) -> usize {
        self.signals.ncols()
    }

    /// Signals as columns of an `n x N` matrix.
    pub fn signals(&self) -> &DMatrix<f64> {
        &self.signals
    }

    pub fn signal(&self, i: usize) -> DVectorView<'_, f64> {
        self.signals.column(i)
    }

    pub fn noise_law(&self) -> NoiseLaw {
        self.noise_law
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn filter_digest(&self) -> &str {
        &self.filter_digest
    }

    /// Largest observed signal energy `max_i |y_i|^2`.
    pub fn empirical_m(&self) -> f64 {
        self.signals
            .column_iter()
            .map(|c| c.norm_squared())
            .fold(0.0, f64::max)
    }

    /// Assemble a batch from raw signal columns (testing and replay).
    pub fn from_matrix(
        signals: DMatrix<f64>,
        noise_law: NoiseLaw,
        seed: u64,
        filter_digest: impl Into<String>,
    ) -> Result<Self> {
        if signals.ncols() == 0 {
            return Err(Error::Parameter("batch needs at least one signal".into()));
        }
        if signals.iter().any(|x| !x.is_finite()) {
            return Err(Error::Parameter("signals must be finite".into()));
        }
        Ok(Self {
            signals,
            noise_law,
            seed,
            filter_digest: filter_digest.into(),
        })
    }

    /// Write the batch as a CSV matrix (one row per sample) plus a
    /// `<path>.meta.json` sidecar carrying the generation metadata.
    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut out = String::new();
        for i in 0..self.num_samples() {
            let row: Vec<String> = self.signals.column(i).iter().map(|x| x.to_string()).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        std::fs::write(path, out)?;
        let meta = BatchMetadata {
            node_count: self.node_count(),
            num_samples: self.num_samples(),
            noise_law: self.noise_law,
            seed: self.seed,
            filter_digest: self.filter_digest.clone(),
        };
        let sidecar = sidecar_path(path);
        std::fs::write(sidecar, serde_json::to_string_pretty(&meta).expect("serializable"))?;
        Ok(())
    }

    /// Load a batch written by [`SignalBatch::write_csv`].
    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let meta_text = std::fs::read_to_string(sidecar_path(path))?;
        let meta: BatchMetadata = serde_json::from_str(&meta_text)
            .map_err(|e| Error::Data(format!("bad batch metadata: {e}")))?;
        let text = std::fs::read_to_string(path)?;
        let mut values = Vec::with_capacity(meta.node_count * meta.num_samples);
        let mut rows = 0usize;
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut count = 0usize;
            for tok in line.split(',') {
                let x: f64 = tok.trim().parse().map_err(|e| Error::Format {
                    line: idx + 1,
                    message: format!("bad value: {e}"),
                })?;
                values.push(x);
                count += 1;
            }
            if count != meta.node_count {
                return Err(Error::Format {
                    line: idx + 1,
                    message: format!("expected {} values, got {count}", meta.node_count),
                });
            }
            rows += 1;
        }
        if rows != meta.num_samples {
            return Err(Error::Data(format!(
                "batch has {rows} samples but metadata declares {}",
                meta.num_samples
            )));
        }
        // Values were read row-per-sample; store samples as columns.
        let by_rows = DMatrix::from_row_slice(meta.num_samples, meta.node_count, &values);
        Self::from_matrix(
            by_rows.transpose(),
            meta.noise_law,
            meta.seed,
            meta.filter_digest,
        )
    }
}

fn sidecar_path(path: &Path) -> std::path::PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".meta.json");
    std::path::PathBuf::from(s)
}

/// Generate `num_samples` signals `y_i = H(A) w_i`.
///
/// Sample `i` draws its noise from the derived stream `(seed, i)`, so the
/// batch is identical regardless of thread count or execution order.
pub fn generate_signals(
    filter: &GraphFilter,
    num_samples: usize,
    law: NoiseLaw,
    seed: u64,
) -> Result<SignalBatch> {
    if num_samples == 0 {
        return Err(Error::Parameter("batch needs at least one signal".into()));
    }
    let n = filter.node_count();
    let mut noise = DMatrix::<f64>::zeros(n, num_samples);
    noise
        .as_mut_slice()
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, column)| {
            let mut rng = stream_rng(derive_seed(seed, i as u64));
            for x in column.iter_mut() {
                *x = draw(law, &mut rng);
            }
        });
    let signals = filter.apply_matrix(&noise);
    SignalBatch::from_matrix(signals, law, seed, filter.digest())
}
