//! Experiment configuration: presets with the published parameter choices,
//! a flat JSON config-file format, and validation that names the offending
//! field.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use blindrank_core::{NoiseLaw, SufficiencyProtocol};

use crate::error::CliError;

/// Built-in experiment families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    /// Spearman vs sample size on ER(500, p) for a sweep of edge
    /// probabilities.
    Fig2a,
    /// Spearman curves for ER(n, 4 ln n / n) over n, keyed by the
    /// normalized sample size N ln n / n.
    Fig2b,
    /// Sorted centrality profiles of a threshold-density ER graph vs a
    /// Barabási–Albert graph of matched density.
    Fig2c,
    /// Windowed Spearman over centrality-sorted blocks on BA(500, 4, 4).
    Fig2d,
    /// Per-node sample sufficiency on the karate-club network.
    Fig3,
    /// User-defined graph/grid with the global Spearman metric.
    Custom,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2a => "fig2a",
            Preset::Fig2b => "fig2b",
            Preset::Fig2c => "fig2c",
            Preset::Fig2d => "fig2d",
            Preset::Fig3 => "fig3",
            Preset::Custom => "custom",
        }
    }
}

/// Graph model specification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GraphSpec {
    Er { n: usize, p: f64 },
    Ba { n: usize, m: usize, m0: usize },
    Karate,
    /// Fixed graph loaded from an edge-list file.
    EdgeList { path: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

/// Full description of one experiment run. Serializes as a flat JSON
/// document; unknown fields are rejected so config typos fail loudly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub preset: Preset,
    pub graph: GraphSpec,
    /// Order of the normalized filter built from each generated graph.
    pub filter_order: usize,
    pub noise: NoiseLaw,
    /// Absolute sample counts (fig2a, fig2d, custom).
    pub sample_grid: Vec<usize>,
    /// Independent repetitions; each regenerates graph and signals.
    pub runs: usize,
    pub master_seed: u64,
    /// Output path; a preset-derived name is used when absent.
    pub output: Option<String>,
    pub format: OutputFormat,
    /// fig2a: edge probabilities to sweep.
    pub p_values: Vec<f64>,
    /// fig2b: graph sizes to sweep (p = 4 ln n / n per size).
    pub n_values: Vec<usize>,
    /// fig2b: shared normalized sample sizes N ln n / n; each maps to
    /// N = max(1, round(s n / ln n)) per graph size.
    pub normalized_grid: Vec<f64>,
    /// fig2d window geometry.
    pub window_width: usize,
    pub window_stride: usize,
    /// fig3 protocol parameters.
    pub protocol: SufficiencyProtocol,
}

impl ExperimentConfig {
    /// The published defaults for a preset.
    pub fn preset_defaults(preset: Preset) -> Self {
        let base = Self {
            preset,
            graph: GraphSpec::Er { n: 500, p: 0.1 },
            filter_order: 4,
            noise: NoiseLaw::Gaussian,
            sample_grid: vec![10, 32, 100, 316, 1000, 3162, 10_000],
            runs: 10,
            master_seed: 0,
            output: None,
            format: OutputFormat::Csv,
            p_values: Vec::new(),
            n_values: Vec::new(),
            normalized_grid: Vec::new(),
            window_width: 100,
            window_stride: 100,
            protocol: SufficiencyProtocol::default(),
        };
        match preset {
            Preset::Fig2a => Self {
                p_values: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
                ..base
            },
            Preset::Fig2b => Self {
                n_values: vec![200, 400, 800],
                normalized_grid: vec![5.0, 8.0, 12.5, 20.0, 32.0, 50.0],
                sample_grid: Vec::new(),
                ..base
            },
            Preset::Fig2c => Self {
                // ER side of the comparison; the BA side is fixed to
                // m = m0 = 3 at the same size.
                graph: GraphSpec::Er {
                    n: 500,
                    p: (500.0_f64).ln() / 500.0,
                },
                sample_grid: Vec::new(),
                ..base
            },
            Preset::Fig2d => Self {
                graph: GraphSpec::Ba { n: 500, m: 4, m0: 4 },
                sample_grid: vec![10, 24, 59, 143, 349, 847, 2058, 5000],
                ..base
            },
            Preset::Fig3 => Self {
                graph: GraphSpec::Karate,
                sample_grid: Vec::new(),
                runs: 1,
                ..base
            },
            Preset::Custom => Self {
                graph: GraphSpec::Er { n: 100, p: 0.1 },
                sample_grid: vec![100, 1000],
                ..base
            },
        }
    }

    /// Default output file name for this configuration.
    pub fn default_output_name(&self) -> String {
        format!("{}.{}", self.preset.name(), self.format.extension())
    }

    fn err(field: &str, message: impl std::fmt::Display) -> CliError {
        CliError::Config(format!("{field}: {message}"))
    }

    fn validate_graph(&self) -> Result<(), CliError> {
        match &self.graph {
            GraphSpec::Er { n, p } => {
                if *n == 0 {
                    return Err(Self::err("graph.n", "must be at least 1"));
                }
                if !(0.0..=1.0).contains(p) {
                    return Err(Self::err("graph.p", format!("{p} outside [0, 1]")));
                }
            }
            GraphSpec::Ba { n, m, m0 } => {
                if *m == 0 || m > m0 {
                    return Err(Self::err("graph.m", "must satisfy 1 <= m <= m0"));
                }
                if m0 > n {
                    return Err(Self::err("graph.m0", "must not exceed graph.n"));
                }
            }
            GraphSpec::Karate | GraphSpec::EdgeList { .. } => {}
        }
        Ok(())
    }

    fn validate_grid(grid: &[usize], field: &str) -> Result<(), CliError> {
        if grid.is_empty() {
            return Err(Self::err(field, "must not be empty"));
        }
        if grid[0] == 0 {
            return Err(Self::err(field, "sample counts must be positive"));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Self::err(field, "must be strictly increasing"));
        }
        Ok(())
    }

    /// Check every field the selected preset will use.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.runs == 0 {
            return Err(Self::err("runs", "must be at least 1"));
        }
        self.validate_graph()?;
        match self.preset {
            Preset::Fig2a => {
                Self::validate_grid(&self.sample_grid, "sample_grid")?;
                if self.p_values.is_empty() {
                    return Err(Self::err("p_values", "must not be empty"));
                }
                if self.p_values.iter().any(|p| !(0.0..=1.0).contains(p)) {
                    return Err(Self::err("p_values", "entries must lie in [0, 1]"));
                }
                if !matches!(self.graph, GraphSpec::Er { .. }) {
                    return Err(Self::err("graph.model", "fig2a sweeps an er graph"));
                }
            }
            Preset::Fig2b => {
                if self.n_values.is_empty() {
                    return Err(Self::err("n_values", "must not be empty"));
                }
                if self.n_values.iter().any(|&n| n < 2) {
                    return Err(Self::err("n_values", "graph sizes must be at least 2"));
                }
                if self.normalized_grid.is_empty() {
                    return Err(Self::err("normalized_grid", "must not be empty"));
                }
                if self
                    .normalized_grid
                    .windows(2)
                    .any(|w| w[0] >= w[1] || w[0] <= 0.0)
                {
                    return Err(Self::err(
                        "normalized_grid",
                        "must be positive and strictly increasing",
                    ));
                }
            }
            Preset::Fig2c => {
                if !matches!(self.graph, GraphSpec::Er { .. }) {
                    return Err(Self::err("graph.model", "fig2c compares er against ba"));
                }
            }
            Preset::Fig2d => {
                Self::validate_grid(&self.sample_grid, "sample_grid")?;
                let n = match self.graph {
                    GraphSpec::Ba { n, .. } => n,
                    _ => return Err(Self::err("graph.model", "fig2d uses a ba graph")),
                };
                if self.window_width < 2 || self.window_width > n {
                    return Err(Self::err("window_width", format!("must lie in [2, {n}]")));
                }
                if self.window_stride == 0 {
                    return Err(Self::err("window_stride", "must be positive"));
                }
            }
            Preset::Fig3 => {
                if !matches!(self.graph, GraphSpec::Karate) {
                    return Err(Self::err("graph.model", "fig3 runs on the karate network"));
                }
                self.protocol
                    .validate()
                    .map_err(|e| Self::err("protocol", e))?;
            }
            Preset::Custom => {
                Self::validate_grid(&self.sample_grid, "sample_grid")?;
            }
        }
        Ok(())
    }

    /// Load a config file, validating field names and values.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let config: Self =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_preset_default_is_valid_and_round_trips() {
        for preset in [
            Preset::Fig2a,
            Preset::Fig2b,
            Preset::Fig2c,
            Preset::Fig2d,
            Preset::Fig3,
            Preset::Custom,
        ] {
            let config = ExperimentConfig::preset_defaults(preset);
            config.validate().unwrap();
            let text = config.to_json();
            let back = ExperimentConfig::from_json(&text).unwrap();
            assert_eq!(config, back, "{preset:?} did not round-trip");
        }
    }

    #[test]
    fn fig2a_defaults_match_published_protocol() {
        let c = ExperimentConfig::preset_defaults(Preset::Fig2a);
        assert_eq!(c.graph, GraphSpec::Er { n: 500, p: 0.1 });
        assert_eq!(c.p_values.len(), 9);
        assert_eq!(c.p_values[0], 0.1);
        assert_eq!(c.p_values[8], 0.9);
        assert_eq!(c.runs, 10);
        assert_eq!(c.filter_order, 4);
    }

    #[test]
    fn fig2b_defaults_use_normalized_grid() {
        let c = ExperimentConfig::preset_defaults(Preset::Fig2b);
        assert_eq!(c.n_values, vec![200, 400, 800]);
        assert_eq!(c.normalized_grid.first(), Some(&5.0));
        assert_eq!(c.normalized_grid.last(), Some(&50.0));
    }

    #[test]
    fn fig2d_defaults() {
        let c = ExperimentConfig::preset_defaults(Preset::Fig2d);
        assert_eq!(c.graph, GraphSpec::Ba { n: 500, m: 4, m0: 4 });
        assert_eq!(c.window_width, 100);
        assert_eq!(*c.sample_grid.last().unwrap(), 5000);
    }

    #[test]
    fn fig3_defaults() {
        let c = ExperimentConfig::preset_defaults(Preset::Fig3);
        assert_eq!(c.graph, GraphSpec::Karate);
        assert_eq!(c.protocol.max_samples, 1000);
        assert_eq!(c.protocol.trials_per_point, 100);
        assert_eq!(c.protocol.probability_threshold, 0.95);
    }

    #[test]
    fn validation_names_the_field() {
        let mut c = ExperimentConfig::preset_defaults(Preset::Fig2a);
        c.runs = 0;
        assert!(matches!(c.validate(), Err(CliError::Config(m)) if m.starts_with("runs")));

        let mut c = ExperimentConfig::preset_defaults(Preset::Fig2a);
        c.p_values = vec![0.5, 1.5];
        assert!(matches!(c.validate(), Err(CliError::Config(m)) if m.starts_with("p_values")));

        let mut c = ExperimentConfig::preset_defaults(Preset::Fig2d);
        c.window_width = 1;
        assert!(
            matches!(c.validate(), Err(CliError::Config(m)) if m.starts_with("window_width"))
        );
    }

    #[test]
    fn unknown_config_field_is_rejected() {
        let text = r#"{"preset":"fig2a","grpah":{"model":"karate"}}"#;
        let err = ExperimentConfig::from_json(text).unwrap_err();
        assert!(err.to_string().contains("grpah"), "{err}");
    }
}
