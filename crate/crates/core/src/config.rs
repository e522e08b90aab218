//! Run configuration: flags override a TOML config file, which overrides
//! defaults. The resolved value is embedded in every output.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dla::{model_by_name, GeneratorSet};
use crate::dynamics::{DEFAULT_ODE_TOL, DEFAULT_LANCZOS_TOL};
use crate::error::{Error, Result};
use crate::random::Distribution;
use crate::sampler::{SamplerConfig, SamplerMode, DEPTH_PER_GENERATOR};

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_T_MAX: f64 = 10.0;
pub const DEFAULT_STEPS: usize = 100;

/// Every field optional; used for both the config file and the flags.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub model: Option<String>,
    pub model_file: Option<PathBuf>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub weight_cap: Option<usize>,
    pub depth: Option<usize>,
    pub trials: Option<usize>,
    pub sampler: Option<SamplerKind>,
    pub distribution: Option<Distribution>,
    pub t_max: Option<f64>,
    pub steps: Option<usize>,
    pub format: Option<String>,
    pub threads: Option<usize>,
    pub ode_tol: Option<f64>,
    pub lanczos_tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Circuit,
    Hamiltonian,
}

impl std::str::FromStr for SamplerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circuit" => Ok(SamplerKind::Circuit),
            "hamiltonian" => Ok(SamplerKind::Hamiltonian),
            other => Err(Error::Config(format!("unknown sampler {other:?}"))),
        }
    }
}

impl PartialConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(format!("config file: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: PartialConfig) -> PartialConfig {
        PartialConfig {
            model: self.model.or(base.model),
            model_file: self.model_file.or(base.model_file),
            n: self.n.or(base.n),
            seed: self.seed.or(base.seed),
            weight_cap: self.weight_cap.or(base.weight_cap),
            depth: self.depth.or(base.depth),
            trials: self.trials.or(base.trials),
            sampler: self.sampler.or(base.sampler),
            distribution: self.distribution.or(base.distribution),
            t_max: self.t_max.or(base.t_max),
            steps: self.steps.or(base.steps),
            format: self.format.or(base.format),
            threads: self.threads.or(base.threads),
            ode_tol: self.ode_tol.or(base.ode_tol),
            lanczos_tol: self.lanczos_tol.or(base.lanczos_tol),
        }
    }
}

/// The model source after resolution.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelSource {
    Preset(String),
    File(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub model: ModelSource,
    pub n: usize,
    pub seed: u64,
    pub weight_cap: Option<usize>,
    pub sampler: SamplerKind,
    pub depth: usize,
    pub trials: usize,
    pub distribution: Distribution,
    pub t_max: f64,
    pub steps: usize,
    pub format: String,
    pub threads: Option<usize>,
    pub ode_tol: f64,
    pub lanczos_tol: f64,
    /// Generators after loading the model.
    pub generators: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
}

impl RunConfig {
    pub fn resolve(p: PartialConfig, default_format: &str) -> Result<(Self, GeneratorSet)> {
        let (model, gens) = match (&p.model, &p.model_file) {
            (Some(_), Some(_)) => {
                return Err(Error::Config("give either --model or --model-file, not both".into()))
            }
            (None, None) => return Err(Error::Config("no model given (--model or --model-file)".into())),
            (Some(name), None) => {
                let n = p
                    .n
                    .ok_or_else(|| Error::Config("--n is required with a preset model".into()))?;
                (ModelSource::Preset(name.clone()), model_by_name(name, n)?)
            }
            (None, Some(path)) => {
                let gens = GeneratorSet::from_json_file(path)?;
                if let Some(n) = p.n {
                    if n != gens.num_qubits() {
                        return Err(Error::Config(format!(
                            "--n {n} disagrees with model file ({} qubits)",
                            gens.num_qubits()
                        )));
                    }
                }
                (ModelSource::File(path.clone()), gens)
            }
        };
        let distribution = p.distribution.unwrap_or_default();
        distribution.validate()?;
        let trials = p.trials.unwrap_or(DEFAULT_TRIALS);
        let t_max = p.t_max.unwrap_or(DEFAULT_T_MAX);
        if !(t_max.is_finite() && t_max >= 0.0) {
            return Err(Error::Config(format!("t_max must be >= 0, got {t_max}")));
        }
        let ode_tol = p.ode_tol.unwrap_or(DEFAULT_ODE_TOL);
        let lanczos_tol = p.lanczos_tol.unwrap_or(DEFAULT_LANCZOS_TOL);
        if !(ode_tol > 0.0 && lanczos_tol > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if p.threads == Some(0) {
            return Err(Error::Config("--threads must be positive".into()));
        }
        let cfg = RunConfig {
            model,
            n: gens.num_qubits(),
            seed: p.seed.unwrap_or(0),
            weight_cap: p.weight_cap,
            sampler: p.sampler.unwrap_or(SamplerKind::Circuit),
            depth: p.depth.unwrap_or(DEPTH_PER_GENERATOR * gens.len()),
            trials,
            distribution,
            t_max,
            steps: p.steps.unwrap_or(DEFAULT_STEPS),
            format: p.format.unwrap_or_else(|| default_format.to_string()),
            threads: p.threads,
            ode_tol,
            lanczos_tol,
            generators: gens.generators().iter().map(|g| g.to_string()).collect(),
            coefficients: gens.coefficients().map(<[f64]>::to_vec),
        };
        Ok((cfg, gens))
    }

    pub fn sampler_config(&self) -> SamplerConfig {
        let mode = match self.sampler {
            SamplerKind::Circuit => SamplerMode::Circuit { depth: self.depth },
            SamplerKind::Hamiltonian => SamplerMode::Hamiltonian {
                distribution: self.distribution,
            },
        };
        SamplerConfig {
            mode,
            trials: self.trials,
            seed: self.seed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let file = PartialConfig::from_toml("model = \"universal\"\nn = 3\nseed = 5\ntrials = 9").unwrap();
        let flags = PartialConfig {
            n: Some(2),
            ..Default::default()
        };
        let (cfg, gens) = RunConfig::resolve(flags.over(file), "json").unwrap();
        assert_eq!(cfg.n, 2);
        assert_eq!(gens.num_qubits(), 2);
        assert_eq!((cfg.seed, cfg.trials), (5, 9));
        assert_eq!(cfg.depth, 50 * gens.len());
        assert_eq!(cfg.format, "json");
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(PartialConfig::from_toml("modle = \"x\"").is_err());
    }

    #[test]
    fn distribution_in_toml() {
        let p = PartialConfig::from_toml(
            "model = \"matchgate\"\nn = 2\n[distribution]\nkind = \"normal\"\nmean = 0.0\nstd = 1.0",
        )
        .unwrap();
        let (cfg, _) = RunConfig::resolve(p, "csv").unwrap();
        assert_eq!(cfg.distribution, Distribution::Normal { mean: 0.0, std: 1.0 });
    }

    #[test]
    fn missing_or_conflicting_model() {
        assert!(RunConfig::resolve(PartialConfig::default(), "json").is_err());
        let p = PartialConfig {
            model: Some("bogus".into()),
            n: Some(2),
            ..Default::default()
        };
        assert!(matches!(RunConfig::resolve(p, "json"), Err(Error::Config(_))));
    }
}
