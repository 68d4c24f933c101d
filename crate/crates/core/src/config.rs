//! JSON run configuration.
//!
//! A run is described by a single JSON document. Unknown keys are rejected
//! everywhere and `schema_version` must equal [`SCHEMA_VERSION`].
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "seed": 2024,
//!   "system": {
//!     "thetas": [2.3129, 0.1765, 1.4861],
//!     "ts": 1.0,
//!     "n": 50,
//!     "eigvecs": { "kind": "canonical" }
//!   },
//!   "observation": { "mode": "exact" },
//!   "sweep": { "m_start": 1, "m_stop": 200, "trials": 1000 }
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::dimension::{DimensionConfig, PlateauSettings};
use crate::harness::{ObservationMode, SweepConfig};
use crate::system::{
    make_canonical_eigvecs, make_gaussian_eigvecs, unit_normalize, ClassASystem, SpectralCoords,
};
use crate::{dimension, harness, Complex64, Error, Result};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 2024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<SystemSpec>,
    /// Full conjugate-symmetric coordinates as `[re, im]` pairs; defaults to all ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha0: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observation: Option<ObservationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check: Option<CheckSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dimension: Option<DimensionSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub demo: Option<DemoSpec>,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_ts() -> f64 {
    1.0
}

fn default_n() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub thetas: Vec<f64>,
    #[serde(default = "default_ts")]
    pub ts: f64,
    /// Ambient dimension; ignored for explicit eigenvectors.
    #[serde(default = "default_n")]
    pub n: usize,
    pub eigvecs: EigvecSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EigvecSpec {
    Canonical {},
    Gaussian {
        seed: u64,
    },
    Explicit {
        /// One vector per mode, entries as `[re, im]`.
        vectors: Vec<Vec<[f64; 2]>>,
        #[serde(default)]
        normalize: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum ObservationSpec {
    Perturbed {
        #[serde(default = "default_variance")]
        variance: f64,
    },
    Exact {},
    Explicit {
        h: Vec<f64>,
    },
}

fn default_variance() -> f64 {
    harness::DEFAULT_VARIANCE
}

impl Default for ObservationSpec {
    fn default() -> Self {
        ObservationSpec::Perturbed {
            variance: default_variance(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    /// Number of delays the hypotheses are checked at.
    #[serde(rename = "M")]
    pub m: usize,
    /// Tolerances for the `M_hat(eps)` table.
    #[serde(default)]
    pub eps: Vec<f64>,
}

fn one() -> usize {
    1
}

fn default_m_stop() -> usize {
    200
}

fn default_trials() -> usize {
    harness::DEFAULT_TRIALS
}

fn default_t_max() -> f64 {
    harness::DEFAULT_T_MAX
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default = "one")]
    pub m_start: usize,
    #[serde(default = "default_m_stop")]
    pub m_stop: usize,
    #[serde(default = "one")]
    pub m_step: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_t_max")]
    pub t_max: f64,
}

fn default_k() -> usize {
    dimension::DEFAULT_K
}

fn default_m_list() -> Vec<usize> {
    vec![3, 73, 153, 223]
}

fn default_sigma() -> f64 {
    0.05
}

fn default_tol() -> f64 {
    dimension::DEFAULT_PLATEAU_TOL
}

fn default_min_width() -> f64 {
    dimension::DEFAULT_PLATEAU_MIN_WIDTH
}

/// The observation is used as given (or as the unnormalized generated
/// direction); every `M` shares one series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimensionSpec {
    #[serde(rename = "K", default = "default_k")]
    pub k: usize,
    #[serde(rename = "M", default = "default_m_list")]
    pub m_list: Vec<usize>,
    #[serde(default = "default_sigma")]
    pub noise_sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_grid: Option<Vec<f64>>,
    #[serde(default = "default_tol")]
    pub plateau_tol: f64,
    #[serde(default = "default_min_width")]
    pub plateau_min_width: f64,
    #[serde(default)]
    pub theiler: usize,
}

fn default_demo_theta() -> f64 {
    0.03
}

fn default_demo_eps() -> Vec<f64> {
    vec![0.001, 0.01, 0.1]
}

fn default_demo_m() -> Vec<usize> {
    vec![3, 10, 100, 400]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoSpec {
    #[serde(default = "default_demo_theta")]
    pub theta: f64,
    #[serde(default = "default_demo_eps")]
    pub eps: Vec<f64>,
    #[serde(rename = "M", default = "default_demo_m")]
    pub m: Vec<usize>,
}

impl Default for DemoSpec {
    fn default() -> Self {
        Self {
            theta: default_demo_theta(),
            eps: default_demo_eps(),
            m: default_demo_m(),
        }
    }
}

impl RunConfig {
    /// Parses and validates a document, including building the system.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "schema_version: expected {SCHEMA_VERSION}, got {}",
                self.schema_version
            )));
        }
        if self.system.is_some() {
            let sys = self.build_system()?;
            self.alpha0(&sys)?;
            if let Some(obs) = &self.observation {
                harness::observation_direction(&sys, &observation_mode(obs), self.seed)
                    .map_err(|e| Error::Config(format!("observation: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn build_system(&self) -> Result<ClassASystem> {
        let spec = self
            .system
            .as_ref()
            .ok_or_else(|| Error::Config("missing key `system`".into()))?;
        let d = spec.thetas.len();
        let eigvecs = match &spec.eigvecs {
            EigvecSpec::Canonical {} => make_canonical_eigvecs(d, spec.n),
            EigvecSpec::Gaussian { seed } => make_gaussian_eigvecs(d, spec.n, *seed),
            EigvecSpec::Explicit { vectors, normalize } => vectors
                .iter()
                .map(|v| {
                    let v: Vec<Complex64> =
                        v.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                    if *normalize {
                        unit_normalize(&v)
                    } else {
                        Ok(v)
                    }
                })
                .collect(),
        }
        .map_err(|e| Error::Config(format!("system.eigvecs: {e}")))?;
        ClassASystem::new(spec.thetas.clone(), eigvecs, spec.ts)
            .map_err(|e| Error::Config(format!("system: {e}")))
    }

    pub fn alpha0(&self, sys: &ClassASystem) -> Result<SpectralCoords> {
        match &self.alpha0 {
            None => Ok(SpectralCoords::ones(sys.d())),
            Some(values) => {
                if values.len() != 2 * sys.d() {
                    return Err(Error::Config(format!(
                        "alpha0: expected {} entries, got {}",
                        2 * sys.d(),
                        values.len()
                    )));
                }
                SpectralCoords::new(
                    values
                        .iter()
                        .map(|[re, im]| Complex64::new(*re, *im))
                        .collect(),
                )
                .map_err(|e| Error::Config(format!("alpha0: {e}")))
            }
        }
    }

    pub fn observation(&self) -> ObservationMode {
        observation_mode(&self.observation.clone().unwrap_or_default())
    }

    pub fn sweep_config(&self) -> Result<SweepConfig> {
        let spec = self
            .sweep
            .as_ref()
            .ok_or_else(|| Error::Config("missing key `sweep`".into()))?;
        let system = self.build_system()?;
        let cfg = SweepConfig {
            alpha0: self.alpha0(&system)?,
            observation: self.observation(),
            m_start: spec.m_start,
            m_stop: spec.m_stop,
            m_step: spec.m_step,
            trials: spec.trials,
            t_max: spec.t_max,
            ..SweepConfig::new(system, self.seed)
        };
        cfg.validate()
            .map_err(|e| Error::Config(format!("sweep: {e}")))?;
        Ok(cfg)
    }

    pub fn dimension_config(&self) -> Result<DimensionConfig> {
        let spec = self
            .dimension
            .as_ref()
            .ok_or_else(|| Error::Config("missing key `dimension`".into()))?;
        if spec.k < 2 {
            return Err(Error::Config(format!(
                "dimension.K: must be at least 2, got {}",
                spec.k
            )));
        }
        if spec.m_list.is_empty() || spec.m_list.contains(&0) {
            return Err(Error::Config(
                "dimension.M: need a nonempty list of positive values".into(),
            ));
        }
        Ok(DimensionConfig {
            k: spec.k,
            m_list: spec.m_list.clone(),
            noise_sigma: spec.noise_sigma,
            eps_grid: spec.eps_grid.clone(),
            plateau: PlateauSettings {
                tol: spec.plateau_tol,
                min_width: spec.plateau_min_width,
            },
            theiler: spec.theiler,
            seed: self.seed,
        })
    }

    /// Observation for the dimension experiment, without per-`M` scaling.
    pub fn dimension_observation(&self, sys: &ClassASystem) -> Result<Vec<f64>> {
        harness::observation_direction(sys, &self.observation(), self.seed)
    }
}

fn observation_mode(spec: &ObservationSpec) -> ObservationMode {
    match spec {
        ObservationSpec::Perturbed { variance } => ObservationMode::Perturbed {
            variance: *variance,
        },
        ObservationSpec::Exact {} => ObservationMode::Exact,
        ObservationSpec::Explicit { h } => ObservationMode::Explicit(h.clone()),
    }
}
