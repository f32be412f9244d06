//! The JSON run configuration: a single document with nested population,
//! system, and integrator sections. Command-line flags override file values.

use std::path::{Path, PathBuf};

use ecogame_core::dynamics::{IntegratorMethod, IntegratorSettings};
use ecogame_core::model::{
    deltas_from_matrices, PayoffMatrixPair, PolicyDeltas, PopulationSpec, SystemConfig,
};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    #[serde(default)]
    pub integrator: IntegratorSection,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSection {
    pub pop1: PopulationSection,
    pub pop2: PopulationSection,
    pub epsilon: f64,
}

/// A population is given either by its four payoff deltas or by raw 2x2
/// payoff matrices (`depleted`, `abundant`), which are reduced to deltas on
/// load.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PopulationSection {
    pub d_sp0: Option<f64>,
    pub d_rt0: Option<f64>,
    pub d_tr1: Option<f64>,
    pub d_ps1: Option<f64>,
    pub depleted: Option<[[f64; 2]; 2]>,
    pub abundant: Option<[[f64; 2]; 2]>,
    pub theta: f64,
    pub alpha: f64,
}

impl PopulationSection {
    fn resolve(&self, which: &str) -> Result<PopulationSpec, CliError> {
        let deltas = match (self.depleted, self.abundant) {
            (Some(depleted), Some(abundant)) => {
                if self.d_sp0.is_some()
                    || self.d_rt0.is_some()
                    || self.d_tr1.is_some()
                    || self.d_ps1.is_some()
                {
                    return Err(CliError::Config(format!(
                        "{which}: give either payoff matrices or deltas, not both"
                    )));
                }
                deltas_from_matrices(&PayoffMatrixPair { depleted, abundant })?
            }
            (None, None) => {
                let field = |v: Option<f64>, name: &str| {
                    v.ok_or_else(|| CliError::Config(format!("{which}: missing field {name}")))
                };
                PolicyDeltas::new(
                    field(self.d_sp0, "d_sp0")?,
                    field(self.d_rt0, "d_rt0")?,
                    field(self.d_tr1, "d_tr1")?,
                    field(self.d_ps1, "d_ps1")?,
                )?
            }
            _ => {
                return Err(CliError::Config(format!(
                    "{which}: payoff matrices require both `depleted` and `abundant`"
                )))
            }
        };
        Ok(PopulationSpec::new(deltas, self.theta, self.alpha)?)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IntegratorSection {
    pub method: String,
    pub dt: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub t_max: f64,
    pub convergence_window: f64,
    pub convergence_eps: f64,
    pub store_every: usize,
}

impl Default for IntegratorSection {
    fn default() -> Self {
        let d = IntegratorSettings::default();
        Self {
            method: "rk4_fixed".into(),
            dt: d.dt,
            rel_tol: d.rel_tol,
            abs_tol: d.abs_tol,
            t_max: d.t_max,
            convergence_window: d.convergence_window,
            convergence_eps: d.convergence_eps,
            store_every: d.store_every,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|err| {
            CliError::Config(format!("cannot read config {}: {err}", path.display()))
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn system(&self) -> Result<SystemConfig, CliError> {
        Ok(SystemConfig::new(
            self.system.pop1.resolve("pop1")?,
            self.system.pop2.resolve("pop2")?,
            self.system.epsilon,
        )?)
    }

    pub fn integrator(&self) -> Result<IntegratorSettings, CliError> {
        let method = match self.integrator.method.as_str() {
            "rk4_fixed" => IntegratorMethod::Rk4Fixed,
            "rk45_adaptive" => IntegratorMethod::Rk45Adaptive,
            other => {
                return Err(CliError::Config(format!(
                    "unknown integrator method {other:?} (expected rk4_fixed or rk45_adaptive)"
                )))
            }
        };
        Ok(IntegratorSettings {
            method,
            dt: self.integrator.dt,
            rel_tol: self.integrator.rel_tol,
            abs_tol: self.integrator.abs_tol,
            t_max: self.integrator.t_max,
            convergence_window: self.integrator.convergence_window,
            convergence_eps: self.integrator.convergence_eps,
            store_every: self.integrator.store_every,
        })
    }
}
