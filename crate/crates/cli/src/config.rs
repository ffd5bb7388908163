use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use willmore_core::diagnostics::CentersPolicy;
use willmore_core::flow::{DiagnosticsConfig, FlowConfig, FlowMode, TangentialSmoothing};

use crate::{CliError, Mode, Policy};

/// Flat JSON run configuration. Every key is optional; unknown keys are
/// rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub mesh: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub mode: Option<Mode>,
    pub t_end: f64,
    pub dt_safety: f64,
    pub max_steps: usize,
    pub origin_guard: f64,
    pub normal_projection: bool,
    /// Tangential smoothing every this many steps; 0 disables it.
    pub tangential_smoothing_every: usize,
    pub tangential_smoothing_strength: f64,
    pub energy_slack: f64,
    pub record_every: usize,
    pub curvature_cap_factor: f64,
    pub max_halvings: u32,
    /// r(τ) at record points that are multiples of this; 0 disables it.
    pub r_tau_every: usize,
    pub delta: f64,
    pub policy: Policy,
    pub grid_spacing: Option<f64>,
    pub tol: f64,
    /// Radius of the balls for the recorded sup-local curvature.
    pub monitor_rho: Option<f64>,
    /// `R` of the lifespan monitor; the report is written when set together
    /// with `monitor_rho`.
    pub lifespan_r_bound: Option<f64>,
    pub lifespan_reference_c: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let f = FlowConfig::default();
        let d = DiagnosticsConfig::default();
        Self {
            mesh: None,
            out_dir: None,
            mode: None,
            t_end: f.t_end,
            dt_safety: f.dt_safety,
            max_steps: f.max_steps,
            origin_guard: f.origin_guard,
            normal_projection: f.normal_projection,
            tangential_smoothing_every: 0,
            tangential_smoothing_strength: 0.5,
            energy_slack: f.energy_slack,
            record_every: f.record_every,
            curvature_cap_factor: f.curvature_cap_factor,
            max_halvings: f.max_halvings,
            r_tau_every: d.r_tau_every,
            delta: d.delta,
            policy: Policy::Vertices,
            grid_spacing: None,
            tol: d.tol,
            monitor_rho: None,
            lifespan_r_bound: None,
            lifespan_reference_c: None,
        }
    }
}

impl RunConfig {
    /// Reads a config file. A missing file is an I/O error; malformed JSON or
    /// unknown keys are usage errors.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn policy(&self) -> Result<CentersPolicy, CliError> {
        centers_policy(self.policy, self.grid_spacing)
    }

    pub fn flow_config(&self, mode: Mode) -> Result<FlowConfig, CliError> {
        let cfg = FlowConfig {
            mode: match mode {
                Mode::Willmore => FlowMode::Willmore,
                Mode::Inverse => FlowMode::InverseWillmore,
            },
            t_end: self.t_end,
            dt_safety: self.dt_safety,
            max_steps: self.max_steps,
            origin_guard: self.origin_guard,
            normal_projection: self.normal_projection,
            tangential_smoothing: match self.tangential_smoothing_every {
                0 => TangentialSmoothing::Off,
                k => TangentialSmoothing::Every {
                    k,
                    strength: self.tangential_smoothing_strength,
                },
            },
            energy_slack: self.energy_slack,
            record_every: self.record_every,
            curvature_cap_factor: self.curvature_cap_factor,
            max_halvings: self.max_halvings,
            diagnostics: DiagnosticsConfig {
                r_tau_every: self.r_tau_every,
                delta: self.delta,
                policy: self.policy()?,
                tol: self.tol,
                monitor_rho: self.monitor_rho,
            },
        };
        cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        if !(self.delta > 0.0) {
            return Err(CliError::Usage(format!(
                "delta must be positive, got {}",
                self.delta
            )));
        }
        if let Some(rho) = self.monitor_rho.filter(|r| !(*r > 0.0)) {
            return Err(CliError::Usage(format!(
                "monitor_rho must be positive, got {rho}"
            )));
        }
        Ok(cfg)
    }
}

pub fn centers_policy(policy: Policy, spacing: Option<f64>) -> Result<CentersPolicy, CliError> {
    match (policy, spacing) {
        (Policy::Vertices, _) => Ok(CentersPolicy::Vertices),
        (Policy::Grid, Some(s)) if s > 0.0 => Ok(CentersPolicy::VerticesPlusGrid { spacing: s }),
        (Policy::Grid, _) => Err(CliError::Usage(
            "grid policy needs a positive spacing".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_gives_defaults() {
        let c: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(c, RunConfig::default());
        let f = c.flow_config(Mode::Inverse).unwrap();
        assert_eq!(f.dt_safety, 0.1);
        assert_eq!(f.mode, FlowMode::InverseWillmore);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"dt_safty": 0.1}"#).is_err());
    }

    #[test]
    fn grid_policy_needs_spacing() {
        let c: RunConfig = serde_json::from_str(r#"{"policy": "grid"}"#).unwrap();
        assert!(c.flow_config(Mode::Willmore).is_err());
        let c: RunConfig =
            serde_json::from_str(r#"{"policy": "grid", "grid_spacing": 0.2}"#).unwrap();
        assert_eq!(
            c.flow_config(Mode::Willmore).unwrap().diagnostics.policy,
            CentersPolicy::VerticesPlusGrid { spacing: 0.2 }
        );
    }

    #[test]
    fn smoothing_maps_to_flow_config() {
        let c: RunConfig = serde_json::from_str(r#"{"tangential_smoothing_every": 3}"#).unwrap();
        assert_eq!(
            c.flow_config(Mode::Willmore).unwrap().tangential_smoothing,
            TangentialSmoothing::Every {
                k: 3,
                strength: 0.5
            }
        );
    }
}
