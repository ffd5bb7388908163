use serde::{Deserialize, Serialize};

use crate::flow::{FlowMode, HistoryEntry};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LifespanParams {
    pub delta: f64,
    pub r_bound: f64,
    pub rho_scale: f64,
    pub reference_c: Option<f64>,
    pub mode: FlowMode,
}

/// Hypotheses and conclusions of the lifespan estimate, checked against a
/// recorded run. Nothing here is a pass/fail on the unknown constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LifespanReport {
    pub delta: f64,
    pub r_bound: f64,
    pub rho_scale: f64,
    pub mode: FlowMode,
    /// Initial sup-local curvature, if it was recorded.
    pub initial_sup_local: Option<f64>,
    /// `None` when the history carries no sup-local curvature.
    pub initial_energy_ok: Option<bool>,
    /// `ρ⁻¹·max‖f‖ ≤ R` at every recorded step.
    pub norm_bound_ok: bool,
    pub first_violation_step: Option<usize>,
    pub observed_t: f64,
    /// `ρ⁻⁴/(R⁸+R⁴)` for the inverse flow, `ρ⁴/(R⁸+R⁴)` for the Willmore flow.
    pub bound_form: f64,
    pub implied_c: f64,
    /// `implied_c / reference_c`.
    pub c_ratio: Option<f64>,
    /// `max_t sup_local / δ` over the recorded window.
    pub k_observed: Option<f64>,
}

pub fn lifespan_monitor(
    history: &[HistoryEntry],
    params: &LifespanParams,
) -> Result<LifespanReport> {
    let LifespanParams {
        delta,
        r_bound,
        rho_scale,
        reference_c,
        mode,
    } = *params;
    if history.is_empty() {
        return Err(Error::invalid("history", "empty"));
    }
    for (name, v) in [
        ("delta", delta),
        ("r_bound", r_bound),
        ("rho_scale", rho_scale),
    ] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::invalid(name, format!("must be positive, got {v}")));
        }
    }
    let initial_sup_local = history[0].sup_local_a2;
    let first_violation_step = history
        .iter()
        .find(|h| !(h.max_f_norm / rho_scale <= r_bound))
        .map(|h| h.step);
    let observed_t = history.last().map_or(0.0, |h| h.t);
    let r4 = r_bound.powi(4);
    let rho4 = match mode {
        FlowMode::InverseWillmore => rho_scale.powi(-4),
        FlowMode::Willmore => rho_scale.powi(4),
    };
    let bound_form = rho4 / (r4 * r4 + r4);
    let implied_c = observed_t / bound_form;
    let k_observed = history
        .iter()
        .filter_map(|h| h.sup_local_a2)
        .reduce(f64::max)
        .map(|s| s / delta);
    Ok(LifespanReport {
        delta,
        r_bound,
        rho_scale,
        mode,
        initial_sup_local,
        initial_energy_ok: initial_sup_local.map(|s| s <= delta),
        norm_bound_ok: first_violation_step.is_none(),
        first_violation_step,
        observed_t,
        bound_form,
        implied_c,
        c_ratio: reference_c.map(|c| implied_c / c),
        k_observed,
    })
}
