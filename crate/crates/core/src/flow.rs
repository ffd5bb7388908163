//! Explicit time integration of the Willmore flow
//! `∂ₜf = −½(ΔH + Q(A⁰)H)` and the inverse Willmore flow
//! `∂ₜf = −‖f‖⁸/2 (ΔH + Q(A⁰)H)`.
//!
//! Each step is forward Euler with `dt = C·h_min⁴ / s_max`, where
//! `s_max = max(1, max‖f‖⁸)` for the inverse flow and 1 otherwise. A step is
//! accepted only if the Willmore energy does not grow by more than
//! `energy_slack·W`; otherwise `dt` is halved and the step retried.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    concentration_profile, concentration_radius, sup_local_curvature, CentersPolicy,
    ConcentrationProfile,
};
use crate::geometry::GeometryCache;
use crate::mesh::TriMesh;
use crate::{par, Error, Result, Vec3, DEFAULT_ORIGIN_GUARD};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlowMode {
    Willmore,
    InverseWillmore,
}

impl FlowMode {
    /// `‖f‖⁸` for the inverse flow, 1 for the Willmore flow.
    fn speed_factor(self, f_norm: f64) -> f64 {
        match self {
            FlowMode::Willmore => 1.0,
            FlowMode::InverseWillmore => f_norm.powi(8),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TangentialSmoothing {
    Off,
    /// Every `k` accepted steps, move each vertex by `strength` times the
    /// tangential part of the offset to its neighbor centroid.
    Every {
        k: usize,
        strength: f64,
    },
}

/// Optional diagnostics evaluated at record points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DiagnosticsConfig {
    /// Compute `r(τ)` at every record point whose step is a multiple of this;
    /// 0 disables.
    pub r_tau_every: usize,
    pub delta: f64,
    pub policy: CentersPolicy,
    pub tol: f64,
    /// Record `sup_x ∫_{B_ρ(x)} |A|² dμ` at this radius at every record point.
    pub monitor_rho: Option<f64>,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        Self {
            r_tau_every: 0,
            delta: std::f64::consts::PI,
            policy: CentersPolicy::Vertices,
            tol: 1e-3,
            monitor_rho: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    pub mode: FlowMode,
    pub t_end: f64,
    /// Safety factor `C` in the step-size rule.
    pub dt_safety: f64,
    pub max_steps: usize,
    pub origin_guard: f64,
    pub normal_projection: bool,
    pub tangential_smoothing: TangentialSmoothing,
    pub energy_slack: f64,
    pub record_every: usize,
    /// Blow-up is declared when `max|A|²` exceeds this multiple of its
    /// initial value.
    pub curvature_cap_factor: f64,
    pub max_halvings: u32,
    pub diagnostics: DiagnosticsConfig,
}

impl FlowConfig {
    pub fn new(mode: FlowMode, t_end: f64) -> Self {
        Self {
            mode,
            t_end,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt_safety > 0.0) || !self.dt_safety.is_finite() {
            return Err(Error::invalid(
                "dt_safety",
                format!("must be positive, got {}", self.dt_safety),
            ));
        }
        if !(self.t_end > 0.0) {
            return Err(Error::invalid(
                "t_end",
                format!("must be positive, got {}", self.t_end),
            ));
        }
        if !(self.origin_guard >= 0.0) {
            return Err(Error::invalid(
                "origin_guard",
                format!("must be non-negative, got {}", self.origin_guard),
            ));
        }
        if !(self.energy_slack >= 0.0) {
            return Err(Error::invalid(
                "energy_slack",
                format!("must be non-negative, got {}", self.energy_slack),
            ));
        }
        if self.record_every == 0 {
            return Err(Error::invalid("record_every", "must be at least 1"));
        }
        if !(self.curvature_cap_factor > 1.0) {
            return Err(Error::invalid(
                "curvature_cap_factor",
                format!("must exceed 1, got {}", self.curvature_cap_factor),
            ));
        }
        if let TangentialSmoothing::Every { k, strength } = self.tangential_smoothing {
            if k == 0 || !(0.0..=1.0).contains(&strength) {
                return Err(Error::invalid(
                    "tangential_smoothing",
                    format!("need k ≥ 1 and strength in [0, 1], got k={k}, strength={strength}"),
                ));
            }
        }
        Ok(())
    }
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            mode: FlowMode::InverseWillmore,
            t_end: 1.0,
            dt_safety: 0.1,
            max_steps: 1_000_000,
            origin_guard: DEFAULT_ORIGIN_GUARD,
            normal_projection: true,
            tangential_smoothing: TangentialSmoothing::Off,
            energy_slack: 1e-8,
            record_every: 1,
            curvature_cap_factor: 1e8,
            max_halvings: 20,
            diagnostics: DiagnosticsConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub step: usize,
    pub t: f64,
    /// Size of the step that produced this state (0 at the start).
    pub dt: f64,
    pub willmore: f64,
    pub min_f_norm: f64,
    pub max_f_norm: f64,
    pub max_a2: f64,
    pub r_tau: Option<f64>,
    /// `sup_x ∫_{B_ρ(x)} |A|²` at [`DiagnosticsConfig::monitor_rho`].
    pub sup_local_a2: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct FlowState {
    pub mesh: TriMesh,
    pub t: f64,
    pub step: usize,
    pub history: Vec<HistoryEntry>,
}

impl FlowState {
    pub fn new(mesh: TriMesh) -> Self {
        Self {
            mesh,
            t: 0.0,
            step: 0,
            history: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreakdownReason {
    None,
    ReachedTEnd,
    OriginProximity,
    CurvatureBlowup,
    MeshDegeneracy,
    DtUnderflow,
    MaxSteps,
}

impl BreakdownReason {
    pub fn as_str(self) -> &'static str {
        match self {
            BreakdownReason::None => "none",
            BreakdownReason::ReachedTEnd => "reached_t_end",
            BreakdownReason::OriginProximity => "origin_proximity",
            BreakdownReason::CurvatureBlowup => "curvature_blowup",
            BreakdownReason::MeshDegeneracy => "mesh_degeneracy",
            BreakdownReason::DtUnderflow => "dt_underflow",
            BreakdownReason::MaxSteps => "max_steps",
        }
    }
}

impl std::fmt::Display for BreakdownReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Velocity from a prepared cache; the origin guard is not checked here.
pub fn velocity_from_cache(
    cache: &GeometryCache,
    mode: FlowMode,
    normal_projection: bool,
) -> Vec<Vec3> {
    let g = cache.willmore_operator(normal_projection);
    g.iter()
        .zip(&cache.f_norm)
        .map(|(g, n)| -0.5 * mode.speed_factor(*n) * g)
        .collect()
}

/// `−½(ΔH + Q(A⁰)H)`, times `‖f‖⁸` in inverse mode.
pub fn velocity(
    mesh: &TriMesh,
    mode: FlowMode,
    normal_projection: bool,
    origin_guard: f64,
) -> Result<Vec<Vec3>> {
    if mode == FlowMode::InverseWillmore {
        mesh.check_origin_guard(origin_guard)?;
    }
    Ok(velocity_from_cache(
        &GeometryCache::build(mesh)?,
        mode,
        normal_projection,
    ))
}

/// `C·h_min⁴ / s_max`.
pub fn stable_dt(mesh: &TriMesh, mode: FlowMode, dt_safety: f64) -> Result<f64> {
    if !(dt_safety > 0.0) || !dt_safety.is_finite() {
        return Err(Error::invalid(
            "dt_safety",
            format!("must be positive, got {dt_safety}"),
        ));
    }
    let (h_min, _, _) = mesh.edge_length_stats();
    let s_max = match mode {
        FlowMode::Willmore => 1.0,
        FlowMode::InverseWillmore => mesh.vertex_norm_range().1.powi(8).max(1.0),
    };
    Ok(dt_safety * h_min.powi(4) / s_max)
}

/// Result of one accepted step.
#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub state: FlowState,
    pub dt: f64,
    pub rejections: u32,
    pub willmore_before: f64,
    pub willmore_after: f64,
    cache: GeometryCache,
}

impl StepOutcome {
    pub fn cache(&self) -> &GeometryCache {
        &self.cache
    }
}

/// One energy-monitored forward Euler step.
///
/// Errors: [`Error::OriginProximity`] when the current state or the proposal
/// violates the guard in inverse mode, [`Error::DegenerateFace`] when the
/// current state is degenerate, [`Error::DtUnderflow`] after
/// `max_halvings` rejections.
pub fn step(state: &FlowState, cfg: &FlowConfig) -> Result<StepOutcome> {
    cfg.validate()?;
    let cache = GeometryCache::build(&state.mesh)?;
    advance(state, &cache, cfg)
}

fn advance(state: &FlowState, cache: &GeometryCache, cfg: &FlowConfig) -> Result<StepOutcome> {
    let inverse = cfg.mode == FlowMode::InverseWillmore;
    if inverse {
        state.mesh.check_origin_guard(cfg.origin_guard)?;
    }
    let v = velocity_from_cache(cache, cfg.mode, cfg.normal_projection);
    let mut dt = stable_dt(&state.mesh, cfg.mode, cfg.dt_safety)?;
    let remaining = cfg.t_end - state.t;
    if remaining > 0.0 && remaining < dt {
        dt = remaining;
    }
    let w0 = cache.willmore_energy();
    let limit = w0 + cfg.energy_slack * w0;

    let mut rejections = 0;
    loop {
        let moved: Vec<Vec3> = state
            .mesh
            .vertices()
            .iter()
            .zip(&v)
            .map(|(p, vel)| p + dt * vel)
            .collect();
        let proposal = state.mesh.with_vertices(moved)?;
        if inverse {
            proposal.check_origin_guard(cfg.origin_guard)?;
        }
        let last_err = match GeometryCache::build(&proposal) {
            Ok(next) => {
                let w1 = next.willmore_energy();
                if w1 <= limit {
                    let (mesh, next) = match cfg.tangential_smoothing {
                        TangentialSmoothing::Every { k, strength }
                            if (state.step + 1).is_multiple_of(k) =>
                        {
                            let smoothed = tangential_smooth(&proposal, &next, strength)?;
                            let c = GeometryCache::build(&smoothed)?;
                            (smoothed, c)
                        }
                        _ => (proposal, next),
                    };
                    let willmore_after = next.willmore_energy();
                    return Ok(StepOutcome {
                        state: FlowState {
                            mesh,
                            t: if dt == remaining {
                                cfg.t_end
                            } else {
                                state.t + dt
                            },
                            step: state.step + 1,
                            history: state.history.clone(),
                        },
                        dt,
                        rejections,
                        willmore_before: w0,
                        willmore_after,
                        cache: next,
                    });
                }
                None
            }
            Err(e @ Error::DegenerateFace { .. }) => Some(e),
            Err(e) => return Err(e),
        };
        if rejections >= cfg.max_halvings {
            return Err(last_err.unwrap_or(Error::DtUnderflow { dt }));
        }
        rejections += 1;
        dt *= 0.5;
    }
}

fn tangential_smooth(mesh: &TriMesh, cache: &GeometryCache, strength: f64) -> Result<TriMesh> {
    let topo = mesh.topology();
    let p = mesh.vertices();
    let moved = par::map_range(mesh.vertex_count(), |v| {
        let nb = topo.vertex_edges(v);
        let centroid = nb.iter().fold(Vec3::zeros(), |acc, &(u, _)| acc + p[u]) / nb.len() as f64;
        let d = centroid - p[v];
        let n = cache.normals()[v];
        p[v] + strength * (d - d.dot(&n) * n)
    });
    mesh.with_vertices(moved)
}

/// Classifies a state. `reference_max_a2` is the initial `max|A|²`.
pub fn detect_breakdown(
    state: &FlowState,
    cfg: &FlowConfig,
    reference_max_a2: f64,
) -> BreakdownReason {
    if cfg.mode == FlowMode::InverseWillmore
        && !(state.mesh.vertex_norm_range().0 > cfg.origin_guard)
    {
        return BreakdownReason::OriginProximity;
    }
    if !state.mesh.degenerate_faces().is_empty() {
        return BreakdownReason::MeshDegeneracy;
    }
    match GeometryCache::build(&state.mesh) {
        Ok(c) if c.max_a2() > cfg.curvature_cap_factor * reference_max_a2 => {
            BreakdownReason::CurvatureBlowup
        }
        Ok(_) => BreakdownReason::None,
        Err(_) => BreakdownReason::MeshDegeneracy,
    }
}

fn record(
    state: &FlowState,
    cache: &GeometryCache,
    dt: f64,
    cfg: &FlowConfig,
) -> Result<HistoryEntry> {
    let (min_f, max_f) = state.mesh.vertex_norm_range();
    let d = &cfg.diagnostics;
    let r_tau = if d.r_tau_every > 0 && state.step.is_multiple_of(d.r_tau_every) {
        Some(concentration_radius(cache, d.delta, d.policy, d.tol)?.r_tau)
    } else {
        None
    };
    let sup_local_a2 = match d.monitor_rho {
        Some(rho) => Some(sup_local_curvature(cache, rho, d.policy)?.value),
        None => None,
    };
    Ok(HistoryEntry {
        step: state.step,
        t: state.t,
        dt,
        willmore: cache.willmore_energy(),
        min_f_norm: min_f,
        max_f_norm: max_f,
        max_a2: cache.max_a2(),
        r_tau,
        sup_local_a2,
    })
}

#[derive(Debug, Clone)]
pub struct FlowRun {
    pub state: FlowState,
    pub reason: BreakdownReason,
    /// Energy before and after every accepted step.
    pub energies: Vec<(f64, f64)>,
    pub rejected_steps: usize,
    /// Concentration profile of the last state, recorded on breakdown.
    pub final_profile: Option<ConcentrationProfile>,
}

fn breakdown_for(err: &Error) -> Option<BreakdownReason> {
    match err {
        Error::OriginProximity { .. } => Some(BreakdownReason::OriginProximity),
        Error::DegenerateFace { .. } => Some(BreakdownReason::MeshDegeneracy),
        Error::DtUnderflow { .. } => Some(BreakdownReason::DtUnderflow),
        _ => None,
    }
}

/// Steps until `t_end`, `max_steps` or a breakdown.
///
/// History is recorded at step 0, at every multiple of `record_every`, and at
/// the final state.
pub fn run(initial: &TriMesh, cfg: &FlowConfig) -> Result<FlowRun> {
    cfg.validate()?;
    let mut state = FlowState::new(initial.clone());
    let mut cache = GeometryCache::build(initial)?;
    let reference_max_a2 = cache.max_a2();
    let mut energies = Vec::new();
    let mut rejected_steps = 0;

    let mut reason = detect_breakdown(&state, cfg, reference_max_a2);
    state.history.push(record(&state, &cache, 0.0, cfg)?);
    let mut last_dt = 0.0;

    while reason == BreakdownReason::None {
        if state.t >= cfg.t_end {
            reason = BreakdownReason::ReachedTEnd;
            break;
        }
        if state.step >= cfg.max_steps {
            reason = BreakdownReason::MaxSteps;
            break;
        }
        match advance(&state, &cache, cfg) {
            Ok(out) => {
                rejected_steps += out.rejections as usize;
                energies.push((out.willmore_before, out.willmore_after));
                last_dt = out.dt;
                let mut next = out.state;
                next.history = std::mem::take(&mut state.history);
                state = next;
                cache = out.cache;
                reason = detect_breakdown(&state, cfg, reference_max_a2);
                if state.step.is_multiple_of(cfg.record_every) {
                    state.history.push(record(&state, &cache, last_dt, cfg)?);
                }
            }
            Err(e) => match breakdown_for(&e) {
                Some(r) => reason = r,
                None => return Err(e),
            },
        }
    }
    if state.history.last().map(|h| h.step) != Some(state.step) {
        state.history.push(record(&state, &cache, last_dt, cfg)?);
    }

    let final_profile = match reason {
        BreakdownReason::ReachedTEnd | BreakdownReason::MaxSteps | BreakdownReason::None => None,
        _ => {
            let d = &cfg.diagnostics;
            GeometryCache::build(&state.mesh)
                .and_then(|c| concentration_profile(&c, d.delta, d.policy, d.tol, 32))
                .ok()
        }
    };
    Ok(FlowRun {
        state,
        reason,
        energies,
        rejected_steps,
        final_profile,
    })
}

/// `step,t,dt,W,min_f_norm,max_f_norm,max_A2,r_tau`; `r_tau` is empty when
/// not computed.
pub fn history_csv(history: &[HistoryEntry]) -> String {
    let mut s = String::from("step,t,dt,W,min_f_norm,max_f_norm,max_A2,r_tau\n");
    for h in history {
        let _ = write!(
            s,
            "{},{:e},{:e},{:e},{:e},{:e},{:e},",
            h.step, h.t, h.dt, h.willmore, h.min_f_norm, h.max_f_norm, h.max_a2
        );
        if let Some(r) = h.r_tau {
            let _ = write!(s, "{r:e}");
        }
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{make_icosphere, make_torus};

    fn offset_sphere(subdiv: u32) -> TriMesh {
        make_icosphere(Vec3::new(3.0, 0.0, 0.0), 1.0, subdiv).unwrap()
    }

    #[test]
    fn stable_dt_formula() {
        // Regular tetrahedron-free check: build a mesh with known h_min and
        // max‖f‖ by scaling an icosahedron.
        let m = offset_sphere(2);
        let (h, _, _) = m.edge_length_stats();
        let fmax = m.vertex_norm_range().1;
        let dt = stable_dt(&m, FlowMode::InverseWillmore, 0.1).unwrap();
        assert_eq!(dt, 0.1 * h.powi(4) / fmax.powi(8));
        assert_eq!(
            stable_dt(&m, FlowMode::Willmore, 0.1).unwrap(),
            0.1 * h.powi(4)
        );
        assert!(stable_dt(&m, FlowMode::Willmore, 0.0).is_err());
        // 0.1·0.1⁴/4⁸
        assert!((0.1 * 0.1f64.powi(4) / 4f64.powi(8) - 1.52587890625e-10).abs() < 1e-22);
    }

    #[test]
    fn stable_dt_willmore_scales_with_fourth_power() {
        let m = offset_sphere(2);
        let a = stable_dt(&m, FlowMode::Willmore, 0.1).unwrap();
        let b = stable_dt(&m.rescale(2.0).unwrap(), FlowMode::Willmore, 0.1).unwrap();
        assert_eq!(b, 16.0 * a);
    }

    #[test]
    fn velocity_scaling() {
        for mesh in [
            offset_sphere(2),
            make_torus(Vec3::new(5.0, 0.0, 0.0), 2.0, 0.5, 24, 12).unwrap(),
        ] {
            let rho = 2.0;
            let scaled = mesh.rescale(rho).unwrap();
            for (mode, power) in [(FlowMode::Willmore, -3), (FlowMode::InverseWillmore, 5)] {
                let a = velocity(&mesh, mode, true, 1e-9).unwrap();
                let b = velocity(&scaled, mode, true, 1e-9).unwrap();
                let f = rho.powi(power);
                let scale = a.iter().map(|v| v.norm()).fold(0.0, f64::max) * f;
                for (x, y) in a.iter().zip(&b) {
                    assert!((x * f - y).norm() <= 1e-10 * scale);
                }
            }
        }
    }

    #[test]
    fn guard_violation_in_inverse_step() {
        let guard = 1e-9;
        let m = offset_sphere(1);
        let shift = -m.vertices()[0] + Vec3::new(0.5 * guard, 0.0, 0.0);
        let near = m.translate(shift);
        let cfg = FlowConfig::new(FlowMode::InverseWillmore, 1.0);
        assert!(matches!(
            step(&FlowState::new(near.clone()), &cfg),
            Err(Error::OriginProximity { .. })
        ));
        let state = FlowState::new(near);
        assert_eq!(
            detect_breakdown(&state, &cfg, 1.0),
            BreakdownReason::OriginProximity
        );
    }

    #[test]
    fn detect_breakdown_cases() {
        let cfg = FlowConfig::new(FlowMode::InverseWillmore, 1.0);
        let m = offset_sphere(2);
        let healthy = FlowState::new(m.clone());
        assert_eq!(detect_breakdown(&healthy, &cfg, 2.0), BreakdownReason::None);
        let mut v = m.vertices().to_vec();
        let [a, b, _] = m.faces()[3];
        v[b] = v[a];
        let collapsed = FlowState::new(m.with_vertices(v).unwrap());
        assert_eq!(
            detect_breakdown(&collapsed, &cfg, 2.0),
            BreakdownReason::MeshDegeneracy
        );
        assert_eq!(
            detect_breakdown(&healthy, &cfg, 1e-9),
            BreakdownReason::CurvatureBlowup
        );
    }

    #[test]
    fn max_steps_zero_stops_immediately() {
        let mut cfg = FlowConfig::new(FlowMode::Willmore, 1.0);
        cfg.max_steps = 0;
        let r = run(&offset_sphere(1), &cfg).unwrap();
        assert_eq!(r.reason, BreakdownReason::MaxSteps);
        assert_eq!(r.state.step, 0);
        assert_eq!(r.state.history.len(), 1);
    }

    #[test]
    fn config_validation() {
        let mut cfg = FlowConfig::new(FlowMode::Willmore, 1.0);
        cfg.dt_safety = 0.0;
        assert!(cfg.validate().is_err());
        let mut cfg = FlowConfig::new(FlowMode::Willmore, 0.0);
        assert!(cfg.validate().is_err());
        cfg.t_end = 1.0;
        cfg.record_every = 0;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn stationary_sphere_short_run() {
        let m = offset_sphere(3);
        let mut cfg = FlowConfig::new(FlowMode::InverseWillmore, 1.0);
        cfg.t_end = 20.0 * stable_dt(&m, FlowMode::InverseWillmore, cfg.dt_safety).unwrap();
        let r = run(&m, &cfg).unwrap();
        assert_eq!(r.reason, BreakdownReason::ReachedTEnd);
        let w0 = r.state.history[0].willmore;
        let w1 = r.state.history.last().unwrap().willmore;
        assert!((w1 - w0).abs() / w0 <= 1e-6);
        assert!(r.final_profile.is_none());
    }

    #[test]
    fn tangential_smoothing_keeps_sphere() {
        let m = offset_sphere(2);
        let mut cfg = FlowConfig::new(FlowMode::Willmore, 1.0);
        cfg.max_steps = 4;
        cfg.tangential_smoothing = TangentialSmoothing::Every {
            k: 2,
            strength: 0.5,
        };
        let r = run(&m, &cfg).unwrap();
        assert_eq!(r.reason, BreakdownReason::MaxSteps);
        for p in r.state.mesh.vertices() {
            assert!(((p - Vec3::new(3.0, 0.0, 0.0)).norm() - 1.0).abs() < 0.02);
        }
    }

    #[test]
    fn csv_layout() {
        let h = HistoryEntry {
            step: 3,
            t: 0.5,
            dt: 0.25,
            willmore: 12.5,
            min_f_norm: 2.0,
            max_f_norm: 4.0,
            max_a2: 2.0,
            r_tau: None,
            sup_local_a2: None,
        };
        let csv = history_csv(&[
            h,
            HistoryEntry {
                r_tau: Some(0.7),
                ..h
            },
        ]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "step,t,dt,W,min_f_norm,max_f_norm,max_A2,r_tau");
        assert_eq!(lines[1], "3,5e-1,2.5e-1,1.25e1,2e0,4e0,2e0,");
        assert_eq!(lines[2], "3,5e-1,2.5e-1,1.25e1,2e0,4e0,2e0,7e-1");
    }
}
