use serde::{Deserialize, Serialize};

use super::spatial_hash::SpatialHash;
use crate::geometry::GeometryCache;
use crate::{par, Error, Result, Vec3};

/// Upper bound on grid candidates for [`CentersPolicy::VerticesPlusGrid`].
const MAX_GRID_CANDIDATES: usize = 50_000_000;

/// Which points are tried as ball centers when approximating `sup_x`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CentersPolicy {
    #[default]
    Vertices,
    VerticesPlusGrid {
        spacing: f64,
    },
}

/// `Σ_{|f(v) − x| < ρ} |A|²(v)·area(v)`.
pub fn local_curvature_energy(cache: &GeometryCache, x: &Vec3, rho: f64) -> f64 {
    let a2 = cache.a2();
    let area = cache.areas();
    par::ordered_sum(
        cache
            .positions
            .iter()
            .enumerate()
            .filter(|(_, p)| (*p - x).norm() < rho)
            .map(|(v, _)| a2[v] * area[v]),
    )
}

fn candidates(cache: &GeometryCache, rho: f64, policy: CentersPolicy) -> Result<Vec<Vec3>> {
    let mut out = cache.positions.clone();
    if let CentersPolicy::VerticesPlusGrid { spacing } = policy {
        if !(spacing > 0.0) {
            return Err(Error::invalid(
                "spacing",
                format!("grid spacing must be positive, got {spacing}"),
            ));
        }
        let (mut lo, mut hi) = (Vec3::repeat(f64::INFINITY), Vec3::repeat(f64::NEG_INFINITY));
        for p in &cache.positions {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        lo -= Vec3::repeat(rho);
        hi += Vec3::repeat(rho);
        let n: Vec<usize> = (0..3)
            .map(|k| ((hi[k] - lo[k]) / spacing).floor() as usize + 1)
            .collect();
        let total = n[0].saturating_mul(n[1]).saturating_mul(n[2]);
        if total > MAX_GRID_CANDIDATES {
            return Err(Error::invalid(
                "spacing",
                format!("grid of {total} centers is too fine"),
            ));
        }
        out.reserve(total);
        for i in 0..n[0] {
            for j in 0..n[1] {
                for k in 0..n[2] {
                    out.push(lo + spacing * Vec3::new(i as f64, j as f64, k as f64));
                }
            }
        }
    }
    Ok(out)
}

/// Maximum local energy and the first candidate attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupLocal {
    pub value: f64,
    pub candidate: usize,
    pub center: [f64; 3],
}

fn sup_over(values: Vec<f64>, centers: &[Vec3]) -> SupLocal {
    let (candidate, value) = par::argmax(&values).unwrap_or((0, 0.0));
    let c = centers.get(candidate).copied().unwrap_or_else(Vec3::zeros);
    SupLocal {
        value,
        candidate,
        center: [c.x, c.y, c.z],
    }
}

/// `max_x ∫_{B_ρ(x)} |A|² dμ` over the candidate centers, using a spatial
/// hash with cell size `ρ`.
pub fn sup_local_curvature(
    cache: &GeometryCache,
    rho: f64,
    policy: CentersPolicy,
) -> Result<SupLocal> {
    if !(rho > 0.0) {
        return Err(Error::invalid(
            "rho",
            format!("ball radius must be positive, got {rho}"),
        ));
    }
    let centers = candidates(cache, rho, policy)?;
    let hash = SpatialHash::new(&cache.positions, rho);
    let a2 = cache.a2();
    let area = cache.areas();
    let values = par::map_slice(&centers, |x| {
        par::ordered_sum(
            hash.query(&cache.positions, x, rho)
                .into_iter()
                .map(|v| a2[v] * area[v]),
        )
    });
    Ok(sup_over(values, &centers))
}

/// Same as [`sup_local_curvature`] with a full scan per candidate.
pub fn sup_local_curvature_exhaustive(
    cache: &GeometryCache,
    rho: f64,
    policy: CentersPolicy,
) -> Result<SupLocal> {
    if !(rho > 0.0) {
        return Err(Error::invalid(
            "rho",
            format!("ball radius must be positive, got {rho}"),
        ));
    }
    let centers = candidates(cache, rho, policy)?;
    let values = par::map_slice(&centers, |x| local_curvature_energy(cache, x, rho));
    Ok(sup_over(values, &centers))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationRadius {
    pub r_tau: f64,
    /// `δ` is not exceeded at any scale; `r_tau` is the diameter bound.
    pub unconstrained: bool,
    /// Sup energy at `r_tau`.
    pub sup_energy: f64,
    pub iterations: usize,
}

/// Largest `ρ` (to relative tolerance `tol`) with
/// `sup_x ∫_{B_ρ(x)} |A|² dμ ≤ δ`, by bisection on `[0, diameter]`.
///
/// On return `sup(r) ≤ δ < sup(r·(1 + tol))` unless unconstrained.
pub fn concentration_radius(
    cache: &GeometryCache,
    delta: f64,
    policy: CentersPolicy,
    tol: f64,
) -> Result<ConcentrationRadius> {
    if !(delta > 0.0) {
        return Err(Error::invalid(
            "delta",
            format!("threshold must be positive, got {delta}"),
        ));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::invalid(
            "tol",
            format!("relative tolerance must be in (0, 1), got {tol}"),
        ));
    }
    let diameter = diameter_bound(cache);
    let total = cache.total_a2();
    if total <= delta {
        return Ok(ConcentrationRadius {
            r_tau: diameter,
            unconstrained: true,
            sup_energy: total,
            iterations: 0,
        });
    }
    // Slightly past the diameter every vertex-centered ball holds everything.
    let mut hi = diameter * (1.0 + 1e-9) + f64::MIN_POSITIVE;
    let mut lo = 0.0;
    let mut lo_energy = 0.0;
    let mut iterations = 0;
    while iterations < 200 && !(lo > 0.0 && hi - lo <= tol * lo) {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let s = sup_local_curvature(cache, mid, policy)?.value;
        if s <= delta {
            lo = mid;
            lo_energy = s;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(ConcentrationRadius {
        r_tau: lo,
        unconstrained: false,
        sup_energy: lo_energy,
        iterations,
    })
}

fn diameter_bound(cache: &GeometryCache) -> f64 {
    let (mut lo, mut hi) = (Vec3::repeat(f64::INFINITY), Vec3::repeat(f64::NEG_INFINITY));
    for p in &cache.positions {
        lo = lo.inf(p);
        hi = hi.sup(p);
    }
    (hi - lo).norm()
}

/// Sup energies on a radius grid together with `r(τ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationProfile {
    pub delta: f64,
    pub rho_grid: Vec<f64>,
    pub sup_energy: Vec<f64>,
    pub r_tau: f64,
    pub unconstrained: bool,
    pub policy: CentersPolicy,
    pub tol: f64,
}

/// Profile on `grid_points` radii evenly spaced up to the diameter bound.
pub fn concentration_profile(
    cache: &GeometryCache,
    delta: f64,
    policy: CentersPolicy,
    tol: f64,
    grid_points: usize,
) -> Result<ConcentrationProfile> {
    let r = concentration_radius(cache, delta, policy, tol)?;
    let d = diameter_bound(cache);
    let n = grid_points.max(1);
    let rho_grid: Vec<f64> = (1..=n).map(|i| d * i as f64 / n as f64).collect();
    let sup_energy = rho_grid
        .iter()
        .map(|&rho| sup_local_curvature(cache, rho, policy).map(|s| s.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConcentrationProfile {
        delta,
        rho_grid,
        sup_energy,
        r_tau: r.r_tau,
        unconstrained: r.unconstrained,
        policy,
        tol,
    })
}
