//! Sphere inversion `I(x) = x/‖x‖²` and numerical checks of the identities
//! it satisfies on immersed surfaces:
//!
//! - `dI(x)·dI(x)ᵀ = ‖x‖⁻⁴ id`;
//! - `dμ_{I♯f} = ‖f‖⁻⁴ dμ_f`;
//! - `W(I♯f) = W(f)`;
//! - `|H_{I♯f}|² = |‖f‖² H_f + 4 f^⊥|²`;
//! - `2∫|f^⊥|²/‖f‖⁴ dμ + ∫⟨H, f⟩/‖f‖² dμ = 0`.
//!
//! The surface identities hold exactly only in the smooth setting; on meshes
//! the checks return residuals that should shrink under refinement.

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::geometry::GeometryCache;
use crate::mesh::TriMesh;
use crate::{par, Error, Result, Vec3};

pub fn invert_point(x: Vec3, origin_guard: f64) -> Result<Vec3> {
    let n2 = x.norm_squared();
    if !(n2.sqrt() > origin_guard) {
        return Err(Error::PointNearOrigin {
            norm: n2.sqrt(),
            guard: origin_guard,
        });
    }
    Ok(x / n2)
}

/// `dI(x)_ij = (δ_ij − 2xᵢxⱼ/‖x‖²)/‖x‖²`.
pub fn inversion_jacobian(x: Vec3) -> Matrix3<f64> {
    let n2 = x.norm_squared();
    (Matrix3::identity() - (2.0 / n2) * x * x.transpose()) / n2
}

/// Max-abs entry of `dI·dIᵀ − ‖x‖⁻⁴ id`, relative to `‖x‖⁻⁴`.
///
/// The relative form keeps the check meaningful across the range of scales
/// `‖x‖⁻⁴` spans; for `‖x‖ = 1` it is the absolute residual.
pub fn check_jacobian_identity(x: Vec3, origin_guard: f64) -> Result<f64> {
    let n = x.norm();
    if !(n > origin_guard) {
        return Err(Error::PointNearOrigin {
            norm: n,
            guard: origin_guard,
        });
    }
    let j = inversion_jacobian(x);
    let scale = n.powi(-4);
    let residual = j * j.transpose() - Matrix3::identity() * scale;
    Ok(residual.amax() / scale)
}

/// Vertex-wise inversion; connectivity and orientation are kept.
pub fn invert_mesh(mesh: &TriMesh, origin_guard: f64) -> Result<TriMesh> {
    mesh.check_origin_guard(origin_guard)?;
    mesh.with_vertices(
        mesh.vertices()
            .iter()
            .map(|v| v / v.norm_squared())
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorStats {
    pub max: f64,
    pub mean: f64,
}

impl ErrorStats {
    pub fn from_values(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self {
                max: 0.0,
                mean: 0.0,
            };
        }
        Self {
            max: values.iter().copied().fold(0.0, f64::max),
            mean: par::ordered_sum(values.iter().copied()) / values.len() as f64,
        }
    }
}

/// Per-face relative error of `area(I♯face)` against
/// `area(face)·‖centroid‖⁻⁴`.
pub fn area_transform_errors(mesh: &TriMesh, origin_guard: f64) -> Result<Vec<f64>> {
    let image = invert_mesh(mesh, origin_guard)?;
    Ok(par::map_range(mesh.face_count(), |f| {
        let [a, b, c] = mesh.face_corners(f);
        let centroid = (a + b + c) / 3.0;
        let predicted = mesh.face_area(f) / centroid.norm_squared().powi(2);
        (image.face_area(f) - predicted).abs() / predicted
    }))
}

pub fn check_area_transform(mesh: &TriMesh, origin_guard: f64) -> Result<ErrorStats> {
    Ok(ErrorStats::from_values(&area_transform_errors(
        mesh,
        origin_guard,
    )?))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WillmoreInvariance {
    pub willmore_before: f64,
    pub willmore_after: f64,
    pub willmore_rel_diff: f64,
}

pub fn check_willmore_invariance(mesh: &TriMesh, origin_guard: f64) -> Result<WillmoreInvariance> {
    let image = invert_mesh(mesh, origin_guard)?;
    let before = crate::geometry::willmore_energy(mesh)?;
    let after = crate::geometry::willmore_energy(&image)?;
    Ok(WillmoreInvariance {
        willmore_before: before,
        willmore_after: after,
        willmore_rel_diff: (after - before).abs() / before,
    })
}

/// `f^⊥ = ⟨f, ν⟩ν` with the discrete vertex normal.
pub fn normal_part(cache: &GeometryCache) -> Vec<Vec3> {
    cache
        .positions
        .iter()
        .zip(cache.normals())
        .map(|(f, n)| f.dot(n) * n)
        .collect()
}

/// Per-vertex relative error of `|H_{I♯f}|²` (computed on the image mesh)
/// against `|‖f‖² H_f + 4 f^⊥|²`.
pub fn mean_curvature_transform_errors(mesh: &TriMesh, origin_guard: f64) -> Result<Vec<f64>> {
    let image = invert_mesh(mesh, origin_guard)?;
    let src = GeometryCache::build(mesh)?;
    let img = GeometryCache::build(&image)?;
    let perp = normal_part(&src);
    Ok(par::map_range(mesh.vertex_count(), |v| {
        let f2 = src.positions[v].norm_squared();
        let predicted = (f2 * src.mean_curvature[v] + 4.0 * perp[v]).norm_squared();
        let observed = img.mean_curvature[v].norm_squared();
        (observed - predicted).abs() / predicted.max(f64::MIN_POSITIVE)
    }))
}

pub fn check_mean_curvature_transform(mesh: &TriMesh, origin_guard: f64) -> Result<ErrorStats> {
    Ok(ErrorStats::from_values(&mean_curvature_transform_errors(
        mesh,
        origin_guard,
    )?))
}

/// The two integrals of the balance identity:
/// `(2∫|f^⊥|²/‖f‖⁴ dμ, ∫⟨H, f⟩/‖f‖² dμ)`.
pub fn balance_identity_terms(mesh: &TriMesh, origin_guard: f64) -> Result<(f64, f64)> {
    mesh.check_origin_guard(origin_guard)?;
    let cache = GeometryCache::build(mesh)?;
    let perp = normal_part(&cache);
    let first = 2.0
        * par::ordered_sum((0..mesh.vertex_count()).map(|v| {
            let f2 = cache.positions[v].norm_squared();
            perp[v].norm_squared() / (f2 * f2) * cache.areas()[v]
        }));
    let second = par::ordered_sum((0..mesh.vertex_count()).map(|v| {
        let f = cache.positions[v];
        cache.mean_curvature[v].dot(&f) / f.norm_squared() * cache.areas()[v]
    }));
    Ok((first, second))
}

/// `|S| / (|first| + |second|)` where `S` is the sum of the two balance terms.
pub fn check_balance_identity(mesh: &TriMesh, origin_guard: f64) -> Result<f64> {
    let (a, b) = balance_identity_terms(mesh, origin_guard)?;
    let scale = a.abs() + b.abs();
    Ok(if scale > 0.0 {
        (a + b).abs() / scale
    } else {
        0.0
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InversionCheckReport {
    pub jacobian_residual_max: f64,
    pub area_transform_rel_error: ErrorStats,
    pub willmore_before: f64,
    pub willmore_after: f64,
    pub willmore_rel_diff: f64,
    pub mean_curvature_transform_rel_error: ErrorStats,
    pub balance_identity_residual: f64,
}

/// Runs every inversion check on one mesh; the Jacobian identity is
/// evaluated at the vertices.
pub fn inversion_report(mesh: &TriMesh, origin_guard: f64) -> Result<InversionCheckReport> {
    mesh.check_origin_guard(origin_guard)?;
    let jac = par::map_slice(mesh.vertices(), |&x| {
        check_jacobian_identity(x, origin_guard)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let w = check_willmore_invariance(mesh, origin_guard)?;
    Ok(InversionCheckReport {
        jacobian_residual_max: jac.into_iter().fold(0.0, f64::max),
        area_transform_rel_error: check_area_transform(mesh, origin_guard)?,
        willmore_before: w.willmore_before,
        willmore_after: w.willmore_after,
        willmore_rel_diff: w.willmore_rel_diff,
        mean_curvature_transform_rel_error: check_mean_curvature_transform(mesh, origin_guard)?,
        balance_identity_residual: check_balance_identity(mesh, origin_guard)?,
    })
}
