//! Discrete differential geometry of a closed triangle mesh.
//!
//! The Laplace–Beltrami operator is the cotangent Laplacian paired with
//! mixed-Voronoi vertex areas,
//!
//! ```text
//! (ΔΦ)(v) = Σⱼ w_vj (Φⱼ − Φ_v) / area(v),   w_vj = ½(cot α_vj + cot β_vj),
//! ```
//!
//! applied componentwise to vector fields. The mean curvature vector is
//! `H = Δf` (pointing into the concave side, `|H| = 2/r` on a sphere), the
//! Gauss curvature is the angle defect over the vertex area, and the
//! curvature norms follow from the Gauss equation:
//!
//! ```text
//! |A|² = |H|² − 2K,   |A⁰|² = ½|H|² − 2K.
//! ```
//!
//! In codimension one `Q(A⁰)H = |A⁰|² H`. The Laplacian acting on `H` in the
//! Willmore operator `ΔH + Q(A⁰)H` is the one of the normal bundle. Writing
//! `H = hν`, it is `(Δh)ν`, and it relates to the componentwise Laplacian by
//!
//! ```text
//! Δ^⊥H = (Δ_comp H)^⊥ + |A|² H.
//! ```
//!
//! The normal-projected gradient evaluates `(Δh)ν` with the scalar cotangent
//! Laplacian of `h = ⟨H, ν⟩`. The unprojected gradient uses
//! `Δ_comp H + |A|² H`, which agrees with the former up to a tangential term.

use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::mesh::{Topology, TriMesh, DEGENERACY_THRESHOLD};
use crate::{par, Error, Result, Vec3};

/// Lower clamp for cotangent weights.
pub const MIN_COTAN_WEIGHT: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
struct FaceData {
    angles: [f64; 3],
    cots: [f64; 3],
    voronoi: [f64; 3],
    /// `(b − a) × (c − a)`, twice the area times the unit normal.
    area_vector: Vec3,
    area: f64,
}

fn face_data(p: [Vec3; 3]) -> FaceData {
    let mut angles = [0.0; 3];
    let mut cots = [0.0; 3];
    for i in 0..3 {
        let u = p[(i + 1) % 3] - p[i];
        let v = p[(i + 2) % 3] - p[i];
        let cross = u.cross(&v).norm();
        let dot = u.dot(&v);
        angles[i] = cross.atan2(dot);
        cots[i] = dot / cross;
    }
    let area_vector = (p[1] - p[0]).cross(&(p[2] - p[0]));
    let area = 0.5 * area_vector.norm();

    let obtuse = angles.iter().position(|&a| a > std::f64::consts::FRAC_PI_2);
    let mut voronoi = [0.0; 3];
    for i in 0..3 {
        voronoi[i] = match obtuse {
            None => {
                let (j, k) = ((i + 1) % 3, (i + 2) % 3);
                let e_ik = (p[k] - p[i]).norm_squared();
                let e_ij = (p[j] - p[i]).norm_squared();
                (e_ik * cots[j] + e_ij * cots[k]) / 8.0
            }
            Some(o) if o == i => area / 2.0,
            Some(_) => area / 4.0,
        };
    }
    FaceData {
        angles,
        cots,
        voronoi,
        area_vector,
        area,
    }
}

/// Discrete metric data: edge weights, vertex areas, vertex normals.
#[derive(Debug, Clone)]
pub struct DiscreteOperators {
    topology: Arc<Topology>,
    /// `w_e = ½(cot α + cot β)` per edge of [`Topology::edges`], clamped below
    /// at [`MIN_COTAN_WEIGHT`].
    pub cotan_weights: Vec<f64>,
    /// Mixed-Voronoi areas.
    pub vertex_areas: Vec<f64>,
    /// Area-weighted unit normals.
    pub vertex_normals: Vec<Vec3>,
    /// Sum of incident corner angles per vertex.
    pub angle_sums: Vec<f64>,
    pub face_areas: Vec<f64>,
    /// Number of edges whose weight was raised to [`MIN_COTAN_WEIGHT`].
    pub weight_clamp_count: usize,
}

impl DiscreteOperators {
    pub fn topology(&self) -> &Arc<Topology> {
        &self.topology
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_areas.len()
    }

    /// `w_uv`, or `None` if `u` and `v` are not adjacent.
    pub fn weight_between(&self, u: usize, v: usize) -> Option<f64> {
        self.topology
            .vertex_edges(u)
            .iter()
            .find(|&&(n, _)| n == v)
            .map(|&(_, e)| self.cotan_weights[e])
    }
}

pub fn build_operators(mesh: &TriMesh) -> Result<DiscreteOperators> {
    let topo = Arc::clone(mesh.topology());
    let (_, mean_edge, _) = mesh.edge_length_stats();
    let area_floor = DEGENERACY_THRESHOLD * mean_edge * mean_edge;

    let faces: Vec<FaceData> =
        par::map_range(mesh.face_count(), |f| face_data(mesh.face_corners(f)));
    if let Some(face) = faces
        .iter()
        .position(|d| !(d.area > area_floor) || !d.cots.iter().all(|c| c.is_finite()))
    {
        return Err(Error::DegenerateFace {
            face,
            area: faces[face].area,
        });
    }

    let raw_weights: Vec<f64> = par::map_range(topo.edges.len(), |e| {
        let [(f0, c0), (f1, c1)] = topo.edge_opposite[e];
        0.5 * (faces[f0].cots[c0] + faces[f1].cots[c1])
    });
    let weight_clamp_count = raw_weights
        .iter()
        .filter(|&&w| w < MIN_COTAN_WEIGHT)
        .count();
    let cotan_weights = raw_weights
        .into_iter()
        .map(|w| w.max(MIN_COTAN_WEIGHT))
        .collect();

    let per_vertex: Vec<(f64, f64, Vec3)> = par::map_range(mesh.vertex_count(), |v| {
        let mut area = 0.0;
        let mut angle = 0.0;
        let mut normal = Vec3::zeros();
        for &(f, c) in topo.vertex_corners(v) {
            area += faces[f].voronoi[c];
            angle += faces[f].angles[c];
            normal += faces[f].area_vector;
        }
        (area, angle, normal.normalize())
    });

    Ok(DiscreteOperators {
        cotan_weights,
        vertex_areas: per_vertex.iter().map(|p| p.0).collect(),
        angle_sums: per_vertex.iter().map(|p| p.1).collect(),
        vertex_normals: per_vertex.iter().map(|p| p.2).collect(),
        face_areas: faces.iter().map(|d| d.area).collect(),
        weight_clamp_count,
        topology: topo,
    })
}

/// Componentwise cotangent Laplacian of a per-vertex vector field.
pub fn laplace_vector_field(ops: &DiscreteOperators, field: &[Vec3]) -> Result<Vec<Vec3>> {
    if field.len() != ops.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: ops.vertex_count(),
            got: field.len(),
        });
    }
    let topo = &ops.topology;
    Ok(par::map_range(field.len(), |v| {
        let mut acc = Vec3::zeros();
        for &(u, e) in topo.vertex_edges(v) {
            acc += ops.cotan_weights[e] * (field[u] - field[v]);
        }
        acc / ops.vertex_areas[v]
    }))
}

/// Scalar cotangent Laplacian.
pub fn laplace_scalar_field(ops: &DiscreteOperators, field: &[f64]) -> Result<Vec<f64>> {
    if field.len() != ops.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: ops.vertex_count(),
            got: field.len(),
        });
    }
    let topo = &ops.topology;
    Ok(par::map_range(field.len(), |v| {
        let mut acc = 0.0;
        for &(u, e) in topo.vertex_edges(v) {
            acc += ops.cotan_weights[e] * (field[u] - field[v]);
        }
        acc / ops.vertex_areas[v]
    }))
}

/// `H = Δf`.
pub fn mean_curvature_vectors(mesh: &TriMesh, ops: &DiscreteOperators) -> Result<Vec<Vec3>> {
    laplace_vector_field(ops, mesh.vertices())
}

/// `2π − Σ angles` per vertex.
pub fn angle_defects(ops: &DiscreteOperators) -> Vec<f64> {
    ops.angle_sums.iter().map(|s| TAU - s).collect()
}

/// Angle defect divided by vertex area.
pub fn gauss_curvatures(ops: &DiscreteOperators) -> Vec<f64> {
    ops.angle_sums
        .iter()
        .zip(&ops.vertex_areas)
        .map(|(s, a)| (TAU - s) / a)
        .collect()
}

/// `Σ K·area`, which telescopes to `2πχ`.
pub fn total_gauss_curvature(ops: &DiscreteOperators, gauss: &[f64]) -> f64 {
    par::ordered_sum(gauss.iter().zip(&ops.vertex_areas).map(|(k, a)| k * a))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureNorms {
    /// `|A|² = |A⁰|² + ½|H|²` with the clamped `|A⁰|²`.
    pub a2: Vec<f64>,
    /// `max(0, ½|H|² − 2K)`.
    pub a02: Vec<f64>,
    /// `½|H|² − 2K` before clamping.
    pub a02_raw: Vec<f64>,
    pub clamp_count: usize,
}

pub fn curvature_norms(mean_curvature: &[Vec3], gauss: &[f64]) -> CurvatureNorms {
    let a02_raw: Vec<f64> = mean_curvature
        .iter()
        .zip(gauss)
        .map(|(h, k)| 0.5 * h.norm_squared() - 2.0 * k)
        .collect();
    let clamp_count = a02_raw.iter().filter(|&&x| x < 0.0).count();
    let a02: Vec<f64> = a02_raw.iter().map(|&x| x.max(0.0)).collect();
    let a2 = a02
        .iter()
        .zip(mean_curvature)
        .map(|(a0, h)| a0 + 0.5 * h.norm_squared())
        .collect();
    CurvatureNorms {
        a2,
        a02,
        a02_raw,
        clamp_count,
    }
}

/// `Q(A⁰)H = |A⁰|² H` (codimension one).
pub fn q_a0_h(a02: &[f64], mean_curvature: &[Vec3]) -> Vec<Vec3> {
    a02.iter()
        .zip(mean_curvature)
        .map(|(a, h)| *a * h)
        .collect()
}

/// `¼ Σ |H|² area`.
pub fn willmore_energy_from(ops: &DiscreteOperators, mean_curvature: &[Vec3]) -> f64 {
    0.25 * par::ordered_sum(
        mean_curvature
            .iter()
            .zip(&ops.vertex_areas)
            .map(|(h, a)| h.norm_squared() * a),
    )
}

pub fn willmore_energy(mesh: &TriMesh) -> Result<f64> {
    let ops = build_operators(mesh)?;
    let h = mean_curvature_vectors(mesh, &ops)?;
    Ok(willmore_energy_from(&ops, &h))
}

/// `G = ½(ΔH + Q(A⁰)H)`; see [`GeometryCache::willmore_operator`] for the
/// meaning of `normal_projection`.
pub fn willmore_gradient(mesh: &TriMesh, normal_projection: bool) -> Result<Vec<Vec3>> {
    GeometryCache::build(mesh)?.willmore_gradient(normal_projection)
}

/// All per-vertex geometric quantities of one mesh state.
#[derive(Debug, Clone)]
pub struct GeometryCache {
    pub ops: DiscreteOperators,
    pub mean_curvature: Vec<Vec3>,
    pub gauss: Vec<f64>,
    pub norms: CurvatureNorms,
    pub f_norm: Vec<f64>,
    pub positions: Vec<Vec3>,
}

impl GeometryCache {
    pub fn build(mesh: &TriMesh) -> Result<Self> {
        let ops = build_operators(mesh)?;
        let mean_curvature = mean_curvature_vectors(mesh, &ops)?;
        let gauss = gauss_curvatures(&ops);
        let norms = curvature_norms(&mean_curvature, &gauss);
        Ok(Self {
            f_norm: mesh.vertices().iter().map(|v| v.norm()).collect(),
            positions: mesh.vertices().to_vec(),
            ops,
            mean_curvature,
            gauss,
            norms,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn areas(&self) -> &[f64] {
        &self.ops.vertex_areas
    }

    pub fn normals(&self) -> &[Vec3] {
        &self.ops.vertex_normals
    }

    pub fn a2(&self) -> &[f64] {
        &self.norms.a2
    }

    pub fn willmore_energy(&self) -> f64 {
        willmore_energy_from(&self.ops, &self.mean_curvature)
    }

    pub fn total_gauss_curvature(&self) -> f64 {
        total_gauss_curvature(&self.ops, &self.gauss)
    }

    /// `∫|A|² dμ`.
    pub fn total_a2(&self) -> f64 {
        par::ordered_sum(self.norms.a2.iter().zip(self.areas()).map(|(a, w)| a * w))
    }

    pub fn max_a2(&self) -> f64 {
        self.norms.a2.iter().copied().fold(0.0, f64::max)
    }

    /// Signed normal curvature `h = ⟨H, ν⟩`.
    pub fn normal_curvature(&self) -> Vec<f64> {
        self.mean_curvature
            .iter()
            .zip(self.normals())
            .map(|(h, n)| h.dot(n))
            .collect()
    }

    /// `ΔH + Q(A⁰)H` (without the factor ½).
    ///
    /// With `normal_projection` the normal-bundle Laplacian is `(Δh)ν` and
    /// the result is a normal field. Without it, `ΔH` is the componentwise
    /// Laplacian plus the `|A|²H` correction and keeps its tangential part.
    pub fn willmore_operator(&self, normal_projection: bool) -> Vec<Vec3> {
        let q = q_a0_h(&self.norms.a02, &self.mean_curvature);
        if normal_projection {
            let h = self.normal_curvature();
            let lap_h =
                laplace_scalar_field(&self.ops, &h).expect("cache fields share the vertex count");
            lap_h
                .iter()
                .zip(self.normals())
                .zip(&q)
                .map(|((l, n), q)| *l * n + q.dot(n) * n)
                .collect()
        } else {
            let lap_h = laplace_vector_field(&self.ops, &self.mean_curvature)
                .expect("cache fields share the vertex count");
            lap_h
                .iter()
                .zip(&self.mean_curvature)
                .zip(&self.norms.a2)
                .zip(&q)
                .map(|(((l, h), a2), q)| l + *a2 * h + q)
                .collect()
        }
    }

    /// `G = ½(ΔH + Q(A⁰)H)`, the L²-gradient of the Willmore energy.
    pub fn willmore_gradient(&self, normal_projection: bool) -> Result<Vec<Vec3>> {
        Ok(self
            .willmore_operator(normal_projection)
            .into_iter()
            .map(|w| 0.5 * w)
            .collect())
    }

    /// CSV with header `vertex_id,x,y,z,area,Hx,Hy,Hz,K,A2,A02`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex_id,x,y,z,area,Hx,Hy,Hz,K,A2,A02\n");
        for v in 0..self.vertex_count() {
            let p = self.positions[v];
            let h = self.mean_curvature[v];
            let _ = writeln!(
                s,
                "{v},{},{},{},{},{},{},{},{},{},{}",
                p.x,
                p.y,
                p.z,
                self.ops.vertex_areas[v],
                h.x,
                h.y,
                h.z,
                self.gauss[v],
                self.norms.a2[v],
                self.norms.a02[v]
            );
        }
        s
    }
}

/// Deviation of each rescaled quantity from its exact scaling law.
///
/// Scalar and vector fields are compared by `max|a·ρᵏ − b| / max|a·ρᵏ|`.
/// The gradient is normalized by `max(max|G|, ½max|H|³)` because on
/// near-stationary surfaces `G` is a cancellation residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingDeviation {
    pub rho: f64,
    pub willmore: f64,
    pub cotan_weights: f64,
    pub areas: f64,
    pub mean_curvature: f64,
    pub gauss: f64,
    pub a2: f64,
    pub gradient: f64,
}

impl ScalingDeviation {
    pub fn max(&self) -> f64 {
        [
            self.willmore,
            self.cotan_weights,
            self.areas,
            self.mean_curvature,
            self.gauss,
            self.a2,
            self.gradient,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn scalar_dev(a: &[f64], b: &[f64], k: f64) -> f64 {
    let m = a.iter().map(|x| (x * k).abs()).fold(0.0, f64::max);
    let d = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x * k - y).abs())
        .fold(0.0, f64::max);
    if d == 0.0 {
        0.0
    } else {
        d / m
    }
}

fn vector_dev(a: &[Vec3], b: &[Vec3], k: f64, floor: f64) -> f64 {
    let m = a.iter().map(|x| x.norm() * k).fold(floor, f64::max);
    let d = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x * k - y).norm())
        .fold(0.0, f64::max);
    if d == 0.0 {
        0.0
    } else {
        d / m
    }
}

/// Compares `mesh` with `rho·mesh`: weights invariant, areas `×ρ²`, `H ×ρ⁻¹`,
/// `K, |A|² ×ρ⁻²`, `W` invariant, gradient `×ρ⁻³`.
pub fn check_scaling(mesh: &TriMesh, rho: f64) -> Result<ScalingDeviation> {
    let a = GeometryCache::build(mesh)?;
    let b = GeometryCache::build(&mesh.rescale(rho)?)?;
    let (wa, wb) = (a.willmore_energy(), b.willmore_energy());
    let curvature_unit = 0.5
        * rho.powi(-3)
        * a.mean_curvature
            .iter()
            .map(|h| h.norm())
            .fold(0.0, f64::max)
            .powi(3);
    Ok(ScalingDeviation {
        rho,
        willmore: scalar_dev(&[wa], &[wb], 1.0),
        cotan_weights: scalar_dev(&a.ops.cotan_weights, &b.ops.cotan_weights, 1.0),
        areas: scalar_dev(a.areas(), b.areas(), rho * rho),
        mean_curvature: vector_dev(&a.mean_curvature, &b.mean_curvature, 1.0 / rho, 0.0),
        gauss: scalar_dev(&a.gauss, &b.gauss, rho.powi(-2)),
        a2: scalar_dev(a.a2(), b.a2(), rho.powi(-2)),
        gradient: vector_dev(
            &a.willmore_gradient(true)?,
            &b.willmore_gradient(true)?,
            rho.powi(-3),
            curvature_unit,
        ),
    })
}
