//! Closed, oriented triangle meshes standing for an immersion `f: Σ → R³`.

mod generators;
mod io;
mod topology;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use generators::{icosahedron, make_icosphere, make_torus, subdivide_midpoint};
pub use io::{load_mesh, parse_obj, parse_off, save_mesh, write_obj, write_off, MeshFormat};
pub use topology::Topology;

use crate::{Error, Result, Vec3};

/// A face whose area is below this multiple of the squared mean edge length
/// is considered degenerate.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Vertex positions over a shared, validated connectivity.
///
/// Construction checks the combinatorial invariants (indices in range, no
/// repeated corner, every edge shared by exactly two faces with opposite
/// orientation). Geometric degeneracy is reported by [`TriMesh::validate`]
/// and rejected by the geometry kernel, so that a flow can still hold and
/// diagnose a collapsed state.
#[derive(Debug, Clone)]
pub struct TriMesh {
    vertices: Vec<Vec3>,
    topology: Arc<Topology>,
    name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshQualityReport {
    pub is_closed: bool,
    pub is_oriented: bool,
    pub euler_characteristic: i64,
    pub min_edge_length: f64,
    pub max_edge_length: f64,
    pub min_face_area: f64,
    pub min_vertex_norm: f64,
    pub degenerate_face_count: usize,
}

impl TriMesh {
    /// Builds a mesh whose faces must already be consistently oriented.
    pub fn new(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        let topology = Topology::build(vertices.len(), faces, false)?;
        Ok(Self {
            vertices,
            topology: Arc::new(topology),
            name: None,
        })
    }

    /// Builds a mesh, flipping faces as needed to reach a consistent
    /// orientation. Fails if the surface is not orientable.
    pub fn with_repaired_orientation(vertices: Vec<Vec3>, faces: Vec<[usize; 3]>) -> Result<Self> {
        let topology = Topology::build(vertices.len(), faces, true)?;
        Ok(Self {
            vertices,
            topology: Arc::new(topology),
            name: None,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.topology.faces
    }

    pub fn topology(&self) -> &Arc<Topology> {
        &self.topology
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.topology.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.topology.euler_characteristic()
    }

    /// Same connectivity, new positions.
    pub fn with_vertices(&self, vertices: Vec<Vec3>) -> Result<Self> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::LengthMismatch {
                expected: self.vertices.len(),
                got: vertices.len(),
            });
        }
        Ok(Self {
            vertices,
            topology: Arc::clone(&self.topology),
            name: self.name.clone(),
        })
    }

    pub fn map_vertices(&self, f: impl Fn(&Vec3) -> Vec3) -> Self {
        Self {
            vertices: self.vertices.iter().map(f).collect(),
            topology: Arc::clone(&self.topology),
            name: self.name.clone(),
        }
    }

    /// `x ↦ ρx`.
    pub fn rescale(&self, rho: f64) -> Result<Self> {
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::invalid(
                "rho",
                format!("scale factor must be positive, got {rho}"),
            ));
        }
        Ok(self.map_vertices(|v| v * rho))
    }

    /// `x ↦ x + d`.
    pub fn translate(&self, d: Vec3) -> Self {
        self.map_vertices(|v| v + d)
    }

    pub fn face_corners(&self, face: usize) -> [Vec3; 3] {
        let [a, b, c] = self.topology.faces[face];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn face_area(&self, face: usize) -> f64 {
        let [a, b, c] = self.face_corners(face);
        0.5 * (b - a).cross(&(c - a)).norm()
    }

    pub fn total_area(&self) -> f64 {
        (0..self.face_count()).map(|f| self.face_area(f)).sum()
    }

    pub fn edge_length(&self, edge: usize) -> f64 {
        let [a, b] = self.topology.edges[edge];
        (self.vertices[a] - self.vertices[b]).norm()
    }

    /// (min, mean, max) edge length.
    pub fn edge_length_stats(&self) -> (f64, f64, f64) {
        let n = self.topology.edges.len();
        let mut min = f64::INFINITY;
        let mut max = 0.0_f64;
        let mut sum = 0.0;
        for e in 0..n {
            let l = self.edge_length(e);
            min = min.min(l);
            max = max.max(l);
            sum += l;
        }
        (min, sum / n as f64, max)
    }

    pub fn vertex_norm_range(&self) -> (f64, f64) {
        self.vertices
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| {
                let n = v.norm();
                (lo.min(n), hi.max(n))
            })
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Vec3, Vec3) {
        let mut lo = Vec3::repeat(f64::INFINITY);
        let mut hi = Vec3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    /// Length of the bounding-box diagonal, an upper bound for the diameter.
    pub fn diameter_bound(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    /// Signed enclosed volume; positive when the faces are oriented outward.
    pub fn signed_volume(&self) -> f64 {
        (0..self.face_count())
            .map(|f| {
                let [a, b, c] = self.face_corners(f);
                a.dot(&b.cross(&c)) / 6.0
            })
            .sum()
    }

    /// Indices of faces below the degeneracy threshold.
    pub fn degenerate_faces(&self) -> Vec<usize> {
        let (_, mean, _) = self.edge_length_stats();
        let limit = DEGENERACY_THRESHOLD * mean * mean;
        (0..self.face_count())
            .filter(|&f| !(self.face_area(f) > limit))
            .collect()
    }

    pub fn quality_report(&self) -> MeshQualityReport {
        let (min_edge, _, max_edge) = self.edge_length_stats();
        let min_face_area = (0..self.face_count())
            .map(|f| self.face_area(f))
            .fold(f64::INFINITY, f64::min);
        MeshQualityReport {
            // Both hold by construction.
            is_closed: true,
            is_oriented: true,
            euler_characteristic: self.euler_characteristic(),
            min_edge_length: min_edge,
            max_edge_length: max_edge,
            min_face_area,
            min_vertex_norm: self.vertex_norm_range().0,
            degenerate_face_count: self.degenerate_faces().len(),
        }
    }

    /// Checks the geometric invariants. With `origin_guard`, additionally
    /// requires every vertex to stay strictly outside that distance from 0.
    pub fn validate(&self, origin_guard: Option<f64>) -> Result<MeshQualityReport> {
        let report = self.quality_report();
        if let Some(&face) = self.degenerate_faces().first() {
            return Err(Error::DegenerateFace {
                face,
                area: self.face_area(face),
            });
        }
        if let Some(guard) = origin_guard {
            self.check_origin_guard(guard)?;
        }
        Ok(report)
    }

    /// Fails on the first vertex with `‖f(v)‖ ≤ guard`.
    pub fn check_origin_guard(&self, guard: f64) -> Result<()> {
        match self.vertices.iter().position(|v| !(v.norm() > guard)) {
            Some(vertex) => Err(Error::OriginProximity {
                vertex,
                norm: self.vertices[vertex].norm(),
                guard,
            }),
            None => Ok(()),
        }
    }
}
