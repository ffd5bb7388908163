//! Discrete Willmore flow and inverse Willmore flow of closed triangle meshes.
//!
//! The crate is organised around five layers:
//!
//! - [`mesh`]: the immersed surface as a closed, oriented triangle mesh, with
//!   generators, OFF/OBJ I/O and midpoint refinement.
//! - [`geometry`]: cotangent Laplacian, mixed-Voronoi areas, the mean
//!   curvature vector, angle-defect Gauss curvature, the curvature norms
//!   `|A|²` and `|A⁰|²`, the Willmore energy and its L²-gradient.
//! - [`inversion`]: the sphere inversion `x ↦ x/‖x‖²` and numerical checks of
//!   the identities it satisfies on surfaces.
//! - [`flow`]: explicit time stepping of the Willmore flow and the inverse
//!   Willmore flow `∂ₜf = −‖f‖⁸/2 (ΔH + Q(A⁰)H)`.
//! - [`diagnostics`]: localized curvature energy, the concentration radius
//!   `r(τ)`, cut-off weighted integrals, the Michael–Simon ratio and the
//!   lifespan monitor.
//!
//! Per-vertex and per-face loops run on rayon when the `parallel` feature is
//! enabled (the default). All reductions are performed sequentially in index
//! order, so results are bit-identical for any thread count.

// `!(x > 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod flow;
pub mod geometry;
pub mod inversion;
pub mod mesh;
pub mod par;

pub use error::{Error, Result};
pub use mesh::TriMesh;

/// Points and vectors in 3-space.
pub type Vec3 = nalgebra::Vector3<f64>;

/// Default origin guard: vertices closer than this to the origin are rejected
/// wherever the inversion or the inverse flow is involved.
pub const DEFAULT_ORIGIN_GUARD: f64 = 1e-9;
