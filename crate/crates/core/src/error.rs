use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("face {face} has {count} vertices; only triangles are supported")]
    NonTriangleFace { face: usize, count: usize },

    #[error("face {face} references vertex {index} but the mesh has {vertex_count} vertices")]
    IndexOutOfRange {
        face: usize,
        index: usize,
        vertex_count: usize,
    },

    #[error("face {face} repeats a vertex index")]
    RepeatedVertex { face: usize },

    #[error("edge ({a}, {b}) is shared by {count} faces (non-manifold)")]
    NonManifoldEdge { a: usize, b: usize, count: usize },

    #[error("edge ({a}, {b}) is a boundary edge; the surface is not closed")]
    OpenBoundary { a: usize, b: usize },

    #[error("edge ({a}, {b}) is traversed in the same direction by both faces")]
    InconsistentOrientation { a: usize, b: usize },

    #[error("surface is not orientable")]
    NonOrientable,

    #[error("mesh has no faces")]
    Empty,

    #[error("face {face} is degenerate (area {area:e})")]
    DegenerateFace { face: usize, area: f64 },

    #[error(
        "vertex {vertex} at distance {norm:e} from the origin is inside the origin guard {guard:e}"
    )]
    OriginProximity {
        vertex: usize,
        norm: f64,
        guard: f64,
    },

    #[error("point at distance {norm:e} from the origin is inside the origin guard {guard:e}")]
    PointNearOrigin { norm: f64, guard: f64 },

    #[error("step size underflow: energy still increases at dt = {dt:e}")]
    DtUnderflow { dt: f64 },

    #[error("invalid argument `{name}`: {msg}")]
    InvalidArgument { name: &'static str, msg: String },

    #[error("field has {got} entries but the mesh has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, msg: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            msg: msg.into(),
        }
    }
}
