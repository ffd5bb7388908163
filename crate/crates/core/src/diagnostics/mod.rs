//! Curvature concentration and lifespan diagnostics.
//!
//! Balls are hard indicators (`|f(v) − x| < ρ`) and integrals are vertex sums
//! `Σ_v q(v)·area(v)` in vertex order, the same quadrature the geometry kernel
//! uses for the Willmore energy.

mod concentration;
mod cutoff;
mod michael_simon;
mod monitor;
mod spatial_hash;

pub use concentration::{
    concentration_profile, concentration_radius, local_curvature_energy, sup_local_curvature,
    sup_local_curvature_exhaustive, CentersPolicy, ConcentrationProfile, ConcentrationRadius,
    SupLocal,
};
pub use cutoff::{weighted_integral, CutoffFunction, WeightedField};
pub use michael_simon::{michael_simon_ratio, MichaelSimon};
pub use monitor::{lifespan_monitor, LifespanParams, LifespanReport};
pub use spatial_hash::SpatialHash;

use crate::mesh::TriMesh;

/// `max_v ‖f(v)‖`.
pub fn sup_norm(mesh: &TriMesh) -> f64 {
    mesh.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::make_icosphere;
    use crate::Vec3;

    #[test]
    fn sup_norm_of_offset_sphere() {
        let m = make_icosphere(Vec3::new(3.0, 0.0, 0.0), 1.0, 4).unwrap();
        let s = sup_norm(&m);
        assert!((4.0 - 1e-2..=4.0 + 1e-12).contains(&s), "{s}");
        assert_eq!(sup_norm(&m.rescale(2.0).unwrap()), 2.0 * s);
        let d = Vec3::new(0.5, -1.0, 2.0);
        assert!(sup_norm(&m.translate(d)) <= s + d.norm() + 1e-12);
    }
}
