use proptest::prelude::*;

use willmore_core::diagnostics::{concentration_radius, sup_local_curvature, CentersPolicy};
use willmore_core::flow::{self, FlowConfig, FlowMode, FlowState};
use willmore_core::geometry::{total_gauss_curvature, GeometryCache};
use willmore_core::inversion::invert_mesh;
use willmore_core::mesh::{make_icosphere, make_torus};
use willmore_core::{TriMesh, Vec3};

/// Offset sphere with a smooth low-order radial bump and an axis stretch.
fn perturbed_sphere(center: [f64; 3], stretch: f64, bump: f64, phase: f64) -> TriMesh {
    let c = Vec3::from(center);
    make_icosphere(c, 1.0, 2).unwrap().map_vertices(|p| {
        let d = p - c;
        let r = 1.0 + bump * (2.0 * d.x + phase).sin() * d.y;
        c + Vec3::new(stretch * d.x, d.y, d.z) * r
    })
}

fn seed() -> impl Strategy<Value = TriMesh> {
    (
        prop_oneof![Just(3.0), Just(-4.0), 2.5..6.0],
        -1.0..1.0f64,
        -1.0..1.0f64,
        0.8..1.25f64,
        0.0..0.1f64,
        0.0..6.3f64,
    )
        .prop_map(|(x, y, z, s, b, ph)| perturbed_sphere([x, y, z], s, b, ph))
}

fn max_abs_dev(a: &[f64], b: &[f64], scale: f64) -> f64 {
    let m = a.iter().map(|x| (x * scale).abs()).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x * scale - y).abs())
        .fold(0.0, f64::max)
        / m
}

fn max_vec_dev(a: &[Vec3], b: &[Vec3], scale: f64) -> f64 {
    let m = a.iter().map(|x| x.norm() * scale).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x * scale - y).norm())
        .fold(0.0, f64::max)
        / m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scale_exactness(mesh in seed(), rho in prop_oneof![Just(0.5), Just(2.0), Just(10.0)]) {
        let a = GeometryCache::build(&mesh).unwrap();
        let b = GeometryCache::build(&mesh.rescale(rho).unwrap()).unwrap();
        let tol = 1e-10;
        prop_assert!((a.willmore_energy() - b.willmore_energy()).abs() <= tol * a.willmore_energy());
        prop_assert!(max_abs_dev(&a.ops.cotan_weights, &b.ops.cotan_weights, 1.0) <= tol);
        prop_assert!(max_abs_dev(a.areas(), b.areas(), rho * rho) <= tol);
        prop_assert!(max_vec_dev(&a.mean_curvature, &b.mean_curvature, 1.0 / rho) <= tol);
        prop_assert!(max_abs_dev(&a.gauss, &b.gauss, 1.0 / (rho * rho)) <= tol);
        prop_assert!(max_abs_dev(a.a2(), b.a2(), 1.0 / (rho * rho)) <= tol);
        let ga = a.willmore_gradient(true).unwrap();
        let gb = b.willmore_gradient(true).unwrap();
        prop_assert!(max_vec_dev(&ga, &gb, rho.powi(-3)) <= tol);
    }

    #[test]
    fn power_of_two_scaling_is_bit_exact(mesh in seed(), k in -3i32..4) {
        let rho = 2f64.powi(k);
        let a = GeometryCache::build(&mesh).unwrap();
        let b = GeometryCache::build(&mesh.rescale(rho).unwrap()).unwrap();
        prop_assert_eq!(a.willmore_energy(), b.willmore_energy());
        let ga = a.willmore_gradient(true).unwrap();
        let gb = b.willmore_gradient(true).unwrap();
        for (x, y) in ga.iter().zip(&gb) {
            prop_assert_eq!(x * rho.powi(-3), *y);
        }
    }

    #[test]
    fn translation_invariance(mesh in seed(), d in prop::array::uniform3(-3.0..3.0f64)) {
        let a = GeometryCache::build(&mesh).unwrap();
        let b = GeometryCache::build(&mesh.translate(Vec3::from(d))).unwrap();
        let tol = 1e-12;
        prop_assert!((a.willmore_energy() - b.willmore_energy()).abs() <= tol * a.willmore_energy());
        prop_assert!(max_vec_dev(&a.mean_curvature, &b.mean_curvature, 1.0) <= tol);
        prop_assert!(max_abs_dev(&a.gauss, &b.gauss, 1.0) <= tol);
        prop_assert!(max_abs_dev(a.a2(), b.a2(), 1.0) <= tol);
    }

    #[test]
    fn gauss_bonnet(mesh in seed()) {
        let c = GeometryCache::build(&mesh).unwrap();
        let target = 2.0 * std::f64::consts::PI * mesh.euler_characteristic() as f64;
        prop_assert!((total_gauss_curvature(&c.ops, &c.gauss) - target).abs() <= 1e-10);
    }

    #[test]
    fn gauss_bonnet_torus(nu in 6usize..40, nv in 4usize..20, r in 0.2..0.9f64) {
        let m = make_torus(Vec3::new(4.0, 0.0, 0.0), 1.0, r, nu, nv).unwrap();
        let c = GeometryCache::build(&m).unwrap();
        prop_assert!(total_gauss_curvature(&c.ops, &c.gauss).abs() <= 1e-10);
    }

    #[test]
    fn trace_split_before_clamp(mesh in seed()) {
        let c = GeometryCache::build(&mesh).unwrap();
        for ((h, k), raw) in c.mean_curvature.iter().zip(&c.gauss).zip(&c.norms.a02_raw) {
            prop_assert!((raw - (0.5 * h.norm_squared() - 2.0 * k)).abs() <= 1e-12 * (1.0 + raw.abs()));
        }
        for ((a2, a02), h) in c.a2().iter().zip(&c.norms.a02).zip(&c.mean_curvature) {
            prop_assert!(*a02 >= 0.0);
            prop_assert!((a2 - a02 - 0.5 * h.norm_squared()).abs() <= 1e-12 * (1.0 + a2));
        }
    }

    #[test]
    fn inversion_is_an_involution(mesh in seed()) {
        let back = invert_mesh(&invert_mesh(&mesh, 1e-9).unwrap(), 1e-9).unwrap();
        for (p, q) in mesh.vertices().iter().zip(back.vertices()) {
            prop_assert!((p - q).norm() <= 1e-12 * p.norm());
        }
    }

    #[test]
    fn sup_local_monotone_in_radius(mesh in seed(), r0 in 0.05..1.0f64, dr in 0.0..1.0f64) {
        let c = GeometryCache::build(&mesh).unwrap();
        let a = sup_local_curvature(&c, r0, CentersPolicy::Vertices).unwrap().value;
        let b = sup_local_curvature(&c, r0 + dr, CentersPolicy::Vertices).unwrap().value;
        prop_assert!(a <= b);
        let g = sup_local_curvature(&c, r0, CentersPolicy::VerticesPlusGrid { spacing: 0.5 }).unwrap().value;
        prop_assert!(a <= g);
    }

    #[test]
    fn concentration_radius_monotone_in_delta(mesh in seed(), d0 in 0.5..6.0f64, dd in 0.0..6.0f64) {
        let c = GeometryCache::build(&mesh).unwrap();
        let tol = 1e-3;
        let a = concentration_radius(&c, d0, CentersPolicy::Vertices, tol).unwrap();
        let b = concentration_radius(&c, d0 + dd, CentersPolicy::Vertices, tol).unwrap();
        // Bisection brackets: r(δ₀) ≤ r_true(δ₀) ≤ r_true(δ₁) < r(δ₁)(1 + tol).
        prop_assert!(a.r_tau <= b.r_tau * (1.0 + tol));
        prop_assert!(a.sup_energy <= d0);
    }

    #[test]
    fn flow_steps_do_not_increase_energy(
        mesh in seed(),
        mode in prop_oneof![Just(FlowMode::Willmore), Just(FlowMode::InverseWillmore)],
    ) {
        let cfg = FlowConfig::new(mode, f64::INFINITY);
        let mut state = FlowState::new(mesh);
        for _ in 0..5 {
            let out = flow::step(&state, &cfg).unwrap();
            prop_assert!(out.willmore_after <= out.willmore_before * (1.0 + cfg.energy_slack));
            prop_assert!(out.dt > 0.0);
            state = out.state;
        }
    }
}
