use serde::{Deserialize, Serialize};

use crate::geometry::GeometryCache;
use crate::mesh::TriMesh;
use crate::{par, Error, Result};

/// Both sides of `(∫u² dμ)^{1/2} ≤ c (∫|∇u| dμ + ∫|H||u| dμ)` and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MichaelSimon {
    pub lhs: f64,
    pub rhs: f64,
    /// `lhs / rhs`, or 0 when both vanish.
    pub ratio: f64,
}

/// `u` is piecewise linear; `|∇u|` is constant on each face.
pub fn michael_simon_ratio(
    mesh: &TriMesh,
    cache: &GeometryCache,
    u: &[f64],
) -> Result<MichaelSimon> {
    if u.len() != mesh.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: mesh.vertex_count(),
            got: u.len(),
        });
    }
    if let Some(i) = u.iter().position(|x| !x.is_finite()) {
        return Err(Error::invalid(
            "u",
            format!("value at vertex {i} is not finite"),
        ));
    }
    let area = cache.areas();
    let lhs = par::ordered_sum(u.iter().zip(area).map(|(x, a)| x * x * a)).sqrt();

    let grads = par::map_range(mesh.face_count(), |f| {
        let [i, j, k] = mesh.faces()[f];
        let [p0, p1, p2] = mesh.face_corners(f);
        let n = (p1 - p0).cross(&(p2 - p0));
        let twice_area = n.norm();
        let n = n / twice_area;
        // ∇u = Σ u_i (n × e_i) / (2A), e_i the edge opposite corner i.
        let g =
            (u[i] * n.cross(&(p2 - p1)) + u[j] * n.cross(&(p0 - p2)) + u[k] * n.cross(&(p1 - p0)))
                / twice_area;
        g.norm() * 0.5 * twice_area
    });
    let gradient_term = par::ordered_sum(grads);
    let curvature_term = par::ordered_sum(
        cache
            .mean_curvature
            .iter()
            .zip(u)
            .zip(area)
            .map(|((h, x), a)| h.norm() * x.abs() * a),
    );
    let rhs = gradient_term + curvature_term;
    Ok(MichaelSimon {
        lhs,
        rhs,
        ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::make_icosphere;
    use crate::Vec3;
    use std::f64::consts::PI;

    #[test]
    fn constant_function_on_unit_sphere() {
        let m = make_icosphere(Vec3::zeros(), 1.0, 4).unwrap();
        let c = GeometryCache::build(&m).unwrap();
        let r = michael_simon_ratio(&m, &c, &vec![1.0; m.vertex_count()]).unwrap();
        let expected = (4.0 * PI).sqrt() / (8.0 * PI);
        assert!((r.ratio - expected).abs() / expected <= 0.02, "{r:?}");
    }

    #[test]
    fn zero_function_convention() {
        let m = make_icosphere(Vec3::zeros(), 1.0, 2).unwrap();
        let c = GeometryCache::build(&m).unwrap();
        let r = michael_simon_ratio(&m, &c, &vec![0.0; m.vertex_count()]).unwrap();
        assert_eq!((r.lhs, r.rhs, r.ratio), (0.0, 0.0, 0.0));
        assert!(michael_simon_ratio(&m, &c, &[1.0]).is_err());
    }

    #[test]
    fn linear_gradient_is_exact_on_flat_faces() {
        // u = x has |∇u| = |P_T e_x| on each face.
        let m = make_icosphere(Vec3::zeros(), 1.0, 1).unwrap();
        let c = GeometryCache::build(&m).unwrap();
        let u: Vec<f64> = m.vertices().iter().map(|v| v.x).collect();
        let r = michael_simon_ratio(&m, &c, &u).unwrap();
        let expected: f64 = (0..m.face_count())
            .map(|f| {
                let [a, b, cc] = m.face_corners(f);
                let n = (b - a).cross(&(cc - a)).normalize();
                (Vec3::x() - n.x * n).norm() * m.face_area(f)
            })
            .sum();
        let curv: f64 = (0..m.vertex_count())
            .map(|v| c.mean_curvature[v].norm() * u[v].abs() * c.areas()[v])
            .sum();
        assert!((r.rhs - expected - curv).abs() < 1e-12);
    }
}
