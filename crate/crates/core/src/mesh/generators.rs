use std::collections::HashMap;
use std::f64::consts::TAU;

use super::TriMesh;
use crate::{Error, Result, Vec3};

const ICOSAHEDRON_FACES: [[usize; 3]; 20] = [
    [0, 11, 5],
    [0, 5, 1],
    [0, 1, 7],
    [0, 7, 10],
    [0, 10, 11],
    [1, 5, 9],
    [5, 11, 4],
    [11, 10, 2],
    [10, 7, 6],
    [7, 1, 8],
    [3, 9, 4],
    [3, 4, 2],
    [3, 2, 6],
    [3, 6, 8],
    [3, 8, 9],
    [4, 9, 5],
    [2, 4, 11],
    [6, 2, 10],
    [8, 6, 7],
    [9, 8, 1],
];

/// Regular icosahedron inscribed in the unit sphere, faces oriented outward.
pub fn icosahedron() -> TriMesh {
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ];
    let vertices = raw
        .iter()
        .map(|&(x, y, z)| Vec3::new(x, y, z).normalize())
        .collect();
    TriMesh::new(vertices, ICOSAHEDRON_FACES.to_vec())
        .expect("icosahedron connectivity is valid")
        .named("icosahedron")
}

/// One 1→4 split of every face at its edge midpoints, optionally remapping
/// each new midpoint.
fn split_faces(mesh: &TriMesh, place: impl Fn(Vec3) -> Vec3) -> TriMesh {
    let mut vertices = mesh.vertices().to_vec();
    let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
    let mut mid = |a: usize, b: usize, vertices: &mut Vec<Vec3>| -> usize {
        *midpoint.entry((a.min(b), a.max(b))).or_insert_with(|| {
            vertices.push(place(0.5 * (vertices[a] + vertices[b])));
            vertices.len() - 1
        })
    };
    let mut faces = Vec::with_capacity(4 * mesh.face_count());
    for &[a, b, c] in mesh.faces() {
        let ab = mid(a, b, &mut vertices);
        let bc = mid(b, c, &mut vertices);
        let ca = mid(c, a, &mut vertices);
        faces.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
    }
    let out = TriMesh::new(vertices, faces).expect("midpoint split preserves validity");
    match mesh.name() {
        Some(n) => out.named(n),
        None => out,
    }
}

/// Splits every face into four at its edge midpoints. No smoothing and no
/// projection; the Euler characteristic is preserved.
pub fn subdivide_midpoint(mesh: &TriMesh) -> TriMesh {
    split_faces(mesh, |p| p)
}

/// Icosahedron refined `subdiv` times, with every new vertex projected back
/// to the sphere. Has `10·4^subdiv + 2` vertices.
pub fn make_icosphere(center: Vec3, radius: f64, subdiv: u32) -> Result<TriMesh> {
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(Error::invalid(
            "radius",
            format!("must be positive, got {radius}"),
        ));
    }
    let mut mesh = icosahedron();
    for _ in 0..subdiv {
        mesh = split_faces(&mesh, |p| p.normalize());
    }
    Ok(mesh
        .map_vertices(|v| center + radius * v)
        .named(format!("icosphere{subdiv}")))
}

/// Torus of revolution about the z-axis through `center`, sampled on a
/// `nu × nv` grid (`nu` around the axis, `nv` around the tube).
pub fn make_torus(
    center: Vec3,
    major_radius: f64,
    minor_radius: f64,
    nu: usize,
    nv: usize,
) -> Result<TriMesh> {
    if !(minor_radius > 0.0) {
        return Err(Error::invalid(
            "minor_radius",
            format!("must be positive, got {minor_radius}"),
        ));
    }
    if !(major_radius > minor_radius) {
        return Err(Error::invalid(
            "major_radius",
            format!("must exceed the minor radius {minor_radius}, got {major_radius}"),
        ));
    }
    if nu < 3 || nv < 3 {
        return Err(Error::invalid(
            "nu/nv",
            format!("need at least 3 samples each, got {nu}×{nv}"),
        ));
    }
    let mut vertices = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = TAU * i as f64 / nu as f64;
        for j in 0..nv {
            let v = TAU * j as f64 / nv as f64;
            let ring = major_radius + minor_radius * v.cos();
            vertices
                .push(center + Vec3::new(ring * u.cos(), ring * u.sin(), minor_radius * v.sin()));
        }
    }
    let idx = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (p00, p10, p11, p01) = (idx(i, j), idx(i + 1, j), idx(i + 1, j + 1), idx(i, j + 1));
            faces.push([p00, p10, p11]);
            faces.push([p00, p11, p01]);
        }
    }
    Ok(TriMesh::new(vertices, faces)?.named(format!("torus{nu}x{nv}")))
}
