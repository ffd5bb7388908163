use std::collections::{HashMap, VecDeque};

use crate::{Error, Result};

/// Connectivity of a closed oriented triangle mesh, with the incidence
/// tables the geometry kernel gathers over.
///
/// All tables are in a fixed order (edges sorted lexicographically, incidence
/// lists sorted by index) so that every per-vertex sum is evaluated in the same
/// order regardless of how it is scheduled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    pub vertex_count: usize,
    pub faces: Vec<[usize; 3]>,
    /// Undirected edges `[a, b]` with `a < b`, sorted.
    pub edges: Vec<[usize; 2]>,
    /// For each edge, the two `(face, corner)` pairs whose corner vertex is
    /// opposite to the edge.
    pub edge_opposite: Vec<[(usize, usize); 2]>,
    vertex_edge_offsets: Vec<usize>,
    vertex_edges: Vec<(usize, usize)>,
    vertex_corner_offsets: Vec<usize>,
    vertex_corners: Vec<(usize, usize)>,
}

impl Topology {
    pub(crate) fn build(
        vertex_count: usize,
        mut faces: Vec<[usize; 3]>,
        repair: bool,
    ) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::Empty);
        }
        for (fi, f) in faces.iter().enumerate() {
            for &i in f {
                if i >= vertex_count {
                    return Err(Error::IndexOutOfRange {
                        face: fi,
                        index: i,
                        vertex_count,
                    });
                }
            }
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::RepeatedVertex { face: fi });
            }
        }

        // undirected edge -> list of (face, directed from key.0 to key.1?)
        let mut incidence: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for k in 0..3 {
                let (a, b) = (f[k], f[(k + 1) % 3]);
                let key = (a.min(b), a.max(b));
                incidence.entry(key).or_default().push((fi, a < b));
            }
        }
        let mut keys: Vec<(usize, usize)> = incidence.keys().copied().collect();
        keys.sort_unstable();
        for &(a, b) in &keys {
            let uses = &incidence[&(a, b)];
            match uses.len() {
                1 => return Err(Error::OpenBoundary { a, b }),
                2 => {}
                count => return Err(Error::NonManifoldEdge { a, b, count }),
            }
        }

        let consistent = |(a, b): (usize, usize), inc: &HashMap<_, Vec<(usize, bool)>>| {
            let u = &inc[&(a, b)];
            u[0].1 != u[1].1
        };
        if repair {
            let flips = orientation_flips(faces.len(), &keys, &incidence)?;
            for (f, flip) in faces.iter_mut().zip(&flips) {
                if *flip {
                    f.swap(1, 2);
                }
            }
        } else if let Some(&(a, b)) = keys.iter().find(|&&k| !consistent(k, &incidence)) {
            return Err(Error::InconsistentOrientation { a, b });
        }

        let edges: Vec<[usize; 2]> = keys.iter().map(|&(a, b)| [a, b]).collect();
        let edge_index: HashMap<(usize, usize), usize> =
            keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        let mut edge_opposite = vec![[(usize::MAX, 0); 2]; edges.len()];
        let mut fill = vec![0u8; edges.len()];
        for (fi, f) in faces.iter().enumerate() {
            for corner in 0..3 {
                let a = f[(corner + 1) % 3];
                let b = f[(corner + 2) % 3];
                let e = edge_index[&(a.min(b), a.max(b))];
                edge_opposite[e][fill[e] as usize] = (fi, corner);
                fill[e] += 1;
            }
        }

        let mut per_vertex_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
        for (e, &[a, b]) in edges.iter().enumerate() {
            per_vertex_edges[a].push((b, e));
            per_vertex_edges[b].push((a, e));
        }
        let mut per_vertex_corners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); vertex_count];
        for (fi, f) in faces.iter().enumerate() {
            for (corner, &v) in f.iter().enumerate() {
                per_vertex_corners[v].push((fi, corner));
            }
        }
        let (vertex_edge_offsets, vertex_edges) = flatten_sorted(per_vertex_edges);
        let (vertex_corner_offsets, vertex_corners) = flatten_sorted(per_vertex_corners);

        Ok(Self {
            vertex_count,
            faces,
            edges,
            edge_opposite,
            vertex_edge_offsets,
            vertex_edges,
            vertex_corner_offsets,
            vertex_corners,
        })
    }

    /// `V − E + F`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// `(neighbor, edge)` pairs around `v`, sorted by neighbor.
    pub fn vertex_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.vertex_edges[self.vertex_edge_offsets[v]..self.vertex_edge_offsets[v + 1]]
    }

    /// `(face, corner)` pairs at `v`, sorted by face.
    pub fn vertex_corners(&self, v: usize) -> &[(usize, usize)] {
        &self.vertex_corners[self.vertex_corner_offsets[v]..self.vertex_corner_offsets[v + 1]]
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.vertex_corners(v).is_empty()
    }
}

fn flatten_sorted(lists: Vec<Vec<(usize, usize)>>) -> (Vec<usize>, Vec<(usize, usize)>) {
    let mut offsets = Vec::with_capacity(lists.len() + 1);
    let mut flat = Vec::new();
    offsets.push(0);
    for mut l in lists {
        l.sort_unstable();
        flat.extend(l);
        offsets.push(flat.len());
    }
    (offsets, flat)
}

/// Breadth-first propagation of a per-face flip flag so that every shared
/// edge ends up traversed in opposite directions.
fn orientation_flips(
    face_count: usize,
    keys: &[(usize, usize)],
    incidence: &HashMap<(usize, usize), Vec<(usize, bool)>>,
) -> Result<Vec<bool>> {
    // (neighbor, same_direction)
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); face_count];
    for k in keys {
        let u = &incidence[k];
        let same = u[0].1 == u[1].1;
        adjacency[u[0].0].push((u[1].0, same));
        adjacency[u[1].0].push((u[0].0, same));
    }
    let mut flip: Vec<Option<bool>> = vec![None; face_count];
    let mut queue = VecDeque::new();
    for seed in 0..face_count {
        if flip[seed].is_some() {
            continue;
        }
        flip[seed] = Some(false);
        queue.push_back(seed);
        while let Some(f) = queue.pop_front() {
            let ff = flip[f].unwrap();
            for &(g, same) in &adjacency[f] {
                let want = ff ^ same;
                match flip[g] {
                    None => {
                        flip[g] = Some(want);
                        queue.push_back(g);
                    }
                    Some(have) if have != want => return Err(Error::NonOrientable),
                    Some(_) => {}
                }
            }
        }
    }
    Ok(flip.into_iter().map(|f| f.unwrap_or(false)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TET: [[usize; 3]; 4] = [[0, 1, 2], [0, 2, 3], [0, 3, 1], [1, 3, 2]];

    #[test]
    fn opposite_corners_are_opposite() {
        let t = Topology::build(4, TET.to_vec(), false).unwrap();
        for (e, &[a, b]) in t.edges.iter().enumerate() {
            for &(f, c) in &t.edge_opposite[e] {
                let v = t.faces[f][c];
                assert!(v != a && v != b);
                assert!(t.faces[f].contains(&a) && t.faces[f].contains(&b));
            }
        }
        assert_eq!(t.vertex_edges(0).len(), 3);
        assert_eq!(t.vertex_corners(2).len(), 3);
    }

    #[test]
    fn repair_flips_inconsistent_face() {
        let mut faces = TET.to_vec();
        faces[2].swap(1, 2);
        assert!(matches!(
            Topology::build(4, faces.clone(), false),
            Err(Error::InconsistentOrientation { .. })
        ));
        let t = Topology::build(4, faces, true).unwrap();
        assert!(Topology::build(4, t.faces.clone(), false).is_ok());
    }

    #[test]
    fn rejects_bad_connectivity() {
        assert!(matches!(
            Topology::build(4, TET[..3].to_vec(), false),
            Err(Error::OpenBoundary { .. })
        ));
        assert!(matches!(
            Topology::build(3, TET.to_vec(), false),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            Topology::build(4, vec![[0, 0, 1]], false),
            Err(Error::RepeatedVertex { face: 0 })
        ));
        assert!(matches!(
            Topology::build(4, vec![], false),
            Err(Error::Empty)
        ));
    }

    #[test]
    fn three_faces_on_an_edge_is_non_manifold() {
        // Two tetrahedra glued along edge (0,1) plus a fin.
        let mut faces = TET.to_vec();
        faces.extend([[0, 1, 4], [1, 0, 4]]);
        assert!(matches!(
            Topology::build(5, faces, true),
            Err(Error::NonManifoldEdge {
                a: 0,
                b: 1,
                count: 4
            })
        ));
    }
}
