//! OFF and OBJ reading and writing.
//!
//! OFF is the canonical format: coordinates are written with 17 significant
//! digits so a save/load cycle reproduces every `f64` exactly.

use std::fmt::Write as _;
use std::path::Path;

use super::TriMesh;
use crate::{Error, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    /// Guesses the format from the file extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "off" => Some(MeshFormat::Off),
            "obj" => Some(MeshFormat::Obj),
            _ => None,
        }
    }
}

pub fn load_mesh(path: &Path, format: MeshFormat) -> Result<TriMesh> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mesh = match format {
        MeshFormat::Off => parse_off(&text)?,
        MeshFormat::Obj => parse_obj(&text)?,
    };
    Ok(match path.file_stem().and_then(|s| s.to_str()) {
        Some(stem) => mesh.named(stem),
        None => mesh,
    })
}

pub fn save_mesh(mesh: &TriMesh, path: &Path, format: MeshFormat) -> Result<()> {
    let text = match format {
        MeshFormat::Off => write_off(mesh),
        MeshFormat::Obj => write_obj(mesh),
    };
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("invalid {what} `{tok}`")))
}

/// Non-empty lines with `#` comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

pub fn parse_off(text: &str) -> Result<TriMesh> {
    let mut lines = content_lines(text);
    let (line_no, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let mut toks = header.split_whitespace();
    if toks.next() != Some("OFF") {
        return Err(parse_err(line_no, "expected `OFF` header"));
    }
    // Counts may share the header line.
    let rest: Vec<&str> = toks.collect();
    let (count_line, counts) = if rest.is_empty() {
        let (n, l) = lines
            .next()
            .ok_or_else(|| parse_err(line_no, "missing vertex/face counts"))?;
        (n, l.split_whitespace().collect::<Vec<_>>())
    } else {
        (line_no, rest)
    };
    let mut c = counts.into_iter();
    let nv: usize = parse_num(c.next(), count_line, "vertex count")?;
    let nf: usize = parse_num(c.next(), count_line, "face count")?;

    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (n, l) = lines
            .next()
            .ok_or_else(|| parse_err(count_line, "unexpected end of file in vertex list"))?;
        let mut t = l.split_whitespace();
        let x = parse_num(t.next(), n, "x coordinate")?;
        let y = parse_num(t.next(), n, "y coordinate")?;
        let z = parse_num(t.next(), n, "z coordinate")?;
        vertices.push(Vec3::new(x, y, z));
    }
    let mut faces = Vec::with_capacity(nf);
    for fi in 0..nf {
        let (n, l) = lines
            .next()
            .ok_or_else(|| parse_err(count_line, "unexpected end of file in face list"))?;
        let mut t = l.split_whitespace();
        let k: usize = parse_num(t.next(), n, "face size")?;
        if k != 3 {
            return Err(Error::NonTriangleFace { face: fi, count: k });
        }
        let mut f = [0usize; 3];
        for slot in &mut f {
            *slot = parse_num(t.next(), n, "vertex index")?;
        }
        faces.push(f);
    }
    TriMesh::with_repaired_orientation(vertices, faces)
}

pub fn parse_obj(text: &str) -> Result<TriMesh> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (n, l) in content_lines(text) {
        let mut t = l.split_whitespace();
        match t.next() {
            Some("v") => {
                let x = parse_num(t.next(), n, "x coordinate")?;
                let y = parse_num(t.next(), n, "y coordinate")?;
                let z = parse_num(t.next(), n, "z coordinate")?;
                vertices.push(Vec3::new(x, y, z));
            }
            Some("f") => {
                let refs: Vec<&str> = t.collect();
                if refs.len() != 3 {
                    return Err(Error::NonTriangleFace {
                        face: faces.len(),
                        count: refs.len(),
                    });
                }
                let mut f = [0usize; 3];
                for (slot, r) in f.iter_mut().zip(refs) {
                    // `v`, `v/vt`, `v//vn`, `v/vt/vn`
                    let idx: i64 = parse_num(r.split('/').next(), n, "vertex index")?;
                    *slot = match idx {
                        i if i > 0 => (i - 1) as usize,
                        i if i < 0 && (-i) as usize <= vertices.len() => {
                            vertices.len() - (-i) as usize
                        }
                        _ => return Err(parse_err(n, format!("invalid vertex index `{r}`"))),
                    };
                }
                faces.push(f);
            }
            _ => {}
        }
    }
    TriMesh::with_repaired_orientation(vertices, faces)
}

pub fn write_off(mesh: &TriMesh) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OFF");
    let _ = writeln!(
        s,
        "{} {} {}",
        mesh.vertex_count(),
        mesh.face_count(),
        mesh.topology().edges.len()
    );
    for v in mesh.vertices() {
        let _ = writeln!(s, "{:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
    }
    for f in mesh.faces() {
        let _ = writeln!(s, "3 {} {} {}", f[0], f[1], f[2]);
    }
    s
}

pub fn write_obj(mesh: &TriMesh) -> String {
    let mut s = String::new();
    for v in mesh.vertices() {
        let _ = writeln!(s, "v {:.16e} {:.16e} {:.16e}", v.x, v.y, v.z);
    }
    for f in mesh.faces() {
        let _ = writeln!(s, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const TET_OFF: &str = "OFF\n# tetrahedron\n4 4 6\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 2 3\n3 0 3 1\n3 1 3 2\n";

    #[test]
    fn off_tetrahedron() {
        let m = parse_off(TET_OFF).unwrap();
        assert_eq!(m.vertex_count(), 4);
        assert_eq!(m.face_count(), 4);
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn off_counts_on_header_line() {
        let text = TET_OFF.replacen("OFF\n# tetrahedron\n4 4 6", "OFF 4 4 6", 1);
        assert_eq!(parse_off(&text).unwrap().face_count(), 4);
    }

    #[test]
    fn off_rejects_quads_and_garbage() {
        let quad = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        assert!(matches!(
            parse_off(quad),
            Err(Error::NonTriangleFace { count: 4, .. })
        ));
        assert!(matches!(
            parse_off("PLY\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_off("OFF\n4 4 6\n1 1 x\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn off_non_manifold_edge() {
        // Three triangles on the edge (0, 1).
        let text = "OFF\n5 3 0\n0 0 0\n1 0 0\n0 1 0\n0 -1 0\n0 0 1\n3 0 1 2\n3 1 0 3\n3 0 1 4\n";
        assert!(matches!(
            parse_off(text),
            Err(Error::NonManifoldEdge {
                a: 0,
                b: 1,
                count: 3
            })
        ));
    }

    #[test]
    fn projective_plane_is_non_orientable() {
        let faces = [
            [1, 2, 3],
            [1, 3, 4],
            [1, 4, 5],
            [1, 5, 6],
            [1, 6, 2],
            [2, 3, 5],
            [3, 4, 6],
            [4, 5, 2],
            [5, 6, 3],
            [6, 2, 4],
        ];
        let mut text = String::from("OFF\n6 10 0\n");
        for i in 0..6 {
            let a = i as f64;
            text += &format!("{} {} {}\n", a.cos(), a.sin(), a * 0.1);
        }
        for f in faces {
            text += &format!("3 {} {} {}\n", f[0] - 1, f[1] - 1, f[2] - 1);
        }
        assert!(matches!(parse_off(&text), Err(Error::NonOrientable)));
    }

    #[test]
    fn obj_slash_and_negative_indices() {
        let text = "v 1 1 1\nv 1 -1 -1\nv -1 1 -1\nv -1 -1 1\nvn 0 0 1\nf 1/1/1 2//1 3\nf 1 3 4\nf -4 -1 -3\nf 2 4 3\n";
        let m = parse_obj(text).unwrap();
        assert_eq!(m.euler_characteristic(), 2);
    }

    #[test]
    fn off_writer_keeps_full_precision() {
        let m = parse_off(TET_OFF).unwrap();
        let moved = m.map_vertices(|v| v * std::f64::consts::PI + Vec3::repeat(1e-17));
        let back = parse_off(&write_off(&moved)).unwrap();
        assert_eq!(back.vertices(), moved.vertices());
        assert_eq!(back.faces(), moved.faces());
    }
}
