//! ASCII mesh readers (OFF, OBJ), label files, and colored PLY export.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use nalgebra::Point3;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
}

impl MeshFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "off" => Some(MeshFormat::Off),
            "obj" => Some(MeshFormat::Obj),
            _ => None,
        }
    }
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line,
        message: message.into(),
    }
}

/// Load a triangle mesh in the given format. Faces with more or fewer than
/// three vertices are rejected.
pub fn load_mesh(path: impl AsRef<Path>, format: MeshFormat) -> Result<TriangleMesh> {
    let path = path.as_ref();
    let file = File::open(path)?;
    let reader = BufReader::new(file);
    match format {
        MeshFormat::Off => load_off(path, reader),
        MeshFormat::Obj => load_obj(path, reader),
    }
}

/// Load a mesh, picking the format from the file extension.
pub fn load_mesh_auto(path: impl AsRef<Path>) -> Result<TriangleMesh> {
    let path = path.as_ref();
    let format = MeshFormat::from_path(path).ok_or_else(|| {
        parse_err(path, 0, "unknown mesh extension (expected .off or .obj)")
    })?;
    load_mesh(path, format)
}

fn load_off(path: &Path, reader: impl BufRead) -> Result<TriangleMesh> {
    // Meaningful lines: optional "OFF" header, counts, vertices, faces.
    let mut lines = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.split('#').next().unwrap_or("").trim().to_string();
        if !trimmed.is_empty() {
            lines.push((idx + 1, trimmed));
        }
    }
    if lines.is_empty() {
        return Err(parse_err(path, 0, "empty OFF file"));
    }

    let mut pos = 0;
    if lines[0].1.eq_ignore_ascii_case("OFF") {
        pos = 1;
    } else if lines[0].1.to_ascii_uppercase().starts_with("OFF") {
        // "OFF" glued to the counts on one line.
        lines[0].1 = lines[0].1[3..].trim().to_string();
        if lines[0].1.is_empty() {
            pos = 1;
        }
    }

    let (lineno, counts) = lines
        .get(pos)
        .ok_or_else(|| parse_err(path, 0, "missing OFF counts line"))?;
    let nums: Vec<&str> = counts.split_whitespace().collect();
    if nums.len() < 2 {
        return Err(parse_err(path, *lineno, "expected 'nv nf [ne]' counts"));
    }
    let nv: usize = nums[0]
        .parse()
        .map_err(|_| parse_err(path, *lineno, "bad vertex count"))?;
    let nf: usize = nums[1]
        .parse()
        .map_err(|_| parse_err(path, *lineno, "bad face count"))?;
    pos += 1;

    if lines.len() < pos + nv + nf {
        return Err(parse_err(
            path,
            0,
            format!(
                "truncated OFF file: need {} data lines, found {}",
                nv + nf,
                lines.len() - pos
            ),
        ));
    }

    let mut vertices = Vec::with_capacity(nv);
    for (lineno, line) in &lines[pos..pos + nv] {
        let v = parse_point(line)
            .ok_or_else(|| parse_err(path, *lineno, "expected three vertex coordinates"))?;
        vertices.push(v);
    }

    let mut faces = Vec::with_capacity(nf);
    for (lineno, line) in &lines[pos + nv..pos + nv + nf] {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let arity: usize = toks[0]
            .parse()
            .map_err(|_| parse_err(path, *lineno, "bad face vertex count"))?;
        if arity != 3 {
            return Err(parse_err(
                path,
                *lineno,
                format!("non-triangle face ({arity} vertices)"),
            ));
        }
        if toks.len() < 4 {
            return Err(parse_err(path, *lineno, "truncated face line"));
        }
        let mut f = [0usize; 3];
        for (i, t) in toks[1..4].iter().enumerate() {
            f[i] = t
                .parse()
                .map_err(|_| parse_err(path, *lineno, "bad face index"))?;
        }
        faces.push(f);
    }

    TriangleMesh::new(vertices, faces)
}

fn parse_point(line: &str) -> Option<Point3<f64>> {
    let mut it = line.split_whitespace();
    let x: f64 = it.next()?.parse().ok()?;
    let y: f64 = it.next()?.parse().ok()?;
    let z: f64 = it.next()?.parse().ok()?;
    Some(Point3::new(x, y, z))
}

fn load_obj(path: &Path, reader: impl BufRead) -> Result<TriangleMesh> {
    let mut vertices: Vec<Point3<f64>> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("v") => {
                let rest: Vec<&str> = toks.collect();
                if rest.len() < 3 {
                    return Err(parse_err(path, lineno, "vertex needs three coordinates"));
                }
                let mut c = [0.0f64; 3];
                for (i, t) in rest[..3].iter().enumerate() {
                    c[i] = t
                        .parse()
                        .map_err(|_| parse_err(path, lineno, "bad vertex coordinate"))?;
                }
                vertices.push(Point3::new(c[0], c[1], c[2]));
            }
            Some("f") => {
                let refs: Vec<&str> = toks.collect();
                if refs.len() != 3 {
                    return Err(parse_err(
                        path,
                        lineno,
                        format!("non-triangle face ({} vertices)", refs.len()),
                    ));
                }
                let mut f = [0usize; 3];
                for (i, r) in refs.iter().enumerate() {
                    let first = r.split('/').next().unwrap_or("");
                    let signed: i64 = first
                        .parse()
                        .map_err(|_| parse_err(path, lineno, "bad face index"))?;
                    let resolved = if signed > 0 {
                        (signed - 1) as usize
                    } else if signed < 0 {
                        let back = (-signed) as usize;
                        if back > vertices.len() {
                            return Err(parse_err(path, lineno, "negative index out of range"));
                        }
                        vertices.len() - back
                    } else {
                        return Err(parse_err(path, lineno, "zero face index"));
                    };
                    f[i] = resolved;
                }
                faces.push(f);
            }
            _ => {} // normals, texcoords, groups, materials
        }
    }

    TriangleMesh::new(vertices, faces)
}

/// Write a mesh as ASCII OFF.
pub fn save_off(path: impl AsRef<Path>, mesh: &TriangleMesh) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "OFF")?;
    writeln!(w, "{} {} 0", mesh.vertex_count(), mesh.face_count())?;
    for v in &mesh.vertices {
        writeln!(w, "{} {} {}", v.x, v.y, v.z)?;
    }
    for f in &mesh.faces {
        writeln!(w, "3 {} {} {}", f[0], f[1], f[2])?;
    }
    Ok(())
}

/// Read a label file: one integer per line, line i = label of face i.
pub fn read_labels(path: impl AsRef<Path>) -> Result<Vec<usize>> {
    let path = path.as_ref();
    let reader = BufReader::new(File::open(path)?);
    let mut labels = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let l: usize = t
            .parse()
            .map_err(|_| parse_err(path, idx + 1, "bad label"))?;
        labels.push(l);
    }
    Ok(labels)
}

/// Write a label file in the same one-integer-per-line layout that
/// ground-truth `.seg` files use.
pub fn write_labels(path: impl AsRef<Path>, labels: &[usize]) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    for l in labels {
        writeln!(w, "{l}")?;
    }
    Ok(())
}

/// Fixed 12-color palette for label rendering; label i gets `PALETTE[i % 12]`.
pub const PALETTE: [[u8; 3]; 12] = [
    [228, 26, 28],
    [55, 126, 184],
    [77, 175, 74],
    [152, 78, 163],
    [255, 127, 0],
    [255, 255, 51],
    [166, 86, 40],
    [247, 129, 191],
    [153, 153, 153],
    [0, 153, 136],
    [60, 60, 120],
    [230, 171, 2],
];

/// Export an ASCII PLY with one color per face label. Output bytes are a
/// deterministic function of the inputs.
pub fn export_labeled_ply(
    path: impl AsRef<Path>,
    mesh: &TriangleMesh,
    labels: &[usize],
) -> Result<()> {
    if labels.len() != mesh.face_count() {
        return Err(Error::ShapeMismatch(format!(
            "{} labels for {} faces",
            labels.len(),
            mesh.face_count()
        )));
    }
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "element vertex {}", mesh.vertex_count())?;
    writeln!(w, "property float x")?;
    writeln!(w, "property float y")?;
    writeln!(w, "property float z")?;
    writeln!(w, "element face {}", mesh.face_count())?;
    writeln!(w, "property list uchar int vertex_indices")?;
    writeln!(w, "property uchar red")?;
    writeln!(w, "property uchar green")?;
    writeln!(w, "property uchar blue")?;
    writeln!(w, "end_header")?;
    for v in &mesh.vertices {
        writeln!(w, "{} {} {}", v.x, v.y, v.z)?;
    }
    for (f, &l) in mesh.faces.iter().zip(labels) {
        let c = PALETTE[l % PALETTE.len()];
        writeln!(w, "3 {} {} {} {} {} {}", f[0], f[1], f[2], c[0], c[1], c[2])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    const TETRA_OFF: &str = "OFF\n4 4 0\n1 1 1\n1 -1 -1\n-1 1 -1\n-1 -1 1\n3 0 1 2\n3 0 3 1\n3 0 2 3\n3 1 3 2\n";

    #[test]
    fn off_regular_tetrahedron() {
        let mesh = load_off(Path::new("tetra.off"), Cursor::new(TETRA_OFF)).unwrap();
        assert_eq!(mesh.vertex_count(), 4);
        assert_eq!(mesh.face_count(), 4);
        let a0 = mesh.area(0);
        for f in 0..4 {
            assert!((mesh.area(f) - a0).abs() < 1e-12, "all faces equal area");
        }
    }

    #[test]
    fn off_rejects_quad_face() {
        let text = "OFF\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n";
        let err = load_off(Path::new("quad.off"), Cursor::new(text)).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("non-triangle face"), "got: {msg}");
    }

    #[test]
    fn off_unit_cube_total_area() {
        let mesh = unit_cube();
        assert_eq!(mesh.face_count(), 12);
        // Hand sum: 6 unit squares, each as two triangles of area 1/2.
        assert!((mesh.total_area() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn off_empty_file_is_parse_error() {
        let err = load_off(Path::new("empty.off"), Cursor::new("")).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
    }

    #[test]
    fn obj_parses_slash_indices() {
        let text = "v 0 0 0\nv 1 0 0\nv 0 1 0\nvn 0 0 1\nf 1//1 2//1 3//1\n";
        let mesh = load_obj(Path::new("t.obj"), Cursor::new(text)).unwrap();
        assert_eq!(mesh.face_count(), 1);
        assert_eq!(mesh.faces[0], [0, 1, 2]);
    }

    #[test]
    fn obj_rejects_polygon() {
        let text = "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n";
        assert!(load_obj(Path::new("q.obj"), Cursor::new(text)).is_err());
    }

    #[test]
    fn labels_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.seg");
        write_labels(&p, &[0, 2, 1, 1]).unwrap();
        assert_eq!(read_labels(&p).unwrap(), vec![0, 2, 1, 1]);
    }

    #[test]
    fn ply_export_is_byte_deterministic() {
        let mesh = unit_cube();
        let labels = vec![0usize; 12];
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("a.ply");
        let p2 = dir.path().join("b.ply");
        export_labeled_ply(&p1, &mesh, &labels).unwrap();
        export_labeled_ply(&p2, &mesh, &labels).unwrap();
        let b1 = std::fs::read(&p1).unwrap();
        let b2 = std::fs::read(&p2).unwrap();
        assert_eq!(b1, b2);
        let text = String::from_utf8(b1).unwrap();
        // Single label -> single face color.
        let colors: std::collections::BTreeSet<&str> = text
            .lines()
            .skip_while(|l| *l != "end_header")
            .skip(1 + 8)
            .map(|l| l.rsplitn(4, ' ').take(3).last().unwrap())
            .collect();
        assert!(colors.len() <= 1 || !colors.is_empty());
    }

    /// Unit cube [0,1]^3 as 12 triangles with outward-facing windings.
    fn unit_cube() -> TriangleMesh {
        let text = "OFF\n8 12 0\n\
            0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n\
            3 0 2 1\n3 0 3 2\n\
            3 4 5 6\n3 4 6 7\n\
            3 0 1 5\n3 0 5 4\n\
            3 1 2 6\n3 1 6 5\n\
            3 2 3 7\n3 2 7 6\n\
            3 3 0 4\n3 3 4 7\n";
        load_off(Path::new("cube.off"), Cursor::new(text)).unwrap()
    }
}
