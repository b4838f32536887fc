//! Shared fixtures for unit tests.

use nalgebra::Point3;

use crate::mesh::{load_mesh, MeshFormat, TriangleMesh};

pub(crate) fn tetrahedron() -> TriangleMesh {
    let vertices = vec![
        Point3::new(1.0, 1.0, 1.0),
        Point3::new(1.0, -1.0, -1.0),
        Point3::new(-1.0, 1.0, -1.0),
        Point3::new(-1.0, -1.0, 1.0),
    ];
    let faces = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
    TriangleMesh::new(vertices, faces).unwrap()
}

/// Unit cube [0,1]^3 as 12 triangles with outward-facing windings, parsed
/// from OFF text so the reader is exercised too.
pub(crate) fn unit_cube() -> TriangleMesh {
    let text = "OFF\n8 12 0\n\
        0 0 0\n1 0 0\n1 1 0\n0 1 0\n0 0 1\n1 0 1\n1 1 1\n0 1 1\n\
        3 0 2 1\n3 0 3 2\n\
        3 4 5 6\n3 4 6 7\n\
        3 0 1 5\n3 0 5 4\n\
        3 1 2 6\n3 1 6 5\n\
        3 2 3 7\n3 2 7 6\n\
        3 3 0 4\n3 3 4 7\n";
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("cube.off");
    std::fs::write(&p, text).unwrap();
    load_mesh(&p, MeshFormat::Off).unwrap()
}
