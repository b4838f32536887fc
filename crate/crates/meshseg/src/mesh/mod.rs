//! Triangle meshes and the face-adjacency dual graph.

mod dual;
mod io;
mod manifold;

pub use dual::{build_dual_graph, DualEdge, DualGraph};
pub use io::{
    export_labeled_ply, load_mesh, load_mesh_auto, read_labels, save_off, write_labels, MeshFormat,
    PALETTE,
};
pub use manifold::{check_manifold, ManifoldReport};

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Result};

/// Fraction of the squared bounding-box diagonal below which a face area
/// counts as degenerate at load time.
pub const DEGENERATE_AREA_FRAC: f64 = 1e-12;

/// A triangle mesh with per-face derived quantities cached at construction.
#[derive(Debug, Clone)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3<f64>>,
    pub faces: Vec<[usize; 3]>,
    centroids: Vec<Point3<f64>>,
    normals: Vec<Vector3<f64>>,
    areas: Vec<f64>,
}

impl TriangleMesh {
    /// Build a mesh from raw vertex and face lists, validating the face
    /// indexing and rejecting degenerate triangles.
    pub fn new(vertices: Vec<Point3<f64>>, faces: Vec<[usize; 3]>) -> Result<Self> {
        if faces.is_empty() {
            return Err(Error::InvalidMesh("mesh has no faces".into()));
        }
        for (i, f) in faces.iter().enumerate() {
            if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
                return Err(Error::InvalidMesh(format!(
                    "face {i} repeats a vertex: {f:?}"
                )));
            }
            for &v in f {
                if v >= vertices.len() {
                    return Err(Error::InvalidMesh(format!(
                        "face {i} references vertex {v} but the mesh has {} vertices",
                        vertices.len()
                    )));
                }
            }
        }

        let diag2 = bbox_diagonal_squared(&vertices);
        let min_area = DEGENERATE_AREA_FRAC * diag2;

        let mut centroids = Vec::with_capacity(faces.len());
        let mut normals = Vec::with_capacity(faces.len());
        let mut areas = Vec::with_capacity(faces.len());
        for (i, f) in faces.iter().enumerate() {
            let (a, b, c) = (vertices[f[0]], vertices[f[1]], vertices[f[2]]);
            let cross = (b - a).cross(&(c - a));
            let double_area = cross.norm();
            let area = 0.5 * double_area;
            if area <= min_area || area == 0.0 {
                return Err(Error::InvalidMesh(format!(
                    "face {i} is degenerate (area {area:.3e})"
                )));
            }
            centroids.push(Point3::from((a.coords + b.coords + c.coords) / 3.0));
            normals.push(cross / double_area);
            areas.push(area);
        }

        Ok(Self {
            vertices,
            faces,
            centroids,
            normals,
            areas,
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn centroid(&self, face: usize) -> Point3<f64> {
        self.centroids[face]
    }

    pub fn normal(&self, face: usize) -> Vector3<f64> {
        self.normals[face]
    }

    pub fn area(&self, face: usize) -> f64 {
        self.areas[face]
    }

    pub fn areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn total_area(&self) -> f64 {
        self.areas.iter().sum()
    }

    /// Center and radius of a sphere enclosing all vertices (center of the
    /// axis-aligned bounding box, radius to the farthest vertex).
    pub fn bounding_sphere(&self) -> (Point3<f64>, f64) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            for i in 0..3 {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        let center = Point3::from((lo.coords + hi.coords) * 0.5);
        let radius = self
            .vertices
            .iter()
            .map(|v| (v - center).norm())
            .fold(0.0_f64, f64::max);
        (center, radius)
    }

    /// Apply a rigid transform (rotation then translation) to every vertex.
    pub fn transformed(&self, rot: &nalgebra::Rotation3<f64>, t: Vector3<f64>) -> Self {
        let vertices = self.vertices.iter().map(|v| rot * v + t).collect();
        Self::new(vertices, self.faces.clone()).expect("rigid transform preserves validity")
    }
}

fn bbox_diagonal_squared(vertices: &[Point3<f64>]) -> f64 {
    if vertices.is_empty() {
        return 0.0;
    }
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for v in vertices {
        for i in 0..3 {
            lo[i] = lo[i].min(v[i]);
            hi[i] = hi[i].max(v[i]);
        }
    }
    (hi - lo).norm_squared()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::tetrahedron;

    #[test]
    fn tetrahedron_has_equal_face_areas() {
        let mesh = tetrahedron();
        assert_eq!(mesh.face_count(), 4);
        let a0 = mesh.area(0);
        for f in 0..4 {
            assert!((mesh.area(f) - a0).abs() < 1e-12);
        }
    }

    #[test]
    fn normals_are_unit_length() {
        let mesh = tetrahedron();
        for f in 0..mesh.face_count() {
            assert!((mesh.normal(f).norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_repeated_vertex_in_face() {
        let vertices = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ];
        assert!(TriangleMesh::new(vertices, vec![[0, 1, 1]]).is_err());
    }

    #[test]
    fn rejects_degenerate_face() {
        let vertices = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(2.0, 0.0, 0.0), // collinear
            Point3::new(0.0, 5.0, 0.0),
        ];
        let err = TriangleMesh::new(vertices, vec![[0, 1, 2], [0, 1, 3]]);
        assert!(err.is_err());
    }

    #[test]
    fn rejects_out_of_range_index() {
        let vertices = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        ];
        assert!(TriangleMesh::new(vertices, vec![[0, 1, 7]]).is_err());
    }
}
