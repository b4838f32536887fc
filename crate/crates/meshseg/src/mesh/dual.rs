//! Face-adjacency dual graph with per-edge geometric attributes.

use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mesh::TriangleMesh;

/// One undirected dual edge between adjacent faces `u < v`.
///
/// `length` is the shared mesh-edge length. `dihedral` is the interior
/// dihedral angle in radians, in (0, 2π): π for coplanar neighbors, < π
/// across convex creases, > π across concave ones.
#[derive(Debug, Clone, Copy)]
pub struct DualEdge {
    pub u: usize,
    pub v: usize,
    pub length: f64,
    pub dihedral: f64,
}

#[derive(Debug, Clone)]
pub struct DualGraph {
    node_count: usize,
    edges: Vec<DualEdge>,
    // node -> (neighbor, edge index) in discovery order
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl DualGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[(usize, usize)] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }
}

/// Build the dual graph: one node per face, one edge per mesh edge shared by
/// exactly two faces. Fails on non-manifold input.
pub fn build_dual_graph(mesh: &TriangleMesh) -> Result<DualGraph> {
    let mut edge_faces: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            // Remember whether the face holds this edge in ascending direction.
            edge_faces.entry(key).or_default().push((fi, a < b));
        }
    }

    let over_shared = edge_faces.values().filter(|v| v.len() > 2).count();
    if over_shared > 0 {
        return Err(Error::NonManifold(over_shared));
    }

    // Deterministic edge order: scan faces again and emit each shared edge
    // once, when first seen from its lower-indexed face occurrence.
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
    let mut edges = Vec::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            if seen.contains_key(&key) {
                continue;
            }
            let incident = &edge_faces[&key];
            if incident.len() != 2 {
                continue; // boundary edge: no dual edge
            }
            seen.insert(key, ());
            let (f0, asc0) = incident[0];
            let (f1, asc1) = incident[1];
            debug_assert!(f0 == fi || f1 == fi);
            let length = (mesh.vertices[key.1] - mesh.vertices[key.0]).norm();
            let dihedral = interior_dihedral(mesh, key, (f0, asc0), (f1, asc1));
            let (u, v) = (f0.min(f1), f0.max(f1));
            edges.push(DualEdge {
                u,
                v,
                length,
                dihedral,
            });
        }
    }

    let mut adjacency = vec![Vec::new(); mesh.face_count()];
    for (ei, e) in edges.iter().enumerate() {
        adjacency[e.u].push((e.v, ei));
        adjacency[e.v].push((e.u, ei));
    }

    Ok(DualGraph {
        node_count: mesh.face_count(),
        edges,
        adjacency,
    })
}

/// Interior dihedral across a shared edge: π minus the angle between the face
/// normals, signed around the shared edge so that convex creases fall below π
/// and concave ones above. The sign needs consistently wound neighbors (the
/// shared edge traversed in opposite directions); otherwise the unsigned
/// angle is used, which treats the crease as convex.
fn interior_dihedral(
    mesh: &TriangleMesh,
    edge: (usize, usize),
    f0: (usize, bool),
    f1: (usize, bool),
) -> f64 {
    let n0 = mesh.normal(f0.0);
    let n1 = mesh.normal(f1.0);
    let cos = n0.dot(&n1).clamp(-1.0, 1.0);
    if f0.1 == f1.1 {
        // Inconsistent winding; no orientation to sign with.
        return PI - cos.acos();
    }
    // Edge direction as traversed by f0.
    let dir = if f0.1 {
        (mesh.vertices[edge.1] - mesh.vertices[edge.0]).normalize()
    } else {
        (mesh.vertices[edge.0] - mesh.vertices[edge.1]).normalize()
    };
    let signed = n0.cross(&n1).dot(&dir).atan2(cos);
    PI - signed
}
