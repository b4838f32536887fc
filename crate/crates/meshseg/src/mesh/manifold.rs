//! Edge-manifoldness diagnostics.

use std::collections::HashMap;

use crate::mesh::TriangleMesh;

/// Result of [`check_manifold`]. `offending_edges` lists mesh edges shared by
/// more than two faces, as (vertex, vertex) pairs with the smaller index first.
#[derive(Debug, Clone)]
pub struct ManifoldReport {
    pub is_manifold: bool,
    pub offending_edges: Vec<(usize, usize)>,
    pub components: usize,
}

/// A mesh is manifold here when every undirected edge is shared by at most
/// two faces. Components are counted over face adjacency (faces sharing an
/// edge), so parts that touch only at a vertex count as separate components.
pub fn check_manifold(mesh: &TriangleMesh) -> ManifoldReport {
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in mesh.faces.iter().enumerate() {
        for k in 0..3 {
            let (a, b) = (f[k], f[(k + 1) % 3]);
            let key = (a.min(b), a.max(b));
            edge_faces.entry(key).or_default().push(fi);
        }
    }

    let mut offending: Vec<(usize, usize)> = edge_faces
        .iter()
        .filter(|(_, faces)| faces.len() > 2)
        .map(|(&e, _)| e)
        .collect();
    offending.sort_unstable();

    let mut uf = UnionFind::new(mesh.face_count());
    for faces in edge_faces.values() {
        for w in faces.windows(2) {
            uf.union(w[0], w[1]);
        }
    }

    ManifoldReport {
        is_manifold: offending.is_empty(),
        offending_edges: offending,
        components: uf.count(),
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}
