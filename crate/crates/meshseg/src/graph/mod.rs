//! Convolution receptive fields, graph coarsening, pooling order, and the
//! per-shape tables the network consumes.

mod coarsen;
mod generating;
mod hierarchy;
mod receptive;
mod tables;
mod weights;

pub use coarsen::{graclus_coarsen, Coarsening};
pub use generating::{build_generating_table, GeneratingTable};
pub use hierarchy::{build_hierarchy, CoarseningHierarchy, Level};
pub use receptive::{build_receptive_fields, ReceptiveFieldTable, FAKE};
pub use tables::{build_shape_tables, read_shape_tables, write_shape_tables, ShapeTables};
pub use weights::edge_weights_from_features;

use crate::mesh::DualGraph;

/// Plain undirected weighted graph used throughout coarsening. Adjacency is
/// kept sorted by neighbor index; parallel edges are merged by summing.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    pub adjacency: Vec<Vec<(usize, f64)>>,
}

impl WeightedGraph {
    pub fn new(node_count: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); node_count],
        }
    }

    pub fn from_edges(node_count: usize, edges: &[(usize, usize, f64)]) -> Self {
        let mut g = Self::new(node_count);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w);
        }
        g
    }

    pub fn from_dual(dual: &DualGraph, weights: &[f64]) -> Self {
        assert_eq!(weights.len(), dual.edges().len());
        let edges: Vec<(usize, usize, f64)> = dual
            .edges()
            .iter()
            .zip(weights)
            .map(|(e, &w)| (e.u, e.v, w))
            .collect();
        Self::from_edges(dual.node_count(), &edges)
    }

    /// Add (or merge into) an undirected edge. Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize, w: f64) {
        if u == v {
            return;
        }
        for (a, b) in [(u, v), (v, u)] {
            match self.adjacency[a].binary_search_by_key(&b, |&(n, _)| n) {
                Ok(pos) => self.adjacency[a][pos].1 += w,
                Err(pos) => self.adjacency[a].insert(pos, (b, w)),
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, u: usize) -> &[(usize, f64)] {
        &self.adjacency[u]
    }

    /// Weighted degree: sum of incident edge weights.
    pub fn weighted_degree(&self, u: usize) -> f64 {
        self.adjacency[u].iter().map(|&(_, w)| w).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}
