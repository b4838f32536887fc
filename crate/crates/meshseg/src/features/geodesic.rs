//! Face-to-face geodesic approximation: shortest paths on the dual graph
//! weighted by centroid-to-centroid distance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use ndarray::Array2;

use crate::mesh::{DualGraph, TriangleMesh};

struct HeapEntry {
    node: usize,
    dist: f64,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.dist == other.dist
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on distance, ties by node index for determinism
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// All-pairs shortest-path matrix over the dual graph. Entry (u, v) is the
/// path length in model units; infinity across components; zero diagonal.
pub fn geodesic_matrix(graph: &DualGraph, mesh: &TriangleMesh) -> Array2<f64> {
    let n = graph.node_count();
    let weights: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| (mesh.centroid(e.u) - mesh.centroid(e.v)).norm())
        .collect();

    let mut out = Array2::from_elem((n, n), f64::INFINITY);
    for src in 0..n {
        let dist = dijkstra(graph, &weights, src);
        for (v, d) in dist.into_iter().enumerate() {
            out[[src, v]] = d;
        }
    }
    out
}

pub(crate) fn dijkstra(graph: &DualGraph, edge_weights: &[f64], src: usize) -> Vec<f64> {
    let n = graph.node_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[src] = 0.0;
    let mut heap = BinaryHeap::new();
    heap.push(HeapEntry {
        node: src,
        dist: 0.0,
    });
    while let Some(HeapEntry { node, dist: d }) = heap.pop() {
        if done[node] {
            continue;
        }
        done[node] = true;
        for &(next, ei) in graph.neighbors(node) {
            let cand = d + edge_weights[ei];
            if cand < dist[next] {
                dist[next] = cand;
                heap.push(HeapEntry {
                    node: next,
                    dist: cand,
                });
            }
        }
    }
    dist
}
