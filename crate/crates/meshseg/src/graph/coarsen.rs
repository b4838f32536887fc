//! One level of Graclus-style greedy matching.

use crate::graph::WeightedGraph;

/// Result of one coarsening step. `parent[u]` is the coarse node absorbing
/// fine node `u`; coarse nodes are numbered in match-creation order.
#[derive(Debug, Clone)]
pub struct Coarsening {
    pub parent: Vec<usize>,
    pub coarse: WeightedGraph,
    /// children[p] = fine nodes of coarse node p (1 or 2, ascending).
    pub children: Vec<Vec<usize>>,
}

/// Greedy matching: visit unmarked nodes in ascending index order; each
/// picks the unmarked neighbor maximizing w(u,v) * (1/d(u) + 1/d(v)) with d
/// the weighted degree, ties broken by lower index. Matched pairs and
/// leftover singletons become coarse nodes; coarse edge weights are sums of
/// crossing fine weights.
pub fn graclus_coarsen(graph: &WeightedGraph) -> Coarsening {
    let n = graph.node_count();
    let degree: Vec<f64> = (0..n).map(|u| graph.weighted_degree(u)).collect();
    let mut matched = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let mut children: Vec<Vec<usize>> = Vec::new();

    for u in 0..n {
        if matched[u] {
            continue;
        }
        matched[u] = true;
        let mut best: Option<(f64, usize)> = None;
        for &(v, w) in graph.neighbors(u) {
            if matched[v] {
                continue;
            }
            let score = w * (1.0 / degree[u] + 1.0 / degree[v]);
            let better = match best {
                None => true,
                Some((s, bv)) => score > s || (score == s && v < bv),
            };
            if better {
                best = Some((score, v));
            }
        }
        let p = children.len();
        parent[u] = p;
        match best {
            Some((_, v)) => {
                matched[v] = true;
                parent[v] = p;
                children.push(vec![u, v]);
            }
            None => children.push(vec![u]),
        }
    }

    let mut coarse = WeightedGraph::new(children.len());
    for u in 0..n {
        for &(v, w) in graph.neighbors(u) {
            if u < v && parent[u] != parent[v] {
                coarse.add_edge(parent[u], parent[v], w);
            }
        }
    }

    Coarsening {
        parent,
        coarse,
        children,
    }
}
