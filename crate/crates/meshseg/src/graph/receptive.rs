//! Receptive fields: per node, the K-slot ordered neighborhood used by the
//! convolution. Built by breadth-first search and sorted by feature
//! similarity to the source.

use ndarray::ArrayView2;

use crate::graph::WeightedGraph;

/// Sentinel for an empty slot (padding) in receptive-field and generating
/// tables. Serialized as -1.
pub const FAKE: usize = usize::MAX;

/// Rows indexed by node; each row holds exactly `k` slots. Slot 0 of a real
/// row is the source node; remaining slots are its neighborhood ordered by
/// ascending feature distance (ties by node index), padded with [`FAKE`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReceptiveFieldTable {
    pub k: usize,
    pub rows: Vec<Vec<usize>>,
}

impl ReceptiveFieldTable {
    pub fn row(&self, node: usize) -> &[usize] {
        &self.rows[node]
    }
}

/// Squared L2 distance between feature rows `a` and `b`.
fn feature_dist2(features: &ArrayView2<f64>, a: usize, b: usize) -> f64 {
    features
        .row(a)
        .iter()
        .zip(features.row(b).iter())
        .map(|(x, y)| (x - y) * (x - y))
        .sum()
}

/// Build the receptive-field table for every node of `graph`.
///
/// BFS grows the candidate set a full layer at a time; if the final layer
/// overshoots K-1, its members are picked by the same distance-then-index
/// order used for the final sort. Undersized components pad with FAKE.
pub fn build_receptive_fields(
    graph: &WeightedGraph,
    features: ArrayView2<f64>,
    k: usize,
) -> ReceptiveFieldTable {
    assert!(k >= 1, "receptive field needs at least the source slot");
    assert_eq!(graph.node_count(), features.nrows());
    let n = graph.node_count();
    let mut rows = Vec::with_capacity(n);
    let mut visited = vec![false; n];

    for src in 0..n {
        let want = k - 1;
        let mut chosen: Vec<usize> = Vec::with_capacity(want);
        visited[src] = true;
        let mut frontier = vec![src];
        let mut touched = vec![src];

        while chosen.len() < want && !frontier.is_empty() {
            let mut layer = Vec::new();
            for &u in &frontier {
                for &(v, _) in graph.neighbors(u) {
                    if !visited[v] {
                        visited[v] = true;
                        touched.push(v);
                        layer.push(v);
                    }
                }
            }
            layer.sort_unstable();
            let remaining = want - chosen.len();
            if layer.len() > remaining {
                // Partially used layer: closest by feature distance first.
                let mut ranked: Vec<(f64, usize)> = layer
                    .iter()
                    .map(|&v| (feature_dist2(&features, src, v), v))
                    .collect();
                ranked.sort_by(|a, b| a.partial_cmp(b).unwrap());
                chosen.extend(ranked[..remaining].iter().map(|&(_, v)| v));
            } else {
                chosen.extend_from_slice(&layer);
            }
            frontier = layer;
        }
        for &u in &touched {
            visited[u] = false;
        }

        let mut ranked: Vec<(f64, usize)> = chosen
            .iter()
            .map(|&v| (feature_dist2(&features, src, v), v))
            .collect();
        ranked.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mut row = Vec::with_capacity(k);
        row.push(src);
        row.extend(ranked.iter().map(|&(_, v)| v));
        row.resize(k, FAKE);
        rows.push(row);
    }

    ReceptiveFieldTable { k, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::Array2;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn feats(vals: &[f64]) -> Array2<f64> {
        Array2::from_shape_vec((vals.len(), 1), vals.to_vec()).unwrap()
    }

    #[test]
    fn complete_graph_orders_by_feature_distance() {
        // K4 (tetrahedron dual); features make node 2 closest to 0, then 3, then 1.
        let g = WeightedGraph::from_edges(
            4,
            &[
                (0, 1, 1.0),
                (0, 2, 1.0),
                (0, 3, 1.0),
                (1, 2, 1.0),
                (1, 3, 1.0),
                (2, 3, 1.0),
            ],
        );
        let f = feats(&[0.0, 0.9, 0.1, 0.5]);
        let table = build_receptive_fields(&g, f.view(), 4);
        assert_eq!(table.row(0), &[0, 2, 3, 1]);
    }

    #[test]
    fn isolated_node_pads_with_fake() {
        let g = WeightedGraph::new(1);
        let f = feats(&[0.3]);
        let table = build_receptive_fields(&g, f.view(), 4);
        assert_eq!(table.row(0), &[0, FAKE, FAKE, FAKE]);
    }

    fn random_graph(n: usize, extra_edges: usize, seed: u64) -> WeightedGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = WeightedGraph::new(n);
        // spanning chain keeps it connected
        for i in 1..n {
            g.add_edge(i - 1, i, 1.0);
        }
        for _ in 0..extra_edges {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v {
                g.add_edge(u, v, 1.0);
            }
        }
        g
    }

    /// Independent oracle: BFS hop distances via repeated relaxation, then
    /// the k-nearest selection and ordering recomputed from scratch.
    fn oracle_row(g: &WeightedGraph, features: &Array2<f64>, src: usize, k: usize) -> Vec<usize> {
        let n = g.node_count();
        let mut hop = vec![usize::MAX; n];
        hop[src] = 0;
        loop {
            let mut changed = false;
            for u in 0..n {
                if hop[u] == usize::MAX {
                    continue;
                }
                for &(v, _) in g.neighbors(u) {
                    if hop[u] + 1 < hop[v] {
                        hop[v] = hop[u] + 1;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let d2 = |v: usize| -> f64 {
            features
                .row(src)
                .iter()
                .zip(features.row(v).iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum()
        };
        // Select k-1 nodes: full hop rings first; break the last ring by
        // (feature distance, index).
        let mut ring_of: Vec<Vec<usize>> = Vec::new();
        for v in 0..n {
            if v == src || hop[v] == usize::MAX {
                continue;
            }
            let r = hop[v];
            if ring_of.len() < r {
                ring_of.resize(r, Vec::new());
            }
            ring_of[r - 1].push(v);
        }
        let mut chosen = Vec::new();
        for ring in ring_of {
            let remaining = (k - 1).saturating_sub(chosen.len());
            if remaining == 0 {
                break;
            }
            if ring.len() <= remaining {
                chosen.extend(ring);
            } else {
                let mut by_dist: Vec<usize> = ring;
                by_dist.sort_by(|&a, &b| {
                    d2(a).partial_cmp(&d2(b)).unwrap().then(a.cmp(&b))
                });
                chosen.extend(by_dist.into_iter().take(remaining));
            }
        }
        chosen.sort_by(|&a, &b| d2(a).partial_cmp(&d2(b)).unwrap().then(a.cmp(&b)));
        let mut row = vec![src];
        row.extend(chosen);
        row.resize(k, FAKE);
        row
    }

    #[test]
    fn matches_bfs_and_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for seed in 0..8u64 {
            let n = 20;
            let g = random_graph(n, 15, seed);
            let mut f = Array2::zeros((n, 3));
            for v in f.iter_mut() {
                *v = rng.gen::<f64>();
            }
            let table = build_receptive_fields(&g, f.view(), 6);
            for src in 0..n {
                assert_eq!(
                    table.row(src),
                    oracle_row(&g, &f, src, 6).as_slice(),
                    "seed {seed} src {src}"
                );
            }
        }
    }

    #[test]
    fn permutation_equivariant() {
        let n = 15;
        let g = random_graph(n, 10, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut f = Array2::zeros((n, 2));
        for v in f.iter_mut() {
            *v = rng.gen::<f64>();
        }
        let table = build_receptive_fields(&g, f.view(), 5);

        // permutation: node i -> perm[i]
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let mut pg = WeightedGraph::new(n);
        for u in 0..n {
            for &(v, w) in g.neighbors(u) {
                if u < v {
                    pg.add_edge(perm[u], perm[v], w);
                }
            }
        }
        let mut pf = Array2::zeros((n, 2));
        for u in 0..n {
            for c in 0..2 {
                pf[[perm[u], c]] = f[[u, c]];
            }
        }
        let ptable = build_receptive_fields(&pg, pf.view(), 5);
        for u in 0..n {
            let mapped: Vec<usize> = table
                .row(u)
                .iter()
                .map(|&e| if e == FAKE { FAKE } else { perm[e] })
                .collect();
            assert_eq!(ptable.row(perm[u]), mapped.as_slice());
        }
    }
}
