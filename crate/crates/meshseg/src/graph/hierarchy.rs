//! Multi-level coarsening with the balanced-binary-tree pooling order.
//!
//! Each pooling layer is `coarsenings_per_pool` greedy matchings (default 2,
//! so pooling contracts groups of 4). Fake nodes pad every coarse node to
//! exactly two child slots; the coarsest level is ordered by ascending index
//! and orders propagate back down, leaving the finest level arranged so 1D
//! pooling over consecutive slots respects the tree.

use ndarray::Array2;

use crate::graph::coarsen::graclus_coarsen;
use crate::graph::WeightedGraph;

/// One level of the hierarchy. Real nodes are `0..real_count`; padded slot
/// ids in `real_count..padded_count` denote fake nodes. `order[slot]` gives
/// the padded node id stored at a slot; `slot_of[node]` inverts it for real
/// nodes.
#[derive(Debug, Clone)]
pub struct Level {
    pub graph: WeightedGraph,
    pub real_count: usize,
    pub padded_count: usize,
    pub order: Vec<usize>,
    pub slot_of: Vec<usize>,
    /// real node -> real parent id at the next level; empty at the coarsest.
    pub parent: Vec<usize>,
    /// Input features propagated to this level (area-weighted child means).
    pub features: Array2<f64>,
    pub areas: Vec<f64>,
}

impl Level {
    pub fn is_fake_slot(&self, slot: usize) -> bool {
        self.order[slot] >= self.real_count
    }

    pub fn fake_count(&self) -> usize {
        self.padded_count - self.real_count
    }

    /// Fake flags in slot order.
    pub fn fake_flags(&self) -> Vec<bool> {
        (0..self.padded_count).map(|s| self.is_fake_slot(s)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct CoarseningHierarchy {
    pub levels: Vec<Level>,
    pub pool_layers: usize,
    pub coarsenings_per_pool: usize,
}

impl CoarseningHierarchy {
    /// Level index on which convolution block `b` (0-based) operates.
    pub fn conv_level(&self, b: usize) -> &Level {
        &self.levels[b * self.coarsenings_per_pool]
    }

    /// Pooling permutation for pooling layer `j` (0-based): the slot order of
    /// the level that layer pools, of size pool_size * (next level count).
    pub fn pool_perm(&self, j: usize) -> &[usize] {
        &self.levels[j * self.coarsenings_per_pool].order
    }

    pub fn coarsest(&self) -> &Level {
        self.levels.last().unwrap()
    }

    /// Rows of the finest padded layout (network input rows).
    pub fn padded_input_rows(&self) -> usize {
        self.levels[0].padded_count
    }
}

/// Build the full hierarchy for `pool_layers` pooling layers.
///
/// `features` (one row per node, already normalized) and `areas` seed the
/// per-level propagated features used for coarse receptive-field ordering.
pub fn build_hierarchy(
    graph: &WeightedGraph,
    features: ndarray::ArrayView2<f64>,
    areas: &[f64],
    pool_layers: usize,
    coarsenings_per_pool: usize,
) -> CoarseningHierarchy {
    assert!(pool_layers >= 1);
    assert!(coarsenings_per_pool >= 1);
    let n = graph.node_count();
    assert!(n >= 1);
    assert_eq!(features.nrows(), n);
    assert_eq!(areas.len(), n);

    let steps = pool_layers * coarsenings_per_pool;

    // Bottom-up: graphs, parents, children, propagated features.
    let mut graphs = vec![graph.clone()];
    let mut feats = vec![features.to_owned()];
    let mut area_levels = vec![areas.to_vec()];
    let mut parents: Vec<Vec<usize>> = Vec::new();
    let mut children: Vec<Vec<Vec<usize>>> = Vec::new();
    for _ in 0..steps {
        let fine = graphs.last().unwrap();
        let c = graclus_coarsen(fine);
        let fine_feats = feats.last().unwrap();
        let fine_areas = area_levels.last().unwrap();
        let m = c.coarse.node_count();
        let dim = fine_feats.ncols();
        let mut cf = Array2::<f64>::zeros((m, dim));
        let mut ca = vec![0.0; m];
        for (p, ch) in c.children.iter().enumerate() {
            let total: f64 = ch.iter().map(|&u| fine_areas[u]).sum();
            for &u in ch {
                let w = fine_areas[u] / total;
                for d in 0..dim {
                    cf[[p, d]] += w * fine_feats[[u, d]];
                }
            }
            ca[p] = total;
        }
        graphs.push(c.coarse.clone());
        feats.push(cf);
        area_levels.push(ca);
        parents.push(c.parent);
        children.push(c.children);
    }

    // Top-down: slot orders with fake padding.
    let coarsest_n = graphs[steps].node_count();
    let mut orders: Vec<Vec<usize>> = vec![Vec::new(); steps + 1];
    orders[steps] = (0..coarsest_n).collect();
    for l in (0..steps).rev() {
        let real_fine = graphs[l].node_count();
        let real_coarse = graphs[l + 1].node_count();
        let mut next_fake = real_fine;
        let mut ord = Vec::with_capacity(2 * orders[l + 1].len());
        for &cid in &orders[l + 1] {
            if cid >= real_coarse {
                // fake parent: two fake children
                ord.push(next_fake);
                ord.push(next_fake + 1);
                next_fake += 2;
            } else {
                let ch = &children[l][cid];
                ord.push(ch[0]);
                if ch.len() == 2 {
                    ord.push(ch[1]);
                } else {
                    ord.push(next_fake);
                    next_fake += 1;
                }
            }
        }
        orders[l] = ord;
    }

    let mut levels = Vec::with_capacity(steps + 1);
    for l in 0..=steps {
        let real_count = graphs[l].node_count();
        let order = std::mem::take(&mut orders[l]);
        let padded_count = order.len();
        let mut slot_of = vec![usize::MAX; real_count];
        for (slot, &id) in order.iter().enumerate() {
            if id < real_count {
                slot_of[id] = slot;
            }
        }
        levels.push(Level {
            graph: graphs[l].clone(),
            real_count,
            padded_count,
            order,
            slot_of,
            parent: if l < steps {
                parents[l].clone()
            } else {
                Vec::new()
            },
            features: feats[l].clone(),
            areas: area_levels[l].clone(),
        });
    }

    CoarseningHierarchy {
        levels,
        pool_layers,
        coarsenings_per_pool,
    }
}
