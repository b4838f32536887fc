//! Per-shape preprocessing driver: hierarchy + receptive fields + generating
//! tables distilled into the arrays the network consumes, plus the cache
//! file format.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::ArrayView2;

use crate::error::{Error, Result};
use crate::graph::generating::{build_generating_table, GeneratingTable};
use crate::graph::hierarchy::{build_hierarchy, CoarseningHierarchy};
use crate::graph::receptive::{build_receptive_fields, ReceptiveFieldTable, FAKE};
use crate::graph::WeightedGraph;
use crate::mesh::DualGraph;

/// Everything the network needs to run one shape: the pooling orders of all
/// coarsening levels and one generating table per convolution block. Tables
/// are immutable once built and shared read-only afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct ShapeTables {
    pub k: usize,
    pub pool_layers: usize,
    pub coarsenings_per_pool: usize,
    pub face_count: usize,
    /// per coarsening level: (real node count, slot order)
    pub level_orders: Vec<(usize, Vec<usize>)>,
    /// per coarsening step: real node -> real parent at the next level
    pub level_parents: Vec<Vec<usize>>,
    /// one table per convolution block, in that block's pooled order
    pub conv_tables: Vec<GeneratingTable>,
}

impl ShapeTables {
    /// Padded row count of the network input layout.
    pub fn input_rows(&self) -> usize {
        self.level_orders[0].1.len()
    }

    /// Slot order of the input level (slot -> face id or fake id >= h).
    pub fn input_order(&self) -> &[usize] {
        &self.level_orders[0].1
    }

    /// Row count after the last pooling layer.
    pub fn coarsest_rows(&self) -> usize {
        self.level_orders.last().unwrap().1.len()
    }

    /// Fake flags of convolution block `b`'s layout.
    pub fn fake_flags(&self, b: usize) -> &[bool] {
        &self.conv_tables[b].fake_row
    }
}

/// Receptive fields recomputed on a coarse level of the hierarchy, using the
/// propagated (area-weighted mean) input features stored there.
pub fn coarse_receptive_fields(
    hierarchy: &CoarseningHierarchy,
    level: usize,
    k: usize,
) -> ReceptiveFieldTable {
    let lvl = &hierarchy.levels[level];
    build_receptive_fields(&lvl.graph, lvl.features.view(), k)
}

/// Build the hierarchy and all per-block tables for one shape.
///
/// `features` must be the normalized input descriptor rows for the network
/// that will consume these tables (receptive-field ordering and coarsening
/// weights both depend on them).
pub fn build_shape_tables(
    dual: &DualGraph,
    features: ArrayView2<f64>,
    areas: &[f64],
    k: usize,
    pool_layers: usize,
) -> (ShapeTables, CoarseningHierarchy) {
    let weights = crate::graph::weights::edge_weights_from_features(dual, features);
    let graph = WeightedGraph::from_dual(dual, &weights);
    let hierarchy = build_hierarchy(&graph, features, areas, pool_layers, 2);

    let mut conv_tables = Vec::with_capacity(pool_layers);
    for b in 0..pool_layers {
        let level_idx = b * hierarchy.coarsenings_per_pool;
        let rf = if b == 0 {
            build_receptive_fields(&graph, features, k)
        } else {
            coarse_receptive_fields(&hierarchy, level_idx, k)
        };
        conv_tables.push(build_generating_table(&rf, &hierarchy.levels[level_idx]));
    }

    let tables = ShapeTables {
        k,
        pool_layers,
        coarsenings_per_pool: hierarchy.coarsenings_per_pool,
        face_count: dual.node_count(),
        level_orders: hierarchy
            .levels
            .iter()
            .map(|l| (l.real_count, l.order.clone()))
            .collect(),
        level_parents: hierarchy
            .levels
            .iter()
            .take(hierarchy.levels.len() - 1)
            .map(|l| l.parent.clone())
            .collect(),
        conv_tables,
    };
    (tables, hierarchy)
}

// ---------------------------------------------------------------------------
// Cache file format (plain text, FAKE serialized as -1)

const MAGIC: &str = "meshseg-tables v1";

fn int(v: usize) -> i64 {
    if v == FAKE {
        -1
    } else {
        v as i64
    }
}

pub fn write_shape_tables(path: impl AsRef<Path>, t: &ShapeTables) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    writeln!(w, "{MAGIC}")?;
    writeln!(
        w,
        "faces {} k {} pool_layers {} coarsenings_per_pool {}",
        t.face_count, t.k, t.pool_layers, t.coarsenings_per_pool
    )?;
    writeln!(w, "levels {}", t.level_orders.len())?;
    for (i, (real, order)) in t.level_orders.iter().enumerate() {
        writeln!(w, "level {i} real {} padded {}", real, order.len())?;
        writeln!(w, "{}", join_ints(order))?;
        let fake: Vec<usize> = order.iter().map(|&id| usize::from(id >= *real)).collect();
        writeln!(w, "{}", join_ints(&fake))?;
        if i < t.level_parents.len() {
            writeln!(w, "{}", join_ints(&t.level_parents[i]))?;
        }
    }
    writeln!(w, "conv_tables {}", t.conv_tables.len())?;
    for (b, table) in t.conv_tables.iter().enumerate() {
        writeln!(w, "table {b} rows {} k {}", table.rows, table.k)?;
        for r in 0..table.rows {
            let row: Vec<String> = table.row(r).iter().map(|&v| int(v).to_string()).collect();
            writeln!(w, "{}", row.join(" "))?;
        }
    }
    Ok(())
}

fn join_ints(vals: &[usize]) -> String {
    vals.iter()
        .map(|&v| int(v).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn read_shape_tables(path: impl AsRef<Path>) -> Result<ShapeTables> {
    let path = path.as_ref();
    let file = BufReader::new(File::open(path)?);
    let mut lines = file.lines();
    let mut next = |what: &str| -> Result<String> {
        lines
            .next()
            .transpose()?
            .ok_or_else(|| bad(path, format!("missing {what}")))
    };

    if next("header")? != MAGIC {
        return Err(bad(path, "bad magic".into()));
    }
    let meta = next("meta")?;
    let nums = numbers(&meta);
    if nums.len() != 4 {
        return Err(bad(path, format!("bad meta line: {meta}")));
    }
    let (face_count, k, pool_layers, cpp) = (
        nums[0] as usize,
        nums[1] as usize,
        nums[2] as usize,
        nums[3] as usize,
    );
    let level_count = numbers(&next("levels")?)
        .first()
        .copied()
        .ok_or_else(|| bad(path, "bad levels line".into()))? as usize;

    let mut level_orders = Vec::with_capacity(level_count);
    let mut level_parents = Vec::new();
    for i in 0..level_count {
        let head = numbers(&next("level header")?);
        if head.len() != 3 {
            return Err(bad(path, "bad level header".into()));
        }
        let (real, padded) = (head[1] as usize, head[2] as usize);
        let order = parse_ids(path, &next("order")?, padded)?;
        let _fake = parse_ids(path, &next("fake flags")?, padded)?;
        if i + 1 < level_count {
            level_parents.push(parse_ids(path, &next("parents")?, real)?);
        }
        level_orders.push((real, order));
    }

    let table_count = numbers(&next("conv_tables")?)
        .first()
        .copied()
        .ok_or_else(|| bad(path, "bad conv_tables line".into()))? as usize;
    let mut conv_tables = Vec::with_capacity(table_count);
    for _ in 0..table_count {
        let head = numbers(&next("table header")?);
        if head.len() != 3 {
            return Err(bad(path, "bad table header".into()));
        }
        let (rows, tk) = (head[1] as usize, head[2] as usize);
        let mut offsets = Vec::with_capacity(rows * tk);
        for r in 0..rows {
            offsets.extend(parse_ids(path, &next(&format!("table row {r}"))?, tk)?);
        }
        let level_idx = conv_tables.len() * cpp;
        let (real, order) = &level_orders[level_idx];
        let fake_row: Vec<bool> = order.iter().map(|&id| id >= *real).collect();
        conv_tables.push(GeneratingTable {
            k: tk,
            rows,
            offsets,
            fake_row,
        });
    }

    Ok(ShapeTables {
        k,
        pool_layers,
        coarsenings_per_pool: cpp,
        face_count,
        level_orders,
        level_parents,
        conv_tables,
    })
}

fn bad(path: &Path, message: String) -> Error {
    Error::Parse {
        path: path.display().to_string(),
        line: 0,
        message,
    }
}

fn numbers(line: &str) -> Vec<i64> {
    line.split_whitespace()
        .filter_map(|t| t.parse::<i64>().ok())
        .collect()
}

fn parse_ids(path: &Path, line: &str, expect: usize) -> Result<Vec<usize>> {
    let vals = numbers(line);
    if vals.len() != expect {
        return Err(bad(
            path,
            format!("expected {expect} integers, found {}", vals.len()),
        ));
    }
    Ok(vals
        .into_iter()
        .map(|v| if v < 0 { FAKE } else { v as usize })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{compute_feature, normalize_features, FeatureConfig, FeatureKind};
    use crate::mesh::build_dual_graph;

    fn sample_tables(seed: u64) -> ShapeTables {
        let mesh = crate::synthetic::dumbbell_mesh(120, seed);
        let dual = build_dual_graph(&mesh).unwrap();
        let raw =
            compute_feature(&mesh, &dual, FeatureKind::Agd, &FeatureConfig::default()).unwrap();
        let (norm, _) = normalize_features(&raw, None);
        let (tables, _) =
            build_shape_tables(&dual, norm.values.view(), mesh.areas(), 4, 2);
        tables
    }

    #[test]
    fn conv_table_entries_index_valid_slots() {
        let t = sample_tables(3);
        for (b, table) in t.conv_tables.iter().enumerate() {
            assert_eq!(table.rows, t.level_orders[b * 2].1.len());
            for r in 0..table.rows {
                assert_eq!(table.fake_row[r], t.level_orders[b * 2].1[r] >= t.level_orders[b * 2].0);
                for &e in table.row(r) {
                    assert!(e == FAKE || e < table.rows);
                    if table.fake_row[r] {
                        assert_eq!(e, FAKE);
                    }
                }
                if !table.fake_row[r] {
                    // slot 0 is the source itself
                    assert_eq!(table.entry(r, 0), r);
                }
            }
        }
    }

    #[test]
    fn pooling_groups_of_four_share_a_parent() {
        let t = sample_tables(5);
        // For block 0 -> block 1: slots 4p..4p+3 at level 0 must map (via two
        // parent steps) to the real node at level-2 slot p, when real.
        let (real0, order0) = &t.level_orders[0];
        let (real2, order2) = &t.level_orders[2];
        for (p, &pid) in order2.iter().enumerate() {
            for child_slot in 4 * p..4 * p + 4 {
                let id = order0[child_slot];
                if id < *real0 {
                    let up = t.level_parents[1][t.level_parents[0][id]];
                    assert!(pid < *real2);
                    assert_eq!(up, pid);
                }
            }
        }
    }

    #[test]
    fn file_round_trip_is_lossless() {
        let t = sample_tables(7);
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("shape.tables");
        write_shape_tables(&p, &t).unwrap();
        let back = read_shape_tables(&p).unwrap();
        assert_eq!(back, t);
    }
}
