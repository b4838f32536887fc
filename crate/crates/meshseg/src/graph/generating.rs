//! Generating tables: receptive-field rows rearranged into pooling order,
//! with entries remapped to pooled slot offsets, so the network can run
//! convolution by row and pooling over consecutive row groups.

use crate::graph::hierarchy::Level;
use crate::graph::receptive::{ReceptiveFieldTable, FAKE};

/// Row r describes the ordered K-slot neighborhood of whatever occupies
/// pooled slot r; entries are pooled slot offsets (or FAKE). Fake slots get
/// all-FAKE rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingTable {
    pub k: usize,
    pub rows: usize,
    /// row-major rows x k entries
    pub offsets: Vec<usize>,
    pub fake_row: Vec<bool>,
}

impl GeneratingTable {
    #[inline]
    pub fn entry(&self, row: usize, slot: usize) -> usize {
        self.offsets[row * self.k + slot]
    }

    pub fn row(&self, row: usize) -> &[usize] {
        &self.offsets[row * self.k..(row + 1) * self.k]
    }
}

/// Arrange `rf` (indexed by node id) into the pooled slot order of `level`.
pub fn build_generating_table(rf: &ReceptiveFieldTable, level: &Level) -> GeneratingTable {
    assert_eq!(rf.rows.len(), level.real_count);
    let k = rf.k;
    let rows = level.padded_count;
    let mut offsets = vec![FAKE; rows * k];
    let mut fake_row = vec![true; rows];
    for slot in 0..rows {
        let id = level.order[slot];
        if id >= level.real_count {
            continue;
        }
        fake_row[slot] = false;
        for (j, &entry) in rf.rows[id].iter().enumerate() {
            offsets[slot * k + j] = if entry == FAKE {
                FAKE
            } else {
                level.slot_of[entry]
            };
        }
    }
    GeneratingTable {
        k,
        rows,
        offsets,
        fake_row,
    }
}
