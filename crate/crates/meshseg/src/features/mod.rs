//! Per-face input descriptors: average geodesic distance, shape context,
//! spin image, and their min-max normalization.

mod agd;
mod cache;
mod geodesic;
mod shape_context;
mod spin_image;

pub use agd::compute_agd;
pub use cache::{read_feature_table, write_feature_table};
pub use geodesic::geodesic_matrix;
pub use shape_context::compute_shape_context;
pub use spin_image::compute_spin_image;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::{DualGraph, TriangleMesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureKind {
    Agd,
    Sc,
    Si,
}

impl FeatureKind {
    pub const ALL: [FeatureKind; 3] = [FeatureKind::Agd, FeatureKind::Sc, FeatureKind::Si];

    pub fn name(self) -> &'static str {
        match self {
            FeatureKind::Agd => "agd",
            FeatureKind::Sc => "sc",
            FeatureKind::Si => "si",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "agd" => Some(FeatureKind::Agd),
            "sc" => Some(FeatureKind::Sc),
            "si" => Some(FeatureKind::Si),
            _ => None,
        }
    }
}

/// Descriptor binning parameters. The defaults give 1 AGD channel,
/// 5×6 = 30 shape-context channels and 8×8 = 64 spin-image channels.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FeatureConfig {
    pub sc_shells: usize,
    pub sc_angle_bins: usize,
    pub si_alpha_bins: usize,
    pub si_beta_bins: usize,
    /// Inner radius of the first shape-context shell, as a fraction of the
    /// bounding-sphere radius.
    pub sc_inner_frac: f64,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        Self {
            sc_shells: 5,
            sc_angle_bins: 6,
            si_alpha_bins: 8,
            si_beta_bins: 8,
            sc_inner_frac: 0.05,
        }
    }
}

impl FeatureConfig {
    pub fn channels(&self, kind: FeatureKind) -> usize {
        match kind {
            FeatureKind::Agd => 1,
            FeatureKind::Sc => self.sc_shells * self.sc_angle_bins,
            FeatureKind::Si => self.si_alpha_bins * self.si_beta_bins,
        }
    }
}

/// Per-face descriptor rows: h faces × C channels.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub kind: FeatureKind,
    pub values: Array2<f64>,
    pub normalized: bool,
}

impl FeatureMatrix {
    pub fn rows(&self) -> usize {
        self.values.nrows()
    }

    pub fn channels(&self) -> usize {
        self.values.ncols()
    }

    pub fn assert_finite(&self) -> Result<()> {
        if self.values.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::Numerical(format!(
                "{} feature matrix contains non-finite entries",
                self.kind.name()
            )))
        }
    }
}

/// Per-channel min/max statistics used to normalize features consistently
/// across a dataset.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FeatureStats {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl FeatureStats {
    /// Statistics of a single matrix.
    pub fn from_matrix(fm: &FeatureMatrix) -> Self {
        let c = fm.channels();
        let mut min = vec![f64::INFINITY; c];
        let mut max = vec![f64::NEG_INFINITY; c];
        for row in fm.values.rows() {
            for (j, &v) in row.iter().enumerate() {
                min[j] = min[j].min(v);
                max[j] = max[j].max(v);
            }
        }
        Self { min, max }
    }

    /// Pooled statistics over several matrices (e.g. a training set).
    pub fn pooled(mats: &[&FeatureMatrix]) -> Self {
        assert!(!mats.is_empty());
        let mut stats = Self::from_matrix(mats[0]);
        for fm in &mats[1..] {
            let s = Self::from_matrix(fm);
            for j in 0..stats.min.len() {
                stats.min[j] = stats.min[j].min(s.min[j]);
                stats.max[j] = stats.max[j].max(s.max[j]);
            }
        }
        stats
    }
}

/// Min-max scale each channel to [0, 1]. With `stats` supplied the scaling
/// uses those bounds and clamps, so test shapes line up with the training
/// set. Constant channels map to all zeros.
pub fn normalize_features(
    fm: &FeatureMatrix,
    stats: Option<&FeatureStats>,
) -> (FeatureMatrix, FeatureStats) {
    let own = FeatureStats::from_matrix(fm);
    let stats = stats.cloned().unwrap_or(own);
    let mut values = fm.values.clone();
    for mut row in values.rows_mut() {
        for (j, v) in row.iter_mut().enumerate() {
            let span = stats.max[j] - stats.min[j];
            *v = if span > 0.0 {
                ((*v - stats.min[j]) / span).clamp(0.0, 1.0)
            } else {
                0.0
            };
        }
    }
    (
        FeatureMatrix {
            kind: fm.kind,
            values,
            normalized: true,
        },
        stats,
    )
}

/// Compute one raw (unnormalized) descriptor matrix.
pub fn compute_feature(
    mesh: &TriangleMesh,
    graph: &DualGraph,
    kind: FeatureKind,
    cfg: &FeatureConfig,
) -> Result<FeatureMatrix> {
    let fm = match kind {
        FeatureKind::Agd => {
            let geo = geodesic_matrix(graph, mesh);
            compute_agd(&geo, mesh.areas())
        }
        FeatureKind::Sc => compute_shape_context(mesh, cfg),
        FeatureKind::Si => compute_spin_image(mesh, cfg),
    };
    fm.assert_finite()?;
    Ok(fm)
}

/// All three raw descriptors for one shape.
pub fn compute_all_features(
    mesh: &TriangleMesh,
    graph: &DualGraph,
    cfg: &FeatureConfig,
) -> Result<[FeatureMatrix; 3]> {
    Ok([
        compute_feature(mesh, graph, FeatureKind::Agd, cfg)?,
        compute_feature(mesh, graph, FeatureKind::Sc, cfg)?,
        compute_feature(mesh, graph, FeatureKind::Si, cfg)?,
    ])
}
