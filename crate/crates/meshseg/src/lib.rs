//! Per-triangle semantic segmentation of 3D meshes.
//!
//! The pipeline: load a triangle mesh, build its face-adjacency dual graph,
//! compute three per-face descriptors (average geodesic distance, shape
//! context, spin image), coarsen the graph into a pooling hierarchy with
//! precomputed convolution tables, train one fully convolutional network per
//! descriptor, fuse the predicted probability maps by soft voting, and
//! refine the labeling with multi-label graph cuts over the dual graph.

pub mod error;
#[cfg(test)]
pub(crate) mod testutil;
pub mod features;
pub mod graph;
pub mod mesh;
pub mod synthetic;

pub use error::{Error, Result};
pub use features::{FeatureConfig, FeatureKind, FeatureMatrix, FeatureStats};
pub use graph::{CoarseningHierarchy, GeneratingTable, ReceptiveFieldTable, ShapeTables};
pub use mesh::{DualGraph, TriangleMesh};
