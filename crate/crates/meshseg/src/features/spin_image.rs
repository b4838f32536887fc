//! Spin image descriptor: per face, an area-weighted histogram of the other
//! centroids in cylindrical coordinates (alpha, beta) around the face normal.

use ndarray::Array2;

use crate::features::{FeatureConfig, FeatureKind, FeatureMatrix};
use crate::mesh::TriangleMesh;

pub fn compute_spin_image(mesh: &TriangleMesh, cfg: &FeatureConfig) -> FeatureMatrix {
    let h = mesh.face_count();
    let (na, nb) = (cfg.si_alpha_bins, cfg.si_beta_bins);
    let mut values = Array2::zeros((h, na * nb));
    let (_, radius) = mesh.bounding_sphere();
    let radius = radius.max(f64::MIN_POSITIVE);

    for f in 0..h {
        let cf = mesh.centroid(f);
        let nf = mesh.normal(f);
        let mut total = 0.0;
        for g in 0..h {
            if g == f {
                continue;
            }
            let d = mesh.centroid(g) - cf;
            let beta = d.dot(&nf); // in [-R, R] when inside the support
            let alpha = (d - nf * beta).norm(); // in [0, R]
            // Out-of-range samples clamp to the border bins.
            let a_bin = (((alpha / radius) * na as f64) as usize).min(na - 1);
            let b_bin = ((((beta + radius) / (2.0 * radius)) * nb as f64).floor().max(0.0)
                as usize)
                .min(nb - 1);
            values[[f, b_bin * na + a_bin]] += mesh.area(g);
            total += mesh.area(g);
        }
        if total > 0.0 {
            for c in 0..na * nb {
                values[[f, c]] /= total;
            }
        }
    }

    FeatureMatrix {
        kind: FeatureKind::Si,
        values,
        normalized: false,
    }
}
