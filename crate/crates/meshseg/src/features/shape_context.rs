//! Shape context descriptor: per face, an area-weighted histogram of all
//! other face centroids over log-radial shells x angle-to-normal bins.

use ndarray::Array2;

use crate::features::{FeatureConfig, FeatureKind, FeatureMatrix};
use crate::mesh::TriangleMesh;

/// Radial shell boundaries: `shells + 1` values log-spaced from
/// `inner_frac * radius` to `radius`.
fn shell_bounds(radius: f64, shells: usize, inner_frac: f64) -> Vec<f64> {
    let lo = (inner_frac * radius).ln();
    let hi = radius.ln();
    (0..=shells)
        .map(|i| (lo + (hi - lo) * i as f64 / shells as f64).exp())
        .collect()
}

/// Shell index for distance `r`, clamping out-of-range values to the border
/// shells.
pub(crate) fn shell_index(bounds: &[f64], r: f64) -> usize {
    let shells = bounds.len() - 1;
    let mut idx = shells - 1;
    for s in 0..shells {
        if r < bounds[s + 1] {
            idx = s;
            break;
        }
    }
    idx
}

pub fn compute_shape_context(mesh: &TriangleMesh, cfg: &FeatureConfig) -> FeatureMatrix {
    let h = mesh.face_count();
    let channels = cfg.sc_shells * cfg.sc_angle_bins;
    let mut values = Array2::zeros((h, channels));
    let (_, radius) = mesh.bounding_sphere();
    let bounds = shell_bounds(radius.max(f64::MIN_POSITIVE), cfg.sc_shells, cfg.sc_inner_frac);

    for f in 0..h {
        let cf = mesh.centroid(f);
        let nf = mesh.normal(f);
        let mut total = 0.0;
        for g in 0..h {
            if g == f {
                continue;
            }
            let d = mesh.centroid(g) - cf;
            let r = d.norm();
            let shell = shell_index(&bounds, r);
            let cos = if r > 0.0 { (d.dot(&nf) / r).clamp(-1.0, 1.0) } else { 1.0 };
            let angle = cos.acos();
            let a_bin = ((angle / std::f64::consts::PI) * cfg.sc_angle_bins as f64) as usize;
            let a_bin = a_bin.min(cfg.sc_angle_bins - 1);
            values[[f, shell * cfg.sc_angle_bins + a_bin]] += mesh.area(g);
            total += mesh.area(g);
        }
        if total > 0.0 {
            for c in 0..channels {
                values[[f, c]] /= total;
            }
        }
    }

    FeatureMatrix {
        kind: FeatureKind::Sc,
        values,
        normalized: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::FeatureConfig;
    use crate::mesh::TriangleMesh;
    use nalgebra::Point3;

    #[test]
    fn rows_sum_to_one() {
        let mesh = crate::synthetic::dumbbell_mesh(200, 3);
        let sc = compute_shape_context(&mesh, &FeatureConfig::default());
        for (i, row) in sc.values.rows().into_iter().enumerate() {
            let s: f64 = row.sum();
            assert!((s - 1.0).abs() < 1e-9, "row {i} sums to {s}");
        }
    }

    #[test]
    fn single_face_is_all_zero() {
        let mesh = TriangleMesh::new(
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.0),
            ],
            vec![[0, 1, 2]],
        )
        .unwrap();
        let sc = compute_shape_context(&mesh, &FeatureConfig::default());
        assert!(sc.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn two_faces_along_normal_hit_expected_bin() {
        // Face 0 in the xy plane with normal +z; face 1 parallel to it, its
        // centroid exactly along that normal.
        let cfg = FeatureConfig::default();
        let zoff = 0.9; // second centroid sits at distance zoff along +z
        let vertices = vec![
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(0.3, 0.0, 0.0),
            Point3::new(0.0, 0.3, 0.0),
            Point3::new(0.0, 0.0, zoff),
            Point3::new(0.3, 0.0, zoff),
            Point3::new(0.0, 0.3, zoff),
        ];
        let faces = vec![[0, 1, 2], [3, 4, 5]];
        let mesh = TriangleMesh::new(vertices, faces).unwrap();
        let sc = compute_shape_context(&mesh, &cfg);

        // All mass of row 0 must be in angle bin 0 of the shell holding zoff.
        let (_, radius) = mesh.bounding_sphere();
        let bounds = shell_bounds(radius, cfg.sc_shells, cfg.sc_inner_frac);
        let shell = shell_index(&bounds, zoff);
        let expected_channel = shell * cfg.sc_angle_bins;
        for c in 0..sc.channels() {
            let want = if c == expected_channel { 1.0 } else { 0.0 };
            assert!(
                (sc.values[[0, c]] - want).abs() < 1e-12,
                "channel {c}: {}",
                sc.values[[0, c]]
            );
        }
    }

    #[test]
    fn matches_brute_force_oracle() {
        let cfg = FeatureConfig::default();
        let mesh = crate::synthetic::dumbbell_mesh(150, 11);
        let sc = compute_shape_context(&mesh, &cfg);

        // Independent double-loop binning with its own shell/angle math.
        let h = mesh.face_count();
        let (_, radius) = mesh.bounding_sphere();
        let lo = (cfg.sc_inner_frac * radius).ln();
        let hi = radius.ln();
        let mut expected = Array2::<f64>::zeros((h, cfg.sc_shells * cfg.sc_angle_bins));
        for f in 0..h {
            let mut total = 0.0;
            for g in 0..h {
                if g == f {
                    continue;
                }
                let d = mesh.centroid(g) - mesh.centroid(f);
                let r = d.norm();
                let mut shell = cfg.sc_shells - 1;
                for s in 0..cfg.sc_shells {
                    let upper = (lo + (hi - lo) * (s + 1) as f64 / cfg.sc_shells as f64).exp();
                    if r < upper {
                        shell = s;
                        break;
                    }
                }
                let cos = (d.dot(&mesh.normal(f)) / r).clamp(-1.0, 1.0);
                let a = ((cos.acos() / std::f64::consts::PI) * cfg.sc_angle_bins as f64) as usize;
                let a = a.min(cfg.sc_angle_bins - 1);
                expected[[f, shell * cfg.sc_angle_bins + a]] += mesh.area(g);
                total += mesh.area(g);
            }
            for c in 0..expected.ncols() {
                expected[[f, c]] /= total;
            }
        }
        assert_eq!(sc.values, expected);
    }
}
