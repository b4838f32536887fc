//! Average geodesic distance.

use ndarray::Array2;

use crate::features::{FeatureKind, FeatureMatrix};

/// Area-weighted mean geodesic distance from each face to the rest of its
/// component, divided by the component minimum so the most central face
/// reads 1.0. Components are inferred from infinite geodesic entries.
pub fn compute_agd(geodesics: &Array2<f64>, areas: &[f64]) -> FeatureMatrix {
    let h = geodesics.nrows();
    assert_eq!(h, areas.len());
    let mut raw = vec![0.0f64; h];
    for f in 0..h {
        let mut weighted = 0.0;
        let mut total_area = 0.0;
        for g in 0..h {
            let d = geodesics[[f, g]];
            if d.is_finite() {
                weighted += areas[g] * d;
                total_area += areas[g];
            }
        }
        raw[f] = if total_area > 0.0 { weighted / total_area } else { 0.0 };
    }

    // Per-component minimum: faces u, v share a component iff d(u,v) finite.
    let mut component = vec![usize::MAX; h];
    let mut n_components = 0;
    for f in 0..h {
        if component[f] != usize::MAX {
            continue;
        }
        let c = n_components;
        n_components += 1;
        for g in f..h {
            if geodesics[[f, g]].is_finite() {
                component[g] = c;
            }
        }
    }
    let mut comp_min = vec![f64::INFINITY; n_components];
    for f in 0..h {
        comp_min[component[f]] = comp_min[component[f]].min(raw[f]);
    }
    for f in 0..h {
        let m = comp_min[component[f]];
        if m > 0.0 && m.is_finite() {
            raw[f] /= m;
        }
    }

    FeatureMatrix {
        kind: FeatureKind::Agd,
        values: Array2::from_shape_vec((h, 1), raw).unwrap(),
        normalized: false,
    }
}
