//! Feature-similarity edge weights for coarsening.

use ndarray::ArrayView2;

use crate::mesh::DualGraph;

/// Gaussian edge weights w(u,v) = exp(-|f_u - f_v|^2 / sigma^2) with sigma^2
/// the mean squared feature distance over all edges. All weights land in
/// (0, 1]; if every edge has zero feature distance the weights are all 1.
pub fn edge_weights_from_features(graph: &DualGraph, features: ArrayView2<f64>) -> Vec<f64> {
    assert_eq!(graph.node_count(), features.nrows());
    let dist2: Vec<f64> = graph
        .edges()
        .iter()
        .map(|e| {
            features
                .row(e.u)
                .iter()
                .zip(features.row(e.v).iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum()
        })
        .collect();
    if dist2.is_empty() {
        return Vec::new();
    }
    let sigma2 = dist2.iter().sum::<f64>() / dist2.len() as f64;
    if sigma2 == 0.0 {
        return vec![1.0; dist2.len()];
    }
    dist2.iter().map(|d2| (-d2 / sigma2).exp()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_dual_graph;
    use ndarray::Array2;

    #[test]
    fn identical_features_give_unit_weights() {
        let mesh = crate::synthetic::strip_mesh(5, 1.0);
        let g = build_dual_graph(&mesh).unwrap();
        let f = Array2::from_elem((5, 3), 0.7);
        let w = edge_weights_from_features(&g, f.view());
        assert_eq!(w, vec![1.0; g.edges().len()]);
    }

    #[test]
    fn two_edge_hand_check() {
        // Path 0-1-2 with feature gaps d and 2d: squared distances d^2, 4d^2;
        // sigma^2 = 2.5 d^2, so weights exp(-0.4) and exp(-1.6).
        let mesh = crate::synthetic::strip_mesh(3, 1.0);
        let g = build_dual_graph(&mesh).unwrap();
        let d = 0.3;
        let f = Array2::from_shape_vec((3, 1), vec![0.0, d, 3.0 * d]).unwrap();
        let w = edge_weights_from_features(&g, f.view());
        let mut expected = vec![0.0; 2];
        for (i, e) in g.edges().iter().enumerate() {
            let d2 = (f[[e.u, 0]] - f[[e.v, 0]]).powi(2);
            expected[i] = (-d2 / (2.5 * d * d)).exp();
        }
        for (a, b) in w.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-12);
        }
        let flat: Vec<f64> = w.clone();
        assert!(flat.iter().any(|&x| (x - (-0.4f64).exp()).abs() < 1e-12));
        assert!(flat.iter().any(|&x| (x - (-1.6f64).exp()).abs() < 1e-12));
    }

    #[test]
    fn weights_bounded_and_positive() {
        let mesh = crate::synthetic::dumbbell_mesh(120, 8);
        let g = build_dual_graph(&mesh).unwrap();
        let geo = crate::features::geodesic_matrix(&g, &mesh);
        let agd = crate::features::compute_agd(&geo, mesh.areas());
        let w = edge_weights_from_features(&g, agd.values.view());
        assert!(w.iter().all(|&x| x > 0.0 && x <= 1.0));
    }
}
