//! Parametric labeled test shapes: dumbbells, pedestal tables, and
//! glasses-like frames. Every generator is deterministic in its seed and
//! returns exact per-face ground truth labels.

use std::f64::consts::PI;

use nalgebra::{Point3, Rotation3, Vector3};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::mesh::TriangleMesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Dumbbell,
    Table,
    Glasses,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Dumbbell => "dumbbell",
            Family::Table => "table",
            Family::Glasses => "glasses",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dumbbell" => Some(Family::Dumbbell),
            "table" => Some(Family::Table),
            "glasses" => Some(Family::Glasses),
            _ => None,
        }
    }

    pub fn label_names(self) -> &'static [&'static str] {
        match self {
            Family::Dumbbell => &["bulb", "neck"],
            Family::Table => &["top", "leg"],
            Family::Glasses => &["rim", "bridge", "temple"],
        }
    }
}

/// One generated shape with ground truth.
#[derive(Debug, Clone)]
pub struct SynthShape {
    pub name: String,
    pub mesh: TriangleMesh,
    pub labels: Vec<usize>,
    pub family: Family,
}

/// Generate `count` shapes of one family, with parameters jittered per shape.
pub fn generate_family(family: Family, count: usize, target_faces: usize, seed: u64) -> Vec<SynthShape> {
    (0..count)
        .map(|i| {
            let shape_seed = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64);
            generate_shape(family, target_faces, shape_seed, i)
        })
        .collect()
}

pub fn generate_shape(family: Family, target_faces: usize, seed: u64, index: usize) -> SynthShape {
    let (mesh, labels) = match family {
        Family::Dumbbell => dumbbell(target_faces, seed),
        Family::Table => table(target_faces, seed),
        Family::Glasses => glasses(target_faces, seed),
    };
    debug_assert_eq!(mesh.face_count(), labels.len());
    SynthShape {
        name: format!("{}_{index:03}", family.name()),
        mesh,
        labels,
        family,
    }
}

/// Convenience for tests: dumbbell mesh only, roughly `target_faces` faces.
pub fn dumbbell_mesh(target_faces: usize, seed: u64) -> TriangleMesh {
    dumbbell(target_faces, seed).0
}

/// Unit icosphere: icosahedron subdivided `subdivisions` times and projected
/// to the sphere; 20 * 4^subdivisions faces (2 subdivisions = 320).
pub fn icosphere(subdivisions: usize) -> TriangleMesh {
    let t = (1.0 + 5.0f64.sqrt()) / 2.0;
    let mut vertices: Vec<Point3<f64>> = [
        (-1.0, t, 0.0),
        (1.0, t, 0.0),
        (-1.0, -t, 0.0),
        (1.0, -t, 0.0),
        (0.0, -1.0, t),
        (0.0, 1.0, t),
        (0.0, -1.0, -t),
        (0.0, 1.0, -t),
        (t, 0.0, -1.0),
        (t, 0.0, 1.0),
        (-t, 0.0, -1.0),
        (-t, 0.0, 1.0),
    ]
    .iter()
    .map(|&(x, y, z)| Point3::from(Vector3::new(x, y, z).normalize()))
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..subdivisions {
        let mut midpoint: std::collections::HashMap<(usize, usize), usize> =
            std::collections::HashMap::new();
        let mut mid = |a: usize, b: usize, vertices: &mut Vec<Point3<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let p = Point3::from(
                    ((vertices[a].coords + vertices[b].coords) * 0.5).normalize(),
                );
                vertices.push(p);
                vertices.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = mid(a, b, &mut vertices);
            let bc = mid(b, c, &mut vertices);
            let ca = mid(c, a, &mut vertices);
            next.push([a, ab, ca]);
            next.push([b, bc, ab]);
            next.push([c, ca, bc]);
            next.push([ab, bc, ca]);
        }
        faces = next;
    }

    TriangleMesh::new(vertices, faces).unwrap()
}

/// A triangle strip whose dual graph is the path 0-1-2-... with equal face
/// areas and consecutive centroid gaps exactly `gap`.
pub fn strip_mesh(count: usize, gap: f64) -> TriangleMesh {
    assert!(count >= 1);
    // Bottom vertices at (k, 0), top vertices at (k + 1/2, 1); successive
    // centroids differ by (1/2, ±1/3), so scale by gap / |(1/2, 1/3)|.
    let scale = gap / (0.25f64 + 1.0 / 9.0).sqrt();
    let cols = count / 2 + 2;
    let mut vertices = Vec::new();
    for k in 0..cols {
        vertices.push(Point3::new(k as f64 * scale, 0.0, 0.0)); // b(k) = 2k
        vertices.push(Point3::new((k as f64 + 0.5) * scale, scale, 0.0)); // t(k) = 2k+1
    }
    let b = |k: usize| 2 * k;
    let t = |k: usize| 2 * k + 1;
    let mut faces = Vec::new();
    for i in 0..count {
        if i % 2 == 0 {
            faces.push([b(i / 2), b(i / 2 + 1), t(i / 2)]);
        } else {
            let k = (i + 1) / 2;
            faces.push([b(k), t(k), t(k - 1)]);
        }
    }
    TriangleMesh::new(vertices, faces).unwrap()
}

/// Write a family to disk as OFF meshes plus `.seg` label files.
/// Returns (mesh path, label path) pairs.
pub fn write_family(
    dir: &std::path::Path,
    shapes: &[SynthShape],
) -> Result<Vec<(std::path::PathBuf, std::path::PathBuf)>> {
    std::fs::create_dir_all(dir)?;
    let mut out = Vec::new();
    for s in shapes {
        let mesh_path = dir.join(format!("{}.off", s.name));
        let seg_path = dir.join(format!("{}.seg", s.name));
        crate::mesh::save_off(&mesh_path, &s.mesh)?;
        crate::mesh::write_labels(&seg_path, &s.labels)?;
        out.push((mesh_path, seg_path));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Surface-of-revolution builder

/// Revolve a profile of (axial position, radius, label) stations around the
/// x axis with `segments` steps. Stations with radius 0 are poles; interior
/// radii must be positive. Produces a closed, consistently wound mesh when
/// both ends are poles.
fn revolve(profile: &[(f64, f64, usize)], segments: usize) -> (TriangleMesh, Vec<usize>) {
    assert!(profile.len() >= 3);
    assert!(segments >= 3);
    let n = segments;

    let mut vertices: Vec<Point3<f64>> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();

    // ring_start[i] = index of first vertex of ring i, or usize::MAX for poles
    let mut ring_start = vec![usize::MAX; profile.len()];
    for (i, &(x, r, _)) in profile.iter().enumerate() {
        if r == 0.0 {
            ring_start[i] = vertices.len();
            vertices.push(Point3::new(x, 0.0, 0.0));
        } else {
            ring_start[i] = vertices.len();
            for k in 0..n {
                let phi = 2.0 * PI * k as f64 / n as f64;
                vertices.push(Point3::new(x, r * phi.cos(), r * phi.sin()));
            }
        }
    }

    for i in 0..profile.len() - 1 {
        let (_, r0, label) = profile[i];
        let (_, r1, label1) = profile[i + 1];
        // Band faces take the label of the wider end so caps inherit the
        // adjacent segment tag; interior bands use the lower station's tag.
        let band_label = if r0 == 0.0 { label1 } else { label };
        let s0 = ring_start[i];
        let s1 = ring_start[i + 1];
        match (r0 == 0.0, r1 == 0.0) {
            (true, false) => {
                // pole fan: apex at smaller x, ring above
                for k in 0..n {
                    let a = s1 + k;
                    let b = s1 + (k + 1) % n;
                    faces.push([s0, b, a]);
                    labels.push(band_label);
                }
            }
            (false, true) => {
                for k in 0..n {
                    let a = s0 + k;
                    let b = s0 + (k + 1) % n;
                    faces.push([s1, a, b]);
                    labels.push(band_label);
                }
            }
            (false, false) => {
                for k in 0..n {
                    let k1 = (k + 1) % n;
                    let (a0, b0) = (s0 + k, s0 + k1);
                    let (a1, b1) = (s1 + k, s1 + k1);
                    faces.push([a0, b0, b1]);
                    labels.push(band_label);
                    faces.push([a0, b1, a1]);
                    labels.push(band_label);
                }
            }
            (true, true) => panic!("two adjacent poles in profile"),
        }
    }

    let mesh = TriangleMesh::new(vertices, faces).expect("revolution mesh is valid");
    (mesh, labels)
}

/// Rigidly place a part: rotate then translate every vertex.
fn place(mesh: &TriangleMesh, rot: &Rotation3<f64>, t: Vector3<f64>) -> TriangleMesh {
    mesh.transformed(rot, t)
}

/// Concatenate part meshes (disjoint components) into one shape.
fn concat(parts: &[(TriangleMesh, Vec<usize>)]) -> (TriangleMesh, Vec<usize>) {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut labels = Vec::new();
    for (mesh, part_labels) in parts {
        let offset = vertices.len();
        vertices.extend_from_slice(&mesh.vertices);
        faces.extend(
            mesh.faces
                .iter()
                .map(|f| [f[0] + offset, f[1] + offset, f[2] + offset]),
        );
        labels.extend_from_slice(part_labels);
    }
    (
        TriangleMesh::new(vertices, faces).expect("concatenated parts are valid"),
        labels,
    )
}

// ---------------------------------------------------------------------------
// Families

/// Two bulbs joined by a thinner neck; a single closed surface of revolution.
/// Labels: 0 = bulb, 1 = neck.
fn dumbbell(target_faces: usize, seed: u64) -> (TriangleMesh, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bulb_r: f64 = rng.gen_range(0.26..0.38);
    let neck_r: f64 = rng.gen_range(0.08..0.16);
    let half: f64 = 1.0 - bulb_r; // bulb centers at ±half, tips at ±1

    // Face budget: bands contribute 2 per (station gap, segment);
    // poles 1 per segment. faces ≈ 2 * segments * (stations - 2) + 2 * segments.
    let segments = (((target_faces as f64) / 60.0).sqrt().max(1.0).round() as usize * 6).min(256);
    let stations = (target_faces / (2 * segments)).max(3) + 1;

    // Neck extends where the bulb circles dip below neck_r.
    let neck_half = half - (bulb_r * bulb_r - neck_r * neck_r).sqrt();
    let profile_r = |x: f64| -> f64 {
        let left = bulb_r * bulb_r - (x + half) * (x + half);
        let right = bulb_r * bulb_r - (x - half) * (x - half);
        let bulb = left.max(right).max(0.0).sqrt();
        bulb.max(if x.abs() <= neck_half + 1e-12 { neck_r } else { 0.0 })
    };

    let mut profile = Vec::new();
    profile.push((-1.0, 0.0, 0));
    for i in 1..stations {
        let x = -1.0 + 2.0 * i as f64 / stations as f64;
        let r = profile_r(x).max(1e-3);
        let label = usize::from(x.abs() < neck_half);
        profile.push((x, r, label));
    }
    profile.push((1.0, 0.0, 0));
    revolve(&profile, segments)
}

/// A squat cylindrical top over 3 or 4 cylindrical legs; each part is a
/// closed component. Labels: 0 = top, 1 = leg.
fn table(target_faces: usize, seed: u64) -> (TriangleMesh, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top_r: f64 = rng.gen_range(0.7..0.9);
    let top_h: f64 = rng.gen_range(0.08..0.16);
    let leg_r: f64 = rng.gen_range(0.05..0.09);
    let leg_len: f64 = rng.gen_range(0.7..1.0);
    let legs: usize = if rng.gen_bool(0.5) { 3 } else { 4 };

    // Split the face budget: top gets ~40%, legs share the rest. A closed
    // cylinder with a axial bands has (2a + 2) * segments faces.
    let top_segments = ((target_faces as f64 * 0.4 / 8.0) as usize).clamp(8, 200);
    let leg_segments = ((target_faces as f64 * 0.6 / (legs as f64 * 10.0)) as usize).clamp(6, 100);

    let top = closed_cylinder(top_r, top_h, top_segments, 3, 0);
    let leg = closed_cylinder(leg_r, leg_len, leg_segments, 4, 1);

    let up = Rotation3::from_axis_angle(&Vector3::y_axis(), -PI / 2.0); // x -> z
    let mut parts = Vec::new();
    parts.push((
        place(&top.0, &up, Vector3::new(0.0, 0.0, leg_len)),
        top.1.clone(),
    ));
    let ring = top_r * 0.72;
    for k in 0..legs {
        let a = 2.0 * PI * k as f64 / legs as f64 + PI / legs as f64;
        parts.push((
            place(
                &leg.0,
                &up,
                Vector3::new(ring * a.cos(), ring * a.sin(), 0.0),
            ),
            leg.1.clone(),
        ));
    }
    concat(&parts)
}

/// Closed cylinder along +x from 0 to `len`, radius `r`, with `axial_bands`
/// subdivisions along the side wall.
fn closed_cylinder(
    r: f64,
    len: f64,
    segments: usize,
    axial_bands: usize,
    label: usize,
) -> (TriangleMesh, Vec<usize>) {
    let mut profile = vec![(0.0, 0.0, label), (0.0, r, label)];
    for i in 1..=axial_bands {
        profile.push((len * i as f64 / axial_bands as f64, r, label));
    }
    profile.push((len, 0.0, label));
    revolve(&profile, segments)
}

/// Torus around the z axis through the origin: major radius `big_r`, tube
/// radius `small_r`.
fn torus(
    big_r: f64,
    small_r: f64,
    major_segments: usize,
    minor_segments: usize,
    label: usize,
) -> (TriangleMesh, Vec<usize>) {
    let (nu, nv) = (major_segments, minor_segments);
    let mut vertices = Vec::with_capacity(nu * nv);
    for i in 0..nu {
        let u = 2.0 * PI * i as f64 / nu as f64;
        for j in 0..nv {
            let v = 2.0 * PI * j as f64 / nv as f64;
            let ring = big_r + small_r * v.cos();
            vertices.push(Point3::new(
                ring * u.cos(),
                ring * u.sin(),
                small_r * v.sin(),
            ));
        }
    }
    let at = |i: usize, j: usize| (i % nu) * nv + (j % nv);
    let mut faces = Vec::with_capacity(2 * nu * nv);
    for i in 0..nu {
        for j in 0..nv {
            let (a, b, c, d) = (at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1));
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    let labels = vec![label; faces.len()];
    (
        TriangleMesh::new(vertices, faces).expect("torus is valid"),
        labels,
    )
}

/// Two torus rims, a bridge bar, and two temple bars; five closed components.
/// Labels: 0 = rim, 1 = bridge, 2 = temple.
fn glasses(target_faces: usize, seed: u64) -> (TriangleMesh, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rim_r: f64 = rng.gen_range(0.30..0.38);
    let tube_r: f64 = rng.gen_range(0.05..0.08);
    let bar_r: f64 = rng.gen_range(0.035..0.055);
    let temple_len: f64 = rng.gen_range(0.8..1.1);

    let rim_faces = (target_faces as f64 * 0.33) as usize;
    let nv = ((rim_faces as f64 / 2.0).sqrt() * 0.75).round().clamp(6.0, 60.0) as usize;
    let nu = (rim_faces / (2 * nv)).clamp(8, 120);
    let bar_segments = ((target_faces as f64 * 0.1 / 8.0) as usize).clamp(6, 60);

    let rim = torus(rim_r, tube_r, nu, nv, 0);
    let gap = 0.5 * rim_r; // clearance between the two rims
    let cx = rim_r + tube_r + 0.5 * gap;

    let identity = Rotation3::identity();
    let mut parts = Vec::new();
    parts.push((
        place(&rim.0, &identity, Vector3::new(-cx, 0.0, 0.0)),
        rim.1.clone(),
    ));
    parts.push((
        place(&rim.0, &identity, Vector3::new(cx, 0.0, 0.0)),
        rim.1.clone(),
    ));

    // Bridge spans the gap between the rims, along x.
    let bridge_len = gap + tube_r;
    let bridge = closed_cylinder(bar_r, bridge_len, bar_segments, 3, 1);
    parts.push((
        place(&bridge.0, &identity, Vector3::new(-0.5 * bridge_len, 0.0, 0.0)),
        bridge.1.clone(),
    ));

    // Temples run backward (+y) from the outer edge of each rim.
    let temple = closed_cylinder(bar_r, temple_len, bar_segments, 4, 2);
    let to_y = Rotation3::from_axis_angle(&Vector3::z_axis(), PI / 2.0); // x -> y
    for side in [-1.0, 1.0] {
        parts.push((
            place(
                &temple.0,
                &to_y,
                Vector3::new(side * (cx + rim_r), 0.0, 0.0),
            ),
            temple.1.clone(),
        ));
    }
    concat(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{build_dual_graph, check_manifold};

    fn validate(shape: &SynthShape, expected_components: usize) {
        let report = check_manifold(&shape.mesh);
        assert!(report.is_manifold, "{} must be manifold", shape.name);
        assert_eq!(
            report.components, expected_components,
            "{} component count",
            shape.name
        );
        build_dual_graph(&shape.mesh).expect("dual graph builds");
        assert_eq!(shape.mesh.face_count(), shape.labels.len());
        let n_labels = shape.family.label_names().len();
        assert!(shape.labels.iter().all(|&l| l < n_labels));
        // every declared label actually appears
        for l in 0..n_labels {
            assert!(shape.labels.contains(&l), "{} missing label {l}", shape.name);
        }
    }

    #[test]
    fn dumbbell_is_one_manifold_component() {
        for seed in [1u64, 2, 3] {
            let s = generate_shape(Family::Dumbbell, 900, seed, 0);
            validate(&s, 1);
            let h = s.mesh.face_count();
            assert!(h > 500 && h < 1600, "face budget roughly honored, got {h}");
        }
    }

    #[test]
    fn table_components_match_leg_count() {
        for seed in [5u64, 6] {
            let s = generate_shape(Family::Table, 900, seed, 0);
            let report = check_manifold(&s.mesh);
            assert!(report.is_manifold);
            assert!(report.components == 4 || report.components == 5);
            validate(&s, report.components);
        }
    }

    #[test]
    fn glasses_have_five_components() {
        let s = generate_shape(Family::Glasses, 1200, 9, 0);
        validate(&s, 5);
    }

    #[test]
    fn generation_is_deterministic() {
        let a = generate_shape(Family::Dumbbell, 600, 42, 0);
        let b = generate_shape(Family::Dumbbell, 600, 42, 0);
        assert_eq!(a.labels, b.labels);
        assert_eq!(a.mesh.faces, b.mesh.faces);
        for (va, vb) in a.mesh.vertices.iter().zip(&b.mesh.vertices) {
            assert_eq!(va, vb);
        }
    }
}
