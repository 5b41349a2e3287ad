mod common;

use common::{all_fixture_specs, brute_force_boundary_length};
use girth::formats::{parse_obj, write_obj, write_signature_csv};
use girth::slicing::{triangle_segment, PLANE_EPS};
use girth::synthetic::inscribed_perimeter;
use girth::{boundary_length, generate, mesh_signature, slice_at, validate, FixtureSpec, Mesh, SlicePlane};
use nalgebra::{Rotation3, Unit, Vector3};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_unit(rng: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

#[test]
fn cylinder_sections_match_inscribed_polygon() {
    let fx = generate(&FixtureSpec::cylinder(0.5, 1.0, 64)).unwrap();
    let expected = inscribed_perimeter(64, 0.5);
    assert!((expected - 3.140331).abs() < 5e-7);
    let sig = mesh_signature(&fx.mesh, Vector3::y(), 0.01).unwrap();
    let interior = &sig.lengths()[1..sig.len() - 1];
    assert_eq!(interior.len(), 99);
    for len in interior {
        assert!((len - expected).abs() < 1e-9, "{len}");
    }
}

#[test]
fn cylinder_quarter_step_gives_five_slices() {
    let fx = generate(&FixtureSpec::cylinder(0.5, 1.0, 64)).unwrap();
    let sig = mesh_signature(&fx.mesh, Vector3::y(), 0.25).unwrap();
    assert_eq!(sig.offsets(), &[1.0, 0.75, 0.5, 0.25, 0.0]);
    for len in &sig.lengths()[1..4] {
        assert!((len - inscribed_perimeter(64, 0.5)).abs() < 1e-9);
    }
    // Half-open classification: the top rim is counted from below, the
    // bottom rim not at all.
    assert!((sig.lengths()[0] - inscribed_perimeter(64, 0.5)).abs() < 1e-9);
    assert_eq!(sig.lengths()[4], 0.0);

    let csv = write_signature_csv(&sig).unwrap();
    let second: Vec<&str> = csv
        .lines()
        .skip(2)
        .take(3)
        .map(|l| l.split(',').nth(1).unwrap())
        .collect();
    assert!(second.windows(2).all(|w| w[0] == w[1]), "{second:?}");
}

#[test]
fn cylinder_segment_counts() {
    // Three rings: the mid-height plane runs through a ring.
    let fx = generate(&FixtureSpec::cylinder(0.5, 1.0, 64)).unwrap();
    let on_ring = slice_at(&fx.mesh, &SlicePlane::horizontal(0.5));
    assert_eq!(on_ring.segments.len(), 64);
    // Between rings each quad contributes two collinear pieces.
    let between = slice_at(&fx.mesh, &SlicePlane::horizontal(0.3));
    assert_eq!(between.segments.len(), 128);
    assert!((boundary_length(&between) - boundary_length(&on_ring)).abs() < 1e-12);
}

#[test]
fn signature_matches_oracle_at_every_sample() {
    for spec in all_fixture_specs() {
        let fx = generate(&spec).unwrap();
        let sig = mesh_signature(&fx.mesh, Vector3::y(), 0.007).unwrap();
        // Humanoid arms add length above the armpit; compare the torso below.
        let ceiling = fx.oracle.features.map_or(f64::INFINITY, |f| f.armpit_y - 1e-9);
        let last = sig.len() - 1;
        let mut checked = 0;
        for (i, (y, len)) in sig.samples().enumerate() {
            if i == 0 || i == last || y >= ceiling {
                continue;
            }
            let expected = fx.oracle.perimeter_at(y).unwrap();
            assert!(
                (len - expected).abs() < 1e-9,
                "{}: y = {y}, got {len}, oracle {expected}",
                spec.kind_name()
            );
            checked += 1;
        }
        assert!(checked > 10);
    }
}

#[test]
fn brute_force_agrees_on_random_planes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in all_fixture_specs() {
        let fx = generate(&spec).unwrap();
        let radius = fx
            .mesh
            .vertices
            .iter()
            .map(|v| v.coords.norm())
            .fold(0.0, f64::max);
        for _ in 0..40 {
            let normal = random_unit(&mut rng);
            let offset = rng.gen_range(-radius..radius);
            let plane = SlicePlane::new(normal, offset).unwrap();
            let section = slice_at(&fx.mesh, &plane);
            for s in &section.segments {
                assert!(plane.signed_distance(&s.start).abs() <= PLANE_EPS);
                assert!(plane.signed_distance(&s.end).abs() <= PLANE_EPS);
            }
            let fast = boundary_length(&section);
            let slow = brute_force_boundary_length(&fx.mesh, normal, offset);
            assert!((fast - slow).abs() <= 1e-12, "{fast} vs {slow}");
        }
    }
}

#[test]
fn sphere_signature_peaks_at_equator_and_is_unimodal() {
    let fx = generate(&FixtureSpec::sphere(1.0, 128)).unwrap();
    let sig = mesh_signature(&fx.mesh, Vector3::y(), 0.01).unwrap();
    let (peak, _) = sig
        .samples()
        .enumerate()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
        .unwrap();
    assert!(
        sig.offsets()[peak].abs() < 1e-9,
        "peak at {}",
        sig.offsets()[peak]
    );
    assert_eq!(sig.lengths()[0], 0.0);
    assert_eq!(*sig.lengths().last().unwrap(), 0.0);
    let l = sig.lengths();
    assert!(l[..=peak].windows(2).all(|w| w[1] >= w[0] - 1e-12));
    assert!(l[peak..].windows(2).all(|w| w[1] <= w[0] + 1e-12));

    let cyl = generate(&FixtureSpec::cylinder(0.3, 2.0, 32)).unwrap();
    let sig = mesh_signature(&cyl.mesh, Vector3::y(), 0.05).unwrap();
    let l = &sig.lengths()[1..];
    assert!(l.windows(2).all(|w| w[1] <= w[0] + 1e-12));
}

#[test]
fn hourglass_minimum_at_design_height() {
    let fx = generate(&FixtureSpec::hourglass(1.0, 0.3, 0.1, 0.25)).unwrap();
    let min_ring = fx
        .oracle
        .profile
        .iter()
        .min_by(|a, b| a.perimeter.total_cmp(&b.perimeter))
        .unwrap();
    assert_eq!(min_ring.y, 0.25);
    let step = 0.003;
    let sig = mesh_signature(&fx.mesh, Vector3::y(), step).unwrap();
    let interior = 1..sig.len() - 1;
    let i = interior
        .min_by(|&a, &b| sig.lengths()[a].total_cmp(&sig.lengths()[b]))
        .unwrap();
    assert!((sig.offsets()[i] - 0.25).abs() <= step);
    assert!((sig.lengths()[i] - min_ring.perimeter).abs() <= fx.oracle.max_slope * step);
}

#[test]
fn fixtures_validate_and_round_trip_through_obj() {
    for spec in all_fixture_specs() {
        let fx = generate(&spec).unwrap();
        let report = validate(&fx.mesh);
        assert!(report.is_valid(), "{:?}", report.findings);
        let back = parse_obj(&write_obj(&fx.mesh)).unwrap();
        assert_eq!(back.triangles, fx.mesh.triangles);
        for (a, b) in back.vertices.iter().zip(&fx.mesh.vertices) {
            assert!((a - b).norm() <= 1e-12);
        }
    }
}

fn small_mesh() -> Mesh {
    generate(&FixtureSpec::hourglass(0.6, 0.2, 0.08, 0.3))
        .unwrap()
        .mesh
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn boundary_length_is_rigid_invariant_and_scales_linearly(
        axis in proptest::array::uniform3(-1.0f64..1.0),
        angle in -3.0f64..3.0,
        shift in proptest::array::uniform3(-5.0f64..5.0),
        height in 0.01f64..0.59,
        scale in 0.2f64..5.0,
    ) {
        let mesh = small_mesh();
        let plane = SlicePlane::horizontal(height);
        let base = boundary_length(&slice_at(&mesh, &plane));

        let axis = Vector3::from(axis);
        prop_assume!(axis.norm() > 1e-3);
        let rot = Rotation3::from_axis_angle(&Unit::new_normalize(axis), angle);
        let t = Vector3::from(shift);
        let moved = Mesh::new(
            mesh.vertices.iter().map(|v| rot * v + t).collect(),
            mesh.triangles.clone(),
        );
        let normal = rot * Vector3::y();
        let moved_plane = SlicePlane::new(normal, height + normal.dot(&t)).unwrap();
        let moved_len = boundary_length(&slice_at(&moved, &moved_plane));
        prop_assert!((moved_len - base).abs() < 1e-9, "{} vs {}", moved_len, base);

        let scaled = boundary_length(&slice_at(&mesh.scaled(scale), &SlicePlane::horizontal(height * scale)));
        prop_assert!((scaled - base * scale).abs() < 1e-9 * scale.max(1.0));
    }

    #[test]
    fn emitted_segments_lie_on_the_plane(
        pts in proptest::array::uniform9(-1.0f64..1.0),
        normal in proptest::array::uniform3(-1.0f64..1.0),
        offset in -1.0f64..1.0,
    ) {
        let normal = Vector3::from(normal);
        prop_assume!(normal.norm() > 1e-2);
        let plane = SlicePlane::new(normal, offset).unwrap();
        let tri = [
            nalgebra::Point3::new(pts[0], pts[1], pts[2]),
            nalgebra::Point3::new(pts[3], pts[4], pts[5]),
            nalgebra::Point3::new(pts[6], pts[7], pts[8]),
        ];
        if let Some(s) = triangle_segment(&tri, &plane) {
            prop_assert!(plane.signed_distance(&s.start).abs() <= PLANE_EPS);
            prop_assert!(plane.signed_distance(&s.end).abs() <= PLANE_EPS);
        }
    }
}
