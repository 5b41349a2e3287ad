//! Independent reference implementations used as test oracles. Nothing here
//! calls into the slicing or segmentation code it checks.

#![allow(dead_code)]

use girth::{FixtureSpec, Mesh, Skeleton};
use nalgebra::{Point3, Vector3};

/// Naive section length: per triangle, collect every edge crossing by
/// sign of distance (below = negative after snapping) and add the distance
/// between the two crossings.
pub fn brute_force_boundary_length(mesh: &Mesh, normal: Vector3<f64>, offset: f64) -> f64 {
    let n = normal.normalize();
    let mut total = 0.0;
    for tri in &mesh.triangles {
        let p = tri.map(|i| mesh.vertices[i]);
        let d = p.map(|v| {
            let raw = n.dot(&v.coords) - offset;
            if raw.abs() < 1e-12 {
                0.0
            } else {
                raw
            }
        });
        let mut hits: Vec<Point3<f64>> = Vec::with_capacity(2);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            if (d[i] < 0.0) != (d[j] < 0.0) {
                let point = if d[i] == 0.0 {
                    p[i]
                } else if d[j] == 0.0 {
                    p[j]
                } else {
                    let t = d[i] / (d[i] - d[j]);
                    Point3::from(p[i].coords * (1.0 - t) + p[j].coords * t)
                };
                hits.push(point);
            }
        }
        if hits.len() == 2 {
            total += (hits[1] - hits[0]).norm();
        }
    }
    total
}

/// Möller–Trumbore over every triangle; smallest positive parameter wins.
pub fn brute_force_first_hit(
    mesh: &Mesh,
    origin: Point3<f64>,
    dir: Vector3<f64>,
) -> Option<(f64, Point3<f64>)> {
    let mut best: Option<(f64, Point3<f64>)> = None;
    for tri in &mesh.triangles {
        let [a, b, c] = tri.map(|i| mesh.vertices[i]);
        let e1 = b - a;
        let e2 = c - a;
        let h = dir.cross(&e2);
        let det = e1.dot(&h);
        if det.abs() < 1e-300 {
            continue;
        }
        let s = origin - a;
        let u = s.dot(&h) / det;
        let q = s.cross(&e1);
        let v = dir.dot(&q) / det;
        let eps = 1e-9;
        if u < -eps || v < -eps || u + v > 1.0 + eps {
            continue;
        }
        let t = e2.dot(&q) / det;
        if t > 0.0 && best.is_none_or(|(bt, _)| t < bt) {
            best = Some((t, origin + dir * t));
        }
    }
    best
}

/// Axilla by exhaustive search: ray to the bounding-box target, then full
/// sort of all vertices by distance, then lowest y (ties: lowest index).
pub fn brute_force_axilla(mesh: &Mesh, skeleton: &Skeleton, k: usize) -> Option<(Point3<f64>, usize)> {
    let xs = mesh.vertices.iter().map(|v| v.x);
    let ys = mesh.vertices.iter().map(|v| v.y);
    let zs = mesh.vertices.iter().map(|v| v.z);
    let x_min = xs.fold(f64::INFINITY, f64::min);
    let y_min = ys.fold(f64::INFINITY, f64::min);
    let z_min = zs.clone().fold(f64::INFINITY, f64::min);
    let z_max = zs.fold(f64::NEG_INFINITY, f64::max);
    let target = Point3::new(x_min, y_min, z_min + (z_max - z_min).abs() / 2.0);
    let origin = skeleton.right_shoulder();
    let (_, hit) = brute_force_first_hit(mesh, origin, target - origin)?;

    let mut order: Vec<usize> = (0..mesh.vertices.len()).collect();
    order.sort_by(|&a, &b| {
        let da = (mesh.vertices[a] - hit).norm_squared();
        let db = (mesh.vertices[b] - hit).norm_squared();
        da.partial_cmp(&db).unwrap().then(a.cmp(&b))
    });
    order.truncate(k);
    let best = *order.iter().min_by(|&&a, &&b| {
        mesh.vertices[a]
            .y
            .partial_cmp(&mesh.vertices[b].y)
            .unwrap()
            .then(a.cmp(&b))
    })?;
    Some((mesh.vertices[best], best))
}

/// Every fixture family at a couple of resolutions.
pub fn all_fixture_specs() -> Vec<FixtureSpec> {
    let mut specs = Vec::new();
    for n in [8, 64, 256] {
        for r in [0.1, 0.5, 1.0] {
            specs.push(FixtureSpec::cylinder(r, 1.0, n));
        }
    }
    specs.push(FixtureSpec::sphere(1.0, 128));
    specs.push(FixtureSpec::sphere(0.3, 16));
    specs.push(FixtureSpec::hourglass(1.0, 0.3, 0.1, 0.25));
    specs.push(FixtureSpec::humanoid());
    specs
}
