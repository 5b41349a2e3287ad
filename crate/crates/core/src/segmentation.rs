//! Axilla recognition and chest / waist / pelvis region construction.
//!
//! The chest region is bounded above by the armpit, found by casting a ray
//! from the right shoulder joint toward the lower right edge of the bounding
//! box and taking the lowest of the vertices nearest to where the ray leaves
//! the body. The remaining bounds come straight from joint heights.

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Region, Result};
use crate::mesh::{bounding_box, Mesh};
use crate::skeleton::{Skeleton, PELVIS, R_HIP, SPINE1};

/// Barycentric slack of the ray–triangle test.
pub const RAY_EPS: f64 = 1e-12;

/// Neighbor count used to refine the ray hit into the axilla point.
pub const DEFAULT_KNN: usize = 80;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub origin: Point3<f64>,
    pub direction: Vector3<f64>,
}

impl Ray {
    pub fn through(origin: Point3<f64>, target: Point3<f64>) -> Self {
        Self {
            origin,
            direction: target - origin,
        }
    }

    pub fn at(&self, t: f64) -> Point3<f64> {
        self.origin + self.direction * t
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayHit {
    /// Ray parameter, in units of `direction`.
    pub t: f64,
    pub triangle: usize,
    pub point: Point3<f64>,
}

/// Watertight ray–triangle test (shear-and-scale into ray space, then
/// signed edge functions). Barycentric coordinates may undershoot zero by
/// [`RAY_EPS`], so rays through shared edges hit both neighbors. Only hits
/// with `t > 0` are reported.
pub fn intersect_triangle(ray: &Ray, tri: &[Point3<f64>; 3]) -> Option<(f64, Point3<f64>)> {
    let d = ray.direction;
    let kz = d.iamax();
    if d[kz] == 0.0 {
        return None;
    }
    let kx = (kz + 1) % 3;
    let ky = (kx + 1) % 3;
    let shear_x = -d[kx] / d[kz];
    let shear_y = -d[ky] / d[kz];
    let scale_z = 1.0 / d[kz];

    let local = tri.map(|p| {
        let rel = p - ray.origin;
        Vector3::new(
            rel[kx] + shear_x * rel[kz],
            rel[ky] + shear_y * rel[kz],
            rel[kz] * scale_z,
        )
    });
    let [p0, p1, p2] = local;
    let e0 = p1.x * p2.y - p1.y * p2.x;
    let e1 = p2.x * p0.y - p2.y * p0.x;
    let e2 = p0.x * p1.y - p0.y * p1.x;
    let det = e0 + e1 + e2;
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let b = [e0 / det, e1 / det, e2 / det];
    if b.iter().any(|&w| w < -RAY_EPS) {
        return None;
    }
    let t = (e0 * p0.z + e1 * p1.z + e2 * p2.z) / det;
    if !(t > 0.0) {
        return None;
    }
    let point = Point3::from(tri[0].coords * b[0] + tri[1].coords * b[1] + tri[2].coords * b[2]);
    Some((t, point))
}

/// Nearest hit with positive ray parameter; ties go to the lowest triangle
/// index.
pub fn first_hit(mesh: &Mesh, ray: &Ray) -> Option<RayHit> {
    let mut best: Option<RayHit> = None;
    for triangle in 0..mesh.triangle_count() {
        if let Some((t, point)) = intersect_triangle(ray, &mesh.triangle(triangle)) {
            if best.is_none_or(|b| t < b.t) {
                best = Some(RayHit { t, triangle, point });
            }
        }
    }
    best
}

/// Indices of the `k` vertices closest to `query` (Euclidean), ordered by
/// distance then index. Returns every vertex when fewer than `k` exist.
pub fn nearest_vertices(vertices: &[Point3<f64>], query: &Point3<f64>, k: usize) -> Vec<usize> {
    let mut keyed: Vec<(f64, usize)> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| ((v - query).norm_squared(), i))
        .collect();
    let by_key = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    if k < keyed.len() {
        keyed.select_nth_unstable_by(k, by_key);
        keyed.truncate(k);
    }
    keyed.sort_unstable_by(by_key);
    keyed.into_iter().map(|(_, i)| i).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxillaResult {
    /// Right shoulder joint.
    pub origin: Point3<f64>,
    /// Middle of the lower right bounding-box edge.
    pub target: Point3<f64>,
    /// Where the ray leaves the body.
    pub hit: Point3<f64>,
    pub hit_triangle: usize,
    /// Lowest vertex among the neighbors of `hit`.
    pub point: Point3<f64>,
    pub vertex: usize,
    pub neighbor_count: usize,
}

/// Ray target: `(x_min, y_min, z_min + |z_max - z_min| / 2)`.
pub fn axilla_ray_target(mesh: &Mesh) -> Result<Point3<f64>> {
    let bb = bounding_box(mesh)?;
    Ok(Point3::new(
        bb.min.x,
        bb.min.y,
        bb.min.z + (bb.max.z - bb.min.z).abs() / 2.0,
    ))
}

/// Locates the right axilla on an LSA-aligned mesh.
pub fn locate_axilla(mesh: &Mesh, skeleton: &Skeleton, k: usize) -> Result<AxillaResult> {
    if k == 0 {
        return Err(Error::ZeroNeighbors);
    }
    let origin = skeleton.right_shoulder();
    let target = axilla_ray_target(mesh)?;
    let ray = Ray::through(origin, target);
    let hit = first_hit(mesh, &ray).ok_or(Error::AxillaRayMissed)?;

    if mesh.vertex_count() < k {
        log::warn!(
            "mesh has {} vertices, fewer than k = {k}; using all of them",
            mesh.vertex_count()
        );
    }
    let neighbors = nearest_vertices(&mesh.vertices, &hit.point, k);
    let vertex = neighbors
        .iter()
        .copied()
        .min_by(|&a, &b| mesh.vertices[a].y.total_cmp(&mesh.vertices[b].y).then(a.cmp(&b)))
        .ok_or(Error::EmptyMesh)?;

    Ok(AxillaResult {
        origin,
        target,
        hit: hit.point,
        hit_triangle: hit.triangle,
        point: mesh.vertices[vertex],
        vertex,
        neighbor_count: neighbors.len(),
    })
}

/// Half-open interval `[lower, upper)` along y.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    #[inline]
    pub fn contains(&self, y: f64) -> bool {
        self.lower <= y && y < self.upper
    }

    pub fn is_empty(&self) -> bool {
        !(self.upper > self.lower)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Regions {
    /// `[y(Spine1), y(axilla))`
    pub chest: Interval,
    /// `[y(Pelvis), y(Spine1))`
    pub waist: Interval,
    /// `[y(R_Hip), y(Pelvis))`
    pub pelvis: Interval,
}

impl Regions {
    pub fn get(&self, region: Region) -> Interval {
        match region {
            Region::Chest => self.chest,
            Region::Waist => self.waist,
            Region::Pelvis => self.pelvis,
        }
    }

    /// Region containing `y`, if any.
    pub fn classify(&self, y: f64) -> Option<Region> {
        [Region::Chest, Region::Waist, Region::Pelvis]
            .into_iter()
            .find(|&r| self.get(r).contains(y))
    }
}

/// Builds the three regions from the axilla height and the Spine1, Pelvis
/// and R_Hip joint heights, which must be strictly descending.
pub fn segment_regions(skeleton: &Skeleton, axilla: &AxillaResult) -> Result<Regions> {
    let bounds = [
        ("axilla", axilla.point.y),
        (SPINE1, skeleton.spine1().y),
        (PELVIS, skeleton.pelvis().y),
        (R_HIP, skeleton.right_hip().y),
    ];
    for pair in bounds.windows(2) {
        let ((upper, upper_y), (lower, lower_y)) = (pair[0], pair[1]);
        if !(upper_y > lower_y) {
            return Err(Error::RegionOrder {
                upper,
                upper_y,
                lower,
                lower_y,
            });
        }
    }
    let [axilla_y, spine_y, pelvis_y, hip_y] = bounds.map(|(_, y)| y);
    Ok(Regions {
        chest: Interval {
            lower: spine_y,
            upper: axilla_y,
        },
        waist: Interval {
            lower: pelvis_y,
            upper: spine_y,
        },
        pelvis: Interval {
            lower: hip_y,
            upper: pelvis_y,
        },
    })
}
