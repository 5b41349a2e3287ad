//! Plane–mesh intersection, cross-section boundary length and the mesh
//! signature (boundary length sampled along a slicing direction).
//!
//! Vertex classification is half-open: after snapping distances below
//! [`SNAP_EPS`] to zero, a vertex is *below* the plane iff its signed
//! distance is negative. A triangle emits a segment iff it has vertices on
//! both sides, except when its only non-below vertex lies exactly on the
//! plane (a single-vertex touch). With this rule an edge lying in the plane
//! is emitted once, by the triangle below it, and coplanar triangles emit
//! nothing.

use nalgebra::{Point3, Vector3};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Signed distances with magnitude below this are treated as exactly zero.
pub const SNAP_EPS: f64 = 1e-12;

/// Maximum plane distance of any emitted segment endpoint.
pub const PLANE_EPS: f64 = 1e-9;

/// The plane `{p : p · normal = offset}` with a unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePlane {
    normal: Vector3<f64>,
    offset: f64,
}

impl SlicePlane {
    /// Normalizes `normal`; fails for zero or non-finite vectors.
    pub fn new(normal: Vector3<f64>, offset: f64) -> Result<Self> {
        Ok(Self {
            normal: unit_normal(normal)?,
            offset,
        })
    }

    /// Plane parallel to the floor at height `y`.
    pub fn horizontal(y: f64) -> Self {
        Self {
            normal: Vector3::y(),
            offset: y,
        }
    }

    pub fn normal(&self) -> Vector3<f64> {
        self.normal
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    #[inline]
    pub fn signed_distance(&self, p: &Point3<f64>) -> f64 {
        self.normal.dot(&p.coords) - self.offset
    }
}

pub(crate) fn unit_normal(normal: Vector3<f64>) -> Result<Vector3<f64>> {
    let norm = normal.norm();
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::InvalidNormal);
    }
    Ok(normal / norm)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub start: Point3<f64>,
    pub end: Point3<f64>,
}

impl Segment {
    pub fn length(&self) -> f64 {
        (self.end - self.start).norm()
    }
}

/// Unordered set of segments where a plane cuts a mesh. Segments are not
/// chained into loops; a section may have several components.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    pub plane: SlicePlane,
    pub segments: Vec<Segment>,
}

impl CrossSection {
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn boundary_length(&self) -> f64 {
        boundary_length(self)
    }
}

#[inline]
fn snap(d: f64) -> f64 {
    if d.abs() < SNAP_EPS {
        0.0
    } else {
        d
    }
}

/// Point where edge `a -> b` crosses the plane, `a` strictly below.
#[inline]
fn crossing(a: &Point3<f64>, da: f64, b: &Point3<f64>, db: f64) -> Point3<f64> {
    if db == 0.0 {
        return *b;
    }
    let t = da / (da - db);
    a + (b - a) * t
}

/// Segment where one triangle crosses the plane, if any.
#[inline]
pub fn triangle_segment(tri: &[Point3<f64>; 3], plane: &SlicePlane) -> Option<Segment> {
    let d = [
        snap(plane.signed_distance(&tri[0])),
        snap(plane.signed_distance(&tri[1])),
        snap(plane.signed_distance(&tri[2])),
    ];
    let below = [d[0] < 0.0, d[1] < 0.0, d[2] < 0.0];
    let below_count = below.iter().filter(|&&b| b).count();
    match below_count {
        0 | 3 => None,
        2 => {
            // Lone vertex on the non-below side.
            let apex = below.iter().position(|&b| !b)?;
            if d[apex] == 0.0 {
                return None;
            }
            let (i, j) = ((apex + 1) % 3, (apex + 2) % 3);
            Some(Segment {
                start: crossing(&tri[i], d[i], &tri[apex], d[apex]),
                end: crossing(&tri[j], d[j], &tri[apex], d[apex]),
            })
        }
        _ => {
            let low = below.iter().position(|&b| b)?;
            let (i, j) = ((low + 1) % 3, (low + 2) % 3);
            Some(Segment {
                start: crossing(&tri[low], d[low], &tri[i], d[i]),
                end: crossing(&tri[low], d[low], &tri[j], d[j]),
            })
        }
    }
}

pub fn slice_at(mesh: &Mesh, plane: &SlicePlane) -> CrossSection {
    let segments = (0..mesh.triangle_count())
        .filter_map(|t| triangle_segment(&mesh.triangle(t), plane))
        .collect();
    CrossSection {
        plane: *plane,
        segments,
    }
}

/// Sum of segment lengths over every component of the section.
pub fn boundary_length(section: &CrossSection) -> f64 {
    section.segments.iter().map(Segment::length).sum()
}

/// Boundary length sampled from the top of the mesh to its bottom along a
/// slicing direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Signature {
    step: f64,
    normal: Vector3<f64>,
    offsets: Vec<f64>,
    lengths: Vec<f64>,
}

impl Signature {
    /// Assembles a signature from samples. Offsets must be strictly
    /// decreasing and lengths finite and non-negative.
    pub fn from_samples(
        step: f64,
        normal: Vector3<f64>,
        offsets: Vec<f64>,
        lengths: Vec<f64>,
    ) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(Error::NonPositiveStep);
        }
        if offsets.is_empty() {
            return Err(Error::EmptySignature);
        }
        if offsets.len() != lengths.len() {
            return Err(Error::InvalidMesh(format!(
                "signature has {} offsets but {} lengths",
                offsets.len(),
                lengths.len()
            )));
        }
        if offsets.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::InvalidMesh(
                "signature offsets must be strictly decreasing".into(),
            ));
        }
        if lengths.iter().any(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::InvalidMesh(
                "signature lengths must be finite and non-negative".into(),
            ));
        }
        Ok(Self {
            step,
            normal: unit_normal(normal)?,
            offsets,
            lengths,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn normal(&self) -> Vector3<f64> {
        self.normal
    }

    /// Slice offsets, top first.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// `(offset, boundary_length)` pairs, top first.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.offsets.iter().copied().zip(self.lengths.iter().copied())
    }
}

/// Slicing vector `[top, top - step, ..., bottom]`. The bottom is always the
/// last entry, even when the extent is not a multiple of `step`.
pub fn slice_offsets(top: f64, bottom: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonPositiveStep);
    }
    // Samples closer than this to the bottom collapse into it.
    let merge = step * 1e-6;
    let mut offsets = Vec::new();
    let mut i = 0u64;
    loop {
        let q = top - i as f64 * step;
        if q <= bottom + merge {
            break;
        }
        offsets.push(q);
        i += 1;
    }
    if offsets.is_empty() || bottom < top {
        offsets.push(bottom);
    }
    Ok(offsets)
}

/// Samples the boundary length of `mesh` every `step` meters along `normal`,
/// from the top of the mesh down to its bottom.
///
/// Every entry equals `boundary_length(&slice_at(mesh, plane))` bit for bit;
/// triangles are only pre-filtered by their extent along the normal.
pub fn mesh_signature(mesh: &Mesh, normal: Vector3<f64>, step: f64) -> Result<Signature> {
    let normal = unit_normal(normal)?;
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonPositiveStep);
    }
    if mesh.vertices.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let heights: Vec<f64> = mesh.vertices.iter().map(|v| normal.dot(&v.coords)).collect();
    let top = heights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bottom = heights.iter().copied().fold(f64::INFINITY, f64::min);
    let offsets = slice_offsets(top, bottom, step)?;
    let last = offsets.len() - 1;

    // Candidate triangles per slice, in triangle order.
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); offsets.len()];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let h = tri.map(|i| heights[i]);
        let lo = h[0].min(h[1]).min(h[2]);
        let hi = h[0].max(h[1]).max(h[2]);
        // Widened by one slice on each side; exact filtering happens in
        // triangle_segment. The bottom slice sits within one step of the
        // previous one, so the clamped range reaches it when relevant.
        let first = (((top - hi) / step).floor() - 1.0).max(0.0) as usize;
        let end = (((top - lo) / step).ceil() + 1.0).max(0.0) as usize;
        for bucket in buckets.iter_mut().take(end.min(last) + 1).skip(first) {
            bucket.push(t);
        }
    }

    let sample = |(offset, candidates): (&f64, &Vec<usize>)| -> f64 {
        let plane = SlicePlane {
            normal,
            offset: *offset,
        };
        candidates
            .iter()
            .filter_map(|&t| triangle_segment(&mesh.triangle(t), &plane))
            .map(|s| s.length())
            .sum()
    };

    #[cfg(feature = "parallel")]
    let lengths: Vec<f64> = offsets.par_iter().zip(buckets.par_iter()).map(sample).collect();
    #[cfg(not(feature = "parallel"))]
    let lengths: Vec<f64> = offsets.iter().zip(buckets.iter()).map(sample).collect();

    Ok(Signature {
        step,
        normal,
        offsets,
        lengths,
    })
}
