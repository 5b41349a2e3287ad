//! Triangle-soup mesh, axis-aligned bounds and signed-permutation axis maps.
//!
//! Meshes are never required to be manifold or watertight: every operation
//! downstream only needs the list of triangles.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Result};

/// Triangulated boundary representation, coordinates in meters.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh {
    pub vertices: Vec<Point3<f64>>,
    pub triangles: Vec<[usize; 3]>,
}

impl Mesh {
    pub fn new(vertices: Vec<Point3<f64>>, triangles: Vec<[usize; 3]>) -> Self {
        Self { vertices, triangles }
    }

    /// Builds a mesh and rejects it if [`validate`] reports any finding.
    pub fn checked(vertices: Vec<Point3<f64>>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mesh = Self::new(vertices, triangles);
        let report = validate(&mesh);
        match report.findings.first() {
            None => Ok(mesh),
            Some(first) => Err(Error::InvalidMesh(first.to_string())),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    #[inline]
    pub fn triangle(&self, index: usize) -> [Point3<f64>; 3] {
        let [a, b, c] = self.triangles[index];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn translated(&self, offset: Vector3<f64>) -> Mesh {
        Mesh {
            vertices: self.vertices.iter().map(|v| v + offset).collect(),
            triangles: self.triangles.clone(),
        }
    }

    /// Uniform scaling about the origin.
    pub fn scaled(&self, factor: f64) -> Mesh {
        Mesh {
            vertices: self.vertices.iter().map(|v| v * factor).collect(),
            triangles: self.triangles.clone(),
        }
    }

    /// Appends `other`, re-indexing its triangles. No vertices are merged.
    pub fn append(&mut self, other: &Mesh) {
        let base = self.vertices.len();
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles.extend(
            other
                .triangles
                .iter()
                .map(|[a, b, c]| [a + base, b + base, c + base]),
        );
    }
}

/// A single violation (or warning) found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Finding {
    TooFewVertices { count: usize },
    NoTriangles,
    IndexOutOfRange { triangle: usize, index: usize },
    NonFiniteVertex { vertex: usize },
    RepeatedIndex { triangle: usize },
    ZeroArea { triangle: usize },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::TooFewVertices { count } => {
                write!(f, "mesh has {count} vertices, at least 3 required")
            }
            Finding::NoTriangles => f.write_str("mesh has no triangles"),
            Finding::IndexOutOfRange { triangle, index } => {
                write!(f, "triangle {triangle} references out-of-range vertex {index}")
            }
            Finding::NonFiniteVertex { vertex } => {
                write!(f, "vertex {vertex} has a non-finite coordinate")
            }
            Finding::RepeatedIndex { triangle } => {
                write!(f, "triangle {triangle} repeats a vertex index")
            }
            Finding::ZeroArea { triangle } => write!(f, "triangle {triangle} has zero area"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    /// Invariant violations. Empty iff the mesh is valid.
    pub findings: Vec<Finding>,
    /// Zero-area triangles with distinct indices. They are harmless to
    /// slicing and do not make the mesh invalid.
    pub warnings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

pub fn validate(mesh: &Mesh) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = mesh.vertices.len();
    if n < 3 {
        report.findings.push(Finding::TooFewVertices { count: n });
    }
    if mesh.triangles.is_empty() {
        report.findings.push(Finding::NoTriangles);
    }
    for (vertex, p) in mesh.vertices.iter().enumerate() {
        if !p.coords.iter().all(|c| c.is_finite()) {
            report.findings.push(Finding::NonFiniteVertex { vertex });
        }
    }
    for (triangle, tri) in mesh.triangles.iter().enumerate() {
        let mut in_range = true;
        for &index in tri {
            if index >= n {
                report.findings.push(Finding::IndexOutOfRange { triangle, index });
                in_range = false;
            }
        }
        let [a, b, c] = *tri;
        if a == b || b == c || a == c {
            report.findings.push(Finding::RepeatedIndex { triangle });
        } else if in_range {
            let [pa, pb, pc] = [mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]];
            if (pb - pa).cross(&(pc - pa)).norm_squared() == 0.0 {
                report.warnings.push(Finding::ZeroArea { triangle });
            }
        }
    }
    report
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point3<f64>,
    pub max: Point3<f64>,
}

impl Aabb {
    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a Point3<f64>>) -> Option<Self> {
        let mut iter = points.into_iter();
        let first = *iter.next()?;
        let (min, max) = iter.fold((first, first), |(lo, hi), p| (lo.inf(p), hi.sup(p)));
        Some(Aabb { min, max })
    }

    pub fn extent(&self) -> Vector3<f64> {
        self.max - self.min
    }

    pub fn contains(&self, p: &Point3<f64>) -> bool {
        (0..3).all(|i| self.min[i] <= p[i] && p[i] <= self.max[i])
    }
}

pub fn bounding_box(mesh: &Mesh) -> Result<Aabb> {
    Aabb::from_points(&mesh.vertices).ok_or(Error::EmptyMesh)
}

/// Signed permutation of the coordinate axes.
///
/// Output axis `i` takes `sign[i] * input[source[i]]`. Written as
/// comma-separated signed axis names, e.g. `x,z,-y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AxisMap {
    source: [usize; 3],
    negate: [bool; 3],
}

impl Default for AxisMap {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl AxisMap {
    pub const IDENTITY: AxisMap = AxisMap {
        source: [0, 1, 2],
        negate: [false; 3],
    };

    pub fn new(source: [usize; 3], negate: [bool; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for &s in &source {
            if s > 2 || seen[s] {
                return Err(Error::InvalidAxisMap(format!(
                    "{source:?} is not a permutation of the three axes"
                )));
            }
            seen[s] = true;
        }
        Ok(Self { source, negate })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn inverse(&self) -> AxisMap {
        let mut source = [0; 3];
        let mut negate = [false; 3];
        for out in 0..3 {
            source[self.source[out]] = out;
            negate[self.source[out]] = self.negate[out];
        }
        AxisMap { source, negate }
    }

    /// +1 for a proper rotation, -1 for an improper one.
    pub fn determinant(&self) -> i32 {
        let [a, b, c] = self.source;
        let inversions = (a > b) as u8 + (a > c) as u8 + (b > c) as u8;
        let flips = self.negate.iter().filter(|&&n| n).count() as u8;
        if (inversions + flips).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn apply(&self, p: &Point3<f64>) -> Point3<f64> {
        let pick = |i: usize| {
            let v = p[self.source[i]];
            if self.negate[i] {
                -v
            } else {
                v
            }
        };
        Point3::new(pick(0), pick(1), pick(2))
    }
}

impl FromStr for AxisMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::InvalidAxisMap(format!(
                "expected three comma-separated axes, got {s:?}"
            )));
        }
        let mut source = [0; 3];
        let mut negate = [false; 3];
        for (i, part) in parts.iter().enumerate() {
            let (neg, name) = match part.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, part.strip_prefix('+').unwrap_or(part)),
            };
            source[i] = match name {
                "x" | "X" => 0,
                "y" | "Y" => 1,
                "z" | "Z" => 2,
                other => {
                    return Err(Error::InvalidAxisMap(format!("unknown axis {other:?}")));
                }
            };
            negate[i] = neg;
        }
        AxisMap::new(source, negate)
    }
}

impl fmt::Display for AxisMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 3] = ["x", "y", "z"];
        for i in 0..3 {
            if i > 0 {
                f.write_str(",")?;
            }
            if self.negate[i] {
                f.write_str("-")?;
            }
            f.write_str(NAMES[self.source[i]])?;
        }
        Ok(())
    }
}

/// Re-expresses the mesh in LSA axes (x right-to-left, y inferior-to-superior,
/// z posterior-to-anterior). Topology is untouched.
pub fn lsa_align(mesh: &Mesh, map: &AxisMap) -> Mesh {
    Mesh {
        vertices: mesh.vertices.iter().map(|p| map.apply(p)).collect(),
        triangles: mesh.triangles.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_triangle() -> Mesh {
        Mesh::new(
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.0, 1.0, 0.0),
            ],
            vec![[0, 1, 2]],
        )
    }

    fn unit_cube_corners() -> Mesh {
        let mut vertices = Vec::new();
        for i in 0..8 {
            vertices.push(Point3::new(
                (i & 1) as f64,
                ((i >> 1) & 1) as f64,
                ((i >> 2) & 1) as f64,
            ));
        }
        Mesh::new(vertices, vec![[0, 1, 2], [5, 6, 7]])
    }

    #[test]
    fn minimal_triangle_is_valid() {
        let report = validate(&unit_triangle());
        assert!(report.is_valid());
        assert!(report.warnings.is_empty());
    }

    #[test]
    fn out_of_range_index_is_reported() {
        let mut mesh = unit_triangle();
        mesh.triangles[0] = [0, 1, 99];
        let report = validate(&mesh);
        assert_eq!(
            report.findings,
            vec![Finding::IndexOutOfRange {
                triangle: 0,
                index: 99
            }]
        );
    }

    #[test]
    fn non_finite_vertex_is_reported() {
        let mut mesh = unit_triangle();
        mesh.vertices[1].y = f64::NAN;
        let report = validate(&mesh);
        assert_eq!(report.findings, vec![Finding::NonFiniteVertex { vertex: 1 }]);
    }

    #[test]
    fn repeated_index_and_empty_mesh() {
        let mut mesh = unit_triangle();
        mesh.triangles[0] = [0, 0, 2];
        assert_eq!(
            validate(&mesh).findings,
            vec![Finding::RepeatedIndex { triangle: 0 }]
        );
        let report = validate(&Mesh::default());
        assert_eq!(
            report.findings,
            vec![Finding::TooFewVertices { count: 0 }, Finding::NoTriangles]
        );
    }

    #[test]
    fn zero_area_triangle_only_warns() {
        let mesh = Mesh::new(
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(2.0, 0.0, 0.0),
            ],
            vec![[0, 1, 2]],
        );
        let report = validate(&mesh);
        assert!(report.is_valid());
        assert_eq!(report.warnings, vec![Finding::ZeroArea { triangle: 0 }]);
    }

    #[test]
    fn bounding_box_examples() {
        let cube = bounding_box(&unit_cube_corners()).unwrap();
        assert_eq!(cube.min, Point3::new(0.0, 0.0, 0.0));
        assert_eq!(cube.max, Point3::new(1.0, 1.0, 1.0));

        let tri = Mesh::new(
            vec![
                Point3::new(0.0, 0.0, 0.0),
                Point3::new(1.0, 0.0, 0.0),
                Point3::new(0.0, 2.0, 3.0),
            ],
            vec![[0, 1, 2]],
        );
        let bb = bounding_box(&tri).unwrap();
        assert_eq!(bb.min, Point3::new(0.0, 0.0, 0.0));
        assert_eq!(bb.max, Point3::new(1.0, 2.0, 3.0));

        assert_eq!(bounding_box(&Mesh::default()), Err(Error::EmptyMesh));
    }

    #[test]
    fn axis_map_examples() {
        let mesh = unit_triangle();
        assert_eq!(lsa_align(&mesh, &AxisMap::IDENTITY), mesh);

        let swap: AxisMap = "x,z,y".parse().unwrap();
        assert_eq!(
            swap.apply(&Point3::new(1.0, 2.0, 3.0)),
            Point3::new(1.0, 3.0, 2.0)
        );

        let flip_z: AxisMap = "x,y,-z".parse().unwrap();
        let twice = lsa_align(&lsa_align(&unit_cube_corners(), &flip_z), &flip_z);
        assert_eq!(twice, unit_cube_corners());
        assert_eq!(flip_z.determinant(), -1);
        assert_eq!(swap.determinant(), -1);
        assert_eq!("z,x,y".parse::<AxisMap>().unwrap().determinant(), 1);
    }

    #[test]
    fn axis_map_rejects_bad_strings() {
        for bad in ["x,y", "x,x,z", "x,y,w", "x,y,z,x"] {
            assert!(matches!(bad.parse::<AxisMap>(), Err(Error::InvalidAxisMap(_))));
        }
    }

    fn arb_axis_map() -> impl Strategy<Value = AxisMap> {
        (
            Just([0usize, 1, 2]).prop_shuffle(),
            proptest::array::uniform3(any::<bool>()),
        )
            .prop_map(|(perm, neg)| AxisMap::new([perm[0], perm[1], perm[2]], neg).unwrap())
    }

    fn arb_point() -> impl Strategy<Value = Point3<f64>> {
        proptest::array::uniform3(-100.0f64..100.0).prop_map(|[x, y, z]| Point3::new(x, y, z))
    }

    proptest! {
        #[test]
        fn axis_map_inverse_is_exact(map in arb_axis_map(), p in arb_point(), q in arb_point()) {
            let inv = map.inverse();
            prop_assert_eq!(inv.apply(&map.apply(&p)), p);
            prop_assert_eq!(map.apply(&inv.apply(&p)), p);
            prop_assert_eq!(map.to_string().parse::<AxisMap>().unwrap(), map);
            let before = (p - q).norm();
            let after = (map.apply(&p) - map.apply(&q)).norm();
            // Only the summation order of the squared components changes.
            prop_assert!((before - after).abs() <= 1e-12 * before.max(1.0));
        }

        #[test]
        fn bounding_box_is_equivariant(
            pts in proptest::collection::vec(arb_point(), 3..20),
            shift in arb_point(),
            scale in 0.1f64..10.0,
        ) {
            let mesh = Mesh::new(pts, vec![[0, 1, 2]]);
            let bb = bounding_box(&mesh).unwrap();
            let moved = bounding_box(&mesh.translated(shift.coords)).unwrap();
            prop_assert!((moved.min - (bb.min + shift.coords)).norm() < 1e-9);
            prop_assert!((moved.max - (bb.max + shift.coords)).norm() < 1e-9);
            let scaled = bounding_box(&mesh.scaled(scale)).unwrap();
            prop_assert!((scaled.extent() - bb.extent() * scale).norm() < 1e-9);
        }
    }
}
