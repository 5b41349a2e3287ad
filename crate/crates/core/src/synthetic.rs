//! Procedural fixtures with closed-form cross sections.
//!
//! Every fixture is built from surfaces of revolution whose vertices sit on
//! rings perpendicular to the axis, all rings sharing the same angular
//! positions. A horizontal plane between two rings then cuts each quad along
//! a straight chord (the point on the quad diagonal is collinear with the
//! two edge points), so the section of an `n`-segment body at height `y` is
//! exactly the regular `n`-gon of radius `r(y)`, where `r` interpolates the
//! ring radii linearly:
//!
//! ```text
//! P(y) = 2 n r(y) sin(pi / n)
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::{Point3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::skeleton::{Skeleton, PELVIS, R_HIP, R_SHOULDER, SPINE1};

/// Perimeter of the regular `segments`-gon inscribed in a circle of `radius`.
pub fn inscribed_perimeter(segments: usize, radius: f64) -> f64 {
    let n = segments as f64;
    2.0 * n * radius * (PI / n).sin()
}

/// Shape and resolution of a generated fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureSpec {
    #[serde(flatten)]
    pub kind: FixtureKind,
    /// Vertices per ring (radial resolution).
    pub segments: usize,
    /// Rings along the axis, end rings and poles included.
    pub rings: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixtureKind {
    /// Capped cylinder standing on y = 0.
    Cylinder { radius: f64, height: f64 },
    /// UV sphere centred at the origin, poles on the y axis.
    Sphere { radius: f64 },
    /// Capped body on y in [0, height], radius easing from `end_radius` down
    /// to `waist_radius` at `waist_y` and back.
    Hourglass {
        height: f64,
        end_radius: f64,
        waist_radius: f64,
        waist_y: f64,
    },
    /// Torso of revolution with horizontal arm tubes.
    HumanoidProxy(HumanoidParams),
}

impl FixtureSpec {
    pub fn cylinder(radius: f64, height: f64, segments: usize) -> Self {
        Self {
            kind: FixtureKind::Cylinder { radius, height },
            segments,
            rings: 3,
        }
    }

    pub fn sphere(radius: f64, segments: usize) -> Self {
        Self {
            kind: FixtureKind::Sphere { radius },
            segments,
            rings: segments / 2 + 1,
        }
    }

    pub fn hourglass(height: f64, end_radius: f64, waist_radius: f64, waist_y: f64) -> Self {
        Self {
            kind: FixtureKind::Hourglass {
                height,
                end_radius,
                waist_radius,
                waist_y,
            },
            segments: 64,
            rings: 101,
        }
    }

    /// Humanoid proxy with 6890 vertices.
    pub fn humanoid() -> Self {
        Self::humanoid_with(HumanoidParams::default())
    }

    pub fn humanoid_with(params: HumanoidParams) -> Self {
        Self {
            kind: FixtureKind::HumanoidProxy(params),
            segments: 64,
            rings: 82,
        }
    }

    /// The same shape with every length multiplied by `factor`; the
    /// resolution is unchanged.
    pub fn scaled(&self, factor: f64) -> Self {
        let kind = match &self.kind {
            FixtureKind::Cylinder { radius, height } => FixtureKind::Cylinder {
                radius: radius * factor,
                height: height * factor,
            },
            FixtureKind::Sphere { radius } => FixtureKind::Sphere {
                radius: radius * factor,
            },
            FixtureKind::Hourglass {
                height,
                end_radius,
                waist_radius,
                waist_y,
            } => FixtureKind::Hourglass {
                height: height * factor,
                end_radius: end_radius * factor,
                waist_radius: waist_radius * factor,
                waist_y: waist_y * factor,
            },
            FixtureKind::HumanoidProxy(p) => FixtureKind::HumanoidProxy(HumanoidParams {
                height: p.height * factor,
                base_radius: p.base_radius * factor,
                hip_y: p.hip_y * factor,
                hip_radius: p.hip_radius * factor,
                waist_y: p.waist_y * factor,
                waist_radius: p.waist_radius * factor,
                chest_y: p.chest_y * factor,
                chest_radius: p.chest_radius * factor,
                armpit_y: p.armpit_y * factor,
                shoulder_radius: p.shoulder_radius * factor,
                neck_y: p.neck_y * factor,
                neck_radius: p.neck_radius * factor,
                arm_radius: p.arm_radius * factor,
                arm_root: p.arm_root * factor,
                arm_reach: p.arm_reach * factor,
                arm_segments: p.arm_segments,
                arm_rings: p.arm_rings,
                hip_joint_y: p.hip_joint_y * factor,
                pelvis_joint_y: p.pelvis_joint_y * factor,
                spine_joint_y: p.spine_joint_y * factor,
                shoulder_joint_x: p.shoulder_joint_x * factor,
            }),
        };
        Self {
            kind,
            segments: self.segments,
            rings: self.rings,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            FixtureKind::Cylinder { .. } => "cylinder",
            FixtureKind::Sphere { .. } => "sphere",
            FixtureKind::Hourglass { .. } => "hourglass",
            FixtureKind::HumanoidProxy(_) => "humanoid_proxy",
        }
    }
}

/// Dimensions of the humanoid proxy, in meters. The torso profile eases
/// (half-cosine) between knots so every knot is a local extremum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct HumanoidParams {
    pub height: f64,
    pub base_radius: f64,
    pub hip_y: f64,
    pub hip_radius: f64,
    pub waist_y: f64,
    pub waist_radius: f64,
    pub chest_y: f64,
    pub chest_radius: f64,
    /// Height of the arm underside where it meets the torso.
    pub armpit_y: f64,
    pub shoulder_radius: f64,
    pub neck_y: f64,
    pub neck_radius: f64,
    pub arm_radius: f64,
    /// Distance from the torso axis to the arm's open end.
    pub arm_root: f64,
    /// Distance from the torso axis to the fingertips.
    pub arm_reach: f64,
    pub arm_segments: usize,
    pub arm_rings: usize,
    pub hip_joint_y: f64,
    pub pelvis_joint_y: f64,
    pub spine_joint_y: f64,
    /// Distance of the shoulder joints from the torso axis.
    pub shoulder_joint_x: f64,
}

impl Default for HumanoidParams {
    fn default() -> Self {
        Self {
            height: 0.81,
            base_radius: 0.10,
            hip_y: 0.12,
            hip_radius: 0.17,
            waist_y: 0.32,
            waist_radius: 0.13,
            chest_y: 0.46,
            chest_radius: 0.16,
            armpit_y: 0.54,
            shoulder_radius: 0.145,
            neck_y: 0.66,
            neck_radius: 0.06,
            arm_radius: 0.045,
            arm_root: 0.13,
            arm_reach: 0.85,
            arm_segments: 21,
            arm_rings: 39,
            hip_joint_y: 0.05,
            pelvis_joint_y: 0.22,
            spine_joint_y: 0.40,
            shoulder_joint_x: 0.18,
        }
    }
}

impl HumanoidParams {
    pub fn shoulder_y(&self) -> f64 {
        self.armpit_y + self.arm_radius
    }

    /// Torso knots `(y, radius)`, ascending.
    fn knots(&self) -> Vec<(f64, f64)> {
        vec![
            (0.0, self.base_radius),
            (self.hip_y, self.hip_radius),
            (self.waist_y, self.waist_radius),
            (self.chest_y, self.chest_radius),
            (self.armpit_y, self.shoulder_radius),
            (self.shoulder_y() + self.arm_radius, self.shoulder_radius),
            (self.neck_y, self.neck_radius),
            (self.height, self.neck_radius * 0.8),
        ]
    }

    fn check(&self) -> Result<()> {
        let knots = self.knots();
        if knots.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(Error::InvalidFixture(
                "humanoid heights must increase: hip < waist < chest < armpit < shoulder top < neck < height"
                    .into(),
            ));
        }
        if knots.iter().any(|&(_, r)| !(r > 0.0)) || !(self.arm_radius > 0.0) {
            return Err(Error::InvalidFixture("humanoid radii must be positive".into()));
        }
        if !(self.arm_root < self.shoulder_radius && self.arm_reach > self.arm_root) {
            return Err(Error::InvalidFixture(
                "arm must start inside the torso and reach outward".into(),
            ));
        }
        if self.arm_segments < 3 || self.arm_rings < 2 {
            return Err(Error::InvalidFixture(
                "arm needs at least 3 segments and 2 rings".into(),
            ));
        }
        let joints = [
            self.hip_joint_y,
            self.pelvis_joint_y,
            self.spine_joint_y,
            self.armpit_y,
        ];
        if joints.windows(2).any(|w| !(w[1] > w[0])) || !(self.hip_joint_y > 0.0) {
            return Err(Error::InvalidFixture(
                "joints must satisfy 0 < hip < pelvis < spine < armpit".into(),
            ));
        }
        if !(self.shoulder_joint_x > self.shoulder_radius && self.shoulder_joint_x < self.arm_reach) {
            return Err(Error::InvalidFixture(
                "shoulder joint must sit inside the arm, outside the torso wall".into(),
            ));
        }
        Ok(())
    }
}

/// Half-cosine easing through `knots`; flat tangents at every knot.
fn eased(knots: &[(f64, f64)], y: f64) -> f64 {
    let last = knots.len() - 1;
    if y <= knots[0].0 {
        return knots[0].1;
    }
    if y >= knots[last].0 {
        return knots[last].1;
    }
    let i = knots.partition_point(|&(ky, _)| ky <= y) - 1;
    let ((y0, r0), (y1, r1)) = (knots[i], knots[i + 1]);
    let s = (y - y0) / (y1 - y0);
    r0 + (r1 - r0) * (1.0 - (PI * s).cos()) / 2.0
}

/// One ring of a revolved profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRing {
    pub y: f64,
    pub radius: f64,
    pub perimeter: f64,
}

/// Circumference of a designed feature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    pub y: f64,
    pub perimeter: f64,
}

/// Designed landmarks of the humanoid proxy, taken from its ring profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BodyFeatures {
    /// Arm underside height; the axilla bound the pipeline should find.
    pub armpit_y: f64,
    pub chest: Feature,
    pub waist: Feature,
    pub pelvis: Feature,
}

/// Closed-form cross sections of a generated fixture.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Oracle {
    pub kind: String,
    pub segments: usize,
    /// Main (vertical) body profile, ascending in y. Arms are not included.
    pub profile: Vec<ProfileRing>,
    /// Largest |dP/dy| of the profile.
    pub max_slope: f64,
    pub features: Option<BodyFeatures>,
}

impl Oracle {
    fn new(kind: &str, segments: usize, rings: &[(f64, f64)], features: Option<BodyFeatures>) -> Self {
        let profile: Vec<ProfileRing> = rings
            .iter()
            .map(|&(y, radius)| ProfileRing {
                y,
                radius,
                perimeter: inscribed_perimeter(segments, radius),
            })
            .collect();
        let max_slope = profile
            .windows(2)
            .map(|w| ((w[1].perimeter - w[0].perimeter) / (w[1].y - w[0].y)).abs())
            .fold(0.0, f64::max);
        Self {
            kind: kind.to_owned(),
            segments,
            profile,
            max_slope,
            features,
        }
    }

    /// Section perimeter of the revolved body at height `y`. `None` outside
    /// the profile's span.
    pub fn perimeter_at(&self, y: f64) -> Option<f64> {
        let first = self.profile.first()?;
        let last = self.profile.last()?;
        if y < first.y || y > last.y {
            return None;
        }
        let i = self
            .profile
            .partition_point(|ring| ring.y <= y)
            .clamp(1, self.profile.len() - 1);
        let (a, b) = (self.profile[i - 1], self.profile[i]);
        let s = if b.y > a.y { (y - a.y) / (b.y - a.y) } else { 0.0 };
        let radius = a.radius + (b.radius - a.radius) * s;
        Some(inscribed_perimeter(self.segments, radius))
    }

    /// Largest |dP/dy| over profile intervals overlapping `[lower, upper]`.
    pub fn max_slope_within(&self, lower: f64, upper: f64) -> f64 {
        self.profile
            .windows(2)
            .filter(|w| w[1].y >= lower && w[0].y <= upper)
            .map(|w| ((w[1].perimeter - w[0].perimeter) / (w[1].y - w[0].y)).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub mesh: Mesh,
    pub skeleton: Skeleton,
    pub oracle: Oracle,
}

/// Orthonormal frame with `u × v = w`; rings live in the `u`-`v` plane and
/// advance along `w`.
#[derive(Clone, Copy)]
struct Frame {
    origin: Point3<f64>,
    u: Vector3<f64>,
    v: Vector3<f64>,
    w: Vector3<f64>,
}

/// Appends a revolved strip. Stations are `(s, r)` along `w`; a zero radius
/// at either end becomes a single pole vertex. Non-pole ends get a flat fan
/// cap when requested. Triangles face outward.
fn revolve(
    mesh: &mut Mesh,
    frame: &Frame,
    stations: &[(f64, f64)],
    segments: usize,
    cap_start: bool,
    cap_end: bool,
) {
    let n = segments;
    let mut rings: Vec<Vec<usize>> = Vec::with_capacity(stations.len());
    for &(s, r) in stations {
        let center = frame.origin + frame.w * s;
        if r == 0.0 {
            mesh.vertices.push(center);
            rings.push(vec![mesh.vertices.len() - 1; n]);
            continue;
        }
        let start = mesh.vertices.len();
        for k in 0..n {
            let phi = 2.0 * PI * k as f64 / n as f64;
            let (sin, cos) = phi.sin_cos();
            mesh.vertices.push(center + (frame.u * cos + frame.v * sin) * r);
        }
        rings.push((start..start + n).collect());
    }
    for pair in rings.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        for k in 0..n {
            let k1 = (k + 1) % n;
            if a[k] != a[k1] {
                mesh.triangles.push([a[k], a[k1], b[k]]);
            }
            if b[k] != b[k1] {
                mesh.triangles.push([a[k1], b[k1], b[k]]);
            }
        }
    }
    let mut cap = |ring: &Vec<usize>, s: f64, outward: bool| {
        if ring[0] == ring[1] {
            return;
        }
        mesh.vertices.push(frame.origin + frame.w * s);
        let c = mesh.vertices.len() - 1;
        for k in 0..n {
            let k1 = (k + 1) % n;
            if outward {
                mesh.triangles.push([c, ring[k], ring[k1]]);
            } else {
                mesh.triangles.push([c, ring[k1], ring[k]]);
            }
        }
    };
    if cap_start {
        cap(&rings[0], stations[0].0, false);
    }
    if cap_end {
        let last = stations.len() - 1;
        cap(&rings[last], stations[last].0, true);
    }
}

const VERTICAL: Frame = Frame {
    origin: Point3::new(0.0, 0.0, 0.0),
    u: Vector3::new(1.0, 0.0, 0.0),
    v: Vector3::new(0.0, 0.0, -1.0),
    w: Vector3::new(0.0, 1.0, 0.0),
};

fn axis_skeleton(bottom: f64, top: f64) -> Skeleton {
    let at = |f: f64| Point3::new(0.0, bottom + (top - bottom) * f, 0.0);
    let joints: BTreeMap<String, Point3<f64>> = [
        (R_HIP, at(0.2)),
        (PELVIS, at(0.4)),
        (SPINE1, at(0.6)),
        (R_SHOULDER, at(0.8)),
    ]
    .into_iter()
    .map(|(n, p)| (n.to_owned(), p))
    .collect();
    Skeleton::new(joints).expect("all required joints present")
}

fn check_spec(spec: &FixtureSpec) -> Result<()> {
    if spec.segments < 3 {
        return Err(Error::InvalidFixture("segments must be at least 3".into()));
    }
    if spec.rings < 2 {
        return Err(Error::InvalidFixture("rings must be at least 2".into()));
    }
    let positive = |name: &str, v: f64| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidFixture(format!("{name} must be positive")))
        }
    };
    match &spec.kind {
        FixtureKind::Cylinder { radius, height } => {
            positive("radius", *radius)?;
            positive("height", *height)
        }
        FixtureKind::Sphere { radius } => {
            if spec.rings < 3 {
                return Err(Error::InvalidFixture("sphere needs at least 3 rings".into()));
            }
            positive("radius", *radius)
        }
        FixtureKind::Hourglass {
            height,
            end_radius,
            waist_radius,
            waist_y,
        } => {
            positive("height", *height)?;
            positive("end radius", *end_radius)?;
            positive("waist radius", *waist_radius)?;
            if !(*waist_y > 0.0 && waist_y < height) {
                return Err(Error::InvalidFixture(
                    "waist_y must lie inside (0, height)".into(),
                ));
            }
            Ok(())
        }
        FixtureKind::HumanoidProxy(p) => {
            positive("height", p.height)?;
            p.check()
        }
    }
}

/// Builds the mesh, a skeleton and the analytic oracle for `spec`.
pub fn generate(spec: &FixtureSpec) -> Result<Fixture> {
    check_spec(spec)?;
    let n = spec.segments;
    let last = (spec.rings - 1) as f64;
    let mut mesh = Mesh::default();
    match &spec.kind {
        FixtureKind::Cylinder { radius, height } => {
            let rings: Vec<(f64, f64)> = (0..spec.rings)
                .map(|i| (height * i as f64 / last, *radius))
                .collect();
            revolve(&mut mesh, &VERTICAL, &rings, n, true, true);
            Ok(Fixture {
                mesh,
                skeleton: axis_skeleton(0.0, *height),
                oracle: Oracle::new("cylinder", n, &rings, None),
            })
        }
        FixtureKind::Sphere { radius } => {
            let rings: Vec<(f64, f64)> = (0..spec.rings)
                .map(|i| {
                    let polar = PI * i as f64 / last;
                    let r = if i == 0 || i + 1 == spec.rings {
                        0.0
                    } else {
                        radius * polar.sin()
                    };
                    (-radius * polar.cos(), r)
                })
                .collect();
            revolve(&mut mesh, &VERTICAL, &rings, n, false, false);
            Ok(Fixture {
                mesh,
                skeleton: axis_skeleton(-radius, *radius),
                oracle: Oracle::new("sphere", n, &rings, None),
            })
        }
        FixtureKind::Hourglass {
            height,
            end_radius,
            waist_radius,
            waist_y,
        } => {
            let knots = [
                (0.0, *end_radius),
                (*waist_y, *waist_radius),
                (*height, *end_radius),
            ];
            let rings: Vec<(f64, f64)> = (0..spec.rings)
                .map(|i| {
                    let y = height * i as f64 / last;
                    (y, eased(&knots, y))
                })
                .collect();
            revolve(&mut mesh, &VERTICAL, &rings, n, true, true);
            Ok(Fixture {
                mesh,
                skeleton: axis_skeleton(0.0, *height),
                oracle: Oracle::new("hourglass", n, &rings, None),
            })
        }
        FixtureKind::HumanoidProxy(p) => humanoid(p, n, spec.rings),
    }
}

fn humanoid(p: &HumanoidParams, n: usize, ring_count: usize) -> Result<Fixture> {
    let knots = p.knots();
    let last = (ring_count - 1) as f64;
    let rings: Vec<(f64, f64)> = (0..ring_count)
        .map(|i| {
            let y = p.height * i as f64 / last;
            (y, eased(&knots, y))
        })
        .collect();

    // The arm band must stay inside the torso wall so the open arm ends are
    // hidden.
    let shoulder_y = p.shoulder_y();
    let band = (p.armpit_y, shoulder_y + p.arm_radius);
    if rings
        .iter()
        .any(|&(y, r)| y >= band.0 && y <= band.1 && r <= p.arm_root)
    {
        return Err(Error::InvalidFixture(
            "torso is narrower than the arm root within the arm band".into(),
        ));
    }

    let mut mesh = Mesh::default();
    revolve(&mut mesh, &VERTICAL, &rings, n, true, true);

    let stations: Vec<(f64, f64)> = (0..p.arm_rings)
        .map(|j| {
            let s = p.arm_root + (p.arm_reach - p.arm_root) * j as f64 / (p.arm_rings - 1) as f64;
            (s, p.arm_radius)
        })
        .collect();
    let shoulder = Point3::new(0.0, shoulder_y, 0.0);
    // Right arm toward -x, left arm toward +x; phase 0 is the arm underside.
    let right = Frame {
        origin: shoulder,
        u: -Vector3::y(),
        v: Vector3::z(),
        w: -Vector3::x(),
    };
    let left = Frame {
        origin: shoulder,
        u: -Vector3::y(),
        v: -Vector3::z(),
        w: Vector3::x(),
    };
    revolve(&mut mesh, &right, &stations, p.arm_segments, false, true);
    revolve(&mut mesh, &left, &stations, p.arm_segments, false, true);

    let joints: BTreeMap<String, Point3<f64>> = [
        (R_HIP, Point3::new(-0.5 * p.hip_radius, p.hip_joint_y, 0.0)),
        ("L_Hip", Point3::new(0.5 * p.hip_radius, p.hip_joint_y, 0.0)),
        (PELVIS, Point3::new(0.0, p.pelvis_joint_y, 0.0)),
        (SPINE1, Point3::new(0.0, p.spine_joint_y, 0.0)),
        (R_SHOULDER, Point3::new(-p.shoulder_joint_x, shoulder_y, 0.0)),
        ("L_Shoulder", Point3::new(p.shoulder_joint_x, shoulder_y, 0.0)),
        ("Neck", Point3::new(0.0, p.neck_y, 0.0)),
    ]
    .into_iter()
    .map(|(name, pt)| (name.to_owned(), pt))
    .collect();
    let skeleton = Skeleton::new(joints)?;

    let mut oracle = Oracle::new("humanoid_proxy", n, &rings, None);
    let extremum = |lower: f64, upper: f64, largest: bool| -> Result<Feature> {
        oracle
            .profile
            .iter()
            .rev()
            .filter(|ring| ring.y >= lower && ring.y < upper)
            .fold(None::<ProfileRing>, |best, ring| match best {
                Some(b) if (largest && ring.radius <= b.radius) || (!largest && ring.radius >= b.radius) => {
                    Some(b)
                }
                _ => Some(*ring),
            })
            .map(|ring| Feature {
                y: ring.y,
                perimeter: ring.perimeter,
            })
            .ok_or_else(|| Error::InvalidFixture("a region contains no torso ring".into()))
    };
    let features = BodyFeatures {
        armpit_y: p.armpit_y,
        chest: extremum(p.spine_joint_y, p.armpit_y, true)?,
        waist: extremum(p.pelvis_joint_y, p.spine_joint_y, false)?,
        pelvis: extremum(p.hip_joint_y, p.pelvis_joint_y, true)?,
    };
    oracle.features = Some(features);

    Ok(Fixture {
        mesh,
        skeleton,
        oracle,
    })
}
