use std::collections::{BTreeMap, HashMap};

use nalgebra::{Point3, Vector3};

use crate::error::{Error, Result};
use crate::mesh::AxisMap;

pub const PELVIS: &str = "Pelvis";
pub const SPINE1: &str = "Spine1";
pub const R_HIP: &str = "R_Hip";
pub const R_SHOULDER: &str = "R_Shoulder";

/// Joints every skeleton must carry, in the order they are checked.
pub const REQUIRED_JOINTS: [&str; 4] = [PELVIS, SPINE1, R_HIP, R_SHOULDER];

/// Named joint locations in meters. Joints beyond the required four are
/// kept as-is.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Skeleton {
    joints: BTreeMap<String, Point3<f64>>,
}

impl Skeleton {
    /// Builds a skeleton and checks the required-joint invariant.
    pub fn new(joints: BTreeMap<String, Point3<f64>>) -> Result<Self> {
        let skeleton = Self { joints };
        skeleton.check()?;
        Ok(skeleton)
    }

    fn check(&self) -> Result<()> {
        for name in REQUIRED_JOINTS {
            match self.joints.get(name) {
                None => return Err(Error::MissingJoint(name.to_owned())),
                Some(p) if !p.coords.iter().all(|c| c.is_finite()) => {
                    return Err(Error::NonFiniteJoint {
                        name: name.to_owned(),
                    })
                }
                Some(_) => {}
            }
        }
        Ok(())
    }

    pub fn joints(&self) -> &BTreeMap<String, Point3<f64>> {
        &self.joints
    }

    pub fn len(&self) -> usize {
        self.joints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.joints.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<Point3<f64>> {
        self.joints.get(name).copied()
    }

    fn required(&self, name: &str) -> Point3<f64> {
        // Presence is guaranteed by construction.
        self.joints[name]
    }

    pub fn pelvis(&self) -> Point3<f64> {
        self.required(PELVIS)
    }

    /// Natural-waist joint.
    pub fn spine1(&self) -> Point3<f64> {
        self.required(SPINE1)
    }

    pub fn right_hip(&self) -> Point3<f64> {
        self.required(R_HIP)
    }

    pub fn right_shoulder(&self) -> Point3<f64> {
        self.required(R_SHOULDER)
    }

    /// Renames joints through `table` (source name -> canonical name) and
    /// re-checks the required joints. Names absent from the table are kept.
    pub fn remapped(raw: BTreeMap<String, Point3<f64>>, table: &HashMap<String, String>) -> Result<Self> {
        let joints = raw
            .into_iter()
            .map(|(name, p)| match table.get(&name) {
                Some(canonical) => (canonical.clone(), p),
                None => (name, p),
            })
            .collect();
        Self::new(joints)
    }

    fn map_points(&self, f: impl Fn(&Point3<f64>) -> Point3<f64>) -> Skeleton {
        Skeleton {
            joints: self.joints.iter().map(|(name, p)| (name.clone(), f(p))).collect(),
        }
    }

    pub fn translated(&self, offset: Vector3<f64>) -> Skeleton {
        self.map_points(|p| p + offset)
    }

    pub fn scaled(&self, factor: f64) -> Skeleton {
        self.map_points(|p| p * factor)
    }

    pub fn aligned(&self, map: &AxisMap) -> Skeleton {
        self.map_points(|p| map.apply(p))
    }
}
