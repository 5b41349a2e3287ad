//! Skeleton JSON: `{"joints": {"Pelvis": [x, y, z], ...}}`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::Point3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::skeleton::Skeleton;

#[derive(Serialize, Deserialize)]
struct SkeletonFile {
    joints: BTreeMap<String, [f64; 3]>,
}

fn json_error(err: serde_json::Error) -> Error {
    Error::parse(err.line(), err.to_string())
}

fn raw_joints(text: &str) -> Result<BTreeMap<String, Point3<f64>>> {
    let file: SkeletonFile = serde_json::from_str(text).map_err(json_error)?;
    Ok(file
        .joints
        .into_iter()
        .map(|(name, p)| (name, Point3::from(p)))
        .collect())
}

pub fn parse_skeleton(text: &str) -> Result<Skeleton> {
    Skeleton::new(raw_joints(text)?)
}

/// Like [`parse_skeleton`], renaming joints through `table` (file name ->
/// canonical name) before the required joints are checked.
pub fn parse_skeleton_with_map(text: &str, table: &HashMap<String, String>) -> Result<Skeleton> {
    Skeleton::remapped(raw_joints(text)?, table)
}

/// Joint remap table: a flat JSON object `{"file_name": "Canonical", ...}`.
pub fn parse_joint_map(text: &str) -> Result<HashMap<String, String>> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn write_skeleton(skeleton: &Skeleton) -> String {
    let file = SkeletonFile {
        joints: skeleton
            .joints()
            .iter()
            .map(|(name, p)| (name.clone(), [p.x, p.y, p.z]))
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&file).expect("skeleton is always serializable");
    out.push('\n');
    out
}
