//! Chest, waist and pelvis circumference as constrained extrema of the
//! signature, and the end-to-end measurement pipeline.

use nalgebra::Vector3;

use crate::error::{Error, Region, Result, Stage};
use crate::mesh::{lsa_align, validate, AxisMap, Mesh};
use crate::segmentation::{locate_axilla, segment_regions, AxillaResult, Regions, DEFAULT_KNN};
use crate::skeleton::Skeleton;
use crate::slicing::{mesh_signature, Signature};

/// Default slicing step: one millimeter.
pub const DEFAULT_STEP: f64 = 0.001;

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MeasurementSet {
    pub chest: f64,
    pub waist: f64,
    pub pelvis: f64,
    pub chest_y: f64,
    pub waist_y: f64,
    pub pelvis_y: f64,
    pub step: f64,
}

#[derive(Clone, Copy)]
enum Extremum {
    Max,
    Min,
}

/// Extremal positive boundary length among slices inside `region`. Ties go
/// to the highest slice (signatures are stored top first).
fn regional_extremum(
    signature: &Signature,
    regions: &Regions,
    region: Region,
    kind: Extremum,
) -> Result<(f64, f64)> {
    let interval = regions.get(region);
    let mut sampled = false;
    let mut best: Option<(f64, f64)> = None;
    for (y, length) in signature.samples() {
        if !interval.contains(y) {
            continue;
        }
        sampled = true;
        if length <= 0.0 {
            continue;
        }
        let better = match (best, kind) {
            (None, _) => true,
            (Some((_, b)), Extremum::Max) => length > b,
            (Some((_, b)), Extremum::Min) => length < b,
        };
        if better {
            best = Some((y, length));
        }
    }
    match best {
        Some(found) => Ok(found),
        None if !sampled => Err(Error::RegionUnsampled(region)),
        None => Err(Error::EmptyCrossSections(region)),
    }
}

/// Chest is the largest boundary length in the chest region, waist the
/// smallest in the waist region, pelvis the largest in the pelvis region.
/// Slices with zero length (the plane missed the mesh) are ignored.
pub fn measure(signature: &Signature, regions: &Regions) -> Result<MeasurementSet> {
    let (chest_y, chest) = regional_extremum(signature, regions, Region::Chest, Extremum::Max)?;
    let (waist_y, waist) = regional_extremum(signature, regions, Region::Waist, Extremum::Min)?;
    let (pelvis_y, pelvis) = regional_extremum(signature, regions, Region::Pelvis, Extremum::Max)?;
    Ok(MeasurementSet {
        chest,
        waist,
        pelvis,
        chest_y,
        waist_y,
        pelvis_y,
        step: signature.step(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineConfig {
    pub step: f64,
    pub knn: usize,
    /// Applied to mesh and skeleton before anything else, when not identity.
    pub axis_map: AxisMap,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            step: DEFAULT_STEP,
            knn: DEFAULT_KNN,
            axis_map: AxisMap::IDENTITY,
        }
    }
}

impl PipelineConfig {
    pub fn with_step(step: f64) -> Self {
        Self {
            step,
            ..Self::default()
        }
    }
}

/// Everything the pipeline computed, for inspection and export.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOutput {
    pub measurements: MeasurementSet,
    pub signature: Signature,
    pub regions: Regions,
    pub axilla: AxillaResult,
}

/// Align, locate the axilla, build regions, slice along +y, take extrema.
/// Errors carry the name of the stage that raised them.
pub fn run_pipeline(mesh: &Mesh, skeleton: &Skeleton, config: &PipelineConfig) -> Result<PipelineOutput> {
    if !(config.step > 0.0) || !config.step.is_finite() {
        return Err(Error::NonPositiveStep.at(Stage::Signature));
    }
    if config.knn == 0 {
        return Err(Error::ZeroNeighbors.at(Stage::Axilla));
    }

    let report = validate(mesh);
    if let Some(first) = report.findings.first() {
        return Err(Error::InvalidMesh(first.to_string()).at(Stage::Validate));
    }
    if !report.warnings.is_empty() {
        log::warn!(
            "{} zero-area triangles; they contribute nothing to sections",
            report.warnings.len()
        );
    }

    let aligned;
    let (mesh, skeleton) = if config.axis_map.is_identity() {
        (mesh, skeleton.clone())
    } else {
        aligned = lsa_align(mesh, &config.axis_map);
        (&aligned, skeleton.aligned(&config.axis_map))
    };

    let axilla = locate_axilla(mesh, &skeleton, config.knn).map_err(|e| e.at(Stage::Axilla))?;
    let regions = segment_regions(&skeleton, &axilla).map_err(|e| e.at(Stage::Segmentation))?;
    let signature = mesh_signature(mesh, Vector3::y(), config.step).map_err(|e| e.at(Stage::Signature))?;
    let measurements = measure(&signature, &regions).map_err(|e| e.at(Stage::Measure))?;

    Ok(PipelineOutput {
        measurements,
        signature,
        regions,
        axilla,
    })
}
