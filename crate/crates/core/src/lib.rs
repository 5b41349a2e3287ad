//! Chest, waist and pelvis circumference from triangulated human body
//! meshes.
//!
//! The mesh (LSA-aligned: x right-to-left, y up, z back-to-front) is split
//! into chest, waist and pelvis bands using the skeleton and a ray-cast
//! armpit, sliced by horizontal planes every `step` meters, and each
//! circumference is the extremal cross-section boundary length inside its
//! band.
//!
//! ```
//! use girth::{generate, run_pipeline, FixtureSpec, PipelineConfig};
//!
//! let fixture = generate(&FixtureSpec::humanoid()).unwrap();
//! let out = run_pipeline(&fixture.mesh, &fixture.skeleton, &PipelineConfig::with_step(0.01)).unwrap();
//! assert!(out.measurements.pelvis > out.measurements.waist);
//! ```

// `!(x > 0.0)` is used deliberately so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod formats;
pub mod measure;
pub mod mesh;
pub mod segmentation;
pub mod skeleton;
pub mod slicing;
pub mod synthetic;

pub use error::{Error, Region, Result, Stage};
pub use measure::{measure, run_pipeline, MeasurementSet, PipelineConfig, PipelineOutput, DEFAULT_STEP};
pub use mesh::{bounding_box, lsa_align, validate, Aabb, AxisMap, Mesh, ValidationReport};
pub use segmentation::{locate_axilla, segment_regions, AxillaResult, Interval, Regions, DEFAULT_KNN};
pub use skeleton::Skeleton;
pub use slicing::{boundary_length, mesh_signature, slice_at, CrossSection, Signature, SlicePlane};
pub use synthetic::{generate, Fixture, FixtureKind, FixtureSpec, HumanoidParams, Oracle};
