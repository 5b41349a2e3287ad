//! Text formats: OBJ meshes, skeleton JSON, annotation and signature files.

mod annotation;
mod obj;
mod skeleton;

pub use annotation::{
    parse_annotation_csv, parse_annotation_json, write_annotation, write_signature_csv, AnnotationFormat,
    AnnotationRecord, ANNOTATION_CSV_HEADER, SIGNATURE_CSV_HEADER, TOOL_VERSION,
};
pub use obj::{parse_obj, write_obj};
pub use skeleton::{parse_joint_map, parse_skeleton, parse_skeleton_with_map, write_skeleton};
