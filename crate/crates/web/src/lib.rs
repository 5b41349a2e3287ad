//! Browser bindings: measure an adjustable humanoid body, inspect its slice
//! signature and look at individual cross sections.
//!
//! Every export takes the body as a JSON object of humanoid parameters
//! (missing fields keep their defaults) and returns JSON text.

use girth::formats::write_obj;
use girth::{
    generate, run_pipeline, slice_at, Fixture, FixtureSpec, HumanoidParams, PipelineConfig, SlicePlane,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn body(params_json: &str) -> Result<Fixture, String> {
    let params: HumanoidParams = if params_json.trim().is_empty() {
        HumanoidParams::default()
    } else {
        serde_json::from_str(params_json).map_err(|e| format!("bad parameters: {e}"))?
    };
    generate(&FixtureSpec::humanoid_with(params)).map_err(|e| e.to_string())
}

/// Full pipeline run: measurements, signature, regions, axilla and the
/// designed values for comparison.
pub fn analyze_json(params_json: &str, step: f64, knn: usize) -> Result<String, String> {
    let fx = body(params_json)?;
    let config = PipelineConfig {
        step,
        knn,
        ..PipelineConfig::default()
    };
    let out = run_pipeline(&fx.mesh, &fx.skeleton, &config).map_err(|e| e.to_string())?;
    let interval = |iv: girth::Interval| json!([iv.lower, iv.upper]);
    let value = json!({
        "measurements": out.measurements,
        "offsets": out.signature.offsets(),
        "lengths": out.signature.lengths(),
        "regions": {
            "chest": interval(out.regions.chest),
            "waist": interval(out.regions.waist),
            "pelvis": interval(out.regions.pelvis),
        },
        "axilla": [out.axilla.point.x, out.axilla.point.y, out.axilla.point.z],
        "designed": fx.oracle.features,
        "vertices": fx.mesh.vertex_count(),
        "triangles": fx.mesh.triangle_count(),
    });
    Ok(value.to_string())
}

/// Segments of the horizontal section at height `y`, as `[x0, z0, x1, z1]`
/// quadruples, with their total length.
pub fn cross_section_json(params_json: &str, y: f64) -> Result<String, String> {
    let fx = body(params_json)?;
    let section = slice_at(&fx.mesh, &SlicePlane::horizontal(y));
    let segments: Vec<Value> = section
        .segments
        .iter()
        .map(|s| json!([s.start.x, s.start.z, s.end.x, s.end.z]))
        .collect();
    let length: f64 = section.segments.iter().map(|s| s.length()).sum();
    Ok(json!({ "y": y, "length": length, "segments": segments }).to_string())
}

/// The generated body as OBJ text.
pub fn body_obj(params_json: &str) -> Result<String, String> {
    Ok(write_obj(&body(params_json)?.mesh))
}

#[wasm_bindgen]
pub fn analyze(params_json: &str, step: f64, knn: usize) -> Result<String, JsValue> {
    analyze_json(params_json, step, knn).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cross_section(params_json: &str, y: f64) -> Result<String, JsValue> {
    cross_section_json(params_json, y).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn export_obj(params_json: &str) -> Result<String, JsValue> {
    body_obj(params_json).map_err(|e| JsValue::from_str(&e))
}

/// Default humanoid parameters, for initialising the page controls.
#[wasm_bindgen]
pub fn default_params() -> String {
    serde_json::to_string(&HumanoidParams::default()).expect("parameters serialize")
}
