use girth_web::{analyze_json, body_obj, cross_section_json, default_params};
use serde_json::Value;

#[test]
fn analyze_default_body() {
    let out: Value = serde_json::from_str(&analyze_json("", 0.005, 80).unwrap()).unwrap();
    assert_eq!(out["vertices"], 6890);
    let m = &out["measurements"];
    let designed = &out["designed"];
    for region in ["chest", "waist", "pelvis"] {
        let got = m[region].as_f64().unwrap();
        let want = designed[region]["perimeter"].as_f64().unwrap();
        assert!((got - want).abs() < 0.01, "{region}: {got} vs {want}");
    }
    let offsets = out["offsets"].as_array().unwrap();
    assert_eq!(offsets.len(), out["lengths"].as_array().unwrap().len());
    assert!(out["regions"]["chest"][1].as_f64().unwrap() > out["regions"]["waist"][1].as_f64().unwrap());
}

#[test]
fn parameters_change_the_waist() {
    let slim: Value =
        serde_json::from_str(&analyze_json(r#"{"waist_radius": 0.11}"#, 0.005, 80).unwrap()).unwrap();
    let base: Value = serde_json::from_str(&analyze_json("{}", 0.005, 80).unwrap()).unwrap();
    assert!(
        slim["measurements"]["waist"].as_f64().unwrap() < base["measurements"]["waist"].as_f64().unwrap()
    );
}

#[test]
fn errors_are_messages() {
    assert!(analyze_json("{\"waist_y\": 5}", 0.005, 80)
        .unwrap_err()
        .contains("invalid fixture"));
    assert!(analyze_json("not json", 0.005, 80)
        .unwrap_err()
        .contains("bad parameters"));
    assert_eq!(
        analyze_json("", 0.0, 80).unwrap_err(),
        "signature: step must be positive"
    );
}

#[test]
fn cross_section_of_the_waist() {
    let out: Value = serde_json::from_str(&cross_section_json("", 0.32).unwrap()).unwrap();
    // The waist ring is a 64-gon.
    assert_eq!(out["segments"].as_array().unwrap().len(), 64);
    let expected = girth::synthetic::inscribed_perimeter(64, 0.13);
    assert!((out["length"].as_f64().unwrap() - expected).abs() < 1e-9);
}

#[test]
fn obj_export_and_defaults() {
    let obj = body_obj("").unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 6890);
    let params: Value = serde_json::from_str(&default_params()).unwrap();
    assert_eq!(params["armpit_y"], 0.54);
}
