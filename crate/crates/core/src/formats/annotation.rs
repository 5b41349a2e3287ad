//! Ground-truth annotation files (JSON array or CSV) and signature CSV.
//!
//! All lengths and heights are meters with six decimals, so JSON and CSV
//! written from the same records carry identical values.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::MeasurementSet;
use crate::slicing::Signature;

pub const ANNOTATION_CSV_HEADER: &str = "mesh_id,chest_m,waist_m,pelvis_m,chest_y,waist_y,pelvis_y,step_m";
pub const SIGNATURE_CSV_HEADER: &str = "y,boundary_length";

/// Version string stamped into annotation JSON.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnotationFormat {
    Json,
    Csv,
}

impl std::str::FromStr for AnnotationFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::parse(
                0,
                format!("unknown format {other:?}; use json or csv"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationRecord {
    pub mesh_id: String,
    pub chest_m: f64,
    pub waist_m: f64,
    pub pelvis_m: f64,
    pub chest_y: f64,
    pub waist_y: f64,
    pub pelvis_y: f64,
    pub step_m: f64,
    pub tool_version: String,
}

impl AnnotationRecord {
    pub fn new(mesh_id: impl Into<String>, m: &MeasurementSet) -> Self {
        Self {
            mesh_id: mesh_id.into(),
            chest_m: m.chest,
            waist_m: m.waist,
            pelvis_m: m.pelvis,
            chest_y: m.chest_y,
            waist_y: m.waist_y,
            pelvis_y: m.pelvis_y,
            step_m: m.step,
            tool_version: TOOL_VERSION.to_owned(),
        }
    }

    fn values(&self) -> [f64; 7] {
        [
            self.chest_m,
            self.waist_m,
            self.pelvis_m,
            self.chest_y,
            self.waist_y,
            self.pelvis_y,
            self.step_m,
        ]
    }
}

fn fixed(v: f64) -> String {
    let s = format!("{v:.6}");
    // "-0.000000" and "0.000000" must not differ between runs.
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_owned()
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}

pub fn write_annotation(records: &[AnnotationRecord], format: AnnotationFormat) -> String {
    let mut out = String::new();
    match format {
        AnnotationFormat::Csv => {
            out.push_str(ANNOTATION_CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&csv_field(&r.mesh_id));
                for v in r.values() {
                    out.push(',');
                    out.push_str(&fixed(v));
                }
                out.push('\n');
            }
        }
        AnnotationFormat::Json => {
            out.push('[');
            for (i, r) in records.iter().enumerate() {
                out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
                let id = serde_json::to_string(&r.mesh_id).expect("strings serialize");
                let _ = write!(out, "\"mesh_id\": {id}");
                let names = [
                    "chest_m", "waist_m", "pelvis_m", "chest_y", "waist_y", "pelvis_y", "step_m",
                ];
                for (name, v) in names.iter().zip(r.values()) {
                    let _ = write!(out, ", \"{name}\": {}", fixed(v));
                }
                let version = serde_json::to_string(&r.tool_version).expect("strings serialize");
                let _ = write!(out, ", \"tool_version\": {version}}}");
            }
            out.push_str(if records.is_empty() { "]\n" } else { "\n]\n" });
        }
    }
    out
}

pub fn parse_annotation_json(text: &str) -> Result<Vec<AnnotationRecord>> {
    serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))
}

/// Reads CSV written by [`write_annotation`]. The CSV carries no version
/// column; records get an empty `tool_version`.
pub fn parse_annotation_csv(text: &str) -> Result<Vec<AnnotationRecord>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == ANNOTATION_CSV_HEADER => {}
        _ => return Err(Error::parse(1, "missing annotation CSV header")),
    }
    let mut records = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = i + 1;
        // mesh_id is the only field that may be quoted.
        let (id, rest) = if let Some(stripped) = line.strip_prefix('"') {
            let mut id = String::new();
            let mut chars = stripped.char_indices().peekable();
            let mut end = None;
            while let Some((idx, c)) = chars.next() {
                if c == '"' {
                    if let Some(&(_, '"')) = chars.peek() {
                        id.push('"');
                        chars.next();
                    } else {
                        end = Some(idx + 1);
                        break;
                    }
                } else {
                    id.push(c);
                }
            }
            let end = end.ok_or_else(|| Error::parse(line_no, "unterminated quoted mesh_id"))?;
            (id, stripped[end..].strip_prefix(',').unwrap_or(""))
        } else {
            let (id, rest) = line.split_once(',').unwrap_or((line, ""));
            (id.to_owned(), rest)
        };
        let values = rest
            .split(',')
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::parse(line_no, format!("invalid number {f:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let [chest_m, waist_m, pelvis_m, chest_y, waist_y, pelvis_y, step_m] = values[..] else {
            return Err(Error::parse(
                line_no,
                format!("expected 8 columns, got {}", values.len() + 1),
            ));
        };
        records.push(AnnotationRecord {
            mesh_id: id,
            chest_m,
            waist_m,
            pelvis_m,
            chest_y,
            waist_y,
            pelvis_y,
            step_m,
            tool_version: String::new(),
        });
    }
    Ok(records)
}

/// Two columns, one row per slice, top slice first, six decimals like the
/// annotation files.
pub fn write_signature_csv(signature: &Signature) -> Result<String> {
    if signature.is_empty() {
        return Err(Error::EmptySignature);
    }
    let mut out = String::with_capacity(signature.len() * 32);
    out.push_str(SIGNATURE_CSV_HEADER);
    out.push('\n');
    for (y, length) in signature.samples() {
        let _ = writeln!(out, "{},{}", fixed(y), fixed(length));
    }
    Ok(out)
}
