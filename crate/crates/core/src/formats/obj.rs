//! Wavefront OBJ subset: `v` and `f` records only.

use std::fmt::Write as _;

use nalgebra::Point3;

use crate::error::{Error, Result};
use crate::mesh::Mesh;

fn parse_index(token: &str, vertex_count: usize, line: usize) -> Result<usize> {
    // `i`, `i/t`, `i//n`, `i/t/n`: only the vertex index matters.
    let head = token.split('/').next().unwrap_or(token);
    let raw: i64 = head
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid face index {token:?}")))?;
    let resolved = match raw {
        0 => None,
        r if r > 0 => Some(r as usize - 1),
        r => vertex_count.checked_sub(r.unsigned_abs() as usize),
    };
    match resolved {
        Some(i) if i < vertex_count => Ok(i),
        _ => Err(Error::parse(
            line,
            format!("face index {raw} out of range ({vertex_count} vertices so far)"),
        )),
    }
}

/// Parses vertices and faces. Faces with more than three corners are fanned
/// from their first corner. Texture coordinates, normals, groups, materials
/// and unknown records are skipped.
pub fn parse_obj(text: &str) -> Result<Mesh> {
    let mut mesh = Mesh::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let mut coords = [0.0f64; 3];
                for c in coords.iter_mut() {
                    let tok = tokens
                        .next()
                        .ok_or_else(|| Error::parse(line, "vertex needs three coordinates"))?;
                    *c = tok
                        .parse()
                        .map_err(|_| Error::parse(line, format!("non-numeric vertex coordinate {tok:?}")))?;
                }
                // A fourth (w) component or vertex colors may follow.
                mesh.vertices.push(Point3::from(coords));
            }
            Some("f") => {
                let corners = tokens
                    .map(|t| parse_index(t, mesh.vertices.len(), line))
                    .collect::<Result<Vec<_>>>()?;
                if corners.len() < 3 {
                    return Err(Error::parse(
                        line,
                        format!("face has {} vertices, at least 3 required", corners.len()),
                    ));
                }
                for k in 1..corners.len() - 1 {
                    mesh.triangles.push([corners[0], corners[k], corners[k + 1]]);
                }
            }
            _ => {}
        }
    }
    Ok(mesh)
}

/// Writes `v`/`f` records with shortest round-trip float formatting.
pub fn write_obj(mesh: &Mesh) -> String {
    let mut out = String::with_capacity(mesh.vertex_count() * 40 + mesh.triangle_count() * 20);
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {:?} {:?} {:?}", v.x, v.y, v.z);
    }
    for [a, b, c] in &mesh.triangles {
        let _ = writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1);
    }
    out
}
