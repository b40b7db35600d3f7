//! Wavefront OBJ, geometry records only.
//!
//! `v x y z [w]` and `f i j k ...` are read; faces with more than three
//! corners are fan-triangulated from their first corner. Texture and normal
//! references in face corners (`i/t/n`) are accepted and dropped, and every
//! other record type is skipped.

use std::fmt::Write as _;

use stupa_core::TriangleMesh;

use crate::FormatError;

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Obj { line, message: message.into() }
}

pub fn parse_obj(bytes: &[u8]) -> Result<TriangleMesh, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let line = bytes[..e.valid_up_to()].iter().filter(|&&b| b == b'\n').count() + 1;
        err(line, "invalid UTF-8")
    })?;

    let mut vertices: Vec<[f64; 3]> = Vec::new();
    // Resolved zero-based corners, with the line that introduced them.
    let mut faces: Vec<(usize, [i64; 3])> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("v") => {
                let coords: Vec<&str> = tokens.collect();
                if !(3..=4).contains(&coords.len()) {
                    return Err(err(line, format!("vertex needs 3 coordinates, found {}", coords.len())));
                }
                let mut p = [0.0; 3];
                for (slot, tok) in p.iter_mut().zip(&coords) {
                    let v: f64 = tok.parse().map_err(|_| err(line, format!("bad coordinate `{tok}`")))?;
                    if !v.is_finite() {
                        return Err(err(line, format!("non-finite coordinate `{tok}`")));
                    }
                    *slot = v;
                }
                vertices.push(p);
            }
            Some("f") => {
                let mut corners = Vec::new();
                for tok in tokens {
                    let head = tok.split('/').next().unwrap_or("");
                    let idx: i64 = head.parse().map_err(|_| err(line, format!("bad face index `{tok}`")))?;
                    let resolved = match idx {
                        0 => return Err(err(line, "face index 0 is invalid (indices are 1-based)")),
                        i if i > 0 => i - 1,
                        i => vertices.len() as i64 + i,
                    };
                    if resolved < 0 {
                        return Err(err(line, format!("face index {idx} is out of range")));
                    }
                    corners.push(resolved);
                }
                if corners.len() < 3 {
                    return Err(err(line, format!("face needs at least 3 vertices, found {}", corners.len())));
                }
                for k in 1..corners.len() - 1 {
                    faces.push((line, [corners[0], corners[k], corners[k + 1]]));
                }
            }
            _ => {}
        }
    }

    if faces.is_empty() {
        return Err(FormatError::EmptyMesh);
    }
    let mut triangles = Vec::with_capacity(faces.len());
    for (line, f) in faces {
        if let Some(bad) = f.iter().find(|&&i| i as usize >= vertices.len() || i > u32::MAX as i64) {
            return Err(err(line, format!("face index {} is out of range ({} vertices)", bad + 1, vertices.len())));
        }
        if f[0] == f[1] || f[1] == f[2] || f[0] == f[2] {
            return Err(err(line, "degenerate face repeats a vertex"));
        }
        triangles.push(f.map(|i| i as u32));
    }
    Ok(TriangleMesh::new(vertices, triangles)?)
}

/// Writes `v` and `f` records. Coordinates use the shortest representation
/// that reads back to the same `f64`.
pub fn write_obj(mesh: &TriangleMesh) -> Vec<u8> {
    let mut out = String::new();
    for v in mesh.vertices() {
        let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
    }
    for t in mesh.triangles() {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    out.into_bytes()
}
