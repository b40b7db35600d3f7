//! STL reader, binary and ASCII.
//!
//! Input that starts with `solid` is tried as ASCII first; if that fails and
//! the byte length is consistent with a binary file, it is read as binary.
//! Vertices are kept per facet, without welding.

use stupa_core::TriangleMesh;

use crate::FormatError;

const HEADER: usize = 80;
const RECORD: u64 = 50;

pub fn parse_stl(bytes: &[u8]) -> Result<TriangleMesh, FormatError> {
    let looks_ascii = bytes.trim_ascii_start().starts_with(b"solid");
    if looks_ascii {
        match parse_ascii(bytes) {
            Ok(mesh) => return Ok(mesh),
            Err(ascii_err) => {
                if binary_length_matches(bytes) {
                    return parse_binary(bytes);
                }
                return Err(ascii_err);
            }
        }
    }
    parse_binary(bytes)
}

fn binary_length_matches(bytes: &[u8]) -> bool {
    bytes.len() >= HEADER + 4 && expected_len(bytes) == bytes.len() as u64
}

fn expected_len(bytes: &[u8]) -> u64 {
    let count = u32::from_le_bytes(bytes[HEADER..HEADER + 4].try_into().unwrap());
    (HEADER as u64 + 4) + RECORD * count as u64
}

fn parse_binary(bytes: &[u8]) -> Result<TriangleMesh, FormatError> {
    if bytes.len() < HEADER + 4 {
        return Err(FormatError::TruncatedStl { expected: HEADER as u64 + 4, actual: bytes.len() as u64 });
    }
    let expected = expected_len(bytes);
    if expected != bytes.len() as u64 {
        return Err(FormatError::TruncatedStl { expected, actual: bytes.len() as u64 });
    }
    let records = &bytes[HEADER + 4..];
    if records.is_empty() {
        return Err(FormatError::EmptyMesh);
    }
    let mut vertices = Vec::with_capacity(records.len() / RECORD as usize * 3);
    for rec in records.chunks_exact(RECORD as usize) {
        // 12 bytes of normal, three 12-byte vertices, 2 attribute bytes.
        for v in rec[12..48].chunks_exact(12) {
            let c = |k: usize| f32::from_le_bytes(v[4 * k..4 * k + 4].try_into().unwrap()) as f64;
            vertices.push([c(0), c(1), c(2)]);
        }
    }
    let triangles = (0..vertices.len() as u32 / 3).map(|t| [3 * t, 3 * t + 1, 3 * t + 2]).collect();
    Ok(TriangleMesh::new(vertices, triangles)?)
}

fn parse_ascii(bytes: &[u8]) -> Result<TriangleMesh, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|_| FormatError::AsciiStl { line: 1, message: "not UTF-8 text".into() })?;
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(n, l)| l.split_whitespace().map(move |t| (n + 1, t)))
        .peekable();
    let mut last_line = 1;
    let mut next = |what: &str| -> Result<(usize, &str), FormatError> {
        match tokens.next() {
            Some((line, tok)) => {
                last_line = line;
                Ok((line, tok))
            }
            None => Err(FormatError::AsciiStl { line: last_line, message: format!("unexpected end of file, expected {what}") }),
        }
    };
    let expect = |got: (usize, &str), want: &str| -> Result<(), FormatError> {
        if got.1 == want {
            Ok(())
        } else {
            Err(FormatError::AsciiStl { line: got.0, message: format!("expected `{want}`, found `{}`", got.1) })
        }
    };
    let number = |got: (usize, &str)| -> Result<f64, FormatError> {
        got.1
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| FormatError::AsciiStl { line: got.0, message: format!("bad number `{}`", got.1) })
    };

    expect(next("solid")?, "solid")?;
    let mut vertices = Vec::new();
    // The solid name is free text up to the first `facet` or `endsolid`.
    let mut tok = next("facet or endsolid")?;
    while tok.1 != "facet" && tok.1 != "endsolid" {
        tok = next("facet or endsolid")?;
    }
    loop {
        match tok.1 {
            "endsolid" => break,
            "facet" => {
                expect(next("normal")?, "normal")?;
                for _ in 0..3 {
                    number(next("normal component")?)?;
                }
                expect(next("outer")?, "outer")?;
                expect(next("loop")?, "loop")?;
                for _ in 0..3 {
                    expect(next("vertex")?, "vertex")?;
                    let x = number(next("x")?)?;
                    let y = number(next("y")?)?;
                    let z = number(next("z")?)?;
                    vertices.push([x, y, z]);
                }
                expect(next("endloop")?, "endloop")?;
                expect(next("endfacet")?, "endfacet")?;
            }
            other => {
                return Err(FormatError::AsciiStl { line: tok.0, message: format!("expected `facet` or `endsolid`, found `{other}`") })
            }
        }
        tok = next("facet or endsolid")?;
    }
    if vertices.is_empty() {
        return Err(FormatError::EmptyMesh);
    }
    let triangles = (0..vertices.len() as u32 / 3).map(|t| [3 * t, 3 * t + 1, 3 * t + 2]).collect();
    Ok(TriangleMesh::new(vertices, triangles)?)
}

/// Binary STL with zero normals and attributes, mainly for fixtures.
pub fn write_binary_stl(mesh: &TriangleMesh) -> Vec<u8> {
    let mut out = vec![0u8; HEADER];
    out.extend_from_slice(&(mesh.triangle_count() as u32).to_le_bytes());
    for t in 0..mesh.triangle_count() {
        out.extend_from_slice(&[0u8; 12]);
        for v in mesh.triangle(t) {
            for c in v {
                out.extend_from_slice(&(c as f32).to_le_bytes());
            }
        }
        out.extend_from_slice(&[0u8; 2]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_triangle() -> TriangleMesh {
        TriangleMesh::new(vec![[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], vec![[0, 1, 2]]).unwrap()
    }

    #[test]
    fn binary_single_triangle() {
        let bytes = write_binary_stl(&one_triangle());
        assert_eq!(bytes.len(), 134);
        let m = parse_stl(&bytes).unwrap();
        assert_eq!(m.triangle_count(), 1);
        assert_eq!(m.triangle(0), one_triangle().triangle(0));
    }

    #[test]
    fn ascii_single_facet() {
        let src = "solid tri\n facet normal 0 0 1\n  outer loop\n   vertex 0 0 0\n   vertex 1 0 0\n   vertex 0 1 0\n  endloop\n endfacet\nendsolid tri\n";
        let m = parse_stl(src.as_bytes()).unwrap();
        assert_eq!(m.triangle_count(), 1);
        assert_eq!(m.triangle(0)[1], [1.0, 0.0, 0.0]);
    }

    #[test]
    fn count_mismatch_is_truncation() {
        let mut bytes = write_binary_stl(&one_triangle());
        bytes[80..84].copy_from_slice(&2u32.to_le_bytes());
        assert!(matches!(parse_stl(&bytes), Err(FormatError::TruncatedStl { expected: 184, actual: 134 })));
    }

    #[test]
    fn binary_header_starting_with_solid() {
        let mut bytes = write_binary_stl(&one_triangle());
        bytes[..5].copy_from_slice(b"solid");
        assert_eq!(parse_stl(&bytes).unwrap().triangle_count(), 1);
    }
}
