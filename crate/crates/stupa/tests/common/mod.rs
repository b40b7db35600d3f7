#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use stupa_core::VoxelGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Obj,
    Stl,
}

fn binary_stl(count_field: u32, triangles: &[[[f32; 3]; 3]]) -> Vec<u8> {
    let mut out = vec![0u8; 80];
    out.extend_from_slice(&count_field.to_le_bytes());
    for t in triangles {
        out.extend_from_slice(&[0u8; 12]);
        for v in t {
            for c in v {
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        out.extend_from_slice(&[0u8; 2]);
    }
    out
}

const TRI: [[f32; 3]; 3] = [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];

/// Inputs every mesh reader must reject with a diagnostic.
pub fn malformed_corpus() -> Vec<(&'static str, Format, Vec<u8>)> {
    let verts = "v 0 0 0\nv 1 0 0\nv 0 1 0\n";
    let obj = |body: &str| format!("{verts}{body}").into_bytes();
    let facet = |body: &str| format!("solid t\n facet normal 0 0 1\n  outer loop\n{body}").into_bytes();
    let mut extra = binary_stl(1, &[TRI]);
    extra.push(0);
    let nan = binary_stl(1, &[[[f32::NAN, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]]);
    vec![
        ("obj index past end", Format::Obj, obj("f 1 2 9\n")),
        ("obj index zero", Format::Obj, obj("f 0 1 2\n")),
        ("obj negative index before start", Format::Obj, obj("f -5 -1 -2\n")),
        ("obj face with two corners", Format::Obj, obj("f 1 2\n")),
        ("obj bad coordinate", Format::Obj, b"v 0 x 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n".to_vec()),
        ("obj vertex with two coordinates", Format::Obj, b"v 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n".to_vec()),
        ("obj without faces", Format::Obj, verts.as_bytes().to_vec()),
        ("obj empty file", Format::Obj, Vec::new()),
        ("obj repeated corner", Format::Obj, obj("f 1 1 2\n")),
        ("obj nan coordinate", Format::Obj, b"v nan 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n".to_vec()),
        ("obj overflowing coordinate", Format::Obj, b"v 1e999 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n".to_vec()),
        ("obj invalid utf-8", Format::Obj, b"v 0 0 0\nv \xff\xfe 0 0\n".to_vec()),
        ("obj fractional index", Format::Obj, obj("f 1.5 2 3\n")),
        ("obj non-numeric index", Format::Obj, obj("f a b c\n")),
        ("stl empty", Format::Stl, Vec::new()),
        ("stl shorter than header", Format::Stl, vec![0u8; 60]),
        ("stl count larger than body", Format::Stl, binary_stl(2, &[TRI])),
        ("stl trailing byte", Format::Stl, extra),
        ("stl zero triangles", Format::Stl, binary_stl(0, &[])),
        ("stl nan vertex", Format::Stl, nan),
        ("ascii stl missing endloop", Format::Stl, facet("   vertex 0 0 0\n   vertex 1 0 0\n   vertex 0 1 0\n endfacet\nendsolid t\n")),
        ("ascii stl bad number", Format::Stl, facet("   vertex 0 0 0\n   vertex 1 zero 0\n   vertex 0 1 0\n  endloop\n endfacet\nendsolid t\n")),
        ("ascii stl two-vertex facet", Format::Stl, facet("   vertex 0 0 0\n   vertex 1 0 0\n  endloop\n endfacet\nendsolid t\n")),
        ("ascii stl without facets", Format::Stl, b"solid t\nendsolid t\n".to_vec()),
        ("ascii stl cut mid-facet", Format::Stl, facet("   vertex 0 0 0\n   vertex 1")),
    ]
}

pub fn parse(format: Format, bytes: &[u8]) -> Result<stupa_core::TriangleMesh, stupa::FormatError> {
    match format {
        Format::Obj => stupa::obj::parse_obj(bytes),
        Format::Stl => stupa::stl::parse_stl(bytes),
    }
}

/// Per-box triple loop, independent of the library's counters.
pub fn naive_box_count(grid: &VoxelGrid, side: usize) -> u64 {
    let [nx, ny, nz] = grid.dims();
    let mut count = 0;
    for bz in (0..nz).step_by(side) {
        for by in (0..ny).step_by(side) {
            for bx in (0..nx).step_by(side) {
                let hit = (bz..(bz + side).min(nz)).any(|z| {
                    (by..(by + side).min(ny)).any(|y| (bx..(bx + side).min(nx)).any(|x| grid.get(x, y, z)))
                });
                count += hit as u64;
            }
        }
    }
    count
}

/// Textbook least-squares slope of `ln(count)` on `ln(1/side)` for unit voxels.
pub fn oracle_slope(side_counts: &[(usize, u64)]) -> f64 {
    let n = side_counts.len() as f64;
    let xs: Vec<f64> = side_counts.iter().map(|&(s, _)| (1.0 / s as f64).ln()).collect();
    let ys: Vec<f64> = side_counts.iter().map(|&(_, c)| (c as f64).ln()).collect();
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

pub fn stupa(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stupa")).current_dir(dir).args(args).output().expect("run stupa")
}

pub fn json(path: &Path) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}
