//! Indexed triangle meshes.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::grid::VoxelGrid;
use crate::{Error, Result};

pub type Point3 = [f64; 3];

/// Indexed triangle soup.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    vertices: Vec<Point3>,
    triangles: Vec<[u32; 3]>,
}

impl TriangleMesh {
    /// Validates indices and coordinates. A triangle that repeats a vertex
    /// index is rejected; distinct indices at coincident positions are kept.
    pub fn new(vertices: Vec<Point3>, triangles: Vec<[u32; 3]>) -> Result<Self> {
        if vertices.iter().flatten().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("vertex coordinates must be finite"));
        }
        if vertices.len() > u32::MAX as usize {
            return Err(Error::InvalidArgument("too many vertices"));
        }
        for t in &triangles {
            if t.iter().any(|&i| i as usize >= vertices.len()) {
                return Err(Error::InvalidArgument("triangle index out of range"));
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::InvalidArgument("degenerate triangle (repeated vertex index)"));
            }
        }
        Ok(TriangleMesh { vertices, triangles })
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn triangle(&self, i: usize) -> [Point3; 3] {
        self.triangles[i].map(|v| self.vertices[v as usize])
    }

    /// Axis-aligned bounds over the vertices referenced by triangles.
    pub fn bounding_box(&self) -> Option<(Point3, Point3)> {
        let mut it = self.triangles.iter().flatten().map(|&i| self.vertices[i as usize]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), p| {
            (core::array::from_fn(|a| lo[a].min(p[a])), core::array::from_fn(|a| hi[a].max(p[a])))
        }))
    }

    /// True when every edge, matched by vertex position, is shared by
    /// exactly two triangles. Positions are compared exactly, so unwelded
    /// soups such as STL files are handled.
    pub fn is_closed_manifold(&self) -> bool {
        if self.triangles.is_empty() {
            return false;
        }
        let key = |i: u32| self.vertices[i as usize].map(|c| (c + 0.0).to_bits());
        let mut edges: BTreeMap<([u64; 3], [u64; 3]), u32> = BTreeMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                let (ka, kb) = (key(a), key(b));
                let e = if ka <= kb { (ka, kb) } else { (kb, ka) };
                *edges.entry(e).or_insert(0) += 1;
            }
        }
        edges.values().all(|&n| n == 2)
    }

    /// Boundary faces of the occupied cells as outward-facing triangles,
    /// two per exposed cell face, with shared corners welded.
    pub fn from_voxel_boundary(grid: &VoxelGrid) -> Self {
        // Corner offsets for each face, counter-clockwise seen from outside.
        const FACES: [([isize; 3], [[usize; 3]; 4]); 6] = [
            ([-1, 0, 0], [[0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 0]]),
            ([1, 0, 0], [[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]]),
            ([0, -1, 0], [[0, 0, 0], [1, 0, 0], [1, 0, 1], [0, 0, 1]]),
            ([0, 1, 0], [[0, 1, 0], [0, 1, 1], [1, 1, 1], [1, 1, 0]]),
            ([0, 0, -1], [[0, 0, 0], [0, 1, 0], [1, 1, 0], [1, 0, 0]]),
            ([0, 0, 1], [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]]),
        ];
        let mut lattice: BTreeMap<[usize; 3], u32> = BTreeMap::new();
        let mut vertices = Vec::new();
        let mut triangles = Vec::new();
        let origin = grid.origin();
        let h = grid.voxel_size();
        for cell in grid.iter_occupied() {
            for (dir, corners) in FACES.iter() {
                let neighbour_occupied = match neighbour(cell, *dir) {
                    Some([x, y, z]) => grid.get(x, y, z),
                    None => false,
                };
                if neighbour_occupied {
                    continue;
                }
                let quad = corners.map(|c| {
                    let p = [cell[0] + c[0], cell[1] + c[1], cell[2] + c[2]];
                    *lattice.entry(p).or_insert_with(|| {
                        vertices.push(core::array::from_fn(|a| origin[a] + p[a] as f64 * h));
                        (vertices.len() - 1) as u32
                    })
                });
                triangles.push([quad[0], quad[1], quad[2]]);
                triangles.push([quad[0], quad[2], quad[3]]);
            }
        }
        TriangleMesh { vertices, triangles }
    }
}

fn neighbour(cell: [usize; 3], dir: [isize; 3]) -> Option<[usize; 3]> {
    let mut out = [0; 3];
    for a in 0..3 {
        out[a] = cell[a].checked_add_signed(dir[a])?;
    }
    Some(out)
}
