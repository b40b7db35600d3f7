//! Surface voxelization of triangle meshes.
//!
//! A cell is occupied when its closed box overlaps at least one triangle,
//! decided by the separating-axis test over the three box normals, the
//! triangle normal and the nine edge/axis cross products.

use crate::grid::VoxelGrid;
use crate::mesh::{Point3, TriangleMesh};
use crate::{Error, Result};

/// Exact overlap test between a triangle and the closed box `[min, max]`.
/// Touching counts as overlap.
pub fn triangle_box_overlap(tri: &[Point3; 3], min: Point3, max: Point3) -> bool {
    let center: Point3 = core::array::from_fn(|a| 0.5 * (min[a] + max[a]));
    let half: Point3 = core::array::from_fn(|a| 0.5 * (max[a] - min[a]));
    let v = tri.map(|p| sub(p, center));

    for a in 0..3 {
        let lo = v[0][a].min(v[1][a]).min(v[2][a]);
        let hi = v[0][a].max(v[1][a]).max(v[2][a]);
        if lo > half[a] || hi < -half[a] {
            return false;
        }
    }

    let edges = [sub(v[1], v[0]), sub(v[2], v[1]), sub(v[0], v[2])];

    for e in &edges {
        for a in 0..3 {
            let mut unit = [0.0; 3];
            unit[a] = 1.0;
            if separated(&v, cross(unit, *e), half) {
                return false;
            }
        }
    }

    let normal = cross(edges[0], edges[1]);
    let r = half[0] * normal[0].abs() + half[1] * normal[1].abs() + half[2] * normal[2].abs();
    dot(normal, v[0]).abs() <= r
}

fn separated(v: &[Point3; 3], axis: Point3, half: Point3) -> bool {
    let p = v.map(|q| dot(axis, q));
    let r = half[0] * axis[0].abs() + half[1] * axis[1].abs() + half[2] * axis[2].abs();
    let lo = p[0].min(p[1]).min(p[2]);
    let hi = p[0].max(p[1]).max(p[2]);
    lo > r || hi < -r
}

#[inline]
fn sub(a: Point3, b: Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
fn dot(a: Point3, b: Point3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn cross(a: Point3, b: Point3) -> Point3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Grid frame used for a mesh at a given resolution: the longest bounding-box
/// axis spans `resolution` voxels and every axis gets one empty voxel of
/// padding on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceFrame {
    /// Voxels covering the bounding box on each axis, padding excluded.
    pub inner: [usize; 3],
    pub voxel_size: f64,
    pub origin: Point3,
}

impl SurfaceFrame {
    pub fn for_mesh(mesh: &TriangleMesh, resolution: usize) -> Result<Self> {
        if mesh.triangle_count() == 0 {
            return Err(Error::InvalidArgument("mesh has no triangles"));
        }
        if resolution < 2 {
            return Err(Error::InvalidArgument("resolution must be >= 2"));
        }
        let (lo, hi) = mesh.bounding_box().ok_or(Error::InvalidArgument("mesh has no triangles"))?;
        let extent: Point3 = core::array::from_fn(|a| hi[a] - lo[a]);
        let longest = extent[0].max(extent[1]).max(extent[2]);
        if longest.is_nan() || longest <= 0.0 {
            return Err(Error::DegenerateGeometry);
        }
        let voxel_size = longest / resolution as f64;
        let inner = extent.map(|e| (libm::ceil(e / voxel_size) as usize).clamp(1, resolution));
        let origin = lo.map(|c| c - voxel_size);
        Ok(SurfaceFrame { inner, voxel_size, origin })
    }

    pub fn dims(&self) -> [usize; 3] {
        self.inner.map(|n| n + 2)
    }

    /// Whether `(x, y, z)` lies in the unpadded block; padding cells are never occupied.
    pub fn is_inner(&self, cell: [usize; 3]) -> bool {
        (0..3).all(|a| cell[a] >= 1 && cell[a] <= self.inner[a])
    }
}

/// Marks every cell in the unpadded block whose closed box touches a triangle.
pub fn voxelize_surface(mesh: &TriangleMesh, resolution: usize) -> Result<VoxelGrid> {
    let frame = SurfaceFrame::for_mesh(mesh, resolution)?;
    let mut grid = VoxelGrid::new(frame.dims(), frame.voxel_size, frame.origin)?;
    let h = frame.voxel_size;

    for t in 0..mesh.triangle_count() {
        let tri = mesh.triangle(t);
        // One cell of slack on each side absorbs rounding in the index estimate;
        // the overlap test makes the final call.
        let mut range = [(0usize, 0usize); 3];
        for a in 0..3 {
            let lo = tri[0][a].min(tri[1][a]).min(tri[2][a]);
            let hi = tri[0][a].max(tri[1][a]).max(tri[2][a]);
            let first = libm::floor((lo - frame.origin[a]) / h) as isize - 1;
            let last = libm::floor((hi - frame.origin[a]) / h) as isize + 1;
            let first = first.max(1) as usize;
            let last = (last.max(0) as usize).min(frame.inner[a]);
            range[a] = (first, last);
        }
        for z in range[2].0..=range[2].1 {
            for y in range[1].0..=range[1].1 {
                for x in range[0].0..=range[0].1 {
                    if grid.get(x, y, z) {
                        continue;
                    }
                    let min = grid.cell_min(x, y, z);
                    let max = grid.cell_min(x + 1, y + 1, z + 1);
                    if triangle_box_overlap(&tri, min, max) {
                        grid.set(x, y, z, true)?;
                    }
                }
            }
        }
    }
    Ok(grid)
}
