//! Exact reference sets with known box-counting dimension.

use crate::grid::{VoxelGrid, MAX_CELLS};
use crate::{Error, Result};

/// Deepest Menger sponge that fits the cell budget (729^3 cells).
pub const MAX_MENGER_DEPTH: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    /// Menger sponge of the given depth, side `3^depth`.
    Menger,
    /// Fully occupied `s^3` cube.
    Cube,
    /// Fully occupied `s x s x 1` slab.
    Slab,
}

/// Builds a reference set with unit voxels at the origin.
pub fn gen_reference(kind: ReferenceKind, size: u32) -> Result<VoxelGrid> {
    match kind {
        ReferenceKind::Menger => menger(size),
        ReferenceKind::Cube | ReferenceKind::Slab => {
            if size == 0 {
                return Err(Error::InvalidArgument("size must be >= 1"));
            }
            let s = size as u128;
            let cells = if kind == ReferenceKind::Cube { s * s * s } else { s * s };
            if cells > MAX_CELLS as u128 {
                return Err(Error::ResourceLimit { cells, limit: MAX_CELLS as u128 });
            }
            let s = size as usize;
            let dims = if kind == ReferenceKind::Cube { [s, s, s] } else { [s, s, 1] };
            VoxelGrid::from_fn(dims, 1.0, [0.0; 3], |_, _, _| true)
        }
    }
}

fn menger(depth: u32) -> Result<VoxelGrid> {
    if depth > MAX_MENGER_DEPTH {
        let side = 3u128.pow(depth.min(40));
        return Err(Error::ResourceLimit { cells: side.saturating_mul(side).saturating_mul(side), limit: MAX_CELLS as u128 });
    }
    let side = 3usize.pow(depth);
    VoxelGrid::from_fn([side; 3], 1.0, [0.0; 3], |x, y, z| in_menger(x, y, z, depth))
}

/// A cell survives unless, at some ternary digit, two or more coordinates sit
/// in the middle third.
fn in_menger(mut x: usize, mut y: usize, mut z: usize, depth: u32) -> bool {
    for _ in 0..depth {
        let middles = (x % 3 == 1) as u8 + (y % 3 == 1) as u8 + (z % 3 == 1) as u8;
        if middles >= 2 {
            return false;
        }
        x /= 3;
        y /= 3;
        z /= 3;
    }
    true
}
