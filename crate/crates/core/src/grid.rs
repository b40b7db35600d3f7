//! Bit-packed occupancy grid.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Upper bound on the number of cells a single grid may hold (3^18, a depth-6
/// Menger sponge).
pub const MAX_CELLS: usize = 387_420_489;

/// Axis-aligned occupancy grid with a physical voxel edge length.
///
/// Cells are addressed by `(x, y, z)` and stored one bit per cell with `x`
/// varying fastest, then `y`, then `z`. Bits past the last cell are always
/// zero, so derived equality is equality of the occupied sets.
#[derive(Debug, Clone, PartialEq)]
pub struct VoxelGrid {
    dims: [usize; 3],
    voxel_size: f64,
    origin: [f64; 3],
    words: Vec<u64>,
}

impl VoxelGrid {
    /// Creates an all-empty grid.
    pub fn new(dims: [usize; 3], voxel_size: f64, origin: [f64; 3]) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::InvalidArgument("grid dimensions must be >= 1"));
        }
        if !(voxel_size.is_finite() && voxel_size > 0.0) {
            return Err(Error::InvalidArgument("voxel_size must be a finite positive number"));
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidArgument("origin must be finite"));
        }
        let cells = dims.iter().map(|&d| d as u128).product::<u128>();
        if cells > MAX_CELLS as u128 {
            return Err(Error::ResourceLimit { cells, limit: MAX_CELLS as u128 });
        }
        let len = cells as usize;
        Ok(VoxelGrid { dims, voxel_size, origin, words: vec![0; len.div_ceil(64)] })
    }

    /// Builds a grid whose cell `(x, y, z)` is occupied iff `occupied(x, y, z)`.
    pub fn from_fn<F>(dims: [usize; 3], voxel_size: f64, origin: [f64; 3], mut occupied: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> bool,
    {
        let mut grid = Self::new(dims, voxel_size, origin)?;
        let mut i = 0;
        for z in 0..dims[2] {
            for y in 0..dims[1] {
                for x in 0..dims[0] {
                    if occupied(x, y, z) {
                        grid.words[i >> 6] |= 1 << (i & 63);
                    }
                    i += 1;
                }
            }
        }
        Ok(grid)
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn voxel_size(&self) -> f64 {
        self.voxel_size
    }

    pub fn origin(&self) -> [f64; 3] {
        self.origin
    }

    /// Total number of cells, `nx * ny * nz`.
    pub fn cell_count(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    /// True when no cell is occupied.
    pub fn is_vacant(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn occupied_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(1)
    }

    pub fn in_bounds(&self, x: usize, y: usize, z: usize) -> bool {
        x < self.dims[0] && y < self.dims[1] && z < self.dims[2]
    }

    /// Linear index of an in-range cell.
    #[inline]
    pub fn linear_index(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        self.in_bounds(x, y, z).then(|| x + self.dims[0] * (y + self.dims[1] * z))
    }

    /// Cell coordinates of a linear index.
    #[inline]
    pub fn coords(&self, index: usize) -> [usize; 3] {
        let plane = self.dims[0] * self.dims[1];
        [index % self.dims[0], (index % plane) / self.dims[0], index / plane]
    }

    /// Occupancy of `(x, y, z)`; cells outside the grid read as empty.
    #[inline]
    pub fn get(&self, x: usize, y: usize, z: usize) -> bool {
        match self.linear_index(x, y, z) {
            Some(i) => self.bit(i),
            None => false,
        }
    }

    /// Occupancy by linear index; out-of-range indices read as empty.
    #[inline]
    pub fn get_index(&self, index: usize) -> bool {
        index < self.cell_count() && self.bit(index)
    }

    pub fn set(&mut self, x: usize, y: usize, z: usize, occupied: bool) -> Result<()> {
        let i = self
            .linear_index(x, y, z)
            .ok_or(Error::InvalidArgument("cell coordinates out of range"))?;
        self.put(i, occupied);
        Ok(())
    }

    pub fn set_index(&mut self, index: usize, occupied: bool) -> Result<()> {
        if index >= self.cell_count() {
            return Err(Error::InvalidArgument("cell index out of range"));
        }
        self.put(index, occupied);
        Ok(())
    }

    /// Occupied cells in storage order.
    pub fn iter_occupied(&self) -> impl Iterator<Item = [usize; 3]> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &word)| {
            let mut bits = word;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
        .map(move |i| self.coords(i))
    }

    /// Model-space minimum corner of cell `(x, y, z)`.
    pub fn cell_min(&self, x: usize, y: usize, z: usize) -> [f64; 3] {
        let c = [x, y, z];
        core::array::from_fn(|a| self.origin[a] + c[a] as f64 * self.voxel_size)
    }

    #[inline]
    fn bit(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn put(&mut self, i: usize, occupied: bool) {
        let mask = 1u64 << (i & 63);
        if occupied {
            self.words[i >> 6] |= mask;
        } else {
            self.words[i >> 6] &= !mask;
        }
    }
}
