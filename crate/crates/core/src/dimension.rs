//! Box counting and the log-log regression that turns counts into a
//! dimension estimate.
//!
//! Boxes are anchored at the grid's cell `(0, 0, 0)` and tile the grid in
//! steps of `box_side`; partial boxes on the far faces count like full ones.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::VoxelGrid;
use crate::regression::fit_line;
use crate::{Error, Result};

/// Number of occupied boxes at one box size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleCount {
    /// Box edge in voxels.
    pub box_side: usize,
    /// Box edge in model units, `box_side * voxel_size`.
    pub epsilon: f64,
    pub count: u64,
}

/// Regression of `ln(count)` against `ln(1/epsilon)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionFit {
    pub dimension: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Scales that entered the regression, finest first.
    pub scales_used: Vec<ScaleCount>,
    /// Residuals aligned with `scales_used`.
    pub residuals: Vec<f64>,
}

/// Counts the boxes of side `box_side` voxels that contain an occupied cell.
pub fn box_count(grid: &VoxelGrid, box_side: usize) -> Result<ScaleCount> {
    if grid.is_vacant() {
        return Err(Error::EmptySet);
    }
    if box_side == 0 || box_side > grid.max_dim() {
        return Err(Error::InvalidArgument("box_side must be between 1 and the largest grid dimension"));
    }
    let count = if box_side == 1 {
        grid.occupied_count() as u64
    } else {
        let lattice = grid.dims().map(|n| n.div_ceil(box_side));
        let mut marked = vec![0u64; (lattice[0] * lattice[1] * lattice[2]).div_ceil(64)];
        for [x, y, z] in grid.iter_occupied() {
            let b = x / box_side + lattice[0] * (y / box_side + lattice[1] * (z / box_side));
            marked[b >> 6] |= 1 << (b & 63);
        }
        marked.iter().map(|w| w.count_ones() as u64).sum()
    };
    Ok(ScaleCount { box_side, epsilon: box_side as f64 * grid.voxel_size(), count })
}

/// Halves the resolution: a coarse cell is occupied iff any of its (up to)
/// eight children is. The coarse grid's cell `(0, 0, 0)` covers the fine
/// cells `0..2` on every axis.
pub fn coarsen(grid: &VoxelGrid) -> VoxelGrid {
    let dims = grid.dims().map(|n| n.div_ceil(2));
    let mut coarse = VoxelGrid::new(dims, grid.voxel_size() * 2.0, grid.origin())
        .expect("coarsened dims are non-zero and no larger than the input");
    for [x, y, z] in grid.iter_occupied() {
        let i = coarse.linear_index(x / 2, y / 2, z / 2).expect("child maps inside parent");
        coarse.put(i, true);
    }
    coarse
}

/// Counts at box sides `2^m, 2^(m-1), ..., 1`, where `2^m` is the smallest
/// power of two not below the largest grid dimension. The set sits at the low
/// corner of the `2^m` cube, so the first entry always has count 1.
///
/// Each level is built from the previous one by [`coarsen`], so the cost of a
/// level is proportional to the occupied cells one level finer.
pub fn cube_count_dyadic(grid: &VoxelGrid) -> Result<Vec<ScaleCount>> {
    if grid.is_vacant() {
        return Err(Error::EmptySet);
    }
    let h = grid.voxel_size();
    let mut counts = Vec::new();
    let mut side = 1usize;
    counts.push(ScaleCount { box_side: 1, epsilon: h, count: grid.occupied_count() as u64 });
    let mut level = grid.clone();
    while level.max_dim() > 1 {
        level = coarsen(&level);
        side *= 2;
        counts.push(ScaleCount { box_side: side, epsilon: side as f64 * h, count: level.occupied_count() as u64 });
    }
    counts.reverse();
    Ok(counts)
}

/// Fits the dimension after dropping the `discard_low` finest and
/// `discard_high` coarsest scales.
pub fn fit_dimension(scales: &[ScaleCount], discard_low: usize, discard_high: usize) -> Result<DimensionFit> {
    for s in scales {
        if !(s.epsilon.is_finite() && s.epsilon > 0.0) || s.count == 0 {
            return Err(Error::InvalidArgument("scale counts need epsilon > 0 and count >= 1"));
        }
    }
    let mut sorted = scales.to_vec();
    sorted.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
    let keep = sorted.len().saturating_sub(discard_low.saturating_add(discard_high));
    if keep < 2 {
        return Err(Error::InsufficientData { usable: keep });
    }
    let used: Vec<ScaleCount> = sorted.into_iter().skip(discard_low).take(keep).collect();
    let points: Vec<(f64, f64)> =
        used.iter().map(|s| (-libm::log(s.epsilon), libm::log(s.count as f64))).collect();
    let line = fit_line(&points)?;
    Ok(DimensionFit {
        dimension: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        scales_used: used,
        residuals: line.residuals,
    })
}
