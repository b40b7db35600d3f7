//! Size–frequency censuses and their power-law exponent.

use alloc::vec::Vec;

use crate::dimension::box_count;
use crate::grid::VoxelGrid;
use crate::regression::fit_line;
use crate::{Error, Result};

/// Number of elements observed at one element size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusPoint {
    pub size: f64,
    pub count: f64,
}

/// `count ~ exp(log_prefactor) * size^delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub delta: f64,
    pub log_prefactor: f64,
    pub r_squared: f64,
}

/// OLS of `ln(count)` on `ln(size)`.
pub fn fit_power_law(points: &[CensusPoint]) -> Result<PowerLawFit> {
    for p in points {
        if !(p.size.is_finite() && p.size > 0.0) {
            return Err(Error::InvalidArgument("census sizes must be positive and finite"));
        }
        if !(p.count.is_finite() && p.count > 0.0) {
            return Err(Error::InvalidArgument("census counts must be positive and finite"));
        }
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|p| (libm::log(p.size), libm::log(p.count))).collect();
    let line = fit_line(&logs)?;
    Ok(PowerLawFit { delta: line.slope, log_prefactor: line.intercept, r_squared: line.r_squared })
}

/// Pairs each element size (in voxels) with the number of occupied boxes of
/// that size; sizes are reported in model units.
pub fn census_from_grid(grid: &VoxelGrid, element_sizes: &[usize]) -> Result<Vec<CensusPoint>> {
    element_sizes
        .iter()
        .map(|&s| {
            let sc = box_count(grid, s)?;
            Ok(CensusPoint { size: sc.epsilon, count: sc.count as f64 })
        })
        .collect()
}
