//! Geometry and counting kernels for measuring the box-counting dimension of
//! voxelized solids, fitting size–frequency power laws, and generating stacked
//! solids from level recurrences.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line front end live in the companion `stupa` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod census;
pub mod dimension;
mod error;
pub mod fill;
pub mod generator;
pub mod grid;
pub mod mesh;
pub mod reference;
pub mod regression;
pub mod voxelize;

pub use census::{census_from_grid, fit_power_law, CensusPoint, PowerLawFit};
pub use dimension::{box_count, cube_count_dyadic, fit_dimension, DimensionFit, ScaleCount};
pub use error::Error;
pub use fill::solid_fill;
pub use generator::{level_sequence, rasterize_stack, ratio_check, BaseShape, Level, LevelSequence, LevelVoxels, StackRaster, StackSpec};
pub use grid::VoxelGrid;
pub use mesh::TriangleMesh;
pub use reference::{gen_reference, ReferenceKind};
pub use voxelize::voxelize_surface;

pub type Result<T, E = Error> = core::result::Result<T, E>;
