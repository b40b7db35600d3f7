//! File formats, reports and the command-line front end for [`stupa_core`].
//!
//! * [`obj`] and [`stl`] read triangle meshes; [`obj`] also writes them.
//! * [`voxel_file`] is the bit-exact `VOXL` occupancy container.
//! * [`report`] emits JSON fit reports and CSV scale tables, and reads
//!   `size,count` census tables.
//! * [`cli`] wires everything into the `stupa` binary.

pub mod cli;
mod error;
pub mod obj;
pub mod report;
pub mod stl;
pub mod voxel_file;

pub use error::FormatError;
