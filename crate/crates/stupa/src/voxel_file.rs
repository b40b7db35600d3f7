//! `VOXL` occupancy container.
//!
//! ```text
//! offset  size  field
//!      0     4  magic "VOXL"
//!      4     4  version, u32 = 1
//!      8    12  nx, ny, nz, u32 each
//!     20     8  voxel_size, f64
//!     28    24  origin x, y, z, f64 each
//!     52     *  payload, ceil(nx*ny*nz / 8) bytes
//! ```
//!
//! All multi-byte fields are little-endian. Payload bit `i` (bit `i % 8` of
//! byte `i / 8`, least significant first) is cell `i` in x-fastest order.
//! Unused bits of the final byte are zero.

use stupa_core::grid::MAX_CELLS;
use stupa_core::VoxelGrid;

use crate::FormatError;

pub const MAGIC: &[u8; 4] = b"VOXL";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 52;

pub fn write_voxel(grid: &VoxelGrid) -> Vec<u8> {
    let n = grid.cell_count();
    let mut out = Vec::with_capacity(HEADER_LEN + n.div_ceil(8));
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    for d in grid.dims() {
        // Grids are capped well below u32::MAX cells per axis.
        out.extend_from_slice(&(d as u32).to_le_bytes());
    }
    out.extend_from_slice(&grid.voxel_size().to_le_bytes());
    for o in grid.origin() {
        out.extend_from_slice(&o.to_le_bytes());
    }
    let mut payload = vec![0u8; n.div_ceil(8)];
    for [x, y, z] in grid.iter_occupied() {
        let i = grid.linear_index(x, y, z).expect("occupied cell is in range");
        payload[i / 8] |= 1 << (i % 8);
    }
    out.extend_from_slice(&payload);
    out
}

fn bad(msg: impl Into<String>) -> FormatError {
    FormatError::Voxel(msg.into())
}

pub fn read_voxel(bytes: &[u8]) -> Result<VoxelGrid, FormatError> {
    if bytes.len() < HEADER_LEN {
        return Err(bad(format!("header needs {HEADER_LEN} bytes, found {}", bytes.len())));
    }
    if &bytes[0..4] != MAGIC {
        return Err(bad("bad magic, expected \"VOXL\""));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let dims = [u32_at(8) as usize, u32_at(12) as usize, u32_at(16) as usize];
    if dims.contains(&0) {
        return Err(bad("dimensions must be >= 1"));
    }
    let cells = dims.iter().map(|&d| d as u128).product::<u128>();
    if cells > MAX_CELLS as u128 {
        return Err(bad(format!("dimensions {dims:?} exceed the {MAX_CELLS}-cell limit")));
    }
    let cells = cells as usize;
    let voxel_size = f64_at(20);
    let origin = [f64_at(28), f64_at(36), f64_at(44)];

    let payload = &bytes[HEADER_LEN..];
    if payload.len() != cells.div_ceil(8) {
        return Err(bad(format!(
            "payload is {} bytes, dimensions {dims:?} need {}",
            payload.len(),
            cells.div_ceil(8)
        )));
    }
    if !cells.is_multiple_of(8) && payload[payload.len() - 1] >> (cells % 8) != 0 {
        return Err(bad("unused bits in the final payload byte are not zero"));
    }

    let mut grid = VoxelGrid::new(dims, voxel_size, origin).map_err(|e| bad(e.to_string()))?;
    for (b, &byte) in payload.iter().enumerate() {
        let mut bits = byte;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            grid.set_index(b * 8 + k, true).map_err(|e| bad(e.to_string()))?;
        }
    }
    Ok(grid)
}
