//! Interior filling of surface grids.

use alloc::vec;
use alloc::vec::Vec;

use crate::grid::VoxelGrid;

/// Flood-fills the exterior from every empty boundary cell (6-connected) and
/// returns its complement, so enclosed cavities become occupied.
pub fn solid_fill(surface: &VoxelGrid) -> VoxelGrid {
    let [nx, ny, nz] = surface.dims();
    let total = surface.cell_count();
    let mut exterior = vec![false; total];
    let mut stack: Vec<usize> = Vec::new();

    let seed = |x: usize, y: usize, z: usize, exterior: &mut Vec<bool>, stack: &mut Vec<usize>| {
        let i = x + nx * (y + ny * z);
        if !exterior[i] && !surface.get_index(i) {
            exterior[i] = true;
            stack.push(i);
        }
    };
    for z in 0..nz {
        for y in 0..ny {
            for x in 0..nx {
                let on_boundary =
                    x == 0 || y == 0 || z == 0 || x + 1 == nx || y + 1 == ny || z + 1 == nz;
                if on_boundary {
                    seed(x, y, z, &mut exterior, &mut stack);
                }
            }
        }
    }

    while let Some(i) = stack.pop() {
        let [x, y, z] = surface.coords(i);
        let mut visit = |j: usize| {
            if !exterior[j] && !surface.get_index(j) {
                exterior[j] = true;
                stack.push(j);
            }
        };
        if x > 0 {
            visit(i - 1);
        }
        if x + 1 < nx {
            visit(i + 1);
        }
        if y > 0 {
            visit(i - nx);
        }
        if y + 1 < ny {
            visit(i + nx);
        }
        if z > 0 {
            visit(i - nx * ny);
        }
        if z + 1 < nz {
            visit(i + nx * ny);
        }
    }

    let mut solid = surface.clone();
    for (i, &outside) in exterior.iter().enumerate() {
        if !outside {
            solid.put(i, true);
        }
    }
    solid
}
