//! Stacked solids built from the level recurrences
//! `width(l+1) = r_h * width(l)` and `height(l+1) = r_v * height(l)`.
//!
//! With the default factors `r_h = 2/3` and `r_v = 3/2` three consecutive
//! levels have widths in the proportion 9:6:4 and heights in 4:6:9.

use alloc::vec::Vec;

use crate::grid::VoxelGrid;
use crate::{Error, Result};

/// Horizontal diminishing factor: each level loses a third of the width below it.
pub const DEFAULT_R_H: f64 = 2.0 / 3.0;
/// Vertical growth factor: each level adds half the height below it.
pub const DEFAULT_R_V: f64 = 1.5;
/// Head : Body : Foot proportion checked by [`ratio_check`].
pub const HEAD_BODY_FOOT: [f64; 3] = [9.0, 6.0, 4.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseShape {
    /// Square prisms.
    Square,
    /// Cylinders.
    Circle,
    /// Cylinders clipped by the sphere of diameter `x0` centred on the stack.
    Sphere,
}

/// Parameters of a level stack. Construction enforces `x0, y0 > 0`,
/// `0 < r_h < 1`, `r_v > 1` and `levels >= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StackSpec {
    base_shape: BaseShape,
    x0: f64,
    y0: f64,
    r_h: f64,
    r_v: f64,
    levels: usize,
}

impl StackSpec {
    /// Spec with the default 2/3 and 3/2 factors.
    pub fn new(base_shape: BaseShape, x0: f64, y0: f64, levels: usize) -> Result<Self> {
        Self::with_ratios(base_shape, x0, y0, DEFAULT_R_H, DEFAULT_R_V, levels)
    }

    pub fn with_ratios(base_shape: BaseShape, x0: f64, y0: f64, r_h: f64, r_v: f64, levels: usize) -> Result<Self> {
        if !(x0.is_finite() && x0 > 0.0) {
            return Err(Error::InvalidArgument("x0 must be positive"));
        }
        if !(y0.is_finite() && y0 > 0.0) {
            return Err(Error::InvalidArgument("y0 must be positive"));
        }
        if !(r_h > 0.0 && r_h < 1.0) {
            return Err(Error::InvalidArgument("r_h must lie in (0, 1)"));
        }
        if !(r_v.is_finite() && r_v > 1.0) {
            return Err(Error::InvalidArgument("r_v must be greater than 1"));
        }
        if levels == 0 {
            return Err(Error::InvalidArgument("levels must be >= 1"));
        }
        Ok(StackSpec { base_shape, x0, y0, r_h, r_v, levels })
    }

    pub fn base_shape(&self) -> BaseShape {
        self.base_shape
    }
    pub fn x0(&self) -> f64 {
        self.x0
    }
    pub fn y0(&self) -> f64 {
        self.y0
    }
    pub fn r_h(&self) -> f64 {
        self.r_h
    }
    pub fn r_v(&self) -> f64 {
        self.r_v
    }
    pub fn levels(&self) -> usize {
        self.levels
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub level: usize,
    pub width: f64,
    pub height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LevelSequence {
    pub entries: Vec<Level>,
}

impl LevelSequence {
    pub fn widths(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.width).collect()
    }

    pub fn heights(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.height).collect()
    }
}

pub fn level_sequence(spec: &StackSpec) -> LevelSequence {
    let mut entries = Vec::with_capacity(spec.levels);
    let (mut width, mut height) = (spec.x0, spec.y0);
    for level in 0..spec.levels {
        entries.push(Level { level, width, height });
        width *= spec.r_h;
        height *= spec.r_v;
    }
    LevelSequence { entries }
}

/// Largest deviation of the first three widths, each relative to the first,
/// from `target` taken the same way. Zero means the proportion is met exactly.
pub fn ratio_check(seq: &LevelSequence, target: [f64; 3]) -> Result<f64> {
    if seq.entries.len() < 3 {
        return Err(Error::InvalidArgument("ratio check needs at least three levels"));
    }
    if !(target[0].is_finite() && target[0] != 0.0) {
        return Err(Error::InvalidArgument("ratio target must start with a non-zero value"));
    }
    let w0 = seq.entries[0].width;
    Ok((0..3)
        .map(|i| (seq.entries[i].width / w0 - target[i] / target[0]).abs())
        .fold(0.0, f64::max))
}

/// Voxel footprint of one rasterized level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelVoxels {
    pub level: usize,
    /// Rounded width in voxels.
    pub width: usize,
    /// Slab thickness in voxels.
    pub thickness: usize,
    /// First z layer of the slab.
    pub z_start: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StackRaster {
    pub grid: VoxelGrid,
    pub levels: Vec<LevelVoxels>,
    /// First level dropped because its width rounded below one voxel.
    pub truncated_at: Option<usize>,
}

/// Rasterizes the stack with `resolution` voxels across the base width.
///
/// Levels share a vertical axis and sit directly on each other. Widths and
/// thicknesses round half away from zero; thickness is at least one voxel.
/// The grid spans the base width on x and y with the axis at model `x = y = 0`
/// and the base at `z = 0`.
pub fn rasterize_stack(spec: &StackSpec, resolution: usize) -> Result<StackRaster> {
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be >= 1"));
    }
    let scale = resolution as f64 / spec.x0;
    let seq = level_sequence(spec);

    let mut levels = Vec::new();
    let mut truncated_at = None;
    let mut z = 0usize;
    for e in &seq.entries {
        let width = libm::round(e.width * scale);
        if width < 1.0 {
            truncated_at = Some(e.level);
            break;
        }
        let thickness = libm::round(e.height * scale).max(1.0);
        if thickness > crate::grid::MAX_CELLS as f64 {
            return Err(Error::ResourceLimit { cells: u128::MAX, limit: crate::grid::MAX_CELLS as u128 });
        }
        let thickness = thickness as usize;
        levels.push(LevelVoxels { level: e.level, width: width as usize, thickness, z_start: z });
        z += thickness;
    }

    let side = resolution;
    let h = spec.x0 / resolution as f64;
    let mut grid = VoxelGrid::new([side, side, z], h, [-0.5 * spec.x0, -0.5 * spec.x0, 0.0])?;
    let axis = 0.5 * side as f64;
    let sphere_r2 = axis * axis;
    let sphere_z = 0.5 * z as f64;

    for lv in &levels {
        let radius = 0.5 * seq.entries[lv.level].width * scale;
        let offset = (side - lv.width) / 2;
        for zz in lv.z_start..lv.z_start + lv.thickness {
            for y in 0..side {
                for x in 0..side {
                    let occupied = match spec.base_shape {
                        BaseShape::Square => {
                            (offset..offset + lv.width).contains(&x) && (offset..offset + lv.width).contains(&y)
                        }
                        BaseShape::Circle | BaseShape::Sphere => {
                            let dx = x as f64 + 0.5 - axis;
                            let dy = y as f64 + 0.5 - axis;
                            let in_disk = dx * dx + dy * dy <= radius * radius;
                            if spec.base_shape == BaseShape::Sphere {
                                let dz = zz as f64 + 0.5 - sphere_z;
                                in_disk && dx * dx + dy * dy + dz * dz <= sphere_r2
                            } else {
                                in_disk
                            }
                        }
                    };
                    if occupied {
                        grid.set(x, y, zz, true)?;
                    }
                }
            }
        }
    }
    Ok(StackRaster { grid, levels, truncated_at })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_body_foot_sequence() {
        let spec = StackSpec::new(BaseShape::Square, 9.0, 4.0, 3).unwrap();
        let seq = level_sequence(&spec);
        assert_eq!(seq.widths(), [9.0, 6.0, 4.0]);
        assert_eq!(seq.heights(), [4.0, 6.0, 9.0]);
        assert_eq!(ratio_check(&seq, HEAD_BODY_FOOT), Ok(0.0));
    }

    #[test]
    fn single_level() {
        let seq = level_sequence(&StackSpec::new(BaseShape::Square, 1.0, 1.0, 1).unwrap());
        assert_eq!(seq.entries, [Level { level: 0, width: 1.0, height: 1.0 }]);
        assert!(ratio_check(&seq, HEAD_BODY_FOOT).is_err());
    }

    #[test]
    fn two_levels() {
        let seq = level_sequence(&StackSpec::new(BaseShape::Square, 8.0, 2.0, 2).unwrap());
        assert_eq!(seq.widths(), [8.0, 16.0 / 3.0]);
        assert_eq!(seq.heights(), [2.0, 3.0]);
    }

    #[test]
    fn default_factors_are_inverse() {
        assert_eq!(DEFAULT_R_H * DEFAULT_R_V, 1.0);
    }

    #[test]
    fn ratio_examples() {
        let seq = |w: [f64; 3]| LevelSequence {
            entries: w.iter().enumerate().map(|(level, &width)| Level { level, width, height: 1.0 }).collect(),
        };
        assert_eq!(ratio_check(&seq([18.0, 12.0, 8.0]), HEAD_BODY_FOOT), Ok(0.0));
        let d = ratio_check(&seq([9.0, 6.0, 5.0]), HEAD_BODY_FOOT).unwrap();
        assert!((d - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn spec_validation() {
        assert!(StackSpec::new(BaseShape::Square, 0.0, 1.0, 1).is_err());
        assert!(StackSpec::new(BaseShape::Square, 1.0, -1.0, 1).is_err());
        assert!(StackSpec::new(BaseShape::Square, 1.0, 1.0, 0).is_err());
        assert!(StackSpec::with_ratios(BaseShape::Square, 1.0, 1.0, 1.0, 1.5, 2).is_err());
        assert!(StackSpec::with_ratios(BaseShape::Square, 1.0, 1.0, 0.5, 1.0, 2).is_err());
    }

    #[test]
    fn single_square_prism() {
        let r = rasterize_stack(&StackSpec::new(BaseShape::Square, 4.0, 2.0, 1).unwrap(), 4).unwrap();
        assert_eq!(r.grid.dims(), [4, 4, 2]);
        assert_eq!(r.grid.occupied_count(), 32);
        assert_eq!(r.truncated_at, None);
    }

    #[test]
    fn nine_six_four_stack() {
        let r = rasterize_stack(&StackSpec::new(BaseShape::Square, 9.0, 4.0, 3).unwrap(), 9).unwrap();
        assert_eq!(r.grid.occupied_count(), 9 * 9 * 4 + 6 * 6 * 6 + 4 * 4 * 9);
        assert_eq!(r.grid.dims(), [9, 9, 19]);
        assert_eq!(r.levels.iter().map(|l| (l.width, l.thickness)).collect::<Vec<_>>(), [(9, 4), (6, 6), (4, 9)]);
    }

    #[test]
    fn unit_disk() {
        let r = rasterize_stack(&StackSpec::new(BaseShape::Circle, 2.0, 1.0, 1).unwrap(), 2).unwrap();
        assert_eq!(r.grid.dims(), [2, 2, 1]);
        assert_eq!(r.grid.occupied_count(), 4);
    }

    #[test]
    fn truncates_below_one_voxel() {
        // Widths 4, 8/3, 16/9, 32/27, 64/81 -> voxels 4, 3, 2, 1, then 0.79 rounds to 1,
        // then 0.53 -> 1, 0.35 -> 0.
        let spec = StackSpec::new(BaseShape::Square, 4.0, 0.25, 10).unwrap();
        let r = rasterize_stack(&spec, 4).unwrap();
        assert_eq!(r.truncated_at, Some(6));
        assert_eq!(r.levels.len(), 6);
        assert!(r.levels.iter().all(|l| l.thickness >= 1));
    }

    #[test]
    fn sphere_clips_cylinders() {
        let spec = StackSpec::new(BaseShape::Sphere, 4.0, 1.0, 4).unwrap();
        let sphere = rasterize_stack(&spec, 32).unwrap();
        let cyl = rasterize_stack(&StackSpec::new(BaseShape::Circle, 4.0, 1.0, 4).unwrap(), 32).unwrap();
        assert_eq!(sphere.grid.dims(), cyl.grid.dims());
        assert!(sphere.grid.occupied_count() > 0);
        assert!(sphere.grid.occupied_count() < cyl.grid.occupied_count());
        for [x, y, z] in sphere.grid.iter_occupied() {
            assert!(cyl.grid.get(x, y, z));
        }
    }
}
