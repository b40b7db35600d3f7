//! The `stupa` command line.
//!
//! Exit codes: 0 success, 1 usage error, 2 data or format error, 3 numeric
//! failure (too few scales or points, or an empty set). Diagnostics go to
//! standard error; tables and headline numbers go to standard output.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use stupa_core::generator::{DEFAULT_R_H, DEFAULT_R_V, HEAD_BODY_FOOT};
use stupa_core::{
    cube_count_dyadic, fit_dimension, fit_power_law, gen_reference, level_sequence, rasterize_stack, ratio_check,
    solid_fill, voxelize_surface, BaseShape, ReferenceKind, StackSpec, TriangleMesh, VoxelGrid,
};

use crate::{obj, report, stl, voxel_file, FormatError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stupa", version, about = "Box-counting dimension, power-law censuses and level-recurrence stacks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a stacked solid from the level recurrences.
    Generate(GenerateArgs),
    /// Estimate the box-counting dimension of a mesh or voxel file.
    Dimension(DimensionArgs),
    /// Fit a power law to a `size,count` census.
    Census(CensusArgs),
    /// Write an exact reference set (Menger sponge, cube or slab).
    Reference(ReferenceArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Shape {
    Square,
    Circle,
    Sphere,
}

#[derive(Debug, clap::Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    shape: Shape,
    /// Base level width or diameter.
    #[arg(long)]
    x0: f64,
    /// Base level height.
    #[arg(long)]
    y0: f64,
    /// Horizontal diminishing factor.
    #[arg(long, default_value_t = DEFAULT_R_H)]
    rh: f64,
    /// Vertical growth factor.
    #[arg(long, default_value_t = DEFAULT_R_V)]
    rv: f64,
    #[arg(long)]
    levels: usize,
    /// Voxels across the base width.
    #[arg(long)]
    resolution: usize,
    /// Output path ending in `.obj` or `.voxl`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, clap::Args)]
struct DimensionArgs {
    /// Input `.obj`, `.stl` or `.voxl` file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Voxels along the longest bounding-box axis (required for meshes).
    #[arg(long)]
    resolution: Option<usize>,
    /// Fill enclosed cavities before counting.
    #[arg(long)]
    solid: bool,
    /// Finest scales to leave out of the fit.
    #[arg(long, default_value_t = 0)]
    discard_low: usize,
    /// Coarsest scales to leave out of the fit.
    #[arg(long, default_value_t = 0)]
    discard_high: usize,
    /// JSON report path.
    #[arg(long)]
    report: PathBuf,
    /// Optional `box_side,epsilon,count` table.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct CensusArgs {
    /// `size,count` CSV with header.
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Menger,
    Cube,
    Slab,
}

#[derive(Debug, clap::Args)]
struct ReferenceArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Menger depth, or cube/slab side in voxels.
    #[arg(long)]
    size: u32,
    #[arg(long)]
    out: PathBuf,
}

/// A failed command: exit code plus the message for standard error.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
    fn data(message: impl Into<String>) -> Self {
        Failure { code: EXIT_DATA, message: message.into() }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Geometry(g) => g.into(),
            other => Failure::data(other.to_string()),
        }
    }
}

impl From<stupa_core::Error> for Failure {
    fn from(e: stupa_core::Error) -> Self {
        use stupa_core::Error as E;
        let code = match e {
            E::InsufficientData { .. } | E::EmptySet => EXIT_NUMERIC,
            E::ResourceLimit { .. } => EXIT_USAGE,
            E::InvalidArgument(_) | E::DegenerateGeometry => EXIT_DATA,
        };
        Failure { code, message: e.to_string() }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Generate(a) => generate(a, stdout, stderr),
        Command::Dimension(a) => dimension(a, stdout, stderr),
        Command::Census(a) => census(a, stdout),
        Command::Reference(a) => reference(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn extension(path: &Path) -> String {
    path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase()
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::data(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::data(format!("cannot write {}: {e}", path.display())))
}

fn generate(a: GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let ext = extension(&a.out);
    if ext != "obj" && ext != "voxl" {
        return Err(Failure::usage(format!("--out must end in .obj or .voxl, got {}", a.out.display())));
    }
    let shape = match a.shape {
        Shape::Square => BaseShape::Square,
        Shape::Circle => BaseShape::Circle,
        Shape::Sphere => BaseShape::Sphere,
    };
    let spec = StackSpec::with_ratios(shape, a.x0, a.y0, a.rh, a.rv, a.levels).map_err(|e| Failure::usage(e.to_string()))?;
    if a.resolution == 0 {
        return Err(Failure::usage("--resolution must be >= 1"));
    }

    let seq = level_sequence(&spec);
    let raster = rasterize_stack(&spec, a.resolution).map_err(|e| Failure { code: EXIT_USAGE, message: e.to_string() })?;

    let _ = writeln!(stdout, "level\twidth\theight\twidth_voxels\tthickness_voxels");
    for e in &seq.entries {
        match raster.levels.iter().find(|l| l.level == e.level) {
            Some(lv) => {
                let _ = writeln!(stdout, "{}\t{}\t{}\t{}\t{}", e.level, e.width, e.height, lv.width, lv.thickness);
            }
            None => {
                let _ = writeln!(stdout, "{}\t{}\t{}\t-\t-", e.level, e.width, e.height);
            }
        }
    }
    match ratio_check(&seq, HEAD_BODY_FOOT) {
        Ok(d) => {
            let _ = writeln!(stdout, "ratio deviation from 9:6:4: {d}");
        }
        Err(_) => {
            let _ = writeln!(stdout, "ratio deviation from 9:6:4: n/a (fewer than 3 levels)");
        }
    }
    if let Some(level) = raster.truncated_at {
        let _ = writeln!(stderr, "warning: stack truncated at level {level}: width is below one voxel");
    }
    let _ = writeln!(stdout, "occupied cells: {}", raster.grid.occupied_count());

    let bytes = if ext == "obj" {
        obj::write_obj(&TriangleMesh::from_voxel_boundary(&raster.grid))
    } else {
        voxel_file::write_voxel(&raster.grid)
    };
    write(&a.out, &bytes)
}

fn load_grid(a: &DimensionArgs, stderr: &mut dyn Write) -> Result<VoxelGrid, Failure> {
    let ext = extension(&a.input);
    let mesh = match ext.as_str() {
        "voxl" => {
            if a.resolution.is_some() {
                let _ = writeln!(stderr, "warning: --resolution is ignored for voxel input");
            }
            return Ok(voxel_file::read_voxel(&read(&a.input)?)?);
        }
        "obj" | "stl" => {
            let Some(_) = a.resolution else {
                return Err(Failure::usage("mesh input needs --resolution"));
            };
            let bytes = read(&a.input)?;
            if ext == "obj" {
                obj::parse_obj(&bytes)?
            } else {
                stl::parse_stl(&bytes)?
            }
        }
        _ => return Err(Failure::usage(format!("unsupported input {}, expected .obj, .stl or .voxl", a.input.display()))),
    };
    if !mesh.is_closed_manifold() {
        let _ = writeln!(
            stderr,
            "warning: mesh is not a closed manifold; only cavities enclosed at this resolution will be filled"
        );
    }
    let resolution = a.resolution.unwrap_or_default();
    if resolution < 2 {
        return Err(Failure::usage("--resolution must be >= 2"));
    }
    Ok(voxelize_surface(&mesh, resolution)?)
}

fn dimension(a: DimensionArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let mut grid = load_grid(&a, stderr)?;
    if a.solid {
        grid = solid_fill(&grid);
    }
    let scales = cube_count_dyadic(&grid)?;
    if let Some(path) = &a.csv {
        write(path, &report::write_scale_csv(&scales))?;
    }
    let fit = fit_dimension(&scales, a.discard_low, a.discard_high)?;
    write(&a.report, &report::dimension_report(&fit))?;
    let _ = writeln!(stdout, "dimension: {}", fit.dimension);
    let _ = writeln!(stdout, "r_squared: {}", fit.r_squared);
    let _ = writeln!(stdout, "scales used: {}", fit.scales_used.len());
    Ok(())
}

fn census(a: CensusArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let points = report::read_census_csv(&read(&a.input)?)?;
    let fit = fit_power_law(&points)?;
    write(&a.report, &report::power_law_report(&fit, &points))?;
    let _ = writeln!(stdout, "delta: {}", fit.delta);
    let _ = writeln!(stdout, "r_squared: {}", fit.r_squared);
    Ok(())
}

fn reference(a: ReferenceArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let kind = match a.kind {
        Kind::Menger => ReferenceKind::Menger,
        Kind::Cube => ReferenceKind::Cube,
        Kind::Slab => ReferenceKind::Slab,
    };
    let grid = gen_reference(kind, a.size).map_err(|e| Failure::usage(e.to_string()))?;
    write(&a.out, &voxel_file::write_voxel(&grid))?;
    let _ = writeln!(stdout, "occupied cells: {}", grid.occupied_count());
    Ok(())
}
