use thiserror::Error;

/// Errors raised while decoding or encoding files.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("OBJ line {line}: {message}")]
    Obj { line: usize, message: String },
    #[error("STL line {line}: {message}")]
    AsciiStl { line: usize, message: String },
    #[error("truncated STL: expected {expected} bytes, found {actual}")]
    TruncatedStl { expected: u64, actual: u64 },
    #[error("mesh has no faces")]
    EmptyMesh,
    #[error("voxel file: {0}")]
    Voxel(String),
    #[error("CSV row {row}: {message}")]
    Csv { row: u64, message: String },
    #[error(transparent)]
    Geometry(#[from] stupa_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
