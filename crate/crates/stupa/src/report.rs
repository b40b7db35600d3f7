//! JSON fit reports, CSV scale tables and census CSV input.

use serde::Serialize;
use stupa_core::{CensusPoint, DimensionFit, PowerLawFit, ScaleCount};

use crate::FormatError;

#[derive(Debug, Serialize)]
pub struct ScaleRow {
    pub box_side: usize,
    pub epsilon: f64,
    pub count: u64,
}

impl From<&ScaleCount> for ScaleRow {
    fn from(s: &ScaleCount) -> Self {
        ScaleRow { box_side: s.box_side, epsilon: s.epsilon, count: s.count }
    }
}

#[derive(Debug, Serialize)]
pub struct DimensionReport {
    pub dimension: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub scales_used: Vec<ScaleRow>,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct CensusRow {
    pub size: f64,
    pub count: f64,
}

#[derive(Debug, Serialize)]
pub struct PowerLawReport {
    pub delta: f64,
    /// Same value as `log_prefactor`: the regression intercept in log space.
    pub intercept: f64,
    pub log_prefactor: f64,
    pub r_squared: f64,
    pub scales_used: Vec<CensusRow>,
}

fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("report types serialize infallibly");
    out.push(b'\n');
    out
}

pub fn dimension_report(fit: &DimensionFit) -> Vec<u8> {
    to_json(&DimensionReport {
        dimension: fit.dimension,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
        scales_used: fit.scales_used.iter().map(ScaleRow::from).collect(),
        residuals: fit.residuals.clone(),
    })
}

pub fn power_law_report(fit: &PowerLawFit, points: &[CensusPoint]) -> Vec<u8> {
    to_json(&PowerLawReport {
        delta: fit.delta,
        intercept: fit.log_prefactor,
        log_prefactor: fit.log_prefactor,
        r_squared: fit.r_squared,
        scales_used: points.iter().map(|p| CensusRow { size: p.size, count: p.count }).collect(),
    })
}

/// `box_side,epsilon,count` table, one row per scale in the given order.
pub fn write_scale_csv(scales: &[ScaleCount]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if scales.is_empty() {
        w.write_record(["box_side", "epsilon", "count"]).expect("writing to memory");
    }
    for s in scales {
        w.serialize(ScaleRow::from(s)).expect("writing to memory");
    }
    w.into_inner().expect("flushing to memory")
}

/// Reads a `size,count` table. The header is required; blank lines and lines
/// starting with `#` are skipped. Row numbers in errors are file line numbers.
pub fn read_census_csv(bytes: &[u8]) -> Result<Vec<CensusPoint>, FormatError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let headers = rdr.headers().map_err(|e| csv_error(&e, 1))?.clone();
    let header_line = rdr.position().line();
    if headers.len() != 2 || &headers[0] != "size" || &headers[1] != "count" {
        return Err(FormatError::Csv {
            row: header_line.max(1),
            message: format!("expected header `size,count`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(&e, 0))?;
        let row = record.position().map_or(0, |p| p.line());
        if record.len() != 2 {
            return Err(FormatError::Csv { row, message: format!("expected 2 fields, found {}", record.len()) });
        }
        let field = |i: usize, name: &str| -> Result<f64, FormatError> {
            let v: f64 = record[i]
                .parse()
                .map_err(|_| FormatError::Csv { row, message: format!("{name} `{}` is not a number", &record[i]) })?;
            if !(v.is_finite() && v > 0.0) {
                return Err(FormatError::Csv { row, message: format!("{name} must be positive, found {v}") });
            }
            Ok(v)
        };
        points.push(CensusPoint { size: field(0, "size")?, count: field(1, "count")? });
    }
    Ok(points)
}

fn csv_error(e: &csv::Error, fallback_row: u64) -> FormatError {
    let row = e.position().map_or(fallback_row, |p| p.line());
    FormatError::Csv { row, message: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use stupa_core::{cube_count_dyadic, fit_dimension, VoxelGrid};

    #[test]
    fn cube_report_has_exact_three() {
        let g = VoxelGrid::from_fn([8, 8, 8], 1.0, [0.0; 3], |_, _, _| true).unwrap();
        let fit = fit_dimension(&cube_count_dyadic(&g).unwrap(), 0, 0).unwrap();
        let json = String::from_utf8(dimension_report(&fit)).unwrap();
        assert!(json.contains("\"dimension\": 3.0"), "{json}");
        for key in ["intercept", "r_squared", "scales_used", "residuals"] {
            assert!(json.contains(&format!("\"{key}\"")));
        }
    }

    #[test]
    fn scale_csv() {
        let scales = [ScaleCount { box_side: 2, epsilon: 1.0, count: 8 }, ScaleCount { box_side: 1, epsilon: 0.5, count: 64 }];
        let text = String::from_utf8(write_scale_csv(&scales)).unwrap();
        assert_eq!(text, "box_side,epsilon,count\n2,1.0,8\n1,0.5,64\n");
        assert_eq!(String::from_utf8(write_scale_csv(&[])).unwrap(), "box_side,epsilon,count\n");
    }

    #[test]
    fn census_csv() {
        let pts = read_census_csv(b"# note\nsize,count\n1,1\n2, 0.25\n\n4,0.0625\n").unwrap();
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[1], CensusPoint { size: 2.0, count: 0.25 });
    }

    #[test]
    fn census_csv_errors_carry_rows() {
        let e = read_census_csv(b"size,count\n1,1\n-2,3\n").unwrap_err();
        assert!(matches!(e, FormatError::Csv { row: 3, .. }), "{e}");
        let e = read_census_csv(b"size,count\n1,abc\n").unwrap_err();
        assert!(matches!(e, FormatError::Csv { row: 2, .. }), "{e}");
        assert!(matches!(read_census_csv(b"width,n\n1,1\n"), Err(FormatError::Csv { .. })));
        assert!(matches!(read_census_csv(b"size,count\n1,2,3\n"), Err(FormatError::Csv { .. })));
    }
}
