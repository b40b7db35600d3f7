//! Ordinary least squares on a straight line.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Result of fitting `y = slope * x + intercept`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination; 1 when the response has no variance.
    pub r_squared: f64,
    /// `y - (slope * x + intercept)` in input order.
    pub residuals: Vec<f64>,
}

/// Unweighted OLS. Needs at least two distinct `x` values.
pub fn fit_line(points: &[(f64, f64)]) -> Result<LineFit> {
    let n = points.len();
    let distinct = match points.first() {
        Some(&(x0, _)) => points.iter().any(|&(x, _)| x != x0),
        None => false,
    };
    if n < 2 || !distinct {
        return Err(Error::InsufficientData { usable: if distinct { n } else { n.min(1) } });
    }
    let nf = n as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let dx = x - mean_x;
        let dy = y - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let residuals: Vec<f64> = points.iter().map(|&(x, y)| y - (slope * x + intercept)).collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let r_squared = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 1.0 };
    Ok(LineFit { slope, intercept, r_squared, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let f = fit_line(&[(0.0, 1.0), (1.0, 3.0), (2.0, 5.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 1.0).abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn noisy_line_matches_closed_form() {
        // Hand-computed: x = 0..3, y = (1, 2, 2, 4): sxx = 5, sxy = 4.5, syy = 4.75.
        let f = fit_line(&[(0.0, 1.0), (1.0, 2.0), (2.0, 2.0), (3.0, 4.0)]).unwrap();
        assert!((f.slope - 0.9).abs() < 1e-12);
        assert!((f.intercept - 0.9).abs() < 1e-12);
        assert!((f.r_squared - 4.05 / 4.75).abs() < 1e-12);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(fit_line(&[]), Err(Error::InsufficientData { usable: 0 })));
        assert!(matches!(fit_line(&[(1.0, 1.0)]), Err(Error::InsufficientData { usable: 1 })));
        assert!(matches!(fit_line(&[(1.0, 1.0), (1.0, 2.0)]), Err(Error::InsufficientData { .. })));
    }
}
