use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    /// `log count - (slope log H + intercept)` per used point.
    pub residuals: Vec<f64>,
    /// Points dropped for a nonpositive `H` or count.
    pub dropped: Vec<(f64, f64)>,
}

/// Least-squares line through `(log H, log count)`.
pub fn fit_exponent(series: &[(f64, f64)]) -> Result<ExponentFit> {
    let mut used = Vec::new();
    let mut dropped = Vec::new();
    for &(h, count) in series {
        if h > 0.0 && count > 0.0 && h.is_finite() && count.is_finite() {
            used.push((h.ln(), count.ln()));
        } else {
            log::warn!("dropping point (H = {h}, count = {count}) from the exponent fit");
            dropped.push((h, count));
        }
    }
    if used.len() < 3 {
        return Err(Error::invalid(format!("exponent fit needs at least 3 usable points, got {}", used.len())));
    }
    let m = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / m;
    let my = used.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = used.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("exponent fit needs at least two distinct H values"));
    }
    let sxy: f64 = used.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = used.iter().map(|p| p.1 - (slope * p.0 + intercept)).collect();
    Ok(ExponentFit { slope, intercept, residuals, dropped })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let f = fit_exponent(&[(10.0, 100.0), (20.0, 400.0), (40.0, 1600.0)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept.exp() - 1.0).abs() < 1e-9);
        assert!(f.residuals.iter().all(|r| r.abs() < 1e-12));
    }

    #[test]
    fn constant_counts() {
        let f = fit_exponent(&[(1.0, 7.0), (2.0, 7.0), (5.0, 7.0)]).unwrap();
        assert!(f.slope.abs() < 1e-12);
    }

    #[test]
    fn nonpositive_points_are_dropped() {
        let f = fit_exponent(&[(1.0, 0.0), (2.0, 8.0), (4.0, 64.0), (8.0, 512.0)]).unwrap();
        assert_eq!(f.dropped, vec![(1.0, 0.0)]);
        assert!((f.slope - 3.0).abs() < 1e-12);
        assert!(fit_exponent(&[(1.0, 0.0), (2.0, 8.0), (4.0, 64.0)]).is_err());
    }
}
