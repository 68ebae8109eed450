//! Least-squares fit of `N ~ c B (log B)^theta`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::CountSeries;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least 3 usable rows (B >= 3, N > 0), got {0}")]
    TooFewRows(usize),
    #[error("every row has N = 0")]
    AllZero,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub c: f64,
    pub theta: f64,
    /// Root mean square of the residuals in `log(N/B)`.
    pub residual: f64,
    /// `(B, theta)` from consecutive usable rows, at the larger `B`.
    pub local_exponents: Vec<(f64, f64)>,
    pub warnings: Vec<String>,
}

/// Regresses `log(N/B)` on `log log B` with equal weights.
pub fn fit_log_power(series: &CountSeries) -> Result<FitResult, FitError> {
    if !series.rows.is_empty() && series.rows.iter().all(|r| r.n == 0) {
        return Err(FitError::AllZero);
    }
    let mut warnings = Vec::new();
    let mut pts: Vec<(f64, f64, f64)> = Vec::new();
    for r in &series.rows {
        if r.b < 3 {
            warnings.push(format!("B = {} skipped: log log B is not positive", r.b));
            continue;
        }
        if r.n == 0 {
            warnings.push(format!("B = {} skipped: N = 0", r.b));
            continue;
        }
        let b = r.b as f64;
        pts.push((b, b.ln().ln(), (r.n as f64 / b).ln()));
    }
    if pts.len() < 3 {
        return Err(FitError::TooFewRows(pts.len()));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.2).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.1 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.1 - mx) * (p.2 - my)).sum();
    let theta = sxy / sxx;
    let intercept = my - theta * mx;
    let residual = (pts
        .iter()
        .map(|p| (p.2 - intercept - theta * p.1).powi(2))
        .sum::<f64>()
        / m)
        .sqrt();
    let local_exponents = pts
        .windows(2)
        .map(|w| (w[1].0, (w[1].2 - w[0].2) / (w[1].1 - w[0].1)))
        .collect();
    Ok(FitResult {
        c: intercept.exp(),
        theta,
        residual,
        local_exponents,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::CountRow;
    use crate::heights::HeightSpec;

    fn series(f: impl Fn(f64) -> f64) -> CountSeries {
        let rows = (3..=9)
            .map(|e| {
                let b = 10u128.pow(e);
                let n = f(b as f64).floor() as u64;
                CountRow { b, n, baseline: b as u64 }
            })
            .collect();
        CountSeries {
            rows,
            height: HeightSpec::Naive,
            predicted_exponent: 0.0,
        }
    }

    #[test]
    fn exact_power() {
        let fit = fit_log_power(&series(|b| b)).unwrap();
        assert!(fit.theta.abs() < 1e-12);
        assert!((fit.c - 1.0).abs() < 1e-12);
        assert!(fit.residual < 1e-12);
        let fit = fit_log_power(&series(|b| b / b.ln().sqrt())).unwrap();
        assert!((fit.theta + 0.5).abs() < 1e-2);
    }

    #[test]
    fn degenerate() {
        assert_eq!(fit_log_power(&series(|_| 0.0)), Err(FitError::AllZero));
        let mut s = series(|b| b);
        s.rows.truncate(2);
        assert_eq!(fit_log_power(&s), Err(FitError::TooFewRows(2)));
        let mut s = series(|b| b);
        s.rows[0].n = 0;
        let fit = fit_log_power(&s).unwrap();
        assert_eq!(fit.warnings.len(), 1);
        assert_eq!(fit.local_exponents.len(), 5);
    }
}
