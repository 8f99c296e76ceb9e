//! Least-squares fit of `ln rounds` against `ln n`.

use serde::{Deserialize, Serialize};

/// The slope is an empirical exponent, always reported with its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    /// `(n, rounds)` pairs, one per distinct `n`.
    pub points: Vec<(usize, f64)>,
    pub slope: f64,
    pub intercept: f64,
    /// Root mean square of the fit residuals in natural-log space.
    pub residual: f64,
    pub label: String,
}

impl ExponentFit {
    /// `None` unless there are at least three distinct `n` with positive rounds.
    pub fn fit(points: &[(usize, f64)]) -> Option<Self> {
        let mut pts: Vec<(usize, f64)> = points.iter().copied().filter(|&(n, r)| n > 0 && r > 0.0).collect();
        pts.sort_by_key(|p| p.0);
        pts.dedup_by_key(|p| p.0);
        if pts.len() < 3 {
            return None;
        }
        let xs: Vec<f64> = pts.iter().map(|p| (p.0 as f64).ln()).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1.ln()).collect();
        let m = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let slope = sxy / sxx;
        let intercept = my - slope * mx;
        let sse: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
        Some(Self {
            points: pts,
            slope,
            intercept,
            residual: (sse / m).sqrt(),
            label: "empirical".into(),
        })
    }
}
