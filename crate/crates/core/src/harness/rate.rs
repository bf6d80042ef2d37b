use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::tv_to_mixture;
use crate::error::{Error, Result};
use crate::families::FamilySpec;

use super::output::{format_float, TableRow};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub tv: f64,
}

impl TableRow for RateRow {
    fn header() -> &'static [&'static str] {
        &["family", "n", "k", "tv"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.n.to_string(),
            self.k.to_string(),
            format_float(self.tv),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateOutcome {
    pub rows: Vec<RateRow>,
    /// Least-squares slope of `log tv` against `log n`; `None` when some
    /// total variation is exactly zero or fewer than two grid points exist.
    pub slope: Option<f64>,
}

/// Total variation to the mixture along `n_grid`, and its log-log slope.
pub fn run_rate(family: &FamilySpec, k: usize, n_grid: &[usize]) -> Result<RateOutcome> {
    if n_grid.is_empty() {
        return Err(Error::config("n_grid", "must not be empty"));
    }
    if k == 0 {
        return Err(Error::config("k", "must be >= 1"));
    }
    if let Some(&n) = n_grid.iter().find(|&&n| n <= k) {
        return Err(Error::config(
            "n_grid",
            format!("every n must exceed k = {k}, got n = {n}"),
        ));
    }
    let mut rows = n_grid
        .par_iter()
        .map(|&n| {
            let pi = family.generate(n)?;
            Ok(RateRow {
                family: family.label(),
                n,
                k,
                tv: tv_to_mixture(&pi, k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| r.n);
    let slope = if rows.len() >= 2 && rows.iter().all(|r| r.tv > 0.0) {
        let points: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| ((r.n as f64).ln(), r.tv.ln()))
            .collect();
        Some(least_squares_slope(&points))
    } else {
        None
    };
    Ok(RateOutcome { rows, slope })
}

pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// `start, 2 start, 4 start, ...` up to and including `stop`.
pub fn geometric_grid(start: usize, stop: usize) -> Vec<usize> {
    std::iter::successors(Some(start.max(1)), |&n| n.checked_mul(2))
        .take_while(|&n| n <= stop)
        .collect()
}
