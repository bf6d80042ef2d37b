use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::bound_report;
use crate::error::{Error, Result};
use crate::families::FamilySpec;
use crate::types::infinite_as_null;

use super::output::{format_float, TableRow};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergeRow {
    pub n: usize,
    pub k: usize,
    pub divergence_nats: f64,
    #[serde(with = "infinite_as_null")]
    pub theorem_bound: f64,
}

impl TableRow for ConvergeRow {
    fn header() -> &'static [&'static str] {
        &["n", "k", "divergence_nats", "theorem_bound"]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            format_float(self.divergence_nats),
            format_float(self.theorem_bound),
        ]
    }
}

/// `D(Q_k ‖ M_{k,mu_n})` for the Pólya(a, b) process observed up to each `n`.
///
/// The Pólya urn is infinitely exchangeable, so the gap to the finite-`n`
/// mixture shrinks as `n` grows.
pub fn run_converge(a: f64, b: f64, k: usize, n_grid: &[usize]) -> Result<Vec<ConvergeRow>> {
    let family = FamilySpec::Polya { a, b };
    family
        .validate()
        .map_err(|e| Error::config("polya", e.to_string()))?;
    if n_grid.is_empty() {
        return Err(Error::config("n_grid", "must not be empty"));
    }
    if n_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("n_grid", "must be strictly ascending"));
    }
    if k == 0 || k >= n_grid[0] {
        return Err(Error::config(
            "k",
            format!("must satisfy 1 <= k < min(n_grid) = {}", n_grid[0]),
        ));
    }
    n_grid
        .par_iter()
        .map(|&n| {
            let report = bound_report(&family.generate(n)?, k)?;
            Ok(ConvergeRow {
                n,
                k,
                divergence_nats: report.divergence_nats,
                theorem_bound: report.theorem_bound,
            })
        })
        .collect()
}

/// Whether the last divergence is below `first / factor`. `None` for fewer
/// than two rows.
pub fn decays_by(rows: &[ConvergeRow], factor: f64) -> Option<bool> {
    match rows {
        [first, .., last] => Some(last.divergence_nats < first.divergence_nats / factor),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_one_is_zero() {
        let rows = run_converge(1.0, 1.0, 1, &[8, 16, 32]).unwrap();
        assert!(rows.iter().all(|r| r.divergence_nats <= 1e-12));
    }

    #[test]
    fn single_row_has_no_trend() {
        let rows = run_converge(1.0, 1.0, 3, &[8]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(decays_by(&rows, 10.0), None);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(run_converge(0.0, 1.0, 3, &[8]).is_err());
        assert!(run_converge(1.0, 1.0, 8, &[8]).is_err());
        assert!(run_converge(1.0, 1.0, 2, &[16, 8]).is_err());
    }
}
