use rayon::prelude::*;
use serde::Serialize;

use crate::engine::bound_report;
use crate::error::{Error, Result};
use crate::families::{Atom, FamilySpec};
use crate::types::BoundReport;

#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub k: usize,
    pub candidates: usize,
    pub argmax: FamilySpec,
    pub report: BoundReport,
    /// `theorem_bound - divergence` at the maximizer.
    pub gap: f64,
}

/// Searches every point mass `delta_ell` and `random_batch` seeded random
/// count vectors for the largest `divergence / theorem_bound`.
///
/// Ties keep the earliest candidate (point masses by `ell`, then seeds), so
/// the result does not depend on scheduling.
pub fn run_extremal(
    n: usize,
    k: usize,
    random_batch: usize,
    base_seed: u64,
) -> Result<ExtremalReport> {
    if n < 2 {
        return Err(Error::config("n", "must be >= 2"));
    }
    if k == 0 || k >= n {
        return Err(Error::config("k", format!("must satisfy 1 <= k < n = {n}")));
    }
    let candidates: Vec<FamilySpec> = (0..=n)
        .map(|ell| FamilySpec::PointMass(Atom::Count(ell)))
        .chain(
            (0..random_batch as u64).map(|i| FamilySpec::RandomDirichlet {
                seed: base_seed.wrapping_add(i),
            }),
        )
        .collect();
    let reports = candidates
        .par_iter()
        .map(|family| bound_report(&family.generate(n)?, k))
        .collect::<Result<Vec<_>>>()?;
    let best = reports.iter().enumerate().fold(0, |best, (i, r)| {
        if r.ratio > reports[best].ratio {
            i
        } else {
            best
        }
    });
    let report = reports[best].clone();
    Ok(ExtremalReport {
        n,
        k,
        candidates: candidates.len(),
        argmax: candidates[best].clone(),
        gap: report.gap(),
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_one_has_zero_ratio() {
        let r = run_extremal(16, 1, 4, 0).unwrap();
        assert!(r.report.ratio <= 1e-12);
        let r = run_extremal(2, 1, 0, 0).unwrap();
        assert!(r.report.ratio <= 1e-12);
    }

    #[test]
    fn interior_point_mass_wins() {
        let r = run_extremal(16, 8, 16, 7).unwrap();
        assert!(r.report.ratio > 0.0 && r.report.ratio < 1.0);
        match r.argmax {
            FamilySpec::PointMass(Atom::Count(ell)) => assert!(ell > 0 && ell < 16),
            ref other => panic!("expected a point mass, got {other}"),
        }
    }

    #[test]
    fn rejects_k_equal_n() {
        assert!(run_extremal(4, 4, 0, 0).is_err());
    }
}
