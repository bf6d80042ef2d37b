use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::bound_report;
use crate::error::Result;
use crate::families::FamilySpec;
use crate::types::{infinite_as_null, BoundReport};

use super::config::SweepConfig;
use super::output::{format_float, TableRow};

/// One `(family, n, k)` cell of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    pub n: usize,
    pub k: usize,
    pub divergence_nats: f64,
    pub tv: f64,
    #[serde(with = "infinite_as_null")]
    pub theorem_bound: f64,
    #[serde(with = "infinite_as_null")]
    pub pinsker_tv_bound: f64,
    pub ratio: f64,
}

impl SweepRow {
    pub fn from_report(family: String, r: &BoundReport) -> Self {
        Self {
            family,
            n: r.n,
            k: r.k,
            divergence_nats: r.divergence_nats,
            tv: r.tv,
            theorem_bound: r.theorem_bound,
            pinsker_tv_bound: r.pinsker_tv_bound,
            ratio: r.ratio,
        }
    }

    pub fn violates_theorem(&self) -> bool {
        self.divergence_nats > self.theorem_bound
    }

    pub fn violates_pinsker(&self) -> bool {
        self.tv > self.pinsker_tv_bound.min(2.0)
    }
}

impl TableRow for SweepRow {
    fn header() -> &'static [&'static str] {
        &[
            "family",
            "n",
            "k",
            "divergence_nats",
            "tv",
            "theorem_bound",
            "pinsker_tv_bound",
            "ratio",
        ]
    }

    fn fields(&self) -> Vec<String> {
        vec![
            self.family.clone(),
            self.n.to_string(),
            self.k.to_string(),
            format_float(self.divergence_nats),
            format_float(self.tv),
            format_float(self.theorem_bound),
            format_float(self.pinsker_tv_bound),
            format_float(self.ratio),
        ]
    }
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Rows with `divergence > theorem_bound`.
    pub violations: usize,
}

impl SweepOutcome {
    pub fn max_ratio(&self) -> f64 {
        self.rows.iter().map(|r| r.ratio).fold(0.0, f64::max)
    }
}

/// Evaluates every `(family, n, k)` cell. Cells run in parallel; rows come
/// back ordered by family position in the config, then `n`, then `k`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let mut cells = Vec::new();
    for (index, family) in config.families.iter().enumerate() {
        for &n in &config.n_grid {
            for k in config.k_rule.resolve(n)? {
                cells.push((index, family, n, k));
            }
        }
    }
    let mut keyed = cells
        .into_par_iter()
        .map(|(index, family, n, k)| sweep_cell(family, n, k).map(|row| ((index, n, k), row)))
        .collect::<Result<Vec<_>>>()?;
    keyed.sort_by_key(|(key, _)| *key);
    let rows: Vec<SweepRow> = keyed.into_iter().map(|(_, row)| row).collect();
    let violations = rows.iter().filter(|r| r.violates_theorem()).count();
    Ok(SweepOutcome { rows, violations })
}

pub fn sweep_cell(family: &FamilySpec, n: usize, k: usize) -> Result<SweepRow> {
    let pi = family.generate(n)?;
    Ok(SweepRow::from_report(
        family.label(),
        &bound_report(&pi, k)?,
    ))
}
