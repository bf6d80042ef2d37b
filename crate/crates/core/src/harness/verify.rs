//! Equivalence and identity suites: engine against enumeration, the chain
//! rule, the convexity step, and domination by the three-term bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{
    averaged_conditional_divergence, bound_values, conditional_divergence,
    conditional_mutual_information, divergence_to_mixture, lemma_term_bounds, marginal_weight_pmf,
    tv_to_mixture,
};
use crate::error::{Error, Result};
use crate::families::{standard_bank, FamilySpec};
use crate::oracle::{
    enumerate_joint, oracle_conditional_divergence, oracle_conditional_mi, oracle_divergence,
    oracle_first_k, oracle_tv, MAX_ORACLE_N,
};
use crate::types::CountPMF;

pub const MARGINAL_TOLERANCE: f64 = 1e-12;
pub const DIVERGENCE_TOLERANCE: f64 = 1e-9;
pub const TV_TOLERANCE: f64 = 1e-10;
pub const MI_TOLERANCE: f64 = 1e-10;
pub const CHAIN_RULE_TOLERANCE: f64 = 1e-10;
pub const CONVEXITY_SLACK: f64 = 1e-10;
pub const EXCHANGEABILITY_TOLERANCE: f64 = 1e-15;
pub const JOINT_TOTAL_TOLERANCE: f64 = 1e-12;

/// Result of one suite. `max_deviation` is the worst observed value of the
/// suite's checked quantity; the suite passes when it stays within
/// `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub checks: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub failures: usize,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Default)]
struct Tally {
    checks: usize,
    max_deviation: f64,
    failures: usize,
}

impl Tally {
    /// Records `deviation`, failing when it exceeds `tolerance` (or is NaN).
    fn record(&mut self, deviation: f64, tolerance: f64) {
        self.checks += 1;
        if deviation.is_nan() || deviation > tolerance {
            self.failures += 1;
        }
        if deviation.is_nan() {
            self.max_deviation = f64::NAN;
        } else if !self.max_deviation.is_nan() {
            self.max_deviation = self.max_deviation.max(deviation);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failures += other.failures;
        self.max_deviation = if self.max_deviation.is_nan() || other.max_deviation.is_nan() {
            f64::NAN
        } else {
            self.max_deviation.max(other.max_deviation)
        };
        self
    }

    fn finish(self, name: &'static str, tolerance: f64) -> SuiteResult {
        SuiteResult {
            name,
            checks: self.checks,
            max_deviation: self.max_deviation,
            tolerance,
            failures: self.failures,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifySummary {
    pub max_n: usize,
    pub seeds: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerifySummary {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

/// The named families plus `seeds` random instances (seeds `0..seeds`).
pub fn verification_bank(seeds: usize) -> Vec<FamilySpec> {
    let mut bank = standard_bank();
    bank.retain(|f| !matches!(f, FamilySpec::RandomDirichlet { .. }));
    bank.push(FamilySpec::UniformCounts);
    bank.extend((0..seeds as u64).map(|seed| FamilySpec::RandomDirichlet { seed }));
    bank
}

/// Runs every suite for `2 <= n <= max_n` over [`verification_bank`].
pub fn run_verify(max_n: usize, seeds: usize) -> Result<VerifySummary> {
    if !(2..=MAX_ORACLE_N).contains(&max_n) {
        return Err(Error::config(
            "max_n",
            format!("must lie in [2, {MAX_ORACLE_N}] (enumeration cap), got {max_n}"),
        ));
    }
    let bank = verification_bank(seeds);
    let mut instances = Vec::new();
    for n in 2..=max_n {
        for family in &bank {
            instances.push(family.generate(n)?);
        }
    }

    let suites = vec![
        exchangeability_suite(&instances)?,
        normalization_suite(&instances)?,
        marginal_suite(&instances)?,
        divergence_suite(&instances)?,
        tv_suite(&instances)?,
        conditional_mi_suite(&instances)?,
        conditional_divergence_suite(&instances)?,
        chain_rule_suite(max_n)?,
        convexity_suite(&instances)?,
        domination_suite(max_n)?,
    ];
    Ok(VerifySummary {
        max_n,
        seeds,
        suites,
    })
}

fn par_tally<T, F>(items: &[T], f: F) -> Result<Tally>
where
    T: Sync,
    F: Fn(&T, &mut Tally) -> Result<()> + Sync,
{
    items
        .par_iter()
        .map(|item| {
            let mut tally = Tally::default();
            f(item, &mut tally)?;
            Ok(tally)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

pub fn exchangeability_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        let joint = enumerate_joint(pi)?;
        t.record(
            joint.max_transposition_deviation(),
            EXCHANGEABILITY_TOLERANCE,
        );
        Ok(())
    })?;
    Ok(tally.finish("joint_exchangeability", EXCHANGEABILITY_TOLERANCE))
}

pub fn normalization_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        t.record(
            (enumerate_joint(pi)?.total() - 1.0).abs(),
            JOINT_TOTAL_TOLERANCE,
        );
        for k in 1..=pi.n() {
            t.record(
                (marginal_weight_pmf(pi, k)?.total() - 1.0).abs(),
                JOINT_TOTAL_TOLERANCE,
            );
        }
        Ok(())
    })?;
    Ok(tally.finish("normalization", JOINT_TOTAL_TOLERANCE))
}

pub fn marginal_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        for k in 1..=pi.n() {
            let dense = marginal_weight_pmf(pi, k)?.to_dense();
            let oracle = oracle_first_k(pi, k)?;
            for (a, b) in dense.iter().zip(oracle.probs()) {
                t.record((a - b).abs(), MARGINAL_TOLERANCE);
            }
        }
        Ok(())
    })?;
    Ok(tally.finish("oracle_marginals", MARGINAL_TOLERANCE))
}

pub fn divergence_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        for k in 1..=pi.n() {
            t.record(
                (divergence_to_mixture(pi, k)? - oracle_divergence(pi, k)?).abs(),
                DIVERGENCE_TOLERANCE,
            );
        }
        Ok(())
    })?;
    Ok(tally.finish("oracle_divergence", DIVERGENCE_TOLERANCE))
}

pub fn tv_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        for k in 1..=pi.n() {
            t.record(
                (tv_to_mixture(pi, k)? - oracle_tv(pi, k)?).abs(),
                TV_TOLERANCE,
            );
        }
        Ok(())
    })?;
    Ok(tally.finish("oracle_tv", TV_TOLERANCE))
}

pub fn conditional_mi_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        let n = pi.n();
        let joint = enumerate_joint(pi)?;
        for ell in pi.support() {
            for k in 2..=n {
                for i in 1..k {
                    let engine = conditional_mutual_information(n, ell, i, k)?;
                    let oracle = oracle_conditional_mi(&joint, i, k, ell)?;
                    t.record((engine - oracle).abs(), MI_TOLERANCE);
                }
            }
        }
        Ok(())
    })?;
    Ok(tally.finish("oracle_conditional_mi", MI_TOLERANCE))
}

pub fn conditional_divergence_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        let n = pi.n();
        let joint = enumerate_joint(pi)?;
        for ell in pi.support() {
            for k in 1..=n {
                let engine = conditional_divergence(n, ell, k)?;
                let oracle = oracle_conditional_divergence(&joint, ell, k)?;
                t.record((engine - oracle).abs(), MI_TOLERANCE);
            }
        }
        Ok(())
    })?;
    Ok(tally.finish("oracle_conditional_divergence", MI_TOLERANCE))
}

/// `|D(Q_{X_1^k|ell} ‖ P_{ell/n}^k) - Σ_i I(X_i ; X_{i+1}^k | ell)|` over every
/// `2 <= n <= max_n`, `0 <= ell <= n`, `1 <= k <= n`.
pub fn chain_rule_suite(max_n: usize) -> Result<SuiteResult> {
    let ns: Vec<usize> = (2..=max_n).collect();
    let tally = par_tally(&ns, |&n, t| {
        for ell in 0..=n {
            for k in 1..=n {
                let direct = conditional_divergence(n, ell, k)?;
                let mut chain = 0.0;
                for i in 1..k {
                    chain += conditional_mutual_information(n, ell, i, k)?;
                }
                t.record((direct - chain).abs(), CHAIN_RULE_TOLERANCE);
            }
        }
        Ok(())
    })?;
    Ok(tally.finish("chain_rule", CHAIN_RULE_TOLERANCE))
}

/// Excess of the divergence over its convexity upper bound
/// `Σ_ell pi(ell) D(Q_{X_1^k|ell} ‖ P_{ell/n}^k)`; nonpositive when the step holds.
pub fn convexity_suite(instances: &[CountPMF]) -> Result<SuiteResult> {
    let tally = par_tally(instances, |pi, t| {
        for k in 1..=pi.n() {
            let excess = divergence_to_mixture(pi, k)? - averaged_conditional_divergence(pi, k)?;
            t.record(excess, CONVEXITY_SLACK);
        }
        Ok(())
    })?;
    Ok(tally.finish("convexity_step", CONVEXITY_SLACK))
}

/// For `k <= n/2` and `1 <= ell <= n-1`: records the larger of
/// `MI - terms.total` and `terms.total - lemma_bound`; both must be `<= 0`.
pub fn domination_suite(max_n: usize) -> Result<SuiteResult> {
    let ns: Vec<usize> = (4..=max_n).collect();
    let tally = par_tally(&ns, |&n, t| {
        for k in 2..=n / 2 {
            let lemma = bound_values(n, k)?.lemma;
            for ell in 1..n {
                for i in 1..k {
                    let mi = conditional_mutual_information(n, ell, i, k)?;
                    let terms = lemma_term_bounds(n, ell, i, k)?;
                    t.record((mi - terms.total).max(terms.total - lemma), 0.0);
                }
            }
        }
        Ok(())
    })?;
    Ok(tally.finish("three_term_domination", 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_verify_passes() {
        let summary = run_verify(6, 2).unwrap();
        for suite in &summary.suites {
            assert!(suite.passed(), "{suite:?}");
            assert!(
                suite.checks > 0 || suite.name == "three_term_domination",
                "{suite:?}"
            );
        }
    }

    #[test]
    fn degenerate_max_n() {
        let summary = run_verify(2, 1).unwrap();
        assert!(summary.passed());
    }

    #[test]
    fn rejects_over_cap() {
        assert!(run_verify(21, 1).unwrap_err().is_config_error());
        assert!(run_verify(1, 1).is_err());
    }

    #[test]
    fn tally_flags_nan() {
        let mut t = Tally::default();
        t.record(f64::NAN, 1.0);
        assert_eq!(t.failures, 1);
    }
}
