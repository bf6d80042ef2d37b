//! Exact de Finetti quantities for exchangeable binary laws.
//!
//! Everything here is computed from the count distribution `pi` in `O(n k)`
//! time: the marginal `Q_k` of the first `k` coordinates, the mixing measure
//! `mu` (the law of `N / n`), the Bernoulli mixture `M_{k,mu}`, their relative
//! entropy and total variation, and the conditional quantities given
//! `N = ell` that drive the bound.
//!
//! Sums over weight classes run in ascending `s` through a compensated
//! accumulator, so results are reproducible to a few ulps.

use serde::{Deserialize, Serialize};

use crate::combin::{
    hypergeometric_pmf, hypergeometric_support, log_binomial, sum_compensated, CompensatedSum,
};
use crate::error::{Error, Result};
use crate::info::{binary_entropy_unchecked, clamp_nonnegative};
use crate::types::{BoundReport, CountPMF, MixingMeasure, WeightClassPMF};

fn check_k(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::out_of_range("k", k, "1 <= k <= n"));
    }
    Ok(())
}

/// Law of `(X_1, ..., X_k)` under the exchangeable law with counts `pi`.
///
/// `perseq[s] = Σ_ell pi[ell] C(n-k, ell-s) / C(n, ell)`.
pub fn marginal_weight_pmf(pi: &CountPMF, k: usize) -> Result<WeightClassPMF> {
    let n = pi.n();
    check_k(n, k)?;
    let mass = pi.mass();
    let perseq = (0..=k)
        .map(|s| {
            sum_compensated((s..=s + (n - k)).filter(|&ell| mass[ell] > 0.0).map(|ell| {
                let log_ratio = log_binomial(n - k, (ell - s) as i64) - log_binomial(n, ell as i64);
                mass[ell] * log_ratio.exp()
            }))
        })
        .collect();
    Ok(WeightClassPMF::from_perseq(k, perseq))
}

/// The law of the empirical frequency `N / n`, on the grid `{0, 1/n, ..., 1}`.
pub fn mixing_measure(pi: &CountPMF) -> MixingMeasure {
    MixingMeasure::from_atoms(pi.n(), pi.mass().to_vec())
}

/// `M_{k,mu}`: the `mu`-average of the i.i.d. Bernoulli(p) law on `k` bits.
///
/// `perseq[s] = Σ_ell mu[ell] p^s (1-p)^(k-s)` with `p = ell / n` and `0^0 = 1`.
pub fn mixture_weight_pmf(mu: &MixingMeasure, k: usize) -> Result<WeightClassPMF> {
    if k == 0 {
        return Err(Error::out_of_range("k", k, "k >= 1"));
    }
    let exponent = |e: usize| i32::try_from(e).expect("k fits in i32");
    let perseq = (0..=k)
        .map(|s| {
            sum_compensated(
                mu.iter()
                    .map(|(p, w)| w * p.powi(exponent(s)) * (1.0 - p).powi(exponent(k - s))),
            )
        })
        .collect();
    Ok(WeightClassPMF::from_perseq(k, perseq))
}

/// `D(Q_k ‖ M_{k,mu})` in nats, with `mu` the mixing measure of `pi`.
pub fn divergence_to_mixture(pi: &CountPMF, k: usize) -> Result<f64> {
    let q = marginal_weight_pmf(pi, k)?;
    let m = mixture_weight_pmf(&mixing_measure(pi), k)?;
    weight_class_divergence(&q, &m)
}

/// Relative entropy between two weight-class laws on the same `k`.
pub fn weight_class_divergence(q: &WeightClassPMF, m: &WeightClassPMF) -> Result<f64> {
    if q.k() != m.k() {
        return Err(Error::LengthMismatch {
            expected: q.k() + 1,
            actual: m.k() + 1,
        });
    }
    let mut acc = CompensatedSum::new();
    for (s, (&qs, &ms)) in q.perseq().iter().zip(m.perseq()).enumerate() {
        if qs == 0.0 {
            continue;
        }
        if ms == 0.0 {
            return Err(Error::AbsoluteContinuityViolation { index: s, p: qs });
        }
        acc.add(q.class_mass(s) * (qs / ms).ln());
    }
    clamp_nonnegative("divergence to mixture", acc.value())
}

/// Total variation (L1 normalization, in `[0, 2]`) between `Q_k` and `M_{k,mu}`.
pub fn tv_to_mixture(pi: &CountPMF, k: usize) -> Result<f64> {
    let q = marginal_weight_pmf(pi, k)?;
    let m = mixture_weight_pmf(&mixing_measure(pi), k)?;
    Ok(weight_class_tv(&q, &m))
}

pub fn weight_class_tv(q: &WeightClassPMF, m: &WeightClassPMF) -> f64 {
    debug_assert_eq!(q.k(), m.k());
    let k = q.k();
    sum_compensated(
        q.perseq()
            .iter()
            .zip(m.perseq())
            .enumerate()
            .map(|(s, (a, b))| log_binomial(k, s as i64).exp() * (a - b).abs()),
    )
}

/// `I(X_i ; X_{i+1}^k | N = ell)` in nats.
///
/// Given `N = ell` the block `X_{i+1}^k` holds a hypergeometric number `j` of
/// ones, and then `X_i` is Bernoulli with parameter `(ell - j) / (n - (k - i))`.
/// The mutual information is the drop from `h(ell / n)` to the average of
/// those conditional entropies. Depends on `i` and `k` only through `k - i`.
pub fn conditional_mutual_information(n: usize, ell: usize, i: usize, k: usize) -> Result<f64> {
    check_k(n, k)?;
    if i == 0 || i >= k {
        return Err(Error::out_of_range("i", i, "1 <= i <= k - 1"));
    }
    if ell > n {
        return Err(Error::out_of_range("ell", ell, "0 <= ell <= n"));
    }
    if ell == 0 || ell == n {
        return Ok(0.0);
    }
    let block = k - i;
    let rest = (n - block) as f64;
    let mut acc = CompensatedSum::new();
    acc.add(binary_entropy_unchecked(ell as f64 / n as f64));
    for j in hypergeometric_support(n, ell, block) {
        let w = hypergeometric_pmf(j as i64, n, ell, block);
        acc.add(-w * binary_entropy_unchecked((ell - j) as f64 / rest));
    }
    clamp_nonnegative("conditional mutual information", acc.value())
}

/// `D(Q_{X_1^k | N = ell} ‖ P_{ell/n}^k)`: how far the first `k` coordinates of
/// a uniform weight-`ell` sequence are from i.i.d. Bernoulli(ell / n).
pub fn conditional_divergence(n: usize, ell: usize, k: usize) -> Result<f64> {
    check_k(n, k)?;
    if ell > n {
        return Err(Error::out_of_range("ell", ell, "0 <= ell <= n"));
    }
    if ell == 0 || ell == n {
        return Ok(0.0);
    }
    let p = ell as f64 / n as f64;
    let (log_p, log_q) = (p.ln(), (1.0 - p).ln());
    let log_total = log_binomial(n, ell as i64);
    let mut acc = CompensatedSum::new();
    for s in hypergeometric_support(n, ell, k) {
        let class = hypergeometric_pmf(s as i64, n, ell, k);
        let log_seq = log_binomial(n - k, (ell - s) as i64) - log_total;
        let log_product = s as f64 * log_p + (k - s) as f64 * log_q;
        acc.add(class * (log_seq - log_product));
    }
    clamp_nonnegative("conditional divergence", acc.value())
}

/// `Σ_ell pi[ell] * conditional_divergence(n, ell, k)`, the upper bound that
/// joint convexity gives for [`divergence_to_mixture`].
pub fn averaged_conditional_divergence(pi: &CountPMF, k: usize) -> Result<f64> {
    let n = pi.n();
    check_k(n, k)?;
    let mut acc = CompensatedSum::new();
    for ell in pi.support() {
        acc.add(pi.mass()[ell] * conditional_divergence(n, ell, k)?);
    }
    Ok(acc.value())
}

/// The three closed-form bounds. All are `+inf` at `k = n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundValues {
    /// `5 k^2 log n / (n - k)`, bounding the divergence to the mixture.
    pub theorem: f64,
    /// `5 k log n / (n - k)`, bounding each conditional mutual information.
    pub lemma: f64,
    /// `k sqrt(10 log n / (n - k))`, bounding the total variation.
    pub pinsker_tv: f64,
}

pub fn bound_values(n: usize, k: usize) -> Result<BoundValues> {
    if n < 2 {
        return Err(Error::out_of_range("n", n, "n >= 2"));
    }
    check_k(n, k)?;
    if k == n {
        return Ok(BoundValues {
            theorem: f64::INFINITY,
            lemma: f64::INFINITY,
            pinsker_tv: f64::INFINITY,
        });
    }
    let (nf, kf) = (n as f64, k as f64);
    let rate = nf.ln() / (nf - kf);
    Ok(BoundValues {
        theorem: 5.0 * kf * kf * rate,
        lemma: 5.0 * kf * rate,
        pinsker_tv: kf * (10.0 * rate).sqrt(),
    })
}

/// The three summands bounding the conditional mutual information in the
/// regime `k <= n/2`, `1 <= ell <= n-1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaTerms {
    /// Entropy-gap contribution on the event that both parameters are
    /// interior: `2 ell (k-i) log n / (n (n - (k-i)))`.
    pub interior_term: f64,
    /// Markov bound `k / n` on the event that the block holds all `ell` ones.
    pub collision_term: f64,
    /// `2 k log n / (n - k)`, covering `ell` within `k` of `n`.
    pub boundary_term: f64,
    pub total: f64,
}

pub fn lemma_term_bounds(n: usize, ell: usize, i: usize, k: usize) -> Result<LemmaTerms> {
    if 2 * k > n {
        return Err(Error::out_of_range("k", k, "k <= n / 2"));
    }
    if i == 0 || i >= k {
        return Err(Error::out_of_range("i", i, "1 <= i <= k - 1"));
    }
    if ell == 0 || ell >= n {
        return Err(Error::out_of_range("ell", ell, "1 <= ell <= n - 1"));
    }
    let (nf, kf, log_n) = (n as f64, k as f64, (n as f64).ln());
    let block = (k - i) as f64;
    let interior_term = 2.0 * ell as f64 * block * log_n / (nf * (nf - block));
    let collision_term = kf / nf;
    let boundary_term = 2.0 * kf * log_n / (nf - kf);
    Ok(LemmaTerms {
        interior_term,
        collision_term,
        boundary_term,
        total: interior_term + collision_term + boundary_term,
    })
}

/// Divergence, total variation and the matching bounds for one `(pi, k)`.
pub fn bound_report(pi: &CountPMF, k: usize) -> Result<BoundReport> {
    let bounds = bound_values(pi.n(), k)?;
    let q = marginal_weight_pmf(pi, k)?;
    let m = mixture_weight_pmf(&mixing_measure(pi), k)?;
    let divergence_nats = weight_class_divergence(&q, &m)?;
    let tv = weight_class_tv(&q, &m);
    let ratio = if bounds.theorem.is_finite() {
        divergence_nats / bounds.theorem
    } else {
        0.0
    };
    Ok(BoundReport {
        n: pi.n(),
        k,
        divergence_nats,
        tv,
        theorem_bound: bounds.theorem,
        pinsker_tv_bound: bounds.pinsker_tv,
        ratio,
    })
}
