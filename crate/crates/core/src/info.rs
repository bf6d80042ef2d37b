//! Elementary information measures in nats.

use crate::combin::sum_compensated;
use crate::error::{Error, Result};

/// Tolerance on the total of a [`FinitePMF`].
pub const PMF_TOLERANCE: f64 = 1e-12;

/// Magnitude below which a negative divergence is treated as round-off.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;

/// A probability vector over an indexed finite set. Index semantics belong to
/// the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePMF {
    probs: Vec<f64>,
}

impl FinitePMF {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        for (index, &p) in probs.iter().enumerate() {
            if !p.is_finite() {
                return Err(Error::NonFinite { index, value: p });
            }
            if p < 0.0 {
                return Err(Error::NegativeMass { index, value: p });
            }
        }
        let sum = sum_compensated(probs.iter().copied());
        let deviation = (sum - 1.0).abs();
        if deviation > PMF_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                deviation,
                tolerance: PMF_TOLERANCE,
            });
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Shannon entropy `-Σ p log p`.
    pub fn entropy(&self) -> f64 {
        entropy(&self.probs)
    }
}

impl TryFrom<Vec<f64>> for FinitePMF {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Self::new(probs)
    }
}

/// `-Σ p log p` over the positive entries of `probs`.
pub fn entropy(probs: &[f64]) -> f64 {
    sum_compensated(probs.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()))
}

/// Binary entropy `h(p) = -p log p - (1-p) log(1-p)`, with `h(0) = h(1) = 0`.
///
/// Arguments within `1e-12` outside `[0, 1]` are clamped.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(-PMF_TOLERANCE..=1.0 + PMF_TOLERANCE).contains(&p) {
        return Err(Error::out_of_range("p", p, "0 <= p <= 1"));
    }
    Ok(binary_entropy_unchecked(p.clamp(0.0, 1.0)))
}

pub(crate) fn binary_entropy_unchecked(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    let q = 1.0 - p;
    -p * p.ln() - q * q.ln()
}

fn check_same_space(p: &FinitePMF, q: &FinitePMF) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch {
            expected: p.len(),
            actual: q.len(),
        });
    }
    Ok(())
}

/// Relative entropy `D(P‖Q) = Σ P log(P/Q)` in nats.
pub fn relative_entropy(p: &FinitePMF, q: &FinitePMF) -> Result<f64> {
    check_same_space(p, q)?;
    let mut terms = Vec::with_capacity(p.len());
    for (index, (&pi, &qi)) in p.probs.iter().zip(&q.probs).enumerate() {
        if pi == 0.0 {
            continue;
        }
        if qi == 0.0 {
            return Err(Error::AbsoluteContinuityViolation { index, p: pi });
        }
        terms.push(pi * (pi / qi).ln());
    }
    clamp_nonnegative("relative entropy", sum_compensated(terms))
}

/// Total variation in the `2 sup_B |P(B) - Q(B)|` normalization, i.e. the L1
/// distance. Lies in `[0, 2]`.
pub fn total_variation(p: &FinitePMF, q: &FinitePMF) -> Result<f64> {
    check_same_space(p, q)?;
    Ok(sum_compensated(
        p.probs.iter().zip(&q.probs).map(|(a, b)| (a - b).abs()),
    ))
}

/// Lipschitz-type bound on the binary entropy gap,
/// `|p - q| * max(|logit p|, |logit q|)`, for `p, q` in the open unit interval.
pub fn entropy_difference_bound(p: f64, q: f64) -> Result<f64> {
    for (name, x) in [("p", p), ("q", q)] {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::out_of_range(name, x, "0 < x < 1"));
        }
    }
    let logit = |x: f64| ((1.0 - x) / x).ln().abs();
    Ok((p - q).abs() * logit(p).max(logit(q)))
}

/// Maps round-off negatives to zero and rejects anything more negative.
pub(crate) fn clamp_nonnegative(quantity: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -ROUNDOFF_FLOOR {
        Ok(0.0)
    } else {
        Err(Error::NegativeInformation { quantity, value })
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn pmf(v: &[f64]) -> FinitePMF {
        FinitePMF::new(v.to_vec()).unwrap()
    }

    #[test]
    fn binary_entropy_values() {
        assert!((binary_entropy(0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // -(1/3)ln(1/3) - (2/3)ln(2/3), hand-evaluated to 40 digits
        let reference = 0.636_514_168_294_812_818_450_423_822_617_074_659_3;
        assert!((binary_entropy(1.0 / 3.0).unwrap() - reference).abs() < 1e-15);
        assert!((binary_entropy(0.2).unwrap() - binary_entropy(0.8).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn binary_entropy_domain() {
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.1).is_err());
        assert!(binary_entropy(f64::NAN).is_err());
        assert_eq!(binary_entropy(1.0 + 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn relative_entropy_examples() {
        assert_eq!(
            relative_entropy(&pmf(&[0.3, 0.7]), &pmf(&[0.3, 0.7])).unwrap(),
            0.0
        );
        let d = relative_entropy(&pmf(&[0.5, 0.5, 0.0, 0.0]), &pmf(&[0.25; 4])).unwrap();
        assert!((d - 2f64.ln()).abs() < 1e-15);
        assert!(matches!(
            relative_entropy(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0])),
            Err(Error::AbsoluteContinuityViolation { index: 0, .. })
        ));
    }

    #[test]
    fn relative_entropy_is_asymmetric() {
        let p = pmf(&[0.9, 0.1]);
        let q = pmf(&[0.5, 0.5]);
        let forward = relative_entropy(&p, &q).unwrap();
        let backward = relative_entropy(&q, &p).unwrap();
        assert!((forward - backward).abs() > 0.05, "{forward} vs {backward}");
        assert_eq!(
            total_variation(&p, &q).unwrap(),
            total_variation(&q, &p).unwrap()
        );
    }

    #[test]
    fn total_variation_examples() {
        assert_eq!(
            total_variation(&pmf(&[0.2, 0.8]), &pmf(&[0.2, 0.8])).unwrap(),
            0.0
        );
        assert_eq!(
            total_variation(&pmf(&[1.0, 0.0]), &pmf(&[0.0, 1.0])).unwrap(),
            2.0
        );
        let tv = total_variation(&pmf(&[0.5, 0.5, 0.0, 0.0]), &pmf(&[0.25; 4])).unwrap();
        assert!((tv - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_spaces() {
        assert!(matches!(
            total_variation(&pmf(&[1.0]), &pmf(&[0.5, 0.5])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn entropy_difference_examples() {
        assert_eq!(entropy_difference_bound(0.3, 0.3).unwrap(), 0.0);

        let bound = entropy_difference_bound(0.5, 0.25).unwrap();
        assert!((bound - 0.274_653_072_167_027_4).abs() < 1e-15);
        let gap = (binary_entropy(0.5).unwrap() - binary_entropy(0.25).unwrap()).abs();
        assert!((gap - 0.130_812_035_941_136_96).abs() < 1e-15);
        assert!(gap <= bound);

        let bound = entropy_difference_bound(0.1, 0.9).unwrap();
        assert!((bound - 1.757_779_661_868_975_5).abs() < 1e-14);

        assert!(entropy_difference_bound(0.0, 0.5).is_err());
        assert!(entropy_difference_bound(0.5, 1.0).is_err());
    }

    #[test]
    fn finite_pmf_validation() {
        assert!(FinitePMF::new(vec![0.5, 0.4]).is_err());
        assert!(FinitePMF::new(vec![-0.1, 1.1]).is_err());
        assert!((pmf(&[0.25; 4]).entropy() - 4f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn clamp_rules() {
        assert_eq!(clamp_nonnegative("x", -5e-13).unwrap(), 0.0);
        assert!(clamp_nonnegative("x", -1e-9).is_err());
    }
}
