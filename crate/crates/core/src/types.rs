//! Canonical representations of exchangeable binary laws.
//!
//! An exchangeable law on `{0,1}^n` puts equal mass on every sequence with the
//! same number of ones, so it is fully described by the distribution of the
//! count. Every computation in this crate works on that count vector; the
//! full `2^n` table only exists in the enumeration oracle.

use serde::{Deserialize, Serialize};

use crate::combin::{log_binomial, sum_compensated, MAX_TABULATED};
use crate::error::{Error, Result};

/// Allowed deviation of a raw count vector's total from 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Entries in `[-NEGATIVE_SLACK, 0)` are treated as round-off and clamped.
pub const NEGATIVE_SLACK: f64 = 1e-15;

/// Distribution of the number of ones in an exchangeable binary vector of
/// length `n`: `mass[ell] = P(N = ell)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountPMF {
    n: usize,
    mass: Vec<f64>,
}

#[derive(Deserialize)]
struct RawCountPMF {
    n: usize,
    mass: Vec<f64>,
}

impl<'de> Deserialize<'de> for CountPMF {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = RawCountPMF::deserialize(deserializer)?;
        CountPMF::new(raw.n, raw.mass).map_err(serde::de::Error::custom)
    }
}

impl CountPMF {
    /// Validates and normalizes a raw count vector of length `n + 1`.
    ///
    /// Entries slightly below zero (down to `-1e-15`) are clamped to zero; the
    /// result is rescaled so that it sums to one in working precision.
    pub fn new(n: usize, raw: Vec<f64>) -> Result<Self> {
        if n == 0 || n > MAX_TABULATED {
            return Err(Error::out_of_range("n", n, "1 <= n <= 65536"));
        }
        if raw.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                actual: raw.len(),
            });
        }
        let mut mass = raw;
        for (index, x) in mass.iter_mut().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFinite { index, value: *x });
            }
            if *x < -NEGATIVE_SLACK {
                return Err(Error::NegativeMass { index, value: *x });
            }
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        let sum = sum_compensated(mass.iter().copied());
        let deviation = (sum - 1.0).abs();
        if deviation > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized {
                sum,
                deviation,
                tolerance: NORMALIZATION_TOLERANCE,
            });
        }
        if sum != 1.0 {
            for x in &mut mass {
                *x /= sum;
            }
        }
        Ok(Self { n, mass })
    }

    /// All mass on a single count.
    pub fn point_mass(n: usize, ell: usize) -> Result<Self> {
        if ell > n {
            return Err(Error::out_of_range("ell", ell, "0 <= ell <= n"));
        }
        let mut raw = vec![0.0; n + 1];
        raw[ell] = 1.0;
        Self::new(n, raw)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mass(&self) -> &[f64] {
        &self.mass
    }

    /// Probability of a single sequence with `weight` ones.
    pub fn sequence_probability(&self, weight: usize) -> f64 {
        let m = self.mass[weight];
        if m == 0.0 {
            0.0
        } else {
            m * (-log_binomial(self.n, weight as i64)).exp()
        }
    }

    /// Indices carrying positive mass.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0.0)
            .map(|(ell, _)| ell)
    }
}

/// Atomic probability measure on the grid `{0, 1/n, ..., 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingMeasure {
    n: usize,
    atoms: Vec<f64>,
}

impl MixingMeasure {
    pub(crate) fn from_atoms(n: usize, atoms: Vec<f64>) -> Self {
        debug_assert_eq!(atoms.len(), n + 1);
        Self { n, atoms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `atoms()[ell]` is the mass at `ell / n`.
    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    pub fn location(&self, ell: usize) -> f64 {
        ell as f64 / self.n as f64
    }

    /// `(location, mass)` pairs with positive mass.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(ell, &w)| (self.location(ell), w))
    }

    pub fn mean(&self) -> f64 {
        sum_compensated(self.iter().map(|(p, w)| p * w))
    }
}

/// Law of the first `k` coordinates of an exchangeable vector, stored as the
/// probability of one representative sequence per weight class.
///
/// `perseq[s]` is the probability of any single length-`k` string with `s`
/// ones; the class itself has `C(k, s)` members.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightClassPMF {
    k: usize,
    perseq: Vec<f64>,
}

impl WeightClassPMF {
    pub(crate) fn from_perseq(k: usize, perseq: Vec<f64>) -> Self {
        debug_assert_eq!(perseq.len(), k + 1);
        Self { k, perseq }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn perseq(&self) -> &[f64] {
        &self.perseq
    }

    /// Total probability of the weight-`s` class, `C(k, s) * perseq[s]`.
    pub fn class_mass(&self, s: usize) -> f64 {
        let q = self.perseq[s];
        if q == 0.0 {
            0.0
        } else {
            (log_binomial(self.k, s as i64) + q.ln()).exp()
        }
    }

    /// Class masses for `s = 0..=k`.
    pub fn class_masses(&self) -> Vec<f64> {
        (0..=self.k).map(|s| self.class_mass(s)).collect()
    }

    /// `Σ_s C(k, s) perseq[s]`, which should be 1.
    pub fn total(&self) -> f64 {
        sum_compensated((0..=self.k).map(|s| self.class_mass(s)))
    }

    /// Probability of the specific string encoded by the low `k` bits of
    /// `bits`, bit `j` holding coordinate `j + 1`.
    pub fn sequence_probability(&self, bits: u64) -> f64 {
        let weight = (bits & mask(self.k)).count_ones() as usize;
        self.perseq[weight]
    }

    /// Dense `2^k` vector indexed by bitmask. Intended for small `k`.
    pub fn to_dense(&self) -> Vec<f64> {
        assert!(
            self.k < 31,
            "dense expansion of k = {} is too large",
            self.k
        );
        (0..1u64 << self.k)
            .map(|x| self.sequence_probability(x))
            .collect()
    }
}

fn mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Every quantity computed for one `(pi, k)` pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub k: usize,
    pub divergence_nats: f64,
    pub tv: f64,
    /// `None` when the bound is vacuous (`k = n`); serialized as `null`.
    #[serde(with = "infinite_as_null")]
    pub theorem_bound: f64,
    #[serde(with = "infinite_as_null")]
    pub pinsker_tv_bound: f64,
    pub ratio: f64,
}

impl BoundReport {
    pub fn satisfies_theorem(&self) -> bool {
        self.divergence_nats <= self.theorem_bound
    }

    pub fn satisfies_pinsker(&self) -> bool {
        self.tv <= self.pinsker_tv_bound.min(2.0)
    }

    /// Slack `theorem_bound - divergence`.
    pub fn gap(&self) -> f64 {
        self.theorem_bound - self.divergence_nats
    }
}

pub(crate) mod infinite_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::INFINITY))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_and_binomial_inputs() {
        let pi = CountPMF::new(2, vec![0.0, 1.0, 0.0]).unwrap();
        assert_eq!(pi.mass(), &[0.0, 1.0, 0.0]);
        assert_eq!(pi.support().collect::<Vec<_>>(), vec![1]);

        let pi = CountPMF::new(
            4,
            vec![1.0, 4.0, 6.0, 4.0, 1.0]
                .into_iter()
                .map(|x| x / 16.0)
                .collect(),
        )
        .unwrap();
        assert_eq!(pi.mass()[2], 6.0 / 16.0);
        assert!((pi.sequence_probability(2) - 1.0 / 16.0).abs() < 1e-16);
    }

    #[test]
    fn rejects_bad_sum() {
        let err = CountPMF::new(2, vec![0.5, 0.6, 0.0]).unwrap_err();
        match err {
            Error::NotNormalized { deviation, .. } => assert!((deviation - 0.1).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn clamps_tiny_negatives_rejects_large() {
        let pi = CountPMF::new(2, vec![-1e-16, 0.5, 0.5]).unwrap();
        assert_eq!(pi.mass()[0], 0.0);
        assert!(matches!(
            CountPMF::new(2, vec![-1e-10, 0.5, 0.5 + 1e-10]),
            Err(Error::NegativeMass { index: 0, .. })
        ));
    }

    #[test]
    fn rejects_shape_errors() {
        assert!(CountPMF::new(0, vec![1.0]).is_err());
        assert!(matches!(
            CountPMF::new(3, vec![1.0]),
            Err(Error::LengthMismatch {
                expected: 4,
                actual: 1
            })
        ));
        assert!(CountPMF::new(1, vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn renormalizes_within_tolerance() {
        let pi = CountPMF::new(1, vec![0.5 + 4e-10, 0.5]).unwrap();
        let total: f64 = pi.mass().iter().sum();
        assert!((total - 1.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn json_round_trip_validates() {
        let pi: CountPMF = serde_json::from_str(r#"{"n": 2, "mass": [0.25, 0.5, 0.25]}"#).unwrap();
        assert_eq!(pi.n(), 2);
        let text = serde_json::to_string(&pi).unwrap();
        assert_eq!(text, r#"{"n":2,"mass":[0.25,0.5,0.25]}"#);
        assert!(serde_json::from_str::<CountPMF>(r#"{"n": 2, "mass": [0.5, 0.6, 0]}"#).is_err());
    }

    #[test]
    fn report_serializes_infinity_as_null() {
        let report = BoundReport {
            n: 2,
            k: 2,
            divergence_nats: 0.5,
            tv: 1.0,
            theorem_bound: f64::INFINITY,
            pinsker_tv_bound: f64::INFINITY,
            ratio: 0.0,
        };
        let json = serde_json::to_value(&report).unwrap();
        assert!(json["theorem_bound"].is_null());
        let back: BoundReport = serde_json::from_value(json).unwrap();
        assert_eq!(back.theorem_bound, f64::INFINITY);
    }
}
