//! Brute-force ground truth by enumeration of `{0,1}^n`.
//!
//! Nothing here goes through the weight-class machinery of [`crate::engine`]:
//! sequence probabilities use exact integer binomials, marginals are explicit
//! sums over the complement, and mutual information is evaluated as a
//! relative entropy between a joint table and the product of its marginals.
//!
//! Coordinate `j` (0-based) of a sequence lives in bit `j` of its index.

use crate::error::{Error, Result};
use crate::info::{relative_entropy, total_variation, FinitePMF};
use crate::types::CountPMF;

/// Largest sequence length the oracle will enumerate.
pub const MAX_ORACLE_N: usize = 20;

/// Dense law of an exchangeable vector, one entry per bitmask.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    n: usize,
    probs: Vec<f64>,
}

fn exact_binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    (0..k).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Materializes the law that is uniform inside each weight class.
pub fn enumerate_joint(pi: &CountPMF) -> Result<JointTable> {
    let n = pi.n();
    if n > MAX_ORACLE_N {
        return Err(Error::OracleTooLarge {
            n,
            max: MAX_ORACLE_N,
        });
    }
    let per_weight: Vec<f64> = pi
        .mass()
        .iter()
        .enumerate()
        .map(|(w, &m)| m / exact_binomial(n, w) as f64)
        .collect();
    let probs = (0..1u32 << n)
        .map(|x| per_weight[x.count_ones() as usize])
        .collect();
    Ok(JointTable { n, probs })
}

impl JointTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    /// Largest change under swapping coordinates `j` and `j + 1`, over all `j`.
    pub fn max_transposition_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n.saturating_sub(1) {
            for (x, &p) in self.probs.iter().enumerate() {
                let (a, b) = ((x >> j) & 1, (x >> (j + 1)) & 1);
                let swapped = (x & !(0b11 << j)) | (b << j) | (a << (j + 1));
                worst = worst.max((p - self.probs[swapped]).abs());
            }
        }
        worst
    }

    /// Probability of `N = ell`.
    pub fn count_probability(&self, ell: usize) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(x, _)| x.count_ones() as usize == ell)
            .map(|(_, p)| p)
            .sum()
    }

    /// The table conditioned on `N = ell`.
    pub fn condition_on_count(&self, ell: usize) -> Result<JointTable> {
        let z = self.count_probability(ell);
        if z <= 0.0 {
            return Err(Error::NullEvent { ell });
        }
        let probs = self
            .probs
            .iter()
            .enumerate()
            .map(|(x, &p)| {
                if x.count_ones() as usize == ell {
                    p / z
                } else {
                    0.0
                }
            })
            .collect();
        Ok(JointTable { n: self.n, probs })
    }
}

/// Marginal over the listed 0-based coordinates. Bit `j` of the output index
/// holds coordinate `coords[j]`.
pub fn oracle_marginal(joint: &JointTable, coords: &[usize]) -> Result<FinitePMF> {
    let mut seen = 0usize;
    for &c in coords {
        if c >= joint.n || seen & (1 << c) != 0 {
            return Err(Error::out_of_range("coordinate", c, "distinct and < n"));
        }
        seen |= 1 << c;
    }
    let mut out = vec![0.0; 1 << coords.len()];
    for (x, &p) in joint.probs.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let y = coords
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &c)| acc | (((x >> c) & 1) << j));
        out[y] += p;
    }
    renormalized(out)
}

/// Sums accumulate round-off of order `2^n` ulps, well inside the pmf
/// tolerance; strip it so downstream checks see an exact total.
fn renormalized(mut v: Vec<f64>) -> Result<FinitePMF> {
    let total: f64 = v.iter().sum();
    if (total - 1.0).abs() <= 1e-12 {
        v.iter_mut().for_each(|x| *x /= total);
    }
    FinitePMF::new(v)
}

/// `I(X_i ; X_{i+1}^k | N = ell)` with 1-based `i < k`, computed as
/// `D(P_XY ‖ P_X P_Y)` on the conditioned table.
pub fn oracle_conditional_mi(joint: &JointTable, i: usize, k: usize, ell: usize) -> Result<f64> {
    if i == 0 || i >= k || k > joint.n {
        return Err(Error::out_of_range(
            "i, k",
            format!("({i}, {k})"),
            "1 <= i < k <= n",
        ));
    }
    let conditioned = joint.condition_on_count(ell)?;
    // coordinate i-1 goes to bit 0, the block i..k to the higher bits
    let coords: Vec<usize> = (i - 1..k).collect();
    let pxy = oracle_marginal(&conditioned, &coords)?;
    let px = oracle_marginal(&conditioned, &coords[..1])?;
    let py = oracle_marginal(&conditioned, &coords[1..])?;
    let product: Vec<f64> = (0..pxy.len())
        .map(|xy| px.probs()[xy & 1] * py.probs()[xy >> 1])
        .collect();
    relative_entropy(&pxy, &FinitePMF::new(product)?)
}

/// `D(Q_{X_1^k | N = ell} ‖ P_{ell/n}^k)` from the conditioned table.
pub fn oracle_conditional_divergence(joint: &JointTable, ell: usize, k: usize) -> Result<f64> {
    let conditioned = joint.condition_on_count(ell)?;
    let coords: Vec<usize> = (0..k).collect();
    let q = oracle_marginal(&conditioned, &coords)?;
    let p = ell as f64 / joint.n as f64;
    let product = FinitePMF::new(
        (0..1usize << k)
            .map(|x| bernoulli_product(p, k, x))
            .collect(),
    )?;
    relative_entropy(&q, &product)
}

fn bernoulli_product(p: f64, k: usize, x: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| {
        acc * if (x >> j) & 1 == 1 { p } else { 1.0 - p }
    })
}

/// Dense `2^k` Bernoulli mixture with atoms at `ell / n` weighted by `pi`.
pub fn oracle_mixture(pi: &CountPMF, k: usize) -> Result<FinitePMF> {
    let n = pi.n() as f64;
    let dense = (0..1usize << k)
        .map(|x| {
            pi.mass()
                .iter()
                .enumerate()
                .map(|(ell, &w)| w * bernoulli_product(ell as f64 / n, k, x))
                .sum()
        })
        .collect();
    renormalized(dense)
}

/// Dense law of the first `k` coordinates.
pub fn oracle_first_k(pi: &CountPMF, k: usize) -> Result<FinitePMF> {
    let joint = enumerate_joint(pi)?;
    let coords: Vec<usize> = (0..k).collect();
    oracle_marginal(&joint, &coords)
}

/// `D(Q_k ‖ M_{k,mu})` by enumeration.
pub fn oracle_divergence(pi: &CountPMF, k: usize) -> Result<f64> {
    relative_entropy(&oracle_first_k(pi, k)?, &oracle_mixture(pi, k)?)
}

/// `‖Q_k - M_{k,mu}‖` by enumeration.
pub fn oracle_tv(pi: &CountPMF, k: usize) -> Result<f64> {
    total_variation(&oracle_first_k(pi, k)?, &oracle_mixture(pi, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_masses() {
        let joint = enumerate_joint(&CountPMF::point_mass(3, 0).unwrap()).unwrap();
        assert_eq!(joint.probs()[0], 1.0);
        assert_eq!(joint.total(), 1.0);

        let joint = enumerate_joint(&CountPMF::point_mass(2, 1).unwrap()).unwrap();
        assert_eq!(joint.probs(), &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(oracle_marginal(&joint, &[0]).unwrap().probs(), &[0.5, 0.5]);
    }

    #[test]
    fn iid_table_factorizes() {
        let p: f64 = 0.3;
        let raw = (0..=3)
            .map(|w| exact_binomial(3, w) as f64 * p.powi(w as i32) * (1.0 - p).powi(3 - w as i32))
            .collect();
        let joint = enumerate_joint(&CountPMF::new(3, raw).unwrap()).unwrap();
        for (x, &prob) in joint.probs().iter().enumerate() {
            let w = (x as u32).count_ones() as i32;
            assert!((prob - p.powi(w) * (1.0 - p).powi(3 - w)).abs() < 1e-16);
        }
        assert!(joint.max_transposition_deviation() < 1e-15);
    }

    #[test]
    fn marginals_are_position_free() {
        let raw: Vec<f64> = (0..=8).map(|l| (l * l + 1) as f64).collect();
        let total: f64 = raw.iter().sum();
        let pi = CountPMF::new(8, raw.into_iter().map(|x| x / total).collect()).unwrap();
        let joint = enumerate_joint(&pi).unwrap();
        let a = oracle_marginal(&joint, &[0, 1]).unwrap();
        let b = oracle_marginal(&joint, &[2, 6]).unwrap();
        for (x, y) in a.probs().iter().zip(b.probs()) {
            assert!((x - y).abs() < 1e-15);
        }
        let full: Vec<usize> = (0..8).collect();
        let identity = oracle_marginal(&joint, &full).unwrap();
        for (x, y) in identity.probs().iter().zip(joint.probs()) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn conditional_mi_examples() {
        let joint = enumerate_joint(&CountPMF::new(4, vec![0.2; 5]).unwrap()).unwrap();
        assert_eq!(oracle_conditional_mi(&joint, 1, 3, 0).unwrap(), 0.0);
        let mi = oracle_conditional_mi(&joint, 1, 2, 2).unwrap();
        assert!((mi - 0.056_633_012_265_132_49).abs() < 1e-15);
        let cd = oracle_conditional_divergence(&joint, 2, 2).unwrap();
        assert!((cd - 0.056_633_012_265_132_49).abs() < 1e-15);
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            enumerate_joint(&CountPMF::point_mass(21, 3).unwrap()),
            Err(Error::OracleTooLarge { n: 21, .. })
        ));
        let joint = enumerate_joint(&CountPMF::point_mass(4, 1).unwrap()).unwrap();
        assert!(matches!(
            oracle_conditional_mi(&joint, 1, 2, 2),
            Err(Error::NullEvent { ell: 2 })
        ));
        assert!(oracle_marginal(&joint, &[1, 1]).is_err());
        assert!(oracle_marginal(&joint, &[4]).is_err());
    }

    #[test]
    fn divergence_of_single_one() {
        let pi = CountPMF::point_mass(2, 1).unwrap();
        assert!((oracle_divergence(&pi, 2).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!((oracle_tv(&pi, 2).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(
            oracle_divergence(&CountPMF::point_mass(5, 0).unwrap(), 3).unwrap(),
            0.0
        );
    }
}
