//! Engine values checked against independent computations: exact integer and
//! rational arithmetic, brute-force enumeration, and frozen high-precision
//! references.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use definetti::oracle::{
    enumerate_joint, oracle_conditional_mi, oracle_divergence, oracle_marginal, oracle_tv,
};
use definetti::{
    conditional_mutual_information, divergence_to_mixture, hypergeometric_pmf, log_binomial,
    marginal_weight_pmf, tv_to_mixture, CountPMF, FamilySpec,
};

fn big_binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[test]
fn log_binomial_matches_big_integers() {
    let exact = big_binomial(1000, 500).to_f64().unwrap().ln();
    assert!((log_binomial(1000, 500) - exact).abs() < 1e-12);
    assert!((log_binomial(1000, 500) - 689.467_261_567_851_2).abs() < 1e-11);

    for a in 0..=80u64 {
        for b in 0..=a {
            let exact = big_binomial(a, b).to_f64().unwrap().ln();
            let got = log_binomial(a as usize, b as i64);
            assert!(
                (got - exact).abs() <= 1e-13 * exact.abs().max(1.0),
                "C({a},{b})"
            );
        }
    }
}

#[test]
fn hypergeometric_matches_rationals() {
    for (n, ell, m) in [(4u64, 2u64, 2u64), (20, 7, 9), (64, 33, 10), (200, 150, 40)] {
        for j in 0..=m {
            let exact = ratio(
                big_binomial(ell, j) * big_binomial(n - ell, m - j),
                big_binomial(n, m),
            )
            .to_f64()
            .unwrap();
            let got = hypergeometric_pmf(j as i64, n as usize, ell as usize, m as usize);
            assert!((got - exact).abs() <= 1e-12 * exact, "({j}; {n},{ell},{m})");
        }
    }
}

fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.ln() - (1.0 - p) * (1.0 - p).ln()
    }
}

/// Conditional mutual information with exact rational hypergeometric weights.
fn rational_conditional_mi(n: u64, ell: u64, i: u64, k: u64) -> f64 {
    let m = k - i;
    let total = big_binomial(n, m);
    let mut acc = h(ell as f64 / n as f64);
    for j in 0..=m.min(ell) {
        if m - j > n - ell {
            continue;
        }
        let w = ratio(
            big_binomial(ell, j) * big_binomial(n - ell, m - j),
            total.clone(),
        );
        acc -= w.to_f64().unwrap() * h((ell - j) as f64 / (n - m) as f64);
    }
    acc
}

#[test]
#[allow(clippy::excessive_precision)]
fn conditional_mi_reference_values() {
    // 40-digit references
    let cases = [
        (
            (4, 2, 1, 2),
            0.056_633_012_265_132_490_966_808_298_841_101_9,
        ),
        (
            (100, 50, 1, 10),
            0.000_499_734_826_833_358_012_322_051_073_827_7,
        ),
        (
            (37, 11, 3, 9),
            0.002_717_425_965_657_055_521_374_214_435_496_2,
        ),
    ];
    for ((n, ell, i, k), reference) in cases {
        let engine = conditional_mutual_information(n, ell, i, k).unwrap();
        assert!(
            (engine - reference).abs() < 1e-10,
            "({n},{ell},{i},{k}): {engine} vs {reference}"
        );
        let rational = rational_conditional_mi(n as u64, ell as u64, i as u64, k as u64);
        assert!((engine - rational).abs() < 1e-10);
    }
    let lemma = 5.0 * 10.0 * 100f64.ln() / 90.0;
    assert!(conditional_mutual_information(100, 50, 1, 10).unwrap() < lemma);
}

#[test]
fn conditional_mi_under_iid_is_positive_and_matches_enumeration() {
    let pi = FamilySpec::Iid { p: 0.3 }.generate(10).unwrap();
    let joint = enumerate_joint(&pi).unwrap();
    for ell in 1..10 {
        for k in 2..=6 {
            for i in 1..k {
                let engine = conditional_mutual_information(10, ell, i, k).unwrap();
                let oracle = oracle_conditional_mi(&joint, i, k, ell).unwrap();
                assert!(engine > 0.0);
                assert!((engine - oracle).abs() < 1e-10);
            }
        }
    }
}

/// `C(n, ell) (a)_ell (b)_{n-ell} / (a+b)_n` in exact rationals.
fn rational_beta_binomial(n: u64, a: (i64, i64), b: (i64, i64)) -> Vec<f64> {
    let a = BigRational::new(a.0.into(), a.1.into());
    let b = BigRational::new(b.0.into(), b.1.into());
    let rising = |x: &BigRational, len: u64| {
        (0..len).fold(BigRational::one(), |acc, i| {
            acc * (x + BigRational::from_integer(i.into()))
        })
    };
    let denominator = rising(&(&a + &b), n);
    (0..=n)
        .map(|ell| {
            let c = BigRational::from_integer(BigInt::from(big_binomial(n, ell)));
            (c * rising(&a, ell) * rising(&b, n - ell) / &denominator)
                .to_f64()
                .unwrap()
        })
        .collect()
}

#[test]
fn polya_matches_exact_beta_binomial() {
    for (a, b) in [((2, 1), (5, 1)), ((1, 2), (3, 2)), ((7, 3), (1, 1))] {
        for n in [1u64, 16, 100, 256] {
            let spec = FamilySpec::Polya {
                a: a.0 as f64 / a.1 as f64,
                b: b.0 as f64 / b.1 as f64,
            };
            let got = spec.generate(n as usize).unwrap();
            let exact = rational_beta_binomial(n, a, b);
            for (ell, (&g, &e)) in got.mass().iter().zip(&exact).enumerate() {
                assert!(
                    (g - e).abs() <= 1e-12 * e,
                    "{spec} n={n} ell={ell}: {g} vs {e}"
                );
            }
        }
    }
}

#[test]
fn dirichlet_fixture_is_frozen() {
    let frozen: [u64; 9] = [
        0x3fc087a2c4fc7af5,
        0x3fad0967764cb5b7,
        0x3fc74c8bce85e032,
        0x3fb68e23ee3f4628,
        0x3fc6ab471ada8589,
        0x3fbf36884fb28f41,
        0x3fa1b3c0c4585824,
        0x3fc81c2f05292f09,
        0x3f9695d8f6be10fb,
    ];
    let pi = FamilySpec::RandomDirichlet { seed: 42 }
        .generate(8)
        .unwrap();
    let bits: Vec<u64> = pi.mass().iter().map(|x| x.to_bits()).collect();
    assert_eq!(bits, frozen);
}

#[test]
fn weight_two_of_four_marginal_matches_enumeration() {
    let pi = CountPMF::point_mass(4, 2).unwrap();
    let dense = marginal_weight_pmf(&pi, 2).unwrap().to_dense();
    let joint = enumerate_joint(&pi).unwrap();
    let oracle = oracle_marginal(&joint, &[0, 1]).unwrap();
    for (a, b) in dense.iter().zip(oracle.probs()) {
        assert!((a - b).abs() < 1e-15);
    }
}

#[test]
fn marginal_of_any_coordinates_matches_first_k() {
    let mut bank = definetti::families::standard_bank();
    bank.push(FamilySpec::UniformCounts);
    for family in bank {
        for n in [3usize, 7, 12] {
            let pi = family.generate(n).unwrap();
            let joint = enumerate_joint(&pi).unwrap();
            for k in 1..=n {
                let dense = marginal_weight_pmf(&pi, k).unwrap().to_dense();
                // last k coordinates in reverse, and a strided selection
                let reversed: Vec<usize> = (n - k..n).rev().collect();
                let strided: Vec<usize> = (0..k).map(|j| (j * 5 + 2) % n).collect();
                let mut coord_sets = vec![reversed];
                let mut sorted = strided.clone();
                sorted.sort();
                sorted.dedup();
                if sorted.len() == k {
                    coord_sets.push(strided);
                }
                for coords in coord_sets {
                    let oracle = oracle_marginal(&joint, &coords).unwrap();
                    for (a, b) in dense.iter().zip(oracle.probs()) {
                        assert!((a - b).abs() < 1e-12, "{family} n={n} coords={coords:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn tv_of_binomial_matches_enumeration() {
    let pi = FamilySpec::Iid { p: 0.3 }.generate(16).unwrap();
    let engine = tv_to_mixture(&pi, 4).unwrap();
    assert!(engine > 0.0 && engine < 2.0);
    assert!((engine - oracle_tv(&pi, 4).unwrap()).abs() < 1e-10);
}

#[test]
fn random_counts_divergence_matches_enumeration() {
    for seed in 0..20 {
        let pi = FamilySpec::RandomDirichlet { seed }.generate(12).unwrap();
        for k in 1..12 {
            let engine = divergence_to_mixture(&pi, k).unwrap();
            let oracle = oracle_divergence(&pi, k).unwrap();
            assert!((engine - oracle).abs() < 1e-9, "seed {seed} k {k}");
        }
    }
}

#[test]
fn single_one_matches_enumeration() {
    let pi = CountPMF::point_mass(2, 1).unwrap();
    let (engine, oracle) = (
        divergence_to_mixture(&pi, 2).unwrap(),
        oracle_divergence(&pi, 2).unwrap(),
    );
    assert!((engine - std::f64::consts::LN_2).abs() < 1e-15);
    assert!((engine - oracle).abs() < 1e-15);
}
