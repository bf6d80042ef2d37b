//! Exact finite de Finetti computations for exchangeable binary vectors.
//!
//! An exchangeable law on `{0,1}^n` is represented by the distribution of its
//! number of ones ([`CountPMF`]). From it the crate computes, without
//! enumerating `2^n` sequences:
//!
//! - the marginal `Q_k` of the first `k` coordinates ([`marginal_weight_pmf`]),
//! - the mixing measure `mu`, the law of `N / n` ([`mixing_measure`]),
//! - the Bernoulli mixture `M_{k,mu}` ([`mixture_weight_pmf`]),
//! - `D(Q_k ‖ M_{k,mu})` and `‖Q_k - M_{k,mu}‖` with the bounds
//!   `5 k^2 log n / (n - k)` and `k sqrt(10 log n / (n - k))`,
//! - the conditional mutual informations `I(X_i ; X_{i+1}^k | N = ell)`, their
//!   bound `5 k log n / (n - k)` and its three-term decomposition.
//!
//! [`oracle`] recomputes the same quantities by brute-force enumeration for
//! `n <= 20`, and [`harness`] drives batch sweeps and verification suites.
//!
//! ```
//! use definetti::{bound_report, FamilySpec};
//!
//! let pi = FamilySpec::Polya { a: 2.0, b: 5.0 }.generate(64)?;
//! let report = bound_report(&pi, 8)?;
//! assert!(report.divergence_nats <= report.theorem_bound);
//! # Ok::<(), definetti::Error>(())
//! ```

pub mod combin;
pub mod engine;
pub mod error;
pub mod families;
pub mod harness;
pub mod info;
pub mod oracle;
pub mod types;

pub use combin::{hypergeometric_pmf, log_binomial};
pub use engine::{
    averaged_conditional_divergence, bound_report, bound_values, conditional_divergence,
    conditional_mutual_information, divergence_to_mixture, lemma_term_bounds, marginal_weight_pmf,
    mixing_measure, mixture_weight_pmf, tv_to_mixture, BoundValues, LemmaTerms,
};
pub use error::{Error, Result};
pub use families::{generate, Atom, FamilySpec};
pub use info::{
    binary_entropy, entropy_difference_bound, relative_entropy, total_variation, FinitePMF,
};
pub use types::{BoundReport, CountPMF, MixingMeasure, WeightClassPMF};
