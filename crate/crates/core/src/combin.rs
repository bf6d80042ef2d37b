//! Log-domain combinatorics.
//!
//! Binomial coefficients are evaluated as differences of cached log-factorials.
//! The table is built once on first use (prefix sums of `ln i` accumulated with
//! compensated summation) and is read-only afterwards, so every thread sees
//! the same bits.

use std::sync::OnceLock;

/// Largest `a` for which `ln a!` is tabulated. Also the largest supported
/// sequence length.
pub const MAX_TABULATED: usize = 1 << 16;

static LOG_FACTORIALS: OnceLock<Vec<f64>> = OnceLock::new();

fn log_factorials() -> &'static [f64] {
    LOG_FACTORIALS.get_or_init(|| {
        let mut table = Vec::with_capacity(MAX_TABULATED + 1);
        let mut acc = CompensatedSum::new();
        table.push(0.0);
        for i in 1..=MAX_TABULATED {
            acc.add((i as f64).ln());
            table.push(acc.value());
        }
        table
    })
}

/// `ln a!`. Panics if `a > MAX_TABULATED`.
pub fn log_factorial(a: usize) -> f64 {
    assert!(
        a <= MAX_TABULATED,
        "log_factorial({a}) exceeds table size {MAX_TABULATED}"
    );
    log_factorials()[a]
}

/// `ln C(a, b)`, or `-inf` when `b < 0` or `b > a`.
pub fn log_binomial(a: usize, b: i64) -> f64 {
    if b < 0 || b as u64 > a as u64 {
        return f64::NEG_INFINITY;
    }
    let b = b as usize;
    if b == 0 || b == a {
        return 0.0;
    }
    let lf = log_factorials();
    lf[a] - lf[b] - lf[a - b]
}

/// Probability that `m` fixed positions of a uniformly random length-`n`
/// sequence with `ell` ones contain exactly `j` ones.
pub fn hypergeometric_pmf(j: i64, n: usize, ell: usize, m: usize) -> f64 {
    debug_assert!(ell <= n && m <= n);
    if j < 0 || j as usize > ell.min(m) || (m as i64 - j) > (n - ell) as i64 {
        return 0.0;
    }
    let log_p =
        log_binomial(ell, j) + log_binomial(n - ell, m as i64 - j) - log_binomial(n, m as i64);
    log_p.exp()
}

/// Support of the hypergeometric law above: `max(0, m + ell - n) ..= min(ell, m)`.
pub fn hypergeometric_support(n: usize, ell: usize, m: usize) -> std::ops::RangeInclusive<usize> {
    (m + ell).saturating_sub(n)..=ell.min(m)
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl Extend<f64> for CompensatedSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Self::new();
        acc.extend(iter);
        acc
    }
}

/// Compensated sum of an iterator of floats.
pub fn sum_compensated<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    iter.into_iter().collect::<CompensatedSum>().value()
}
