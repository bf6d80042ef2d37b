//! Named exchangeable families and seeded random instances.
//!
//! Random count vectors are normalized i.i.d. Exp(1) draws (a flat Dirichlet
//! sample) from `xoshiro256++`, whose 256-bit state is expanded from the
//! 64-bit seed with SplitMix64. Both generators are public domain.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_distr::{Distribution, Exp1};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::combin::sum_compensated;
use crate::error::{Error, Result};
use crate::types::CountPMF;

/// Where a point-mass family puts its single atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Atom {
    /// A fixed count `ell`.
    Count(usize),
    /// `floor(frac * n)`, so one spec can be evaluated at every `n`.
    Fraction(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFamilySpec", into = "RawFamilySpec")]
pub enum FamilySpec {
    /// i.i.d. Bernoulli(p): binomial counts.
    Iid {
        p: f64,
    },
    PointMass(Atom),
    /// Pólya urn started with weights `a` (ones) and `b` (zeros): beta-binomial counts.
    Polya {
        a: f64,
        b: f64,
    },
    UniformCounts,
    RandomDirichlet {
        seed: u64,
    },
}

#[derive(Serialize, Deserialize)]
struct RawFamilySpec {
    kind: String,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    params: Map<String, Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

fn param(params: &Map<String, Value>, kind: &str, name: &str) -> Result<f64> {
    params
        .get(name)
        .and_then(Value::as_f64)
        .ok_or_else(|| Error::Family(format!("{kind} requires numeric param `{name}`")))
}

impl TryFrom<RawFamilySpec> for FamilySpec {
    type Error = Error;

    fn try_from(raw: RawFamilySpec) -> Result<Self> {
        let kind = raw.kind.as_str();
        let spec = match kind {
            "iid" => FamilySpec::Iid {
                p: param(&raw.params, kind, "p")?,
            },
            "point_mass" => match (raw.params.get("ell"), raw.params.get("frac")) {
                (Some(ell), None) => {
                    FamilySpec::PointMass(Atom::Count(ell.as_u64().ok_or_else(|| {
                        Error::Family("point_mass `ell` must be a nonnegative integer".into())
                    })? as usize))
                }
                (None, Some(_)) => {
                    FamilySpec::PointMass(Atom::Fraction(param(&raw.params, kind, "frac")?))
                }
                _ => {
                    return Err(Error::Family(
                        "point_mass requires exactly one of `ell`, `frac`".into(),
                    ))
                }
            },
            "polya" => FamilySpec::Polya {
                a: param(&raw.params, kind, "a")?,
                b: param(&raw.params, kind, "b")?,
            },
            "uniform_counts" => FamilySpec::UniformCounts,
            "random_dirichlet" => FamilySpec::RandomDirichlet {
                seed: raw
                    .seed
                    .ok_or_else(|| Error::Family("random_dirichlet requires `seed`".into()))?,
            },
            other => return Err(Error::Family(format!("unknown kind `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl From<FamilySpec> for RawFamilySpec {
    fn from(spec: FamilySpec) -> Self {
        let mut params = Map::new();
        let mut seed = None;
        let kind = match spec {
            FamilySpec::Iid { p } => {
                params.insert("p".into(), p.into());
                "iid"
            }
            FamilySpec::PointMass(Atom::Count(ell)) => {
                params.insert("ell".into(), ell.into());
                "point_mass"
            }
            FamilySpec::PointMass(Atom::Fraction(f)) => {
                params.insert("frac".into(), f.into());
                "point_mass"
            }
            FamilySpec::Polya { a, b } => {
                params.insert("a".into(), a.into());
                params.insert("b".into(), b.into());
                "polya"
            }
            FamilySpec::UniformCounts => "uniform_counts",
            FamilySpec::RandomDirichlet { seed: s } => {
                seed = Some(s);
                "random_dirichlet"
            }
        };
        RawFamilySpec {
            kind: kind.into(),
            params,
            seed,
        }
    }
}

impl FamilySpec {
    /// Checks parameter constraints that do not depend on `n`.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilySpec::Iid { p } if !(0.0..=1.0).contains(&p) => Err(Error::Family(format!(
                "iid requires 0 <= p <= 1, got p = {p}"
            ))),
            FamilySpec::PointMass(Atom::Fraction(f)) if !(0.0..=1.0).contains(&f) => {
                Err(Error::Family(format!(
                    "point_mass requires 0 <= frac <= 1, got frac = {f}"
                )))
            }
            FamilySpec::Polya { a, b }
                if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) =>
            {
                Err(Error::Family(format!(
                    "polya requires urn weights a > 0 and b > 0, got a = {a}, b = {b}"
                )))
            }
            _ => Ok(()),
        }
    }

    /// Stable, human-readable label used in output tables.
    pub fn label(&self) -> String {
        self.to_string()
    }

    pub fn generate(&self, n: usize) -> Result<CountPMF> {
        generate(self, n)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Iid { p } => write!(f, "iid:p={p}"),
            FamilySpec::PointMass(Atom::Count(ell)) => write!(f, "point_mass:ell={ell}"),
            FamilySpec::PointMass(Atom::Fraction(x)) => write!(f, "point_mass:frac={x}"),
            FamilySpec::Polya { a, b } => write!(f, "polya:a={a};b={b}"),
            FamilySpec::UniformCounts => write!(f, "uniform_counts"),
            FamilySpec::RandomDirichlet { seed } => write!(f, "random_dirichlet:seed={seed}"),
        }
    }
}

/// Parses the compact form printed by `Display`, e.g. `iid:p=0.3`,
/// `polya:a=2;b=5`, `point_mass:frac=0.5`, `random_dirichlet:seed=7`, or a
/// JSON object.
impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Map::new();
        let mut seed = None;
        for pair in rest.split([';', ',']).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| Error::Family(format!("expected key=value, got `{pair}`")))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "seed" {
                seed = Some(
                    value
                        .parse()
                        .map_err(|_| Error::Family(format!("seed `{value}` is not a u64")))?,
                );
                continue;
            }
            let parsed: Value = if key == "ell" {
                value
                    .parse::<u64>()
                    .map_err(|_| {
                        Error::Family(format!("ell `{value}` is not a nonnegative integer"))
                    })?
                    .into()
            } else {
                value
                    .parse::<f64>()
                    .map_err(|_| Error::Family(format!("`{key}` value `{value}` is not a number")))?
                    .into()
            };
            params.insert(key.to_string(), parsed);
        }
        FamilySpec::try_from(RawFamilySpec {
            kind: kind.trim().to_string(),
            params,
            seed,
        })
    }
}

/// Count distribution of the family at length `n`.
pub fn generate(spec: &FamilySpec, n: usize) -> Result<CountPMF> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    let raw = match *spec {
        FamilySpec::Iid { p } => binomial_counts(n, p),
        FamilySpec::PointMass(atom) => {
            let ell = match atom {
                Atom::Count(ell) => ell,
                Atom::Fraction(f) => (f * n as f64).floor() as usize,
            };
            return CountPMF::point_mass(n, ell).map_err(|_| {
                Error::Family(format!(
                    "point_mass requires 0 <= ell <= n, got ell = {ell}, n = {n}"
                ))
            });
        }
        FamilySpec::Polya { a, b } => beta_binomial_counts(n, a, b),
        FamilySpec::UniformCounts => vec![1.0 / (n + 1) as f64; n + 1],
        FamilySpec::RandomDirichlet { seed } => dirichlet_counts(n, seed),
    };
    CountPMF::new(n, raw)
}

fn binomial_counts(n: usize, p: f64) -> Vec<f64> {
    if p == 0.0 || p == 1.0 {
        let mut v = vec![0.0; n + 1];
        v[if p == 0.0 { 0 } else { n }] = 1.0;
        return v;
    }
    let odds = p / (1.0 - p);
    counts_from_ratios(n, |l| (n - l) as f64 / (l + 1) as f64 * odds)
}

/// `C(n, ell) B(a + ell, b + n - ell) / B(a, b)`.
fn beta_binomial_counts(n: usize, a: f64, b: f64) -> Vec<f64> {
    counts_from_ratios(n, |l| {
        (n - l) as f64 / (l + 1) as f64 * (a + l as f64) / (b + (n - l - 1) as f64)
    })
}

/// Builds a pmf on `0..=n` from its successive ratios `ratio(l) = pmf[l+1] / pmf[l]`
/// (which must be positive and unimodal), anchoring at the mode and
/// normalizing at the end. Relative error grows by a few ulps per step from
/// the mode; entries far enough in the tails underflow to zero.
fn counts_from_ratios(n: usize, ratio: impl Fn(usize) -> f64) -> Vec<f64> {
    let mode = (0..n).find(|&l| ratio(l) <= 1.0).unwrap_or(n);
    let mut v = vec![0.0; n + 1];
    v[mode] = 1.0;
    for l in mode..n {
        v[l + 1] = v[l] * ratio(l);
    }
    for l in (0..mode).rev() {
        v[l] = v[l + 1] / ratio(l);
    }
    let total = sum_compensated(v.iter().copied());
    v.iter_mut().for_each(|x| *x /= total);
    v
}

fn dirichlet_counts(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let draws: Vec<f64> = (0..=n).map(|_| Exp1.sample(&mut rng)).collect();
    let total = sum_compensated(draws.iter().copied());
    draws.into_iter().map(|x| x / total).collect()
}

/// The bank of families used throughout the test suites: i.i.d. at 0.3 and
/// 0.5, the central point mass, Pólya(1,1), Pólya(2,5), and ten seeded random
/// instances.
pub fn standard_bank() -> Vec<FamilySpec> {
    let mut bank = vec![
        FamilySpec::Iid { p: 0.3 },
        FamilySpec::Iid { p: 0.5 },
        FamilySpec::PointMass(Atom::Fraction(0.5)),
        FamilySpec::Polya { a: 1.0, b: 1.0 },
        FamilySpec::Polya { a: 2.0, b: 5.0 },
    ];
    bank.extend((0..10).map(|i| FamilySpec::RandomDirichlet { seed: 1000 + i }));
    bank
}
