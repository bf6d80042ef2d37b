use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::FamilySpec;

/// Which `k` values to evaluate at each `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KRule {
    /// `1 ..= n - 1`.
    All,
    /// Fixed values; each must lie in `1 ..= n` for every `n` in the grid.
    List(Vec<usize>),
    /// `max(1, round(f * n))` for each fraction `f` in `(0, 1)`.
    Fractions(Vec<f64>),
}

impl KRule {
    /// The sorted, deduplicated `k` values for sequence length `n`.
    pub fn resolve(&self, n: usize) -> Result<Vec<usize>> {
        let mut ks = match self {
            KRule::All => (1..n).collect(),
            KRule::List(ks) => {
                if let Some(&bad) = ks.iter().find(|&&k| k == 0 || k > n) {
                    return Err(Error::config(
                        "k_rule",
                        format!("k = {bad} is outside [1, {n}]"),
                    ));
                }
                ks.clone()
            }
            KRule::Fractions(fs) => {
                if let Some(&bad) = fs.iter().find(|&&f| !(f > 0.0 && f < 1.0)) {
                    return Err(Error::config(
                        "k_rule",
                        format!("fraction {bad} is outside (0, 1)"),
                    ));
                }
                fs.iter()
                    .map(|f| ((f * n as f64).round() as usize).clamp(1, n))
                    .collect::<Vec<_>>()
            }
        };
        ks.sort_unstable();
        ks.dedup();
        Ok(ks)
    }
}

/// Parses `all`, a comma list `1,2,4`, or `frac:0.25,0.5`.
impl FromStr for KRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(KRule::All);
        }
        if let Some(rest) = s.strip_prefix("frac:") {
            let fs = parse_list::<f64>(rest).map_err(|m| Error::config("k", m))?;
            return Ok(KRule::Fractions(fs));
        }
        Ok(KRule::List(
            parse_list(s).map_err(|m| Error::config("k", m))?,
        ))
    }
}

/// Comma-separated list of numbers.
pub fn parse_list<T: FromStr>(s: &str) -> std::result::Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| format!("cannot parse `{x}`")))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config(
                "format",
                format!("expected csv or json, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub families: Vec<FamilySpec>,
    pub n_grid: Vec<usize>,
    #[serde(default = "default_k_rule")]
    pub k_rule: KRule,
    /// `None` (or `"-"`) writes to standard output.
    #[serde(default)]
    pub output_path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

fn default_k_rule() -> KRule {
    KRule::All
}

impl SweepConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let config: SweepConfig = serde_json::from_str(&text)
            .map_err(|e| Error::config(path.display().to_string(), e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return Err(Error::config("families", "must not be empty"));
        }
        if self.n_grid.is_empty() {
            return Err(Error::config("n_grid", "must not be empty"));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::config("n_grid", "must be strictly ascending"));
        }
        if self.n_grid[0] < 2 {
            return Err(Error::config("n_grid", "every n must be >= 2"));
        }
        for family in &self.families {
            family.validate()?;
        }
        for &n in &self.n_grid {
            self.k_rule.resolve(n)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(n_grid: Vec<usize>, k_rule: KRule) -> SweepConfig {
        SweepConfig {
            families: vec![FamilySpec::UniformCounts],
            n_grid,
            k_rule,
            output_path: None,
            format: OutputFormat::Csv,
        }
    }

    #[test]
    fn k_rules_resolve() {
        assert_eq!(KRule::All.resolve(4).unwrap(), vec![1, 2, 3]);
        assert_eq!(KRule::List(vec![3, 1, 3]).resolve(4).unwrap(), vec![1, 3]);
        assert!(KRule::List(vec![5]).resolve(4).is_err());
        assert_eq!(
            KRule::Fractions(vec![0.25, 0.5, 0.01]).resolve(16).unwrap(),
            vec![1, 4, 8]
        );
        assert!(KRule::Fractions(vec![1.0]).resolve(16).is_err());
    }

    #[test]
    fn k_rule_parsing() {
        assert_eq!("all".parse::<KRule>().unwrap(), KRule::All);
        assert_eq!(
            "1, 2,8".parse::<KRule>().unwrap(),
            KRule::List(vec![1, 2, 8])
        );
        assert_eq!(
            "frac:0.5".parse::<KRule>().unwrap(),
            KRule::Fractions(vec![0.5])
        );
        assert!("x".parse::<KRule>().is_err());
    }

    #[test]
    fn validation_names_fields() {
        let err = config(vec![], KRule::All).validate().unwrap_err();
        assert!(err.to_string().contains("n_grid"));
        let err = config(vec![8, 4], KRule::All).validate().unwrap_err();
        assert!(err.to_string().contains("ascending"));
        let err = config(vec![4, 8], KRule::List(vec![6]))
            .validate()
            .unwrap_err();
        assert!(err.to_string().contains("k_rule"));
        assert!(config(vec![4, 8], KRule::All).validate().is_ok());
    }

    #[test]
    fn json_config() {
        let text = r#"{
            "families": [{"kind": "iid", "params": {"p": 0.5}}, {"kind": "point_mass", "params": {"frac": 0.5}}],
            "n_grid": [8, 16],
            "k_rule": {"list": [1, 2]},
            "format": "json"
        }"#;
        let c: SweepConfig = serde_json::from_str(text).unwrap();
        assert_eq!(c.k_rule, KRule::List(vec![1, 2]));
        assert_eq!(c.format, OutputFormat::Json);
        assert!(c.output_path.is_none());
        let c: SweepConfig = serde_json::from_str(
            r#"{"families": [{"kind": "uniform_counts"}], "n_grid": [4], "k_rule": "all"}"#,
        )
        .unwrap();
        assert_eq!(c.k_rule, KRule::All);
    }
}
