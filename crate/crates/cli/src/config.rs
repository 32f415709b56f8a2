//! Run configuration: command-line flags layered over an optional TOML file
//! with the same keys, validated before any command runs.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Deserializer};

use u21zeta::exactmath::{HalfInt, HalfIntTriple};
use u21zeta::fockweil::KParams;
use u21zeta::repparams::{CaseParams, CaseTag};
use u21zeta::zetaeval::QuadratureConfig;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

/// Accept `3` and `"0..3"` alike in the config file.
fn int_or_str<'de, D: Deserializer<'de>>(d: D) -> Result<Option<String>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Str(String),
    }
    Ok(Option::<Raw>::deserialize(d)?.map(|r| match r {
        Raw::Int(n) => n.to_string(),
        Raw::Str(s) => s,
    }))
}

/// Every setting, all optional. The same struct is filled from flags and
/// from the config file; flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct Settings {
    /// Dual-pair case: A, B, C1, C2, D1 or D2.
    #[arg(long, global = true)]
    pub case: Option<String>,
    /// Case parameters: a non-negative integer, or an inclusive range a..b for `table`.
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub mu1: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub mu2: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub mu: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub nu: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub nu1: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub nu2: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub alpha: Option<String>,
    #[arg(long, global = true)]
    #[serde(deserialize_with = "int_or_str")]
    pub beta: Option<String>,
    /// Harish-Chandra parameter as three half-integers, e.g. "-1/2 -5/2 -3/2".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Radial coordinate t of g = k a_t k'.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Angles "zeta theta xi eta gamma" of k (default all zero).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    /// Angles of k' (default all zero).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kp: Option<String>,
    #[arg(long, global = true)]
    pub grid_max: Option<u32>,
    /// Gauss-Legendre nodes in the radial variable.
    #[arg(long, global = true)]
    pub quad_t: Option<usize>,
    /// Gauss-Legendre nodes in each angle.
    #[arg(long, global = true)]
    pub quad_theta: Option<usize>,
    /// Relative tolerance for quadrature comparisons.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for the random modes (Monte Carlo zeta, oracle suite).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Random samples per case for the oracle suite.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Add a Monte Carlo estimate with this many samples to `zeta`.
    #[arg(long, global = true)]
    pub monte_carlo: Option<usize>,
    /// Also evaluate the Fock-model oracle in `coeff-weil`.
    #[arg(long, global = true, num_args = 0, default_missing_value = "true")]
    pub oracle: Option<bool>,
    /// Add a quadrature column to `table`.
    #[arg(long, global = true, num_args = 0, default_missing_value = "true")]
    pub numeric: Option<bool>,
}

macro_rules! overlay {
    ($a:ident, $b:ident, $($f:ident),*) => {
        Settings { $($f: $a.$f.or($b.$f)),* }
    };
}

impl Settings {
    /// Fill unset fields from `file`.
    pub fn over(self, file: Settings) -> Settings {
        overlay!(
            self, file, case, mu1, mu2, mu, nu, nu1, nu2, alpha, beta, lambda, t, k, kp, grid_max, quad_t, quad_theta, tol, format, out,
            seed, samples, monte_carlo, oracle, numeric
        )
    }

    pub fn load(path: &Path) -> Result<Settings, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }

    fn param(&self, name: &str) -> Option<&String> {
        match name {
            "mu1" => self.mu1.as_ref(),
            "mu2" => self.mu2.as_ref(),
            "mu" => self.mu.as_ref(),
            "nu" => self.nu.as_ref(),
            "nu1" => self.nu1.as_ref(),
            "nu2" => self.nu2.as_ref(),
            "alpha" => self.alpha.as_ref(),
            "beta" => self.beta.as_ref(),
            _ => None,
        }
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn case_tag(&self) -> Result<CaseTag, CliError> {
        let c = self.case.as_deref().ok_or_else(|| CliError::Input("--case is required".into()))?;
        CaseTag::from_str(c).map_err(CliError::Input)
    }

    /// Ranges for the three parameters of the case, in case order. Flags
    /// naming parameters of another case are rejected.
    pub fn param_ranges(&self, tag: CaseTag) -> Result<[ParamRange; 3], CliError> {
        let names = tag.param_names();
        for other in ["mu1", "mu2", "mu", "nu", "nu1", "nu2", "alpha", "beta"] {
            if self.param(other).is_some() && !names.contains(&other) {
                return Err(CliError::Input(format!("--{other} is not a parameter of case {tag} (expects {})", names.join(", "))));
            }
        }
        let mut out = [ParamRange { lo: 0, hi: 0 }; 3];
        for (slot, name) in out.iter_mut().zip(names) {
            let raw = self.param(name).ok_or_else(|| CliError::Input(format!("--{name} is required for case {tag}")))?;
            *slot = raw.parse().map_err(|e| CliError::Input(format!("--{name}: {e}")))?;
        }
        Ok(out)
    }

    /// Single-valued case parameters.
    pub fn case_params(&self) -> Result<CaseParams, CliError> {
        let tag = self.case_tag()?;
        let ranges = self.param_ranges(tag)?;
        let names = tag.param_names();
        let mut v = [0u32; 3];
        for k in 0..3 {
            if ranges[k].lo != ranges[k].hi {
                return Err(CliError::Input(format!("--{} must be a single value here", names[k])));
            }
            v[k] = ranges[k].lo;
        }
        CaseParams::from_values(tag, v).ok_or_else(|| CliError::Input(format!("{} must be >= {}", names[0], names[1])))
    }

    pub fn lambda(&self) -> Result<Option<HalfIntTriple>, CliError> {
        self.lambda.as_deref().map(parse_triple).transpose()
    }

    pub fn quadrature(&self) -> Result<QuadratureConfig, CliError> {
        let d = QuadratureConfig::default();
        let q = QuadratureConfig { n_t: self.quad_t.unwrap_or(d.n_t), n_theta: self.quad_theta.unwrap_or(d.n_theta), tol: self.tol.unwrap_or(d.tol) };
        if q.n_t < 2 || q.n_theta < 2 {
            return Err(CliError::Input("--quad-t and --quad-theta need at least 2 nodes".into()));
        }
        if q.n_t > 4096 || q.n_theta > 4096 {
            return Err(CliError::Input("node counts above 4096 are not supported".into()));
        }
        if !(q.tol > 0.0) {
            return Err(CliError::Input("--tol must be positive".into()));
        }
        Ok(q)
    }

    pub fn t(&self) -> Result<f64, CliError> {
        let t = self.t.ok_or_else(|| CliError::Input("--t is required".into()))?;
        if !t.is_finite() || t < 0.0 {
            return Err(CliError::Input(format!("--t must be a finite non-negative number, got {t}")));
        }
        Ok(t)
    }

    pub fn k_pair(&self) -> Result<(KParams, KParams), CliError> {
        Ok((parse_angles("--k", self.k.as_deref())?, parse_angles("--kp", self.kp.as_deref())?))
    }
}

/// Inclusive range of a non-negative parameter; a single value is lo = hi.
/// A range with lo > hi is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamRange {
    pub lo: u32,
    pub hi: u32,
}

impl ParamRange {
    pub fn values(self) -> std::ops::RangeInclusive<u32> {
        self.lo..=self.hi
    }
}

impl FromStr for ParamRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let num = |x: &str| x.trim().parse::<u32>().map_err(|_| format!("`{}` is not a non-negative integer", x.trim()));
        match s.split_once("..") {
            None => {
                let v = num(s)?;
                Ok(ParamRange { lo: v, hi: v })
            }
            Some((a, b)) => Ok(ParamRange { lo: num(a)?, hi: num(b.strip_prefix('=').unwrap_or(b))? }),
        }
    }
}

/// Three half-integers separated by spaces or commas. Errors name the
/// offending position.
pub fn parse_triple(s: &str) -> Result<HalfIntTriple, CliError> {
    let parts: Vec<&str> = s.split(|c: char| c.is_whitespace() || c == ',').filter(|p| !p.is_empty()).collect();
    if parts.len() != 3 {
        return Err(CliError::Input(format!("--lambda needs three half-integers, got {} in `{s}`", parts.len())));
    }
    let mut out = [HalfInt::ZERO; 3];
    for (k, p) in parts.iter().enumerate() {
        out[k] = p.parse().map_err(|e| CliError::Input(format!("--lambda coordinate {}: {e}", k + 1)))?;
    }
    Ok(out)
}

fn parse_angles(flag: &str, s: Option<&str>) -> Result<KParams, CliError> {
    let Some(s) = s else { return Ok(KParams::default()) };
    let v: Vec<f64> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<f64>().map_err(|_| CliError::Input(format!("{flag}: `{p}` is not a number"))))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [zeta, theta, xi, eta, gamma] if v.iter().all(|x| x.is_finite()) => Ok(KParams::new(zeta, theta, xi, eta, gamma)),
        _ => Err(CliError::Input(format!("{flag} needs five finite angles \"zeta theta xi eta gamma\""))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!("3".parse::<ParamRange>(), Ok(ParamRange { lo: 3, hi: 3 }));
        assert_eq!("0..4".parse::<ParamRange>(), Ok(ParamRange { lo: 0, hi: 4 }));
        assert_eq!("1..=2".parse::<ParamRange>(), Ok(ParamRange { lo: 1, hi: 2 }));
        assert!("-1".parse::<ParamRange>().is_err());
        assert!("1.5".parse::<ParamRange>().is_err());
        assert_eq!("3..1".parse::<ParamRange>().unwrap().values().count(), 0);
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("-1/2 -5/2 -3/2").unwrap()[1], HalfInt::from_twice(-5));
        assert!(parse_triple("1/2 1/2").is_err());
        let e = parse_triple("1/2 0.5 3/2").unwrap_err().to_string();
        assert!(e.contains("coordinate 2"), "{e}");
    }

    #[test]
    fn file_values_fill_gaps_only() {
        let file: Settings = toml::from_str("case = \"C1\"\nmu1 = 2\nalpha = \"0..3\"\nquad-t = 32").unwrap();
        let flags = Settings { mu1: Some("5".into()), ..Default::default() };
        let s = flags.over(file);
        assert_eq!(s.mu1.as_deref(), Some("5"));
        assert_eq!(s.alpha.as_deref(), Some("0..3"));
        assert_eq!(s.quad_t, Some(32));
        assert!(toml::from_str::<Settings>("bogus = 1").is_err());
    }
}
