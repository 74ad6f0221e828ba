//! Run configuration: a flat JSON document, overridden by command-line flags,
//! validated into typed jobs before anything is computed.

use crate::args::CommonArgs;
use lrkitaev::{ChainParams, Couplings};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const DEFAULT_L_GRID: [usize; 9] = [64, 96, 128, 192, 256, 384, 512, 768, 1024];

/// A chemical potential: a number or a named critical line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FieldSpec {
    Value(f64),
    /// The k = 0 critical field.
    CritZero,
    /// The k = pi critical field.
    CritPi,
}

impl FromStr for FieldSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "crit0" => Ok(FieldSpec::CritZero),
            "critpi" => Ok(FieldSpec::CritPi),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .map(FieldSpec::Value)
                .ok_or_else(|| format!("invalid field '{other}': expected a number, crit0 or critpi")),
        }
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Value(v) => write!(f, "{v}"),
            FieldSpec::CritZero => write!(f, "crit0"),
            FieldSpec::CritPi => write!(f, "critpi"),
        }
    }
}

impl FieldSpec {
    /// Critical lines resolved on the actual (finite or infinite) chain.
    pub fn resolve_on(&self, n_sites: usize, alpha1: f64, alpha2: f64, thermodynamic: bool) -> lrkitaev::Result<f64> {
        match self {
            FieldSpec::Value(v) => Ok(*v),
            _ => {
                let c = Couplings::new(&ChainParams::new(n_sites, alpha1, alpha2, 0.0, thermodynamic)?)?;
                if *self == FieldSpec::CritZero {
                    c.t_zero()
                } else {
                    c.t_pi()
                }
            }
        }
    }

    /// Critical lines of the infinite chain.
    pub fn resolve_infinite(&self, alpha1: f64) -> f64 {
        match self {
            FieldSpec::Value(v) => *v,
            FieldSpec::CritZero => 1.0,
            FieldSpec::CritPi if alpha1 > 1.0 => 2f64.powf(1.0 - alpha1) - 1.0,
            FieldSpec::CritPi => 0.0,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FieldInput {
    Number(f64),
    Text(String),
}

impl FieldInput {
    fn parse(&self) -> Result<FieldSpec, String> {
        match self {
            FieldInput::Number(v) => Ok(FieldSpec::Value(*v)),
            FieldInput::Text(s) => s.parse(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    task: Option<String>,
    n_sites: Option<usize>,
    alpha1: Option<f64>,
    alpha2: Option<f64>,
    alpha_list: Option<Vec<f64>>,
    h: Option<OneOrMany<FieldInput>>,
    thermodynamic: Option<bool>,
    l_list: Option<Vec<usize>>,
    nu_list: Option<Vec<f64>>,
    out: Option<PathBuf>,
    breakdown_out: Option<PathBuf>,
    with_prediction: Option<bool>,
    figure: Option<String>,
}

/// Merged configuration.
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    pub task: Option<String>,
    pub n_sites: Option<usize>,
    pub alpha1: Option<f64>,
    pub alpha2: Option<f64>,
    pub alpha_list: Option<Vec<f64>>,
    pub h: Option<Vec<FieldSpec>>,
    pub thermodynamic: bool,
    pub l_list: Option<Vec<usize>>,
    pub nu_list: Option<Vec<f64>>,
    pub out: Option<PathBuf>,
    pub breakdown_out: Option<PathBuf>,
    pub with_prediction: bool,
    pub figure: Option<String>,
    pub corrupt_entry: bool,
}

fn read_file(path: &Path) -> Result<FileConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| ConfigError::Invalid(format!("{}: {e}", path.display())))
}

#[derive(Debug)]
pub enum ConfigError {
    Invalid(String),
    Io(String),
}

impl RunConfig {
    pub fn load(args: &CommonArgs) -> Result<Self, ConfigError> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let h = match file.h {
            Some(h) => Some(
                h.into_vec().iter().map(FieldInput::parse).collect::<Result<Vec<_>, _>>().map_err(ConfigError::Invalid)?,
            ),
            None => None,
        };
        let mut cfg = RunConfig {
            task: file.task,
            n_sites: file.n_sites,
            alpha1: file.alpha1,
            alpha2: file.alpha2,
            alpha_list: file.alpha_list,
            h,
            thermodynamic: file.thermodynamic.unwrap_or(false),
            l_list: file.l_list,
            nu_list: file.nu_list,
            out: file.out,
            breakdown_out: file.breakdown_out,
            with_prediction: file.with_prediction.unwrap_or(false),
            figure: file.figure,
            corrupt_entry: false,
        };
        if args.task.is_some() {
            cfg.task = args.task.clone();
        }
        if args.n_sites.is_some() {
            cfg.n_sites = args.n_sites;
        }
        if args.alpha1.is_some() {
            cfg.alpha1 = args.alpha1;
        }
        if args.alpha2.is_some() {
            cfg.alpha2 = args.alpha2;
        }
        if let Some(a) = &args.alpha {
            cfg.alpha_list = Some(a.clone());
        }
        if let Some(h) = &args.h {
            cfg.h = Some(h.clone());
        }
        if args.thermodynamic {
            cfg.thermodynamic = true;
        }
        if let Some(l) = &args.subsystem {
            cfg.l_list = Some(l.clone());
        }
        if let Some(nu) = &args.nu {
            cfg.nu_list = Some(nu.clone());
        }
        if args.out.is_some() {
            cfg.out = args.out.clone();
        }
        if args.breakdown.is_some() {
            cfg.breakdown_out = args.breakdown.clone();
        }
        if args.with_prediction {
            cfg.with_prediction = true;
        }
        if args.corrupt_entry {
            cfg.corrupt_entry = true;
        }
        Ok(cfg)
    }

    /// Exponent pairs: the explicit pair, or one equal pair per entry of the alpha list.
    pub fn exponent_pairs(&self) -> Result<Vec<(f64, f64)>, String> {
        if let Some(list) = &self.alpha_list {
            if self.alpha1.is_some() || self.alpha2.is_some() {
                return Err("give either an alpha list or alpha1/alpha2, not both".into());
            }
            if list.is_empty() {
                return Err("alpha list is empty".into());
            }
            return Ok(list.iter().map(|&a| (a, a)).collect());
        }
        match (self.alpha1, self.alpha2) {
            (Some(a), Some(b)) => Ok(vec![(a, b)]),
            (Some(a), None) | (None, Some(a)) => Ok(vec![(a, a)]),
            (None, None) => Err("missing exponents: set alpha1 and alpha2 (or alpha)".into()),
        }
    }

    pub fn fields(&self) -> Result<Vec<FieldSpec>, String> {
        match &self.h {
            Some(v) if !v.is_empty() => Ok(v.clone()),
            _ => Err("missing field h".into()),
        }
    }

    pub fn single_field(&self) -> Result<FieldSpec, String> {
        let f = self.fields()?;
        if f.len() != 1 {
            return Err(format!("this command takes one field value, got {}", f.len()));
        }
        Ok(f[0])
    }

    pub fn orders(&self, default: &[f64]) -> Result<Vec<f64>, String> {
        let v = self.nu_list.clone().unwrap_or_else(|| default.to_vec());
        if v.is_empty() || v.iter().any(|&nu| !(nu >= 1.0) || !nu.is_finite()) {
            return Err(format!("Renyi orders must be finite and >= 1, got {v:?}"));
        }
        Ok(v)
    }

    pub fn integer_orders(&self, default: &[f64]) -> Result<Vec<u32>, String> {
        self.orders(default)?
            .into_iter()
            .map(|nu| if nu.fract() == 0.0 && nu <= 64.0 { Ok(nu as u32) } else { Err(format!("order {nu} must be an integer")) })
            .collect()
    }

    pub fn sizes(&self) -> Result<Vec<usize>, String> {
        let v = self.l_list.clone().unwrap_or_else(|| DEFAULT_L_GRID.to_vec());
        if v.is_empty() || v.contains(&0) {
            return Err(format!("subsystem sizes must be >= 1, got {v:?}"));
        }
        Ok(v)
    }
}
