//! Run configuration: a JSON document with a model block, a command and its
//! parameters. Spins are written `1..=q` in the file and shifted to `0..q`
//! here.

use std::fmt;

use cayley_core::group::{FiniteGroup, FiniteQuotient};
use cayley_core::{Error as CoreError, ModelSpec};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub model: RawModel,
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub params: Params,
    #[serde(default)]
    pub output: Option<RawOutput>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    pub k: usize,
    pub q: usize,
    pub lambda: Vec<Vec<f64>>,
    #[serde(default)]
    pub h: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawOutput {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Option<String>,
}

/// β given either as one number or as a list.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Betas {
    One(f64),
    Many(Vec<f64>),
}

impl Betas {
    pub fn to_vec(&self) -> Vec<f64> {
        match self {
            Betas::One(b) => vec![*b],
            Betas::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum QuotientSpec {
    /// `"parity"` or `"trivial"`.
    Named(String),
    Table {
        table: Vec<Vec<usize>>,
        images: Vec<usize>,
    },
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub n: Option<usize>,
    /// Boundary spin, `1..=q`.
    pub boundary: Option<usize>,
    pub beta: Option<Betas>,
    pub max_r: Option<usize>,
    pub max_vertices: Option<usize>,
    pub max_edges: Option<usize>,
    pub max_set_size: Option<usize>,
    pub quotient: Option<QuotientSpec>,
    /// Coset assignment for `periodic`, spins `1..=q`.
    pub assignment: Option<Vec<usize>>,
    /// Spins on `V_n` for `contours`, `1..=q`.
    pub spins: Option<Vec<usize>>,
    /// Random configurations for the spanning-identity check; 0 means exhaustive.
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    /// Also enumerate for `marginal`.
    pub bruteforce: Option<bool>,
    /// Write the edge list of `tree-info` to this path.
    pub edge_list: Option<String>,
    pub max_configurations: Option<u64>,
}

/// A configuration problem tied to a line of the source file when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// A parsed and validated configuration, with the source kept for
/// diagnostics raised later.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub raw: RawConfig,
    pub spec: ModelSpec,
    source: String,
}

impl RunConfig {
    pub fn parse(source: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig = serde_json::from_str(source).map_err(|e| ConfigError {
            line: Some(e.line()),
            message: e.to_string(),
        })?;
        let spec = build_spec(&raw.model, source)?;
        let cfg = RunConfig {
            raw,
            spec,
            source: source.to_string(),
        };
        cfg.validate_params()?;
        Ok(cfg)
    }

    /// Error anchored at the first occurrence of `"key"`.
    pub fn error_at(&self, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: line_of_key(&self.source, key),
            message: message.into(),
        }
    }

    fn validate_params(&self) -> Result<(), ConfigError> {
        let p = &self.raw.params;
        let q = self.spec.q();
        if let Some(b) = p.boundary {
            if b == 0 || b > q {
                return Err(self.error_at("boundary", format!("boundary spin {b} outside 1..={q}")));
            }
        }
        if let Some(betas) = &p.beta {
            let v = betas.to_vec();
            if v.is_empty() {
                return Err(self.error_at("beta", "beta list is empty"));
            }
            if let Some(b) = v.iter().find(|b| !b.is_finite() || **b < 0.0) {
                return Err(self.error_at("beta", format!("beta must be finite and >= 0, got {b}")));
            }
        }
        for (key, list) in [("assignment", &p.assignment), ("spins", &p.spins)] {
            if let Some(s) = list.as_ref().and_then(|l| l.iter().find(|&&s| s == 0 || s > q)) {
                return Err(self.error_at(key, format!("spin {s} outside 1..={q}")));
            }
        }
        if let Some(t) = self.raw.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(self.error_at("tolerance", format!("tolerance must be >= 0, got {t}")));
            }
        }
        if let Some(0) = self.raw.workers {
            return Err(self.error_at("workers", "worker count must be at least 1"));
        }
        Ok(())
    }

    pub fn n(&self) -> Result<usize, ConfigError> {
        self.raw
            .params
            .n
            .ok_or_else(|| self.error_at("params", "this command needs params.n"))
    }

    /// Boundary spin as a 0-based index; defaults to spin 1.
    pub fn boundary(&self) -> u8 {
        self.raw.params.boundary.map_or(0, |b| (b - 1) as u8)
    }

    pub fn betas(&self) -> Result<Vec<f64>, ConfigError> {
        self.raw
            .params
            .beta
            .as_ref()
            .map(Betas::to_vec)
            .ok_or_else(|| self.error_at("params", "this command needs params.beta"))
    }

    pub fn quotient(&self) -> Result<FiniteQuotient, ConfigError> {
        let k = self.spec.k();
        match &self.raw.params.quotient {
            None => Ok(FiniteQuotient::parity(k)),
            Some(QuotientSpec::Named(name)) => match name.as_str() {
                "parity" => Ok(FiniteQuotient::parity(k)),
                "trivial" => Ok(FiniteQuotient::trivial(k)),
                other => Err(self.error_at("quotient", format!("unknown quotient {other:?}"))),
            },
            Some(QuotientSpec::Table { table, images }) => FiniteGroup::new(table)
                .and_then(|g| FiniteQuotient::new(k, g, images.clone()))
                .map_err(|e| self.error_at("quotient", e.to_string())),
        }
    }
}

fn build_spec(model: &RawModel, source: &str) -> Result<ModelSpec, ConfigError> {
    let at = |key: &str, message: String| ConfigError {
        line: line_of_key(source, key),
        message,
    };
    let q = model.q;
    if model.lambda.len() != q {
        return Err(at(
            "lambda",
            format!("lambda has {} rows, expected q = {q}", model.lambda.len()),
        ));
    }
    if let Some((i, row)) = model.lambda.iter().enumerate().find(|(_, r)| r.len() != q) {
        return Err(ConfigError {
            line: lambda_entry_line(source, i, 0).or_else(|| line_of_key(source, "lambda")),
            message: format!("lambda row {} has {} entries, expected {q}", i + 1, row.len()),
        });
    }
    let h = model.h.clone().unwrap_or_else(|| vec![0.0; q]);
    ModelSpec::new(model.k, q, &model.lambda, &h).map_err(|e| match e {
        CoreError::Asymmetric { i, j, .. } => ConfigError {
            line: lambda_entry_line(source, i, j).or_else(|| line_of_key(source, "lambda")),
            message: format!("{e}"),
        },
        other => {
            let msg = other.to_string();
            let key = if msg.contains("order k") {
                "k"
            } else if msg.contains("q must") {
                "q"
            } else if msg.contains("h has") {
                "h"
            } else {
                "model"
            };
            at(key, other.to_string())
        }
    })
}

/// 1-based line of the first `"key"` in `source`.
pub fn line_of_key(source: &str, key: &str) -> Option<usize> {
    let needle = format!("\"{key}\"");
    source
        .find(&needle)
        .map(|pos| source[..pos].matches('\n').count() + 1)
}

/// 1-based line of entry `(i, j)` (0-based indices) of the `lambda` matrix.
pub fn lambda_entry_line(source: &str, i: usize, j: usize) -> Option<usize> {
    let start = source.find("\"lambda\"")?;
    let bytes = source.as_bytes();
    let mut pos = start + "\"lambda\"".len();
    // skip to the outer bracket
    while pos < bytes.len() && bytes[pos] != b'[' {
        pos += 1;
    }
    pos += 1;
    let mut row = 0usize;
    let mut col = 0usize;
    let mut depth = 1;
    let mut at_value = false;
    while pos < bytes.len() && depth > 0 {
        let b = bytes[pos];
        match b {
            b'[' => {
                depth += 1;
                col = 0;
                at_value = false;
            }
            b']' => {
                if depth == 2 {
                    row += 1;
                }
                depth -= 1;
            }
            b',' => {
                if depth == 2 {
                    col += 1;
                }
                at_value = false;
            }
            c if depth == 2 && !at_value && !c.is_ascii_whitespace() => {
                if row == i && col == j {
                    return Some(source[..pos].matches('\n').count() + 1);
                }
                at_value = true;
            }
            _ => {}
        }
        pos += 1;
    }
    None
}
