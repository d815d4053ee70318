//! Flat `key = value` experiment files.
//!
//! Blank lines and lines starting with `#` are ignored. Every value read by
//! an experiment, including defaults, is recorded so that the emitted files
//! carry the configuration that actually ran.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{CliError, CliResult};

pub const KNOWN_KEYS: &[&str] = &[
    "experiment",
    "generator",
    "alpha",
    "n",
    "L",
    "seed",
    "samples",
    "out_dir",
    "format",
    "k_max",
    "x0",
    "psi",
    "bin_width",
    "num_bins",
    "convention",
    "window",
    "n_max",
    "q_max",
    "constant",
    "beta",
    "average_n",
    "m",
    "exponent",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    given: BTreeMap<String, String>,
    used: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("line {}: expected `key = value`, got `{line}`", i + 1)));
            };
            let (k, v) = (k.trim(), v.trim());
            if cfg.given.contains_key(k) {
                return Err(CliError::Usage(format!("line {}: duplicate key `{k}`", i + 1)));
            }
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }

    /// Set or override a key.
    pub fn set(&mut self, key: &str, value: impl Into<String>) -> CliResult<()> {
        if !KNOWN_KEYS.contains(&key) {
            return Err(CliError::Usage(format!("unknown config key `{key}`")));
        }
        self.given.insert(key.to_string(), value.into());
        Ok(())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.given.contains_key(key)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.given.get(key).map(String::as_str)
    }

    /// Keys and values read so far, defaults included.
    pub fn resolved(&self) -> &BTreeMap<String, String> {
        &self.used
    }

    fn lookup(&mut self, key: &str, default: Option<&str>) -> CliResult<String> {
        let v = match (self.given.get(key), default) {
            (Some(v), _) => v.clone(),
            (None, Some(d)) => d.to_string(),
            (None, None) => return Err(CliError::Usage(format!("missing config key `{key}`"))),
        };
        self.used.insert(key.to_string(), v.clone());
        Ok(v)
    }

    pub fn text(&mut self, key: &str, default: &str) -> CliResult<String> {
        self.lookup(key, Some(default))
    }

    pub fn required(&mut self, key: &str) -> CliResult<String> {
        self.lookup(key, None)
    }

    pub fn num<T: FromStr>(&mut self, key: &str, default: &str) -> CliResult<T> {
        let v = self.lookup(key, Some(default))?;
        parse_count(&v).ok_or_else(|| CliError::Usage(format!("`{key}`: cannot parse `{v}`")))
    }

    /// A real number; accepts the forms understood by [`parse_real`].
    pub fn real(&mut self, key: &str, default: &str) -> CliResult<f64> {
        let v = self.lookup(key, Some(default))?;
        parse_real(&v).ok_or_else(|| CliError::Usage(format!("`{key}`: cannot parse `{v}` as a real number")))
    }
}

/// Integers may be written as `1e6` or `1_000_000`.
fn parse_count<T: FromStr>(s: &str) -> Option<T> {
    let s = s.replace('_', "");
    if let Ok(v) = s.parse() {
        return Some(v);
    }
    let x: f64 = s.parse().ok()?;
    if x.fract() != 0.0 || x < 0.0 || x > 1e18 {
        return None;
    }
    format!("{x:.0}").parse().ok()
}

fn parse_term(t: &str) -> Option<f64> {
    let t = t.trim();
    match t {
        "golden" => return Some((1.0 + 5f64.sqrt()) / 2.0),
        "pi" => return Some(std::f64::consts::PI),
        "e" => return Some(std::f64::consts::E),
        _ => {}
    }
    if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        let x: f64 = inner.trim().parse().ok()?;
        return (x >= 0.0).then(|| x.sqrt());
    }
    t.parse().ok()
}

/// A sum of terms, each a decimal literal, `sqrt(x)`, `golden`, `pi` or `e`,
/// e.g. `sqrt(3) - 1`.
pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    let mut total = 0.0;
    let mut start = 0;
    let mut sign = 1.0;
    let bytes = s.as_bytes();
    for i in 0..=bytes.len() {
        // a sign splits terms unless it belongs to an exponent or leads the string
        let split = i == bytes.len()
            || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        if !split {
            continue;
        }
        let term = s[start..i].trim();
        let (sg, body) = match term.strip_prefix('-') {
            Some(b) => (-1.0, b),
            None => (1.0, term.strip_prefix('+').unwrap_or(term)),
        };
        total += sign * sg * parse_term(body)?;
        if i < bytes.len() {
            sign = if bytes[i] == b'-' { -1.0 } else { 1.0 };
            start = i + 1;
        }
    }
    total.is_finite().then_some(total)
}
