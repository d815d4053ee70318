//! CSV and JSON writers.
//!
//! Schemas:
//!
//! | table        | columns                              |
//! |--------------|--------------------------------------|
//! | histogram    | `bin_lo,bin_hi,mass,reference`       |
//! | distribution | `k,mass,stderr`                      |
//! | scalars      | `name,value,stderr`                  |
//!
//! Floats carry 12 significant digits; a missing standard error is an empty
//! CSV field or JSON `null`. CSV files open with `# key = value` comment lines
//! holding the resolved configuration. JSON files hold
//! `{"config": {...}, "tables": {name: [rows]}}`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Table {
    /// `(bin_lo, bin_hi, mass, reference)`.
    Histogram(Vec<[f64; 4]>),
    /// `(k, mass, stderr)`.
    Distribution(Vec<(usize, f64, Option<f64>)>),
    /// `(name, value, stderr)`.
    Scalars(Vec<(String, f64, Option<f64>)>),
}

impl Table {
    fn header(&self) -> &'static str {
        match self {
            Table::Histogram(_) => "bin_lo,bin_hi,mass,reference",
            Table::Distribution(_) => "k,mass,stderr",
            Table::Scalars(_) => "name,value,stderr",
        }
    }

    fn csv_rows(&self, out: &mut String) {
        let opt = |s: &Option<f64>| s.map(fmt_sig).unwrap_or_default();
        match self {
            Table::Histogram(rows) => {
                for r in rows {
                    let _ = writeln!(out, "{},{},{},{}", fmt_sig(r[0]), fmt_sig(r[1]), fmt_sig(r[2]), fmt_sig(r[3]));
                }
            }
            Table::Distribution(rows) => {
                for (k, m, s) in rows {
                    let _ = writeln!(out, "{k},{},{}", fmt_sig(*m), opt(s));
                }
            }
            Table::Scalars(rows) => {
                for (name, v, s) in rows {
                    let _ = writeln!(out, "{name},{},{}", fmt_sig(*v), opt(s));
                }
            }
        }
    }

    fn json_rows(&self) -> Value {
        let opt = |s: &Option<f64>| s.map_or(Value::Null, num);
        match self {
            Table::Histogram(rows) => rows
                .iter()
                .map(|r| json!({"bin_lo": num(r[0]), "bin_hi": num(r[1]), "mass": num(r[2]), "reference": num(r[3])}))
                .collect(),
            Table::Distribution(rows) => rows
                .iter()
                .map(|(k, m, s)| json!({"k": k, "mass": num(*m), "stderr": opt(s)}))
                .collect(),
            Table::Scalars(rows) => rows
                .iter()
                .map(|(name, v, s)| json!({"name": name, "value": num(*v), "stderr": opt(s)}))
                .collect(),
        }
    }
}

/// The result of one experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub experiment: String,
    pub config: BTreeMap<String, String>,
    pub tables: Vec<(String, Table)>,
    /// Set when the experiment compares against a reference and disagrees.
    pub mismatch: Option<Vec<String>>,
}

impl Artifact {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn scalar(&self, name: &str) -> Option<f64> {
        match self.table("summary")? {
            Table::Scalars(rows) => rows.iter().find(|r| r.0 == name).map(|r| r.1),
            _ => None,
        }
    }

    fn csv_preamble(&self, table: &str) -> String {
        let mut s = format!("# modone {}\n", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.config {
            let _ = writeln!(s, "# {k} = {v}");
        }
        let _ = writeln!(s, "# table = {table}");
        s
    }

    pub fn to_csv(&self, name: &str, table: &Table) -> String {
        let mut s = self.csv_preamble(name);
        s.push_str(table.header());
        s.push('\n');
        table.csv_rows(&mut s);
        s
    }

    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self.config.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
        let tables: Map<String, Value> = self.tables.iter().map(|(n, t)| (n.clone(), t.json_rows())).collect();
        let doc = json!({"tool": format!("modone {}", env!("CARGO_PKG_VERSION")), "config": config, "tables": tables});
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }

    /// Everything as one string, CSV tables separated by blank lines.
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self
                .tables
                .iter()
                .map(|(n, t)| self.to_csv(n, t))
                .collect::<Vec<_>>()
                .join("\n"),
        }
    }

    /// Write into `dir`: one `<experiment>_<table>.csv` per table, or a single
    /// `<experiment>.json`. Returns the paths written.
    pub fn write(&self, dir: &Path, format: Format) -> CliResult<Vec<PathBuf>> {
        let io = |path: &Path| {
            let path = path.display().to_string();
            move |source| CliError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let mut written = Vec::new();
        let files: Vec<(PathBuf, String)> = match format {
            Format::Json => vec![(dir.join(format!("{}.json", self.experiment)), self.to_json())],
            Format::Csv => self
                .tables
                .iter()
                .map(|(n, t)| (dir.join(format!("{}_{n}.csv", self.experiment)), self.to_csv(n, t)))
                .collect(),
        };
        for (path, body) in files {
            std::fs::write(&path, body).map_err(io(&path))?;
            written.push(path);
        }
        Ok(written)
    }
}

fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = fmt_sig(x).parse().expect("formatted float parses");
    serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number)
}

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `1e-5 ≤ |x| < 1e12`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{:.11e}", x.abs());
    let (mant, exp) = s.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mant.chars().filter(|c| *c != '.').collect();
    let sign = if x < 0.0 { "-" } else { "" };
    let trim = |int: &str, frac: &str| {
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if !(-5..12).contains(&exp) {
        let m = trim(&digits[..1], &digits[1..]);
        return format!("{sign}{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    if exp >= 0 {
        let cut = exp as usize + 1;
        format!("{sign}{}", trim(&digits[..cut], &digits[cut..]))
    } else {
        let frac = format!("{}{digits}", "0".repeat((-exp - 1) as usize));
        format!("{sign}{}", trim("0", &frac))
    }
}
