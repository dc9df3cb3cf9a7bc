//! Loading weights, symbols and `M` witnesses from the command line or files.
//!
//! A source is one of
//! - `builtin:<name>`,
//! - an inline Fourier list `(j,re,im);(j,re,im);...`,
//! - a path to a JSON record `{"kind": "grid" | "fourier" | "expr", "data": ...}`,
//! - a path to a plain grid file: one real per line for weights, one or two
//!   reals (real and imaginary part) per line for symbols. Blank lines and
//!   lines starting with `#` are skipped.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::trig_core::{GridFn, TrigPoly};
use crate::weights::Weight;
use crate::widom::{MElement, Symbol};

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Sample {
    Real(f64),
    Complex([f64; 2]),
}

impl Sample {
    fn value(&self) -> Complex64 {
        match *self {
            Sample::Real(x) => Complex64::new(x, 0.0),
            Sample::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "lowercase")]
enum InputRecord {
    Grid(Vec<Sample>),
    Fourier(Vec<(i64, f64, f64)>),
    Expr(String),
}

fn input_err(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Parses `(j,re,im);(j,re,im);...`. Whitespace is ignored and a trailing
/// `;` is allowed.
pub fn parse_triples(s: &str) -> Result<Vec<(i64, Complex64)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    for item in compact.split(';').filter(|t| !t.is_empty()) {
        let inner = item
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| input_err(format!("triple '{item}' must look like (j,re,im)")))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(input_err(format!("triple '{item}' must have three entries")));
        }
        let j = parts[0].parse().map_err(|_| input_err(format!("bad frequency '{}'", parts[0])))?;
        let re: f64 = parts[1].parse().map_err(|_| input_err(format!("bad real part '{}'", parts[1])))?;
        let im: f64 = parts[2].parse().map_err(|_| input_err(format!("bad imaginary part '{}'", parts[2])))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(input_err(format!("triple '{item}' is not finite")));
        }
        out.push((j, Complex64::new(re, im)));
    }
    if out.is_empty() {
        return Err(input_err("empty triple list"));
    }
    Ok(out)
}

pub fn format_triples(p: &TrigPoly) -> String {
    p.terms().map(|(j, c)| format!("({j},{:?},{:?})", c.re, c.im)).collect::<Vec<_>>().join(";")
}

pub fn parse_melement(s: &str) -> Result<MElement> {
    MElement::from_terms(&parse_triples(s)?)
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(Path::new(path)).map_err(|e| input_err(format!("cannot read '{path}': {e}")))
}

fn parse_plain_grid(text: &str, max_cols: usize) -> Result<Vec<Complex64>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| input_err(format!("line {}: cannot parse '{line}'", lineno + 1)))?;
        if nums.is_empty() || nums.len() > max_cols {
            return Err(input_err(format!("line {}: expected 1..={max_cols} numbers", lineno + 1)));
        }
        out.push(Complex64::new(nums[0], nums.get(1).copied().unwrap_or(0.0)));
    }
    Ok(out)
}

/// Weight from its textual content; `m` is the grid for Fourier and named inputs.
pub fn parse_weight(id: &str, text: &str, m: usize) -> Result<Weight> {
    if text.trim_start().starts_with('{') {
        let rec: InputRecord = serde_json::from_str(text).map_err(|e| input_err(format!("{id}: {e}")))?;
        return match rec {
            InputRecord::Grid(samples) => {
                let mut real = Vec::with_capacity(samples.len());
                for (k, s) in samples.iter().enumerate() {
                    let v = s.value();
                    if v.im != 0.0 {
                        return Err(input_err(format!("{id}: weight sample {k} is complex")));
                    }
                    real.push(v.re);
                }
                Weight::from_samples(id, &real)
            }
            InputRecord::Fourier(t) => {
                let terms: Vec<_> = t.into_iter().map(|(j, re, im)| (j, Complex64::new(re, im))).collect();
                Weight::from_fourier(id, &terms, m)
            }
            InputRecord::Expr(name) => Weight::builtin(&name, m),
        };
    }
    let samples = parse_plain_grid(text, 1)?;
    let real: Vec<f64> = samples.iter().map(|z| z.re).collect();
    Weight::from_samples(id, &real)
}

/// Symbol from its textual content. Grid input is band-truncated at `M/4`.
pub fn parse_symbol(id: &str, text: &str) -> Result<Symbol> {
    if text.trim_start().starts_with('{') {
        let rec: InputRecord = serde_json::from_str(text).map_err(|e| input_err(format!("{id}: {e}")))?;
        return match rec {
            InputRecord::Grid(samples) => {
                Symbol::from_grid(id, &GridFn::new(samples.iter().map(Sample::value).collect())?)
            }
            InputRecord::Fourier(t) => {
                let terms: Vec<_> = t.into_iter().map(|(j, re, im)| (j, Complex64::new(re, im))).collect();
                Ok(Symbol::from_poly(id, TrigPoly::from_terms(&terms)))
            }
            InputRecord::Expr(name) => Symbol::builtin(&name),
        };
    }
    Symbol::from_grid(id, &GridFn::new(parse_plain_grid(text, 2)?)?)
}

pub fn load_weight(source: &str, m: usize) -> Result<Weight> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Weight::builtin(name, m);
    }
    if source.trim_start().starts_with('(') {
        return Weight::from_fourier(source, &parse_triples(source)?, m);
    }
    parse_weight(source, &read_file(source)?, m)
}

pub fn load_symbol(source: &str) -> Result<Symbol> {
    if let Some(name) = source.strip_prefix("builtin:") {
        return Symbol::builtin(name);
    }
    if source.trim_start().starts_with('(') {
        return Ok(Symbol::from_poly(source, TrigPoly::from_terms(&parse_triples(source)?)));
    }
    parse_symbol(source, &read_file(source)?)
}
