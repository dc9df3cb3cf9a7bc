//! Flat report records and their two encodings.
//!
//! A [`Record`] holds a metadata block, ordered `key = value` fields and
//! named CSV tables. The text encoding is
//!
//! ```text
//! [meta]
//! kind = szego
//! [fields]
//! weight_id = builtin:one
//! [table oracle]
//! n,value
//! 2,1.0
//! ```
//!
//! and the JSON encoding carries the same strings in the same order. Floats
//! are written with `{:?}` so every value parses back bit for bit.

use std::fmt::Write as _;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hardy_alpha::Alpha;
use crate::szego::{LambdaVariant, SzegoReport, Verdict};
use crate::toeplitz_alpha::ToeplitzRep;
use crate::trig_core::TrigPoly;
use crate::widom::{
    AlphaScan, Bracket, FactorResiduals, PrimalBound, RieszFactor, ScanSection, WidomFlags, WidomReport,
};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn column(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| parse_err(format!("table '{}' has no column '{name}'", self.name)))
    }

    /// Parses every cell of column `name`.
    pub fn parse_column<T: FromStr>(&self, name: &str) -> Result<Vec<T>> {
        let k = self.column(name)?;
        self.rows
            .iter()
            .map(|r| r[k].parse().map_err(|_| parse_err(format!("bad value '{}' in {}.{name}", r[k], self.name))))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    pub meta: Vec<(String, String)>,
    pub fields: Vec<(String, String)>,
    pub tables: Vec<Table>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::ReportParse(msg.into())
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

impl Record {
    pub fn new(kind: &str) -> Self {
        let mut r = Self::default();
        r.meta.push(("kind".into(), kind.into()));
        r.meta.push(("library".into(), format!("neil-core {}", env!("CARGO_PKG_VERSION"))));
        r
    }

    pub fn kind(&self) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == "kind").map(|(_, v)| v.as_str())
    }

    pub fn add_meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.into(), value.into()));
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) {
        self.fields.push((key.into(), value.into()));
    }

    pub fn set_f64(&mut self, key: &str, x: f64) {
        self.set(key, fmt_f64(x));
    }

    pub fn set_complex(&mut self, key: &str, z: Complex64) {
        self.set_f64(&format!("{key}_re"), z.re);
        self.set_f64(&format!("{key}_im"), z.im);
    }

    pub fn set_alpha(&mut self, key: &str, a: &Alpha) {
        self.set_complex(&format!("{key}_a"), a.a());
        self.set_complex(&format!("{key}_b"), a.b());
    }

    pub fn get(&self, key: &str) -> Result<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| parse_err(format!("missing field '{key}'")))
    }

    pub fn has(&self, key: &str) -> bool {
        self.fields.iter().any(|(k, _)| k == key)
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<T> {
        let v = self.get(key)?;
        v.parse().map_err(|_| parse_err(format!("bad value '{v}' for '{key}'")))
    }

    pub fn get_complex(&self, key: &str) -> Result<Complex64> {
        Ok(Complex64::new(self.parse(&format!("{key}_re"))?, self.parse(&format!("{key}_im"))?))
    }

    pub fn get_alpha(&self, key: &str) -> Result<Alpha> {
        Alpha::from_canonical(self.get_complex(&format!("{key}_a"))?, self.get_complex(&format!("{key}_b"))?)
    }

    pub fn add_table(&mut self, t: Table) {
        self.tables.push(t);
    }

    pub fn table(&self, name: &str) -> Result<&Table> {
        self.tables.iter().find(|t| t.name == name).ok_or_else(|| parse_err(format!("missing table '{name}'")))
    }

    pub fn has_table(&self, name: &str) -> bool {
        self.tables.iter().any(|t| t.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("[meta]\n");
        for (k, v) in &self.meta {
            let _ = writeln!(out, "{k} = {v}");
        }
        out.push_str("[fields]\n");
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k} = {v}");
        }
        for t in &self.tables {
            let _ = writeln!(out, "[table {}]", t.name);
            let _ = writeln!(out, "{}", t.columns.join(","));
            for r in &t.rows {
                let _ = writeln!(out, "{}", r.join(","));
            }
        }
        out
    }

    pub fn from_text(s: &str) -> Result<Self> {
        enum Section {
            None,
            Meta,
            Fields,
            Table,
        }
        let mut rec = Record::default();
        let mut section = Section::None;
        for (lineno, line) in s.lines().enumerate() {
            let lineno = lineno + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(head) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                section = match head {
                    "meta" => Section::Meta,
                    "fields" => Section::Fields,
                    _ => match head.strip_prefix("table ") {
                        Some(name) => {
                            rec.tables.push(Table { name: name.into(), ..Table::default() });
                            Section::Table
                        }
                        None => return Err(parse_err(format!("line {lineno}: unknown section '{head}'"))),
                    },
                };
                continue;
            }
            match section {
                Section::None => return Err(parse_err(format!("line {lineno}: content before any section"))),
                Section::Meta | Section::Fields => {
                    let (k, v) = line
                        .split_once(" = ")
                        .ok_or_else(|| parse_err(format!("line {lineno}: expected 'key = value'")))?;
                    let target = if matches!(section, Section::Meta) { &mut rec.meta } else { &mut rec.fields };
                    target.push((k.into(), v.into()));
                }
                Section::Table => {
                    let t = rec.tables.last_mut().expect("table section has a table");
                    let cells: Vec<String> = line.split(',').map(String::from).collect();
                    if t.columns.is_empty() {
                        t.columns = cells;
                    } else if cells.len() != t.columns.len() {
                        return Err(parse_err(format!(
                            "line {lineno}: table '{}' row has {} cells, expected {}",
                            t.name,
                            cells.len(),
                            t.columns.len()
                        )));
                    } else {
                        t.rows.push(cells);
                    }
                }
            }
        }
        Ok(rec)
    }

    pub fn to_json_value(&self) -> Value {
        let pairs = |v: &[(String, String)]| {
            Value::Object(v.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
        };
        let tables: Vec<Value> = self
            .tables
            .iter()
            .map(|t| json!({ "name": t.name, "columns": t.columns, "rows": t.rows }))
            .collect();
        json!({ "meta": pairs(&self.meta), "fields": pairs(&self.fields), "tables": tables })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("strings serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
        let pairs = |key: &str| -> Result<Vec<(String, String)>> {
            let obj = v.get(key).and_then(Value::as_object).ok_or_else(|| parse_err(format!("missing '{key}'")))?;
            obj.iter()
                .map(|(k, v)| {
                    v.as_str()
                        .map(|s| (k.clone(), s.to_string()))
                        .ok_or_else(|| parse_err(format!("'{key}.{k}' is not a string")))
                })
                .collect()
        };
        let strings = |v: &Value, what: &str| -> Result<Vec<String>> {
            v.as_array()
                .ok_or_else(|| parse_err(format!("{what} is not an array")))?
                .iter()
                .map(|c| c.as_str().map(String::from).ok_or_else(|| parse_err(format!("{what} holds a non-string"))))
                .collect()
        };
        let mut tables = Vec::new();
        for t in v.get("tables").and_then(Value::as_array).ok_or_else(|| parse_err("missing 'tables'"))? {
            let name = t.get("name").and_then(Value::as_str).ok_or_else(|| parse_err("table without name"))?;
            let columns = strings(t.get("columns").unwrap_or(&Value::Null), "columns")?;
            let rows = t
                .get("rows")
                .and_then(Value::as_array)
                .ok_or_else(|| parse_err(format!("table '{name}' without rows")))?
                .iter()
                .map(|r| strings(r, "row"))
                .collect::<Result<Vec<_>>>()?;
            if rows.iter().any(|r| r.len() != columns.len()) {
                return Err(parse_err(format!("table '{name}' has ragged rows")));
            }
            tables.push(Table { name: name.into(), columns, rows });
        }
        Ok(Record { meta: pairs("meta")?, fields: pairs("fields")?, tables })
    }

    /// Accepts either encoding.
    pub fn parse_any(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            Self::from_json(s)
        } else {
            Self::from_text(s)
        }
    }
}

/// Conversion between a report type and its record.
pub trait Report: Sized {
    const KIND: &'static str;

    fn to_record(&self) -> Record;

    fn from_record_fields(rec: &Record) -> Result<Self>;

    fn from_record(rec: &Record) -> Result<Self> {
        match rec.kind() {
            Some(k) if k == Self::KIND => Self::from_record_fields(rec),
            other => Err(parse_err(format!("expected a '{}' record, found {:?}", Self::KIND, other))),
        }
    }
}

fn poly_table(name: &str, p: &TrigPoly) -> Table {
    let mut t = Table::new(name, &["j", "re", "im"]);
    for (k, c) in p.coeffs().iter().enumerate() {
        t.push(vec![(p.lo() + k as i64).to_string(), fmt_f64(c.re), fmt_f64(c.im)]);
    }
    t
}

fn read_poly(rec: &Record, name: &str) -> Result<TrigPoly> {
    let t = rec.table(name)?;
    let js: Vec<i64> = t.parse_column("j")?;
    let re: Vec<f64> = t.parse_column("re")?;
    let im: Vec<f64> = t.parse_column("im")?;
    let Some(&lo) = js.first() else {
        return Ok(TrigPoly::zero());
    };
    if js.iter().enumerate().any(|(k, &j)| j != lo + k as i64) {
        return Err(parse_err(format!("table '{name}' frequencies are not consecutive")));
    }
    Ok(TrigPoly::new(lo, re.into_iter().zip(im).map(|(r, i)| Complex64::new(r, i)).collect()))
}

fn series_table(name: &str, values: &[(usize, f64)]) -> Table {
    let mut t = Table::new(name, &["n", "value"]);
    for (n, v) in values {
        t.push(vec![n.to_string(), fmt_f64(*v)]);
    }
    t
}

fn read_series(rec: &Record, name: &str) -> Result<Vec<(usize, f64)>> {
    let t = rec.table(name)?;
    Ok(t.parse_column::<usize>("n")?.into_iter().zip(t.parse_column::<f64>("value")?).collect())
}

fn variant_str(v: LambdaVariant) -> &'static str {
    match v {
        LambdaVariant::Paper => "paper",
        LambdaVariant::Log => "log",
    }
}

fn parse_variant(s: &str) -> Result<LambdaVariant> {
    match s {
        "paper" => Ok(LambdaVariant::Paper),
        "log" => Ok(LambdaVariant::Log),
        _ => Err(parse_err(format!("unknown minimizer variant '{s}'"))),
    }
}

impl Report for SzegoReport {
    const KIND: &'static str = "szego";

    fn to_record(&self) -> Record {
        let mut r = Record::new(Self::KIND);
        r.set("weight_id", self.weight_id.clone());
        r.set("grid", self.grid.to_string());
        r.set("band", self.band.to_string());
        r.set_f64("c_rho", self.c_rho);
        r.set_complex("lambda_moment", self.lambda_moment);
        r.set_complex("c1_log", self.c1_log);
        r.set_f64("tail_energy", self.tail_energy);
        r.set_f64("classical_closed", self.classical_closed);
        r.set_f64("neil_closed_paper", self.neil_closed_paper);
        r.set_f64("neil_closed_log", self.neil_closed_log);
        r.set_f64("oracle", self.oracle());
        r.set("stabilized", self.stabilized.to_string());
        r.set("minimizer_variant", variant_str(self.minimizer_variant));
        r.set_f64("minimizer_objective", self.minimizer_objective);
        r.set("paper_minimizer_valid", self.paper_minimizer_valid.to_string());
        r.set("log_minimizer_valid", self.log_minimizer_valid.to_string());
        r.set("verdict", self.verdict.as_str());
        r.add_table(series_table("oracle_values", &self.oracle_values));
        r.add_table(series_table("classical_oracle_values", &self.classical_oracle_values));
        r.add_table(poly_table("minimizer", &self.minimizer));
        r
    }

    fn from_record_fields(r: &Record) -> Result<Self> {
        let verdict = r.get("verdict")?;
        Ok(SzegoReport {
            weight_id: r.get("weight_id")?.to_string(),
            grid: r.parse("grid")?,
            band: r.parse("band")?,
            c_rho: r.parse("c_rho")?,
            lambda_moment: r.get_complex("lambda_moment")?,
            c1_log: r.get_complex("c1_log")?,
            tail_energy: r.parse("tail_energy")?,
            classical_closed: r.parse("classical_closed")?,
            neil_closed_paper: r.parse("neil_closed_paper")?,
            neil_closed_log: r.parse("neil_closed_log")?,
            oracle_values: read_series(r, "oracle_values")?,
            classical_oracle_values: read_series(r, "classical_oracle_values")?,
            stabilized: r.parse("stabilized")?,
            minimizer_variant: parse_variant(r.get("minimizer_variant")?)?,
            minimizer: read_poly(r, "minimizer")?,
            minimizer_objective: r.parse("minimizer_objective")?,
            paper_minimizer_valid: r.parse("paper_minimizer_valid")?,
            log_minimizer_valid: r.parse("log_minimizer_valid")?,
            verdict: Verdict::parse(verdict).ok_or_else(|| parse_err(format!("unknown verdict '{verdict}'")))?,
        })
    }
}

fn write_scan(r: &mut Record, key: &str, s: &AlphaScan) {
    r.set_f64(&format!("{key}.min_eps"), s.min_eps);
    r.set_alpha(&format!("{key}.argmin"), &s.argmin);
    r.set(&format!("{key}.degenerate"), s.degenerate.to_string());
    let mut t = Table::new(&format!("eps_{key}"), &["index", "a_re", "b_re", "b_im", "n", "eps"]);
    for (i, (al, row)) in s.alpha_grid.iter().zip(&s.eps_table).enumerate() {
        for (n, eps) in row {
            t.push(vec![
                i.to_string(),
                fmt_f64(al.a().re),
                fmt_f64(al.b().re),
                fmt_f64(al.b().im),
                n.to_string(),
                fmt_f64(*eps),
            ]);
        }
    }
    r.add_table(t);
}

fn read_scan(r: &Record, key: &str) -> Result<AlphaScan> {
    let t = r.table(&format!("eps_{key}"))?;
    let idx: Vec<usize> = t.parse_column("index")?;
    let a_re: Vec<f64> = t.parse_column("a_re")?;
    let b_re: Vec<f64> = t.parse_column("b_re")?;
    let b_im: Vec<f64> = t.parse_column("b_im")?;
    let ns: Vec<usize> = t.parse_column("n")?;
    let eps: Vec<f64> = t.parse_column("eps")?;
    let mut alpha_grid = Vec::new();
    let mut eps_table: Vec<Vec<(usize, f64)>> = Vec::new();
    for k in 0..idx.len() {
        if idx[k] == alpha_grid.len() {
            alpha_grid.push(Alpha::from_canonical(Complex64::new(a_re[k], 0.0), Complex64::new(b_re[k], b_im[k]))?);
            eps_table.push(Vec::new());
        } else if idx[k] + 1 != alpha_grid.len() {
            return Err(parse_err(format!("table eps_{key}: indices out of order at row {k}")));
        }
        eps_table.last_mut().unwrap().push((ns[k], eps[k]));
    }
    Ok(AlphaScan {
        alpha_grid,
        eps_table,
        min_eps: r.parse(&format!("{key}.min_eps"))?,
        argmin: r.get_alpha(&format!("{key}.argmin"))?,
        degenerate: r.parse(&format!("{key}.degenerate"))?,
    })
}

const FLAG_NAMES: [&str; 7] = [
    "some_alpha_degenerate",
    "conjugate_degenerate",
    "distance_lt_one_certified",
    "distance_ge_one_certified",
    "left_invertible_plausible",
    "invertible_family_plausible",
    "theorem_alarm",
];

fn flag_values(f: &WidomFlags) -> [bool; 7] {
    [
        f.some_alpha_degenerate,
        f.conjugate_degenerate,
        f.distance_lt_one_certified,
        f.distance_ge_one_certified,
        f.left_invertible_plausible,
        f.invertible_family_plausible,
        f.theorem_alarm,
    ]
}

impl Report for WidomReport {
    const KIND: &'static str = "widom";

    fn to_record(&self) -> Record {
        let mut r = Record::new(Self::KIND);
        r.set("symbol_id", self.symbol_id.clone());
        r.set_f64("band_tail", self.band_tail);
        r.set_f64("unimodular_defect", self.unimodular_defect);
        r.set("unimodular", self.unimodular.to_string());
        for (name, v) in FLAG_NAMES.iter().zip(flag_values(&self.flags)) {
            r.set(name, v.to_string());
        }
        if let Some(s) = &self.scan {
            r.set("scan.degree", s.degree.to_string());
            r.set("scan.alpha_grid", format!("{}x{}", s.theta_steps, s.phase_steps));
            write_scan(&mut r, "direct", &s.direct);
            write_scan(&mut r, "adjoint", &s.adjoint);
        }
        if let Some(b) = &self.bracket {
            r.set_f64("primal_upper", b.primal.value);
            r.set_f64("primal_fine", b.primal.fine_value);
            r.set_f64("primal_lower", b.primal.lower);
            r.set("primal_degree", b.primal_degree.to_string());
            r.set("primal_grid", b.primal.grid.to_string());
            r.set("primal_iterations", b.primal.iterations.to_string());
            r.set_f64("dual_lower", b.dual_lower);
            r.set("dual_witness", b.dual_witness.clone());
            r.add_table(poly_table("primal_poly", &b.primal.p));
            let mut t = Table::new("duals", &["witness", "value"]);
            for (label, v) in &b.duals {
                t.push(vec![label.clone(), fmt_f64(*v)]);
            }
            r.add_table(t);
        }
        r
    }

    fn from_record_fields(r: &Record) -> Result<Self> {
        let mut f = [false; 7];
        for (slot, name) in f.iter_mut().zip(FLAG_NAMES) {
            *slot = r.parse(name)?;
        }
        let flags = WidomFlags {
            some_alpha_degenerate: f[0],
            conjugate_degenerate: f[1],
            distance_lt_one_certified: f[2],
            distance_ge_one_certified: f[3],
            left_invertible_plausible: f[4],
            invertible_family_plausible: f[5],
            theorem_alarm: f[6],
        };
        let scan = if r.has("scan.degree") {
            let steps = r.get("scan.alpha_grid")?;
            let (th, ph) = parse_grid_steps(steps)?;
            Some(ScanSection {
                degree: r.parse("scan.degree")?,
                theta_steps: th,
                phase_steps: ph,
                direct: read_scan(r, "direct")?,
                adjoint: read_scan(r, "adjoint")?,
            })
        } else {
            None
        };
        let bracket = if r.has("primal_upper") {
            let t = r.table("duals")?;
            let labels: Vec<String> = t.parse_column("witness")?;
            let values: Vec<f64> = t.parse_column("value")?;
            Some(Bracket {
                primal: PrimalBound {
                    value: r.parse("primal_upper")?,
                    fine_value: r.parse("primal_fine")?,
                    lower: r.parse("primal_lower")?,
                    p: read_poly(r, "primal_poly")?,
                    iterations: r.parse("primal_iterations")?,
                    grid: r.parse("primal_grid")?,
                },
                primal_degree: r.parse("primal_degree")?,
                duals: labels.into_iter().zip(values).collect(),
                dual_lower: r.parse("dual_lower")?,
                dual_witness: r.get("dual_witness")?.to_string(),
            })
        } else {
            None
        };
        Ok(WidomReport {
            symbol_id: r.get("symbol_id")?.to_string(),
            band_tail: r.parse("band_tail")?,
            unimodular_defect: r.parse("unimodular_defect")?,
            unimodular: r.parse("unimodular")?,
            scan,
            bracket,
            flags,
        })
    }
}

/// Parses `AxB`.
pub fn parse_grid_steps(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidInput(format!("expected grid steps 'AxB', got '{s}'"));
    let (a, b) = s.split_once('x').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl Report for RieszFactor {
    const KIND: &'static str = "factor";

    fn to_record(&self) -> Record {
        let mut r = Record::new(Self::KIND);
        r.set_alpha("alpha", &self.alpha);
        r.set_f64("residual_factorization", self.residuals.factorization);
        r.set_f64("residual_norm_split", self.residuals.norm_split);
        r.set_f64("residual_ortho", self.residuals.ortho);
        r.set_f64("residual_membership", self.residuals.membership);
        r.set_f64("residual_max", self.residuals.max());
        r.add_table(poly_table("f", &self.f));
        r.add_table(poly_table("g", &self.g));
        let mut t = Table::new("inner_zeros", &["re", "im"]);
        for z in &self.inner_zeros {
            t.push(vec![fmt_f64(z.re), fmt_f64(z.im)]);
        }
        r.add_table(t);
        r
    }

    fn from_record_fields(r: &Record) -> Result<Self> {
        let t = r.table("inner_zeros")?;
        let re: Vec<f64> = t.parse_column("re")?;
        let im: Vec<f64> = t.parse_column("im")?;
        Ok(RieszFactor {
            alpha: r.get_alpha("alpha")?,
            f: read_poly(r, "f")?,
            g: read_poly(r, "g")?,
            inner_zeros: re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect(),
            residuals: FactorResiduals {
                factorization: r.parse("residual_factorization")?,
                norm_split: r.parse("residual_norm_split")?,
                ortho: r.parse("residual_ortho")?,
                membership: r.parse("residual_membership")?,
            },
        })
    }
}

/// An assembled section together with its singular values.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzReport {
    pub rep: ToeplitzRep,
    pub singular_values: Vec<f64>,
}

impl ToeplitzReport {
    pub fn new(rep: ToeplitzRep) -> Self {
        let singular_values = rep.singular_values();
        Self { rep, singular_values }
    }
}

impl Report for ToeplitzReport {
    const KIND: &'static str = "toeplitz";

    fn to_record(&self) -> Record {
        let rep = &self.rep;
        let mut r = Record::new(Self::KIND);
        r.set_alpha("alpha", &rep.alpha);
        r.set("domain_degree", rep.domain_degree.to_string());
        r.set("range_degree", rep.range_degree.to_string());
        r.set("exact", rep.exact.to_string());
        r.set_f64("sigma_max", self.singular_values.first().copied().unwrap_or(0.0));
        r.set_f64("sigma_min", self.singular_values.last().copied().unwrap_or(0.0));
        r.add_table(poly_table("symbol", &rep.symbol));
        let mut m = Table::new("matrix", &["row", "col", "re", "im"]);
        for c in 0..rep.matrix.ncols() {
            for row in 0..rep.matrix.nrows() {
                let x = rep.matrix[(row, c)];
                m.push(vec![row.to_string(), c.to_string(), fmt_f64(x.re), fmt_f64(x.im)]);
            }
        }
        r.add_table(m);
        let mut s = Table::new("singular_values", &["k", "sigma"]);
        for (k, v) in self.singular_values.iter().enumerate() {
            s.push(vec![k.to_string(), fmt_f64(*v)]);
        }
        r.add_table(s);
        r
    }

    fn from_record_fields(r: &Record) -> Result<Self> {
        let domain_degree: usize = r.parse("domain_degree")?;
        let range_degree: usize = r.parse("range_degree")?;
        let t = r.table("matrix")?;
        let rows: Vec<usize> = t.parse_column("row")?;
        let cols: Vec<usize> = t.parse_column("col")?;
        let re: Vec<f64> = t.parse_column("re")?;
        let im: Vec<f64> = t.parse_column("im")?;
        let mut matrix = DMatrix::zeros(range_degree, domain_degree);
        for k in 0..rows.len() {
            if rows[k] >= range_degree || cols[k] >= domain_degree {
                return Err(parse_err(format!("matrix entry ({}, {}) out of bounds", rows[k], cols[k])));
            }
            matrix[(rows[k], cols[k])] = Complex64::new(re[k], im[k]);
        }
        Ok(ToeplitzReport {
            rep: ToeplitzRep {
                alpha: r.get_alpha("alpha")?,
                symbol: read_poly(r, "symbol")?,
                domain_degree,
                range_degree,
                matrix,
                exact: r.parse("exact")?,
            },
            singular_values: r.table("singular_values")?.parse_column("sigma")?,
        })
    }
}
