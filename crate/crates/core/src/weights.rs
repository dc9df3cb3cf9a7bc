//! Strictly positive continuous weights on the circle.
//!
//! [`analyze_weight`] takes `log rho` pointwise on the grid and extracts its
//! Fourier data: the mean `C_rho`, the analytic completion `gamma` (the
//! `j >= 1` part, so that `log rho = C_rho + gamma + conj(gamma)`), and the
//! first coefficient `c1`. The first Fourier moment of `rho` itself is kept
//! separately as `lambda_moment`; the two candidates for `lambda` are never
//! merged.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::trig_core::{analyze, exp_analytic, ExpSeries, GridFn, TrigPoly, DEFAULT_GRID};

pub const DEFAULT_FLOOR: f64 = 1e-12;
pub const MAX_BAND: i64 = 256;

/// Names accepted by [`Weight::builtin`].
pub const BUILTIN_WEIGHTS: &[&str] = &["one", "abs1pz2", "abs1pz2sq", "exp2cos"];

#[derive(Clone, Debug, PartialEq)]
pub struct Weight {
    id: String,
    rho: GridFn,
    floor: f64,
}

impl Weight {
    pub fn from_grid(id: impl Into<String>, rho: GridFn) -> Result<Self> {
        Self::with_floor(id, rho, DEFAULT_FLOOR)
    }

    pub fn with_floor(id: impl Into<String>, rho: GridFn, floor: f64) -> Result<Self> {
        if !(floor > 0.0) {
            return Err(Error::InvalidInput(format!("positivity floor must be > 0, got {floor}")));
        }
        for (index, x) in rho.samples().iter().enumerate() {
            if x.im != 0.0 || !x.re.is_finite() {
                return Err(Error::InvalidInput(format!("weight sample {index} is not a finite real")));
            }
            if x.re < floor {
                return Err(Error::WeightNotPositive { index, min: x.re });
            }
        }
        Ok(Self { id: id.into(), rho, floor })
    }

    pub fn from_samples(id: impl Into<String>, samples: &[f64]) -> Result<Self> {
        Self::from_grid(id, GridFn::from_real(samples)?)
    }

    pub fn from_fn(id: impl Into<String>, m: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::from_grid(id, GridFn::from_fn(m, |t| Complex64::new(f(t), 0.0))?)
    }

    /// Weight given by a finite Fourier series; the conjugate mirror of
    /// every one-sided term is filled in, and two-sided pairs must already
    /// be Hermitian.
    pub fn from_fourier(id: impl Into<String>, terms: &[(i64, Complex64)], m: usize) -> Result<Self> {
        let p = hermitian_series(terms)?;
        let samples = crate::trig_core::synthesize(&p, m)?;
        let real: Vec<f64> = samples.samples().iter().map(|x| x.re).collect();
        Self::from_samples(id, &real)
    }

    pub fn builtin(name: &str, m: usize) -> Result<Self> {
        let id = format!("builtin:{name}");
        match name {
            "one" => Self::from_fn(id, m, |_| 1.0),
            // |1 + z/2|^2 = 5/4 + cos t
            "abs1pz2" => Self::from_fn(id, m, |t| 1.25 + t.cos()),
            // |1 + z/2|^4
            "abs1pz2sq" => Self::from_fn(id, m, |t| (1.25 + t.cos()).powi(2)),
            "exp2cos" => Self::from_fn(id, m, |t| (2.0 * t.cos()).exp()),
            _ => Err(Error::InvalidInput(format!(
                "unknown builtin weight '{name}' (expected one of {BUILTIN_WEIGHTS:?})"
            ))),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn grid(&self) -> &GridFn {
        &self.rho
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn floor(&self) -> f64 {
        self.floor
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.rho.samples().iter().map(|x| x.re)
    }

    /// `c * rho`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let rho = self.rho.map(|x| x * c);
        Self::with_floor(format!("{}*{c}", self.id), rho, self.floor * c.min(1.0))
    }

    /// Fourier coefficients of `rho` on `lo..=hi`.
    pub fn moments(&self, lo: i64, hi: i64) -> Result<TrigPoly> {
        analyze(&self.rho, lo, hi)
    }
}

/// Completes one-sided terms by their conjugate mirror and checks the rest.
pub fn hermitian_series(terms: &[(i64, Complex64)]) -> Result<TrigPoly> {
    use std::collections::BTreeMap;
    let mut map: BTreeMap<i64, Complex64> = BTreeMap::new();
    for &(j, c) in terms {
        *map.entry(j).or_default() += c;
    }
    let mut full = map.clone();
    for (&j, &c) in &map {
        if j == 0 {
            if c.im.abs() > 1e-12 * (1.0 + c.re.abs()) {
                return Err(Error::InvalidInput(format!("constant term must be real, got {c}")));
            }
            full.insert(0, Complex64::new(c.re, 0.0));
            continue;
        }
        match map.get(&-j) {
            Some(&mirror) => {
                if (mirror - c.conj()).norm() > 1e-12 * (1.0 + c.norm()) {
                    return Err(Error::InvalidInput(format!(
                        "coefficients at {j} and {} are not conjugate", -j
                    )));
                }
            }
            None => {
                full.insert(-j, c.conj());
            }
        }
    }
    let terms: Vec<(i64, Complex64)> = full.into_iter().collect();
    Ok(TrigPoly::from_terms(&terms))
}

#[derive(Clone, Debug, PartialEq)]
pub struct WeightAnalysis {
    /// Mean of `log rho`.
    pub c_rho: f64,
    /// First Fourier moment of `rho`.
    pub lambda_moment: Complex64,
    /// Coefficient of `e^{it}` in `log rho`.
    pub c1_log: Complex64,
    /// `sum_{j=1}^{band} c_j z^j`.
    pub gamma: TrigPoly,
    pub c0: f64,
    pub band: i64,
    /// Energy of `log rho` at frequencies `band < |j| <= M/2 - 1`.
    pub tail_energy: f64,
    /// Largest `|c_{-j} - conj(c_j)|` over the retained band.
    pub reality_defect: f64,
}

pub fn default_band(m: usize) -> i64 {
    MAX_BAND.min(m as i64 / 4)
}

pub fn analyze_weight(w: &Weight, band: Option<i64>) -> Result<WeightAnalysis> {
    let m = w.len();
    let band = band.unwrap_or_else(|| default_band(m));
    if band < 1 {
        return Err(Error::InvalidInput(format!("log band must be >= 1, got {band}")));
    }
    let top = w.rho.band();
    if band > top {
        return Err(Error::AliasingWindow(format!("log band {band} exceeds grid band {top}")));
    }
    let log_rho = w.rho.map(|x| Complex64::new(x.re.ln(), 0.0));
    let full = analyze(&log_rho, -top, top)?;

    let c0 = full.coeff(0).re;
    let gamma = TrigPoly::new(
        0,
        (0..=band).map(|j| if j == 0 { Complex64::new(0.0, 0.0) } else { full.coeff(j) }).collect(),
    );
    let tail_energy = (band + 1..=top)
        .map(|j| full.coeff(j).norm_sqr() + full.coeff(-j).norm_sqr())
        .sum();
    let reality_defect = (1..=band)
        .map(|j| (full.coeff(-j) - full.coeff(j).conj()).norm())
        .fold(0.0, f64::max);
    let lambda_moment = w.moments(1, 1)?.coeff(1);

    Ok(WeightAnalysis {
        c_rho: c0,
        lambda_moment,
        c1_log: full.coeff(1),
        gamma,
        c0,
        band,
        tail_energy,
        reality_defect,
    })
}

impl WeightAnalysis {
    pub fn analyze(w: &Weight) -> Result<Self> {
        analyze_weight(w, None)
    }
}

/// Outer function `E = exp(c0/2 + gamma)` with `|E|^2 = rho`.
pub fn outer_factor(a: &WeightAnalysis, k: usize) -> Result<ExpSeries> {
    let g = &a.gamma + &TrigPoly::constant(Complex64::new(a.c0 / 2.0, 0.0));
    exp_analytic(&g, k)
}

/// Outer function of `rho e^{-C_rho}`, i.e. `exp(gamma)`.
pub fn normalized_outer_factor(a: &WeightAnalysis, k: usize) -> Result<ExpSeries> {
    exp_analytic(&a.gamma, k)
}

/// Default grid for built-in weights.
pub fn builtin(name: &str) -> Result<Weight> {
    Weight::builtin(name, DEFAULT_GRID)
}
