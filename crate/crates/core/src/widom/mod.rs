//! Invertibility of `T^alpha_phi` across the parameter sphere and the
//! distance from a unimodular symbol to the Neil algebra `A`.
//!
//! For unimodular `phi`, `dist(phi, A) < 1` exactly when every
//! `T^alpha_phi` is left invertible. At finite truncation only one side of
//! that can be checked: `eps_N(alpha)`, the smallest singular value of the
//! range-exact section, decreases to the true lower bound as `N` grows, so
//! a small value refutes left invertibility while a large one merely
//! supports it. The distance itself is bracketed from above by a discrete
//! minimax fit and from below by pairing with elements of `M` (Fourier
//! support `{-1} u {1, 2, ...}`), which annihilate `A`.

mod bounds;
mod factor;

pub use bounds::{dual_lower_bound, primal_upper_bound, primal_upper_bound_grid, PrimalBound};
pub use factor::{neil_invertibility, riesz_factor, FactorResiduals, Invertibility, RieszFactor};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hardy_alpha::{alpha_grid, Alpha};
use crate::linalg::singular_values;
use crate::toeplitz_alpha::assemble;
use crate::trig_core::{analyze, synthesize, GridFn, TrigPoly, Window};

pub const UNIMODULAR_TOL: f64 = 1e-6;
pub const DEGENERATE_EPS: f64 = 1e-8;
pub const DEFAULT_PLAUSIBLE_EPS: f64 = 1e-3;
pub const MAX_SCAN_DEGREE: usize = 256;

/// Names accepted by [`Symbol::builtin`].
pub const BUILTIN_SYMBOLS: &[&str] = &["one", "z", "z2", "zbar", "expsin"];

/// Element of `M`: Fourier support inside `{-1} u {1, 2, ...}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MElement {
    h: TrigPoly,
}

impl MElement {
    pub fn new(h: TrigPoly) -> Result<Self> {
        for (j, _) in h.terms() {
            if !Window::MWindow.contains(j) {
                return Err(Error::NotInMWindow(j));
            }
        }
        Ok(Self { h: h.normalize() })
    }

    pub fn from_terms(terms: &[(i64, Complex64)]) -> Result<Self> {
        Self::new(TrigPoly::from_terms(terms))
    }

    pub fn poly(&self) -> &TrigPoly {
        &self.h
    }
}

/// A symbol as a band-limited polynomial plus the sup-norm error made by
/// band-truncating the original data.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol {
    pub id: String,
    pub poly: TrigPoly,
    pub tail: f64,
}

impl Symbol {
    pub fn from_poly(id: impl Into<String>, poly: TrigPoly) -> Self {
        Self { id: id.into(), poly, tail: 0.0 }
    }

    /// Band-truncates grid samples at `M/4` and records the sup-norm tail.
    pub fn from_grid(id: impl Into<String>, g: &GridFn) -> Result<Self> {
        let band = (g.len() as i64 / 4).max(1);
        let poly = analyze(g, -band, band)?;
        let back = synthesize(&poly, g.len())?;
        let tail = g
            .samples()
            .iter()
            .zip(back.samples())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        Ok(Self { id: id.into(), poly, tail })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let id = format!("builtin:{name}");
        let one = Complex64::new(1.0, 0.0);
        match name {
            "one" => Ok(Self::from_poly(id, TrigPoly::constant(one))),
            "z" => Ok(Self::from_poly(id, TrigPoly::monomial(1, one))),
            "z2" => Ok(Self::from_poly(id, TrigPoly::monomial(2, one))),
            "zbar" => Ok(Self::from_poly(id, TrigPoly::monomial(-1, one))),
            "expsin" => Ok(Self { id, ..expsin_symbol() }),
            _ => Err(Error::InvalidInput(format!(
                "unknown builtin symbol '{name}' (expected one of {BUILTIN_SYMBOLS:?})"
            ))),
        }
    }

    pub fn conjugate(&self) -> Self {
        Self { id: format!("conj({})", self.id), poly: self.poly.conjugate(), tail: self.tail }
    }

    /// `max_k ||phi(t_k)| - 1|` on a grid fine enough for the band.
    pub fn unimodular_defect(&self) -> f64 {
        let m = (4 * (self.poly.max_abs_freq() as usize + 1)).next_power_of_two().max(1024);
        synthesize(&self.poly, m)
            .map(|g| g.samples().iter().map(|x| (x.norm() - 1.0).abs()).fold(0.0, f64::max))
            .unwrap_or(f64::INFINITY)
    }
}

/// `exp(0.5 i sin t)` truncated to `|j| <= 24`.
pub fn expsin_symbol() -> Symbol {
    let m = 256;
    let g = GridFn::from_fn(m, |t| Complex64::new(0.0, 0.5 * t.sin()).exp()).expect("power of two");
    let poly = analyze(&g, -24, 24).expect("band fits");
    let back = synthesize(&poly, m).expect("band fits");
    let tail = g.samples().iter().zip(back.samples()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    Symbol { id: "expsin".into(), poly, tail }
}

/// Smallest singular value of the range-exact section of `T^alpha_phi`.
pub fn epsilon_alpha(alpha: &Alpha, phi: &TrigPoly, n: usize) -> Result<f64> {
    let rep = assemble(alpha, phi, n)?;
    Ok(singular_values(&rep.matrix).last().copied().unwrap_or(0.0))
}

/// Truncation degrees `N/4, N/2, N` (those `>= 2`) used for the per-alpha
/// convergence table.
pub fn eps_sweep(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = [n / 4, n / 2, n].into_iter().filter(|&k| k >= 2).collect();
    out.dedup();
    out
}

/// `eps_N(alpha)` for every `N` in `sweep`, from one assembly at the largest
/// `N` (a smaller section is a leading column block of a larger one).
pub fn epsilon_table(alpha: &Alpha, phi: &TrigPoly, sweep: &[usize]) -> Result<Vec<(usize, f64)>> {
    let top = *sweep.iter().max().ok_or_else(|| Error::InvalidInput("empty degree sweep".into()))?;
    let rep = assemble(alpha, phi, top)?;
    Ok(sweep
        .iter()
        .map(|&n| {
            let block = rep.matrix.columns(0, n).into_owned();
            (n, singular_values(&block).last().copied().unwrap_or(0.0))
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanOptions {
    pub theta_steps: usize,
    pub phase_steps: usize,
    pub degree: usize,
    /// Require a unimodular symbol (the invertibility criterion's hypothesis).
    pub verdict_mode: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { theta_steps: 33, phase_steps: 64, degree: 64, verdict_mode: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlphaScan {
    pub alpha_grid: Vec<Alpha>,
    /// `eps_table[i]` belongs to `alpha_grid[i]`; each list is nonincreasing in `N`.
    pub eps_table: Vec<Vec<(usize, f64)>>,
    pub min_eps: f64,
    pub argmin: Alpha,
    pub degenerate: bool,
}

pub fn scan_alpha(phi: &Symbol, opts: &ScanOptions) -> Result<AlphaScan> {
    if opts.theta_steps < 4 || opts.phase_steps < 4 {
        return Err(Error::InvalidInput(format!(
            "alpha grid must be at least 4x4, got {}x{}",
            opts.theta_steps, opts.phase_steps
        )));
    }
    if opts.degree < 2 || opts.degree > MAX_SCAN_DEGREE {
        return Err(Error::InvalidInput(format!(
            "scan degree must lie in 2..={MAX_SCAN_DEGREE}, got {}",
            opts.degree
        )));
    }
    if opts.verdict_mode {
        let defect = phi.unimodular_defect();
        if defect > UNIMODULAR_TOL + phi.tail {
            return Err(Error::SymbolNotUnimodular(defect));
        }
    }
    let grid = alpha_grid(opts.theta_steps, opts.phase_steps);
    let sweep = eps_sweep(opts.degree);
    let eps_table = grid
        .par_iter()
        .map(|al| epsilon_table(al, &phi.poly, &sweep))
        .collect::<Result<Vec<_>>>()?;
    let (idx, min_eps) = eps_table
        .iter()
        .map(|row| row.last().unwrap().1)
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    Ok(AlphaScan {
        argmin: grid[idx],
        alpha_grid: grid,
        eps_table,
        min_eps,
        degenerate: min_eps <= DEGENERATE_EPS + phi.tail,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanSection {
    pub degree: usize,
    pub theta_steps: usize,
    pub phase_steps: usize,
    /// Scan of `phi`.
    pub direct: AlphaScan,
    /// Scan of `conj(phi)`, i.e. of the adjoints.
    pub adjoint: AlphaScan,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Bracket {
    pub primal: PrimalBound,
    pub primal_degree: usize,
    /// `(label, value)` for every dual witness tried.
    pub duals: Vec<(String, f64)>,
    pub dual_lower: f64,
    pub dual_witness: String,
}

impl Bracket {
    pub fn primal_upper(&self) -> f64 {
        self.primal.value
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WidomFlags {
    pub some_alpha_degenerate: bool,
    pub conjugate_degenerate: bool,
    pub distance_lt_one_certified: bool,
    pub distance_ge_one_certified: bool,
    pub left_invertible_plausible: bool,
    pub invertible_family_plausible: bool,
    /// Set when the computed facts contradict the invertibility criterion.
    pub theorem_alarm: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WidomReport {
    pub symbol_id: String,
    pub band_tail: f64,
    pub unimodular_defect: f64,
    pub unimodular: bool,
    pub scan: Option<ScanSection>,
    pub bracket: Option<Bracket>,
    pub flags: WidomFlags,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub scan: ScanOptions,
    pub primal_degree: usize,
    pub primal_grid: usize,
    pub witnesses: Vec<(String, MElement)>,
    pub plausible_eps: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            scan: ScanOptions::default(),
            primal_degree: 16,
            primal_grid: 128,
            witnesses: Vec::new(),
            plausible_eps: DEFAULT_PLAUSIBLE_EPS,
        }
    }
}

/// The fixed witness library `e^{-it}`, `e^{it}`, `e^{2it}`.
pub fn default_witnesses() -> Vec<(String, MElement)> {
    let one = Complex64::new(1.0, 0.0);
    [(-1, "e^{-it}"), (1, "e^{it}"), (2, "e^{2it}")]
        .into_iter()
        .map(|(j, label)| (label.to_string(), MElement::new(TrigPoly::monomial(j, one)).unwrap()))
        .collect()
}

pub fn scan_section(phi: &Symbol, opts: &ScanOptions) -> Result<ScanSection> {
    let direct = scan_alpha(phi, opts)?;
    let adjoint = scan_alpha(&phi.conjugate(), opts)?;
    Ok(ScanSection {
        degree: opts.degree,
        theta_steps: opts.theta_steps,
        phase_steps: opts.phase_steps,
        direct,
        adjoint,
    })
}

pub fn distance_bracket(phi: &Symbol, opts: &ClassifyOptions) -> Result<Bracket> {
    let m = opts.primal_grid.max((2 * (phi.poly.max_abs_freq() as usize + 1)).next_power_of_two());
    let primal = primal_upper_bound(&phi.poly, opts.primal_degree, m)?;
    let mut duals = Vec::new();
    for (label, h) in default_witnesses().iter().chain(opts.witnesses.iter()) {
        duals.push((label.clone(), dual_lower_bound(&phi.poly, h)?));
    }
    let (dual_witness, dual_lower) = duals
        .iter()
        .cloned()
        .fold((String::new(), f64::NEG_INFINITY), |best, d| if d.1 > best.1 { d } else { best });
    Ok(Bracket { primal, primal_degree: opts.primal_degree, duals, dual_lower, dual_witness })
}

/// Verdict flags from whatever portions were computed.
pub fn verdict_flags(
    unimodular: bool,
    tail: f64,
    scan: Option<&ScanSection>,
    bracket: Option<&Bracket>,
    plausible_eps: f64,
) -> WidomFlags {
    let mut f = WidomFlags::default();
    if let Some(s) = scan {
        f.some_alpha_degenerate = s.direct.degenerate;
        f.conjugate_degenerate = s.adjoint.degenerate;
    }
    if !unimodular {
        return f;
    }
    if let Some(s) = scan {
        f.left_invertible_plausible = s.direct.min_eps > plausible_eps + tail;
        f.invertible_family_plausible = f.left_invertible_plausible && s.adjoint.min_eps > plausible_eps + tail;
    }
    if let Some(b) = bracket {
        let upper = b.primal.value.max(b.primal.fine_value) + tail;
        f.distance_lt_one_certified = upper < 1.0 - 1e-4;
        f.distance_ge_one_certified = b.dual_lower - tail >= 1.0 - 1e-8;
    }
    f.theorem_alarm = (f.distance_lt_one_certified && f.some_alpha_degenerate)
        || (f.distance_lt_one_certified && f.distance_ge_one_certified);
    f
}

fn report(phi: &Symbol, scan: Option<ScanSection>, bracket: Option<Bracket>, plausible_eps: f64) -> WidomReport {
    let unimodular_defect = phi.unimodular_defect();
    let unimodular = unimodular_defect <= UNIMODULAR_TOL + phi.tail;
    let flags = verdict_flags(unimodular, phi.tail, scan.as_ref(), bracket.as_ref(), plausible_eps);
    WidomReport {
        symbol_id: phi.id.clone(),
        band_tail: phi.tail,
        unimodular_defect,
        unimodular,
        scan,
        bracket,
        flags,
    }
}

/// Scan portion only (both `phi` and `conj(phi)`).
pub fn scan_report(phi: &Symbol, opts: &ClassifyOptions) -> Result<WidomReport> {
    let scan = scan_section(phi, &opts.scan)?;
    Ok(report(phi, Some(scan), None, opts.plausible_eps))
}

/// Distance-bracket portion only.
pub fn bracket_report(phi: &Symbol, opts: &ClassifyOptions) -> Result<WidomReport> {
    let bracket = distance_bracket(phi, opts)?;
    Ok(report(phi, None, Some(bracket), opts.plausible_eps))
}

/// Full analysis: both scans, the primal/dual bracket and the verdict flags.
pub fn classify_symbol(phi: &Symbol, opts: &ClassifyOptions) -> Result<WidomReport> {
    let scan = scan_section(phi, &opts.scan)?;
    let bracket = distance_bracket(phi, opts)?;
    Ok(report(phi, Some(scan), Some(bracket), opts.plausible_eps))
}
