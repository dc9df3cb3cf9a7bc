//! Trigonometric polynomials and uniform samples on the circle.
//!
//! A [`TrigPoly`] is a finite two-sided Fourier series `sum_j c_j e^{ijt}`
//! stored as a contiguous coefficient window `lo..=hi`. On the circle
//! `z = e^{it}`, so analytic polynomials are the ones with `lo >= 0`.
//! A [`GridFn`] holds samples at the nodes `t_k = 2 pi k / M`; the grid
//! realizes every integral `int f dt/2pi` as the mean of the samples.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_GRID: usize = 1024;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Degree limit for the exact derivative recurrence in [`exp_analytic`].
const RECURRENCE_MAX_DEGREE: i64 = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    lo: i64,
    coeffs: Vec<Complex64>,
}

impl TrigPoly {
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        Self { lo, coeffs }
    }

    pub fn zero() -> Self {
        Self { lo: 0, coeffs: vec![Complex64::new(0.0, 0.0)] }
    }

    pub fn constant(c: Complex64) -> Self {
        Self { lo: 0, coeffs: vec![c] }
    }

    pub fn monomial(j: i64, c: Complex64) -> Self {
        Self { lo: j, coeffs: vec![c] }
    }

    /// Analytic polynomial `sum_k coeffs[k] z^k`.
    pub fn analytic(coeffs: Vec<Complex64>) -> Self {
        Self::new(0, coeffs)
    }

    pub fn from_real(lo: i64, coeffs: &[f64]) -> Self {
        Self::new(lo, coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Builds a polynomial from `(frequency, coefficient)` pairs; repeated
    /// frequencies accumulate.
    pub fn from_terms(terms: &[(i64, Complex64)]) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(j, c) in terms {
            coeffs[(j - lo) as usize] += c;
        }
        Self { lo, coeffs }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient at frequency `j`; zero outside the stored window.
    pub fn coeff(&self, j: i64) -> Complex64 {
        if j < self.lo || j > self.hi() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(j - self.lo) as usize]
        }
    }

    /// Nonzero `(frequency, coefficient)` pairs in increasing frequency.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() != 0.0)
            .map(move |(k, &c)| (self.lo + k as i64, c))
    }

    /// Largest `|j|` in the stored window.
    pub fn max_abs_freq(&self) -> i64 {
        self.lo.abs().max(self.hi().abs())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.norm_sqr() == 0.0)
    }

    /// Strips exactly-zero leading and trailing coefficients.
    pub fn normalize(&self) -> Self {
        let first = self.coeffs.iter().position(|c| c.norm_sqr() != 0.0);
        let Some(first) = first else {
            return Self::zero();
        };
        let last = self.coeffs.iter().rposition(|c| c.norm_sqr() != 0.0).unwrap();
        Self { lo: self.lo + first as i64, coeffs: self.coeffs[first..=last].to_vec() }
    }

    /// Lowest frequency carrying a nonzero coefficient (0 for the zero polynomial).
    pub fn min_support(&self) -> i64 {
        self.normalize().lo
    }

    /// Restriction to the window `lo..=hi`, padding with zeros as needed.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        assert!(hi >= lo, "empty window");
        Self { lo, coeffs: (lo..=hi).map(|j| self.coeff(j)).collect() }
    }

    pub fn conjugate(&self) -> Self {
        Self { lo: -self.hi(), coeffs: self.coeffs.iter().rev().map(|c| c.conj()).collect() }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { lo: self.lo, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { lo: self.lo + k, coeffs: self.coeffs.clone() }
    }

    pub fn mean(&self) -> Complex64 {
        self.coeff(0)
    }

    /// Coefficient-space (equivalently L^2) norm.
    pub fn l2(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest coefficient-wise difference over the union of supports.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        (lo..=hi).map(|j| (self.coeff(j) - other.coeff(j)).norm()).fold(0.0, f64::max)
    }

    pub fn eval_angle(&self, t: f64) -> Complex64 {
        self.eval(Complex64::from_polar(1.0, t))
    }

    /// Evaluates `sum_j c_j z^j` at a nonzero `z` (any `z` for analytic data).
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        if self.lo == 0 {
            acc
        } else {
            acc * z.powi(self.lo as i32)
        }
    }

    /// Coefficients of the analytic part as a dense vector `c_0..c_K`.
    pub fn analytic_coeffs(&self, degree: usize) -> Vec<Complex64> {
        (0..=degree as i64).map(|j| self.coeff(j)).collect()
    }

    pub fn multiply(&self, other: &Self) -> Self {
        multiply(self, other)
    }
}

impl Add for &TrigPoly {
    type Output = TrigPoly;
    fn add(self, rhs: &TrigPoly) -> TrigPoly {
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        TrigPoly { lo, coeffs: (lo..=hi).map(|j| self.coeff(j) + rhs.coeff(j)).collect() }
    }
}

impl Sub for &TrigPoly {
    type Output = TrigPoly;
    fn sub(self, rhs: &TrigPoly) -> TrigPoly {
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        TrigPoly { lo, coeffs: (lo..=hi).map(|j| self.coeff(j) - rhs.coeff(j)).collect() }
    }
}

impl Mul for &TrigPoly {
    type Output = TrigPoly;
    fn mul(self, rhs: &TrigPoly) -> TrigPoly {
        multiply(self, rhs)
    }
}

impl Neg for &TrigPoly {
    type Output = TrigPoly;
    fn neg(self) -> TrigPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Samples at `t_k = 2 pi k / M`, `M` a power of two.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFn {
    samples: Vec<Complex64>,
}

impl GridFn {
    pub fn new(samples: Vec<Complex64>) -> Result<Self> {
        let m = samples.len();
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::InvalidInput(format!(
                "grid size must be a power of two >= 2, got {m}"
            )));
        }
        Ok(Self { samples })
    }

    pub fn from_real(samples: &[f64]) -> Result<Self> {
        Self::new(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_fn(m: usize, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        Self::new((0..m).map(|k| f(node(k, m))).collect())
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self { samples: self.samples.iter().map(|&x| f(x)).collect() }
    }

    pub fn mean(&self) -> Complex64 {
        self.samples.iter().sum::<Complex64>() / self.samples.len() as f64
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    /// Largest usable frequency `M/2 - 1`.
    pub fn band(&self) -> i64 {
        self.samples.len() as i64 / 2 - 1
    }
}

pub fn node(k: usize, m: usize) -> f64 {
    2.0 * PI * k as f64 / m as f64
}

fn check_band(max_abs: i64, m: usize, what: &str) -> Result<()> {
    let band = m as i64 / 2 - 1;
    if max_abs > band {
        return Err(Error::AliasingWindow(format!(
            "{what}: frequency {max_abs} exceeds band {band} of an M={m} grid"
        )));
    }
    Ok(())
}

/// Fourier coefficients `(1/M) sum_k g(t_k) e^{-ij t_k}` for `j` in `lo..=hi`.
pub fn analyze(g: &GridFn, lo: i64, hi: i64) -> Result<TrigPoly> {
    let m = g.len();
    if hi < lo || (hi - lo + 1) as usize > m {
        return Err(Error::AliasingWindow(format!("window [{lo}, {hi}] wider than grid {m}")));
    }
    check_band(lo.abs().max(hi.abs()), m, "analyze")?;
    let mut buf = g.samples.clone();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    let coeffs = (lo..=hi).map(|j| buf[j.rem_euclid(m as i64) as usize] * scale).collect();
    Ok(TrigPoly::new(lo, coeffs))
}

/// Pointwise values of `p` at the `M` grid nodes.
pub fn synthesize(p: &TrigPoly, m: usize) -> Result<GridFn> {
    if m < 2 || !m.is_power_of_two() {
        return Err(Error::InvalidInput(format!("grid size must be a power of two, got {m}")));
    }
    check_band(p.max_abs_freq(), m, "synthesize")?;
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    for (k, c) in p.coeffs.iter().enumerate() {
        let j = p.lo + k as i64;
        buf[j.rem_euclid(m as i64) as usize] += c;
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    GridFn::new(buf)
}

/// Exact coefficient convolution.
pub fn multiply(p: &TrigPoly, q: &TrigPoly) -> TrigPoly {
    let mut out = vec![Complex64::new(0.0, 0.0); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        for (k, b) in q.coeffs.iter().enumerate() {
            out[i + k] += a * b;
        }
    }
    TrigPoly::new(p.lo + q.lo, out)
}

/// Named frequency windows for [`riesz_project`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Window {
    /// `j >= 0`
    Analytic,
    /// `j >= 1`
    StrictlyAnalytic,
    /// `j >= 2`
    Shifted,
    /// `j = -1` or `j >= 1`
    MWindow,
}

impl Window {
    pub fn contains(self, j: i64) -> bool {
        match self {
            Window::Analytic => j >= 0,
            Window::StrictlyAnalytic => j >= 1,
            Window::Shifted => j >= 2,
            Window::MWindow => j == -1 || j >= 1,
        }
    }
}

pub fn riesz_project(p: &TrigPoly, keep: Window) -> TrigPoly {
    let coeffs = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, &c)| if keep.contains(p.lo + k as i64) { c } else { Complex64::new(0.0, 0.0) })
        .collect();
    TrigPoly::new(p.lo, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Norms {
    pub mean: Complex64,
    pub l1: f64,
    pub l2: f64,
    pub linf: f64,
}

/// Mean and `l2` come from the coefficients; `l1` and `linf` from an `M` grid.
pub fn mean_and_norms(p: &TrigPoly, m: usize) -> Result<Norms> {
    let g = synthesize(p, m)?;
    let l1 = g.samples.iter().map(|x| x.norm()).sum::<f64>() / m as f64;
    Ok(Norms { mean: p.mean(), l1, l2: p.l2(), linf: g.max_abs() })
}

/// Truncated exponential series of an analytic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSeries {
    /// Coefficients `0..=K` of `exp(g)`.
    pub poly: TrigPoly,
    /// Max over a check grid of `|exp(g(t_k)) - poly(t_k)|`.
    pub tail: f64,
}

/// Coefficients `0..=K` of `exp(g)` for analytic `g`.
///
/// Only `g`'s coefficients up to `K` influence the result, so `g` is cut to
/// degree `K` first. Degrees up to 64 use the recurrence
/// `n e_n = sum_{k=1}^{n} k g_k e_{n-k}` (from `E' = g' E`); larger degrees
/// exponentiate on a `4(K+1)` grid and analyze.
pub fn exp_analytic(g: &TrigPoly, k: usize) -> Result<ExpSeries> {
    let g = g.normalize();
    if g.lo() < 0 {
        return Err(Error::NotAnalytic(g.lo()));
    }
    let kk = k as i64;
    let cut = g.window(0, kk.max(0));
    let deg = cut.normalize().hi();

    let poly = if deg <= RECURRENCE_MAX_DEGREE {
        let gc = cut.analytic_coeffs(k);
        let mut e = vec![Complex64::new(0.0, 0.0); k + 1];
        e[0] = gc[0].exp();
        for n in 1..=k {
            let top = n.min(deg as usize);
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=top {
                acc += gc[j] * (j as f64) * e[n - j];
            }
            e[n] = acc / n as f64;
        }
        TrigPoly::analytic(e)
    } else {
        let m = (4 * (k + 1)).next_power_of_two();
        let samples = synthesize(&cut, m)?.map(|x| x.exp());
        analyze(&samples, 0, kk)?
    };

    let check_m = (4 * (k + 1)).max(2 * (g.hi() as usize + 1)).next_power_of_two().max(64);
    let gs = synthesize(&g, check_m)?;
    let es = synthesize(&poly, check_m)?;
    let tail = gs
        .samples
        .iter()
        .zip(es.samples.iter())
        .map(|(a, b)| (a.exp() - b).norm())
        .fold(0.0, f64::max);
    Ok(ExpSeries { poly, tail })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly_strategy(band: i64) -> impl Strategy<Value = TrigPoly> {
        let n = (2 * band + 1) as usize;
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
            .prop_map(move |v| TrigPoly::new(-band, v.into_iter().map(|(a, b)| c(a, b)).collect()))
    }

    fn analytic_strategy(deg: usize) -> impl Strategy<Value = TrigPoly> {
        proptest::collection::vec((-0.5f64..0.5, -0.5f64..0.5), deg + 1)
            .prop_map(|v| TrigPoly::analytic(v.into_iter().map(|(a, b)| c(a, b)).collect()))
    }

    #[test]
    fn analyze_constant() {
        let g = GridFn::from_fn(8, |_| c(1.0, 0.0)).unwrap();
        let p = analyze(&g, -2, 2).unwrap();
        let want = TrigPoly::from_real(-2, &[0.0, 0.0, 1.0, 0.0, 0.0]);
        assert!(p.max_coeff_diff(&want) < 1e-15);
    }

    #[test]
    fn analyze_cosine_and_pure_mode() {
        let g = GridFn::from_fn(16, |t| c(2.0 * t.cos(), 0.0)).unwrap();
        let p = analyze(&g, -1, 1).unwrap();
        assert!(p.max_coeff_diff(&TrigPoly::from_real(-1, &[1.0, 0.0, 1.0])) < 1e-14);

        let g = GridFn::from_fn(16, |t| Complex64::from_polar(1.0, 2.0 * t)).unwrap();
        let p = analyze(&g, -2, 2).unwrap();
        assert!(p.max_coeff_diff(&TrigPoly::monomial(2, c(1.0, 0.0))) < 1e-14);
    }

    #[test]
    fn analyze_rejects_aliasing() {
        let g = GridFn::from_fn(8, |_| c(1.0, 0.0)).unwrap();
        assert!(matches!(analyze(&g, -4, 4), Err(Error::AliasingWindow(_))));
        assert!(matches!(analyze(&g, 0, 4), Err(Error::AliasingWindow(_))));
    }

    #[test]
    fn synthesize_fourth_roots() {
        let g = synthesize(&TrigPoly::monomial(1, c(1.0, 0.0)), 4).unwrap();
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (a, b) in g.samples().iter().zip(want) {
            assert!((a - b).norm() < 1e-15);
        }
        let z = synthesize(&TrigPoly::zero(), 8).unwrap();
        assert!(z.samples().iter().all(|x| x.norm() == 0.0));
        assert!(matches!(
            synthesize(&TrigPoly::monomial(2, c(1.0, 0.0)), 4),
            Err(Error::AliasingWindow(_))
        ));
    }

    #[test]
    fn multiply_examples() {
        let p = TrigPoly::from_real(0, &[1.0, 1.0]);
        let q = TrigPoly::from_real(0, &[1.0, -1.0]);
        assert!((&p * &q).max_coeff_diff(&TrigPoly::from_real(0, &[1.0, 0.0, -1.0])) < 1e-15);
        let zb = TrigPoly::from_real(-1, &[1.0, 1.0]);
        assert!((&zb * &p).max_coeff_diff(&TrigPoly::from_real(-1, &[1.0, 2.0, 1.0])) < 1e-15);
    }

    #[test]
    fn riesz_windows() {
        let p = TrigPoly::from_real(-1, &[1.0, 2.0, 1.0]);
        let a = riesz_project(&p, Window::Analytic);
        assert!(a.max_coeff_diff(&TrigPoly::from_real(0, &[2.0, 1.0])) < 1e-15);
        assert!(riesz_project(&p, Window::Shifted).is_zero());
        let q = TrigPoly::from_terms(&[(-1, c(1.0, 0.0)), (3, c(1.0, 0.0))]);
        assert_eq!(riesz_project(&q, Window::MWindow), q);
        assert!(riesz_project(&p, Window::StrictlyAnalytic)
            .max_coeff_diff(&TrigPoly::monomial(1, c(1.0, 0.0)))
            < 1e-15);
    }

    #[test]
    fn norms_examples() {
        let p = TrigPoly::from_real(-1, &[1.0, 2.0, 1.0]);
        let n = mean_and_norms(&p, 64).unwrap();
        assert_abs_diff_eq!(n.mean.re, 2.0);
        assert_abs_diff_eq!(n.l2, 6f64.sqrt(), epsilon = 1e-15);

        // |1 + e^{it}| = 2|cos(t/2)| integrates to 4/pi.
        let n = mean_and_norms(&TrigPoly::from_real(0, &[1.0, 1.0]), 4096).unwrap();
        assert_abs_diff_eq!(n.l1, 4.0 / PI, epsilon = 1e-5);

        let n = mean_and_norms(&TrigPoly::constant(c(1.0, 0.0)), 8).unwrap();
        assert_abs_diff_eq!(n.l1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(n.l2, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(n.linf, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn exp_of_z_is_factorial_series() {
        let e = exp_analytic(&TrigPoly::monomial(1, c(1.0, 0.0)), 6).unwrap();
        let mut fact = 1.0;
        for k in 0..=6 {
            if k > 0 {
                fact *= k as f64;
            }
            assert_abs_diff_eq!(e.poly.coeff(k).re, 1.0 / fact, epsilon = 1e-15);
        }
        let one = exp_analytic(&TrigPoly::zero(), 5).unwrap();
        assert!(one.poly.max_coeff_diff(&TrigPoly::constant(c(1.0, 0.0))) < 1e-15);
    }

    #[test]
    fn exp_of_log_square() {
        // 2 log(1 + z/2) = sum_{k>=1} 2 (-1)^{k+1} (1/2)^k / k z^k
        let coeffs: Vec<Complex64> = (0..=40)
            .map(|k| {
                if k == 0 {
                    c(0.0, 0.0)
                } else {
                    let s = if k % 2 == 1 { 1.0 } else { -1.0 };
                    c(2.0 * s * 0.5f64.powi(k) / k as f64, 0.0)
                }
            })
            .collect();
        let e = exp_analytic(&TrigPoly::analytic(coeffs), 40).unwrap();
        let want = TrigPoly::from_real(0, &[1.0, 1.0, 0.25]);
        assert!(e.poly.max_coeff_diff(&want) < 1e-10);
        assert!(e.tail < 1e-10);
    }

    #[test]
    fn exp_grid_route_matches_recurrence() {
        let g: Vec<Complex64> = (0..=100).map(|k| c(0.3f64.powi(k) / (k as f64 + 1.0), 0.1 * 0.2f64.powi(k))).collect();
        let big = TrigPoly::analytic(g.clone());
        let grid = exp_analytic(&big, 100).unwrap();
        let small = exp_analytic(&TrigPoly::analytic(g[..=60].to_vec()), 100).unwrap();
        assert!(grid.poly.max_coeff_diff(&small.poly) < 1e-12);
        assert!(grid.tail < 1e-12);
    }

    #[test]
    fn exp_rejects_nonanalytic() {
        let g = TrigPoly::monomial(-1, c(1.0, 0.0));
        assert!(matches!(exp_analytic(&g, 4), Err(Error::NotAnalytic(-1))));
    }

    proptest! {
        #[test]
        fn roundtrip_band5(p in poly_strategy(5)) {
            let back = analyze(&synthesize(&p, 32).unwrap(), -5, 5).unwrap();
            prop_assert!(back.max_coeff_diff(&p) <= 1e-12);
        }

        #[test]
        fn parseval(p in poly_strategy(6)) {
            let g = synthesize(&p, 64).unwrap();
            let grid_l2 = (g.samples().iter().map(|x| x.norm_sqr()).sum::<f64>() / 64.0).sqrt();
            prop_assert!((grid_l2 - p.l2()).abs() <= 1e-10);
        }

        #[test]
        fn product_matches_pointwise(p in poly_strategy(4), q in poly_strategy(3)) {
            let pq = synthesize(&multiply(&p, &q), 32).unwrap();
            let ps = synthesize(&p, 32).unwrap();
            let qs = synthesize(&q, 32).unwrap();
            for k in 0..32 {
                prop_assert!((pq.samples()[k] - ps.samples()[k] * qs.samples()[k]).norm() <= 1e-12);
            }
            prop_assert!(multiply(&p, &q).max_coeff_diff(&multiply(&q, &p)) <= 1e-14);
        }

        #[test]
        fn square_modulus_mean_nonnegative(p in poly_strategy(4)) {
            let m = multiply(&p, &p.conjugate()).mean();
            prop_assert!(m.re >= 0.0 && m.im.abs() <= 1e-14);
            let g = synthesize(&multiply(&p, &p.conjugate()), 32).unwrap();
            prop_assert!(g.samples().iter().all(|x| x.re >= -1e-12));
        }

        #[test]
        fn conjugate_mirrors(p in poly_strategy(4)) {
            let q = p.conjugate();
            for j in -4..=4 {
                prop_assert_eq!(q.coeff(-j), p.coeff(j).conj());
            }
        }

        #[test]
        fn riesz_idempotent_contractive(p in poly_strategy(5), w in 0usize..4) {
            let win = [Window::Analytic, Window::StrictlyAnalytic, Window::Shifted, Window::MWindow][w];
            let once = riesz_project(&p, win);
            prop_assert_eq!(riesz_project(&once, win), once.clone());
            prop_assert!(once.l2() <= p.l2() + 1e-15);
        }

        #[test]
        fn exp_is_multiplicative(g in analytic_strategy(4), h in analytic_strategy(3)) {
            let k = 30;
            let lhs = exp_analytic(&(&g + &h), k).unwrap().poly;
            let rhs = multiply(&exp_analytic(&g, k).unwrap().poly, &exp_analytic(&h, k).unwrap().poly).window(0, k as i64);
            prop_assert!(lhs.max_coeff_diff(&rhs) <= 1e-10);
        }
    }
}
