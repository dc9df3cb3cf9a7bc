//! The spaces `H^2_alpha = {f in H^2 : f(0) b = f'(0) a}`.
//!
//! For `alpha = (a, b)` on the unit sphere of `C^2` the functions
//! `{a + bz, z^2, z^3, ...}` form an orthonormal basis, so the projection
//! onto `H^2_alpha` is `P_alpha = F F^* + Q` with `F = a + bz` and `Q` the
//! projection onto `z^2 H^2`. Parameters are kept in a canonical form
//! (`a` real and nonnegative, `b = 1` when `a = 0`); proportional pairs
//! describe the same space and canonicalize to the same value.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::trig_core::{riesz_project, TrigPoly, Window};

/// Default truncation degree for kernel pairings.
pub const DEFAULT_KERNEL_DEGREE: usize = 200;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Alpha {
    a: Complex64,
    b: Complex64,
}

impl Alpha {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        canonicalize_alpha(a, b)
    }

    /// Rebuilds an already canonical parameter without renormalizing.
    pub(crate) fn from_canonical(a: Complex64, b: Complex64) -> Result<Self> {
        if ((a.norm_sqr() + b.norm_sqr()) - 1.0).abs() > 1e-12 || a.im != 0.0 || a.re < 0.0 {
            return Err(Error::DegenerateParameter);
        }
        Ok(Self { a, b })
    }

    /// `(1, 0)`: the space `C + z^2 H^2`.
    pub fn origin() -> Self {
        Self { a: Complex64::new(1.0, 0.0), b: ZERO }
    }

    /// `(0, 1)`: the space `z H^2`.
    pub fn pole() -> Self {
        Self { a: ZERO, b: Complex64::new(1.0, 0.0) }
    }

    /// `a = cos(theta)`, `b = sin(theta) e^{i phase}`.
    pub fn from_angles(theta: f64, phase: f64) -> Self {
        canonicalize_alpha(
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), phase),
        )
        .expect("unit vector")
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    /// Euclidean distance in `C^2` between canonical representatives.
    pub fn distance(&self, other: &Alpha) -> f64 {
        ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr()).sqrt()
    }

    /// The unit vector `a + bz`.
    pub fn lead_vector(&self) -> TrigPoly {
        TrigPoly::analytic(vec![self.a, self.b])
    }

    /// The kernel `k^alpha_w` vanishes identically only for `alpha = (0,1), w = 0`.
    pub fn kernel_vanishes_at(&self, w: Complex64) -> bool {
        self.a.norm() < 1e-14 && w.norm() == 0.0
    }
}

/// Unit-normalizes `(a, b)` and removes the common phase.
pub fn canonicalize_alpha(a: Complex64, b: Complex64) -> Result<Alpha> {
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::DegenerateParameter);
    }
    let (a, b) = (a / r, b / r);
    // below this |a| the phase of a is noise
    if a.norm() <= 1e-15 {
        return Ok(Alpha::pole());
    }
    let phase = a.conj() / a.norm();
    Ok(Alpha { a: Complex64::new((a * phase).norm(), 0.0), b: b * phase })
}

/// Canonical parameter grid `a = cos(theta_i)`, `b = sin(theta_i) e^{i phase_j}`
/// with `theta` spanning `[0, pi/2]` inclusive and `phase` in `[0, 2 pi)`.
pub fn alpha_grid(theta_steps: usize, phase_steps: usize) -> Vec<Alpha> {
    let mut out = Vec::with_capacity(theta_steps * phase_steps);
    for i in 0..theta_steps {
        let theta = if theta_steps == 1 { 0.0 } else { FRAC_PI_2 * i as f64 / (theta_steps - 1) as f64 };
        for j in 0..phase_steps {
            out.push(Alpha::from_angles(theta, 2.0 * PI * j as f64 / phase_steps as f64));
        }
    }
    out
}

/// `|f(0) b - f'(0) a|`; zero exactly when the polynomial `f` lies in `H^2_alpha`.
pub fn membership_defect(f: &TrigPoly, alpha: &Alpha) -> Result<f64> {
    let lo = f.min_support();
    if lo < 0 && !f.is_zero() {
        return Err(Error::NotAnalytic(lo));
    }
    Ok((f.coeff(0) * alpha.b - f.coeff(1) * alpha.a).norm())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelEval {
    pub value: Complex64,
    pub z: Complex64,
    pub w: Complex64,
}

/// `k^alpha(z, w) = (a + bz) conj(a + bw) + z^2 conj(w)^2 / (1 - z conj(w))`.
pub fn kernel_eval(alpha: &Alpha, z: Complex64, w: Complex64) -> Result<KernelEval> {
    let zw = z * w.conj();
    if zw.norm() >= 1.0 || z.norm() >= 1.0 || w.norm() >= 1.0 {
        return Err(Error::KernelPole(zw.norm().max(z.norm()).max(w.norm())));
    }
    let lead = (alpha.a + alpha.b * z) * (alpha.a + alpha.b * w).conj();
    let value = lead + z * z * (w * w).conj() / (Complex64::new(1.0, 0.0) - zw);
    Ok(KernelEval { value, z, w })
}

/// Degree-`K` truncation of `z -> k^alpha_w(z)`.
pub fn kernel_poly(alpha: &Alpha, w: Complex64, k: usize) -> TrigPoly {
    let s = (alpha.a + alpha.b * w).conj();
    let wc = w.conj();
    let mut coeffs = vec![ZERO; k.max(1) + 1];
    coeffs[0] = alpha.a * s;
    coeffs[1] = alpha.b * s;
    let mut pw = wc;
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        if n >= 2 {
            *c = pw;
        }
        pw *= wc;
    }
    TrigPoly::analytic(coeffs)
}

/// `<F, a + bz>` in `L^2`.
pub fn lead_coordinate(alpha: &Alpha, f: &TrigPoly) -> Complex64 {
    f.coeff(0) * alpha.a.conj() + f.coeff(1) * alpha.b.conj()
}

/// `P_alpha F = <F, a+bz> (a+bz) + Q F`.
pub fn project_alpha(alpha: &Alpha, f: &TrigPoly) -> TrigPoly {
    let lead = alpha.lead_vector().scale(lead_coordinate(alpha, f));
    let tail = riesz_project(f, Window::Shifted);
    if tail.is_zero() {
        return lead;
    }
    (&lead + &tail).window(0, tail.hi().max(1))
}

/// Matrix of `P_alpha` on the coefficient window `lo..=hi` (rows and
/// columns indexed by frequency).
pub fn projection_matrix(alpha: &Alpha, lo: i64, hi: i64) -> DMatrix<Complex64> {
    let n = (hi - lo + 1) as usize;
    DMatrix::from_fn(n, n, |r, c| {
        let (jr, jc) = (lo + r as i64, lo + c as i64);
        let u = |j: i64| match j {
            0 => alpha.a,
            1 => alpha.b,
            _ => ZERO,
        };
        let mut v = u(jr) * u(jc).conj();
        if jr == jc && jr >= 2 {
            v += Complex64::new(1.0, 0.0);
        }
        v
    })
}

/// Operator norm of `P_alpha - P_beta` on analytic polynomials of degree
/// at most `testband`.
pub fn projection_gap(alpha: &Alpha, beta: &Alpha, testband: usize) -> f64 {
    let hi = testband.max(1) as i64;
    let d = projection_matrix(alpha, 0, hi) - projection_matrix(beta, 0, hi);
    linalg::largest_singular_value(&d)
}
