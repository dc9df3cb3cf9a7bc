//! Dense linear algebra and polynomial roots on top of nalgebra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Singular values in decreasing order.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn largest_singular_value(m: &DMatrix<Complex64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Smallest of the `min(rows, cols)` singular values.
pub fn smallest_singular_value(m: &DMatrix<Complex64>) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Solves `G x = b` for Hermitian positive definite `G`.
pub fn solve_hpd(g: DMatrix<Complex64>, b: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    g.cholesky().map(|ch| ch.solve(b))
}

/// Least-squares solve of `A x ~ b` through the SVD.
pub fn solve_least_squares(a: &DMatrix<Complex64>, b: &DVector<Complex64>) -> Option<DVector<Complex64>> {
    a.clone().svd(true, true).solve(b, 1e-14).ok()
}

/// All roots of `sum_k coeffs[k] z^k`, with multiplicity.
///
/// Trailing zero coefficients lower the degree, leading zero coefficients
/// contribute exact roots at the origin. The remaining roots are the
/// eigenvalues of the companion matrix, refined by a few Newton steps.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let Some(top) = coeffs.iter().rposition(|c| c.norm_sqr() != 0.0) else {
        return Vec::new();
    };
    let low = coeffs.iter().position(|c| c.norm_sqr() != 0.0).unwrap();
    let mut roots = vec![Complex64::new(0.0, 0.0); low];
    let core = &coeffs[low..=top];
    let deg = core.len() - 1;
    if deg == 0 {
        return roots;
    }
    let lead = core[deg];
    let companion = DMatrix::from_fn(deg, deg, |r, c| {
        if r == 0 {
            -core[deg - 1 - c] / lead
        } else if r == c + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = companion
        .schur()
        .eigenvalues()
        .expect("complex Schur form is triangular");
    for mut z in eig.iter().copied() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(core, z);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 1e-3 * (1.0 + z.norm()) {
                break;
            }
            z -= step;
        }
        roots.push(z);
    }
    roots
}

fn eval_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}
