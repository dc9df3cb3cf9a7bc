//! Finite matrices of `T^alpha_phi = V_alpha^* M_phi V_alpha`.
//!
//! The domain is truncated to `span{a + bz, z^2, ..., z^N}` while the range
//! keeps every basis vector the image can reach, `{a + bz, z^2, ..., z^R}`
//! with `R = N + max(phi.hi, 0) + 1`. Since a trigonometric polynomial
//! symbol moves frequencies by a bounded amount, each column is the exact
//! image of its basis vector and
//! `||T x|| = ||rep.matrix * x||` for every `x` in the truncated domain.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hardy_alpha::{lead_coordinate, project_alpha, Alpha};
use crate::linalg::{largest_singular_value, singular_values};
use crate::trig_core::{multiply, TrigPoly};

pub const MAX_DOMAIN_DEGREE: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzRep {
    pub alpha: Alpha,
    pub symbol: TrigPoly,
    pub domain_degree: usize,
    pub range_degree: usize,
    pub matrix: DMatrix<Complex64>,
    pub exact: bool,
}

/// Basis vector with index `k`: `a + bz` for `k = 0`, `z^{k+1}` otherwise.
pub fn basis_vector(alpha: &Alpha, k: usize) -> TrigPoly {
    if k == 0 {
        alpha.lead_vector()
    } else {
        TrigPoly::monomial(k as i64 + 1, Complex64::new(1.0, 0.0))
    }
}

/// Coordinates of an element of `H^2_alpha` in the basis `{a+bz, z^2, ...}`,
/// truncated to `len` entries. Components outside `H^2_alpha` are dropped.
pub fn coordinates(alpha: &Alpha, f: &TrigPoly, len: usize) -> DVector<Complex64> {
    DVector::from_fn(len, |k, _| if k == 0 { lead_coordinate(alpha, f) } else { f.coeff(k as i64 + 1) })
}

/// Inverse of [`coordinates`].
pub fn from_coordinates(alpha: &Alpha, x: &DVector<Complex64>) -> TrigPoly {
    let mut out = alpha.lead_vector().scale(x[0]);
    for k in 1..x.len() {
        out = &out + &TrigPoly::monomial(k as i64 + 1, x[k]);
    }
    out
}

pub fn assemble(alpha: &Alpha, phi: &TrigPoly, n: usize) -> Result<ToeplitzRep> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("domain degree must be >= 2, got {n}")));
    }
    if n > MAX_DOMAIN_DEGREE {
        return Err(Error::InvalidInput(format!("domain degree {n} exceeds cap {MAX_DOMAIN_DEGREE}")));
    }
    let range_degree = n + phi.hi().max(0) as usize + 1;
    let mut matrix = DMatrix::zeros(range_degree, n);
    for col in 0..n {
        let image = project_alpha(alpha, &multiply(phi, &basis_vector(alpha, col)));
        matrix.set_column(col, &coordinates(alpha, &image, range_degree));
    }
    Ok(ToeplitzRep { alpha: *alpha, symbol: phi.clone(), domain_degree: n, range_degree, matrix, exact: true })
}

impl ToeplitzRep {
    pub fn apply(&self, f: &TrigPoly) -> TrigPoly {
        let x = coordinates(&self.alpha, f, self.domain_degree);
        from_coordinates(&self.alpha, &(&self.matrix * x))
    }

    pub fn singular_values(&self) -> Vec<f64> {
        singular_values(&self.matrix)
    }
}

/// The leading `N x N` block: rows restricted to the domain basis.
pub fn square_compression(rep: &ToeplitzRep) -> DMatrix<Complex64> {
    rep.matrix.rows(0, rep.domain_degree).into_owned()
}

/// Largest singular value of the rectangular section at each `N`.
pub fn operator_norm_estimate(alpha: &Alpha, phi: &TrigPoly, sweep: &[usize]) -> Result<Vec<(usize, f64)>> {
    sweep
        .iter()
        .map(|&n| assemble(alpha, phi, n).map(|rep| (n, largest_singular_value(&rep.matrix))))
        .collect()
}

/// Classical finite section `[phi_hat(i - j)]` of `T_phi` on `{1, ..., z^{n-1}}`.
pub fn classical_section(phi: &TrigPoly, n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| phi.coeff(i as i64 - j as i64))
}

/// Compresses `T^alpha_phi` to `{z^2, ..., z^N}`, conjugates by `z^{n+2} <-> z^n`
/// and returns the max-norm distance to the classical section on
/// `{1, ..., z^{N-2}}`.
pub fn classical_compare(phi: &TrigPoly, n: usize, alpha: &Alpha) -> Result<f64> {
    let rep = assemble(alpha, phi, n)?;
    let shifted = rep.matrix.view((1, 1), (n - 1, n - 1));
    let classical = classical_section(phi, n - 1);
    Ok((shifted - classical).camax())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hardy_alpha::{alpha_grid, kernel_poly, project_alpha};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z(k: i64) -> TrigPoly {
        TrigPoly::monomial(k, c(1.0, 0.0))
    }

    #[test]
    fn identity_symbol() {
        let al = Alpha::from_angles(0.7, 0.3);
        let rep = assemble(&al, &TrigPoly::constant(c(1.0, 0.0)), 6).unwrap();
        assert_eq!(rep.matrix.nrows(), 7);
        let sq = square_compression(&rep);
        assert!((sq - DMatrix::identity(6, 6)).camax() < 1e-15);
        assert!(rep.matrix.row(6).iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn shift_on_origin_alpha() {
        let rep = assemble(&Alpha::origin(), &z(1), 4).unwrap();
        assert!(rep.matrix.column(0).iter().all(|x| x.norm() == 0.0));
        // z^n -> z^{n+1}: column k (z^{k+1}) lands on row k+1 (z^{k+2})
        for k in 1..4 {
            assert!((rep.matrix[(k + 1, k)] - c(1.0, 0.0)).norm() < 1e-15);
        }
        assert!(rep.singular_values().last().unwrap().abs() < 1e-15);
    }

    #[test]
    fn inner_symbol_is_isometric() {
        for al in alpha_grid(4, 4) {
            let rep = assemble(&al, &z(2), 6).unwrap();
            let gram = rep.matrix.adjoint() * &rep.matrix;
            assert!((gram - DMatrix::identity(6, 6)).camax() < 1e-14);
        }
    }

    #[test]
    fn square_adjoint_identity() {
        let phi = TrigPoly::new(-2, vec![c(0.3, 0.1), c(-0.2, 0.5), c(1.0, 0.0), c(0.4, -0.7), c(0.1, 0.2)]);
        for al in alpha_grid(3, 3) {
            let a = square_compression(&assemble(&al, &phi, 8).unwrap());
            let b = square_compression(&assemble(&al, &phi.conjugate(), 8).unwrap());
            assert!((b - a.adjoint()).camax() < 1e-15);
        }
    }

    #[test]
    fn cosine_section_spectrum() {
        // basis {1, z^2..z^20}: the constant decouples, leaving the 19x19 path matrix
        let phi = TrigPoly::from_real(-1, &[1.0, 0.0, 1.0]);
        let sq = square_compression(&assemble(&Alpha::origin(), &phi, 20).unwrap());
        assert!((sq.adjoint() - &sq).camax() < 1e-15);
        assert!(sq.iter().all(|x| x.im == 0.0));
        let top = largest_singular_value(&sq);
        assert!((top - 2.0 * (PI / 20.0).cos()).abs() < 1e-12);
        let top100 = largest_singular_value(&square_compression(&assemble(&Alpha::origin(), &phi, 100).unwrap()));
        assert!(top100 > top && top100 < 2.0);
    }

    #[test]
    fn norm_estimates() {
        let al = Alpha::from_angles(0.5, 1.0);
        let est = operator_norm_estimate(&al, &TrigPoly::constant(c(0.0, -3.0)), &[2, 5, 9]).unwrap();
        assert!(est.iter().all(|(_, v)| (v - 3.0).abs() < 1e-14));

        let phi = TrigPoly::from_real(-1, &[1.0, 0.0, 1.0]);
        let est = operator_norm_estimate(&Alpha::origin(), &phi, &[10, 50, 100]).unwrap();
        assert!(est.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-14));
        assert!((est[2].1 - 2.0).abs() <= 0.002 * 2.0);
    }

    #[test]
    fn classical_compare_examples() {
        for al in alpha_grid(3, 4) {
            assert!(classical_compare(&z(1), 8, &al).unwrap() < 1e-15);
            assert!(classical_compare(&TrigPoly::constant(c(1.0, 0.0)), 8, &al).unwrap() < 1e-15);
        }
    }

    #[test]
    fn analytic_symbol_acts_without_loss() {
        let al = Alpha::from_angles(1.1, 2.3);
        let psi = TrigPoly::analytic(vec![c(0.7, 0.1), c(0.0, 0.0), c(0.3, -0.4), c(0.2, 0.2)]);
        let f = &al.lead_vector().scale(c(0.5, 0.5)) + &TrigPoly::from_terms(&[(2, c(1.0, 0.0)), (5, c(-0.3, 0.2))]);
        let rep = assemble(&al, &psi, 6).unwrap();
        let image = rep.apply(&f);
        assert!(image.max_coeff_diff(&multiply(&psi, &f)) < 1e-14);
        assert!(project_alpha(&al, &image).max_coeff_diff(&image) < 1e-14);
    }

    #[test]
    fn rejects_small_degree() {
        assert!(assemble(&Alpha::origin(), &z(1), 1).is_err());
    }

    fn alpha_strategy() -> impl Strategy<Value = Alpha> {
        (0.0..std::f64::consts::FRAC_PI_2, 0.0..2.0 * PI).prop_map(|(t, p)| Alpha::from_angles(t, p))
    }

    fn coeffs(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
        proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b)), n)
    }

    fn neil_poly(deg: usize) -> impl Strategy<Value = TrigPoly> {
        coeffs(deg + 1).prop_map(|mut v| {
            v[1] = c(0.0, 0.0);
            TrigPoly::analytic(v)
        })
    }

    fn member(al: Alpha, v: Vec<Complex64>) -> TrigPoly {
        let mut f = al.lead_vector().scale(v[0]);
        for (k, x) in v.iter().enumerate().skip(1) {
            f = &f + &z(k as i64 + 1).scale(*x);
        }
        f
    }

    proptest! {
        #[test]
        fn adjoint_identity(al in alpha_strategy(), phi in coeffs(5)) {
            let phi = TrigPoly::new(-2, phi);
            let a = square_compression(&assemble(&al, &phi, 10).unwrap());
            let b = square_compression(&assemble(&al, &phi.conjugate(), 10).unwrap());
            prop_assert!((b - a.adjoint()).camax() <= 1e-14);
        }

        #[test]
        fn product_law(al in alpha_strategy(), psi in neil_poly(5), phi in coeffs(7), f in coeffs(7)) {
            let phi = TrigPoly::new(-3, phi);
            let f = member(al, f);
            let lhs = project_alpha(&al, &(&psi.conjugate() * &project_alpha(&al, &(&phi * &f))));
            let rhs = project_alpha(&al, &(&(&psi.conjugate() * &phi) * &f));
            prop_assert!(lhs.max_coeff_diff(&rhs) <= 1e-10);
        }

        #[test]
        fn kernel_eigenrelation(al in alpha_strategy(), psi in neil_poly(4), r in 0.0f64..0.9, t in 0.0..2.0 * PI) {
            let w = Complex64::from_polar(r, t);
            let k = 200;
            let kw = kernel_poly(&al, w, k);
            let lhs = project_alpha(&al, &(&psi.conjugate() * &kw));
            let err = (&lhs - &kw.scale(psi.eval(w).conj())).l2();
            prop_assert!(err <= 10.0 * 0.9f64.powi(k as i32 - 4));
        }

        #[test]
        fn classical_compare_band2(al in alpha_strategy(), phi in coeffs(5), n in 3usize..24) {
            prop_assert!(classical_compare(&TrigPoly::new(-2, phi), n, &al).unwrap() <= 1e-12);
        }

        #[test]
        fn norm_estimate_nondecreasing(al in alpha_strategy(), phi in coeffs(5)) {
            let phi = TrigPoly::new(-2, phi);
            let est = operator_norm_estimate(&al, &phi, &[4, 8, 16, 32]).unwrap();
            prop_assert!(est.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12));
        }
    }
}
