//! Factorization of elements of `M` and invertibility in the Neil algebra.

use num_complex::Complex64;

use super::MElement;
use crate::error::{Error, Result};
use crate::hardy_alpha::{canonicalize_alpha, membership_defect, project_alpha, Alpha};
use crate::linalg::polynomial_roots;
use crate::trig_core::{mean_and_norms, multiply, synthesize, GridFn, TrigPoly};
use crate::weights::{analyze_weight, outer_factor, Weight};

const BOUNDARY_MARGIN: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FactorResiduals {
    /// `||h - f g||_1`
    pub factorization: f64,
    /// `| ||h||_1 - ||f||_2 ||g||_2 |`
    pub norm_split: f64,
    /// `||P_alpha conj(g)||_2`
    pub ortho: f64,
    /// membership defect of `f` in `H^2_alpha`
    pub membership: f64,
}

impl FactorResiduals {
    pub fn max(&self) -> f64 {
        self.factorization.max(self.norm_split).max(self.ortho).max(self.membership)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RieszFactor {
    pub alpha: Alpha,
    /// `f = B R` in `H^2_alpha`.
    pub f: TrigPoly,
    /// `g = conj(z) R`, with `conj(g)` orthogonal to `H^2_alpha`.
    pub g: TrigPoly,
    /// Roots of `z h` inside the disc (the Blaschke zeros).
    pub inner_zeros: Vec<Complex64>,
    pub residuals: FactorResiduals,
}

/// Writes `h = f g` with `f in H^2_alpha`, `conj(g) perp H^2_alpha` and
/// `||h||_1 = ||f||_2 ||g||_2`.
///
/// `psi = z h` is an analytic polynomial with `psi'(0) = 0`. Its zeros in
/// the disc give a Blaschke product `B`; `R` is the outer function with
/// `|R|^2 = |psi|` on the circle, so `psi = B R^2`. Then `F = B R`,
/// `G = R` and `g = conj(z) G`. The unimodular constant in `B` is fixed by
/// matching `B R^2 = psi` at `z = 1`.
pub fn riesz_factor(h: &MElement, k: usize) -> Result<RieszFactor> {
    let h = h.poly();
    if h.is_zero() {
        return Err(Error::EmptyWitness);
    }
    let psi = h.shift(1).normalize().window(0, h.hi() + 1);
    let deg = psi.hi() as usize;
    let k = k.max(deg).max(2);

    let roots = polynomial_roots(&psi.analytic_coeffs(deg));
    if let Some(r) = roots.iter().find(|r| (r.norm() - 1.0).abs() <= BOUNDARY_MARGIN) {
        return Err(Error::BoundaryZero(r.norm()));
    }
    let inner_zeros: Vec<Complex64> = roots.into_iter().filter(|r| r.norm() < 1.0).collect();

    let m = (8 * (k + 1)).next_power_of_two().max(1024);
    let modulus: Vec<f64> = synthesize(&psi, m)?.samples().iter().map(|x| x.norm()).collect();
    let weight = Weight::from_grid("|psi|", GridFn::from_real(&modulus)?)?;
    let analysis = analyze_weight(&weight, Some(k as i64))?;
    let outer = outer_factor(&analysis, k)?.poly;

    let blaschke = blaschke_series(&inner_zeros, k);
    let one = Complex64::new(1.0, 0.0);
    let b_at_one = inner_zeros.iter().fold(one, |acc, r| acc * (one - r) / (one - r.conj()));
    let r_at_one = outer.eval(one);
    let kappa = psi.eval(one) / (b_at_one * r_at_one * r_at_one);
    let kappa = kappa / kappa.norm();

    let f = multiply(&blaschke, &outer).window(0, k as i64).scale(kappa);
    let big_g = outer;
    let alpha = choose_alpha(&f, &big_g)?;
    let g = big_g.shift(-1);

    let norm_grid = (4 * (2 * k + 2)).next_power_of_two().max(1024);
    let product = multiply(&f, &g);
    let factorization = mean_and_norms(&(h - &product), norm_grid)?.l1;
    let h_l1 = mean_and_norms(h, norm_grid)?.l1;
    let norm_split = (h_l1 - f.l2() * g.l2()).abs();
    let ortho = project_alpha(&alpha, &g.conjugate()).l2();
    let membership = membership_defect(&f, &alpha)?;

    Ok(RieszFactor {
        alpha,
        f,
        g,
        inner_zeros,
        residuals: FactorResiduals { factorization, norm_split, ortho, membership },
    })
}

/// `a F'(0) = b F(0)`, or from `G` via `a G'(0) = -b G(0)` when `F` vanishes
/// to second order at the origin.
fn choose_alpha(f: &TrigPoly, g: &TrigPoly) -> Result<Alpha> {
    let scale = f.l2().max(g.l2());
    let tiny = 1e-12 * scale;
    let (f0, f1) = (f.coeff(0), f.coeff(1));
    if f0.norm().max(f1.norm()) > tiny {
        return canonicalize_alpha(f0, f1);
    }
    let (g0, g1) = (g.coeff(0), g.coeff(1));
    if g0.norm().max(g1.norm()) > tiny {
        return canonicalize_alpha(g0, -g1);
    }
    Ok(Alpha::origin())
}

/// Degree-`k` Taylor series of `prod (z - r)/(1 - conj(r) z)`.
fn blaschke_series(zeros: &[Complex64], k: usize) -> TrigPoly {
    let mut acc = TrigPoly::constant(Complex64::new(1.0, 0.0));
    for r in zeros {
        let num = TrigPoly::analytic(vec![-r, Complex64::new(1.0, 0.0)]);
        let rc = r.conj();
        let mut geo = Vec::with_capacity(k + 1);
        let mut p = Complex64::new(1.0, 0.0);
        for _ in 0..=k {
            geo.push(p);
            p *= rc;
        }
        let factor = multiply(&num, &TrigPoly::analytic(geo));
        acc = multiply(&acc, &factor).window(0, k as i64);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Invertibility {
    pub invertible: bool,
    /// Minimum of `|psi|` on the `M` grid.
    pub inf_modulus: f64,
    /// Smallest root modulus (infinite for nonzero constants).
    pub min_root_modulus: f64,
}

/// Whether the polynomial `psi` (with `psi'(0) = 0`) is invertible in the
/// Neil algebra, i.e. zero-free on the closed disc.
pub fn neil_invertibility(psi: &TrigPoly, m: usize) -> Result<Invertibility> {
    let lo = psi.min_support();
    if lo < 0 && !psi.is_zero() {
        return Err(Error::NotInNeilAlgebra(f64::INFINITY));
    }
    let c1 = psi.coeff(1).norm();
    if c1 > 1e-12 * (1.0 + psi.l2()) {
        return Err(Error::NotInNeilAlgebra(c1));
    }
    let inf_modulus = synthesize(psi, m)?.samples().iter().map(|x| x.norm()).fold(f64::INFINITY, f64::min);
    if psi.is_zero() {
        return Ok(Invertibility { invertible: false, inf_modulus, min_root_modulus: 0.0 });
    }
    let deg = psi.normalize().hi().max(0) as usize;
    let min_root_modulus = polynomial_roots(&psi.analytic_coeffs(deg))
        .iter()
        .map(|r| r.norm())
        .fold(f64::INFINITY, f64::min);
    Ok(Invertibility {
        invertible: min_root_modulus > 1.0 + BOUNDARY_MARGIN,
        inf_modulus,
        min_root_modulus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn m_elem(terms: &[(i64, Complex64)]) -> MElement {
        MElement::new(TrigPoly::from_terms(terms)).unwrap()
    }

    #[test]
    fn trivial_factorization() {
        let r = riesz_factor(&m_elem(&[(-1, c(1.0, 0.0))]), 16).unwrap();
        assert_eq!(r.alpha, Alpha::origin());
        assert!(r.f.max_coeff_diff(&TrigPoly::constant(c(1.0, 0.0))) < 1e-12);
        assert!(r.g.max_coeff_diff(&TrigPoly::monomial(-1, c(1.0, 0.0))) < 1e-12);
        assert!(r.residuals.max() < 1e-12);
    }

    #[test]
    fn degenerate_f_uses_g_condition() {
        let r = riesz_factor(&m_elem(&[(1, c(1.0, 0.0))]), 128).unwrap();
        assert_eq!(r.alpha, Alpha::origin());
        assert!(r.f.max_coeff_diff(&TrigPoly::monomial(2, c(1.0, 0.0))) < 1e-10);
        assert!(r.g.max_coeff_diff(&TrigPoly::monomial(-1, c(1.0, 0.0))) < 1e-10);
        assert!(r.residuals.max() < 1e-10);
        assert_eq!(r.inner_zeros.len(), 2);
    }

    #[test]
    fn two_term_factorization() {
        let r = riesz_factor(&m_elem(&[(-1, c(1.0, 0.0)), (1, c(0.5, 0.0))]), 128).unwrap();
        let res = r.residuals;
        assert!(res.factorization <= 1e-6 && res.norm_split <= 1e-6 && res.ortho <= 1e-6);
        assert!(res.membership <= 1e-8);
    }

    #[test]
    fn factorization_with_inner_zeros() {
        // psi = z h = (z^2 - 1/4)(1 + 0.3 z^2) has zeros +-1/2 inside
        let psi = multiply(
            &TrigPoly::analytic(vec![c(-0.25, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            &TrigPoly::analytic(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.3, 0.0)]),
        );
        let h = MElement::new(psi.shift(-1)).unwrap();
        let r = riesz_factor(&h, 128).unwrap();
        assert_eq!(r.inner_zeros.len(), 2);
        assert!(r.residuals.max() <= 1e-6, "{:?}", r.residuals);
        assert!((r.alpha.a().norm_sqr() + r.alpha.b().norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn boundary_zero_is_refused() {
        // psi = 1 - z^2 vanishes at +-1
        let h = m_elem(&[(-1, c(1.0, 0.0)), (1, c(-1.0, 0.0))]);
        assert!(matches!(riesz_factor(&h, 32), Err(Error::BoundaryZero(_))));
    }

    #[test]
    fn invertibility_examples() {
        let one = neil_invertibility(&TrigPoly::constant(c(1.0, 0.0)), 256).unwrap();
        assert!(one.invertible);
        assert_abs_diff_eq!(one.inf_modulus, 1.0, epsilon = 1e-14);

        let z2 = neil_invertibility(&TrigPoly::monomial(2, c(1.0, 0.0)), 256).unwrap();
        assert!(!z2.invertible);

        let p = neil_invertibility(&TrigPoly::from_real(0, &[2.0, 0.0, 1.0]), 256).unwrap();
        assert!(p.invertible);
        assert_abs_diff_eq!(p.inf_modulus, 1.0, epsilon = 1e-12);

        assert!(matches!(
            neil_invertibility(&TrigPoly::from_real(0, &[1.0, 0.5]), 64),
            Err(Error::NotInNeilAlgebra(_))
        ));
    }
}
