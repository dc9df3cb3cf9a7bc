//! Primal and dual estimates of `dist(phi, A)` in `L^inf`.

use clarabel::algebra::CscMatrix;
use clarabel::solver::{DefaultSettingsBuilder, DefaultSolver, IPSolver, SecondOrderConeT, SolverStatus};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rustfft::FftPlanner;

use super::MElement;
use crate::error::{Error, Result};
use crate::linalg::{solve_hpd, solve_least_squares};
use crate::trig_core::{mean_and_norms, multiply, node, synthesize, GridFn, TrigPoly};

pub const MINIMAX_TOL: f64 = 1e-6;
pub const MINIMAX_MAX_ITER: usize = 20_000;

/// Grid used for `l1` norms of witnesses.
pub(crate) fn l1_grid(p: &TrigPoly) -> usize {
    (4 * (p.max_abs_freq() as usize + 1)).next_power_of_two().max(1024)
}

/// `|int phi h| / ||h||_1`, a lower bound for `dist(phi, A)` because every
/// element of `A` annihilates `h`.
pub fn dual_lower_bound(phi: &TrigPoly, h: &MElement) -> Result<f64> {
    let h = h.poly();
    if h.is_zero() {
        return Err(Error::EmptyWitness);
    }
    let pairing = multiply(phi, h).mean().norm();
    let l1 = mean_and_norms(h, l1_grid(h))?.l1;
    if l1 == 0.0 {
        return Err(Error::EmptyWitness);
    }
    Ok(pairing / l1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PrimalBound {
    /// `max_k |phi(t_k) - p(t_k)|` on the optimization grid.
    pub value: f64,
    /// Same residual measured on an 8x finer grid.
    pub fine_value: f64,
    /// Weighted least-squares lower bound for the discrete optimum.
    pub lower: f64,
    /// `p = c_0 + sum_{j=2}^K c_j z^j`.
    pub p: TrigPoly,
    pub iterations: usize,
    pub grid: usize,
}

/// Discrete minimax distance from `phi` to `span{1, z^2, ..., z^K}`.
pub fn primal_upper_bound(phi: &TrigPoly, k: usize, m: usize) -> Result<PrimalBound> {
    check_primal_args(k, m)?;
    let samples = synthesize(phi, m)?;
    let mut out = minimax(&samples, k)?;
    let fine_m = 8 * m;
    let fine_phi = synthesize(phi, fine_m.max((2 * (phi.max_abs_freq() as usize + 1)).next_power_of_two()))?;
    out.fine_value = residual_sup(&fine_phi, &out.p);
    Ok(out)
}

/// As [`primal_upper_bound`] for a sampled symbol; the grid is the sample grid.
pub fn primal_upper_bound_grid(phi: &GridFn, k: usize) -> Result<PrimalBound> {
    check_primal_args(k, phi.len())?;
    let mut out = minimax(phi, k)?;
    out.fine_value = out.value;
    Ok(out)
}

fn check_primal_args(k: usize, m: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("primal degree K must be >= 2, got {k}")));
    }
    if m < 8 * k || !m.is_power_of_two() {
        return Err(Error::InvalidInput(format!("primal grid must be a power of two >= 8K = {}, got {m}", 8 * k)));
    }
    Ok(())
}

fn residual_sup(phi: &GridFn, p: &TrigPoly) -> f64 {
    let m = phi.len();
    phi.samples()
        .iter()
        .enumerate()
        .map(|(i, v)| (v - p.eval_angle(node(i, m))).norm())
        .fold(0.0, f64::max)
}

/// Discrete minimax as a second-order cone program.
///
/// The reported value is the measured grid residual of the solver's
/// coefficients. The certified lower bound is the weighted least-squares
/// error under the normalized dual multipliers: for any probability weights
/// this error cannot exceed the minimax error. When the interior-point
/// gap is too wide the dual weights seed a Lawson refinement.
fn minimax(phi: &GridFn, k: usize) -> Result<PrimalBound> {
    let m = phi.len();
    let freqs: Vec<i64> = std::iter::once(0).chain(2..=k as i64).collect();
    let target = phi.samples();
    let mut fitter = WeightedFit::new(target, &freqs);

    let (coef, dual, iterations) = socp(target, &freqs)?;
    let (value, _) = fitter.residuals(&coef);
    let total: f64 = dual.iter().sum();
    let w: Vec<f64> = if total > 0.0 { dual.iter().map(|d| d / total).collect() } else { vec![1.0 / m as f64; m] };
    let (ls_coef, lower) = fitter.weighted_fit(&w)?;
    let (ls_value, _) = fitter.residuals(&ls_coef);
    let (mut value, mut coef) = if ls_value < value { (ls_value, ls_coef) } else { (value, coef) };
    let mut lower = lower.min(value);
    let mut iterations = iterations;
    if value - lower > MINIMAX_TOL && value > 0.0 {
        let refined = fitter.lawson(w, value, coef.clone(), lower)?;
        iterations += refined.3;
        (value, coef, lower) = (refined.0, refined.1, refined.2);
    }
    let terms: Vec<(i64, Complex64)> = freqs.iter().copied().zip(coef.iter().copied()).collect();
    let p = TrigPoly::from_terms(&terms);
    Ok(PrimalBound { value, fine_value: value, lower, p, iterations, grid: m })
}

/// Solves `min t` subject to `|phi_r - sum_c x_c e^{i f_c t_r}| <= t` for
/// every node. Returns the coefficients, the cone multipliers on `t` and
/// the iteration count.
fn socp(target: &[Complex64], freqs: &[i64]) -> Result<(DVector<Complex64>, Vec<f64>, usize)> {
    let m = target.len();
    let dim = freqs.len();
    let n = 1 + 2 * dim;
    let (mut rows, mut cols, mut vals) = (Vec::new(), Vec::new(), Vec::new());
    let mut b = vec![0.0; 3 * m];
    for (r, phi_r) in target.iter().enumerate() {
        rows.push(3 * r);
        cols.push(0);
        vals.push(-1.0);
        for (c, &f) in freqs.iter().enumerate() {
            let a = Complex64::from_polar(1.0, f as f64 * node(r, m));
            rows.extend([3 * r + 1, 3 * r + 1, 3 * r + 2, 3 * r + 2]);
            cols.extend([1 + c, 1 + dim + c, 1 + c, 1 + dim + c]);
            vals.extend([a.re, -a.im, a.im, a.re]);
        }
        b[3 * r + 1] = phi_r.re;
        b[3 * r + 2] = phi_r.im;
    }
    let a = CscMatrix::new_from_triplets(3 * m, n, rows, cols, vals);
    let p = CscMatrix::zeros((n, n));
    let mut q = vec![0.0; n];
    q[0] = 1.0;
    let cones = vec![SecondOrderConeT(3); m];
    let settings = DefaultSettingsBuilder::default()
        .verbose(false)
        .max_iter(200)
        .tol_gap_abs(1e-11)
        .tol_gap_rel(1e-11)
        .tol_feas(1e-11)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cone solver settings: {e:?}")))?;
    let mut solver = DefaultSolver::new(&p, &q, &a, &b, &cones, settings)
        .map_err(|e| Error::InvalidInput(format!("cone solver setup: {e:?}")))?;
    solver.solve();
    let sol = &solver.solution;
    if !matches!(sol.status, SolverStatus::Solved | SolverStatus::AlmostSolved) {
        return Err(Error::MinimaxNotConverged { iterations: sol.iterations as usize, gap: f64::NAN });
    }
    let coef = DVector::from_fn(dim, |c, _| Complex64::new(sol.x[1 + c], sol.x[1 + dim + c]));
    let dual = (0..m).map(|r| sol.z[3 * r].max(0.0)).collect();
    Ok((coef, dual, sol.iterations as usize))
}

/// Weighted least squares on the uniform grid. The weighted Gram matrix is
/// Toeplitz in the Fourier coefficients of `w`, so each fit costs a few FFTs
/// plus a small solve.
struct WeightedFit<'a> {
    target: &'a [Complex64],
    freqs: &'a [i64],
    fwd: std::sync::Arc<dyn rustfft::Fft<f64>>,
    inv: std::sync::Arc<dyn rustfft::Fft<f64>>,
    buf: Vec<Complex64>,
    buf2: Vec<Complex64>,
    abs: Vec<f64>,
}

impl<'a> WeightedFit<'a> {
    fn new(target: &'a [Complex64], freqs: &'a [i64]) -> Self {
        let m = target.len();
        let mut planner = FftPlanner::new();
        let zero = Complex64::new(0.0, 0.0);
        WeightedFit {
            target,
            freqs,
            fwd: planner.plan_fft_forward(m),
            inv: planner.plan_fft_inverse(m),
            buf: vec![zero; m],
            buf2: vec![zero; m],
            abs: vec![0.0; m],
        }
    }

    fn bin(&self, j: i64) -> usize {
        j.rem_euclid(self.target.len() as i64) as usize
    }

    /// Sup residual of `coef`; `abs` holds the pointwise residuals afterwards.
    fn residuals(&mut self, coef: &DVector<Complex64>) -> (f64, &[f64]) {
        self.buf.iter_mut().for_each(|x| *x = Complex64::new(0.0, 0.0));
        for (&j, &c) in self.freqs.iter().zip(coef.iter()) {
            let b = self.bin(j);
            self.buf[b] += c;
        }
        self.inv.process(&mut self.buf);
        for ((a, t), p) in self.abs.iter_mut().zip(self.target).zip(&self.buf) {
            *a = (t - p).norm();
        }
        (self.abs.iter().copied().fold(0.0, f64::max), &self.abs)
    }

    /// Weighted least-squares coefficients and their weighted `L^2` error.
    fn weighted_fit(&mut self, w: &[f64]) -> Result<(DVector<Complex64>, f64)> {
        for (r, &wr) in w.iter().enumerate() {
            self.buf[r] = Complex64::new(wr, 0.0);
            self.buf2[r] = self.target[r] * wr;
        }
        self.fwd.process(&mut self.buf);
        self.fwd.process(&mut self.buf2);
        let dim = self.freqs.len();
        let gram = DMatrix::from_fn(dim, dim, |i, j| self.buf[self.bin(self.freqs[i] - self.freqs[j])]);
        let load = DVector::from_fn(dim, |i, _| self.buf2[self.bin(self.freqs[i])]);
        let coef = match solve_hpd(gram, &load).filter(|x| x.iter().all(|v| v.is_finite())) {
            Some(x) => x,
            None => dense_weighted_solve(self.target, self.freqs, w)?,
        };
        self.residuals(&coef);
        let ls = self.abs.iter().zip(w).map(|(e, wi)| wi * e * e).sum::<f64>().sqrt();
        Ok((coef, ls))
    }

    /// Lawson's reweighting from `w`, keeping the best iterate seen.
    fn lawson(
        &mut self,
        mut w: Vec<f64>,
        mut best: f64,
        mut best_coef: DVector<Complex64>,
        mut lower: f64,
    ) -> Result<(f64, DVector<Complex64>, f64, usize)> {
        for it in 1..=MINIMAX_MAX_ITER {
            let (coef, ls) = self.weighted_fit(&w)?;
            lower = lower.max(ls);
            let (upper, abs) = self.residuals(&coef);
            if upper < best {
                best = upper;
                best_coef = coef;
            }
            if best - lower <= MINIMAX_TOL || best == 0.0 {
                return Ok((best, best_coef, lower, it));
            }
            for (wi, e) in w.iter_mut().zip(abs) {
                *wi *= e / upper;
            }
            let total: f64 = w.iter().sum();
            if !(total > 0.0) {
                break;
            }
            w.iter_mut().for_each(|wi| *wi /= total);
        }
        Err(Error::MinimaxNotConverged { iterations: MINIMAX_MAX_ITER, gap: best - lower })
    }
}

/// SVD fallback for a numerically singular Gram matrix.
fn dense_weighted_solve(target: &[Complex64], freqs: &[i64], w: &[f64]) -> Result<DVector<Complex64>> {
    let m = target.len();
    let a = DMatrix::from_fn(m, freqs.len(), |r, c| Complex64::from_polar(w[r].sqrt(), freqs[c] as f64 * node(r, m)));
    let rhs = DVector::from_fn(m, |r, _| target[r] * w[r].sqrt());
    solve_least_squares(&a, &rhs).ok_or(Error::MinimaxNotConverged { iterations: 0, gap: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::widom::{expsin_symbol, MElement};
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z(k: i64) -> TrigPoly {
        TrigPoly::monomial(k, c(1.0, 0.0))
    }

    #[test]
    fn dual_examples() {
        let wit = MElement::new(z(-1)).unwrap();
        assert_abs_diff_eq!(dual_lower_bound(&z(1), &wit).unwrap(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(dual_lower_bound(&z(2), &wit).unwrap(), 0.0, epsilon = 1e-14);
        let zero = MElement::new(TrigPoly::zero()).unwrap();
        assert_eq!(dual_lower_bound(&z(1), &zero), Err(Error::EmptyWitness));
    }

    #[test]
    fn dual_bounded_by_one_for_unimodular() {
        let phi = expsin_symbol().poly;
        let witnesses = [
            TrigPoly::from_terms(&[(-1, c(1.0, 0.0)), (1, c(0.5, 0.0))]),
            TrigPoly::from_terms(&[(-1, c(0.2, -0.3)), (2, c(1.0, 0.4)), (5, c(-0.6, 0.0))]),
            z(3),
        ];
        for h in witnesses {
            let v = dual_lower_bound(&phi, &MElement::new(h).unwrap()).unwrap();
            assert!(v <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn primal_examples() {
        let r = primal_upper_bound(&z(2), 16, 128).unwrap();
        assert!(r.value < 1e-12);
        assert!(r.p.max_coeff_diff(&z(2)) < 1e-12);

        let r = primal_upper_bound(&z(1), 16, 128).unwrap();
        assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-4);
        assert!(r.p.l2() < 1e-10);

        // cvxpy on the same grid: 0.39430989020633167; p = 1 gives 2 sin(1/4)
        let phi = expsin_symbol().poly;
        let r = primal_upper_bound(&phi, 16, 128).unwrap();
        assert!(r.value <= 2.0 * 0.25f64.sin() + 1e-3);
        assert!((r.value - 0.39430989020633167).abs() <= 1e-5, "value {}", r.value);
        assert!(r.lower <= r.value);
        assert!(r.fine_value >= r.value - 1e-12);
    }

    #[test]
    fn primal_argument_checks() {
        assert!(primal_upper_bound(&z(1), 1, 128).is_err());
        assert!(primal_upper_bound(&z(1), 16, 64).is_err());
    }
}
