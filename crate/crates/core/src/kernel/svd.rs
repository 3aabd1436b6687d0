//! One-sided (Hestenes) Jacobi SVD for square complex matrices.
//!
//! Columns of a working copy of `A` are rotated pairwise until they are
//! mutually orthogonal; the accumulated rotations form `V`, the column norms
//! are the singular values and the normalized columns form `U`. The method is
//! slower than bidiagonalization but computes small singular values to high
//! relative accuracy, which matters when they are reciprocals of large ones.

use num_complex::Complex64;

use super::matrix::{dot, norm2, ComplexMatrix, ONE, ZERO};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    /// Non-increasing, non-negative.
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SvdResult {
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.u.scale_cols_real(&self.sigma).matmul(&self.v.adjoint())
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }
}

pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    a.ensure_square()?;
    a.ensure_finite()?;
    let n = a.rows();
    let mut w = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let tol = (n as f64).sqrt() * f64::EPSILON;

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha = norm2(w.col(p)).powi(2);
                let beta = norm2(w.col(q)).powi(2);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(w.col(p), w.col(q));
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Rotate [w_p, w_q·e^{-iφ}] with a real Jacobi rotation so the
                // pair becomes orthogonal; γ = |γ|e^{iφ}.
                let phase = gamma.conj() / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut w, p, q, c, s, phase);
                rotate(&mut v, p, q, c, s, phase);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence("one-sided Jacobi SVD"));
    }

    let norms: Vec<f64> = (0..n).map(|j| norm2(w.col(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep their column order
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));

    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let v = v.select_cols(&order);
    let mut u = ComplexMatrix::zeros(n, n);
    let mut filled = Vec::with_capacity(n);
    for (k, &j) in order.iter().enumerate() {
        if sigma[k] > 0.0 {
            let col: Vec<Complex64> = w.col(j).iter().map(|z| z / sigma[k]).collect();
            u.set_col(k, &col);
            filled.push(k);
        }
    }
    complete_orthonormal(&mut u, &filled);
    Ok(SvdResult { u, sigma, v })
}

/// [x_p, x_q] ← [c·x_p − s·φ·x_q, s·x_p + c·φ·x_q]
fn rotate(m: &mut ComplexMatrix, p: usize, q: usize, c: f64, s: f64, phase: Complex64) {
    let (xp, xq) = m.col_pair_mut(p, q);
    for (a, b) in xp.iter_mut().zip(xq.iter_mut()) {
        let bq = *b * phase;
        let ap = *a;
        *a = ap * c - bq * s;
        *b = ap * s + bq * c;
    }
}

/// Fills the columns of `m` not listed in `filled` with unit vectors
/// orthogonal to every other column, via Gram–Schmidt on the standard basis.
pub(crate) fn complete_orthonormal(m: &mut ComplexMatrix, filled: &[usize]) {
    let n = m.rows();
    let mut basis: Vec<usize> = filled.to_vec();
    let missing: Vec<usize> = (0..m.cols()).filter(|j| !filled.contains(j)).collect();
    for target in missing {
        let mut best: Option<(f64, Vec<Complex64>)> = None;
        for e in 0..n {
            let mut x = vec![ZERO; n];
            x[e] = ONE;
            for _ in 0..2 {
                for &b in &basis {
                    let coef = dot(m.col(b), &x);
                    super::matrix::axpy_sub(&mut x, m.col(b), coef);
                }
            }
            let nrm = norm2(&x);
            if best.as_ref().is_none_or(|(bn, _)| nrm > *bn + 1e-12) {
                best = Some((nrm, x));
            }
        }
        let (nrm, mut x) = best.expect("at least one basis vector");
        x.iter_mut().for_each(|z| *z /= nrm);
        m.set_col(target, &x);
        basis.push(target);
    }
}
