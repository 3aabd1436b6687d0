//! Cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Unitary; column j is the eigenvector for `lambda[j]`.
    pub q: ComplexMatrix,
    /// Descending.
    pub lambda: Vec<f64>,
}

/// Eigendecomposition of `(H + Hᴴ)/2`.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEig> {
    h.ensure_square()?;
    h.ensure_finite()?;
    let n = h.rows();
    let mut a = h.add(&h.adjoint()).scale_real(0.5);
    let mut q = ComplexMatrix::identity(n);
    let scale = a.norm_fro();

    let mut converged = n < 2 || scale == 0.0;
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let off: f64 = (0..n)
            .flat_map(|j| (0..n).filter(move |&i| i != j).map(move |i| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * scale {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for r in p + 1..n {
                let apq = a[(p, r)];
                let g = apq.norm();
                if g <= f64::EPSILON * 1e-3 * scale {
                    continue;
                }
                // G = diag(1, e^{-iφ})·[[c, s], [−s, c]] zeroes the (p, r) entry of GᴴAG.
                let phase = apq.conj() / g;
                let app = a[(p, p)].re;
                let arr = a[(r, r)].re;
                let tau = (arr - app) / (2.0 * g);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let g11 = Complex64::new(c, 0.0);
                let g12 = Complex64::new(s, 0.0);
                let g21 = phase * (-s);
                let g22 = phase * c;
                apply_right(&mut a, p, r, g11, g12, g21, g22);
                apply_left_adjoint(&mut a, p, r, g11, g12, g21, g22);
                apply_right(&mut q, p, r, g11, g12, g21, g22);
                a[(r, p)] = Complex64::new(0.0, 0.0);
                a[(p, r)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(r, r)].im = 0.0;
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence("Hermitian Jacobi eigensolver"));
    }

    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| diag[y].total_cmp(&diag[x]));
    Ok(HermitianEig {
        q: q.select_cols(&order),
        lambda: order.iter().map(|&i| diag[i]).collect(),
    })
}

/// Columns p, r of `m` ← [m_p, m_r]·G.
fn apply_right(
    m: &mut ComplexMatrix,
    p: usize,
    r: usize,
    g11: Complex64,
    g12: Complex64,
    g21: Complex64,
    g22: Complex64,
) {
    let (xp, xr) = m.col_pair_mut(p, r);
    for (a, b) in xp.iter_mut().zip(xr.iter_mut()) {
        let (ap, br) = (*a, *b);
        *a = ap * g11 + br * g21;
        *b = ap * g12 + br * g22;
    }
}

/// Rows p, r of `m` ← Gᴴ·[m_p; m_r].
fn apply_left_adjoint(
    m: &mut ComplexMatrix,
    p: usize,
    r: usize,
    g11: Complex64,
    g12: Complex64,
    g21: Complex64,
    g22: Complex64,
) {
    for j in 0..m.cols() {
        let (xp, xr) = (m[(p, j)], m[(r, j)]);
        m[(p, j)] = g11.conj() * xp + g21.conj() * xr;
        m[(r, j)] = g12.conj() * xp + g22.conj() * xr;
    }
}
