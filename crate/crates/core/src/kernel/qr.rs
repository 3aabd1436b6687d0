//! Householder QR, with and without column pivoting.

use num_complex::Complex64;

use super::matrix::{norm2, ComplexMatrix, ONE, ZERO};
use super::svd::svd;
use crate::error::Result;

/// Householder QR factors with `diag(R)` made real and non-negative.
#[derive(Debug, Clone)]
pub struct Qr {
    /// n×n unitary.
    pub q: ComplexMatrix,
    /// n×m upper triangular.
    pub r: ComplexMatrix,
    /// Column permutation: column k of `A·P` is column `perm[k]` of `A`.
    pub perm: Vec<usize>,
}

/// Rank factorization `A ≈ Q·Wᴴ` from pivoted QR.
#[derive(Debug, Clone)]
pub struct RankFactorization {
    /// n×r with orthonormal columns.
    pub q: ComplexMatrix,
    /// n×r.
    pub w: ComplexMatrix,
    pub rank: usize,
}

pub fn householder_qr(a: &ComplexMatrix) -> Qr {
    factor(a, false)
}

fn factor(a: &ComplexMatrix, pivot: bool) -> Qr {
    let (n, m) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut perm: Vec<usize> = (0..m).collect();
    let mut reflectors: Vec<(usize, Vec<Complex64>, Complex64)> = Vec::new();
    let steps = n.min(m);

    for k in 0..steps {
        if pivot {
            let best = (k..m)
                .map(|j| (j, norm2(&r.col(j)[k..])))
                .fold((k, -1.0), |acc, (j, v)| if v > acc.1 { (j, v) } else { acc });
            if best.0 != k {
                let (ck, cb) = r.col_pair_mut(k, best.0);
                ck.swap_with_slice(cb);
                perm.swap(k, best.0);
            }
        }
        let x: Vec<Complex64> = r.col(k)[k..].to_vec();
        let xnorm = norm2(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() == 0.0 { ONE } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm = norm2(&v);
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);
        // H = I − 2vvᴴ
        for j in k..m {
            let col = &mut r.col_mut(j)[k..];
            let s: Complex64 = v.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
            for (c, &vi) in col.iter_mut().zip(&v) {
                *c -= vi * (s * 2.0);
            }
        }
        reflectors.push((k, v, alpha));
    }

    let mut q = ComplexMatrix::identity(n);
    for (k, v, _) in reflectors.iter().rev() {
        for j in 0..n {
            let col = &mut q.col_mut(j)[*k..];
            let s: Complex64 = v.iter().zip(col.iter()).map(|(a, b)| a.conj() * b).sum();
            for (c, &vi) in col.iter_mut().zip(v) {
                *c -= vi * (s * 2.0);
            }
        }
    }
    for i in 0..n {
        for j in 0..i.min(m) {
            r[(i, j)] = ZERO;
        }
    }
    // Move the phases of diag(R) into Q.
    for k in 0..steps {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let ph = d / d.norm();
            q.col_mut(k).iter_mut().for_each(|z| *z *= ph);
            for j in k..m {
                r[(k, j)] *= ph.conj();
            }
            r[(k, k)] = Complex64::new(r[(k, k)].re, 0.0);
        }
    }
    Qr { q, r, perm }
}

/// Column-pivoted QR truncated at numerical rank `tol·σ_max`, returned as
/// `A = Q·Wᴴ` with `Q` orthonormal and `W = P·R[..r, :]ᴴ`.
pub fn qr_column_pivoted(a: &ComplexMatrix, tol: f64) -> Result<RankFactorization> {
    a.ensure_finite()?;
    let n = a.rows();
    let smax = if a.is_square() {
        svd(a)?.sigma_max()
    } else {
        a.norm_fro()
    };
    let qr = factor(a, true);
    let threshold = tol * smax;
    let steps = n.min(a.cols());
    let rank = if smax == 0.0 {
        0
    } else {
        (0..steps).take_while(|&k| qr.r[(k, k)].re > threshold).count()
    };

    let keep: Vec<usize> = (0..rank).collect();
    let q = qr.q.select_cols(&keep);
    let mut w = ComplexMatrix::zeros(a.cols(), rank);
    for k in 0..rank {
        for (pos, &orig) in qr.perm.iter().enumerate() {
            w[(orig, k)] = qr.r[(k, pos)].conj();
        }
    }
    Ok(RankFactorization { q, w, rank })
}
