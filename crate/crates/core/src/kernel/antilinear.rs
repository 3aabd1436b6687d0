//! Deflations for the antilinear maps `x ↦ M·x̄` with `M` unitary and
//! (skew-)symmetric.
//!
//! For symmetric unitary `M` the map is an antilinear involution, so every
//! vector splits into coneigenvectors for +1; collecting an orthonormal set
//! of them gives `M = F·Fᵀ`. For skew-symmetric unitary `M` the map squares
//! to −1 and pairs each `x` with the orthogonal vector `−M·x̄`, giving
//! `M = F·J·Fᵀ`.

use num_complex::Complex64;

use super::matrix::{axpy_sub, conj_vec, dot, j_matrix, norm2, ComplexMatrix, I, ONE, ZERO};
use crate::error::{Error, Result};

fn check_unitary(m: &ComplexMatrix, tol: f64) -> Result<()> {
    let defect = m.unitarity_defect();
    if defect > tol * m.rows().max(1) as f64 {
        return Err(Error::violation("matrix is not unitary", defect));
    }
    Ok(())
}

/// Unit vector orthogonal to the given orthonormal columns, picked from the
/// projected standard basis vector of largest norm.
fn next_orthogonal(n: usize, accepted: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut best: Option<(f64, Vec<Complex64>)> = None;
    for e in 0..n {
        let mut x = vec![ZERO; n];
        x[e] = ONE;
        orthogonalize(&mut x, accepted);
        let nrm = norm2(&x);
        if best.as_ref().is_none_or(|(b, _)| nrm > *b + 1e-12) {
            best = Some((nrm, x));
        }
    }
    let (nrm, mut x) = best.expect("n > 0");
    x.iter_mut().for_each(|z| *z /= nrm);
    x
}

fn orthogonalize(x: &mut [Complex64], basis: &[Vec<Complex64>]) {
    for _ in 0..2 {
        for b in basis {
            let c = dot(b, x);
            axpy_sub(x, b, c);
        }
    }
}

/// Unitary `F` with `M = F·Fᵀ` for symmetric unitary `M`; every column `f`
/// satisfies `M·f̄ = f`.
pub fn takagi_symmetric_unitary(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    m.ensure_square()?;
    let n = m.rows();
    check_unitary(m, tol)?;
    let asym = m.sub(&m.transpose()).norm_fro();
    if asym > tol * n.max(1) as f64 {
        return Err(Error::violation("matrix is not symmetric", asym));
    }

    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let x = next_orthogonal(n, &cols);
        let mx = m.matvec(&conj_vec(&x));
        // y₊ = x + M·x̄ and y₋ = ι(x − M·x̄) are both fixed by y ↦ M·ȳ and
        // ‖y₊‖² + ‖y₋‖² = 4, so the longer one is safe to normalize.
        let plus: Vec<Complex64> = x.iter().zip(&mx).map(|(a, b)| a + b).collect();
        let minus: Vec<Complex64> = x.iter().zip(&mx).map(|(a, b)| I * (a - b)).collect();
        let mut y = if norm2(&plus) >= norm2(&minus) { plus } else { minus };
        // Real coefficients keep y a coneigenvector.
        for f in &cols {
            let c = dot(f, &y).re;
            axpy_sub(&mut y, f, Complex64::new(c, 0.0));
        }
        let nrm = norm2(&y);
        if nrm < 1e-6 {
            return Err(Error::violation("Takagi deflation lost orthogonality", nrm));
        }
        y.iter_mut().for_each(|z| *z /= nrm);
        cols.push(y);
    }
    let f = ComplexMatrix::from_columns(n, &cols);
    let res = f.matmul(&f.transpose()).sub(m).norm_fro();
    if res > 16.0 * tol * n.max(1) as f64 {
        return Err(Error::violation("Takagi factor does not reproduce M", res));
    }
    Ok(f)
}

/// Unitary `F` with `M = F·J_k·Fᵀ` for skew-symmetric unitary `M` of size 2k.
/// Columns come as `[x₁…x_k, y₁…y_k]` with `y_j = −M·x̄_j`.
pub fn skew_pair_unitary(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    m.ensure_square()?;
    let n = m.rows();
    if n % 2 != 0 {
        return Err(Error::violation(
            format!("skew-symmetric unitary matrix must have even dimension, got {n}"),
            f64::INFINITY,
        ));
    }
    check_unitary(m, tol)?;
    let sym = m.add(&m.transpose()).norm_fro();
    if sym > tol * n.max(1) as f64 {
        return Err(Error::violation("matrix is not skew-symmetric", sym));
    }

    let k = n / 2;
    let mut accepted: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut xs = Vec::with_capacity(k);
    let mut ys = Vec::with_capacity(k);
    for _ in 0..k {
        let x = next_orthogonal(n, &accepted);
        let mut y: Vec<Complex64> = m.matvec(&conj_vec(&x)).iter().map(|z| -z).collect();
        orthogonalize(&mut y, &accepted);
        let yx = dot(&x, &y);
        axpy_sub(&mut y, &x, yx);
        let nrm = norm2(&y);
        if nrm < 1e-6 {
            return Err(Error::violation("skew pairing lost orthogonality", nrm));
        }
        y.iter_mut().for_each(|z| *z /= nrm);
        accepted.push(x.clone());
        accepted.push(y.clone());
        xs.push(x);
        ys.push(y);
    }
    xs.extend(ys);
    let f = ComplexMatrix::from_columns(n, &xs);
    let res = f.matmul(&j_matrix(k)).matmul(&f.transpose()).sub(m).norm_fro();
    if res > 16.0 * tol * n.max(1) as f64 {
        return Err(Error::violation("skew pairing does not reproduce M", res));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn takagi_identity() {
        let f = takagi_symmetric_unitary(&ComplexMatrix::identity(2), 1e-12).unwrap();
        assert_eq!(f, ComplexMatrix::identity(2));
    }

    #[test]
    fn takagi_scalar_phase() {
        let theta: f64 = 2.0;
        let m = ComplexMatrix::from_diag(&[c(theta.cos(), theta.sin())]);
        let f = takagi_symmetric_unitary(&m, 1e-12).unwrap();
        let half = c((theta / 2.0).cos(), (theta / 2.0).sin());
        // unique up to sign
        assert!((f[(0, 0)] - half).norm() < 1e-15 || (f[(0, 0)] + half).norm() < 1e-15);
    }

    #[test]
    fn takagi_swap() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let f = takagi_symmetric_unitary(&m, 1e-12).unwrap();
        assert!(f.matmul(&f.transpose()).sub(&m).norm_fro() < 1e-15);
        assert!(f.unitarity_defect() < 1e-15);
        for j in 0..2 {
            let fj = f.col(j);
            let back = m.matvec(&conj_vec(fj));
            let d: Vec<Complex64> = back.iter().zip(fj).map(|(a, b)| a - b).collect();
            assert!(norm2(&d) < 1e-15);
        }
    }

    #[test]
    fn takagi_rejects_non_symmetric() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert!(matches!(
            takagi_symmetric_unitary(&m, 1e-12),
            Err(Error::StructureViolation { residual, .. }) if residual > 1.0
        ));
    }

    #[test]
    fn skew_pair_standard_j() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let f = skew_pair_unitary(&m, 1e-12).unwrap();
        assert_eq!(f, ComplexMatrix::identity(2));
    }

    #[test]
    fn skew_pair_imaginary() {
        let m = ComplexMatrix::from_rows(&[&[c(0.0, 0.0), c(0.0, 1.0)], &[c(0.0, -1.0), c(0.0, 0.0)]]);
        let f = skew_pair_unitary(&m, 1e-12).unwrap();
        assert!(f.matmul(&j_matrix(1)).matmul(&f.transpose()).sub(&m).norm_fro() < 1e-15);
        // one valid factor is e^{ιπ/4}·I
        let w = c(std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2);
        let g = ComplexMatrix::identity(2).scale(w);
        assert!(g.matmul(&j_matrix(1)).matmul(&g.transpose()).sub(&m).norm_fro() < 1e-15);
    }

    #[test]
    fn skew_pair_two_blocks_is_permutation() {
        // diag(J₁, J₁) in J₂ layout is realized by the permutation [e₁, e₃, e₂, e₄].
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 1)] = ONE;
        m[(1, 0)] = -ONE;
        m[(2, 3)] = ONE;
        m[(3, 2)] = -ONE;
        let f = skew_pair_unitary(&m, 1e-12).unwrap();
        let mut p = ComplexMatrix::zeros(4, 4);
        for (col, row) in [0, 2, 1, 3].into_iter().enumerate() {
            p[(row, col)] = ONE;
        }
        assert_eq!(f, p);
        assert!(p.matmul(&j_matrix(2)).matmul(&p.transpose()).sub(&m).norm_fro() == 0.0);
    }

    #[test]
    fn skew_pair_rejects_odd() {
        let m = ComplexMatrix::identity(3);
        assert!(matches!(
            skew_pair_unitary(&m, 1e-12),
            Err(Error::StructureViolation { .. })
        ));
    }
}
