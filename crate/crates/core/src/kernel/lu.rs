//! LU with partial pivoting, used for linear solves in residual checks and
//! the Padé denominator.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Solves `A·X = B` for square `A`.
pub fn solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.ensure_square()?;
    let n = a.rows();
    if b.rows() != n {
        return Err(Error::Dimension(format!(
            "right-hand side has {} rows, expected {n}",
            b.rows()
        )));
    }
    let mut lu = a.clone();
    let mut piv: Vec<usize> = (0..n).collect();
    let scale = a.norm_fro();
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold((k, -1.0), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
        if pmax <= f64::EPSILON * f64::EPSILON * scale || pmax == 0.0 {
            return Err(Error::Numerical(format!("singular matrix at pivot {k}")));
        }
        if p != k {
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = t;
            }
            piv.swap(k, p);
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let l = lu[(i, k)] / d;
            lu[(i, k)] = l;
            if l != Complex64::new(0.0, 0.0) {
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= l * u;
                }
            }
        }
    }

    let mut x = ComplexMatrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        let mut y: Vec<Complex64> = piv.iter().map(|&p| b[(p, c)]).collect();
        for i in 0..n {
            for k in 0..i {
                let l = lu[(i, k)];
                let yk = y[k];
                y[i] -= l * yk;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let u = lu[(i, k)];
                let yk = y[k];
                y[i] -= u * yk;
            }
            y[i] /= lu[(i, i)];
        }
        x.set_col(c, &y);
    }
    Ok(x)
}

/// `X·M⁻¹`, computed by solving `Y·M = X` rather than inverting `M`.
pub fn right_divide(x: &ComplexMatrix, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    // Y·M = X  ⇔  Mᵀ·Yᵀ = Xᵀ
    Ok(solve(&m.transpose(), &x.transpose())?.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[1.0, 1.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[4.0], &[3.0]]);
        let x = solve(&a, &b).unwrap();
        assert!((x[(0, 0)].re - 1.0).abs() < 1e-15 && (x[(1, 0)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn right_divide_inverts() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| {
            Complex64::new(if i == j { 4.0 } else { 0.3 * (i as f64 - j as f64) }, 0.1 * (i + j) as f64)
        });
        let x = ComplexMatrix::from_fn(4, 4, |i, j| Complex64::new(i as f64, j as f64));
        let y = right_divide(&x, &m).unwrap();
        assert!(y.matmul(&m).sub(&x).norm_fro() < 1e-13 * x.norm_fro());
    }

    #[test]
    fn singular_detected() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(
            solve(&a, &ComplexMatrix::identity(2)),
            Err(Error::Numerical(_))
        ));
    }
}
