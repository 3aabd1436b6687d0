//! Scaling-and-squaring with the degree-13 diagonal Padé approximant.

use num_complex::Complex64;

use super::lu::solve;
use super::matrix::{ComplexMatrix, I};
use crate::error::{Error, Result};

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm bound below which the [13/13] approximant is accurate to unit roundoff.
const THETA13: f64 = 5.371920351148152;

pub fn expm(x: &ComplexMatrix) -> Result<ComplexMatrix> {
    x.ensure_square()?;
    x.ensure_finite()?;
    let n = x.rows();
    let norm = x.norm_one();
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let x = x.scale_real(0.5f64.powi(squarings));

    let id = ComplexMatrix::identity(n);
    let x2 = x.matmul(&x);
    let x4 = x2.matmul(&x2);
    let x6 = x4.matmul(&x2);
    let b = |k: usize| Complex64::new(PADE13[k], 0.0);
    let lin = |c6: usize, c4: usize, c2: usize| x6.scale(b(c6)).add(&x4.scale(b(c4))).add(&x2.scale(b(c2)));

    let u_inner = x6.matmul(&lin(13, 11, 9)).add(&lin(7, 5, 3)).add(&id.scale(b(1)));
    let u = x.matmul(&u_inner);
    let v = x6.matmul(&lin(12, 10, 8)).add(&lin(6, 4, 2)).add(&id.scale(b(0)));

    let mut r = solve(&v.sub(&u), &v.add(&u))?;
    for _ in 0..squarings {
        r = r.matmul(&r);
    }
    Ok(r)
}

/// `e^{ιR}` for real `R`; the result is coninvolutory.
pub fn matexp_skewfactor(r: &ComplexMatrix) -> Result<ComplexMatrix> {
    r.ensure_square()?;
    if !r.is_real() {
        return Err(Error::InvalidInput(
            "generator must be real (imaginary parts exactly zero)".into(),
        ));
    }
    expm(&r.scale(I))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zero_gives_identity() {
        let e = matexp_skewfactor(&ComplexMatrix::zeros(3, 3)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(3));
    }

    #[test]
    fn scalar_phase() {
        let theta = 2.3;
        let e = matexp_skewfactor(&ComplexMatrix::from_real_diag(&[theta])).unwrap();
        let expected = Complex64::new(theta.cos(), theta.sin());
        assert!((e[(0, 0)] - expected).norm() < 1e-15);
    }

    #[test]
    fn swap_generator_gives_minus_identity() {
        // R has eigenvalues ±π, so e^{ιR} = cos(π)·I + ι·sin(π)·R/π = −I.
        let r = ComplexMatrix::from_real_rows(&[&[0.0, PI], &[PI, 0.0]]);
        let e = matexp_skewfactor(&r).unwrap();
        let minus_i = ComplexMatrix::identity(2).scale_real(-1.0);
        assert!(e.sub(&minus_i).norm_fro() < 1e-14);
    }

    #[test]
    fn result_is_coninvolutory() {
        let r = ComplexMatrix::from_fn(6, 6, |i, j| Complex64::new(((i * 3 + j * 5) % 7) as f64 * 0.4 - 1.2, 0.0));
        let x = matexp_skewfactor(&r).unwrap();
        let defect = x.matmul(&x.conj()).sub(&ComplexMatrix::identity(6)).norm_fro();
        assert!(defect < 1e-12 * 6.0 * x.norm_fro().powi(2));
    }

    #[test]
    fn complex_generator_rejected() {
        let mut r = ComplexMatrix::zeros(2, 2);
        r[(0, 1)] = Complex64::new(0.0, 1e-300);
        assert!(matches!(matexp_skewfactor(&r), Err(Error::InvalidInput(_))));
    }
}
