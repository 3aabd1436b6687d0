//! Dense complex linear-algebra primitives.

mod antilinear;
mod eig;
mod expm;
mod lu;
mod matrix;
mod qr;
mod svd;

pub use antilinear::{skew_pair_unitary, takagi_symmetric_unitary};
pub use eig::{hermitian_eig, HermitianEig};
pub use expm::{expm, matexp_skewfactor};
pub use lu::{right_divide, solve};
pub use matrix::{axpy_sub, conj_vec, dot, j_matrix, norm2, normalize, ComplexMatrix, I, ONE, ZERO};
pub use qr::{householder_qr, qr_column_pivoted, Qr, RankFactorization};
pub use svd::{svd, SvdResult};

/// 2-norm condition number from the SVD; infinite for singular input.
pub fn cond(a: &ComplexMatrix) -> crate::Result<f64> {
    let s = svd(a)?;
    let smin = s.sigma.last().copied().unwrap_or(0.0);
    Ok(if smin == 0.0 { f64::INFINITY } else { s.sigma_max() / smin })
}
