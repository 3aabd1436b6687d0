//! Condensed forms built from a structured SVD.
//!
//! With `Z = V·Σ^{−1/2}` every class satisfies `T·Σ = Σ^{−1/2}·T·Σ^{1/2}`, so
//! `A = Z·T·Z⁻¹` (similarity classes) or `A = Z̄·T·Z⁻¹` (con classes). The
//! eigen- and consimilarity decompositions below factor the unitary `T`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{conj_vec, j_matrix, norm2, normalize, right_divide, ComplexMatrix, I, ONE};
use crate::structured_svd::{layout, StructuredSvd};
use crate::structures::{unit_phase, StructureClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CanonicalKind {
    /// `A = V·TΣ·Vᴴ`.
    UnitarySimilarity,
    /// `A = Z·TΣ·Z⁻¹`.
    Similarity,
    /// `A = V̄·TΣ·Vᴴ`.
    UnitaryConsimilarity,
    /// `A = Z̄·TΣ·Z⁻¹`.
    Consimilarity,
}

#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub t_sigma: ComplexMatrix,
    pub transform: ComplexMatrix,
    pub kind: CanonicalKind,
}

impl CanonicalForm {
    /// ‖A − (transform applied to TΣ)‖_F.
    pub fn residual(&self, a: &ComplexMatrix) -> Result<f64> {
        let x = &self.transform;
        let rebuilt = match self.kind {
            CanonicalKind::UnitarySimilarity => x.matmul(&self.t_sigma).matmul(&x.adjoint()),
            CanonicalKind::UnitaryConsimilarity => x.conj().matmul(&self.t_sigma).matmul(&x.adjoint()),
            CanonicalKind::Similarity => right_divide(&x.matmul(&self.t_sigma), x)?,
            CanonicalKind::Consimilarity => right_divide(&x.conj().matmul(&self.t_sigma), x)?,
        };
        Ok(a.sub(&rebuilt).norm_fro())
    }
}

/// `TΣ` in the block layout of the class, with the unitary `V` that realizes it.
pub fn canonical_form(ssvd: &StructuredSvd) -> CanonicalForm {
    CanonicalForm {
        t_sigma: ssvd.t.scale_cols_real(&ssvd.sigma),
        transform: ssvd.v.clone(),
        kind: if ssvd.class.is_con() {
            CanonicalKind::UnitaryConsimilarity
        } else {
            CanonicalKind::UnitarySimilarity
        },
    }
}

/// `Z = V·Σ^{−1/2}`.
fn scaled_basis(ssvd: &StructuredSvd) -> ComplexMatrix {
    let d: Vec<f64> = ssvd.sigma.iter().map(|s| 1.0 / s.sqrt()).collect();
    ssvd.v.scale_cols_real(&d)
}

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvectors, columns of unit norm.
    pub x: ComplexMatrix,
    pub eigenvalues: Vec<Complex64>,
    /// Multiplicities of +1 and −1 (or +ι and −ι).
    pub counts: (usize, usize),
}

impl EigenDecomposition {
    /// ‖A·X − X·Λ‖_F.
    pub fn residual(&self, a: &ComplexMatrix) -> f64 {
        a.matmul(&self.x).sub(&self.x.scale_cols(&self.eigenvalues)).norm_fro()
    }

    /// ‖A − X·Λ·X⁻¹‖_F, with one linear solve.
    pub fn similarity_residual(&self, a: &ComplexMatrix) -> Result<f64> {
        let xl = self.x.scale_cols(&self.eigenvalues);
        Ok(a.sub(&right_divide(&xl, &self.x)?).norm_fro())
    }
}

/// Eigendecomposition `A = X·Λ·X⁻¹` of an involutory (Λ = ±1) or
/// skew-involutory (Λ = ±ι) matrix. Columns come as the ν+μ pair vectors with
/// eigenvalue −1 (−ι), then those with +1 (+ι), then the singles.
pub fn eigendecompose(ssvd: &StructuredSvd) -> Result<EigenDecomposition> {
    let skew = match ssvd.class {
        StructureClass::Involutory => false,
        StructureClass::SkewInvolutory => true,
        got => {
            return Err(Error::Class {
                expected: "involutory or skew-involutory",
                got,
            })
        }
    };
    let n = ssvd.n();
    let c = &ssvd.counts;
    let pairs = c.nu + c.mu;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // Eigenvectors e_a + x·e_c of the 2×2 pair block of T.
    let (x_minus, x_plus, lam_minus, lam_plus) = if skew {
        (I, -I, -I, I)
    } else {
        (-ONE, ONE, -ONE, ONE)
    };
    let mut y = ComplexMatrix::zeros(n, n);
    let mut eigenvalues = Vec::with_capacity(n);
    for (offset, x, lam) in [(0, x_minus, lam_minus), (pairs, x_plus, lam_plus)] {
        for j in 0..pairs {
            let col = offset + j;
            y[(j, col)] = Complex64::new(r, 0.0);
            y[(layout::partner(c, j), col)] = x * r;
            eigenvalues.push(lam);
        }
    }
    for (col, pos) in (2 * pairs..n).zip(layout::single_positions(c)) {
        y[(pos, col)] = ONE;
        eigenvalues.push(ssvd.t[(pos, pos)]);
    }

    let mut x = scaled_basis(ssvd).matmul(&y);
    for j in 0..n {
        normalize(x.col_mut(j));
    }
    let plus = if skew { I } else { ONE };
    let n_plus = eigenvalues.iter().filter(|&&l| l == plus).count();
    Ok(EigenDecomposition {
        x,
        counts: (n_plus, n - n_plus),
        eigenvalues,
    })
}

/// `S` with `A = S·S̄⁻¹` for coninvolutory `A`.
///
/// `T = W·Wᵀ` with `W` unitary (a `[[1, ι], [1, −ι]]/√2` block per pair and
/// `e^{ια/2}` per single), so `T = W·W̄⁻¹` and `S = Z̄·W`.
pub fn consim_to_identity(ssvd: &StructuredSvd) -> Result<ComplexMatrix> {
    if ssvd.class != StructureClass::Coninvolutory {
        return Err(Error::Class {
            expected: "coninvolutory",
            got: ssvd.class,
        });
    }
    let n = ssvd.n();
    let c = &ssvd.counts;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut w = ComplexMatrix::zeros(n, n);
    for j in 0..c.nu + c.mu {
        let p = layout::partner(c, j);
        w[(j, j)] = Complex64::new(r, 0.0);
        w[(p, j)] = Complex64::new(r, 0.0);
        w[(j, p)] = I * r;
        w[(p, p)] = -I * r;
    }
    for pos in layout::single_positions(c) {
        let d = ssvd.t[(pos, pos)];
        w[(pos, pos)] = unit_phase(d.arg() / 2.0);
    }
    Ok(scaled_basis(ssvd).conj().matmul(&w))
}

/// ‖A − S·S̄⁻¹‖_F.
pub fn consim_identity_residual(a: &ComplexMatrix, s: &ComplexMatrix) -> Result<f64> {
    Ok(a.sub(&right_divide(s, &s.conj())?).norm_fro())
}

/// `Z = V·diag(S^{−1/2}, S^{1/2})` with `A = −Z̄·J·Z⁻¹` for skew-coninvolutory `A`.
pub fn consim_to_minus_j(ssvd: &StructuredSvd) -> Result<ComplexMatrix> {
    if ssvd.class != StructureClass::SkewConinvolutory {
        return Err(Error::Class {
            expected: "skew-coninvolutory",
            got: ssvd.class,
        });
    }
    Ok(scaled_basis(ssvd))
}

/// ‖A + Z̄·J·Z⁻¹‖_F.
pub fn consim_minus_j_residual(a: &ComplexMatrix, z: &ComplexMatrix) -> Result<f64> {
    let zj = z.conj().matmul(&j_matrix(z.rows() / 2));
    Ok(a.add(&right_divide(&zj, z)?).norm_fro())
}

/// The single σ = 1 left vectors `q` of a coninvolutory SVD, each with
/// coneigenvalue 1 (`A·q̄ = q`).
pub fn coneigen_singles(ssvd: &StructuredSvd) -> Result<Vec<(Vec<Complex64>, Complex64)>> {
    if ssvd.class != StructureClass::Coninvolutory {
        return Err(Error::Class {
            expected: "coninvolutory",
            got: ssvd.class,
        });
    }
    Ok(ssvd
        .single_columns()
        .into_iter()
        .map(|j| (ssvd.u.col(j).to_vec(), ONE))
        .collect())
}

/// ‖A·q̄ − λ·q‖₂.
pub fn coneigen_residual(a: &ComplexMatrix, q: &[Complex64], lambda: Complex64) -> f64 {
    let aq = a.matvec(&conj_vec(q));
    norm2(&aq.iter().zip(q).map(|(x, y)| x - lambda * y).collect::<Vec<_>>())
}
