//! The projectors `B = (I ± A)/2` of an involutory `A`.
//!
//! [`projector_svd`] assembles an SVD of `B` from the structured SVD of `A`.
//! In `V`-coordinates `B` becomes `M = (I ± TΣ)/2`; after permuting each
//! reciprocal pair next to its partner, `M` is block diagonal with rank-one
//! 2×2 blocks `½·[1, ±1/σ; ±σ, 1]` and 1×1 blocks `(1 ± t)/2`. A rotation per
//! block gives `M·R = T·R·Λ`, hence `B = (V·T·R)·|Λ|·(V·R·sign Λ)ᴴ`.
//!
//! [`householder_singular_values`] recovers the singular values of `A` from
//! a rank factorization `B = Q·Wᴴ` alone: they are `√(1+μ) ± √μ` for the
//! eigenvalues μ of `WᴴW − I`, completed by ones.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{hermitian_eig, qr_column_pivoted, ComplexMatrix, SvdResult};
use crate::structured_svd::{layout, StructuredSvd};
use crate::structures::{classify, StructureClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProjectorSign {
    /// `B₂ = (I + A)/2`.
    #[serde(rename = "+")]
    Plus,
    /// `B₁ = (I − A)/2`.
    #[serde(rename = "-")]
    Minus,
}

impl ProjectorSign {
    pub fn value(self) -> f64 {
        match self {
            ProjectorSign::Plus => 1.0,
            ProjectorSign::Minus => -1.0,
        }
    }
}

impl fmt::Display for ProjectorSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProjectorSign::Plus => "+",
            ProjectorSign::Minus => "-",
        })
    }
}

impl FromStr for ProjectorSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(ProjectorSign::Plus),
            "-" | "minus" => Ok(ProjectorSign::Minus),
            other => Err(Error::InvalidInput(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

/// `(I + sign·A)/2` for involutory `A`.
pub fn projector(a: &ComplexMatrix, sign: ProjectorSign, tol: f64) -> Result<ComplexMatrix> {
    let report = classify(a, tol)?;
    if !report.accepts(StructureClass::Involutory) {
        return Err(Error::violation(
            "projector requires an involutory matrix",
            report.residuals[&StructureClass::Involutory],
        ));
    }
    Ok(half_shift(a, sign))
}

fn half_shift(a: &ComplexMatrix, sign: ProjectorSign) -> ComplexMatrix {
    ComplexMatrix::identity(a.rows())
        .add(&a.scale_real(sign.value()))
        .scale_real(0.5)
}

/// Intermediate factors of the projector SVD.
#[derive(Debug, Clone, Serialize)]
pub struct ProjectorConstruction {
    /// Layout position for each permuted coordinate: pairs `(j, partner)`,
    /// then δ singles, then η singles.
    pub perm: Vec<usize>,
    /// `(c, s)` with `c = √(σ/(σ+σ⁻¹))`, `s = c/σ` for each pair block.
    pub rotations: Vec<(f64, f64)>,
    /// Signed diagonal Λ in permuted order, before sorting.
    pub lambda: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct ProjectorSvd {
    pub sign: ProjectorSign,
    pub b: ComplexMatrix,
    /// Singular values sorted descending.
    pub svd: SvdResult,
    pub construction: ProjectorConstruction,
}

impl ProjectorSvd {
    pub fn residual(&self) -> f64 {
        self.b.sub(&self.svd.reconstruct()).norm_fro()
    }

    pub fn idempotency_residual(&self) -> f64 {
        self.b.matmul(&self.b).sub(&self.b).norm_fro()
    }
}

/// SVD of `(I ± A)/2` assembled from the structured SVD of involutory `A`.
pub fn projector_svd(ssvd: &StructuredSvd, sign: ProjectorSign) -> Result<ProjectorSvd> {
    if ssvd.class != StructureClass::Involutory {
        return Err(Error::Class {
            expected: "involutory",
            got: ssvd.class,
        });
    }
    let n = ssvd.n();
    let c = &ssvd.counts;
    let sg = sign.value();
    let pairs = c.nu + c.mu;

    let mut perm = Vec::with_capacity(n);
    for j in 0..pairs {
        perm.push(j);
        perm.push(layout::partner(c, j));
    }
    perm.extend(layout::single_positions(c));

    // R = P·X: columns in V-coordinates.
    let mut r = ComplexMatrix::zeros(n, n);
    let mut rotations = Vec::with_capacity(pairs);
    let mut lambda = Vec::with_capacity(n);
    for j in 0..pairs {
        let (a, p) = (perm[2 * j], perm[2 * j + 1]);
        let sigma = ssvd.sigma[a];
        let cr = (sigma / (sigma + 1.0 / sigma)).sqrt();
        let sr = cr / sigma;
        rotations.push((cr, sr));
        r[(a, 2 * j)] = Complex64::new(cr, 0.0);
        r[(p, 2 * j)] = Complex64::new(sg * sr, 0.0);
        r[(a, 2 * j + 1)] = Complex64::new(-sg * sr, 0.0);
        r[(p, 2 * j + 1)] = Complex64::new(cr, 0.0);
        lambda.push(sg * (sigma + 1.0 / sigma) / 2.0);
        lambda.push(0.0);
    }
    for (k, &pos) in perm.iter().enumerate().skip(2 * pairs) {
        r[(pos, k)] = Complex64::new(1.0, 0.0);
        let t = ssvd.t[(pos, pos)].re;
        lambda.push((t + sg) / 2.0);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| lambda[y].abs().total_cmp(&lambda[x].abs()));
    let r_sorted = r.select_cols(&order);
    let signs: Vec<f64> = order
        .iter()
        .map(|&k| if lambda[k] < 0.0 { -1.0 } else { 1.0 })
        .collect();
    let u = ssvd.v.matmul(&ssvd.t).matmul(&r_sorted);
    let v = ssvd.v.matmul(&r_sorted).scale_cols_real(&signs);
    let sigma = order.iter().map(|&k| lambda[k].abs()).collect();

    let a = ssvd.reconstruct();
    Ok(ProjectorSvd {
        sign,
        b: half_shift(&a, sign),
        svd: SvdResult { u, sigma, v },
        construction: ProjectorConstruction {
            perm,
            rotations,
            lambda,
        },
    })
}

/// Singular values of involutory `A` from the rank factorization of its
/// smaller-rank projector, sorted descending.
pub fn householder_singular_values(a: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    let report = classify(a, tol)?;
    if !report.accepts(StructureClass::Involutory) {
        return Err(Error::violation(
            "matrix is not involutory",
            report.residuals[&StructureClass::Involutory],
        ));
    }
    let n = a.rows();
    let trace = a.trace().re.round() as i64;
    let n_plus = (n as i64 + trace) / 2;
    let n_minus = n as i64 - n_plus;
    if n_plus < 0 || n_minus < 0 || (n as i64 + trace) % 2 != 0 {
        return Err(Error::Numerical(format!(
            "trace {trace} is inconsistent with an involutory matrix of size {n}"
        )));
    }
    let (sign, r) = if n_minus <= n_plus {
        (ProjectorSign::Minus, n_minus as usize)
    } else {
        (ProjectorSign::Plus, n_plus as usize)
    };
    let mut out = vec![1.0; n - 2 * r];
    if r > 0 {
        let b = half_shift(a, sign);
        let rank_tol = tol.max(1e-8);
        let f = qr_column_pivoted(&b, rank_tol)?;
        if f.rank != r {
            return Err(Error::Numerical(format!(
                "projector rank {} disagrees with trace-derived rank {r}",
                f.rank
            )));
        }
        // B² = B forces WᴴQ = I, so WᴴW − I = W⊥ᴴW⊥ with W⊥ = (I − QQᴴ)·W.
        let w_perp = f.w.sub(&f.q.matmul(&f.q.adjoint().matmul(&f.w)));
        let gram = w_perp.adjoint().matmul(&w_perp);
        let eig = hermitian_eig(&gram)?;
        let eff = tol.max(16.0 * n as f64 * f64::EPSILON) * gram.norm_fro().max(1.0);
        for &mu in &eig.lambda {
            if mu < -eff {
                return Err(Error::Numerical(format!(
                    "WᴴW − I has negative eigenvalue {mu:e}"
                )));
            }
            let mu = mu.max(0.0);
            let big = (1.0 + mu).sqrt() + mu.sqrt();
            out.push(big);
            out.push(1.0 / big);
        }
    }
    out.sort_by(|x, y| y.total_cmp(x));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::svd;
    use crate::structured_svd::restructure;

    fn antidiag() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 0.0]])
    }

    #[test]
    fn projector_examples() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(projector(&id, ProjectorSign::Plus, 1e-10).unwrap(), id);
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0]);
        assert_eq!(
            projector(&d, ProjectorSign::Plus, 1e-10).unwrap(),
            ComplexMatrix::from_real_diag(&[1.0, 0.0, 0.0])
        );
        assert_eq!(
            projector(&antidiag(), ProjectorSign::Plus, 1e-10).unwrap(),
            ComplexMatrix::from_real_rows(&[&[0.5, 1.0], &[0.25, 0.5]])
        );
        let not_inv = ComplexMatrix::from_real_diag(&[2.0, 1.0]);
        assert!(matches!(
            projector(&not_inv, ProjectorSign::Plus, 1e-10),
            Err(Error::StructureViolation { .. })
        ));
    }

    #[test]
    fn worked_value_five_quarters() {
        let s = restructure(&antidiag(), StructureClass::Involutory, 1e-10).unwrap();
        for sign in [ProjectorSign::Plus, ProjectorSign::Minus] {
            let p = projector_svd(&s, sign).unwrap();
            assert!((p.svd.sigma[0] - 1.25).abs() <= 1e-12);
            assert_eq!(p.svd.sigma[1], 0.0);
            assert!(p.residual() < 1e-14);
            assert!(p.svd.u.unitarity_defect() < 1e-14);
            assert!(p.svd.v.unitarity_defect() < 1e-14);
            // oracle: the 2×2 rank-one B has ‖B‖_F as its only singular value
            assert!((p.b.norm_fro() - 1.25).abs() < 1e-15);
        }
    }

    #[test]
    fn diag_projector_and_trivial() {
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0]);
        let s = restructure(&d, StructureClass::Involutory, 1e-10).unwrap();
        let p = projector_svd(&s, ProjectorSign::Plus).unwrap();
        assert_eq!(p.svd.sigma, vec![1.0, 0.0, 0.0]);
        assert!(p.residual() < 1e-15);
        let m = projector_svd(&s, ProjectorSign::Minus).unwrap();
        assert_eq!(m.svd.sigma, vec![1.0, 1.0, 0.0]);
        assert!(m.residual() < 1e-15);

        let s = restructure(&ComplexMatrix::identity(3), StructureClass::Involutory, 1e-10).unwrap();
        let p = projector_svd(&s, ProjectorSign::Minus).unwrap();
        assert_eq!(p.svd.sigma, vec![0.0; 3]);
    }

    #[test]
    fn householder_examples() {
        let d = ComplexMatrix::from_real_diag(&[1.0, -1.0, -1.0]);
        assert_eq!(householder_singular_values(&d, 1e-10).unwrap(), vec![1.0; 3]);
        assert_eq!(
            householder_singular_values(&ComplexMatrix::identity(4), 1e-10).unwrap(),
            vec![1.0; 4]
        );
        let hv = householder_singular_values(&antidiag(), 1e-10).unwrap();
        let kernel = svd(&antidiag()).unwrap().sigma;
        for (x, y) in hv.iter().zip(&kernel) {
            assert!((x - y).abs() < 1e-14 * x);
        }
    }

    #[test]
    fn sign_parsing() {
        assert_eq!("+".parse::<ProjectorSign>().unwrap(), ProjectorSign::Plus);
        assert_eq!("-".parse::<ProjectorSign>().unwrap(), ProjectorSign::Minus);
        assert!("x".parse::<ProjectorSign>().is_err());
    }
}
