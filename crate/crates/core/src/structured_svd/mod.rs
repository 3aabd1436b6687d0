//! Structure-revealing SVD.
//!
//! For every class considered here a singular triplet `(u, v, σ)` forces a
//! partner triplet at `1/σ`:
//!
//! | class              | partner of `(u, v, σ)` | coupling      |
//! |--------------------|------------------------|---------------|
//! | involutory         | `(v, u, 1/σ)`          | `U = V·T`     |
//! | skew-involutory    | `(−v, u, 1/σ)`         | `U = V·T`     |
//! | coninvolutory      | `(v̄, ū, 1/σ)`          | `U = V̄·T`     |
//! | skew-coninvolutory | `(−v̄, ū, 1/σ)`         | `U = −V̄·J`    |
//!
//! [`restructure`] keeps the kernel SVD triplets for σ > 1, replaces their
//! partners by the forced ones, and splits the σ = 1 cluster into single
//! triplets (eigen- or coneigenvectors) or, for the skew-coninvolutory
//! class, into σ = 1 pairs.

pub mod layout;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{
    conj_vec, hermitian_eig, skew_pair_unitary, svd, takagi_symmetric_unitary, ComplexMatrix, I, ONE,
};
use crate::structures::{classify, unit_phase, StructureClass};

/// Tag of a single σ = 1 triplet: an eigenvalue sign (involutory classes) or
/// the phase α of `v = e^{ια}·ū` (coninvolutory).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingleTag {
    Sign(i8),
    Phase(f64),
}

impl SingleTag {
    /// Phase reduced to [0, 2π).
    pub fn phase(alpha: f64) -> Self {
        SingleTag::Phase(alpha.rem_euclid(std::f64::consts::TAU))
    }

    /// The diagonal entry this tag contributes to D or E.
    pub fn value(&self) -> Complex64 {
        match *self {
            SingleTag::Sign(s) => Complex64::new(s as f64, 0.0),
            SingleTag::Phase(a) if a == std::f64::consts::PI => -ONE,
            SingleTag::Phase(a) => unit_phase(a),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TripletBlock {
    /// Triplets at σ and 1/σ; `columns.1` is the partner.
    ReciprocalPair { sigma: f64, columns: (usize, usize) },
    SingleOne { tag: SingleTag, column: usize },
    /// A (1, 1) pair.
    PairedOne { columns: (usize, usize) },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub nu: usize,
    pub mu: usize,
    pub delta: usize,
    pub eta: usize,
    pub eta1: usize,
    pub eta2: usize,
}

impl Counts {
    /// `k` singles split as δ = ⌈k/2⌉, η = ⌊k/2⌋.
    pub fn new(nu: usize, mu: usize, k: usize, eta1: usize, eta2: usize) -> Self {
        Self {
            nu,
            mu,
            delta: k.div_ceil(2),
            eta: k / 2,
            eta1,
            eta2,
        }
    }

    pub fn n(&self) -> usize {
        2 * (self.nu + self.mu) + self.delta + self.eta
    }

    pub fn singles(&self) -> usize {
        self.delta + self.eta
    }
}

#[derive(Debug, Clone)]
pub struct StructuredSvd {
    pub class: StructureClass,
    pub u: ComplexMatrix,
    pub v: ComplexMatrix,
    /// In block layout order `[S, I_μ, I_δ, S⁻¹, I_μ, I_η]`, not sorted.
    pub sigma: Vec<f64>,
    pub t: ComplexMatrix,
    pub blocks: Vec<TripletBlock>,
    pub counts: Counts,
    pub d: Vec<Complex64>,
    pub e: Vec<Complex64>,
}

impl StructuredSvd {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sorted_sigma(&self) -> Vec<f64> {
        let mut s = self.sigma.clone();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// The ν singular values greater than one (S in the layout).
    pub fn large_sigmas(&self) -> &[f64] {
        &self.sigma[..self.counts.nu]
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.u.scale_cols_real(&self.sigma).matmul(&self.v.adjoint())
    }

    /// `V` for the similarity classes, `V̄` for the con classes.
    pub fn coupling_basis(&self) -> ComplexMatrix {
        if self.class.is_con() {
            self.v.conj()
        } else {
            self.v.clone()
        }
    }

    /// ‖U − V·T‖ or ‖U − V̄·T‖ (with T = −J for skew-coninvolutory).
    pub fn coupling_residual(&self) -> f64 {
        self.u.sub(&self.coupling_basis().matmul(&self.t)).norm_fro()
    }

    pub fn single_columns(&self) -> Vec<usize> {
        layout::single_positions(&self.counts)
    }

    pub fn single_tags(&self) -> Vec<SingleTag> {
        self.blocks
            .iter()
            .filter_map(|b| match b {
                TripletBlock::SingleOne { tag, .. } => Some(*tag),
                _ => None,
            })
            .collect()
    }
}

/// One matched reciprocal pair in a sorted singular value list.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReciprocalMatch {
    pub large: usize,
    pub small: usize,
    pub sigma: f64,
    pub partner: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumPairing {
    pub pairs: Vec<ReciprocalMatch>,
    /// Indices of values within the σ = 1 cluster.
    pub cluster: Vec<usize>,
}

/// Width of the σ = 1 cluster, which also bounds |σ_small − 1/σ_large|.
pub fn cluster_tolerance(sigma_max: f64, tol: f64) -> f64 {
    tol.max(1e-8) * sigma_max.max(1.0)
}

/// Matches a non-increasing positive list from both ends: σ_i > 1 pairs with
/// σ_{n−1−i} ≈ 1/σ_i, and what is left over must sit in the σ ≈ 1 cluster.
pub fn pairing_spectrum_check(sigma: &[f64], tol: f64) -> Result<SpectrumPairing> {
    if sigma.windows(2).any(|w| w[0] < w[1]) || sigma.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::InvalidInput(
            "singular values must be positive and non-increasing".into(),
        ));
    }
    let ctol = cluster_tolerance(sigma.first().copied().unwrap_or(1.0), tol);
    let in_cluster = |s: f64| (s - 1.0).abs() <= ctol;
    let mut pairs = Vec::new();
    let (mut i, mut j) = (0usize, sigma.len());
    while i + 1 < j {
        let big = sigma[i];
        if in_cluster(big) {
            break;
        }
        if big < 1.0 {
            return Err(Error::Pairing { orphan: big });
        }
        let small = sigma[j - 1];
        if (small - 1.0 / big).abs() > ctol {
            return Err(Error::Pairing { orphan: big });
        }
        pairs.push(ReciprocalMatch {
            large: i,
            small: j - 1,
            sigma: big,
            partner: small,
        });
        i += 1;
        j -= 1;
    }
    let cluster: Vec<usize> = (i..j).collect();
    if let Some(&bad) = cluster.iter().find(|&&k| !in_cluster(sigma[k])) {
        return Err(Error::Pairing { orphan: sigma[bad] });
    }
    Ok(SpectrumPairing { pairs, cluster })
}

/// `T = VᴴU` (similarity classes) or `T = VᵀU` (con classes), checked against
/// the class pattern and rounded to its exact entries.
///
/// The pattern is a monomial matrix whose permutation is an involution: on
/// 2-cycles the entries are `1` (or `−1` above / `1` below the diagonal for
/// the skew classes); fixed points carry `±1` (involutory), `±ι`
/// (skew-involutory) or a unit phase (coninvolutory). Skew-coninvolutory
/// admits no fixed points.
pub fn extract_t(
    u: &ComplexMatrix,
    v: &ComplexMatrix,
    class: StructureClass,
    tol: f64,
) -> Result<ComplexMatrix> {
    if u.rows() != v.rows() || u.cols() != v.cols() || !u.is_square() {
        return Err(Error::Dimension("U and V must be square of equal size".into()));
    }
    let n = u.rows();
    let raw = if class.is_con() {
        v.transpose().matmul(u)
    } else {
        v.adjoint().matmul(u)
    };
    let fail = |row: usize, col: usize| Error::Coupling {
        class,
        row,
        col,
        re: raw[(row, col)].re,
        im: raw[(row, col)].im,
    };

    let mut perm = vec![0usize; n];
    for col in 0..n {
        let row = (0..n)
            .max_by(|&a, &b| raw[(a, col)].norm().total_cmp(&raw[(b, col)].norm()))
            .unwrap_or(0);
        if (raw[(row, col)].norm() - 1.0).abs() > tol {
            return Err(fail(row, col));
        }
        if let Some(other) = (0..n).find(|&r| r != row && raw[(r, col)].norm() > tol) {
            return Err(fail(other, col));
        }
        perm[col] = row;
    }

    let skew = matches!(
        class,
        StructureClass::SkewInvolutory | StructureClass::SkewConinvolutory
    );
    let mut t = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        let row = perm[col];
        if perm[row] != col {
            return Err(fail(row, col));
        }
        let z = raw[(row, col)];
        let exact = if row != col {
            if skew && row < col {
                -ONE
            } else {
                ONE
            }
        } else {
            match class {
                StructureClass::Involutory => Complex64::new(z.re.signum(), 0.0),
                StructureClass::SkewInvolutory => Complex64::new(0.0, z.im.signum()),
                StructureClass::Coninvolutory => z / z.norm(),
                StructureClass::SkewConinvolutory => return Err(fail(row, col)),
            }
        };
        if (z - exact).norm() > tol {
            return Err(fail(row, col));
        }
        t[(row, col)] = exact;
    }
    Ok(t)
}

fn effective_tol(tol: f64, n: usize) -> f64 {
    tol.max(16.0 * n as f64 * f64::EPSILON)
}

/// Right singular vectors of the σ = 1 cluster, resolved per class.
struct Cluster {
    /// (right vector, tag) for single triplets.
    singles: Vec<(Vec<Complex64>, SingleTag)>,
    /// (first, partner) right vectors of σ = 1 pairs.
    pairs: Vec<(Vec<Complex64>, Vec<Complex64>)>,
}

fn resolve_cluster(
    a: &ComplexMatrix,
    q: &ComplexMatrix,
    class: StructureClass,
    defect_tol: f64,
) -> Result<Cluster> {
    let k = q.cols();
    let mut out = Cluster {
        singles: Vec::new(),
        pairs: Vec::new(),
    };
    if k == 0 {
        return Ok(out);
    }
    match class {
        StructureClass::Involutory | StructureClass::SkewInvolutory => {
            let mut m = q.adjoint().matmul(a).matmul(q);
            if class == StructureClass::SkewInvolutory {
                m = m.scale(-I);
            }
            let defect = m.sub(&m.adjoint()).norm_fro();
            if defect > defect_tol {
                return Err(Error::violation(
                    "restricted matrix on the σ = 1 subspace is not Hermitian",
                    defect,
                ));
            }
            let eig = hermitian_eig(&m)?;
            for (j, &lambda) in eig.lambda.iter().enumerate() {
                if (lambda.abs() - 1.0).abs() > defect_tol {
                    return Err(Error::violation(
                        "restricted eigenvalue on the σ = 1 subspace is not ±1",
                        (lambda.abs() - 1.0).abs(),
                    ));
                }
                let sign = if lambda > 0.0 { 1 } else { -1 };
                out.singles.push((q.matvec(eig.q.col(j)), SingleTag::Sign(sign)));
            }
        }
        StructureClass::Coninvolutory | StructureClass::SkewConinvolutory => {
            let m = q.transpose().matmul(a).matmul(q);
            let skew = class == StructureClass::SkewConinvolutory;
            let other = if skew { m.add(&m.transpose()) } else { m.sub(&m.transpose()) };
            let defect = other.norm_fro();
            if defect > defect_tol {
                return Err(Error::violation(
                    if skew {
                        "restricted matrix on the σ = 1 subspace is not skew-symmetric"
                    } else {
                        "restricted matrix on the σ = 1 subspace is not symmetric"
                    },
                    defect,
                ));
            }
            let sym = if skew {
                m.sub(&m.transpose()).scale_real(0.5)
            } else {
                m.add(&m.transpose()).scale_real(0.5)
            };
            if skew {
                let f = skew_pair_unitary(&sym, defect_tol)?;
                let half = k / 2;
                for j in 0..half {
                    let first = q.matvec(&conj_vec(f.col(j)));
                    let second: Vec<Complex64> =
                        q.matvec(&conj_vec(f.col(half + j))).iter().map(|z| -z).collect();
                    out.pairs.push((first, second));
                }
            } else {
                let f = takagi_symmetric_unitary(&sym, defect_tol)?;
                for j in 0..k {
                    out.singles.push((q.matvec(&conj_vec(f.col(j))), SingleTag::Phase(0.0)));
                }
            }
        }
    }
    Ok(out)
}

/// Rebuilds an arbitrary SVD of a structured matrix into the
/// structure-revealing one.
pub fn restructure(a: &ComplexMatrix, class: StructureClass, tol: f64) -> Result<StructuredSvd> {
    a.ensure_square()?;
    a.ensure_finite()?;
    let n = a.rows();
    if class == StructureClass::SkewConinvolutory && n % 2 != 0 {
        return Err(Error::violation(
            format!("skew-coninvolutory matrices exist only for even dimension, got n = {n}"),
            f64::INFINITY,
        ));
    }
    let report = classify(a, tol)?;
    if !report.accepts(class) {
        return Err(Error::violation(
            format!("matrix is not {class}"),
            report.residuals[&class],
        ));
    }

    let base = svd(a)?;
    let pairing = pairing_spectrum_check(&base.sigma, tol)?;
    let sigma_max = base.sigma_max();
    let ctol = cluster_tolerance(sigma_max, tol);
    let eff = effective_tol(tol, n);
    let cluster_q = base.v.select_cols(&pairing.cluster);
    let defect_tol = 1e2 * eff * sigma_max.max(1.0) * (cluster_q.cols().max(1) as f64).sqrt();
    let cluster = resolve_cluster(a, &cluster_q, class, defect_tol)?;

    let mut s: Vec<f64> = pairing.pairs.iter().map(|p| p.sigma).collect();
    let mut first: Vec<Vec<Complex64>> = pairing.pairs.iter().map(|p| base.v.col(p.large).to_vec()).collect();
    let mut second: Vec<Vec<Complex64>> = pairing
        .pairs
        .iter()
        .map(|p| {
            let u = base.u.col(p.large);
            if class.is_con() {
                conj_vec(u)
            } else {
                u.to_vec()
            }
        })
        .collect();
    for (x, y) in cluster.pairs {
        s.push(1.0);
        first.push(x);
        second.push(y);
    }

    let tags: Vec<SingleTag> = cluster.singles.iter().map(|(_, t)| *t).collect();
    let eta1 = tags
        .iter()
        .filter(|t| matches!(t, SingleTag::Sign(1) | SingleTag::Phase(_)))
        .count();
    let counts = Counts::new(s.len(), 0, tags.len(), eta1, tags.len() - eta1);
    let (d, e) = layout::split_singles(&tags, counts.delta);

    let mut v = ComplexMatrix::zeros(n, n);
    for (j, col) in first.iter().enumerate() {
        v.set_col(j, col);
        v.set_col(layout::partner(&counts, j), &second[j]);
    }
    for (pos, (col, _)) in layout::single_positions(&counts).into_iter().zip(&cluster.singles) {
        v.set_col(pos, col);
    }

    let t_exact = layout::coupling_matrix(class, &counts, &d, &e);
    let basis = if class.is_con() { v.conj() } else { v.clone() };
    let u = basis.matmul(&t_exact);
    let t = extract_t(&u, &v, class, ctol.max(1e3 * eff))?;

    let sigma = layout::sigma_layout(&counts, &s);
    let blocks = layout::blocks(&counts, &s, &tags);
    Ok(StructuredSvd {
        class,
        u,
        v,
        sigma,
        t,
        blocks,
        counts,
        d: layout::tag_value_list(&d),
        e: layout::tag_value_list(&e),
    })
}

fn rebuild(
    ssvd: &StructuredSvd,
    s: &[f64],
    first: &[Vec<Complex64>],
    second: &[Vec<Complex64>],
    mu: usize,
    singles: &[(Vec<Complex64>, SingleTag)],
) -> StructuredSvd {
    let n = ssvd.n();
    let class = ssvd.class;
    let tags: Vec<SingleTag> = singles.iter().map(|(_, t)| *t).collect();
    let eta1 = tags
        .iter()
        .filter(|t| matches!(t, SingleTag::Sign(1) | SingleTag::Phase(_)))
        .count();
    let counts = Counts::new(s.len(), mu, tags.len(), eta1, tags.len() - eta1);
    let (d, e) = layout::split_singles(&tags, counts.delta);
    let mut v = ComplexMatrix::zeros(n, n);
    for j in 0..first.len() {
        v.set_col(j, &first[j]);
        v.set_col(layout::partner(&counts, j), &second[j]);
    }
    for (pos, (col, _)) in layout::single_positions(&counts).into_iter().zip(singles) {
        v.set_col(pos, col);
    }
    let t = layout::coupling_matrix(class, &counts, &d, &e);
    let basis = if class.is_con() { v.conj() } else { v.clone() };
    StructuredSvd {
        class,
        u: basis.matmul(&t),
        v,
        sigma: layout::sigma_layout(&counts, s)
            .into_iter()
            .collect(),
        t,
        blocks: layout::blocks(&counts, s, &tags),
        counts,
        d: layout::tag_value_list(&d),
        e: layout::tag_value_list(&e),
    }
}

fn split_columns(ssvd: &StructuredSvd) -> (Vec<f64>, Vec<Vec<Complex64>>, Vec<Vec<Complex64>>) {
    let c = &ssvd.counts;
    let s = ssvd.sigma[..c.nu].to_vec();
    let first = (0..c.nu + c.mu).map(|j| ssvd.v.col(j).to_vec()).collect();
    let second = (0..c.nu + c.mu)
        .map(|j| ssvd.v.col(layout::partner(c, j)).to_vec())
        .collect();
    (s, first, second)
}

/// Display layout with (1, 1) pairs: each (+) single is combined with a (−)
/// single into the two triplets of a `PairedOne` block, reproducing the
/// layout with μ > 0. Involutory and skew-involutory only.
pub fn with_paired_ones(ssvd: &StructuredSvd) -> Result<StructuredSvd> {
    if ssvd.class.is_con() {
        return Err(Error::Class {
            expected: "involutory or skew-involutory",
            got: ssvd.class,
        });
    }
    let (s, mut first, mut second) = split_columns(ssvd);
    let singles: Vec<(Vec<Complex64>, SingleTag)> = ssvd
        .single_columns()
        .into_iter()
        .zip(ssvd.single_tags())
        .map(|(j, t)| (ssvd.v.col(j).to_vec(), t))
        .collect();
    let plus: Vec<&Vec<Complex64>> = singles
        .iter()
        .filter(|(_, t)| *t == SingleTag::Sign(1))
        .map(|(c, _)| c)
        .collect();
    let minus: Vec<&Vec<Complex64>> = singles
        .iter()
        .filter(|(_, t)| *t == SingleTag::Sign(-1))
        .map(|(c, _)| c)
        .collect();
    let mu = plus.len().min(minus.len());
    let r = std::f64::consts::FRAC_1_SQRT_2;
    // A(q₊ + q₋)/√2 is (q₊ − q₋)/√2 (involutory) or ι(q₊ − q₋)/√2 (skew);
    // that image is the partner right vector.
    let image_scale = if ssvd.class == StructureClass::SkewInvolutory { I } else { ONE };
    let mut pair_first = Vec::with_capacity(mu);
    let mut pair_second = Vec::with_capacity(mu);
    for (p, m) in plus.iter().zip(&minus).take(mu) {
        pair_first.push(p.iter().zip(m.iter()).map(|(a, b)| (a + b) * r).collect::<Vec<_>>());
        pair_second.push(
            p.iter()
                .zip(m.iter())
                .map(|(a, b)| (a - b) * r * image_scale)
                .collect::<Vec<_>>(),
        );
    }
    let nu = s.len();
    first.truncate(nu);
    second.truncate(nu);
    first.extend(pair_first);
    second.extend(pair_second);
    let rest: Vec<(Vec<Complex64>, SingleTag)> = plus[mu..]
        .iter()
        .map(|c| ((*c).clone(), SingleTag::Sign(1)))
        .chain(minus[mu..].iter().map(|c| ((*c).clone(), SingleTag::Sign(-1))))
        .collect();
    Ok(rebuild(ssvd, &s, &first, &second, ssvd.counts.mu + mu, &rest))
}

/// Coninvolutory display layout with prescribed single phases: each single
/// `(u, ū·e^{ια₀}, 1)` becomes `(u·e^{ιβ}, v·e^{ιβ}, 1)` with `β = (α − α₀)/2`,
/// which has phase α.
pub fn with_phases(ssvd: &StructuredSvd, phases: &[f64]) -> Result<StructuredSvd> {
    if ssvd.class != StructureClass::Coninvolutory {
        return Err(Error::Class {
            expected: "coninvolutory",
            got: ssvd.class,
        });
    }
    let cols = ssvd.single_columns();
    if phases.len() != cols.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} phases, got {}",
            cols.len(),
            phases.len()
        )));
    }
    let (s, first, second) = split_columns(ssvd);
    let singles: Vec<(Vec<Complex64>, SingleTag)> = cols
        .iter()
        .zip(ssvd.single_tags())
        .zip(phases)
        .map(|((&j, tag), &alpha)| {
            let current = match tag {
                SingleTag::Phase(a) => a,
                SingleTag::Sign(s) => if s > 0 { 0.0 } else { std::f64::consts::PI },
            };
            let rot = unit_phase((alpha - current) / 2.0);
            let col = ssvd.v.col(j).iter().map(|z| z * rot).collect();
            (col, SingleTag::phase(alpha))
        })
        .collect();
    Ok(rebuild(ssvd, &s, &first, &second, ssvd.counts.mu, &singles))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let p = pairing_spectrum_check(&[2.0, 1.0, 0.5], 1e-10).unwrap();
        assert_eq!(p.pairs.len(), 1);
        assert_eq!((p.pairs[0].sigma, p.pairs[0].partner), (2.0, 0.5));
        assert_eq!(p.cluster, vec![1]);

        let p = pairing_spectrum_check(&[3.0, 2.0, 0.5, 1.0 / 3.0], 1e-10).unwrap();
        let got: Vec<(usize, usize)> = p.pairs.iter().map(|m| (m.large, m.small)).collect();
        assert_eq!(got, vec![(0, 3), (1, 2)]);
        assert!(p.cluster.is_empty());

        let p = pairing_spectrum_check(&[1.0; 4], 1e-10).unwrap();
        assert!(p.pairs.is_empty());
        assert_eq!(p.cluster, vec![0, 1, 2, 3]);
    }

    #[test]
    fn pairing_matches_brute_force() {
        // Oracle: among all perfect matchings of the non-unit values, exactly
        // one pairs every value with its reciprocal.
        let sigma: [f64; 4] = [3.0, 2.0, 0.5, 1.0 / 3.0];
        let idx = [0usize, 1, 2, 3];
        let mut valid = Vec::new();
        for &partner_of_0 in &idx[1..] {
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&k| k != partner_of_0).collect();
            let m = [(0, partner_of_0), (rest[0], rest[1])];
            if m.iter().all(|&(a, b)| (sigma[a] * sigma[b] - 1.0).abs() < 1e-12) {
                valid.push(m);
            }
        }
        assert_eq!(valid, vec![[(0, 3), (1, 2)]]);
    }

    #[test]
    fn pairing_orphans() {
        assert_eq!(
            pairing_spectrum_check(&[3.0, 1.0, 1.0], 1e-10),
            Err(Error::Pairing { orphan: 3.0 })
        );
        assert_eq!(
            pairing_spectrum_check(&[2.0, 0.5, 0.5], 1e-10),
            Err(Error::Pairing { orphan: 0.5 })
        );
        assert_eq!(
            pairing_spectrum_check(&[0.9, 0.9], 1e-10),
            Err(Error::Pairing { orphan: 0.9 })
        );
        assert!(pairing_spectrum_check(&[0.5, 2.0], 1e-10).is_err());
    }

    #[test]
    fn extract_t_examples() {
        let id = ComplexMatrix::identity(3);
        assert_eq!(extract_t(&id, &id, StructureClass::Involutory, 1e-10).unwrap(), id);

        let swap = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let v = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let u = ComplexMatrix::identity(2);
        assert_eq!(extract_t(&u, &v, StructureClass::Involutory, 1e-10).unwrap(), swap);

        let minus_j = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let t = extract_t(&minus_j, &ComplexMatrix::identity(2), StructureClass::SkewConinvolutory, 1e-10).unwrap();
        assert_eq!(t, minus_j);
    }

    #[test]
    fn extract_t_reports_offending_entry() {
        let v = ComplexMatrix::identity(2);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = ComplexMatrix::from_real_rows(&[&[s, s], &[-s, s]]);
        match extract_t(&u, &v, StructureClass::Involutory, 1e-10) {
            Err(Error::Coupling { row, col, .. }) => assert_eq!((row, col), (1, 0)),
            other => panic!("expected coupling error, got {other:?}"),
        }
        // a fixed point is not allowed for the skew-coninvolutory class
        assert!(extract_t(&v, &v, StructureClass::SkewConinvolutory, 1e-10).is_err());
    }

    #[test]
    fn restructure_antidiagonal_pair() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 0.0]]);
        let s = restructure(&a, StructureClass::Involutory, 1e-10).unwrap();
        assert_eq!(s.sigma, vec![2.0, 0.5]);
        assert_eq!(s.counts.nu, 1);
        assert_eq!(s.t, ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]));
        assert!(matches!(s.blocks[..], [TripletBlock::ReciprocalPair { sigma, columns: (0, 1) }] if sigma == 2.0));
        assert!(s.reconstruct().sub(&a).norm_fro() < 1e-15);
    }

    #[test]
    fn restructure_signed_diagonal_signs() {
        let a = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        let s = restructure(&a, StructureClass::Involutory, 1e-10).unwrap();
        assert_eq!(s.sigma, vec![1.0; 4]);
        assert_eq!(
            s.single_tags(),
            vec![SingleTag::Sign(1), SingleTag::Sign(1), SingleTag::Sign(1), SingleTag::Sign(-1)]
        );
        assert_eq!((s.counts.eta1, s.counts.eta2, s.counts.delta, s.counts.eta), (3, 1, 2, 2));
        assert!(s.reconstruct().sub(&a).norm_fro() < 1e-14);
    }

    #[test]
    fn restructure_minus_j() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, -1.0], &[1.0, 0.0]]);
        let s = restructure(&a, StructureClass::SkewConinvolutory, 1e-10).unwrap();
        assert_eq!(s.counts.nu, 1);
        assert!(matches!(s.blocks[..], [TripletBlock::ReciprocalPair { sigma, .. }] if sigma == 1.0));
        assert_eq!(s.coupling_residual(), 0.0);
        // U = −V̄·J₁
        let law = s.v.conj().matmul(&crate::kernel::j_matrix(1)).scale_real(-1.0);
        assert_eq!(s.u, law);
        assert!(s.reconstruct().sub(&a).norm_fro() < 1e-15);
    }

    #[test]
    fn restructure_rejects_wrong_class_and_odd() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 2.0], &[0.5, 0.0]]);
        assert!(matches!(
            restructure(&a, StructureClass::SkewInvolutory, 1e-10),
            Err(Error::StructureViolation { .. })
        ));
        assert!(matches!(
            restructure(&ComplexMatrix::identity(3), StructureClass::SkewConinvolutory, 1e-10),
            Err(Error::StructureViolation { .. })
        ));
    }

    #[test]
    fn scalar_cases() {
        for sign in [1.0, -1.0] {
            let a = ComplexMatrix::from_real_diag(&[sign]);
            let s = restructure(&a, StructureClass::Involutory, 1e-10).unwrap();
            assert_eq!(s.single_tags(), vec![SingleTag::Sign(sign as i8)]);
        }
        let a = ComplexMatrix::from_diag(&[Complex64::from_polar(1.0, 0.7)]);
        let s = restructure(&a, StructureClass::Coninvolutory, 1e-10).unwrap();
        assert_eq!(s.single_tags(), vec![SingleTag::Phase(0.0)]);
        assert!(s.reconstruct().sub(&a).norm_fro() < 1e-15);
        let bad = ComplexMatrix::from_diag(&[Complex64::new(1.5, 0.0)]);
        assert!(restructure(&bad, StructureClass::Coninvolutory, 1e-10).is_err());
    }

    #[test]
    fn paired_ones_layout_signed_diagonal() {
        let a = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        let s = restructure(&a, StructureClass::Involutory, 1e-10).unwrap();
        let p = with_paired_ones(&s).unwrap();
        assert_eq!((p.counts.mu, p.counts.eta1, p.counts.eta2), (1, 2, 0));
        assert!(p.reconstruct().sub(&a).norm_fro() < 1e-14);
        assert!(p.v.unitarity_defect() < 1e-14);
        assert_eq!(extract_t(&p.u, &p.v, StructureClass::Involutory, 1e-10).unwrap(), p.t);
    }
}
