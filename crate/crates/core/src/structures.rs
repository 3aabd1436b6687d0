//! The four structure classes: membership tests and random generators with
//! known spectral ground truth.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{householder_qr, j_matrix, right_divide, ComplexMatrix, ONE};
use crate::structured_svd::{layout, Counts, SingleTag, StructuredSvd};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureClass {
    /// A² = I
    Involutory,
    /// A² = −I
    SkewInvolutory,
    /// A·Ā = I
    Coninvolutory,
    /// A·Ā = −I
    SkewConinvolutory,
}

impl StructureClass {
    pub const ALL: [StructureClass; 4] = [
        StructureClass::Involutory,
        StructureClass::SkewInvolutory,
        StructureClass::Coninvolutory,
        StructureClass::SkewConinvolutory,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureClass::Involutory => "involutory",
            StructureClass::SkewInvolutory => "skew-involutory",
            StructureClass::Coninvolutory => "coninvolutory",
            StructureClass::SkewConinvolutory => "skew-coninvolutory",
        }
    }

    /// Classes whose coupling involves complex conjugation (`U = V̄·T`).
    pub fn is_con(self) -> bool {
        matches!(
            self,
            StructureClass::Coninvolutory | StructureClass::SkewConinvolutory
        )
    }

    /// Unscaled residual ‖A² ∓ I‖ or ‖A·Ā ∓ I‖ in the Frobenius norm.
    pub fn defining_residual(self, a: &ComplexMatrix) -> f64 {
        let id = ComplexMatrix::identity(a.rows());
        let prod = if self.is_con() { a.matmul(&a.conj()) } else { a.matmul(a) };
        match self {
            StructureClass::Involutory | StructureClass::Coninvolutory => prod.sub(&id).norm_fro(),
            _ => prod.add(&id).norm_fro(),
        }
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StructureClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown structure class '{s}'")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    /// Defining residual divided by max(1, ‖A‖²_F).
    pub residuals: BTreeMap<StructureClass, f64>,
    pub accepted: Vec<StructureClass>,
    pub tol: f64,
}

impl ClassificationReport {
    pub fn accepts(&self, class: StructureClass) -> bool {
        self.accepted.contains(&class)
    }
}

pub fn classify(a: &ComplexMatrix, tol: f64) -> Result<ClassificationReport> {
    a.ensure_square()?;
    a.ensure_finite()?;
    let scale = a.norm_fro().powi(2).max(1.0);
    let odd = a.rows() % 2 == 1;
    let mut residuals = BTreeMap::new();
    let mut accepted = Vec::new();
    for class in StructureClass::ALL {
        let r = class.defining_residual(a) / scale;
        residuals.insert(class, r);
        // A·Ā = −I forces det(A)·conj(det(A)) = (−1)ⁿ, impossible for odd n.
        let excluded = class == StructureClass::SkewConinvolutory && odd;
        if r <= tol && !excluded {
            accepted.push(class);
        }
    }
    Ok(ClassificationReport {
        residuals,
        accepted,
        tol,
    })
}

/// Parameters of a generated structured matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub n: usize,
    /// Number of reciprocal pairs (σ, 1/σ).
    pub nu: usize,
    /// The ν values σ of the pairs.
    pub sigmas: Vec<f64>,
    /// Single σ = 1 triplets with sign +1 (phase 0).
    pub eta1: usize,
    /// Single σ = 1 triplets with sign −1 (phase π).
    pub eta2: usize,
    /// Coninvolutory only: explicit phases for the η₁ + η₂ singles.
    pub phases: Option<Vec<f64>>,
    pub seed: u64,
    /// Upper bound on σ₁.
    pub conditioning: f64,
}

impl GeneratorSpec {
    pub const DEFAULT_CONDITIONING: f64 = 1e6;

    pub fn new(n: usize, sigmas: Vec<f64>, eta1: usize, eta2: usize, seed: u64) -> Self {
        Self {
            n,
            nu: sigmas.len(),
            sigmas,
            eta1,
            eta2,
            phases: None,
            seed,
            conditioning: Self::DEFAULT_CONDITIONING,
        }
    }

    fn validate(&self, class: StructureClass) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if self.n == 0 {
            return bad("n must be positive".into());
        }
        if self.sigmas.len() != self.nu {
            return bad(format!("nu = {} but {} sigmas given", self.nu, self.sigmas.len()));
        }
        if 2 * self.nu + self.eta1 + self.eta2 != self.n {
            return bad(format!(
                "2·nu + eta1 + eta2 = {} must equal n = {}",
                2 * self.nu + self.eta1 + self.eta2,
                self.n
            ));
        }
        let skew_con = class == StructureClass::SkewConinvolutory;
        if skew_con && (self.eta1 != 0 || self.eta2 != 0 || self.n % 2 != 0) {
            return bad("skew-coninvolutory matrices have even n and no single triplets".into());
        }
        for &s in &self.sigmas {
            let ok = s.is_finite() && if skew_con { s >= 1.0 } else { s > 1.0 };
            if !ok {
                return bad(format!("sigma {s} must be {} 1", if skew_con { ">=" } else { ">" }));
            }
            if s > self.conditioning {
                return bad(format!("sigma {s} exceeds conditioning cap {}", self.conditioning));
            }
        }
        if let Some(p) = &self.phases {
            if class != StructureClass::Coninvolutory {
                return bad("phases apply to coninvolutory matrices only".into());
            }
            if p.len() != self.eta1 + self.eta2 || p.iter().any(|x| !x.is_finite()) {
                return bad(format!("expected {} finite phases", self.eta1 + self.eta2));
            }
        }
        Ok(())
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Haar-distributed unitary matrix: QR of a complex Gaussian matrix with the
/// diagonal of R made positive.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    householder_qr(&g).q
}

/// Random member of `class` with the structure in `spec`, built as
/// `A = W·(TΣ)·Vᴴ` around a Haar-random `V` (W = V, or V̄ for the con classes).
pub fn gen_structured(class: StructureClass, spec: &GeneratorSpec) -> Result<(ComplexMatrix, StructuredSvd)> {
    spec.validate(class)?;
    let mut rng = rng_from_seed(spec.seed);
    let v = haar_unitary(spec.n, &mut rng);
    gen_structured_with_basis(class, spec, &v)
}

/// As [`gen_structured`] with a caller-supplied unitary `V`.
pub fn gen_structured_with_basis(
    class: StructureClass,
    spec: &GeneratorSpec,
    v: &ComplexMatrix,
) -> Result<(ComplexMatrix, StructuredSvd)> {
    spec.validate(class)?;
    if v.rows() != spec.n || v.cols() != spec.n {
        return Err(Error::Dimension(format!("basis must be {0}x{0}", spec.n)));
    }
    let mut s = spec.sigmas.clone();
    s.sort_by(|a, b| b.total_cmp(a));

    let k = spec.eta1 + spec.eta2;
    let tags: Vec<SingleTag> = match (class, &spec.phases) {
        (StructureClass::Coninvolutory, Some(p)) => p.iter().map(|&a| SingleTag::phase(a)).collect(),
        (StructureClass::Coninvolutory, None) => (0..k)
            .map(|i| SingleTag::phase(if i < spec.eta1 { 0.0 } else { std::f64::consts::PI }))
            .collect(),
        _ => (0..k).map(|i| SingleTag::Sign(if i < spec.eta1 { 1 } else { -1 })).collect(),
    };
    let counts = Counts::new(spec.nu, 0, k, spec.eta1, spec.eta2);
    let (d, e) = layout::split_singles(&tags, counts.delta);

    let sigma = layout::sigma_layout(&counts, &s);
    let t = layout::coupling_matrix(class, &counts, &d, &e);
    let w = if class.is_con() { v.conj() } else { v.clone() };
    let u = w.matmul(&t);
    let a = u.scale_cols_real(&sigma).matmul(&v.adjoint());
    let blocks = layout::blocks(&counts, &s, &tags);
    let truth = StructuredSvd {
        class,
        u,
        v: v.clone(),
        sigma,
        t,
        blocks,
        counts,
        d: d.iter().map(SingleTag::value).collect(),
        e: e.iter().map(SingleTag::value).collect(),
    };
    Ok((a, truth))
}

/// Consimilarity image of the identity (`S·S̄⁻¹`) or of −J (`S·(−J)·S̄⁻¹`).
pub fn consim_from(class: StructureClass, s: &ComplexMatrix) -> Result<ComplexMatrix> {
    s.ensure_square()?;
    let n = s.rows();
    let core = match class {
        StructureClass::Coninvolutory => s.clone(),
        StructureClass::SkewConinvolutory => {
            if n % 2 != 0 {
                return Err(Error::InvalidSpec(format!(
                    "skew-coninvolutory matrices exist only for even n, got {n}"
                )));
            }
            s.matmul(&j_matrix(n / 2).scale_real(-1.0))
        }
        other => {
            return Err(Error::InvalidSpec(format!(
                "consimilarity generator covers the con classes only, got {other}"
            )))
        }
    };
    right_divide(&core, &s.conj())
}

/// Random member built by consimilarity from a well-conditioned random `S`
/// (singular values in [e⁻¹, e]).
pub fn gen_consim(class: StructureClass, n: usize, seed: u64) -> Result<ComplexMatrix> {
    if class == StructureClass::SkewConinvolutory && n % 2 != 0 {
        return Err(Error::InvalidSpec(format!(
            "skew-coninvolutory matrices exist only for even n, got {n}"
        )));
    }
    let s = random_well_conditioned(n, seed);
    consim_from(class, &s)
}

pub fn random_well_conditioned(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    let q1 = haar_unitary(n, &mut rng);
    let q2 = haar_unitary(n, &mut rng);
    let d: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0f64..1.0).exp()).collect();
    q1.scale_cols_real(&d).matmul(&q2)
}

/// Random real `n×n` generator with entries uniform in [−scale, scale].
pub fn random_real(n: usize, scale: f64, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-scale..=scale), 0.0))
}

pub(crate) fn unit_phase(alpha: f64) -> Complex64 {
    if alpha == 0.0 {
        ONE
    } else {
        Complex64::from_polar(1.0, alpha)
    }
}
