//! JSON report documents. Every residual is recomputed from the emitted
//! factors right before serialization.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest as _, Sha256};
use structsvd::structured_svd::{Counts, TripletBlock};
use structsvd::structures::{ClassificationReport, GeneratorSpec};
use structsvd::{ComplexMatrix, StructureClass};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: u32,
    pub command: &'static str,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(command: &'static str, body: T) -> Self {
        Self {
            schema: SCHEMA,
            command,
            body,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InputDigest {
    pub rows: usize,
    pub cols: usize,
    pub frobenius_norm: f64,
    /// SHA-256 of the column-major little-endian (re, im) bytes.
    pub sha256: String,
}

impl InputDigest {
    pub fn of(m: &ComplexMatrix) -> Self {
        let mut hasher = Sha256::new();
        for z in m.as_slice() {
            hasher.update(z.re.to_le_bytes());
            hasher.update(z.im.to_le_bytes());
        }
        let sha256 = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            frobenius_norm: m.norm_fro(),
            sha256,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ClassifyBody {
    pub input: InputDigest,
    pub classification: ClassificationReport,
    /// Accepted class with the smallest residual, if any.
    pub class: Option<StructureClass>,
}

#[derive(Debug, Serialize)]
pub struct Residuals {
    pub reconstruction: f64,
    pub coupling: f64,
    pub canonical: f64,
    /// Eigenvector residual ‖AX − XΛ‖ (involutory classes) or
    /// consimilarity residual (con classes).
    pub eigen: f64,
    pub unitarity_u: f64,
    pub unitarity_v: f64,
    pub threshold: f64,
}

impl Residuals {
    pub fn all_within(&self) -> bool {
        [
            self.reconstruction,
            self.coupling,
            self.canonical,
            self.eigen,
            self.unitarity_u,
            self.unitarity_v,
        ]
        .iter()
        .all(|&r| r <= self.threshold)
    }
}

#[derive(Debug, Serialize)]
pub struct DecompositionReport {
    pub input: InputDigest,
    pub classification: ClassificationReport,
    pub class: StructureClass,
    pub counts: Counts,
    /// Block layout order.
    pub sigma: Vec<f64>,
    pub sigma_sorted: Vec<f64>,
    pub blocks: Vec<TripletBlock>,
    pub residuals: Residuals,
    pub passed: bool,
    pub files: BTreeMap<&'static str, String>,
}

#[derive(Debug, Serialize)]
pub struct GenerateReport {
    pub class: StructureClass,
    pub spec: GeneratorSpec,
    pub output: InputDigest,
    pub counts: Counts,
    pub sigma: Vec<f64>,
    pub blocks: Vec<TripletBlock>,
    pub files: BTreeMap<&'static str, String>,
}

#[derive(Debug, Serialize)]
pub struct ProjectReport {
    pub input: InputDigest,
    pub sign: structsvd::projector::ProjectorSign,
    pub sigma_b: Vec<f64>,
    pub householder_sigma: Vec<f64>,
    pub construction: structsvd::projector::ProjectorConstruction,
    pub residuals: ProjectResiduals,
    pub passed: bool,
    pub files: BTreeMap<&'static str, String>,
}

#[derive(Debug, Serialize)]
pub struct ProjectResiduals {
    pub factorization: f64,
    pub idempotency: f64,
    /// max |σ_B − σ_kernel| against an independent SVD of B.
    pub kernel_agreement: f64,
    pub threshold: f64,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl Check {
    pub fn new(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            passed: value <= threshold,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub input: InputDigest,
    pub class: StructureClass,
    pub classification: ClassificationReport,
    pub checks: Vec<Check>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct ErrorBody {
    pub error: String,
    pub exit_code: i32,
}
