use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use structsvd::canonical::{
    canonical_form, coneigen_residual, coneigen_singles, consim_identity_residual, consim_minus_j_residual,
    consim_to_identity, consim_to_minus_j, eigendecompose,
};
use structsvd::kernel::svd;
use structsvd::projector::{householder_singular_values, projector, projector_svd, ProjectorSign};
use structsvd::structures::{gen_structured, ClassificationReport, GeneratorSpec};
use structsvd::{classify, restructure, ComplexMatrix, Error, StructureClass, StructuredSvd};

use crate::error::{CliError, CliResult};
use crate::mtx::{read_matrix, write_matrix, write_values};
use crate::report::*;

/// A finished command: the JSON document and the process exit code.
pub struct Outcome {
    pub json: String,
    pub exit_code: i32,
}

impl Outcome {
    fn new<T: Serialize>(command: &'static str, body: T, passed: bool) -> CliResult<Self> {
        let json = serde_json::to_string_pretty(&Envelope::new(command, body))
            .map_err(|e| CliError::Usage(format!("cannot serialize report: {e}")))?;
        Ok(Self {
            json,
            exit_code: if passed { 0 } else { 2 },
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassArg {
    Auto,
    Fixed(StructureClass),
}

impl FromStr for ClassArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(ClassArg::Auto);
        }
        StructureClass::from_str(s).map(ClassArg::Fixed).map_err(|e| e.to_string())
    }
}

/// Accepted class with the smallest residual; ties go to the earlier class
/// in declaration order, so real involutory input resolves to involutory.
fn auto_class(report: &ClassificationReport) -> Option<StructureClass> {
    StructureClass::ALL
        .into_iter()
        .filter(|c| report.accepts(*c))
        .min_by(|a, b| report.residuals[a].total_cmp(&report.residuals[b]))
}

fn resolve_class(arg: ClassArg, report: &ClassificationReport) -> CliResult<StructureClass> {
    match arg {
        ClassArg::Fixed(c) => Ok(c),
        ClassArg::Auto => auto_class(report).ok_or_else(|| {
            let best = report.residuals.values().copied().fold(f64::INFINITY, f64::min);
            CliError::Library(Error::StructureViolation {
                message: "matrix belongs to none of the four classes".into(),
                residual: best,
            })
        }),
    }
}

fn threshold(tol: f64, n: usize, sigma1: f64) -> f64 {
    tol * n.max(1) as f64 * sigma1.max(1.0)
}

fn load_square(path: &Path) -> CliResult<ComplexMatrix> {
    let a = read_matrix(path)?;
    a.ensure_square()?;
    Ok(a)
}

fn write_factors(
    dir: &Path,
    entries: &[(&'static str, &ComplexMatrix)],
    values: (&'static str, &[f64]),
) -> CliResult<BTreeMap<&'static str, String>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = BTreeMap::new();
    for (name, m) in entries {
        let path = dir.join(name);
        write_matrix(&path, m)?;
        files.insert(*name, path.display().to_string());
    }
    let path = dir.join(values.0);
    write_values(&path, values.1)?;
    files.insert(values.0, path.display().to_string());
    Ok(files)
}

pub fn classify_cmd(path: &Path, class: ClassArg, tol: f64) -> CliResult<Outcome> {
    let a = load_square(path)?;
    let classification = classify(&a, tol)?;
    let chosen = auto_class(&classification);
    let passed = match class {
        ClassArg::Auto => chosen.is_some(),
        ClassArg::Fixed(c) => classification.accepts(c),
    };
    let class = match class {
        ClassArg::Auto => chosen,
        ClassArg::Fixed(c) => Some(c).filter(|c| classification.accepts(*c)),
    };
    Outcome::new(
        "classify",
        ClassifyBody {
            input: InputDigest::of(&a),
            classification,
            class,
        },
        passed,
    )
}

/// `‖AX − XΛ‖` for the similarity classes, the consimilarity residual for
/// the con classes.
fn eigen_residual(a: &ComplexMatrix, s: &StructuredSvd) -> CliResult<f64> {
    Ok(match s.class {
        StructureClass::Involutory | StructureClass::SkewInvolutory => eigendecompose(s)?.residual(a),
        StructureClass::Coninvolutory => consim_identity_residual(a, &consim_to_identity(s)?)?,
        StructureClass::SkewConinvolutory => consim_minus_j_residual(a, &consim_to_minus_j(s)?)?,
    })
}

pub fn decompose_cmd(path: &Path, class: ClassArg, tol: f64, out: Option<&Path>) -> CliResult<Outcome> {
    let a = load_square(path)?;
    let classification = classify(&a, tol)?;
    let class = resolve_class(class, &classification)?;
    let s = restructure(&a, class, tol)?;
    let n = a.rows();
    let sigma_sorted = s.sorted_sigma();
    let residuals = Residuals {
        reconstruction: a.sub(&s.reconstruct()).norm_fro(),
        coupling: s.coupling_residual(),
        canonical: canonical_form(&s).residual(&a)?,
        eigen: eigen_residual(&a, &s)?,
        unitarity_u: s.u.unitarity_defect(),
        unitarity_v: s.v.unitarity_defect(),
        threshold: threshold(tol, n, sigma_sorted.first().copied().unwrap_or(0.0)),
    };
    let files = match out {
        Some(dir) => write_factors(dir, &[("U.mtx", &s.u), ("V.mtx", &s.v), ("T.mtx", &s.t)], ("sigma.txt", &s.sigma))?,
        None => BTreeMap::new(),
    };
    let passed = residuals.all_within();
    Outcome::new(
        "decompose",
        DecompositionReport {
            input: InputDigest::of(&a),
            classification,
            class,
            counts: s.counts,
            sigma: s.sigma.clone(),
            sigma_sorted,
            blocks: s.blocks.clone(),
            residuals,
            passed,
            files,
        },
        passed,
    )
}

pub struct GenerateArgs {
    pub class: StructureClass,
    pub n: usize,
    pub nu: Option<usize>,
    pub sigmas: Vec<f64>,
    pub eta1: Option<usize>,
    pub eta2: Option<usize>,
    pub phases: Option<Vec<f64>>,
    pub seed: u64,
    pub out: PathBuf,
}

pub fn generate_cmd(args: &GenerateArgs) -> CliResult<Outcome> {
    let nu = args.nu.unwrap_or(args.sigmas.len());
    let singles = args.n.saturating_sub(2 * nu);
    let eta2 = args.eta2.unwrap_or(singles.saturating_sub(args.eta1.unwrap_or(singles)));
    let eta1 = args.eta1.unwrap_or(singles.saturating_sub(eta2));
    let spec = GeneratorSpec {
        n: args.n,
        nu,
        sigmas: args.sigmas.clone(),
        eta1,
        eta2,
        phases: args.phases.clone(),
        seed: args.seed,
        conditioning: GeneratorSpec::DEFAULT_CONDITIONING,
    };
    let (a, truth) = gen_structured(args.class, &spec)?;
    let files = write_factors(
        &args.out,
        &[("A.mtx", &a), ("U.mtx", &truth.u), ("V.mtx", &truth.v), ("T.mtx", &truth.t)],
        ("sigma.txt", &truth.sigma),
    )?;
    Outcome::new(
        "generate",
        GenerateReport {
            class: args.class,
            spec,
            output: InputDigest::of(&a),
            counts: truth.counts,
            sigma: truth.sigma.clone(),
            blocks: truth.blocks.clone(),
            files,
        },
        true,
    )
}

pub fn project_cmd(path: &Path, sign: ProjectorSign, tol: f64, out: Option<&Path>) -> CliResult<Outcome> {
    let a = load_square(path)?;
    let b = projector(&a, sign, tol)?;
    let s = restructure(&a, StructureClass::Involutory, tol)?;
    let p = projector_svd(&s, sign)?;
    let kernel = svd(&b)?.sigma;
    let householder_sigma = householder_singular_values(&a, tol)?;
    let b_norm = kernel.first().copied().unwrap_or(0.0);
    let residuals = ProjectResiduals {
        factorization: b.sub(&p.svd.reconstruct()).norm_fro(),
        idempotency: b.matmul(&b).sub(&b).norm_fro(),
        kernel_agreement: kernel
            .iter()
            .zip(&p.svd.sigma)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max),
        threshold: threshold(tol, a.rows(), b_norm),
    };
    let passed = residuals.factorization <= residuals.threshold
        && residuals.idempotency <= residuals.threshold
        && residuals.kernel_agreement <= residuals.threshold;
    let files = match out {
        Some(dir) => write_factors(
            dir,
            &[("B.mtx", &b), ("U.mtx", &p.svd.u), ("V.mtx", &p.svd.v)],
            ("sigma.txt", &p.svd.sigma),
        )?,
        None => BTreeMap::new(),
    };
    Outcome::new(
        "project",
        ProjectReport {
            input: InputDigest::of(&a),
            sign,
            sigma_b: p.svd.sigma.clone(),
            householder_sigma,
            construction: p.construction,
            residuals,
            passed,
            files,
        },
        passed,
    )
}

pub fn verify_cmd(path: &Path, class: ClassArg, tol: f64) -> CliResult<Outcome> {
    let a = load_square(path)?;
    let classification = classify(&a, tol)?;
    let class = resolve_class(class, &classification)?;
    // Surfaces the precise structural reason (e.g. odd dimension) as an error.
    let s = restructure(&a, class, tol)?;
    let n = a.rows();
    let sigma1 = s.sorted_sigma().first().copied().unwrap_or(0.0);
    let limit = threshold(tol, n, sigma1);

    let kernel = svd(&a)?.sigma;
    let pairing = (0..n / 2)
        .map(|j| (kernel[j] * kernel[n - 1 - j] - 1.0).abs())
        .fold(0.0, f64::max);
    let mut checks = vec![
        Check::new("defining_residual", classification.residuals[&class], tol),
        Check::new("reciprocal_pairing", pairing, limit.max(tol.max(1e-8) * sigma1)),
        Check::new("reconstruction", a.sub(&s.reconstruct()).norm_fro(), limit),
        Check::new("coupling", s.coupling_residual(), limit),
        Check::new("canonical", canonical_form(&s).residual(&a)?, limit),
        Check::new("eigen", eigen_residual(&a, &s)?, limit),
    ];
    if class == StructureClass::Coninvolutory {
        let worst = coneigen_singles(&s)?
            .iter()
            .map(|(q, l)| coneigen_residual(&a, q, *l))
            .fold(0.0, f64::max);
        checks.push(Check::new("coneigen", worst, limit));
    }
    let passed = checks.iter().all(|c| c.passed);
    Outcome::new(
        "verify",
        VerifyReport {
            input: InputDigest::of(&a),
            class,
            classification,
            checks,
            passed,
        },
        passed,
    )
}

pub fn error_outcome(command: &'static str, err: &CliError) -> String {
    let body = ErrorBody {
        error: err.to_string(),
        exit_code: err.exit_code(),
    };
    serde_json::to_string_pretty(&Envelope::new(command, body)).unwrap_or_default()
}
