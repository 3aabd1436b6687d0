#![allow(dead_code)]

use rand::Rng;
use structsvd::structures::{gen_structured, rng_from_seed, GeneratorSpec};
use structsvd::{ComplexMatrix, StructureClass, StructuredSvd};

pub struct Instance {
    pub a: ComplexMatrix,
    pub truth: StructuredSvd,
    pub spec: GeneratorSpec,
}

/// Random spec for `class`: n in [2, n_max], pair values log-uniform in
/// [1.1, sigma_cap], random single signs.
pub fn random_spec(class: StructureClass, seed: u64, n_max: usize, sigma_cap: f64) -> GeneratorSpec {
    let mut rng = rng_from_seed(seed ^ 0x5eed_0f_c0ffee);
    let mut n: usize = rng.random_range(2..=n_max);
    if class == StructureClass::SkewConinvolutory && n % 2 == 1 {
        n -= 1;
    }
    let nu = if class == StructureClass::SkewConinvolutory {
        n / 2
    } else {
        rng.random_range(0..=n / 2)
    };
    let (lo, hi) = (1.1f64.ln(), sigma_cap.ln());
    let sigmas: Vec<f64> = (0..nu).map(|_| rng.random_range(lo..=hi).exp()).collect();
    let k = n - 2 * nu;
    let eta1 = if k == 0 { 0 } else { rng.random_range(0..=k) };
    GeneratorSpec::new(n, sigmas, eta1, k - eta1, seed)
}

pub fn corpus(class: StructureClass, count: usize, n_max: usize, sigma_cap: f64, salt: u64) -> Vec<Instance> {
    (0..count as u64)
        .map(|i| {
            let spec = random_spec(class, salt * 1_000_003 + i, n_max, sigma_cap);
            let (a, truth) = gen_structured(class, &spec).expect("valid spec");
            Instance { a, truth, spec }
        })
        .collect()
}

pub fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}
