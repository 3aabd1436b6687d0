use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;
use structsvd::kernel::{
    conj_vec, dot, hermitian_eig, j_matrix, matexp_skewfactor, norm2, qr_column_pivoted, skew_pair_unitary, svd,
    takagi_symmetric_unitary, ComplexMatrix,
};
use structsvd::structures::{classify, haar_unitary, random_real, rng_from_seed};
use structsvd::StructureClass;

fn gaussian(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = rng_from_seed(seed);
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

#[test]
fn svd_of_signed_diagonal_is_unit_spectrum() {
    let a = ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ]);
    assert_eq!(svd(&a).unwrap().sigma, vec![1.0; 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn svd_reconstructs_and_is_orthonormal(n in 1usize..=30, seed in any::<u64>(), scale in -3i32..=3) {
        let a = gaussian(n, n, seed).scale_real(10f64.powi(scale));
        let s = svd(&a).unwrap();
        let nf = n as f64;
        prop_assert!(s.reconstruct().sub(&a).norm_fro() <= 1e-12 * nf * a.norm_fro());
        prop_assert!(s.u.unitarity_defect() <= 1e-12 * nf);
        prop_assert!(s.v.unitarity_defect() <= 1e-12 * nf);
        prop_assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.sigma.iter().all(|&x| x >= 0.0));
    }

    #[test]
    fn hermitian_eig_diagonalizes(n in 1usize..=20, seed in any::<u64>()) {
        let g = gaussian(n, n, seed);
        let h = g.add(&g.adjoint());
        let e = hermitian_eig(&h).unwrap();
        let lam: Vec<Complex64> = e.lambda.iter().map(|&l| Complex64::new(l, 0.0)).collect();
        let res = h.matmul(&e.q).sub(&e.q.scale_cols(&lam)).norm_fro();
        prop_assert!(res <= 1e-12 * n as f64 * h.norm_fro());
        prop_assert!(e.q.unitarity_defect() <= 1e-12 * n as f64);
        prop_assert!(e.lambda.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn takagi_columns_are_coneigenvectors(n in 1usize..=16, seed in any::<u64>()) {
        let w = haar_unitary(n, &mut rng_from_seed(seed));
        let m = w.matmul(&w.transpose());
        let f = takagi_symmetric_unitary(&m, 1e-12).unwrap();
        prop_assert!(f.unitarity_defect() <= 1e-12 * n as f64);
        prop_assert!(f.matmul(&f.transpose()).sub(&m).norm_fro() <= 1e-12 * n as f64);
        for j in 0..n {
            let col = f.col(j);
            let back = m.matvec(&conj_vec(col));
            let diff: Vec<Complex64> = back.iter().zip(col).map(|(a, b)| a - b).collect();
            prop_assert!(norm2(&diff) <= 1e-12 * n as f64);
        }
    }

    #[test]
    fn skew_pairs_reconstruct(k in 1usize..=8, seed in any::<u64>()) {
        let n = 2 * k;
        let w = haar_unitary(n, &mut rng_from_seed(seed));
        let m = w.matmul(&j_matrix(k)).matmul(&w.transpose());
        let f = skew_pair_unitary(&m, 1e-12).unwrap();
        prop_assert!(f.unitarity_defect() <= 1e-12 * n as f64);
        prop_assert!(f.matmul(&j_matrix(k)).matmul(&f.transpose()).sub(&m).norm_fro() <= 1e-12 * n as f64);
        for j in 0..k {
            let x = f.col(j);
            // ⟨x, M·x̄⟩ = x̄ᵀ·M·x̄ vanishes for skew-symmetric M
            prop_assert!(dot(x, &m.matvec(&conj_vec(x))).norm() <= 1e-12 * n as f64);
        }
    }

    #[test]
    fn pivoted_qr_recovers_rank(n in 2usize..=12, r in 0usize..=12, seed in any::<u64>()) {
        let r = r.min(n);
        let a = gaussian(n, r, seed).matmul(&gaussian(r, n, seed.wrapping_add(1)));
        let f = qr_column_pivoted(&a, 1e-10).unwrap();
        prop_assert_eq!(f.rank, r);
        prop_assert!(f.q.matmul(&f.w.adjoint()).sub(&a).norm_fro() <= 1e-12 * n as f64 * a.norm_fro().max(1.0));
    }

    #[test]
    fn exponential_of_real_generator_is_coninvolutory(n in 1usize..=20, seed in any::<u64>()) {
        let r = random_real(n, 1.0, seed);
        let a = matexp_skewfactor(&r).unwrap();
        let rep = classify(&a, 1e-8).unwrap();
        prop_assert!(rep.accepts(StructureClass::Coninvolutory));
    }
}
