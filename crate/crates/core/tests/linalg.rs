mod common;

use common::*;
use nsht::linalg::{least_squares_on_support, residual, singular_values, symmetric_eigenvalues};
use nsht::{build_kernel, Matrix, RngStream, SupportSet, Vector};

#[test]
fn kernel_matches_dense_inverse_on_small_instance() {
    let mut rng = RngStream::new(35, 0);
    let a = random_matrix(&mut rng, 3, 5, 1.0);
    let r = random_vector(&mut rng, 3);
    let kernel = build_kernel(&a, 0.7).unwrap();
    let got = kernel.apply(&r).unwrap();
    let want = newton_direction_dense(&a, 0.7, r.as_slice());
    let err = norm(&sub(got.as_slice(), &want)) / norm(&want);
    assert!(err <= 1e-10, "relative error {err}");
}

#[test]
fn push_through_identity_across_epsilons() {
    let mut rng = RngStream::new(36, 0);
    for (m, n) in [(5, 12), (20, 60), (50, 200)] {
        let a = random_matrix(&mut rng, m, n, 1.0);
        let r = random_vector(&mut rng, m);
        for eps in [0.1, 1.0, 10.0] {
            let got = build_kernel(&a, eps).unwrap().apply(&r).unwrap();
            let want = newton_direction_dense(&a, eps, r.as_slice());
            let err = norm(&sub(got.as_slice(), &want)) / norm(&want);
            assert!(err <= 1e-9, "{m}x{n} eps={eps}: {err}");
        }
    }
}

#[test]
fn singular_values_are_roots_of_gram_eigenvalues() {
    let mut rng = RngStream::new(37, 0);
    for (m, n) in [(4, 9), (9, 4), (6, 6)] {
        let a = random_matrix(&mut rng, m, n, 1.0);
        let s = singular_values(&a).unwrap();
        assert_eq!(s.values().len(), m.min(n));
        assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        let st = singular_values(&a.transpose()).unwrap();
        for (x, y) in s.values().iter().zip(st.values()) {
            assert!((x - y).abs() <= 1e-10);
        }
        // Each σ² must be an eigenvalue of the (larger) other Gram matrix too.
        let big = if m <= n { a.gram_cols() } else { a.gram_rows() };
        let eig = symmetric_eigenvalues(&big).unwrap();
        for sigma in s.values() {
            let hit = eig.iter().any(|e| (e - sigma * sigma).abs() <= 1e-9 * (1.0 + e.abs()));
            assert!(hit, "σ² = {} missing", sigma * sigma);
        }
    }
}

#[test]
fn least_squares_beats_random_probes_on_the_same_support() {
    let mut rng = RngStream::new(38, 0);
    let a = random_matrix(&mut rng, 15, 30, 1.0);
    let y = random_vector(&mut rng, 15);
    let support = SupportSet::new(30, vec![1, 4, 9, 17, 22]).unwrap();
    let best = least_squares_on_support(&a, &y, &support).unwrap().to_dense();
    for j in support.complement().indices() {
        assert_eq!(best[*j], 0.0);
    }
    let best_res = residual(&a, &y, &best).unwrap();
    for _ in 0..100 {
        let mut z = vec![0.0; 30];
        for &i in support.indices() {
            z[i] = best[i] + 0.5 * rng.standard_normal();
        }
        let zres = residual(&a, &y, &Vector::new(z).unwrap()).unwrap();
        assert!(best_res <= zres + 1e-10);
    }
    let oracle = normal_equations(&a, y.as_slice(), support.indices());
    for (pos, &i) in support.indices().iter().enumerate() {
        assert!((best[i] - oracle[pos]).abs() <= 1e-10);
    }
}

#[test]
fn residual_matches_elementwise_loop() {
    let mut rng = RngStream::new(39, 0);
    let a = random_matrix(&mut rng, 7, 11, 1.0);
    let y = random_vector(&mut rng, 7);
    let x = random_vector(&mut rng, 11);
    let mut acc = 0.0;
    for i in 0..7 {
        let mut ax = 0.0;
        for j in 0..11 {
            ax += a[(i, j)] * x[j];
        }
        acc += (y[i] - ax) * (y[i] - ax);
    }
    assert!((residual(&a, &y, &x).unwrap() - acc.sqrt()).abs() < 1e-12);
}

#[test]
fn kernel_and_spectrum_agree_in_single_precision() {
    let a64 = Matrix::from_fn(4, 7, |i, j| ((i * 7 + j) as f64 * 0.37).sin());
    let a32 = nsht::Matrix32::from_fn(4, 7, |i, j| a64[(i, j)] as f32);
    let r64 = Vector::from_f64(&[1.0, -0.5, 0.25, 2.0]).unwrap();
    let r32 = nsht::Vector32::from_f64(&[1.0, -0.5, 0.25, 2.0]).unwrap();
    let d64 = build_kernel(&a64, 0.5).unwrap().apply(&r64).unwrap();
    let d32 = build_kernel(&a32, 0.5f32).unwrap().apply(&r32).unwrap();
    for j in 0..7 {
        assert!((d64[j] - d32[j] as f64).abs() < 1e-4);
    }
    let s64 = singular_values(&a64).unwrap();
    let s32 = singular_values(&a32).unwrap();
    assert!((s64.sigma_max() - s32.sigma_max() as f64).abs() < 1e-4);
}
