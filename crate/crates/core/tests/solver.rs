mod common;

use common::*;
use nsht::solver::{htp_step, iht_step, nshtp_step, nsiht_step};
use nsht::{
    build_kernel, hard_threshold, solve, Algorithm, Config, ProblemDescriptor, RngStream, Sparse,
    Status, StopRule, Vector,
};

fn random_iterate(rng: &mut RngStream, n: usize, k: usize) -> Sparse {
    Sparse::from_dense(&Vector::new(random_sparse(rng, n, k)).unwrap())
}

#[test]
fn nsiht_step_matches_dense_oracle() {
    let p = ProblemDescriptor::new(20, 40, 3, 0.0, 71).generate::<f64>().unwrap();
    let kernel = build_kernel(&p.a, 1.0).unwrap();
    let mut rng = RngStream::new(71, 1);
    for _ in 0..10 {
        let x = random_iterate(&mut rng, 40, 3);
        let got = nsiht_step(&kernel, &p.y, &x, 3, 1.0).unwrap();
        let xd = x.to_dense();
        let r = sub(p.y.as_slice(), &matvec(&p.a, xd.as_slice()));
        let d = newton_direction_dense(&p.a, 1.0, &r);
        let u: Vec<f64> = xd.iter().zip(&d).map(|(a, b)| a + b).collect();
        let want = hard_threshold(&Vector::new(u).unwrap(), 3).unwrap();
        assert_eq!(got.support(), want.support());
        assert!(got.distance(&want) <= 1e-9 * (1.0 + want.norm2()));
    }
}

#[test]
fn nshtp_pursuit_matches_normal_equations() {
    let p = ProblemDescriptor::new(20, 40, 3, 0.0, 72).generate::<f64>().unwrap();
    let kernel = build_kernel(&p.a, 1.0).unwrap();
    let mut rng = RngStream::new(72, 1);
    for _ in 0..10 {
        let x = random_iterate(&mut rng, 40, 3);
        let (bar, next) = nshtp_step(&kernel, &p.y, &x, 3, 1.0).unwrap();
        let oracle = normal_equations(&p.a, p.y.as_slice(), bar.support().indices());
        let dense = next.to_dense();
        for (pos, &i) in bar.support().indices().iter().enumerate() {
            assert!((dense[i] - oracle[pos]).abs() <= 1e-9 * (1.0 + oracle[pos].abs()));
        }
        let r_bar = norm(&sub(p.y.as_slice(), &matvec(&p.a, bar.to_dense().as_slice())));
        let r_next = norm(&sub(p.y.as_slice(), &matvec(&p.a, dense.as_slice())));
        assert!(r_next <= r_bar + 1e-10);
    }
}

#[test]
fn gradient_steps_match_direct_recomputation() {
    let p = ProblemDescriptor::new(20, 40, 3, 0.0, 73).generate::<f64>().unwrap();
    let mut rng = RngStream::new(73, 1);
    let lambda = 0.01;
    for _ in 0..10 {
        let x = random_iterate(&mut rng, 40, 3);
        let xd = x.to_dense();
        let r = sub(p.y.as_slice(), &matvec(&p.a, xd.as_slice()));
        let u: Vec<f64> = (0..40)
            .map(|j| xd[j] + lambda * (0..20).map(|i| p.a[(i, j)] * r[i]).sum::<f64>())
            .collect();
        let want = hard_threshold(&Vector::new(u).unwrap(), 3).unwrap();
        let got = iht_step(&p.a, &p.y, &x, 3, lambda).unwrap();
        assert!(got.distance(&want) <= 1e-12);
        let (bar, next) = htp_step(&p.a, &p.y, &x, 3, lambda).unwrap();
        assert_eq!(&bar, &got);
        let oracle = normal_equations(&p.a, p.y.as_slice(), bar.support().indices());
        for (pos, (_, v)) in next.iter().enumerate() {
            assert!((v - oracle[pos]).abs() <= 1e-9 * (1.0 + v.abs()));
        }
    }
}

#[test]
fn pursuit_on_true_support_recovers_exactly() {
    let p = ProblemDescriptor::new(30, 60, 4, 0.0, 74).generate::<f64>().unwrap();
    let truth = p.truth.clone().unwrap();
    let z = nsht::least_squares_on_support(&p.a, &p.y, truth.support()).unwrap();
    assert!(z.distance(&truth) <= 1e-10);
}

/// Regression value from the first verified run (cross-checked against the dense-oracle step).
const GOLDEN_SEED: u64 = 2024;
const GOLDEN_NSHTP_ITERATIONS: usize = 3;

#[test]
fn nshtp_golden_run() {
    let p = ProblemDescriptor::new(100, 200, 10, 0.0, GOLDEN_SEED).generate::<f64>().unwrap();
    let cfg = Config::new(Algorithm::Nshtp, 10).max_iterations(50);
    let r = solve(&p, &cfg).unwrap();
    assert!(r.success);
    assert_eq!(r.trace.status, Status::Converged);
    assert_eq!(r.iterations_used, GOLDEN_NSHTP_ITERATIONS);

    // Replay with the dense-oracle step and the oracle pursuit.
    let mut x = vec![0.0; 200];
    for rec in &r.trace.records[1..] {
        let res = sub(p.y.as_slice(), &matvec(&p.a, &x));
        let d = newton_direction_dense(&p.a, 1.0, &res);
        let u: Vec<f64> = x.iter().zip(&d).map(|(a, b)| a + b).collect();
        let bar = hard_threshold(&Vector::new(u).unwrap(), 10).unwrap();
        assert_eq!(rec.intermediate.as_ref().unwrap().support(), bar.support());
        let fit = normal_equations(&p.a, p.y.as_slice(), bar.support().indices());
        x = vec![0.0; 200];
        for (pos, &i) in bar.support().indices().iter().enumerate() {
            x[i] = fit[pos];
        }
        assert!(norm(&sub(rec.iterate.to_dense().as_slice(), &x)) <= 1e-9 * (1.0 + norm(&x)));
    }
}

#[test]
fn traces_are_sparse_finite_and_monotone_after_pursuit() {
    for seed in 0..6 {
        let p = ProblemDescriptor::new(60, 120, 8 + 2 * seed as usize, 0.0, 300 + seed).generate::<f64>().unwrap();
        for alg in Algorithm::ALL {
            let lambda = if alg.uses_newton_direction() { 1.0 } else { 0.002 };
            let cfg = Config::new(alg, p.k)
                .lambda(lambda)
                .max_iterations(30)
                .stop_rule(StopRule::IterationBudget);
            let r = solve(&p, &cfg).unwrap();
            assert!(r.trace.records.len() <= 31);
            for rec in &r.trace.records {
                assert!(rec.iterate.nnz() <= p.k);
                assert!(rec.residual.is_finite() && rec.residual >= 0.0);
                if let Some(bar) = &rec.intermediate {
                    let rb = nsht::linalg::residual_sparse(&p.a, &p.y, bar).unwrap();
                    assert!(rec.residual <= rb + 1e-10);
                }
            }
        }
    }
}

#[test]
fn solves_are_bit_reproducible() {
    let p = ProblemDescriptor::new(40, 80, 6, 0.01, 9).generate::<f64>().unwrap();
    let q = ProblemDescriptor::new(40, 80, 6, 0.01, 9).generate::<f64>().unwrap();
    for alg in [Algorithm::Nsiht, Algorithm::Nshtp] {
        let cfg = Config::new(alg, 6).max_iterations(20).stop_rule(StopRule::IterationBudget);
        let a = solve(&p, &cfg).unwrap();
        let b = solve(&q, &cfg).unwrap();
        assert_eq!(a, b);
        for (ra, rb) in a.trace.records.iter().zip(&b.trace.records) {
            assert_eq!(ra.residual.to_bits(), rb.residual.to_bits());
        }
    }
}

#[test]
fn warm_start_at_truth_converges_at_iteration_zero() {
    let p = ProblemDescriptor::new(30, 60, 3, 0.0, 12).generate::<f64>().unwrap();
    let cfg = Config::new(Algorithm::Nsiht, 3).initial(p.truth.clone().unwrap());
    let r = solve(&p, &cfg).unwrap();
    assert_eq!(r.iterations_used, 0);
    assert!(r.success);
}
