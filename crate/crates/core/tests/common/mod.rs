//! Reference computations that share no code with the library's linear algebra.
#![allow(dead_code)]

use nsht::{Matrix, RngStream, Vector};

pub fn rows_of(a: &Matrix) -> Vec<Vec<f64>> {
    (0..a.rows()).map(|i| a.row(i).to_vec()).collect()
}

/// Gaussian elimination with partial pivoting.
pub fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            if f == 0.0 {
                continue;
            }
            for c in col..n {
                a[row][c] -= f * a[col][c];
            }
            b[row] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let s: f64 = ((row + 1)..n).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// `(AᵀA + εI)⁻¹ Aᵀ r` through the explicit `n × n` system.
pub fn newton_direction_dense(a: &Matrix, epsilon: f64, r: &[f64]) -> Vec<f64> {
    let (m, n) = (a.rows(), a.cols());
    let mut h = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            h[i][j] = (0..m).map(|l| a[(l, i)] * a[(l, j)]).sum::<f64>();
        }
        h[i][i] += epsilon;
    }
    let rhs: Vec<f64> = (0..n).map(|j| (0..m).map(|l| a[(l, j)] * r[l]).sum()).collect();
    gauss_solve(h, rhs)
}

/// Least squares on `columns` through explicitly formed normal equations.
pub fn normal_equations(a: &Matrix, y: &[f64], columns: &[usize]) -> Vec<f64> {
    let m = a.rows();
    let k = columns.len();
    let g: Vec<Vec<f64>> = (0..k)
        .map(|i| (0..k).map(|j| (0..m).map(|l| a[(l, columns[i])] * a[(l, columns[j])]).sum()).collect())
        .collect();
    let b: Vec<f64> = (0..k).map(|i| (0..m).map(|l| a[(l, columns[i])] * y[l]).sum()).collect();
    gauss_solve(g, b)
}

pub fn matvec(a: &Matrix, x: &[f64]) -> Vec<f64> {
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| a[(i, j)] * x[j]).sum())
        .collect()
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn random_matrix(rng: &mut RngStream, m: usize, n: usize, scale: f64) -> Matrix {
    Matrix::from_fn(m, n, |_, _| scale * rng.standard_normal())
}

pub fn random_vector(rng: &mut RngStream, n: usize) -> Vector {
    Vector::new((0..n).map(|_| rng.standard_normal()).collect()).unwrap()
}

/// Dense `k`-sparse vector with a random support.
pub fn random_sparse(rng: &mut RngStream, n: usize, k: usize) -> Vec<f64> {
    let support = nsht::problem::uniform_support(n, k, rng).unwrap();
    let mut v = vec![0.0; n];
    for &i in support.indices() {
        v[i] = rng.standard_normal();
    }
    v
}

/// Columns scaled to unit norm.
pub fn normalize_columns(a: &Matrix) -> Matrix {
    let norms: Vec<f64> = (0..a.cols())
        .map(|j| (0..a.rows()).map(|i| a[(i, j)].powi(2)).sum::<f64>().sqrt())
        .collect();
    Matrix::from_fn(a.rows(), a.cols(), |i, j| a[(i, j)] / norms[j])
}
