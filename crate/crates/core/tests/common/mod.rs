//! Reference implementations written straight from the definitions, with no
//! calls into the library's arithmetic.
#![allow(dead_code)]

use tcongruence::rng::SplitMix64;
use tcongruence::Mat;

pub fn dense(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(rows);
    for i in 0..rows {
        out.push((0..cols).map(|j| f(i, j)).collect());
    }
    out
}

pub fn to_rows(m: &Mat) -> Vec<Vec<f64>> {
    dense(m.rows(), m.cols(), |i, j| m[(i, j)])
}

pub fn from_rows(rows: &[Vec<f64>]) -> Mat {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    Mat::from_fn(r, c, |i, j| rows[i][j]).unwrap()
}

pub fn mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn eye(n: usize) -> Vec<Vec<f64>> {
    dense(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
}

/// `[a_ij B]`.
pub fn kron(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let (p, q) = (b.len(), b.first().map_or(0, Vec::len));
    let (m, n) = (a.len(), a.first().map_or(0, Vec::len));
    dense(m * p, n * q, |i, j| a[i / p][j / q] * b[i % p][j % q])
}

/// Columns stacked top to bottom.
pub fn vec_of(a: &[Vec<f64>]) -> Vec<f64> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).flat_map(|j| a.iter().map(move |row| row[j])).collect()
}

pub fn matvec(a: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Row blocks `I_m ⊗ e_knᵀ` for `k = 1..n`, stacked top to bottom.
pub fn commutation_by_definition(m: usize, n: usize) -> Vec<Vec<f64>> {
    let mut p = Vec::with_capacity(m * n);
    for k in 0..n {
        let e_k = dense(1, n, |_, j| if j == k { 1.0 } else { 0.0 });
        p.extend(kron(&eye(m), &e_k));
    }
    p
}

pub fn frob(v: impl IntoIterator<Item = f64>) -> f64 {
    v.into_iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn rel_err(got: &[f64], want: &[f64]) -> f64 {
    assert_eq!(got.len(), want.len());
    let d = frob(got.iter().zip(want).map(|(a, b)| a - b));
    let s = frob(want.iter().copied());
    if s == 0.0 {
        d
    } else {
        d / s
    }
}

pub fn int_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    dense(rows, cols, |_, _| rng.int_in(-9, 9) as f64)
}

pub fn real_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    dense(rows, cols, |_, _| rng.uniform(-1.0, 1.0))
}

/// `AX + XᵀB` by explicit triple loops.
pub fn tcs_apply(a: &[Vec<f64>], b: &[Vec<f64>], x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let ax = mul(a, x);
    let xtb = mul(&transpose(x), b);
    ax.iter().zip(&xtb).map(|(r, s)| r.iter().zip(s).map(|(u, v)| u + v).collect()).collect()
}
