//! Reproducible test instances with a known solution.
//!
//! For seed `s` the stream `SplitMix64(s)` is consumed in this order:
//! 1. `A = Q₁ diag(σ) Q₂`, each `Qₖ` a product of `n` Householder reflectors
//!    with uniform `[-1, 1)` vectors, `σᵢ = cond^{-tᵢ}` with `tᵢ` uniform and the
//!    extremes pinned to `1` and `1/cond`, so `cond₂(A) = cond`.
//! 2. `M = V D V⁻¹` with `V` built like `A` (condition `cond_v`) and `D` block
//!    diagonal: 1x1 blocks `±r` and 2x2 rotation blocks `r R(θ)`. The first
//!    block has magnitude `rho`, the rest `rho * [0.2, 0.85)`, so `ρ(M) = rho`.
//! 3. `B = (M A)ᵀ`, which makes `BᵀA⁻¹ = M`.
//! 4. `X_true` uniform in `[-1, 1)`, and `C = A X_true + X_trueᵀ B`.

use crate::error::Result;
use crate::matcore::Mat;
use crate::rng::SplitMix64;
use crate::transform::TcsProblem;

#[derive(Clone, Debug)]
pub struct GenOptions {
    /// 2-norm condition number of `A`.
    pub cond_a: f64,
    /// 2-norm condition number of the eigenvector basis of `M`.
    pub cond_v: f64,
}

impl Default for GenOptions {
    fn default() -> GenOptions {
        GenOptions { cond_a: 1e3, cond_v: 10.0 }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub problem: TcsProblem,
    pub x_true: Mat,
}

fn orthogonal(rng: &mut SplitMix64, n: usize) -> Result<Mat> {
    let mut q = Mat::identity(n);
    for _ in 0..n {
        let v: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv == 0.0 {
            continue;
        }
        // q ← (I − 2 v vᵀ / vᵀv) q
        for j in 0..n {
            let col = q.col(j);
            let s = 2.0 * v.iter().zip(col).map(|(a, b)| a * b).sum::<f64>() / vv;
            for i in 0..n {
                q[(i, j)] -= s * v[i];
            }
        }
    }
    Ok(q)
}

fn singular_values(rng: &mut SplitMix64, n: usize, cond: f64) -> Vec<f64> {
    let mut s: Vec<f64> = (0..n).map(|_| cond.powf(-rng.next_f64())).collect();
    if n >= 2 {
        s[0] = 1.0;
        s[n - 1] = 1.0 / cond;
    }
    s
}

/// `Q₁ diag(σ) Q₂` and, when asked, its inverse `Q₂ᵀ diag(1/σ) Q₁ᵀ`.
fn conditioned(rng: &mut SplitMix64, n: usize, cond: f64, with_inverse: bool) -> Result<(Mat, Option<Mat>)> {
    let q1 = orthogonal(rng, n)?;
    let sigma = singular_values(rng, n, cond);
    let q2 = orthogonal(rng, n)?;
    let a = q1.matmul(&Mat::diag(&sigma)?)?.matmul(&q2)?;
    let inv = if with_inverse {
        let inv_sigma: Vec<f64> = sigma.iter().map(|s| 1.0 / s).collect();
        Some(q2.transpose().matmul(&Mat::diag(&inv_sigma)?)?.matmul(&q1.transpose())?)
    } else {
        None
    };
    Ok((a, inv))
}

fn block_diagonal(rng: &mut SplitMix64, n: usize, rho: f64) -> Result<Mat> {
    let mut d = Mat::zeros(n, n)?;
    let mut i = 0;
    while i < n {
        let r = if i == 0 { rho } else { rho * rng.uniform(0.2, 0.85) };
        let pair = i + 1 < n && rng.next_f64() < 0.5;
        if pair {
            let theta = rng.uniform(0.1, std::f64::consts::PI - 0.1);
            let (c, s) = (r * theta.cos(), r * theta.sin());
            d[(i, i)] = c;
            d[(i, i + 1)] = -s;
            d[(i + 1, i)] = s;
            d[(i + 1, i + 1)] = c;
            i += 2;
        } else {
            d[(i, i)] = if rng.next_f64() < 0.5 { -r } else { r };
            i += 1;
        }
    }
    Ok(d)
}

/// Generates an instance whose Stein coefficient `BᵀA⁻¹` has spectral radius `rho`.
pub fn generate(n: usize, seed: u64, rho: f64) -> Result<Instance> {
    generate_with(n, seed, rho, &GenOptions::default())
}

pub fn generate_with(n: usize, seed: u64, rho: f64, opts: &GenOptions) -> Result<Instance> {
    let mut rng = SplitMix64::new(seed);
    let (a, _) = conditioned(&mut rng, n, opts.cond_a, false)?;
    let (v, v_inv) = conditioned(&mut rng, n, opts.cond_v, true)?;
    let d = block_diagonal(&mut rng, n, rho)?;
    let m = v.matmul(&d)?.matmul(&v_inv.expect("inverse requested"))?;
    let b = m.matmul(&a)?.transpose();
    let x_true = Mat::from_fn(n, n, |_, _| rng.uniform(-1.0, 1.0))?;
    let c = a.matmul(&x_true)?.add(&x_true.transpose().matmul(&b)?)?;
    Ok(Instance { problem: TcsProblem::new(a, b, c)?, x_true })
}
