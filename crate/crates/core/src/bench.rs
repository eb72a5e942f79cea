//! Timing of the dense oracle against the Smith-based reduction pipeline.

use std::time::Instant;

use crate::error::Result;
use crate::generate::generate;
use crate::oracle::solve_dense_oracle;
use crate::solvers::{residual, solve_tcs, Method, SolveOptions, SteinSolver};
use crate::transform::TcsProblem;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    /// `oracle` or `pipeline`.
    pub method: &'static str,
    pub wall_time_ms: f64,
    pub residual: f64,
}

/// Dense LU on the assembled `n² x n²` system.
pub fn time_oracle(p: &TcsProblem) -> Result<(f64, f64)> {
    let start = Instant::now();
    let x = solve_dense_oracle(p)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((ms, residual(p, &x)?))
}

/// Reduction through `A`, Smith iteration, back-substitution.
pub fn time_pipeline(p: &TcsProblem) -> Result<(f64, f64)> {
    let opts = SolveOptions {
        method: Method::LyapunovViaA,
        stein_solver: SteinSolver::Smith,
        ..SolveOptions::default()
    };
    let start = Instant::now();
    let report = solve_tcs(p, &opts)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    Ok((ms, report.residual_original))
}

/// One oracle row and one pipeline row per `(n, seed)` cell, seeds `0..seeds`.
pub fn run_bench(n_list: &[usize], seeds: u64, rho: f64) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in n_list {
        for seed in 0..seeds {
            let inst = generate(n, seed, rho)?;
            let (ms, res) = time_oracle(&inst.problem)?;
            rows.push(BenchRow { n, seed, method: "oracle", wall_time_ms: ms, residual: res });
            let (ms, res) = time_pipeline(&inst.problem)?;
            rows.push(BenchRow { n, seed, method: "pipeline", wall_time_ms: ms, residual: res });
        }
    }
    Ok(rows)
}

pub fn median(values: &mut [f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    if values.len() % 2 == 1 {
        values[mid]
    } else {
        0.5 * (values[mid - 1] + values[mid])
    }
}

/// Median oracle time over median pipeline time for each `n` in `rows`.
pub fn speedups(rows: &[BenchRow]) -> Vec<(usize, f64)> {
    let mut ns: Vec<usize> = rows.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let times = |method: &str| -> Vec<f64> {
                rows.iter().filter(|r| r.n == n && r.method == method).map(|r| r.wall_time_ms).collect()
            };
            let oracle = median(&mut times("oracle"));
            let pipeline = median(&mut times("pipeline"));
            (n, oracle / pipeline)
        })
        .collect()
}
