//! Solve `AX + XᵀB = C` on a generated instance with every method.
//!
//! cargo run --example solve_pipeline -- [n] [seed] [rho]

use tcongruence::generate::generate;
use tcongruence::{solve_tcs, Method, SolveOptions, SteinSolver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map_or(Ok(6), |s| s.parse())?;
    let seed = args.get(1).map_or(Ok(1), |s| s.parse())?;
    let rho = args.get(2).map_or(Ok(0.7), |s| s.parse())?;

    let inst = generate(n, seed, rho)?;
    println!("n = {n}, seed = {seed}, rho = {rho}");
    for (method, solver) in [
        (Method::Auto, SteinSolver::Auto),
        (Method::LyapunovViaA, SteinSolver::Smith),
        (Method::LyapunovViaA, SteinSolver::Direct),
        (Method::LyapunovViaB, SteinSolver::Direct),
        (Method::Sylvester, SteinSolver::Auto),
        (Method::Oracle, SteinSolver::Auto),
    ] {
        let opts = SolveOptions { method, stein_solver: solver, ..SolveOptions::default() };
        match solve_tcs(&inst.problem, &opts) {
            Ok(r) => println!(
                "{:<11} {:<7} residual {:.2e}  error vs X_true {:.2e}  {:?}",
                r.method_used.as_str(),
                r.stein_solver_used.map_or("-", |s| s.as_str()),
                r.residual_original,
                r.x.rel_diff(&inst.x_true)?,
                r.wall_time
            ),
            Err(e) => println!("{:<11} {:<7} {e}", method.as_str(), solver.as_str()),
        }
    }
    Ok(())
}
