//! Smith squaring against the direct Kronecker solve as ρ(M) grows.

use tcongruence::generate::generate;
use tcongruence::solvers::{solve_stein_direct, solve_stein_smith, spectral_radius_estimate};
use tcongruence::transform::to_stein_via_a;
use tcongruence::SolveOptions;

fn main() -> Result<(), tcongruence::Error> {
    let n = 16;
    println!("{:>5} {:>9} {:>6} {:>12}", "rho", "estimate", "steps", "rel diff");
    for rho in [0.3, 0.6, 0.9, 0.99, 0.999] {
        let s = to_stein_via_a(&generate(n, 7, rho)?.problem)?;
        let direct = solve_stein_direct(&s.m_coef, &s.q)?;
        let est = spectral_radius_estimate(&s.m_coef);
        match solve_stein_smith(&s.m_coef, &s.q, &SolveOptions::default()) {
            Ok(sm) => println!("{rho:>5} {est:>9.4} {:>6} {:>12.2e}", sm.iterations, sm.x.rel_diff(&direct)?),
            Err(e) => println!("{rho:>5} {est:>9.4}  {e}"),
        }
    }
    Ok(())
}
