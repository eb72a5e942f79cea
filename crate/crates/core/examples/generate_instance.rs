//! Seeded instance generation; writes a bundle the `tcs` binary can read.
//!
//! cargo run --example generate_instance -- <out-prefix> [n] [seed] [rho]

use tcongruence::generate::generate;
use tcongruence::matio::write_matrix_file;
use tcongruence::residual;
use tcongruence::solvers::spectral_radius_estimate;
use tcongruence::transform::to_stein_via_a;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.get(1).map_or(Ok(8), |s| s.parse())?;
    let seed = args.get(2).map_or(Ok(42), |s| s.parse())?;
    let rho = args.get(3).map_or(Ok(0.5), |s| s.parse())?;

    let inst = generate(n, seed, rho)?;
    let p = &inst.problem;
    println!("residual(X_true) = {:.2e}", residual(p, &inst.x_true)?);
    println!("rho(BᵀA⁻¹) ≈ {:.4}", spectral_radius_estimate(&to_stein_via_a(p)?.m_coef));

    if let Some(prefix) = args.first() {
        for (ext, m) in [("A", p.a()), ("B", p.b()), ("C", p.c()), ("Xtrue", &inst.x_true)] {
            write_matrix_file(format!("{prefix}.{ext}"), m)?;
        }
        println!("wrote {prefix}.{{A,B,C,Xtrue}}");
    }
    Ok(())
}
