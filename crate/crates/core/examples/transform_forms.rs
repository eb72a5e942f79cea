//! The three reduced forms of a small hand-checkable instance.

use tcongruence::transform::{
    assemble_operator, stein_residual, to_stein_via_a, to_stein_via_b, to_sylvester, SteinForm,
};
use tcongruence::{solve_dense_oracle, Mat, TcsProblem};

fn show_stein(label: &str, s: &SteinForm, y: &Mat) -> Result<(), tcongruence::Error> {
    println!("{label}: M =\n{:?}\nQ =\n{:?}", s.m_coef, s.q);
    println!("  Stein residual of the mapped solution: {:.1e}", stein_residual(&s.m_coef, &s.q, y)?);
    Ok(())
}

fn main() -> Result<(), tcongruence::Error> {
    let p = TcsProblem::new(
        Mat::from_rows(&[[2.0, 1.0], [0.0, 1.0]])?,
        Mat::from_rows(&[[1.0, 0.0], [1.0, 1.0]])?,
        Mat::from_rows(&[[5.0, 2.0], [3.0, 1.0]])?,
    )?;
    let x = solve_dense_oracle(&p)?;
    println!("L =\n{:?}\nX =\n{x:?}", assemble_operator(&p)?);

    show_stein("via A", &to_stein_via_a(&p)?, &p.a().matmul(&x)?)?;
    show_stein("via B", &to_stein_via_b(&p)?, &x.transpose().matmul(p.b())?)?;

    let f = to_sylvester(&p)?;
    println!("Sylvester: -M =\n{:?}\nM⁻ᵀ =\n{:?}\nQ' =\n{:?}", f.neg_m, f.m_inv_t, f.q_prime);
    Ok(())
}
