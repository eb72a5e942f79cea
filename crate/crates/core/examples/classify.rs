//! Uniqueness classification from the ranks of `L` and `[L | vec(C)]`.

use tcongruence::{classify_solvability, Mat, TcsProblem};

fn main() -> Result<(), tcongruence::Error> {
    let i = Mat::identity(2);
    let cases = [
        ("scalar 2x + 3x = 10", TcsProblem::new(Mat::diag(&[2.0])?, Mat::diag(&[3.0])?, Mat::diag(&[10.0])?)?),
        ("A = B = I, C symmetric", TcsProblem::new(i.clone(), i.clone(), Mat::from_rows(&[[1.0, 2.0], [2.0, 0.0]])?)?),
        ("A = B = I, C nonsymmetric", TcsProblem::new(i.clone(), i.clone(), Mat::from_rows(&[[0.0, 1.0], [0.0, 0.0]])?)?),
        ("A = I, B = -I", TcsProblem::new(i.clone(), i.neg(), Mat::from_rows(&[[0.0, 1.0], [-1.0, 0.0]])?)?),
    ];
    for (label, p) in &cases {
        let c = classify_solvability(p)?;
        println!("{label:<28} {:<15} rank(L) = {} of {}, rank([L|c]) = {}", c.solvability.to_string(), c.rank_operator, c.size, c.rank_augmented);
    }
    Ok(())
}
