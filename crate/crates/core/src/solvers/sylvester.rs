use crate::error::{Error, Result};
use crate::matcore::{into_vec, unvec, Lu, Mat};
use crate::transform::{assemble_sylvester_operator_with_cap, SylvesterForm, DEFAULT_DENSE_CAP};

/// Solves `−M Y + Y M⁻ᵀ = Q'` through `{(M⁻¹ ⊗ I) + (I ⊗ (−M))} vec(Y) = vec(Q')`.
pub fn solve_sylvester_direct(f: &SylvesterForm) -> Result<Mat> {
    solve_sylvester_direct_with_cap(f, DEFAULT_DENSE_CAP)
}

pub fn solve_sylvester_direct_with_cap(f: &SylvesterForm, cap: usize) -> Result<Mat> {
    let n = f.neg_m.rows();
    let op = assemble_sylvester_operator_with_cap(f, cap)?;
    let lu = Lu::factor(&op)?;
    if lu.is_singular() {
        return Err(Error::SingularOperator {
            context: "Sylvester operator is singular: -M and -M^-T share an eigenvalue".into(),
            kind: None,
        });
    }
    let rhs = Mat::from_col_major(n * n, 1, f.q_prime.as_slice().to_vec())?;
    unvec(into_vec(lu.solve(&rhs)?), n, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::stein::solve_stein_direct;
    use crate::transform::{to_stein_via_a, to_sylvester, TcsProblem};

    #[test]
    fn scalar_walkthrough() {
        let p = TcsProblem::new(
            Mat::from_rows(&[[2.0]]).unwrap(),
            Mat::from_rows(&[[3.0]]).unwrap(),
            Mat::from_rows(&[[10.0]]).unwrap(),
        )
        .unwrap();
        let y = solve_sylvester_direct(&to_sylvester(&p).unwrap()).unwrap();
        assert!((y[(0, 0)] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_stein_route() {
        let p = TcsProblem::new(Mat::diag(&[1.0, 2.0]).unwrap(), Mat::diag(&[3.0, 4.0]).unwrap(), Mat::identity(2))
            .unwrap();
        let via_sylvester = solve_sylvester_direct(&to_sylvester(&p).unwrap()).unwrap();
        let s = to_stein_via_a(&p).unwrap();
        let via_stein = solve_stein_direct(&s.m_coef, &s.q).unwrap();
        assert!(via_sylvester.rel_diff(&via_stein).unwrap() < 1e-14);
    }

    #[test]
    fn degenerate_identity() {
        let p = TcsProblem::new(Mat::identity(2), Mat::identity(2), Mat::identity(2)).unwrap();
        assert!(matches!(
            solve_sylvester_direct(&to_sylvester(&p).unwrap()),
            Err(Error::SingularOperator { .. })
        ));
    }
}
