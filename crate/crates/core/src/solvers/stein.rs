//! Solvers for the Stein (discrete Lyapunov) equation `Y − M Y Mᵀ = Q`.

use crate::error::{Error, Result};
use crate::matcore::{into_vec, unvec, Lu, Mat};
use crate::solvers::spectral::spectral_radius_estimate;
use crate::solvers::SolveOptions;
use crate::transform::{assemble_stein_operator_with_cap, stein_residual, DEFAULT_DENSE_CAP};

/// Spectral radius estimates at or above this are rejected by the Smith iteration.
pub const SMITH_RHO_LIMIT: f64 = 1.0 - 1e-6;

/// Solves `(I − M ⊗ M) vec(Y) = vec(Q)` by dense LU.
pub fn solve_stein_direct(m_coef: &Mat, q: &Mat) -> Result<Mat> {
    solve_stein_direct_with_cap(m_coef, q, DEFAULT_DENSE_CAP)
}

pub fn solve_stein_direct_with_cap(m_coef: &Mat, q: &Mat, cap: usize) -> Result<Mat> {
    let n = check_pair(m_coef, q)?;
    let op = assemble_stein_operator_with_cap(m_coef, cap)?;
    let lu = Lu::factor(&op)?;
    if lu.is_singular() {
        return Err(Error::SingularOperator {
            context: "I - M (x) M is singular; the Stein equation has no unique solution".into(),
            kind: None,
        });
    }
    let rhs = Mat::from_col_major(n * n, 1, q.as_slice().to_vec())?;
    let y = lu.solve(&rhs)?;
    unvec(into_vec(y), n, n)
}

#[derive(Clone, Debug)]
pub struct SmithSolution {
    pub x: Mat,
    /// Number of squaring steps taken.
    pub iterations: usize,
    pub rho_estimate: f64,
}

/// Squared Smith iteration: `Y ← Y + S Y Sᵀ`, `S ← S²`, from `Y = Q`, `S = M`.
///
/// Iterates until the update is negligible against `Y` (or `S` vanishes), then
/// requires the Stein residual to be within `opts.tol`.
pub fn solve_stein_smith(m_coef: &Mat, q: &Mat, opts: &SolveOptions) -> Result<SmithSolution> {
    check_pair(m_coef, q)?;
    let rho = spectral_radius_estimate(m_coef);
    if !(rho < SMITH_RHO_LIMIT) {
        return Err(Error::NotConvergent(format!(
            "Smith iteration needs spectral radius < 1, estimate is {rho:.6}"
        )));
    }
    let mut x = q.clone();
    let mut s = m_coef.clone();
    let mut iterations = 0;
    for k in 1..=opts.max_iter {
        iterations = k;
        let inc = s.matmul(&x)?.matmul(&s.transpose())?;
        x = x.add(&inc)?;
        let inc_norm = inc.frobenius();
        if !inc_norm.is_finite() || !x.all_finite() {
            return Err(Error::NotConvergent("Smith iteration diverged".into()));
        }
        if inc_norm <= f64::EPSILON * x.frobenius() {
            break;
        }
        s = s.matmul(&s)?;
        if s.max_abs() == 0.0 {
            break;
        }
    }
    let resid = stein_residual(m_coef, q, &x)?;
    if !(resid <= opts.tol) {
        return Err(Error::NotConvergent(format!(
            "Stein residual {resid:.3e} above tolerance {:.3e} after {iterations} doublings",
            opts.tol
        )));
    }
    Ok(SmithSolution { x, iterations, rho_estimate: rho })
}

fn check_pair(m_coef: &Mat, q: &Mat) -> Result<usize> {
    let n = m_coef.rows();
    if m_coef.shape() != (n, n) || q.shape() != (n, n) {
        return Err(Error::Dimension(format!(
            "Stein equation needs square M and Q of equal size, got {:?} and {:?}",
            m_coef.shape(),
            q.shape()
        )));
    }
    Ok(n)
}
