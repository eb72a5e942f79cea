//! Brute-force ground truth: the original equation as one dense
//! `n² x n²` linear system `L vec(X) = vec(C)`.

use std::fmt;

use crate::error::{Degeneracy, Error, Result};
use crate::matcore::{into_vec, unvec, Lu, Mat, Qrcp};
use crate::transform::{assemble_operator_with_cap, rhs_vector, TcsProblem};

/// Largest `n` accepted by [`solve_dense_oracle`] (a 4096 x 4096 LU).
pub const ORACLE_MAX_N: usize = 64;
/// Largest `n` accepted by [`classify_solvability`].
pub const CLASSIFY_MAX_N: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Solvability {
    Unique,
    InfinitelyMany,
    /// No solution exists; displayed as `None`.
    NoSolution,
}

impl fmt::Display for Solvability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solvability::Unique => "Unique",
            Solvability::InfinitelyMany => "InfinitelyMany",
            Solvability::NoSolution => "None",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub solvability: Solvability,
    /// Numerical rank of `L`.
    pub rank_operator: usize,
    /// Numerical rank of `[L | vec(C)]`.
    pub rank_augmented: usize,
    /// Side length `n²` of `L`.
    pub size: usize,
}

fn rank_tolerance(l: &Mat) -> f64 {
    f64::EPSILON * l.rows() as f64 * l.frobenius()
}

fn augmented(l: &Mat, c: &[f64]) -> Result<Mat> {
    let mut data = l.as_slice().to_vec();
    data.extend_from_slice(c);
    Mat::from_col_major(l.rows(), l.cols() + 1, data)
}

/// Rank-revealing split of a singular system into consistent or inconsistent.
fn degeneracy(l: &Mat, c: &[f64]) -> Result<(usize, usize, Degeneracy)> {
    let tol = rank_tolerance(l);
    let rank_l = Qrcp::factor(l).rank(tol);
    let rank_aug = Qrcp::factor(&augmented(l, c)?).rank(tol);
    let kind = if rank_aug > rank_l { Degeneracy::Inconsistent } else { Degeneracy::ConsistentUnderdetermined };
    Ok((rank_l, rank_aug, kind))
}

/// Solves `L vec(X) = vec(C)` by partial-pivoted LU.
pub fn solve_dense_oracle(p: &TcsProblem) -> Result<Mat> {
    let n = p.n();
    let l = assemble_operator_with_cap(p, ORACLE_MAX_N)?;
    let c = rhs_vector(p);
    let lu = Lu::factor(&l)?;
    if lu.is_singular() {
        let (rank_l, rank_aug, kind) = degeneracy(&l, &c)?;
        return Err(Error::SingularOperator {
            context: format!("assembled operator is singular, rank {rank_l} of {} (augmented rank {rank_aug})", n * n),
            kind: Some(kind),
        });
    }
    let x = lu.solve(&Mat::from_col_major(n * n, 1, c)?)?;
    unvec(into_vec(x), n, n)
}

/// Decides whether `AX + XᵀB = C` has a unique solution, infinitely many, or none,
/// from the numerical ranks of `L` and `[L | vec(C)]`.
pub fn classify_solvability(p: &TcsProblem) -> Result<Classification> {
    let n = p.n();
    if n > CLASSIFY_MAX_N {
        return Err(Error::Capacity(format!("classification supports n <= {CLASSIFY_MAX_N}, got {n}")));
    }
    let size = n * n;
    let l = assemble_operator_with_cap(p, CLASSIFY_MAX_N)?;
    let lu = Lu::factor(&l)?;
    let unique = |rank| Classification {
        solvability: Solvability::Unique,
        rank_operator: rank,
        rank_augmented: rank,
        size,
    };
    if !lu.is_singular() && lu.rcond() > size as f64 * f64::EPSILON {
        return Ok(unique(size));
    }
    let c = rhs_vector(p);
    let tol = rank_tolerance(&l);
    let rank_l = Qrcp::factor(&l).rank(tol);
    if rank_l == size {
        return Ok(unique(size));
    }
    let rank_aug = Qrcp::factor(&augmented(&l, &c)?).rank(tol);
    let solvability = if rank_aug > rank_l { Solvability::NoSolution } else { Solvability::InfinitelyMany };
    Ok(Classification { solvability, rank_operator: rank_l, rank_augmented: rank_aug, size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::residual;

    fn m<const C: usize>(rows: &[[f64; C]]) -> Mat {
        Mat::from_rows(rows).unwrap()
    }

    fn identity_pair(c: Mat) -> TcsProblem {
        let n = c.rows();
        TcsProblem::new(Mat::identity(n), Mat::identity(n), c).unwrap()
    }

    #[test]
    fn scalar() {
        let p = TcsProblem::new(m(&[[2.0]]), m(&[[3.0]]), m(&[[10.0]])).unwrap();
        assert_eq!(solve_dense_oracle(&p).unwrap(), m(&[[2.0]]));
        assert_eq!(classify_solvability(&p).unwrap().solvability, Solvability::Unique);
    }

    #[test]
    fn zero_b_returns_c() {
        let c = m(&[[1.0, -2.0], [3.5, 4.0]]);
        let p = TcsProblem::new(Mat::identity(2), Mat::zeros(2, 2).unwrap(), c.clone()).unwrap();
        assert_eq!(solve_dense_oracle(&p).unwrap(), c);
    }

    #[test]
    fn identity_pair_symmetric_is_underdetermined() {
        let p = identity_pair(m(&[[2.0, 1.0], [1.0, 0.0]]));
        match solve_dense_oracle(&p) {
            Err(Error::SingularOperator { kind, .. }) => assert_eq!(kind, Some(Degeneracy::ConsistentUnderdetermined)),
            other => panic!("{other:?}"),
        }
        let cls = classify_solvability(&p).unwrap();
        assert_eq!(cls.solvability, Solvability::InfinitelyMany);
        assert_eq!((cls.rank_operator, cls.rank_augmented), (3, 3));
    }

    #[test]
    fn identity_pair_nonsymmetric_is_inconsistent() {
        let p = identity_pair(m(&[[0.0, 1.0], [0.0, 0.0]]));
        match solve_dense_oracle(&p) {
            Err(Error::SingularOperator { kind, .. }) => assert_eq!(kind, Some(Degeneracy::Inconsistent)),
            other => panic!("{other:?}"),
        }
        let cls = classify_solvability(&p).unwrap();
        assert_eq!(cls.solvability, Solvability::NoSolution);
        assert_eq!(cls.solvability.to_string(), "None");
        assert_eq!((cls.rank_operator, cls.rank_augmented), (3, 4));
    }

    #[test]
    fn identity_pair_identity_c() {
        assert_eq!(classify_solvability(&identity_pair(Mat::identity(2))).unwrap().solvability, Solvability::InfinitelyMany);
    }

    #[test]
    fn identity_pair_exhaustive_small() {
        // n = 1: x + x = c is always uniquely solvable.
        for c in -3..=3 {
            let p = identity_pair(m(&[[c as f64]]));
            assert_eq!(classify_solvability(&p).unwrap().solvability, Solvability::Unique);
        }
        // n = 2: X + Xᵀ is symmetric, and the skew part of X is free.
        for code in 0..81 {
            let mut k = code;
            let mut e = [0.0; 4];
            for v in &mut e {
                *v = (k % 3) as f64 - 1.0;
                k /= 3;
            }
            let c = m(&[[e[0], e[1]], [e[2], e[3]]]);
            let expected = if e[1] == e[2] { Solvability::InfinitelyMany } else { Solvability::NoSolution };
            assert_eq!(classify_solvability(&identity_pair(c)).unwrap().solvability, expected, "{e:?}");
        }
    }

    #[test]
    fn self_consistent_on_random_instance() {
        let mut rng = crate::rng::SplitMix64::new(8);
        let n = 6;
        let rnd = |rng: &mut crate::rng::SplitMix64| Mat::from_fn(n, n, |_, _| rng.uniform(-1.0, 1.0)).unwrap();
        let p = TcsProblem::new(rnd(&mut rng), rnd(&mut rng), rnd(&mut rng)).unwrap();
        let x = solve_dense_oracle(&p).unwrap();
        assert!(residual(&p, &x).unwrap() <= 1e-12);
    }

    #[test]
    fn capacity_limits() {
        let big = TcsProblem::new(Mat::identity(65), Mat::identity(65), Mat::identity(65)).unwrap();
        assert!(matches!(solve_dense_oracle(&big), Err(Error::Capacity(_))));
        let mid = TcsProblem::new(Mat::identity(33), Mat::identity(33), Mat::identity(33)).unwrap();
        assert!(matches!(classify_solvability(&mid), Err(Error::Capacity(_))));
    }
}
