//! Solver for the T-congruence Sylvester equation `AX + XᵀB = C` with square
//! real `A`, `B`, `C`.
//!
//! When `A` (or `B`) is nonsingular the equation is reduced to a Stein
//! equation `Y − M Y Mᵀ = Q` with `Y = AX` and `M = BᵀA⁻¹` (or `Y = XᵀB`,
//! `M = A B⁻ᵀ`); when both are nonsingular it can instead be reduced to the
//! Sylvester equation `−M Y + Y M⁻ᵀ = Q'`. The reduced equation is solved,
//! `X` is recovered by one linear solve, and the result is checked against
//! the original equation. A brute-force solver on the `n² x n²` Kronecker
//! system serves as ground truth.
//!
//! ```
//! use tcongruence::{solve_tcs, Mat, SolveOptions, TcsProblem};
//!
//! let p = TcsProblem::new(
//!     Mat::from_rows(&[[2.0]])?,
//!     Mat::from_rows(&[[3.0]])?,
//!     Mat::from_rows(&[[10.0]])?,
//! )?;
//! let report = solve_tcs(&p, &SolveOptions::default())?;
//! assert!((report.x[(0, 0)] - 2.0).abs() < 1e-14);
//! # Ok::<(), tcongruence::Error>(())
//! ```

pub mod bench;
pub mod cli;
mod error;
pub mod generate;
pub mod matcore;
pub mod matio;
pub mod oracle;
pub mod rng;
pub mod solvers;
pub mod transform;

pub use error::{Degeneracy, Error, Result};
pub use matcore::{apply_commutation, commutation, kron, lu_solve, unvec, vec, Commutation, Lu, Mat, Vector};
pub use oracle::{classify_solvability, solve_dense_oracle, Classification, Solvability};
pub use solvers::{residual, solve_tcs, Method, SolveOptions, SolveReport, SteinSolver};
pub use transform::{SteinForm, SylvesterForm, TcsProblem};
