//! Dense matrix arithmetic, vec/unvec, Kronecker products, the commutation
//! matrix, and the LU/QR factorizations the solvers build on.

mod commutation;
mod kron;
mod lu;
mod mat;
mod qr;

pub use commutation::{apply_commutation, commutation, Commutation};
pub use kron::{into_vec, kron, matvec, unvec, vec, Vector};
pub use lu::{lu_solve, Lu};
pub use mat::Mat;
pub use qr::Qrcp;
