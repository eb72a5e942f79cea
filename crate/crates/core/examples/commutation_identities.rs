//! The commutation matrix `P_mn` and its identities, explicit and implicit.

use tcongruence::{apply_commutation, commutation, kron, vec, Mat};

fn main() -> Result<(), tcongruence::Error> {
    let p = commutation(2, 3);
    println!("P_23 =\n{:?}", p.to_dense()?);

    let a = Mat::from_rows(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])?;
    let from_t = apply_commutation(2, 3, &vec(&a.transpose()))?;
    println!("vec(A)        = {:?}", vec(&a).as_slice());
    println!("P_23 vec(Aᵀ)  = {:?}", from_t.as_slice());

    let pt = p.to_dense()?.transpose();
    println!("P_23ᵀ == P_32: {}", pt == commutation(3, 2).to_dense()?);
    println!("P_23ᵀ P_23 == I: {}", pt.matmul(&p.to_dense()?)? == Mat::identity(6));

    let r = 2;
    let lhs = commutation(2, r)
        .permute_rows(&kron(&a, &Mat::identity(r))?)?
        .matmul(&commutation(3, r).to_dense()?.transpose())?;
    println!("P_2r (A ⊗ I_r) P_3rᵀ == I_r ⊗ A: {}", lhs == kron(&Mat::identity(r), &a)?);
    Ok(())
}
