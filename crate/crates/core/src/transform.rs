//! Reductions of `AX + XᵀB = C` to a Stein equation `Y − M Y Mᵀ = Q`
//! (through a nonsingular `A` or `B`) or to a Sylvester equation
//! `−M Y + Y M⁻ᵀ = Q'` (both nonsingular), plus the explicit `n² x n²`
//! operators used by the dense reference solvers.

use crate::error::{Error, Result};
use crate::matcore::{apply_commutation, commutation, into_vec, kron, unvec, vec, Lu, Mat};

/// Largest `n` for which the `n² x n²` operators are assembled by default.
pub const DEFAULT_DENSE_CAP: usize = 128;

/// The problem `AX + XᵀB = C` with square `A`, `B`, `C` of equal size.
#[derive(Clone, Debug, PartialEq)]
pub struct TcsProblem {
    a: Mat,
    b: Mat,
    c: Mat,
}

impl TcsProblem {
    pub fn new(a: Mat, b: Mat, c: Mat) -> Result<TcsProblem> {
        let n = a.rows();
        for (name, m) in [("A", &a), ("B", &b), ("C", &c)] {
            if m.shape() != (n, n) {
                return Err(Error::UnsupportedShape(format!(
                    "{name} is {} x {}; only square problems with A, B, C all {n} x {n} are supported",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(TcsProblem { a, b, c })
    }

    pub fn a(&self) -> &Mat {
        &self.a
    }

    pub fn b(&self) -> &Mat {
        &self.b
    }

    pub fn c(&self) -> &Mat {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    /// `AX + XᵀB`.
    pub fn apply(&self, x: &Mat) -> Result<Mat> {
        if x.shape() != (self.n(), self.n()) {
            return Err(Error::Dimension(format!(
                "X is {} x {}, problem is {n} x {n}",
                x.rows(),
                x.cols(),
                n = self.n()
            )));
        }
        self.a.matmul(x)?.add(&x.transpose().matmul(&self.b)?)
    }

    /// `(αA, αB, αC)`.
    pub fn scaled(&self, alpha: f64) -> Result<TcsProblem> {
        TcsProblem::new(self.a.scale(alpha), self.b.scale(alpha), self.c.scale(alpha))
    }
}

/// Which nonsingular coefficient the Stein reduction went through.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `Y = AX`, `M = BᵀA⁻¹`.
    ViaA,
    /// `Y = XᵀB`, `M = A B⁻ᵀ`.
    ViaB,
}

/// `Y − M Y Mᵀ = Q` together with what is needed to recover `X` from `Y`.
#[derive(Clone, Debug)]
pub struct SteinForm {
    pub m_coef: Mat,
    pub q: Mat,
    pub side: Side,
    /// `A` for [`Side::ViaA`], `B` for [`Side::ViaB`].
    pub back_ref: Mat,
}

/// `−M Y + Y M⁻ᵀ = Q'` with `Y = AX`.
#[derive(Clone, Debug)]
pub struct SylvesterForm {
    pub neg_m: Mat,
    pub m_inv_t: Mat,
    pub q_prime: Mat,
    /// `A`, for recovering `X` from `Y = AX`.
    pub back_ref: Mat,
}

fn factor_nonsingular(m: &Mat, name: &str) -> Result<Lu> {
    let lu = Lu::factor(m)?;
    if lu.is_singular() {
        return Err(Error::SingularMatrix(format!("{name} is singular to pivot tolerance")));
    }
    Ok(lu)
}

/// `unvec(P_nn vec(Y))` for square `Y`.
fn commute(y: Mat) -> Result<Mat> {
    let n = y.rows();
    unvec(apply_commutation(n, n, &into_vec(y))?, n, n)
}

fn stein_rhs(c: &Mat, y: Mat) -> Result<Mat> {
    c.sub(&commute(y)?)
}

/// `M = BᵀA⁻¹` (via `AᵀZ = B`, `M = Zᵀ`) and `Q = C − unvec(P_nn vec(MC))`.
pub fn to_stein_via_a(p: &TcsProblem) -> Result<SteinForm> {
    let lu_a = factor_nonsingular(&p.a, "A")?;
    let m_coef = lu_a.solve_transpose(&p.b)?.transpose();
    let q = stein_rhs(&p.c, m_coef.matmul(&p.c)?)?;
    Ok(SteinForm { m_coef, q, side: Side::ViaA, back_ref: p.a.clone() })
}

/// `M̂ = A B⁻ᵀ` (via `BZ = Aᵀ`, `M̂ = Zᵀ`) and `Q̂ = C − unvec(P_nn vec(C M̂ᵀ))`.
pub fn to_stein_via_b(p: &TcsProblem) -> Result<SteinForm> {
    let lu_b = factor_nonsingular(&p.b, "B")?;
    let z = lu_b.solve(&p.a.transpose())?;
    let q = stein_rhs(&p.c, p.c.matmul(&z)?)?;
    Ok(SteinForm { m_coef: z.transpose(), q, side: Side::ViaB, back_ref: p.b.clone() })
}

/// Sylvester form, with `Q' = unvec((M⁻¹ ⊗ I) c') = Q M⁻ᵀ` where `c' = vec(Q)`.
/// `M⁻ᵀ` is the inverse of the computed `Mᵀ` rather than `B⁻¹Aᵀ`: the two
/// coefficients then stay an inverse pair to rounding, which matters when `B`
/// is ill-conditioned.
pub fn to_sylvester(p: &TcsProblem) -> Result<SylvesterForm> {
    let lu_a = factor_nonsingular(&p.a, "A")?;
    factor_nonsingular(&p.b, "B")?;
    let m = lu_a.solve_transpose(&p.b)?.transpose();
    let c_prime = stein_rhs(&p.c, m.matmul(&p.c)?)?;
    let m_inv_t = factor_nonsingular(&m.transpose(), "M")?.solve(&Mat::identity(p.n()))?;
    let q_prime = c_prime.matmul(&m_inv_t)?;
    Ok(SylvesterForm { neg_m: m.neg(), m_inv_t, q_prime, back_ref: p.a.clone() })
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Capacity(format!(
            "assembling an n^2 x n^2 operator for n = {n} exceeds the cap n <= {cap}"
        )));
    }
    Ok(())
}

/// `L = (I ⊗ A) + P_nn (I ⊗ Bᵀ)`, so that `L vec(X) = vec(AX + XᵀB)`.
pub fn assemble_operator(p: &TcsProblem) -> Result<Mat> {
    assemble_operator_with_cap(p, DEFAULT_DENSE_CAP)
}

pub fn assemble_operator_with_cap(p: &TcsProblem, cap: usize) -> Result<Mat> {
    let n = p.n();
    check_cap(n, cap)?;
    let size = n * n;
    let mut l = Mat::zeros(size, size)?;
    for blk in 0..n {
        for j in 0..n {
            for i in 0..n {
                l[(blk * n + i, blk * n + j)] = p.a[(i, j)];
            }
        }
    }
    // Row r of P_nn (I ⊗ Bᵀ) is row s = source(r) of I ⊗ Bᵀ, i.e. Bᵀ[i, :] in block s / n.
    let perm = commutation(n, n);
    for r in 0..size {
        let s = perm.source(r);
        let (blk, i) = (s / n, s % n);
        for j in 0..n {
            l[(r, blk * n + j)] += p.b[(j, i)];
        }
    }
    Ok(l)
}

/// `I_{n²} − M ⊗ M`.
pub fn assemble_stein_operator(s: &SteinForm) -> Result<Mat> {
    assemble_stein_operator_with_cap(&s.m_coef, DEFAULT_DENSE_CAP)
}

pub fn assemble_stein_operator_with_cap(m_coef: &Mat, cap: usize) -> Result<Mat> {
    check_cap(m_coef.rows(), cap)?;
    let mm = kron(m_coef, m_coef)?;
    Mat::identity(mm.rows()).sub(&mm)
}

/// `(M⁻¹ ⊗ I) + (I ⊗ (−M))`.
pub fn assemble_sylvester_operator(f: &SylvesterForm) -> Result<Mat> {
    assemble_sylvester_operator_with_cap(f, DEFAULT_DENSE_CAP)
}

pub fn assemble_sylvester_operator_with_cap(f: &SylvesterForm, cap: usize) -> Result<Mat> {
    let n = f.neg_m.rows();
    check_cap(n, cap)?;
    let id = Mat::identity(n);
    kron(&f.m_inv_t.transpose(), &id)?.add(&kron(&id, &f.neg_m)?)
}

/// `‖Y − M Y Mᵀ − Q‖_F / ((1 + ‖M‖_F²)‖Y‖_F + ‖Q‖_F)`.
pub fn stein_residual(m_coef: &Mat, q: &Mat, y: &Mat) -> Result<f64> {
    let myt = m_coef.matmul(y)?.matmul(&m_coef.transpose())?;
    let r = y.sub(&myt)?.sub(q)?.frobenius();
    let mn = m_coef.frobenius();
    let scale = (1.0 + mn * mn) * y.frobenius() + q.frobenius();
    Ok(if scale == 0.0 { r } else { r / scale })
}

/// `‖−M Y + Y M⁻ᵀ − Q'‖_F / ((‖M‖_F + ‖M⁻ᵀ‖_F)‖Y‖_F + ‖Q'‖_F)`.
pub fn sylvester_residual(f: &SylvesterForm, y: &Mat) -> Result<f64> {
    let lhs = f.neg_m.matmul(y)?.add(&y.matmul(&f.m_inv_t)?)?;
    let r = lhs.sub(&f.q_prime)?.frobenius();
    let scale = (f.neg_m.frobenius() + f.m_inv_t.frobenius()) * y.frobenius() + f.q_prime.frobenius();
    Ok(if scale == 0.0 { r } else { r / scale })
}

/// `vec(C)` of the problem; the right-hand side of the assembled system.
pub fn rhs_vector(p: &TcsProblem) -> Vec<f64> {
    vec(&p.c).into_inner()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{lu_solve, matvec, Vector};
    use crate::rng::SplitMix64;

    fn m<const C: usize>(rows: &[[f64; C]]) -> Mat {
        Mat::from_rows(rows).unwrap()
    }

    fn random(rng: &mut SplitMix64, n: usize) -> Mat {
        Mat::from_fn(n, n, |_, _| rng.uniform(-1.0, 1.0)).unwrap()
    }

    /// Oracle: solve the assembled system directly.
    fn oracle_x(p: &TcsProblem) -> Mat {
        let l = assemble_operator(p).unwrap();
        let n = p.n();
        let x = lu_solve(&l, &Mat::from_col_major(n * n, 1, rhs_vector(p)).unwrap()).unwrap();
        Mat::from_col_major(n, n, x.into_col_major()).unwrap()
    }

    #[test]
    fn rejects_rectangular() {
        let r = TcsProblem::new(Mat::zeros(2, 3).unwrap(), Mat::zeros(3, 2).unwrap(), Mat::zeros(2, 2).unwrap());
        assert!(matches!(r, Err(Error::UnsupportedShape(_))));
        let r = TcsProblem::new(Mat::identity(2), Mat::identity(3), Mat::identity(2));
        assert!(matches!(r, Err(Error::UnsupportedShape(_))));
    }

    #[test]
    fn via_a_zero_b() {
        let c = m(&[[1.0, 2.0], [3.0, 4.0]]);
        let p = TcsProblem::new(Mat::identity(2), Mat::zeros(2, 2).unwrap(), c.clone()).unwrap();
        let s = to_stein_via_a(&p).unwrap();
        assert_eq!(s.m_coef, Mat::zeros(2, 2).unwrap());
        assert_eq!(s.q, c);
        assert_eq!(s.side, Side::ViaA);
    }

    #[test]
    fn via_a_identity_pair() {
        let c = m(&[[1.0, 2.0], [3.0, 4.0]]);
        let p = TcsProblem::new(Mat::identity(2), Mat::identity(2), c).unwrap();
        let s = to_stein_via_a(&p).unwrap();
        assert_eq!(s.m_coef, Mat::identity(2));
        assert_eq!(s.q, m(&[[0.0, -1.0], [1.0, 0.0]]));
    }

    #[test]
    fn via_a_hand_computed_instance() {
        // A⁻¹ = [[1/2, -1/2], [0, 1]], Bᵀ = [[1, 1], [0, 1]]
        // M = BᵀA⁻¹ = [[1/2, 1/2], [0, 1]], MC = [[4, 1.5], [3, 1]], Q = C − (MC)ᵀ.
        let p = TcsProblem::new(
            m(&[[2.0, 1.0], [0.0, 1.0]]),
            m(&[[1.0, 0.0], [1.0, 1.0]]),
            m(&[[5.0, 2.0], [3.0, 1.0]]),
        )
        .unwrap();
        let s = to_stein_via_a(&p).unwrap();
        assert!(s.m_coef.rel_diff(&m(&[[0.5, 0.5], [0.0, 1.0]])).unwrap() < 1e-15);
        assert!(s.q.rel_diff(&m(&[[1.0, -1.0], [1.5, 0.0]])).unwrap() < 1e-15);
        let x = oracle_x(&p);
        let y = p.a().matmul(&x).unwrap();
        assert!(stein_residual(&s.m_coef, &s.q, &y).unwrap() < 1e-14);
    }

    #[test]
    fn via_b_examples() {
        let c = m(&[[1.0, 2.0], [3.0, 4.0]]);
        let p = TcsProblem::new(Mat::zeros(2, 2).unwrap(), Mat::identity(2), c.clone()).unwrap();
        let s = to_stein_via_b(&p).unwrap();
        assert_eq!(s.m_coef, Mat::zeros(2, 2).unwrap());
        assert_eq!(s.q, c);
        let p = TcsProblem::new(Mat::identity(2), Mat::identity(2), c.clone()).unwrap();
        let s = to_stein_via_b(&p).unwrap();
        assert_eq!(s.m_coef, Mat::identity(2));
        assert_eq!(s.q, c.sub(&c.transpose()).unwrap());
    }

    #[test]
    fn via_b_mirrors_via_a_on_transposed_equation() {
        let a = m(&[[1.0, 0.0], [1.0, 1.0]]);
        let b = m(&[[2.0, 1.0], [0.0, 1.0]]);
        let c = m(&[[5.0, 2.0], [3.0, 1.0]]);
        let p = TcsProblem::new(a.clone(), b.clone(), c.clone()).unwrap();
        let sb = to_stein_via_b(&p).unwrap();
        let mirrored = TcsProblem::new(b.transpose(), a.transpose(), c.transpose()).unwrap();
        let sa = to_stein_via_a(&mirrored).unwrap();
        assert!(sb.m_coef.rel_diff(&sa.m_coef).unwrap() < 1e-14);
        // The mirrored Stein equation is the transpose of the ViaB one.
        assert!(sb.q.rel_diff(&sa.q.transpose()).unwrap() < 1e-14);
        let x = oracle_x(&p);
        let y_hat = x.transpose().matmul(&b).unwrap();
        assert!(stein_residual(&sb.m_coef, &sb.q, &y_hat).unwrap() < 1e-14);
    }

    #[test]
    fn singular_coefficients() {
        let z = Mat::zeros(2, 2).unwrap();
        let p = TcsProblem::new(z.clone(), Mat::identity(2), Mat::identity(2)).unwrap();
        assert!(matches!(to_stein_via_a(&p), Err(Error::SingularMatrix(_))));
        assert!(matches!(to_sylvester(&p), Err(Error::SingularMatrix(_))));
        let p = TcsProblem::new(Mat::identity(2), z, Mat::identity(2)).unwrap();
        assert!(matches!(to_stein_via_b(&p), Err(Error::SingularMatrix(_))));
        assert!(matches!(to_sylvester(&p), Err(Error::SingularMatrix(_))));
    }

    #[test]
    fn sylvester_scalar_walkthrough() {
        let p = TcsProblem::new(m(&[[2.0]]), m(&[[3.0]]), m(&[[10.0]])).unwrap();
        let f = to_sylvester(&p).unwrap();
        assert!((f.neg_m[(0, 0)] + 1.5).abs() < 1e-15);
        assert!((f.m_inv_t[(0, 0)] - 2.0 / 3.0).abs() < 1e-15);
        assert!((f.q_prime[(0, 0)] + 10.0 / 3.0).abs() < 1e-14);
        // -1.5 y + (2/3) y = -10/3  =>  y = 4, x = y / a = 2
        let y = 4.0;
        assert!((f.neg_m[(0, 0)] * y + y * f.m_inv_t[(0, 0)] - f.q_prime[(0, 0)]).abs() < 1e-14);
    }

    #[test]
    fn sylvester_identity_pair() {
        let c = m(&[[1.0, 2.0], [3.0, 4.0]]);
        let p = TcsProblem::new(Mat::identity(2), Mat::identity(2), c.clone()).unwrap();
        let f = to_sylvester(&p).unwrap();
        assert_eq!(f.neg_m, Mat::identity(2).neg());
        assert_eq!(f.m_inv_t, Mat::identity(2));
        assert_eq!(f.q_prime, c.sub(&c.transpose()).unwrap());
    }

    #[test]
    fn sylvester_diagonal_instance() {
        let p = TcsProblem::new(Mat::diag(&[1.0, 2.0]).unwrap(), Mat::diag(&[3.0, 4.0]).unwrap(), Mat::identity(2))
            .unwrap();
        let f = to_sylvester(&p).unwrap();
        assert!(f.neg_m.rel_diff(&Mat::diag(&[-3.0, -2.0]).unwrap()).unwrap() < 1e-15);
        let x = oracle_x(&p);
        let y = p.a().matmul(&x).unwrap();
        assert!(sylvester_residual(&f, &y).unwrap() < 1e-14);
        let op = assemble_sylvester_operator(&f).unwrap();
        let diag: Vec<f64> = (0..4).map(|k| op[(k, k)]).collect();
        assert!(diag.windows(2).any(|w| w[0] != w[1]));
    }

    #[test]
    fn q_prime_matches_explicit_kronecker_form() {
        let mut rng = SplitMix64::new(5);
        for n in 1..=4 {
            let a = random(&mut rng, n).add(&Mat::identity(n).scale(3.0)).unwrap();
            let b = random(&mut rng, n).add(&Mat::identity(n).scale(3.0)).unwrap();
            let c = random(&mut rng, n);
            let p = TcsProblem::new(a.clone(), b.clone(), c.clone()).unwrap();
            let f = to_sylvester(&p).unwrap();
            // c' = {I ⊗ I − P_nn (I ⊗ M)} vec(C), explicitly.
            let mcoef = f.neg_m.neg();
            let id = Mat::identity(n);
            let pnn = commutation(n, n).to_dense().unwrap();
            let mult = Mat::identity(n * n).sub(&pnn.matmul(&kron(&id, &mcoef).unwrap()).unwrap()).unwrap();
            let c1 = matvec(&mult, &vec(&c)).unwrap();
            let m_inv = lu_solve(&mcoef, &id).unwrap();
            let c2 = matvec(&kron(&m_inv, &id).unwrap(), &c1).unwrap();
            let explicit = unvec(c2, n, n).unwrap();
            assert!(f.q_prime.rel_diff(&explicit).unwrap() < 1e-12, "n={n}");
            // neg_m = −(m_inv_t)⁻ᵀ
            let back = lu_solve(&f.m_inv_t.transpose(), &id).unwrap().neg();
            assert!(f.neg_m.rel_diff(&back).unwrap() < 1e-10, "n={n}");
        }
    }

    #[test]
    fn commutation_path_equals_transpose_path() {
        let mut rng = SplitMix64::new(9);
        for n in 1..=6 {
            let a = random(&mut rng, n).add(&Mat::identity(n).scale(2.0)).unwrap();
            let p = TcsProblem::new(a, random(&mut rng, n), random(&mut rng, n)).unwrap();
            let s = to_stein_via_a(&p).unwrap();
            let direct = p.c().sub(&s.m_coef.matmul(p.c()).unwrap().transpose()).unwrap();
            assert!(s.q.rel_diff(&direct).unwrap() <= 1e-14);
        }
    }

    #[test]
    fn operator_examples() {
        let p = TcsProblem::new(Mat::identity(3), Mat::zeros(3, 3).unwrap(), Mat::identity(3)).unwrap();
        assert_eq!(assemble_operator(&p).unwrap(), Mat::identity(9));
        let p = TcsProblem::new(m(&[[2.0]]), m(&[[3.0]]), m(&[[10.0]])).unwrap();
        assert_eq!(assemble_operator(&p).unwrap(), m(&[[5.0]]));
    }

    #[test]
    fn operator_matches_kronecker_definition() {
        let mut rng = SplitMix64::new(21);
        for n in 1..=4 {
            let p = TcsProblem::new(random(&mut rng, n), random(&mut rng, n), random(&mut rng, n)).unwrap();
            let id = Mat::identity(n);
            let pnn = commutation(n, n).to_dense().unwrap();
            let expected = kron(&id, p.a())
                .unwrap()
                .add(&pnn.matmul(&kron(&id, &p.b().transpose()).unwrap()).unwrap())
                .unwrap();
            assert!(assemble_operator(&p).unwrap().rel_diff(&expected).unwrap() < 1e-15);
        }
    }

    #[test]
    fn operator_applies_the_equation() {
        let mut rng = SplitMix64::new(3);
        let n = 3;
        let p = TcsProblem::new(random(&mut rng, n), random(&mut rng, n), random(&mut rng, n)).unwrap();
        let x = random(&mut rng, n);
        let lhs = matvec(&assemble_operator(&p).unwrap(), &vec(&x)).unwrap();
        let rhs = vec(&p.apply(&x).unwrap());
        assert!(lhs.sub(&rhs).unwrap().norm() <= 1e-12 * rhs.norm());
    }

    #[test]
    fn operator_cap() {
        let p = TcsProblem::new(Mat::identity(5), Mat::identity(5), Mat::identity(5)).unwrap();
        assert!(matches!(assemble_operator_with_cap(&p, 4), Err(Error::Capacity(_))));
        assert!(matches!(assemble_stein_operator_with_cap(&Mat::identity(5), 4), Err(Error::Capacity(_))));
    }

    #[test]
    fn stein_operator_examples() {
        let s = |mc: Mat| SteinForm { q: mc.clone(), back_ref: mc.clone(), m_coef: mc, side: Side::ViaA };
        assert_eq!(assemble_stein_operator(&s(Mat::zeros(2, 2).unwrap())).unwrap(), Mat::identity(4));
        assert_eq!(assemble_stein_operator(&s(Mat::identity(2))).unwrap(), Mat::zeros(4, 4).unwrap());
        let op = assemble_stein_operator(&s(Mat::diag(&[0.5, 1.0 / 3.0]).unwrap())).unwrap();
        let expected = Mat::diag(&[0.75, 5.0 / 6.0, 5.0 / 6.0, 8.0 / 9.0]).unwrap();
        assert!(op.rel_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn stein_operator_singular_iff_eigen_product_is_one() {
        let cases: [(&[f64], bool); 5] = [
            (&[0.5, 2.0], true),
            (&[0.5, 0.25], false),
            (&[-1.0, 3.0], true),
            (&[1.5, -0.5, 3.0], false),
            (&[0.1, 0.2, 0.3, 10.0], true),
        ];
        for (eig, singular) in cases {
            let op = assemble_stein_operator_with_cap(&Mat::diag(eig).unwrap(), 8).unwrap();
            assert_eq!(Lu::factor(&op).unwrap().is_singular(), singular, "{eig:?}");
        }
    }

    #[test]
    fn forward_soundness_on_random_instances() {
        let mut rng = SplitMix64::new(77);
        for n in [1usize, 2, 5, 9, 16] {
            let a = random(&mut rng, n).add(&Mat::identity(n).scale(n as f64)).unwrap();
            let p = TcsProblem::new(a, random(&mut rng, n), random(&mut rng, n)).unwrap();
            let x = oracle_x(&p);
            let s = to_stein_via_a(&p).unwrap();
            let y = p.a().matmul(&x).unwrap();
            assert!(stein_residual(&s.m_coef, &s.q, &y).unwrap() <= 1e-10, "n={n}");
        }
    }

    #[test]
    fn rhs_is_vec_c() {
        let p = TcsProblem::new(Mat::identity(2), Mat::identity(2), m(&[[1.0, 3.0], [2.0, 4.0]])).unwrap();
        assert_eq!(Vector::new(rhs_vector(&p)).as_slice(), &[1.0, 2.0, 3.0, 4.0]);
    }
}
