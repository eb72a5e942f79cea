//! Householder QR with column pivoting, used for numerical rank decisions.

use crate::error::{Error, Result};
use crate::matcore::mat::{frobenius_slice, Mat};

#[derive(Clone, Debug)]
pub struct Qrcp {
    qr: Mat,
    tau: Vec<f64>,
    perm: Vec<usize>,
}

impl Qrcp {
    pub fn factor(a: &Mat) -> Qrcp {
        let (m, n) = a.shape();
        let steps = m.min(n);
        let mut qr = a.clone();
        let mut tau = vec![0.0; steps];
        let mut perm: Vec<usize> = (0..n).collect();
        let data = qr.as_mut_slice();
        for k in 0..steps {
            let (p, _) = (k..n)
                .map(|j| (j, frobenius_slice(&data[j * m + k..(j + 1) * m])))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for i in 0..m {
                    data.swap(i + k * m, i + p * m);
                }
                perm.swap(k, p);
            }
            let col = &mut data[k * m..(k + 1) * m];
            let alpha = col[k];
            let xnorm = frobenius_slice(&col[k + 1..]);
            if xnorm == 0.0 {
                continue;
            }
            let norm = alpha.hypot(xnorm);
            let beta = if alpha >= 0.0 { -norm } else { norm };
            tau[k] = (beta - alpha) / beta;
            let scale = 1.0 / (alpha - beta);
            col[k + 1..].iter_mut().for_each(|v| *v *= scale);
            col[k] = beta;
            let t = tau[k];
            for j in k + 1..n {
                let (left, right) = data.split_at_mut(j * m);
                let v = &left[k * m + k + 1..(k + 1) * m];
                let target = &mut right[..m];
                let w = target[k] + v.iter().zip(&target[k + 1..]).map(|(a, b)| a * b).sum::<f64>();
                let s = t * w;
                target[k] -= s;
                for (x, &vi) in target[k + 1..].iter_mut().zip(v) {
                    *x -= s * vi;
                }
            }
        }
        Qrcp { qr, tau, perm }
    }

    /// `|R[k, k]|`, non-increasing in `k`.
    pub fn diag_abs(&self) -> Vec<f64> {
        (0..self.tau.len()).map(|k| self.qr[(k, k)].abs()).collect()
    }

    /// Number of diagonal entries of `R` above `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.diag_abs().iter().take_while(|&&d| d > tol).count()
    }

    /// Column permutation: column `k` of `A P` is column `perm()[k]` of `A`.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Applies `Qᵀ` to `b` in place.
    pub fn apply_qt(&self, b: &mut [f64]) -> Result<()> {
        let m = self.qr.rows();
        if b.len() != m {
            return Err(Error::Dimension(format!("vector of length {} for {m} rows", b.len())));
        }
        for (k, &t) in self.tau.iter().enumerate() {
            if t == 0.0 {
                continue;
            }
            let v = &self.qr.col(k)[k + 1..];
            let w = b[k] + v.iter().zip(&b[k + 1..]).map(|(a, c)| a * c).sum::<f64>();
            let s = t * w;
            b[k] -= s;
            for (x, &vi) in b[k + 1..].iter_mut().zip(v) {
                *x -= s * vi;
            }
        }
        Ok(())
    }

    /// Basic solution of `min ‖A x − b‖` using the leading `rank` columns of `A P`.
    pub fn solve_basic(&self, b: &[f64], rank: usize) -> Result<Vec<f64>> {
        let n = self.qr.cols();
        let mut qtb = b.to_vec();
        self.apply_qt(&mut qtb)?;
        let rank = rank.min(self.tau.len());
        let mut z = qtb[..rank].to_vec();
        for k in (0..rank).rev() {
            z[k] /= self.qr[(k, k)];
            let zk = z[k];
            for (i, zi) in z.iter_mut().enumerate().take(k) {
                *zi -= self.qr[(i, k)] * zk;
            }
        }
        let mut x = vec![0.0; n];
        for (k, zk) in z.into_iter().enumerate() {
            x[self.perm[k]] = zk;
        }
        Ok(x)
    }
}
