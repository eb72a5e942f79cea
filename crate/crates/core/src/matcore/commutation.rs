//! The commutation (vec-permutation) matrix `P_mn`, with `vec(A) = P_mn vec(Aᵀ)`
//! for `A` of shape `m x n`.

use crate::error::{Error, Result};
use crate::matcore::kron::Vector;
use crate::matcore::mat::{checked_len, Mat};

/// `P_mn` in implicit form. Row `i + j*m` holds its single 1 in column `j + i*n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Commutation {
    m: usize,
    n: usize,
}

impl Commutation {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Side length `m*n` of the square permutation.
    pub fn size(&self) -> usize {
        self.m * self.n
    }

    /// Column index of the 1 in row `r`.
    #[inline]
    pub fn source(&self, r: usize) -> usize {
        let (i, j) = (r % self.m, r / self.m);
        j + i * self.n
    }

    /// `P_mnᵀ`, which is `P_nm`.
    pub fn transpose(&self) -> Commutation {
        Commutation { m: self.n, n: self.m }
    }

    /// Explicit `(mn) x (mn)` 0/1 matrix.
    pub fn to_dense(&self) -> Result<Mat> {
        let size = self.size();
        checked_len(size, size)?;
        let mut p = Mat::zeros(size, size)?;
        for r in 0..size {
            p[(r, self.source(r))] = 1.0;
        }
        Ok(p)
    }

    /// `P_mn v` in O(mn), an exact index permutation.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.size() {
            return Err(Error::Dimension(format!(
                "commutation P_{{{},{}}} applied to a vector of length {}",
                self.m,
                self.n,
                v.len()
            )));
        }
        Ok((0..v.len()).map(|r| v[self.source(r)]).collect())
    }

    /// Row permutation `P_mn * a` without forming `P_mn`.
    pub fn permute_rows(&self, a: &Mat) -> Result<Mat> {
        if a.rows() != self.size() {
            return Err(Error::Dimension(format!(
                "commutation of size {} applied to {} rows",
                self.size(),
                a.rows()
            )));
        }
        let mut out = Mat::zeros(a.rows(), a.cols())?;
        for j in 0..a.cols() {
            let src = a.col(j);
            for (r, o) in out.col_mut(j).iter_mut().enumerate() {
                *o = src[self.source(r)];
            }
        }
        Ok(out)
    }
}

/// Builds `P_mn`.
pub fn commutation(m: usize, n: usize) -> Commutation {
    Commutation { m, n }
}

/// `P_mn v`.
pub fn apply_commutation(m: usize, n: usize, v: &Vector) -> Result<Vector> {
    commutation(m, n).apply(v.as_slice()).map(Vector::new)
}
