//! The vec operator, its inverse, and the Kronecker product.

use crate::error::{Error, Result};
use crate::matcore::mat::{checked_len, Mat};

/// A dense real column vector, typically `vec` of some matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Vector {
        Vector(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "cannot subtract vectors of length {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn norm(&self) -> f64 {
        crate::matcore::mat::frobenius_slice(&self.0)
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Vector {
        Vector(v)
    }
}

/// Stacks the columns of `a` top to bottom.
pub fn vec(a: &Mat) -> Vector {
    Vector(a.as_slice().to_vec())
}

/// Consuming variant of [`vec`]; a relabeling with no data movement.
pub fn into_vec(a: Mat) -> Vector {
    Vector(a.into_col_major())
}

/// Inverse of [`vec`] for an `m x n` target.
pub fn unvec(v: Vector, m: usize, n: usize) -> Result<Mat> {
    let len = checked_len(m, n)?;
    if v.len() != len {
        return Err(Error::Dimension(format!(
            "vector of length {} cannot be reshaped to {m} x {n}",
            v.len()
        )));
    }
    Mat::from_col_major(m, n, v.0)
}

/// `a ⊗ b`: block `(i, j)` of the result is `a[i, j] * b`.
pub fn kron(a: &Mat, b: &Mat) -> Result<Mat> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let rows = ar
        .checked_mul(br)
        .ok_or_else(|| Error::Capacity(format!("kron row count {ar} * {br} overflows")))?;
    let cols = ac
        .checked_mul(bc)
        .ok_or_else(|| Error::Capacity(format!("kron column count {ac} * {bc} overflows")))?;
    let mut out = Mat::zeros(rows, cols)?;
    for ja in 0..ac {
        for jb in 0..bc {
            let col = out.col_mut(ja * bc + jb);
            let bcol = b.col(jb);
            for ia in 0..ar {
                let s = a[(ia, ja)];
                if s == 0.0 {
                    continue;
                }
                for (o, &bv) in col[ia * br..(ia + 1) * br].iter_mut().zip(bcol) {
                    *o = s * bv;
                }
            }
        }
    }
    Ok(out)
}

/// Dense matrix-vector product `a * v`.
pub fn matvec(a: &Mat, v: &Vector) -> Result<Vector> {
    if a.cols() != v.len() {
        return Err(Error::Dimension(format!(
            "cannot multiply {} x {} by a vector of length {}",
            a.rows(),
            a.cols(),
            v.len()
        )));
    }
    let mut out = vec![0.0; a.rows()];
    for (j, &x) in v.as_slice().iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (o, &aij) in out.iter_mut().zip(a.col(j)) {
            *o += aij * x;
        }
    }
    Ok(Vector(out))
}
