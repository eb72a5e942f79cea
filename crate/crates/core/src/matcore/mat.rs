use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};

/// Dense real matrix stored column-major.
///
/// Column-major storage makes the backing slice coincide with `vec(self)`,
/// so vectorization and its inverse never move data.
#[derive(Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

pub(crate) fn checked_len(rows: usize, cols: usize) -> Result<usize> {
    rows.checked_mul(cols)
        .filter(|&len| len <= isize::MAX as usize / std::mem::size_of::<f64>())
        .ok_or_else(|| Error::Capacity(format!("{rows} x {cols} matrix does not fit in memory")))
}

fn check_finite(data: &[f64]) -> Result<()> {
    match data.iter().position(|v| !v.is_finite()) {
        Some(k) => Err(Error::Value(format!("entry {k} is {}", data[k]))),
        None => Ok(()),
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Result<Mat> {
        let len = checked_len(rows, cols)?;
        Ok(Mat { rows, cols, data: vec![0.0; len] })
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat { rows: n, cols: n, data: vec![0.0; n * n] };
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(d: &[f64]) -> Result<Mat> {
        check_finite(d)?;
        let mut m = Mat::identity(d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        Ok(m)
    }

    /// Takes ownership of column-major data.
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Mat> {
        let len = checked_len(rows, cols)?;
        if data.len() != len {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows} x {cols} matrix",
                data.len()
            )));
        }
        check_finite(&data)?;
        Ok(Mat { rows, cols, data })
    }

    pub fn from_row_major(rows: usize, cols: usize, data: &[f64]) -> Result<Mat> {
        let len = checked_len(rows, cols)?;
        if data.len() != len {
            return Err(Error::Dimension(format!(
                "{} entries supplied for a {rows} x {cols} matrix",
                data.len()
            )));
        }
        check_finite(data)?;
        let mut m = Mat { rows, cols, data: vec![0.0; len] };
        for i in 0..rows {
            for j in 0..cols {
                m.data[i + j * rows] = data[i * cols + j];
            }
        }
        Ok(m)
    }

    /// Builds a matrix from row literals, e.g. `Mat::from_rows(&[[1.0, 2.0], [3.0, 4.0]])`.
    pub fn from_rows<const C: usize>(rows: &[[f64; C]]) -> Result<Mat> {
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Mat::from_row_major(rows.len(), C, &flat)
    }

    /// Builds a matrix by evaluating `f(i, j)` for every entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Mat> {
        let len = checked_len(rows, cols)?;
        let mut data = Vec::with_capacity(len);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        check_finite(&data)?;
        Ok(Mat { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Column-major entries.
    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_col_major(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[f64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub(crate) fn col_mut(&mut self, j: usize) -> &mut [f64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(self[(i, j)]);
            }
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat { rows: self.cols, cols: self.rows, data: vec![0.0; self.data.len()] };
        for j in 0..self.cols {
            for i in 0..self.rows {
                t.data[j + i * self.cols] = self.data[i + j * self.rows];
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &Mat) -> Result<Mat> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {} x {} by {} x {}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Mat::zeros(self.rows, rhs.cols)?;
        gemm_acc(&mut out, 1.0, self, rhs);
        Ok(out)
    }

    pub fn add(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Mat) -> Result<Mat> {
        self.zip_with(rhs, "subtract", |a, b| a - b)
    }

    pub fn scale(&self, alpha: f64) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|v| alpha * v).collect() }
    }

    pub fn neg(&self) -> Mat {
        self.scale(-1.0)
    }

    fn zip_with(&self, rhs: &Mat, what: &str, f: impl Fn(f64, f64) -> f64) -> Result<Mat> {
        if self.shape() != rhs.shape() {
            return Err(Error::Dimension(format!(
                "cannot {what} {} x {} and {} x {}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn frobenius(&self) -> f64 {
        frobenius_slice(&self.data)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        (0..self.cols)
            .map(|j| self.col(j).iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// `‖self − other‖_F / ‖other‖_F`, or the absolute difference when `other` is zero.
    pub fn rel_diff(&self, other: &Mat) -> Result<f64> {
        let d = self.sub(other)?.frobenius();
        let s = other.frobenius();
        Ok(if s == 0.0 { d } else { d / s })
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// Overflow-safe Euclidean norm.
pub(crate) fn frobenius_slice(v: &[f64]) -> f64 {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    let ss: f64 = v.iter().map(|x| (x / scale) * (x / scale)).sum();
    scale * ss.sqrt()
}

/// `out += alpha * a * b`, dimensions already checked.
pub(crate) fn gemm_acc(out: &mut Mat, alpha: f64, a: &Mat, b: &Mat) {
    let m = a.rows;
    let k = a.cols;
    if m == 0 {
        return;
    }
    for j in 0..b.cols {
        let bcol = &b.data[j * k..(j + 1) * k];
        let ocol = &mut out.data[j * m..(j + 1) * m];
        for (p, &bpj) in bcol.iter().enumerate() {
            if bpj == 0.0 {
                continue;
            }
            let s = alpha * bpj;
            let acol = &a.data[p * m..(p + 1) * m];
            for (o, &av) in ocol.iter_mut().zip(acol) {
                *o += s * av;
            }
        }
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i + j * self.rows]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i + j * self.rows]
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>12.6e} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
