//! Partial-pivoted LU factorization (blocked, right-looking).

use crate::error::{Error, Result};
use crate::matcore::mat::Mat;

const PANEL: usize = 48;

/// `P A = L U` with unit-lower `L` and upper `U` packed in one matrix.
///
/// A pivot counts as zero when `|pivot| <= eps * max|a[:, k]| * rows`, with the
/// column maximum taken from the unfactored input, so the test is scale-invariant.
#[derive(Clone, Debug)]
pub struct Lu {
    factors: Mat,
    swaps: Vec<usize>,
    singular: bool,
    norm_one: f64,
}

impl Lu {
    pub fn factor(a: &Mat) -> Result<Lu> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "LU needs a square matrix, got {} x {}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        let tol: Vec<f64> = (0..n)
            .map(|j| f64::EPSILON * a.col(j).iter().fold(0.0_f64, |m, v| m.max(v.abs())) * n as f64)
            .collect();
        let mut lu = Lu { factors: a.clone(), swaps: vec![0; n], singular: false, norm_one: a.norm_one() };
        let mut kb = 0;
        while kb < n {
            let width = PANEL.min(n - kb);
            lu.factor_panel(kb, width, &tol);
            lu.update_trailing(kb, width);
            kb += width;
        }
        Ok(lu)
    }

    fn factor_panel(&mut self, kb: usize, width: usize, tol: &[f64]) {
        let n = self.factors.rows();
        let data = self.factors.as_mut_slice();
        for k in kb..kb + width {
            let col = &data[k * n..(k + 1) * n];
            let (mut p, mut best) = (k, col[k].abs());
            for (i, v) in col.iter().enumerate().skip(k + 1) {
                if v.abs() > best {
                    best = v.abs();
                    p = i;
                }
            }
            self.swaps[k] = p;
            if best <= tol[k] {
                self.singular = true;
            }
            if p != k {
                for j in kb..kb + width {
                    data.swap(k + j * n, p + j * n);
                }
            }
            let pivot = data[k + k * n];
            if pivot == 0.0 {
                continue;
            }
            for v in &mut data[k * n + k + 1..(k + 1) * n] {
                *v /= pivot;
            }
            for j in k + 1..kb + width {
                let (left, right) = data.split_at_mut(j * n);
                let lcol = &left[k * n + k + 1..(k + 1) * n];
                let ukj = right[k];
                if ukj == 0.0 {
                    continue;
                }
                for (a, &l) in right[k + 1..n].iter_mut().zip(lcol) {
                    *a -= l * ukj;
                }
            }
        }
    }

    fn update_trailing(&mut self, kb: usize, width: usize) {
        let n = self.factors.rows();
        let end = kb + width;
        let data = self.factors.as_mut_slice();
        for k in kb..end {
            let p = self.swaps[k];
            if p != k {
                for j in (0..kb).chain(end..n) {
                    data.swap(k + j * n, p + j * n);
                }
            }
        }
        if end == n {
            return;
        }
        let (left, right) = data.split_at_mut(end * n);
        let panel = &left[kb * n..];
        for col in right.chunks_exact_mut(n) {
            // U12 = L11^{-1} A12
            for p in 0..width {
                let x = col[kb + p];
                if x == 0.0 {
                    continue;
                }
                let lcol = &panel[p * n..(p + 1) * n];
                for r in p + 1..width {
                    col[kb + r] -= lcol[kb + r] * x;
                }
            }
        }
        // A22 -= L21 U12, four target columns per sweep over L21.
        let mut groups = right.chunks_exact_mut(4 * n);
        for group in groups.by_ref() {
            let (c0, rest) = group.split_at_mut(n);
            let (c1, rest) = rest.split_at_mut(n);
            let (c2, c3) = rest.split_at_mut(n);
            for p in 0..width {
                let u = [c0[kb + p], c1[kb + p], c2[kb + p], c3[kb + p]];
                let lcol = &panel[p * n + end..(p + 1) * n];
                let rows = lcol.len();
                let (t0, t1, t2, t3) =
                    (&mut c0[end..end + rows], &mut c1[end..end + rows], &mut c2[end..end + rows], &mut c3[end..end + rows]);
                for i in 0..rows {
                    let l = lcol[i];
                    t0[i] -= l * u[0];
                    t1[i] -= l * u[1];
                    t2[i] -= l * u[2];
                    t3[i] -= l * u[3];
                }
            }
        }
        for col in groups.into_remainder().chunks_exact_mut(n) {
            let (upper, lower) = col.split_at_mut(end);
            for (p, &upj) in upper[kb..end].iter().enumerate() {
                if upj == 0.0 {
                    continue;
                }
                let lcol = &panel[p * n + end..(p + 1) * n];
                for (a, &l) in lower.iter_mut().zip(lcol) {
                    *a -= l * upj;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.factors.rows()
    }

    /// True when some pivot fell below the pivot tolerance.
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Packed `L` (strictly lower, unit diagonal implied) and `U`.
    pub fn factors(&self) -> &Mat {
        &self.factors
    }

    fn ensure_nonsingular(&self) -> Result<()> {
        if self.singular {
            Err(Error::SingularMatrix(format!(
                "{n} x {n} matrix has a pivot below tolerance",
                n = self.dim()
            )))
        } else {
            Ok(())
        }
    }

    fn check_rhs(&self, rhs: &Mat) -> Result<()> {
        if rhs.rows() != self.dim() {
            return Err(Error::Dimension(format!(
                "right-hand side has {} rows, system has {}",
                rhs.rows(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Solves `A Z = rhs`.
    pub fn solve(&self, rhs: &Mat) -> Result<Mat> {
        self.ensure_nonsingular()?;
        self.check_rhs(rhs)?;
        let mut z = rhs.clone();
        for j in 0..z.cols() {
            self.solve_in_place(z.col_mut(j));
        }
        Ok(z)
    }

    /// Solves `Aᵀ Z = rhs`.
    pub fn solve_transpose(&self, rhs: &Mat) -> Result<Mat> {
        self.ensure_nonsingular()?;
        self.check_rhs(rhs)?;
        let mut z = rhs.clone();
        for j in 0..z.cols() {
            self.solve_transpose_in_place(z.col_mut(j));
        }
        Ok(z)
    }

    pub(crate) fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.dim();
        let f = self.factors.as_slice();
        for (k, &p) in self.swaps.iter().enumerate() {
            x.swap(k, p);
        }
        for k in 0..n {
            let xk = x[k];
            if xk == 0.0 {
                continue;
            }
            for (xi, &l) in x[k + 1..].iter_mut().zip(&f[k * n + k + 1..(k + 1) * n]) {
                *xi -= l * xk;
            }
        }
        for k in (0..n).rev() {
            x[k] /= f[k + k * n];
            let xk = x[k];
            if xk == 0.0 {
                continue;
            }
            for (xi, &u) in x[..k].iter_mut().zip(&f[k * n..k * n + k]) {
                *xi -= u * xk;
            }
        }
    }

    pub(crate) fn solve_transpose_in_place(&self, x: &mut [f64]) {
        let n = self.dim();
        let f = self.factors.as_slice();
        for k in 0..n {
            let dot: f64 = f[k * n..k * n + k].iter().zip(&x[..k]).map(|(u, y)| u * y).sum();
            x[k] = (x[k] - dot) / f[k + k * n];
        }
        for k in (0..n).rev() {
            let dot: f64 = f[k * n + k + 1..(k + 1) * n].iter().zip(&x[k + 1..]).map(|(l, z)| l * z).sum();
            x[k] -= dot;
        }
        for (k, &p) in self.swaps.iter().enumerate().rev() {
            x.swap(k, p);
        }
    }

    /// Reciprocal 1-norm condition estimate (Hager's method); 0 when singular.
    pub fn rcond(&self) -> f64 {
        let n = self.dim();
        if n == 0 {
            return 1.0;
        }
        if self.singular || self.norm_one == 0.0 {
            return 0.0;
        }
        let mut x = vec![1.0 / n as f64; n];
        let mut est = 0.0;
        for iter in 0..5 {
            let mut y = x.clone();
            self.solve_in_place(&mut y);
            let ynorm: f64 = y.iter().map(|v| v.abs()).sum();
            if !ynorm.is_finite() {
                return 0.0;
            }
            if iter > 0 && ynorm <= est {
                break;
            }
            est = ynorm;
            let mut z: Vec<f64> = y.iter().map(|&v| if v >= 0.0 { 1.0 } else { -1.0 }).collect();
            self.solve_transpose_in_place(&mut z);
            let (jmax, zmax) = z
                .iter()
                .enumerate()
                .fold((0, 0.0_f64), |(bj, bz), (j, v)| if v.abs() > bz { (j, v.abs()) } else { (bj, bz) });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if iter > 0 && zmax <= ztx {
                break;
            }
            x.iter_mut().for_each(|v| *v = 0.0);
            x[jmax] = 1.0;
        }
        1.0 / (self.norm_one * est)
    }
}

/// Solves `a Z = rhs` by partial-pivoted LU.
pub fn lu_solve(a: &Mat, rhs: &Mat) -> Result<Mat> {
    Lu::factor(a)?.solve(rhs)
}
