//! Dense matrices over a [`Scalar`] field.

use super::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct Mat<C> {
    rows: usize,
    cols: usize,
    entries: Vec<C>,
}

impl<C: Scalar> Mat<C> {
    pub fn from_rows(rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Mat { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat { rows, cols, entries }
    }

    /// The `n x n` identity, with entries modelled on `one`.
    pub fn identity(n: usize, one: &C) -> Self {
        let (z, o) = (one.zero_like(), one.one_like());
        Mat::from_fn(n, n, |i, j| if i == j { o.clone() } else { z.clone() })
    }

    pub fn zeros(rows: usize, cols: usize, one: &C) -> Self {
        let z = one.zero_like();
        Mat::from_fn(rows, cols, |_, _| z.clone())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[C] {
        &self.entries
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> Mat<D> {
        Mat { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Mat<C>) -> Result<Mat<C>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let zero = self.entries.first().or(rhs.entries.first()).map(|c| c.zero_like());
        let Some(zero) = zero else {
            return Ok(Mat { rows: self.rows, cols: rhs.cols, entries: Vec::new() });
        };
        Ok(Mat::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if !b.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(b));
                }
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[C]) -> Result<Vec<C>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(v[0].zero_like(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b))))
            .collect())
    }

    pub fn add(&self, rhs: &Mat<C>) -> Result<Mat<C>> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch("matrix sum shapes".into()));
        }
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map(|x| x.mul_ref(c))
    }

    /// `self^k` for a square matrix.
    pub fn pow(&self, k: u32) -> Result<Mat<C>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix".into()));
        }
        let one = self.entries.first().map(|c| c.one_like());
        let Some(one) = one else {
            return Ok(self.clone());
        };
        let mut acc = Mat::identity(self.rows, &one);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Determinant by Gaussian elimination over the field.
    pub fn det(&self) -> C {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let Some(first) = self.entries.first() else {
            panic!("determinant of an empty matrix");
        };
        let mut a = self.to_rows();
        let mut det = first.one_like();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return first.zero_like();
            };
            if piv != col {
                a.swap(piv, col);
                det = det.neg_ref();
            }
            let inv = a[col][col].inv_ref().expect("nonzero pivot");
            det = det.mul_ref(&a[col][col]);
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul_ref(&inv);
                for c in col..n {
                    let v = a[r][c].sub_ref(&f.mul_ref(&a[col][c]));
                    a[r][c] = v;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Mat<C>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let Some(first) = self.entries.first() else {
            return Ok(self.clone());
        };
        let mut a = self.to_rows();
        let mut b = Mat::identity(n, first).to_rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(piv, col);
            b.swap(piv, col);
            let inv = a[col][col].inv_ref().expect("nonzero pivot");
            for c in 0..n {
                a[col][c] = a[col][c].mul_ref(&inv);
                b[col][c] = b[col][c].mul_ref(&inv);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    let va = a[r][c].sub_ref(&f.mul_ref(&a[col][c]));
                    a[r][c] = va;
                    let vb = b[r][c].sub_ref(&f.mul_ref(&b[col][c]));
                    b[r][c] = vb;
                }
            }
        }
        Ok(Mat::from_rows(b))
    }

    /// Solves `self * x = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &[C]) -> Result<Vec<C>> {
        self.inverse()?.mul_vec(rhs)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat<C>, Vec<usize>) {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(piv) = (row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(piv, row);
            let inv = a[row][col].inv_ref().expect("nonzero pivot");
            for c in col..self.cols {
                a[row][c] = a[row][c].mul_ref(&inv);
            }
            for r in 0..self.rows {
                if r == row || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in col..self.cols {
                    let v = a[r][c].sub_ref(&f.mul_ref(&a[row][c]));
                    a[r][c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        let m = if a.is_empty() { self.clone() } else { Mat::from_rows(a) };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let Some(first) = self.entries.first() else {
            return Vec::new();
        };
        let (zero, one) = (first.zero_like(), first.one_like());
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![zero.clone(); self.cols];
                v[f] = one.clone();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = r.get(i, f).neg_ref();
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rat;

    fn m(rows: &[&[i64]]) -> Mat<Rat> {
        Mat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect())
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det(), Rat::from(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Mat::identity(3, &Rat::one()));
        let sing = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(sing.det(), Rat::zero());
        assert_eq!(sing.inverse(), Err(Error::SingularMatrix));
        // Row swap changes the sign.
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det(), Rat::from(-1));
    }

    #[test]
    fn companion_power_is_scalar() {
        let a = m(&[&[0, 1, 0], &[0, 0, 1], &[2, 0, 0]]);
        assert_eq!(a.pow(3).unwrap(), Mat::identity(3, &Rat::one()).scale(&Rat::from(2)));
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ker = a.kernel();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&v).unwrap().iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn shape_errors() {
        let a = m(&[&[1, 2]]);
        assert!(matches!(a.mul(&a), Err(Error::DimensionMismatch(_))));
        assert!(matches!(a.inverse(), Err(Error::DimensionMismatch(_))));
    }
}
