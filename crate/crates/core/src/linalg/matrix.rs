use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

use super::Subspace;

/// Dense row-major matrix over a finite field.
///
/// Vectors are rows: a linear map is applied as `x * M`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            field.check(x)?;
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds from nested rows. An empty outer list needs `cols` supplied
    /// separately, see [`Matrix::from_rows_with_cols`].
    pub fn from_rows<R: AsRef<[Elem]>>(field: &Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    pub fn from_rows_with_cols<R: AsRef<[Elem]>>(
        field: &Field,
        rows: &[R],
        cols: usize,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        Self::from_vec(field, rows.len(), cols, data)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Elem) {
        debug_assert!(v < self.field.order());
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [Elem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Elem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn same_field(&self, other: &Matrix) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(&self.field, self.rows, other.cols);
        let f = &self.field;
        for r in 0..self.rows {
            let dst = &mut out.data[r * other.cols..(r + 1) * other.cols];
            for k in 0..self.cols {
                let c = self.data[r * self.cols + k];
                if c != 0 {
                    // dst += c * other[k]  ==  dst -= (-c) * other[k]
                    f.sub_scaled(dst, f.neg(c), other.row(k));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, `x * M`.
    pub fn vec_mul(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}x{} matrix",
                x.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        let mut out = vec![0; self.cols];
        for (k, &c) in x.iter().enumerate() {
            if c != 0 {
                f.sub_scaled(&mut out, f.neg(c), self.row(k));
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum shapes differ".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("hstack of nothing".into()))?;
        let rows = first.rows;
        let mut cols = 0;
        for p in parts {
            first.same_field(p)?;
            if p.rows != rows {
                return Err(Error::DimensionMismatch("hstack row counts differ".into()));
            }
            cols += p.cols;
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for p in parts {
                data.extend_from_slice(p.row(r));
            }
        }
        Ok(Matrix {
            field: first.field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix> {
        let first = parts
            .first()
            .ok_or_else(|| Error::DimensionMismatch("vstack of nothing".into()))?;
        let cols = first.cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            first.same_field(p)?;
            if p.cols != cols {
                return Err(Error::DimensionMismatch("vstack column counts differ".into()));
            }
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Ok(Matrix {
            field: first.field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// `M(I, J)`: rows `I` and columns `J`, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::DimensionMismatch(format!("row index {r} out of range")));
        }
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::DimensionMismatch(format!("column index {c} out of range")));
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            let row = self.row(r);
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Ok(Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        })
    }

    pub fn select_cols(&self, cols: &[usize]) -> Result<Matrix> {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Matrix> {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// Contiguous row range `[start, start + len)`.
    pub fn row_block(&self, start: usize, len: usize) -> Matrix {
        Matrix {
            field: self.field.clone(),
            rows: len,
            cols: self.cols,
            data: self.data[start * self.cols..(start + len) * self.cols].to_vec(),
        }
    }

    /// Reduces to reduced row-echelon form in place, returning pivot columns.
    /// Zero rows end up at the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| self.data[r * cols + c] != 0) else {
                continue;
            };
            if p != lead {
                for j in 0..cols {
                    self.data.swap(p * cols + j, lead * cols + j);
                }
            }
            let inv = f.inv_nonzero(self.data[lead * cols + c]);
            f.scale(&mut self.data[lead * cols + c..(lead + 1) * cols], inv);
            let (before, rest) = self.data.split_at_mut(lead * cols);
            let (pivot_row, after) = rest.split_at_mut(cols);
            for r in 0..self.rows {
                let dst = match r.cmp(&lead) {
                    std::cmp::Ordering::Less => &mut before[r * cols..(r + 1) * cols],
                    std::cmp::Ordering::Equal => continue,
                    std::cmp::Ordering::Greater => {
                        let o = (r - lead - 1) * cols;
                        &mut after[o..o + cols]
                    }
                };
                let factor = dst[c];
                if factor != 0 {
                    f.sub_scaled(&mut dst[c..], factor, &pivot_row[c..]);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let p = m.rref_in_place();
        (m, p)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::hstack(&[self, &Matrix::identity(&self.field, n)])?;
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        aug.select_cols(&cols)
    }

    /// Some `X` with `self * X = rhs`, free variables set to zero.
    pub fn solve_right(&self, rhs: &Matrix) -> Result<Matrix> {
        if rhs.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side has {} rows, matrix has {}",
                rhs.rows, self.rows
            )));
        }
        let n = self.cols;
        let mut aug = Matrix::hstack(&[self, rhs])?;
        let pivots = aug.rref_in_place();
        if pivots.last().is_some_and(|&p| p >= n) {
            return Err(Error::NoSolution);
        }
        let mut x = Matrix::zeros(&self.field, n, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x.row_mut(p).copy_from_slice(&aug.row(i)[n..]);
        }
        Ok(x)
    }

    /// Some row vector `x` with `x * self = y`.
    pub fn solve(&self, y: &[Elem]) -> Result<Vec<Elem>> {
        if y.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "target of length {} for a matrix with {} columns",
                y.len(),
                self.cols
            )));
        }
        let yt = Matrix::from_vec(&self.field, self.cols, 1, y.to_vec())?;
        let x = self.transpose().solve_right(&yt)?;
        Ok(x.data)
    }

    /// Basis of `{v : self * v^T = 0}` as the rows of the returned matrix.
    pub fn right_kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let f = &self.field;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(f, free.len(), n);
        for (i, &fc) in free.iter().enumerate() {
            k.set(i, fc, 1);
            for (pr, &pc) in pivots.iter().enumerate() {
                k.set(i, pc, f.neg(r.get(pr, fc)));
            }
        }
        k
    }

    /// Left kernel `{x : x * self = 0}`.
    pub fn kernel(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose().right_kernel())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// Row space of the columns, i.e. the image `{self * v^T}` as row vectors.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose())
    }
}
