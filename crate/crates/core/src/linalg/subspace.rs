use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

use super::Matrix;

/// Subspace of `F_q^n` held by its reduced row-echelon basis, so two
/// subspaces are equal exactly when their bases are.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            basis: r.select_rows(&keep).expect("pivot rows exist"),
            pivots,
        }
    }

    pub fn from_rows<R: AsRef<[Elem]>>(field: &Field, ambient: usize, rows: &[R]) -> Result<Self> {
        Ok(Self::from_matrix(&Matrix::from_rows_with_cols(field, rows, ambient)?))
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of F^{} and F^{}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                f.sub_scaled(&mut v, c, self.basis.row(i));
            }
        }
        v
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let coords: Vec<Elem> = self.pivots.iter().map(|&p| v[p]).collect();
        self.reduce(v).iter().all(|&x| x == 0).then_some(coords)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.ambient_dim() && self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        self.compatible(other).is_ok()
            && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(Subspace::from_matrix(&Matrix::vstack(&[&self.basis, &other.basis])?))
    }

    /// Zassenhaus: row-reduce `[[U, U], [V, 0]]`; rows whose left half
    /// vanishes carry a basis of `U ∩ V` in their right half.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let n = self.ambient_dim();
        let f = self.field();
        let top = Matrix::hstack(&[&self.basis, &self.basis])?;
        let bottom = Matrix::hstack(&[&other.basis, &Matrix::zeros(f, other.dim(), n)])?;
        let (r, pivots) = Matrix::vstack(&[&top, &bottom])?.rref();
        let rows: Vec<usize> = (0..pivots.len()).filter(|&i| pivots[i] >= n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(Subspace::from_matrix(&r.submatrix(&rows, &right)?))
    }

    /// A subspace `C` with `self ⊕ C = outer`. Requires `self ⊆ outer`.
    pub fn complement_within(&self, outer: &Subspace) -> Result<Subspace> {
        self.compatible(outer)?;
        if !outer.contains_space(self) {
            return Err(Error::NotContained);
        }
        let mut acc = self.clone();
        let mut extra: Vec<Vec<Elem>> = Vec::new();
        for i in 0..outer.dim() {
            let w = outer.basis.row(i);
            if !acc.contains(w) {
                extra.push(w.to_vec());
                acc = acc.sum(&Subspace::from_rows(self.field(), self.ambient_dim(), &[w])?)?;
            }
        }
        Subspace::from_rows(self.field(), self.ambient_dim(), &extra)
    }
}
