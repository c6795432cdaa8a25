use std::fmt;

use super::{axpy, is_zero_vector, zero_vector, EchelonBasis, LinalgError, Subspace, Vector};
use crate::field::Field;

/// Row-major dense matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {}",
            self.rows,
            self.cols,
            self.field.kind()
        )?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| self.field.format(x)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(
        field: &F,
        rows: usize,
        cols: usize,
        data: Vec<F::Elem>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from row vectors; `cols` is needed for the empty case.
    pub fn from_rows(field: &F, cols: usize, rows: &[Vector<F>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vector<F>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vector<F>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, cols, &rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: F::Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F::Elem] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector<F>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vector<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.field, &self.data)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(&self.field, self.rows)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(c, a)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        axpy(&self.field, &mut self.data, c, &other.data);
    }

    /// Matrix product; zero entries of `self` are skipped, which keeps the
    /// mostly-sparse action matrices cheap.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                let (orow, brow) = (i * other.cols, k * other.cols);
                for j in 0..other.cols {
                    let b = &other.data[brow + j];
                    if !f.is_zero(b) {
                        f.mul_add_assign(&mut out.data[orow + j], a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        let f = &self.field;
        let nz: Vec<usize> = (0..v.len()).filter(|&j| !f.is_zero(&v[j])).collect();
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let mut acc = f.zero();
                for &j in &nz {
                    f.mul_add_assign(&mut acc, &row[j], &v[j]);
                }
                acc
            })
            .collect()
    }

    /// `self ⊗ other`, with `(i, k), (j, l)` at `(i * other.rows + k, j * other.cols + l)`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = &self.field;
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            f.mul(a, other.get(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let vs: Vec<Vector<F>> = rows.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(&self.field, self.cols, &vs)
    }

    /// Reduced row echelon form and pivot columns. Pivot search is leftmost
    /// column first, then the first row at or below the current one.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let x = f.mul(m.get(r, j), &inv);
                m.set(r, j, x);
            }
            let pivot_row: Vector<F> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let row = m.row_mut(i);
                for j in c..row.len() {
                    f.mul_sub_assign(&mut row[j], &factor, &pivot_row[j]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Fewer rows than columns is cheaper to eliminate.
        if self.rows <= self.cols {
            let mut e = EchelonBasis::new(&self.field, self.cols);
            for i in 0..self.rows {
                e.insert(self.row(i).to_vec());
            }
            e.rank()
        } else {
            self.transpose().rank()
        }
    }

    /// Canonical basis of the null space: the reduced echelon basis of
    /// `{x : self * x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vector<F>> {
        let (r, pivots) = self.rref();
        kernel_from_rref(&self.field, &r, &pivots, self.cols)
    }

    pub fn kernel(&self) -> Subspace<F> {
        Subspace::from_canonical_unchecked(&self.field, self.cols, self.kernel_basis())
    }

    /// Canonical basis of the column space.
    pub fn column_space(&self) -> Subspace<F> {
        Subspace::from_spanning(&self.field, self.rows, &self.columns())
    }

    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_spanning(&self.field, self.cols, &self.row_vectors())
    }

    /// Some particular solution of `self * x = b`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vector<F>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let f = &self.field;
        let bcol = Matrix::from_columns(f, self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&bcol).rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(f, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(&self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&cols))
    }
}

pub(crate) fn kernel_from_rref<F: Field>(
    field: &F,
    r: &Matrix<F>,
    pivots: &[usize],
    cols: usize,
) -> Vec<Vector<F>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = zero_vector(field, cols);
        v[free] = field.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = field.neg(r.get(i, free));
        }
        basis.push(v);
    }
    Subspace::from_spanning(field, cols, &basis).into_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn rank_examples() {
        let q = Rationals;
        assert_eq!(Matrix::identity(&q, 2).rank(), 2);
        assert_eq!(Matrix::zeros(&q, 3, 4).rank(), 0);
        assert_eq!(Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        let q = Rationals;
        assert!(Matrix::identity(&q, 3).kernel_basis().is_empty());
        let k = Matrix::zeros(&q, 2, 3).kernel_basis();
        assert_eq!(
            k,
            (0..3)
                .map(|i| super::super::unit_vector(&q, 3, i))
                .collect::<Vec<_>>()
        );
        let f2 = PrimeField::new(2).unwrap();
        let k = Matrix::from_i64(&f2, &[vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![1u64, 1]]);
    }

    #[test]
    fn solve_examples() {
        let q = Rationals;
        let b = vec![q.from_i64(3), q.from_i64(-1)];
        assert_eq!(Matrix::identity(&q, 2).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(Matrix::zeros(&q, 2, 2).solve(&b).unwrap(), None);
        let x = Matrix::from_i64(&q, &[vec![2]])
            .solve(&[q.one()])
            .unwrap()
            .unwrap();
        assert_eq!(x, vec![q.parse("1/2").unwrap()]);
        assert!(Matrix::identity(&q, 2).solve(&[q.one()]).is_err());
    }

    #[test]
    fn inverse_roundtrip() {
        let q = Rationals;
        let m = Matrix::from_i64(&q, &[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(Matrix::from_i64(&q, &[vec![1, 2], vec![2, 4]])
            .inverse()
            .is_none());
    }
}
