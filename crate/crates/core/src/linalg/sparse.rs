use super::{Matrix, Vector};
use crate::field::Field;

/// Column-compressed matrix for repeated products with sparse operators.
#[derive(Clone, Debug)]
pub struct SparseMatrix<F: Field> {
    field: F,
    rows: usize,
    columns: Vec<Vec<(usize, F::Elem)>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn from_dense(m: &Matrix<F>) -> Self {
        let f = m.field();
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter(|&i| !f.is_zero(m.get(i, j)))
                    .map(|i| (i, m.get(i, j).clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            field: f.clone(),
            rows: m.rows(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.columns.len()
    }
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.rows];
        self.mul_vec_add(v, &f.one(), &mut out);
        out
    }

    /// `out += c * self * v`.
    pub fn mul_vec_add(&self, v: &[F::Elem], c: &F::Elem, out: &mut [F::Elem]) {
        let f = &self.field;
        for (col, x) in self.columns.iter().zip(v) {
            if f.is_zero(x) {
                continue;
            }
            let cx = f.mul(c, x);
            for (i, a) in col {
                f.mul_add_assign(&mut out[*i], &cx, a);
            }
        }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(&self.field, self.rows, self.cols());
        for (j, col) in self.columns.iter().enumerate() {
            for (i, a) in col {
                m.set(*i, j, a.clone());
            }
        }
        m
    }
}
