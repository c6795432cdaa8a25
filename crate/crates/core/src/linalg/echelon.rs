use super::{first_nonzero, matrix::kernel_from_rref, zero_vector, Matrix, Vector};
use crate::field::Field;

/// Incrementally maintained reduced row echelon basis.
///
/// Rows are kept sorted by pivot column and fully reduced, so the stored basis
/// is the canonical basis of the span at every moment.
#[derive(Clone, Debug)]
pub struct EchelonBasis<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> EchelonBasis<F> {
    pub fn new(field: &F, ambient: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors<'a, I>(field: &F, ambient: usize, vs: I) -> Self
    where
        I: IntoIterator<Item = &'a Vector<F>>,
        F::Elem: 'a,
    {
        let mut e = Self::new(field, ambient);
        for v in vs {
            e.insert(v.clone());
        }
        e
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn rows(&self) -> &[Vector<F>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn into_rows(self) -> Vec<Vector<F>> {
        self.rows
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, mut v: Vector<F>) -> Vector<F> {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&v[p]) {
                continue;
            }
            let c = v[p].clone();
            for j in p..self.ambient {
                if !f.is_zero(&row[j]) {
                    f.mul_sub_assign(&mut v[j], &c, &row[j]);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Coefficients of `v` against [`Self::rows`], if `v` lies in the span.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn insert(&mut self, v: Vector<F>) -> bool {
        assert_eq!(
            v.len(),
            self.ambient,
            "vector length does not match ambient dimension"
        );
        let f = self.field.clone();
        let mut r = self.reduce(v);
        let Some(p) = first_nonzero(&f, &r) else {
            return false;
        };
        let inv = f.inv(&r[p]).expect("nonzero");
        for x in r.iter_mut().skip(p) {
            *x = f.mul(x, &inv);
        }
        for row in self.rows.iter_mut() {
            if f.is_zero(&row[p]) {
                continue;
            }
            let c = row[p].clone();
            for j in p..self.ambient {
                if !f.is_zero(&r[j]) {
                    f.mul_sub_assign(&mut row[j], &c, &r[j]);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    /// Canonical basis of `{x : row · x = 0 for every stored row}`.
    pub fn null_space(&self) -> Vec<Vector<F>> {
        let m = Matrix::from_rows(&self.field, self.ambient, &self.rows);
        kernel_from_rref(&self.field, &m, &self.pivots, self.ambient)
    }

    /// Vectors of the canonical basis of `ambient / span` representatives:
    /// the unit vectors at non-pivot columns.
    pub fn complement_units(&self) -> Vec<Vector<F>> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = zero_vector(&self.field, self.ambient);
                v[c] = self.field.one();
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn insert_keeps_canonical_rref() {
        let q = Rationals;
        let v = |xs: &[i64]| xs.iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>();
        let mut e = EchelonBasis::new(&q, 3);
        assert!(e.insert(v(&[0, 1, 1])));
        assert!(e.insert(v(&[1, 1, 0])));
        assert!(!e.insert(v(&[1, 2, 1])));
        assert_eq!(e.rows(), &[v(&[1, 0, -1]), v(&[0, 1, 1])]);
        assert_eq!(e.coordinates(&v(&[2, 3, 1])), Some(v(&[2, 3])));
        assert_eq!(e.null_space(), vec![v(&[1, -1, 1])]);
    }
}
