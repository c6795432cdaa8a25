use super::{EchelonBasis, Matrix, Subspace, Vector};
use crate::field::Field;

/// `C^0 -> C^1 -> ...` with `d[n]: C^n -> C^{n+1}`.
#[derive(Clone, Debug)]
pub struct CochainComplex<F: Field> {
    field: F,
    dims: Vec<usize>,
    d: Vec<Matrix<F>>,
}

impl<F: Field> CochainComplex<F> {
    /// `d.len()` must be `dims.len() - 1`.
    pub fn new(field: &F, dims: Vec<usize>, d: Vec<Matrix<F>>) -> Self {
        assert_eq!(d.len() + 1, dims.len());
        for (n, m) in d.iter().enumerate() {
            assert_eq!((m.rows(), m.cols()), (dims[n + 1], dims[n]), "d{n} shape");
        }
        CochainComplex {
            field: field.clone(),
            dims,
            d,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn differential(&self, n: usize) -> &Matrix<F> {
        &self.d[n]
    }
    /// Highest degree whose cohomology is determined.
    pub fn top(&self) -> usize {
        self.d.len().saturating_sub(1)
    }

    pub fn check_d_squared(&self) -> Result<(), usize> {
        for n in 1..self.d.len() {
            if !self.d[n].mul(&self.d[n - 1]).is_zero() {
                return Err(n);
            }
        }
        Ok(())
    }

    pub fn rank(&self, n: usize) -> usize {
        self.d[n].rank()
    }

    pub fn cocycles(&self, n: usize) -> Subspace<F> {
        self.d[n].kernel()
    }

    pub fn coboundaries(&self, n: usize) -> Subspace<F> {
        if n == 0 {
            Subspace::zero(&self.field, self.dims[0])
        } else {
            self.d[n - 1].column_space()
        }
    }

    /// `dim H^n` for `n ≤ top()`.
    pub fn cohomology_dim(&self, n: usize) -> usize {
        let prev = if n == 0 { 0 } else { self.rank(n - 1) };
        self.dims[n] - self.rank(n) - prev
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        (0..=self.top()).map(|n| self.cohomology_dim(n)).collect()
    }

    /// Cocycles whose classes form a basis of `H^n`: canonical cocycle basis
    /// vectors that are independent modulo the coboundaries.
    pub fn representatives(&self, n: usize) -> Vec<Vector<F>> {
        let z = self.cocycles(n);
        let b = self.coboundaries(n);
        let mut acc = EchelonBasis::from_vectors(&self.field, self.dims[n], b.basis());
        z.basis()
            .iter()
            .filter(|v| acc.insert((*v).clone()))
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn simplicial_circle() {
        let q = Rationals;
        // two vertices, two edges both from v0 to v1
        let d0 = Matrix::from_i64(&q, &[vec![-1, 1], vec![-1, 1]]);
        let c = CochainComplex::new(&q, vec![2, 2], vec![d0]);
        assert_eq!(c.cohomology_dim(0), 1);
        let c = CochainComplex::new(
            &q,
            vec![2, 2, 0],
            vec![c.differential(0).clone(), Matrix::zeros(&q, 0, 2)],
        );
        assert_eq!(c.cohomology_dims(), vec![1, 1]);
        assert_eq!(c.representatives(1).len(), 1);
        assert!(c.check_d_squared().is_ok());
    }
}
