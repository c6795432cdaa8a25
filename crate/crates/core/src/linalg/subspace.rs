use serde::Serialize;

use super::{EchelonBasis, LinalgError, Vector};
use crate::field::Field;

/// A subspace of `K^n`, stored by its canonical (reduced echelon) basis.
#[derive(Clone, Debug)]
pub struct Subspace<F: Field> {
    echelon: EchelonBasis<F>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubspaceSummary {
    pub ambient: usize,
    pub dim: usize,
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient() == other.ambient() && self.basis() == other.basis()
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            echelon: EchelonBasis::new(field, ambient),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let units: Vec<Vector<F>> = (0..ambient)
            .map(|i| super::unit_vector(field, ambient, i))
            .collect();
        Self::from_spanning(field, ambient, &units)
    }

    pub fn from_spanning(field: &F, ambient: usize, vs: &[Vector<F>]) -> Self {
        Subspace {
            echelon: EchelonBasis::from_vectors(field, ambient, vs),
        }
    }

    pub fn from_echelon(echelon: EchelonBasis<F>) -> Self {
        Subspace { echelon }
    }

    /// Trusts that `basis` is already canonical; used for kernels computed from
    /// an RREF, which are canonicalized on the way out anyway.
    pub(crate) fn from_canonical_unchecked(
        field: &F,
        ambient: usize,
        basis: Vec<Vector<F>>,
    ) -> Self {
        Self::from_spanning(field, ambient, &basis)
    }

    pub fn field(&self) -> &F {
        self.echelon.field()
    }
    pub fn ambient(&self) -> usize {
        self.echelon.ambient()
    }
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }
    pub fn basis(&self) -> &[Vector<F>] {
        self.echelon.rows()
    }
    pub fn pivots(&self) -> &[usize] {
        self.echelon.pivots()
    }
    pub fn echelon(&self) -> &EchelonBasis<F> {
        &self.echelon
    }
    pub fn into_basis(self) -> Vec<Vector<F>> {
        self.echelon.into_rows()
    }
    pub fn summary(&self) -> SubspaceSummary {
        SubspaceSummary {
            ambient: self.ambient(),
            dim: self.dim(),
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.echelon.contains(v)
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.basis().iter().all(|v| self.contains(v))
    }

    /// Coordinates against the canonical basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vector<F>> {
        self.echelon.coordinates(v)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut e = self.echelon.clone();
        for v in other.basis() {
            e.insert(v.clone());
        }
        Subspace { echelon: e }
    }

    /// Zassenhaus: reduce rows `(u, u)` and `(w, 0)`; rows whose first half
    /// vanishes span the intersection in their second half.
    pub fn intersection(&self, other: &Self) -> Self {
        let f = self.field();
        let n = self.ambient();
        assert_eq!(n, other.ambient());
        let mut e = EchelonBasis::new(f, 2 * n);
        for u in self.basis() {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            e.insert(row);
        }
        for w in other.basis() {
            let mut row = w.clone();
            row.extend(std::iter::repeat_n(f.zero(), n));
            e.insert(row);
        }
        let vs: Vec<Vector<F>> = e
            .rows()
            .iter()
            .zip(e.pivots())
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r[n..].to_vec())
            .collect();
        Self::from_spanning(f, n, &vs)
    }

    /// `dim(self / sub)`; `sub` must lie inside `self`.
    pub fn quotient_dim(&self, sub: &Self) -> Result<usize, LinalgError> {
        if !self.contains_space(sub) {
            return Err(LinalgError::NotSubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Canonical basis vectors of `self` that are not in the span of `sub`
    /// together with the previously kept ones: representatives of `self / sub`.
    pub fn complement_representatives(&self, sub: &Self) -> Result<Vec<Vector<F>>, LinalgError> {
        if !self.contains_space(sub) {
            return Err(LinalgError::NotSubspace);
        }
        let mut e = sub.echelon.clone();
        Ok(self
            .basis()
            .iter()
            .filter(|v| e.insert((*v).clone()))
            .cloned()
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rationals};

    fn v(xs: &[i64]) -> Vec<crate::field::Rational> {
        xs.iter().map(|&x| Rationals.from_i64(x)).collect()
    }

    #[test]
    fn subspace_examples() {
        let q = Rationals;
        let a = Subspace::from_spanning(&q, 2, &[v(&[1, 0])]);
        let b = Subspace::from_spanning(&q, 2, &[v(&[0, 1])]);
        assert_eq!(a.intersection(&b).dim(), 0);
        assert_eq!(a.sum(&b).dim(), 2);
        assert_eq!(a.quotient_dim(&a).unwrap(), 0);
        let full = Subspace::from_spanning(&q, 2, &[v(&[1, 0]), v(&[0, 1])]);
        let diag = Subspace::from_spanning(&q, 2, &[v(&[1, 1])]);
        assert_eq!(full.quotient_dim(&diag).unwrap(), 1);
        assert_eq!(a.quotient_dim(&b), Err(LinalgError::NotSubspace));
        assert!(diag.contains(&v(&[3, 3])));
        assert!(!diag.contains(&v(&[3, 2])));
    }

    #[test]
    fn intersection_nontrivial() {
        let q = Rationals;
        let a = Subspace::from_spanning(&q, 3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Subspace::from_spanning(&q, 3, &[v(&[1, 1, 1]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i.basis(), &[v(&[1, 1, 0])]);
    }
}
