//! Exact dense linear algebra.
//!
//! Pivoting is deterministic (leftmost nonzero column, first eligible row) and
//! every subspace is stored by its reduced row echelon basis, which is unique.
//! Downstream bases are therefore reproducible bit for bit.

mod complex;
mod echelon;
mod matrix;
mod sparse;
mod subspace;

pub use complex::CochainComplex;
pub use echelon::EchelonBasis;
pub use matrix::Matrix;
pub use sparse::SparseMatrix;
pub use subspace::{Subspace, SubspaceSummary};

use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("quotient requested but the second space is not contained in the first")]
    NotSubspace,
}

/// Dense column vector.
pub type Vector<F> = Vec<<F as Field>::Elem>;

pub fn zero_vector<F: Field>(field: &F, n: usize) -> Vector<F> {
    vec![field.zero(); n]
}

pub fn unit_vector<F: Field>(field: &F, n: usize, i: usize) -> Vector<F> {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero_vector<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

pub fn add_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn sub_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn scale_vector<F: Field>(field: &F, c: &F::Elem, v: &[F::Elem]) -> Vector<F> {
    v.iter().map(|x| field.mul(c, x)).collect()
}

/// `acc += c * v`
pub fn axpy<F: Field>(field: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    debug_assert_eq!(acc.len(), v.len());
    if field.is_zero(c) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        field.mul_add_assign(a, c, x);
    }
}

pub fn first_nonzero<F: Field>(field: &F, v: &[F::Elem]) -> Option<usize> {
    v.iter().position(|x| !field.is_zero(x))
}

pub fn vectors_equal<F: Field>(a: &[F::Elem], b: &[F::Elem]) -> bool {
    a == b
}

/// Renders a vector with the field's canonical element formatting.
pub fn format_vector<F: Field>(field: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|x| field.format(x)).collect()
}
