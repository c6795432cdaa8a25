use std::collections::HashMap;

use thiserror::Error;

use super::{Algebra, AlgebraError};
use crate::field::Field;
use crate::linalg::{add_vectors, is_zero_vector, unit_vector, zero_vector, Matrix, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemilatticeError {
    #[error("semilattice must be nonempty")]
    Empty,
    #[error("not closed under meet: {a:#b} | {b:#b} is missing")]
    NotClosed { a: u64, b: u64 },
    #[error("ground set of size {0} is too large")]
    TooLarge(usize),
    #[error("orthogonal basis verification failed: {0}")]
    VerificationFailed(String),
}

/// Idempotent commutative semigroup realized as subsets of `0..ground`,
/// stored as bitmasks; the product (meet) is union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semilattice {
    ground: usize,
    elements: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl Semilattice {
    /// All subsets of a `ground`-element set.
    pub fn boolean(ground: usize) -> Result<Self, SemilatticeError> {
        if ground > 20 {
            return Err(SemilatticeError::TooLarge(ground));
        }
        Self::from_masks(ground, (0..(1u64 << ground)).collect())
    }

    pub fn from_masks(ground: usize, mut masks: Vec<u64>) -> Result<Self, SemilatticeError> {
        if ground > 63 {
            return Err(SemilatticeError::TooLarge(ground));
        }
        masks.sort_unstable();
        masks.dedup();
        if masks.is_empty() {
            return Err(SemilatticeError::Empty);
        }
        let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        for &a in &masks {
            for &b in &masks {
                if !index.contains_key(&(a | b)) {
                    return Err(SemilatticeError::NotClosed { a, b });
                }
            }
        }
        Ok(Semilattice {
            ground,
            elements: masks,
            index,
        })
    }

    pub fn ground(&self) -> usize {
        self.ground
    }
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }
    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&(self.elements[i] | self.elements[j])]
    }

    pub fn is_boolean(&self) -> bool {
        self.ground < 64 && self.elements.len() as u64 == 1u64 << self.ground
    }

    /// `mu(T, T')` for `T ⊆ T'` in the subset order restricted to the
    /// semilattice; zero when `T` is not below `T'`.
    pub fn mobius(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut mu = vec![vec![0i64; n]; n];
        if self.is_boolean() {
            for (i, &s) in self.elements.iter().enumerate() {
                for (j, &t) in self.elements.iter().enumerate() {
                    if s & t == s {
                        let k = (t & !s).count_ones();
                        mu[i][j] = if k % 2 == 0 { 1 } else { -1 };
                    }
                }
            }
            return mu;
        }
        // elements are sorted ascending, so subsets come before supersets
        // whenever they differ; iterate by popcount to be safe
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (self.elements[i].count_ones(), self.elements[i]));
        for &i in &order {
            let s = self.elements[i];
            mu[i][i] = 1;
            for &j in &order {
                let t = self.elements[j];
                if t == s || s & t != s {
                    continue;
                }
                let mut acc = 0;
                for &k in &order {
                    let u = self.elements[k];
                    if s & u == s && u & t == u && u != t {
                        acc += mu[i][k];
                    }
                }
                mu[i][j] = -acc;
            }
        }
        mu
    }

    /// The semigroup algebra with basis `e_T`, `e_S e_T = e_{S ∪ T}`. Always
    /// unital; the unit is the sum of the orthogonal idempotents.
    pub fn algebra<F: Field>(&self, field: &F) -> Algebra<F> {
        let n = self.len();
        let one = field.one();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| vec![(self.meet(i, j), one.clone())])
                    .collect()
            })
            .collect();
        let unit = self.mobius_sum_all(field);
        let alg = Algebra::from_sparse_unchecked(field, n, table, unit);
        debug_assert!(alg.validate().is_ok());
        alg
    }

    fn mobius_sum_all<F: Field>(&self, field: &F) -> Vector<F> {
        let n = self.len();
        let mu = self.mobius();
        let mut u = zero_vector(field, n);
        for row in &mu {
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    u[j] = field.add(&u[j], &field.from_i64(c));
                }
            }
        }
        u
    }

    /// `chi_T(x) = sum_{S ⊆ T} x_S`: the coefficient of `w_T` in `x`.
    pub fn character<F: Field>(&self, field: &F, t: usize, x: &[F::Elem]) -> F::Elem {
        let tm = self.elements[t];
        let mut acc = field.zero();
        for (s, &sm) in self.elements.iter().enumerate() {
            if sm & tm == sm {
                field.add_assign(&mut acc, &x[s]);
            }
        }
        acc
    }
}

/// `w_T` for each element `T`, in the order of [`Semilattice::elements`].
#[derive(Clone, Debug)]
pub struct OrthogonalBasis<F: Field> {
    pub labels: Vec<u64>,
    pub vectors: Vec<Vector<F>>,
}

impl<F: Field> OrthogonalBasis<F> {
    /// Columns are the `w_T` in the `e_T` basis.
    pub fn change_of_basis(&self, field: &F) -> Matrix<F> {
        Matrix::from_columns(field, self.vectors.len(), &self.vectors)
    }
}

pub fn orthogonal_idempotent_basis<F: Field>(
    field: &F,
    s: &Semilattice,
) -> Result<OrthogonalBasis<F>, SemilatticeError> {
    let n = s.len();
    let mu = s.mobius();
    let vectors: Vec<Vector<F>> = (0..n)
        .map(|i| (0..n).map(|j| field.from_i64(mu[i][j])).collect())
        .collect();
    let alg = s.algebra(field);
    let mut total = zero_vector(field, n);
    for (i, w) in vectors.iter().enumerate() {
        for (j, w2) in vectors.iter().enumerate() {
            let p = alg.mul(w, w2);
            let ok = if i == j {
                &p == w
            } else {
                is_zero_vector(field, &p)
            };
            if !ok {
                return Err(SemilatticeError::VerificationFailed(format!("w{i} * w{j}")));
            }
        }
        total = add_vectors(field, &total, w);
    }
    if &total != alg.unit() {
        return Err(SemilatticeError::VerificationFailed(
            "idempotents do not sum to 1".into(),
        ));
    }
    let basis = OrthogonalBasis {
        labels: s.elements().to_vec(),
        vectors,
    };
    if basis.change_of_basis(field).rank() != n {
        return Err(SemilatticeError::VerificationFailed(
            "idempotents do not span".into(),
        ));
    }
    Ok(basis)
}

/// Idempotent generator `u` of the ideal generated by `r_1..r_m`.
#[derive(Clone, Debug)]
pub struct PrincipalGenerator<F: Field> {
    pub u: Vector<F>,
    /// Labels `T` with `w_T` in the support of some generator.
    pub support: Vec<u64>,
}

pub fn principal_generator<F: Field>(
    field: &F,
    s: &Semilattice,
    basis: &OrthogonalBasis<F>,
    gens: &[Vector<F>],
) -> PrincipalGenerator<F> {
    let n = s.len();
    let mut u = zero_vector(field, n);
    let mut support = Vec::new();
    for t in 0..n {
        if gens
            .iter()
            .any(|r| !field.is_zero(&s.character(field, t, r)))
        {
            u = add_vectors(field, &u, &basis.vectors[t]);
            support.push(s.elements()[t]);
        }
    }
    PrincipalGenerator { u, support }
}

impl Semilattice {
    pub fn element_vector<F: Field>(&self, field: &F, mask: u64) -> Option<Vector<F>> {
        self.index_of(mask)
            .map(|i| unit_vector(field, self.len(), i))
    }
}

impl From<SemilatticeError> for AlgebraError {
    fn from(e: SemilatticeError) -> Self {
        AlgebraError::BadHint(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, Rationals};

    #[test]
    fn semilattice_algebra_examples() {
        let q = Rationals;
        let s0 = Semilattice::from_masks(0, vec![0]).unwrap();
        assert_eq!(s0.algebra(&q).dim(), 1);
        let s2 = Semilattice::boolean(2).unwrap();
        let a = s2.algebra(&q);
        assert_eq!(a.dim(), 4);
        assert!(a.is_commutative());
        for i in 0..4 {
            assert_eq!(a.mul(&a.basis(i), &a.basis(i)), a.basis(i));
        }
    }

    #[test]
    fn orthogonal_basis_one_generator() {
        let q = Rationals;
        let s = Semilattice::boolean(1).unwrap();
        let w = orthogonal_idempotent_basis(&q, &s).unwrap();
        // w_empty = 1 - e_g, w_g = e_g
        assert_eq!(w.vectors[0], vec![q.one(), q.from_i64(-1)]);
        assert_eq!(w.vectors[1], vec![q.zero(), q.one()]);
    }

    #[test]
    fn non_boolean_semilattice() {
        let q = Rationals;
        // {∅, {0}, {0,1}, {1,2}, {0,1,2}}: closed under union
        let s = Semilattice::from_masks(3, vec![0b000, 0b001, 0b011, 0b110, 0b111]).unwrap();
        let w = orthogonal_idempotent_basis(&q, &s).unwrap();
        assert_eq!(w.vectors.len(), 5);
        assert!(Semilattice::from_masks(2, vec![0b01, 0b10]).is_err());
        // without a bottom element the algebra is still unital
        let s = Semilattice::from_masks(2, vec![0b01, 0b10, 0b11]).unwrap();
        assert!(s.algebra(&q).validate().is_ok());
    }

    #[test]
    fn principal_generator_examples() {
        let q = Rationals;
        let s = Semilattice::boolean(2).unwrap();
        let w = orthogonal_idempotent_basis(&q, &s).unwrap();
        let e_t = s.element_vector(&q, 0b01).unwrap();
        assert_eq!(
            principal_generator(&q, &s, &w, std::slice::from_ref(&e_t)).u,
            e_t
        );
        let all: Vec<_> = (0..4).map(|i| unit_vector(&q, 4, i)).collect();
        assert_eq!(
            &principal_generator(&q, &s, &w, &all).u,
            s.algebra(&q).unit()
        );
        assert!(is_zero_vector(
            &q,
            &principal_generator(&q, &s, &w, &[zero_vector(&q, 4)]).u
        ));
    }
}
