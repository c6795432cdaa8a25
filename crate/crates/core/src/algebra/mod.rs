//! Finite-dimensional associative algebras given by structure constants,
//! their modules and bimodules, intertwiner spaces, and semilattice algebras.

mod hom;
mod module;
mod semilattice;

pub use hom::{bimodule_hom_space, hom_space, intertwiners, HomSpace};
pub use module::{AlgModule, Bimodule, ModuleError};
pub use semilattice::{
    orthogonal_idempotent_basis, principal_generator, OrthogonalBasis, PrincipalGenerator,
    Semilattice, SemilatticeError,
};

use std::fmt;

use thiserror::Error;

use crate::field::Field;
use crate::linalg::{
    is_zero_vector, unit_vector, zero_vector, EchelonBasis, Matrix, Subspace, Vector,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not associative on basis triple ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis element {i}")]
    UnitLaw { i: usize },
    #[error("invalid hint: {0}")]
    BadHint(String),
}

/// Why a candidate central idempotent was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CentralIdempotentViolation {
    NotIdempotent,
    NotCentral { basis: usize },
}

impl fmt::Display for CentralIdempotentViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CentralIdempotentViolation::NotIdempotent => write!(f, "u*u != u"),
            CentralIdempotentViolation::NotCentral { basis } => {
                write!(f, "u*e{basis} != e{basis}*u")
            }
        }
    }
}

type Sparse<F> = Vec<(usize, <F as Field>::Elem)>;

/// Associative unital algebra with basis `e_0..e_{d-1}`.
///
/// Products of basis elements are stored sparsely. Optional hints carry a
/// generating set (used to validate modules cheaply) and a complete family of
/// orthogonal idempotents (used to split intertwiner systems into blocks).
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    table: Vec<Vec<Sparse<F>>>,
    unit: Vector<F>,
    generators: Option<Vec<Vector<F>>>,
    idempotents: Option<Vec<Vector<F>>>,
}

impl<F: Field> Algebra<F> {
    /// `structure[i][j]` is the coordinate vector of `e_i * e_j`.
    pub fn new(
        field: &F,
        dim: usize,
        structure: Vec<Vec<Vector<F>>>,
        unit: Vector<F>,
    ) -> Result<Self, AlgebraError> {
        if structure.len() != dim || structure.iter().any(|r| r.len() != dim) {
            return Err(AlgebraError::Shape(format!(
                "structure must be {dim} x {dim} x {dim}"
            )));
        }
        if let Some((i, j)) = (0..dim)
            .flat_map(|i| (0..dim).map(move |j| (i, j)))
            .find(|&(i, j)| structure[i][j].len() != dim)
        {
            return Err(AlgebraError::Shape(format!(
                "product e{i}*e{j} has length {}, expected {dim}",
                structure[i][j].len()
            )));
        }
        if unit.len() != dim {
            return Err(AlgebraError::Shape(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        let table = structure
            .into_iter()
            .map(|row| row.into_iter().map(|v| to_sparse(field, &v)).collect())
            .collect();
        let a = Algebra {
            field: field.clone(),
            dim,
            table,
            unit,
            generators: None,
            idempotents: None,
        };
        a.validate()?;
        Ok(a)
    }

    /// Builds from a sparse product rule without validating; call
    /// [`Self::validate`] afterwards unless the construction is proven.
    pub fn from_sparse_unchecked(
        field: &F,
        dim: usize,
        table: Vec<Vec<Sparse<F>>>,
        unit: Vector<F>,
    ) -> Self {
        Algebra {
            field: field.clone(),
            dim,
            table,
            unit,
            generators: None,
            idempotents: None,
        }
    }

    pub fn validate(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            let e = unit_vector(&self.field, self.dim, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::UnitLaw { i });
            }
        }
        self.check_associative()
    }

    fn check_associative(&self) -> Result<(), AlgebraError> {
        let f = &self.field;
        let d = self.dim;
        let mut left = zero_vector(f, d);
        let mut right = zero_vector(f, d);
        let mut touched = Vec::new();
        for i in 0..d {
            for j in 0..d {
                let ij = &self.table[i][j];
                for k in 0..d {
                    for (l, c) in ij {
                        for (m, c2) in &self.table[*l][k] {
                            f.mul_add_assign(&mut left[*m], c, c2);
                            touched.push(*m);
                        }
                    }
                    for (l, c) in &self.table[j][k] {
                        for (m, c2) in &self.table[i][*l] {
                            f.mul_add_assign(&mut right[*m], c, c2);
                            touched.push(*m);
                        }
                    }
                    if touched.iter().any(|&m| left[m] != right[m]) {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                    for m in touched.drain(..) {
                        left[m] = f.zero();
                        right[m] = f.zero();
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches a generating set after checking that it generates.
    pub fn with_generators(mut self, gens: Vec<Vector<F>>) -> Result<Self, AlgebraError> {
        if gens.iter().any(|g| g.len() != self.dim) {
            return Err(AlgebraError::BadHint("generator length".into()));
        }
        let mut span = EchelonBasis::new(&self.field, self.dim);
        span.insert(self.unit.clone());
        let mut frontier = vec![self.unit.clone()];
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = self.mul(g, &x);
                if span.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        if span.rank() != self.dim {
            return Err(AlgebraError::BadHint(format!(
                "generators span a subalgebra of dimension {} < {}",
                span.rank(),
                self.dim
            )));
        }
        self.generators = Some(gens);
        Ok(self)
    }

    /// Attaches a complete family of pairwise orthogonal idempotents.
    pub fn with_idempotents(mut self, ws: Vec<Vector<F>>) -> Result<Self, AlgebraError> {
        let f = &self.field;
        let mut total = zero_vector(f, self.dim);
        for (i, w) in ws.iter().enumerate() {
            if w.len() != self.dim {
                return Err(AlgebraError::BadHint("idempotent length".into()));
            }
            for (j, w2) in ws.iter().enumerate() {
                let p = self.mul(w, w2);
                let expected = if i == j {
                    w.clone()
                } else {
                    zero_vector(f, self.dim)
                };
                if p != expected {
                    return Err(AlgebraError::BadHint(format!(
                        "idempotents {i},{j} are not orthogonal idempotents"
                    )));
                }
            }
            total = crate::linalg::add_vectors(f, &total, w);
        }
        if total != self.unit {
            return Err(AlgebraError::BadHint(
                "idempotents do not sum to the unit".into(),
            ));
        }
        self.idempotents = Some(ws);
        Ok(self)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn unit(&self) -> &Vector<F> {
        &self.unit
    }
    pub fn idempotent_hints(&self) -> Option<&[Vector<F>]> {
        self.idempotents.as_deref()
    }
    pub fn generator_hints(&self) -> Option<&[Vector<F>]> {
        self.generators.as_deref()
    }

    /// Generators if hinted, else the whole basis.
    pub fn generators(&self) -> Vec<Vector<F>> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.dim).map(|i| self.basis(i)).collect(),
        }
    }

    pub fn basis(&self, i: usize) -> Vector<F> {
        unit_vector(&self.field, self.dim, i)
    }

    pub fn basis_product_sparse(&self, i: usize, j: usize) -> &[(usize, F::Elem)] {
        &self.table[i][j]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector<F> {
        let mut v = zero_vector(&self.field, self.dim);
        for (k, c) in &self.table[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    pub fn structure_dense(&self) -> Vec<Vec<Vector<F>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.basis_product(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
        let f = &self.field;
        let mut out = zero_vector(f, self.dim);
        let bnz: Vec<usize> = (0..self.dim).filter(|&j| !f.is_zero(&b[j])).collect();
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for &j in &bnz {
                let ab = f.mul(ai, &b[j]);
                for (k, c) in &self.table[i][j] {
                    f.mul_add_assign(&mut out[*k], &ab, c);
                }
            }
        }
        out
    }

    /// Matrix of `x -> a x`.
    pub fn left_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of `x -> x a`.
    pub fn right_matrix(&self, a: &[F::Elem]) -> Matrix<F> {
        let cols: Vec<Vector<F>> = (0..self.dim).map(|j| self.mul(&self.basis(j), a)).collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// `u*u = u` and `u` commutes with every basis element.
    pub fn central_idempotent_check(
        &self,
        u: &[F::Elem],
    ) -> Result<(), CentralIdempotentViolation> {
        if self.mul(u, u) != u {
            return Err(CentralIdempotentViolation::NotIdempotent);
        }
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(u, &e) != self.mul(&e, u) {
                return Err(CentralIdempotentViolation::NotCentral { basis: i });
            }
        }
        Ok(())
    }

    /// Two-sided ideal generated by `gens`, closed to a fixed point.
    pub fn ideal_closure(&self, gens: &[Vector<F>]) -> Subspace<F> {
        let mut span = EchelonBasis::new(&self.field, self.dim);
        let mut frontier: Vec<Vector<F>> = Vec::new();
        for g in gens {
            if span.insert(g.clone()) {
                frontier.push(g.clone());
            }
        }
        while let Some(x) = frontier.pop() {
            for i in 0..self.dim {
                let e = self.basis(i);
                for y in [self.mul(&e, &x), self.mul(&x, &e)] {
                    if !is_zero_vector(&self.field, &y) && span.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        Subspace::from_echelon(span)
    }

    /// Algebra structure on a subspace closed under multiplication and
    /// containing `unit_in_sub`, in the subspace's canonical coordinates.
    pub fn restrict_to(
        &self,
        sub: &Subspace<F>,
        unit_in_sub: &[F::Elem],
    ) -> Result<Algebra<F>, AlgebraError> {
        let f = &self.field;
        let basis = sub.basis();
        let n = basis.len();
        let mut table = Vec::with_capacity(n);
        for a in basis {
            let mut row = Vec::with_capacity(n);
            for b in basis {
                let p = self.mul(a, b);
                let c = sub.coordinates(&p).ok_or_else(|| {
                    AlgebraError::Shape("subspace is not closed under multiplication".into())
                })?;
                row.push(to_sparse(f, &c));
            }
            table.push(row);
        }
        let unit = sub
            .coordinates(unit_in_sub)
            .ok_or_else(|| AlgebraError::Shape("unit does not lie in the subspace".into()))?;
        let alg = Algebra::from_sparse_unchecked(f, n, table, unit);
        alg.validate()?;
        Ok(alg)
    }
}

pub(crate) fn to_sparse<F: Field>(field: &F, v: &[F::Elem]) -> Sparse<F> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !field.is_zero(x))
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Coordinates from small integers.
pub fn ints<F: Field>(field: &F, xs: &[i64]) -> Vector<F> {
    xs.iter().map(|&x| field.from_i64(x)).collect()
}

/// `K[x]/(x^2)` with basis `{1, x}`.
pub fn dual_numbers<F: Field>(field: &F) -> Algebra<F> {
    let s = vec![
        vec![ints(field, &[1, 0]), ints(field, &[0, 1])],
        vec![ints(field, &[0, 1]), ints(field, &[0, 0])],
    ];
    Algebra::new(field, 2, s, ints(field, &[1, 0])).expect("dual numbers")
}

/// `K x K` with basis `{1, t}`, `t*t = t`.
pub fn split_pair<F: Field>(field: &F) -> Algebra<F> {
    let s = vec![
        vec![ints(field, &[1, 0]), ints(field, &[0, 1])],
        vec![ints(field, &[0, 1]), ints(field, &[0, 1])],
    ];
    Algebra::new(field, 2, s, ints(field, &[1, 0])).expect("K x K")
}

/// `K^n` with the basis of coordinate idempotents.
pub fn diagonal_algebra<F: Field>(field: &F, n: usize) -> Algebra<F> {
    let s = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        unit_vector(field, n, i)
                    } else {
                        zero_vector(field, n)
                    }
                })
                .collect()
        })
        .collect();
    Algebra::new(field, n, s, vec![field.one(); n]).expect("diagonal algebra")
}

/// `k[x,y]/(x^2, y^2)` with basis `{1, x, y, xy}`.
pub fn exterior_like<F: Field>(field: &F) -> Algebra<F> {
    // index: 0 = 1, 1 = x, 2 = y, 3 = xy
    let mono = |i: usize| -> (u8, u8) { [(0, 0), (1, 0), (0, 1), (1, 1)][i] };
    let idx = |a: u8, b: u8| -> usize { (a + 2 * b) as usize };
    let s = (0..4)
        .map(|i| {
            (0..4)
                .map(|j| {
                    let (a1, b1) = mono(i);
                    let (a2, b2) = mono(j);
                    if a1 + a2 > 1 || b1 + b2 > 1 {
                        zero_vector(field, 4)
                    } else {
                        unit_vector(field, 4, idx(a1 + a2, b1 + b2))
                    }
                })
                .collect()
        })
        .collect();
    Algebra::new(field, 4, s, unit_vector(field, 4, 0)).expect("k[x,y]/(x^2,y^2)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn make_algebra_examples() {
        let q = Rationals;
        assert!(dual_numbers(&q).is_commutative());
        let kk = split_pair(&q);
        assert_eq!(
            kk.mul(&ints(&q, &[0, 1]), &ints(&q, &[0, 1])),
            ints(&q, &[0, 1])
        );
        let f2 = PrimeField::new(2).unwrap();
        let s = vec![
            vec![ints(&f2, &[1, 0]), ints(&f2, &[0, 1])],
            vec![ints(&f2, &[0, 1]), ints(&f2, &[1, 1])],
        ];
        assert_eq!(
            Algebra::new(&f2, 2, s, ints(&f2, &[0, 1])).unwrap_err(),
            AlgebraError::UnitLaw { i: 0 }
        );
    }

    #[test]
    fn non_associative_rejected() {
        let q = Rationals;
        // (e1 e1) e1 = e2 e1 = e1 but e1 (e1 e1) = e1 e2 = 0
        let s = vec![
            vec![
                ints(&q, &[1, 0, 0]),
                ints(&q, &[0, 1, 0]),
                ints(&q, &[0, 0, 1]),
            ],
            vec![
                ints(&q, &[0, 1, 0]),
                ints(&q, &[0, 0, 1]),
                ints(&q, &[0, 0, 0]),
            ],
            vec![
                ints(&q, &[0, 0, 1]),
                ints(&q, &[0, 1, 0]),
                ints(&q, &[0, 0, 0]),
            ],
        ];
        assert!(matches!(
            Algebra::new(&q, 3, s, ints(&q, &[1, 0, 0])),
            Err(AlgebraError::NotAssociative { .. })
        ));
    }

    #[test]
    fn central_idempotents() {
        let q = Rationals;
        let kk = split_pair(&q);
        assert!(kk.central_idempotent_check(kk.unit()).is_ok());
        assert!(kk.central_idempotent_check(&ints(&q, &[0, 1])).is_ok());
        let d = dual_numbers(&q);
        assert_eq!(
            d.central_idempotent_check(&ints(&q, &[0, 1])),
            Err(CentralIdempotentViolation::NotIdempotent)
        );
    }

    #[test]
    fn exterior_like_products() {
        let q = Rationals;
        let a = exterior_like(&q);
        assert_eq!(a.basis_product(1, 2), unit_vector(&q, 4, 3));
        assert_eq!(a.basis_product(2, 2), zero_vector(&q, 4));
        let gens = vec![a.basis(1), a.basis(2)];
        assert!(a.with_generators(gens).is_ok());
    }
}
