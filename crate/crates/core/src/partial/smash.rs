use std::sync::Arc;

use thiserror::Error;

use super::{check_partial_rep_by, PartialAction, PartialRepViolation};
use crate::algebra::{to_sparse, Algebra, AlgebraError};
use crate::field::Field;
use crate::linalg::{axpy, zero_vector, Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SmashError {
    #[error("internal consistency: product of basis elements ({g},{k}) and ({h},{l}) left D_gh")]
    NotInDomain {
        g: usize,
        k: usize,
        h: usize,
        l: usize,
    },
    #[error("internal consistency: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("internal consistency: phi0 {0}")]
    Phi0(String),
    #[error("internal consistency: pi0 violates {0}")]
    Pi0(String),
}

impl From<PartialRepViolation> for SmashError {
    fn from(v: PartialRepViolation) -> Self {
        SmashError::Pi0(v.to_string())
    }
}

/// `A ×_α G` with basis `(g, k)`, `k` indexing the canonical basis of `D_g`.
#[derive(Clone, Debug)]
pub struct SmashAlgebra<F: Field> {
    action: Arc<PartialAction<F>>,
    algebra: Arc<Algebra<F>>,
    labels: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    domains: Vec<Subspace<F>>,
    phi0: Matrix<F>,
    pi0: Vec<Vector<F>>,
}

impl<F: Field> SmashAlgebra<F> {
    pub fn new(action: Arc<PartialAction<F>>) -> Result<Self, SmashError> {
        Self::with_idempotents(action, None)
    }

    /// As [`Self::new`], attaching a complete orthogonal idempotent family
    /// (in smash coordinates) as a hint for intertwiner solves.
    pub fn with_idempotents(
        action: Arc<PartialAction<F>>,
        idempotents: Option<Vec<Vector<F>>>,
    ) -> Result<Self, SmashError> {
        let pa = &*action;
        let grp = pa.group().clone();
        let a = pa.algebra().clone();
        let f = a.field().clone();
        let domains: Vec<Subspace<F>> = grp.elements().map(|g| pa.domain(g)).collect();
        let mut offsets = Vec::with_capacity(grp.order());
        let mut labels = Vec::new();
        for (g, dom) in domains.iter().enumerate() {
            offsets.push(labels.len());
            labels.extend((0..dom.dim()).map(|k| (g, k)));
        }
        let dim = labels.len();
        let mut table = Vec::with_capacity(dim);
        for &(g, k) in &labels {
            let gi = grp.inv(g);
            let a_gk = &domains[g].basis()[k];
            let mut row = Vec::with_capacity(dim);
            for &(h, l) in &labels {
                let gh = grp.mul(g, h);
                let b = &domains[h].basis()[l];
                // a alpha_g(b u_h u_{g^-1}) u_{gh}
                let inner = a.mul(&a.mul(b, pa.u(h)), pa.u(gi));
                let x = a.mul(&a.mul(a_gk, &pa.alpha(g).mul_vec(&inner)), pa.u(gh));
                let c =
                    domains[gh]
                        .coordinates(&x)
                        .ok_or(SmashError::NotInDomain { g, k, h, l })?;
                row.push(
                    to_sparse(&f, &c)
                        .into_iter()
                        .map(|(i, v)| (offsets[gh] + i, v))
                        .collect(),
                );
            }
            table.push(row);
        }
        let unit = {
            let mut u = zero_vector(&f, dim);
            let c = domains[0].coordinates(a.unit()).expect("D_e = A");
            for (i, v) in c.into_iter().enumerate() {
                u[offsets[0] + i] = v;
            }
            u
        };
        let alg = Algebra::from_sparse_unchecked(&f, dim, table, unit);
        alg.validate()?;
        let mut sm = SmashAlgebra {
            action: action.clone(),
            algebra: Arc::new(alg),
            labels,
            offsets,
            domains,
            phi0: Matrix::zeros(&f, dim, a.dim()),
            pi0: Vec::new(),
        };
        let phi_cols: Vec<Vector<F>> = (0..a.dim()).map(|i| sm.element(0, &a.basis(i))).collect();
        sm.phi0 = Matrix::from_columns(&f, dim, &phi_cols);
        sm.pi0 = grp.elements().map(|g| sm.element(g, pa.u(g))).collect();
        let mut gens = phi_cols;
        gens.extend(sm.pi0.iter().cloned());
        let mut alg = (*sm.algebra).clone().with_generators(gens)?;
        if let Some(ws) = idempotents {
            alg = alg.with_idempotents(ws)?;
        }
        sm.algebra = Arc::new(alg);
        sm.verify_maps()?;
        Ok(sm)
    }

    fn verify_maps(&self) -> Result<(), SmashError> {
        let a = self.action.algebra();
        if self.phi0.rank() != a.dim() {
            return Err(SmashError::Phi0("is not injective".into()));
        }
        if self.phi0.mul_vec(a.unit()) != *self.algebra.unit() {
            return Err(SmashError::Phi0("does not preserve the unit".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.phi0.mul_vec(&a.basis_product(i, j));
                let rhs = self.algebra.mul(&self.phi0.column(i), &self.phi0.column(j));
                if lhs != rhs {
                    return Err(SmashError::Phi0(format!(
                        "is not multiplicative on ({i},{j})"
                    )));
                }
            }
        }
        let unit = self.algebra.unit().clone();
        check_partial_rep_by(
            self.action.group(),
            &self.pi0,
            |x, y| self.algebra.mul(x, y),
            |x| *x == unit,
        )?;
        Ok(())
    }

    pub fn action(&self) -> &Arc<PartialAction<F>> {
        &self.action
    }
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[(usize, usize)] {
        &self.labels
    }
    pub fn offset(&self, g: usize) -> usize {
        self.offsets[g]
    }
    pub fn domain(&self, g: usize) -> &Subspace<F> {
        &self.domains[g]
    }
    /// Matrix of `a -> a # e`.
    pub fn phi0(&self) -> &Matrix<F> {
        &self.phi0
    }
    /// `u_g # g`.
    pub fn pi0(&self, g: usize) -> &Vector<F> {
        &self.pi0[g]
    }

    /// `a # g` for `a ∈ D_g` (the component outside `D_g` is dropped after
    /// multiplying by `u_g`).
    pub fn element(&self, g: usize, a: &[F::Elem]) -> Vector<F> {
        let alg = self.action.algebra();
        let x = alg.mul(a, self.action.u(g));
        let c = self.domains[g].coordinates(&x).expect("u_g a lies in D_g");
        let mut v = zero_vector(self.field(), self.dim());
        for (i, y) in c.into_iter().enumerate() {
            v[self.offsets[g] + i] = y;
        }
        v
    }

    /// The `D_g`-component of `x`, as an element of `A`.
    pub fn component(&self, x: &[F::Elem], g: usize) -> Vector<F> {
        let f = self.field();
        let mut out = zero_vector(f, self.action.algebra().dim());
        for (k, b) in self.domains[g].basis().iter().enumerate() {
            axpy(f, &mut out, &x[self.offsets[g] + k], b);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ints, split_pair};
    use crate::field::Rationals;
    use crate::group::FiniteGroup;
    use crate::partial::fixtures::{split_pair_partial, split_pair_swap};

    #[test]
    fn smash_dimensions() {
        let q = Rationals;
        let sm = SmashAlgebra::new(Arc::new(split_pair_partial(&q))).unwrap();
        assert_eq!(sm.dim(), 3);
        let sm = SmashAlgebra::new(Arc::new(split_pair_swap(&q))).unwrap();
        assert_eq!(sm.dim(), 4);
        let triv = PartialAction::global(
            Arc::new(FiniteGroup::trivial()),
            Arc::new(split_pair(&q)),
            vec![Matrix::identity(&q, 2)],
        )
        .unwrap();
        let sm = SmashAlgebra::new(Arc::new(triv)).unwrap();
        assert_eq!(sm.dim(), 2);
        assert_eq!(sm.phi0().rank(), 2);
    }

    #[test]
    fn global_smash_is_skew_group_algebra() {
        let q = Rationals;
        let pa = Arc::new(split_pair_swap(&q));
        let sm = SmashAlgebra::new(pa.clone()).unwrap();
        let a = pa.algebra();
        for g in 0..2 {
            for h in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        let lhs = sm
                            .algebra()
                            .mul(&sm.element(g, &a.basis(i)), &sm.element(h, &a.basis(j)));
                        let gb = pa.alpha(g).mul_vec(&a.basis(j));
                        let rhs = sm.element(g ^ h, &a.mul(&a.basis(i), &gb));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
        let t = ints(&q, &[0, 1]);
        assert_eq!(sm.component(&sm.element(1, &t), 1), t);
    }
}
