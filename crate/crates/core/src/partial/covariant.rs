use thiserror::Error;

use super::{check_partial_rep, SmashAlgebra};
use crate::algebra::{AlgModule, ModuleError};
use crate::field::Field;
use crate::linalg::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CovariantError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("pi is not a partial representation: {0}")]
    NotPartialRep(String),
    #[error("covariance fails for g = {g} on basis element {basis}")]
    CovarianceViolated { g: usize, basis: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// A representation `phi` of `A` and a partial representation `pi` of `G` on
/// the same space with `phi(alpha_g(a u_{g^-1})) = pi(g) phi(a) pi(g^-1)`.
#[derive(Clone, Debug)]
pub struct CovariantPair<F: Field> {
    pub phi: AlgModule<F>,
    pub pi: Vec<Matrix<F>>,
}

impl<F: Field> CovariantPair<F> {
    pub fn new(
        sm: &SmashAlgebra<F>,
        phi: AlgModule<F>,
        pi: Vec<Matrix<F>>,
    ) -> Result<Self, CovariantError> {
        let pa = sm.action();
        let grp = pa.group();
        if pi.len() != grp.order()
            || pi
                .iter()
                .any(|m| m.rows() != phi.dim() || m.cols() != phi.dim())
        {
            return Err(CovariantError::Shape(format!(
                "need {} matrices of size {}",
                grp.order(),
                phi.dim()
            )));
        }
        check_partial_rep(grp, &pi).map_err(|v| CovariantError::NotPartialRep(v.to_string()))?;
        let a = pa.algebra();
        for g in grp.elements() {
            let gi = grp.inv(g);
            for i in 0..a.dim() {
                let lhs = phi.act(&pa.alpha(g).column(i));
                let rhs = pi[g].mul(phi.action(i)).mul(&pi[gi]);
                if lhs != rhs {
                    return Err(CovariantError::CovarianceViolated { g, basis: i });
                }
            }
        }
        Ok(CovariantPair { phi, pi })
    }

    /// `Phi(a # g) = phi(a) pi(g)`.
    pub fn to_module(&self, sm: &SmashAlgebra<F>) -> Result<AlgModule<F>, CovariantError> {
        let action = sm
            .labels()
            .iter()
            .map(|&(g, k)| self.phi.act(&sm.domain(g).basis()[k]).mul(&self.pi[g]))
            .collect();
        Ok(AlgModule::new(
            sm.algebra().clone(),
            self.phi.dim(),
            action,
        )?)
    }

    /// `phi = M ∘ phi0`, `pi(g) = M(u_g # g)`.
    pub fn from_module(sm: &SmashAlgebra<F>, m: &AlgModule<F>) -> Result<Self, CovariantError> {
        let phi = m.pullback(sm.action().algebra().clone(), sm.phi0());
        let pi = sm
            .action()
            .group()
            .elements()
            .map(|g| m.act(sm.pi0(g)))
            .collect();
        Self::new(sm, phi, pi)
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{Field, Rationals};
    use crate::partial::fixtures::split_pair_partial;

    #[test]
    fn one_dimensional_pairs() {
        let q = Rationals;
        let sm = SmashAlgebra::new(Arc::new(split_pair_partial(&q))).unwrap();
        let a = sm.action().algebra().clone();
        let one = Matrix::identity(&q, 1);
        let phi = AlgModule::new(a, 1, vec![one.clone(), one.clone()]).unwrap();
        for s in [1, -1] {
            let pi = vec![one.clone(), one.scale(&q.from_i64(s))];
            let cp = CovariantPair::new(&sm, phi.clone(), pi).unwrap();
            let m = cp.to_module(&sm).unwrap();
            let back = CovariantPair::from_module(&sm, &m).unwrap();
            assert_eq!(back.pi, cp.pi);
        }
    }

    #[test]
    fn regular_round_trip() {
        let q = Rationals;
        let sm = SmashAlgebra::new(Arc::new(split_pair_partial(&q))).unwrap();
        let reg = AlgModule::regular(sm.algebra().clone());
        let cp = CovariantPair::from_module(&sm, &reg).unwrap();
        let again = cp.to_module(&sm).unwrap();
        assert_eq!(again.actions(), reg.actions());
    }
}
