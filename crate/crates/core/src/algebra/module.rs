use std::sync::Arc;

use thiserror::Error;

use super::Algebra;
use crate::field::Field;
use crate::linalg::{is_zero_vector, EchelonBasis, Matrix, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("the unit does not act as the identity ({side})")]
    UnitLaw { side: &'static str },
    #[error(
        "action is not multiplicative for generator {generator} and basis element {basis} ({side})"
    )]
    NotMultiplicative {
        generator: usize,
        basis: usize,
        side: &'static str,
    },
    #[error(
        "left action of generator {left} does not commute with right action of generator {right}"
    )]
    NotCommuting { left: usize, right: usize },
    #[error("subspace is not invariant under generator {generator}")]
    NotInvariant { generator: usize },
}

/// Left module over an [`Algebra`]: one matrix per basis element.
#[derive(Clone, Debug)]
pub struct AlgModule<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> AlgModule<F> {
    /// Validates the unit law and multiplicativity on (generator, basis)
    /// pairs, which implies multiplicativity everywhere.
    pub fn new(
        algebra: Arc<Algebra<F>>,
        dim: usize,
        action: Vec<Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        let m = Self::new_unchecked(algebra, dim, action)?;
        m.validate()?;
        Ok(m)
    }

    pub fn new_unchecked(
        algebra: Arc<Algebra<F>>,
        dim: usize,
        action: Vec<Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        if action.len() != algebra.dim() {
            return Err(ModuleError::Shape(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        if let Some(i) = action
            .iter()
            .position(|a| a.rows() != dim || a.cols() != dim)
        {
            return Err(ModuleError::Shape(format!(
                "action matrix {i} is not {dim} x {dim}"
            )));
        }
        Ok(AlgModule {
            algebra,
            dim,
            action,
        })
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        if !self.act(self.algebra.unit()).is_identity() {
            return Err(ModuleError::UnitLaw { side: "left" });
        }
        for (gi, g) in self.algebra.generators().iter().enumerate() {
            let ag = self.act(g);
            for j in 0..self.algebra.dim() {
                let prod = self.algebra.mul(g, &self.algebra.basis(j));
                if ag.mul(&self.action[j]) != self.act(&prod) {
                    return Err(ModuleError::NotMultiplicative {
                        generator: gi,
                        basis: j,
                        side: "left",
                    });
                }
            }
        }
        Ok(())
    }

    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let action = (0..algebra.dim())
            .map(|i| algebra.left_matrix(&algebra.basis(i)))
            .collect();
        let dim = algebra.dim();
        AlgModule {
            algebra,
            dim,
            action,
        }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let f = algebra.field().clone();
        let action = (0..algebra.dim())
            .map(|_| Matrix::zeros(&f, 0, 0))
            .collect();
        AlgModule {
            algebra,
            dim: 0,
            action,
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }

    /// Operator of an arbitrary algebra element.
    pub fn act(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !f.is_zero(c) {
                m.add_scaled(c, &self.action[i]);
            }
        }
        m
    }

    pub fn act_on(&self, a: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        self.act(a).mul_vec(v)
    }

    /// Smallest submodule containing `vs`.
    pub fn generated_submodule(&self, vs: &[Vector<F>]) -> Subspace<F> {
        let gens: Vec<Matrix<F>> = self
            .algebra
            .generators()
            .iter()
            .map(|g| self.act(g))
            .collect();
        let mut span = EchelonBasis::new(self.field(), self.dim);
        let mut frontier = Vec::new();
        for v in vs {
            if span.insert(v.clone()) {
                frontier.push(v.clone());
            }
        }
        while let Some(x) = frontier.pop() {
            for g in &gens {
                let y = g.mul_vec(&x);
                if !is_zero_vector(self.field(), &y) && span.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Subspace::from_echelon(span)
    }

    pub fn is_submodule(&self, s: &Subspace<F>) -> Result<(), ModuleError> {
        for (gi, g) in self.algebra.generators().iter().enumerate() {
            let a = self.act(g);
            if s.basis().iter().any(|v| !s.contains(&a.mul_vec(v))) {
                return Err(ModuleError::NotInvariant { generator: gi });
            }
        }
        Ok(())
    }

    /// Submodule on `s` in its canonical coordinates, with the inclusion
    /// matrix (columns are the basis of `s`).
    pub fn submodule(&self, s: &Subspace<F>) -> Result<(AlgModule<F>, Matrix<F>), ModuleError> {
        self.is_submodule(s)?;
        let f = self.field();
        let basis = s.basis();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector<F>> = basis
                    .iter()
                    .map(|v| s.coordinates(&a.mul_vec(v)).expect("invariant"))
                    .collect();
                Matrix::from_columns(f, basis.len(), &cols)
            })
            .collect();
        let incl = Matrix::from_columns(f, self.dim, basis);
        Ok((
            AlgModule {
                algebra: self.algebra.clone(),
                dim: basis.len(),
                action,
            },
            incl,
        ))
    }

    /// Quotient by a submodule. The quotient basis is the images of the unit
    /// vectors at the non-pivot columns of `s`; also returns the projection.
    pub fn quotient(&self, s: &Subspace<F>) -> Result<(AlgModule<F>, Matrix<F>), ModuleError> {
        self.is_submodule(s)?;
        let f = self.field();
        let reps = s.echelon().complement_units();
        let free: Vec<usize> = reps
            .iter()
            .map(|v| crate::linalg::first_nonzero(f, v).expect("unit"))
            .collect();
        let project = |v: &[F::Elem]| -> Vector<F> {
            let r = s.echelon().reduce(v.to_vec());
            free.iter().map(|&c| r[c].clone()).collect()
        };
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vector<F>> = reps.iter().map(|v| project(&a.mul_vec(v))).collect();
                Matrix::from_columns(f, reps.len(), &cols)
            })
            .collect();
        let pcols: Vec<Vector<F>> = (0..self.dim)
            .map(|i| project(&crate::linalg::unit_vector(f, self.dim, i)))
            .collect();
        let proj = Matrix::from_columns(f, reps.len(), &pcols);
        Ok((
            AlgModule {
                algebra: self.algebra.clone(),
                dim: reps.len(),
                action,
            },
            proj,
        ))
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = self.field();
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut m = Matrix::zeros(f, n, n);
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        m.set(i, j, a.get(i, j).clone());
                    }
                }
                for i in 0..other.dim {
                    for j in 0..other.dim {
                        m.set(self.dim + i, self.dim + j, b.get(i, j).clone());
                    }
                }
                m
            })
            .collect();
        AlgModule {
            algebra: self.algebra.clone(),
            dim: n,
            action,
        }
    }

    /// Same space, restricted along an algebra map `phi: other -> self.algebra`
    /// given by its matrix.
    pub fn pullback(&self, other: Arc<Algebra<F>>, phi: &Matrix<F>) -> AlgModule<F> {
        let action = (0..other.dim()).map(|i| self.act(&phi.column(i))).collect();
        AlgModule {
            algebra: other,
            dim: self.dim,
            action,
        }
    }
}

/// Bimodule over one algebra: left operators and right operators per basis
/// element, where `right[i]` is `m -> m e_i`.
#[derive(Clone, Debug)]
pub struct Bimodule<F: Field> {
    algebra: Arc<Algebra<F>>,
    dim: usize,
    left: Vec<Matrix<F>>,
    right: Vec<Matrix<F>>,
}

impl<F: Field> Bimodule<F> {
    pub fn new(
        algebra: Arc<Algebra<F>>,
        dim: usize,
        left: Vec<Matrix<F>>,
        right: Vec<Matrix<F>>,
    ) -> Result<Self, ModuleError> {
        let d = algebra.dim();
        if left.len() != d || right.len() != d {
            return Err(ModuleError::Shape(format!(
                "need {d} left and {d} right matrices"
            )));
        }
        if left
            .iter()
            .chain(&right)
            .any(|a| a.rows() != dim || a.cols() != dim)
        {
            return Err(ModuleError::Shape(format!(
                "action matrices must be {dim} x {dim}"
            )));
        }
        let b = Bimodule {
            algebra,
            dim,
            left,
            right,
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<(), ModuleError> {
        let alg = &self.algebra;
        if !self.act_left(alg.unit()).is_identity() {
            return Err(ModuleError::UnitLaw { side: "left" });
        }
        if !self.act_right(alg.unit()).is_identity() {
            return Err(ModuleError::UnitLaw { side: "right" });
        }
        let gens = alg.generators();
        let lg: Vec<Matrix<F>> = gens.iter().map(|g| self.act_left(g)).collect();
        let rg: Vec<Matrix<F>> = gens.iter().map(|g| self.act_right(g)).collect();
        for (gi, g) in gens.iter().enumerate() {
            for j in 0..alg.dim() {
                let prod = alg.mul(g, &alg.basis(j));
                if lg[gi].mul(&self.left[j]) != self.act_left(&prod) {
                    return Err(ModuleError::NotMultiplicative {
                        generator: gi,
                        basis: j,
                        side: "left",
                    });
                }
                // m (g e_j) = (m g) e_j
                if self.right[j].mul(&rg[gi]) != self.act_right(&prod) {
                    return Err(ModuleError::NotMultiplicative {
                        generator: gi,
                        basis: j,
                        side: "right",
                    });
                }
            }
        }
        for (i, l) in lg.iter().enumerate() {
            for (j, r) in rg.iter().enumerate() {
                if l.mul(r) != r.mul(l) {
                    return Err(ModuleError::NotCommuting { left: i, right: j });
                }
            }
        }
        Ok(())
    }

    pub fn regular(algebra: Arc<Algebra<F>>) -> Self {
        let d = algebra.dim();
        let left = (0..d)
            .map(|i| algebra.left_matrix(&algebra.basis(i)))
            .collect();
        let right = (0..d)
            .map(|i| algebra.right_matrix(&algebra.basis(i)))
            .collect();
        Bimodule {
            algebra,
            dim: d,
            left,
            right,
        }
    }

    pub fn zero(algebra: Arc<Algebra<F>>) -> Self {
        let f = algebra.field().clone();
        let d = algebra.dim();
        let z = || (0..d).map(|_| Matrix::zeros(&f, 0, 0)).collect();
        Bimodule {
            algebra,
            dim: 0,
            left: z(),
            right: z(),
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn left(&self, i: usize) -> &Matrix<F> {
        &self.left[i]
    }
    pub fn right(&self, i: usize) -> &Matrix<F> {
        &self.right[i]
    }

    pub fn act_left(&self, a: &[F::Elem]) -> Matrix<F> {
        combine(self.field(), self.dim, &self.left, a)
    }

    pub fn act_right(&self, a: &[F::Elem]) -> Matrix<F> {
        combine(self.field(), self.dim, &self.right, a)
    }

    /// Restriction along an algebra map `phi: other -> self.algebra`.
    pub fn pullback(&self, other: Arc<Algebra<F>>, phi: &Matrix<F>) -> Bimodule<F> {
        let left = (0..other.dim())
            .map(|i| self.act_left(&phi.column(i)))
            .collect();
        let right = (0..other.dim())
            .map(|i| self.act_right(&phi.column(i)))
            .collect();
        Bimodule {
            algebra: other,
            dim: self.dim,
            left,
            right,
        }
    }

    pub fn left_module(&self) -> AlgModule<F> {
        AlgModule {
            algebra: self.algebra.clone(),
            dim: self.dim,
            action: self.left.clone(),
        }
    }

    /// Elements `m` with `s m = m s` for every generator `s`.
    pub fn centralizer(&self) -> Subspace<F> {
        let f = self.field();
        let mut rows = EchelonBasis::new(f, self.dim);
        for g in self.algebra.generators() {
            let d = self.act_left(&g).sub(&self.act_right(&g));
            for i in 0..self.dim {
                rows.insert(d.row(i).to_vec());
            }
        }
        let basis = rows.null_space();
        Subspace::from_spanning(f, self.dim, &basis)
    }
}

fn combine<F: Field>(f: &F, dim: usize, mats: &[Matrix<F>], a: &[F::Elem]) -> Matrix<F> {
    let mut m = Matrix::zeros(f, dim, dim);
    for (i, c) in a.iter().enumerate() {
        if !f.is_zero(c) {
            m.add_scaled(c, &mats[i]);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_numbers, split_pair};
    use crate::field::Rationals;

    #[test]
    fn regular_modules_validate() {
        let q = Rationals;
        for alg in [split_pair(&q), dual_numbers(&q)] {
            let a = Arc::new(alg);
            assert!(AlgModule::regular(a.clone()).validate().is_ok());
            assert!(Bimodule::regular(a).validate().is_ok());
        }
    }

    #[test]
    fn unit_law_violation() {
        let q = Rationals;
        let a = Arc::new(split_pair(&q));
        let bad = vec![Matrix::zeros(&q, 1, 1), Matrix::identity(&q, 1)];
        assert_eq!(
            AlgModule::new(a, 1, bad).unwrap_err(),
            ModuleError::UnitLaw { side: "left" }
        );
    }

    #[test]
    fn submodule_and_quotient() {
        let q = Rationals;
        let a = Arc::new(dual_numbers(&q));
        let reg = AlgModule::regular(a.clone());
        let x = reg.generated_submodule(&[a.basis(1)]);
        assert_eq!(x.dim(), 1);
        let (sub, _) = reg.submodule(&x).unwrap();
        assert!(sub.validate().is_ok());
        let (quo, proj) = reg.quotient(&x).unwrap();
        assert!(quo.validate().is_ok());
        assert_eq!(proj.rank(), 1);
    }
}
