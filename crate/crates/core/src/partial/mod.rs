//! Partial actions on algebras with unital ideal domains, partial
//! representations, partial smash products and covariant pairs.

mod covariant;
mod raw;
mod rep;
mod smash;

pub use covariant::{CovariantError, CovariantPair};
pub use raw::{raw_smash_witness, RawElement, RawSmash, RawWitness};
pub use rep::{check_partial_rep, check_partial_rep_by, PartialRepViolation};
pub use smash::{SmashAlgebra, SmashError};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Algebra, CentralIdempotentViolation};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::{Matrix, Subspace, Vector};

/// How the domain compatibility axiom is checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValidationMode {
    /// `alpha_g(u_{g^-1} u_h) = u_g u_{gh}`.
    #[default]
    Equality,
    /// `alpha_h(D_{h^-1} ∩ D_{(gh)^-1}) ⊇ D_h ∩ D_{g^-1}`.
    Weak,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartialActionError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("u_e is not the unit of the algebra")]
    UnitDomain,
    #[error("alpha_e is not the identity")]
    AlphaIdentity,
    #[error("u_{g} is not a central idempotent: {violation}")]
    NotCentralIdempotent { g: usize, violation: Violation },
    #[error("no central idempotent generates D_{g}: the ideal has no unit")]
    NoUnitalDomain { g: usize },
    #[error("alpha_{g} maps basis element {basis} outside D_{g}")]
    ImageOutsideDomain { g: usize, basis: usize },
    #[error("alpha_{g} does not vanish on (1 - u_{{g^-1}})A (basis element {basis})")]
    NotVanishingOffDomain { g: usize, basis: usize },
    #[error("alpha_{g} is not multiplicative on basis pair ({i},{j})")]
    NotMultiplicative { g: usize, i: usize, j: usize },
    #[error("alpha_{g} is not a bijection D_{{g^-1}} -> D_{g}: rank {rank}, domain dimensions {dom} and {cod}")]
    NotBijective {
        g: usize,
        rank: usize,
        dom: usize,
        cod: usize,
    },
    #[error("domain compatibility fails for (g,h) = ({g},{h})")]
    DomainCompatibility { g: usize, h: usize },
    #[error(
        "alpha_{g} alpha_{h} != alpha_{{gh}} on D_{{h^-1}} ∩ D_{{(gh)^-1}} for (g,h) = ({g},{h})"
    )]
    Composition { g: usize, h: usize },
    #[error("global action: {0}")]
    Global(String),
}

/// Wrapper so the violation can live in a `thiserror` enum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation(pub CentralIdempotentViolation);

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Partial action with `D_g = u_g A` for central idempotents `u_g`.
/// `alpha[g]` is the total map `x -> alpha_g(u_{g^-1} x)`.
#[derive(Clone, Debug)]
pub struct PartialAction<F: Field> {
    group: Arc<FiniteGroup>,
    algebra: Arc<Algebra<F>>,
    u: Vec<Vector<F>>,
    alpha: Vec<Matrix<F>>,
}

impl<F: Field> PartialAction<F> {
    pub fn new(
        group: Arc<FiniteGroup>,
        algebra: Arc<Algebra<F>>,
        u: Vec<Vector<F>>,
        alpha: Vec<Matrix<F>>,
        mode: ValidationMode,
    ) -> Result<Self, PartialActionError> {
        let n = group.order();
        let d = algebra.dim();
        if u.len() != n || alpha.len() != n {
            return Err(PartialActionError::Shape(format!(
                "need {n} idempotents and {n} maps"
            )));
        }
        if u.iter().any(|v| v.len() != d) || alpha.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(PartialActionError::Shape(format!(
                "idempotents must have length {d} and maps be {d} x {d}"
            )));
        }
        let pa = PartialAction {
            group,
            algebra,
            u,
            alpha,
        };
        pa.validate(mode)?;
        Ok(pa)
    }

    /// Domains given as spans; each must be an ideal with a unit, which then
    /// becomes `u_g`.
    pub fn from_domains(
        group: Arc<FiniteGroup>,
        algebra: Arc<Algebra<F>>,
        domains: &[Vec<Vector<F>>],
        alpha: Vec<Matrix<F>>,
        mode: ValidationMode,
    ) -> Result<Self, PartialActionError> {
        let mut u = Vec::with_capacity(domains.len());
        for (g, span) in domains.iter().enumerate() {
            u.push(ideal_unit(&algebra, span).ok_or(PartialActionError::NoUnitalDomain { g })?);
        }
        Self::new(group, algebra, u, alpha, mode)
    }

    pub fn validate(&self, mode: ValidationMode) -> Result<(), PartialActionError> {
        let a = &*self.algebra;
        let g_ = &*self.group;
        if &self.u[0] != a.unit() {
            return Err(PartialActionError::UnitDomain);
        }
        if !self.alpha[0].is_identity() {
            return Err(PartialActionError::AlphaIdentity);
        }
        for g in g_.elements() {
            a.central_idempotent_check(&self.u[g]).map_err(|v| {
                PartialActionError::NotCentralIdempotent {
                    g,
                    violation: Violation(v),
                }
            })?;
        }
        let lu: Vec<Matrix<F>> = self.u.iter().map(|u| a.left_matrix(u)).collect();
        for g in g_.elements() {
            let gi = g_.inv(g);
            let al = &self.alpha[g];
            let img = lu[g].mul(al);
            if let Some(b) = (0..a.dim()).find(|&b| img.column(b) != al.column(b)) {
                return Err(PartialActionError::ImageOutsideDomain { g, basis: b });
            }
            let restricted = al.mul(&lu[gi]);
            if let Some(b) = (0..a.dim()).find(|&b| restricted.column(b) != al.column(b)) {
                return Err(PartialActionError::NotVanishingOffDomain { g, basis: b });
            }
            for i in 0..a.dim() {
                let ai = al.column(i);
                for j in 0..a.dim() {
                    let lhs = al.mul_vec(&a.basis_product(i, j));
                    let rhs = a.mul(&ai, &al.column(j));
                    if lhs != rhs {
                        return Err(PartialActionError::NotMultiplicative { g, i, j });
                    }
                }
            }
            let (rank, dom, cod) = (al.rank(), lu[gi].rank(), lu[g].rank());
            if rank != dom || rank != cod {
                return Err(PartialActionError::NotBijective { g, rank, dom, cod });
            }
        }
        for g in g_.elements() {
            let gi = g_.inv(g);
            for h in g_.elements() {
                let gh = g_.mul(g, h);
                let ok = match mode {
                    ValidationMode::Equality => {
                        let lhs = self.alpha[g].mul_vec(&a.mul(&self.u[gi], &self.u[h]));
                        lhs == a.mul(&self.u[g], &self.u[gh])
                    }
                    ValidationMode::Weak => {
                        // checked with the roles (h, g) of the composition axiom
                        let hi = g_.inv(h);
                        let ghi = g_.inv(gh);
                        let img = self.alpha[h].mul_vec(&a.mul(&self.u[hi], &self.u[ghi]));
                        let target = a.mul(&self.u[h], &self.u[gi]);
                        a.mul(&img, &target) == target
                    }
                };
                if !ok {
                    return Err(PartialActionError::DomainCompatibility { g, h });
                }
                let hi = g_.inv(h);
                let ghi = g_.inv(gh);
                let proj = a.left_matrix(&a.mul(&self.u[hi], &self.u[ghi]));
                let lhs = self.alpha[g].mul(&self.alpha[h]).mul(&proj);
                let rhs = self.alpha[gh].mul(&proj);
                if lhs != rhs {
                    return Err(PartialActionError::Composition { g, h });
                }
            }
        }
        Ok(())
    }

    /// Partial action on `B = 1_B A` obtained from a global action `sigma` of
    /// the group on `A` by automorphisms. Returns the action and the basis of
    /// `B` inside `A` (columns of the inclusion).
    pub fn restrict_global(
        group: Arc<FiniteGroup>,
        big: &Algebra<F>,
        sigma: &[Matrix<F>],
        one_b: &[F::Elem],
    ) -> Result<(Self, Matrix<F>), PartialActionError> {
        let f = big.field();
        let d = big.dim();
        let g_ = &*group;
        if sigma.len() != g_.order() {
            return Err(PartialActionError::Shape(format!(
                "need {} automorphisms",
                g_.order()
            )));
        }
        if !sigma[0].is_identity() {
            return Err(PartialActionError::Global(
                "sigma_e is not the identity".into(),
            ));
        }
        for g in g_.elements() {
            if &sigma[g].mul_vec(big.unit()) != big.unit() {
                return Err(PartialActionError::Global(format!(
                    "sigma_{g} does not fix the unit"
                )));
            }
            for i in 0..d {
                for j in 0..d {
                    let lhs = sigma[g].mul_vec(&big.basis_product(i, j));
                    let rhs = big.mul(&sigma[g].column(i), &sigma[g].column(j));
                    if lhs != rhs {
                        return Err(PartialActionError::Global(format!(
                            "sigma_{g} is not multiplicative on ({i},{j})"
                        )));
                    }
                }
            }
            for h in g_.elements() {
                if sigma[g].mul(&sigma[h]) != sigma[g_.mul(g, h)] {
                    return Err(PartialActionError::Global(format!(
                        "sigma_{g} sigma_{h} != sigma_gh"
                    )));
                }
            }
        }
        big.central_idempotent_check(one_b).map_err(|v| {
            PartialActionError::Global(format!("1_B is not a central idempotent: {v}"))
        })?;
        let sub = big.left_matrix(one_b).column_space();
        let b_alg = Arc::new(
            big.restrict_to(&sub, one_b)
                .map_err(|e| PartialActionError::Global(e.to_string()))?,
        );
        let coords = |v: &[F::Elem]| sub.coordinates(v).expect("element of B");
        let u_big: Vec<Vector<F>> = g_
            .elements()
            .map(|g| big.mul(one_b, &sigma[g].mul_vec(one_b)))
            .collect();
        let u: Vec<Vector<F>> = u_big.iter().map(|v| coords(v)).collect();
        let alpha = g_
            .elements()
            .map(|g| {
                let gi = g_.inv(g);
                let cols: Vec<Vector<F>> = sub
                    .basis()
                    .iter()
                    .map(|b| coords(&sigma[g].mul_vec(&big.mul(b, &u_big[gi]))))
                    .collect();
                Matrix::from_columns(f, sub.dim(), &cols)
            })
            .collect();
        let incl = Matrix::from_columns(f, d, sub.basis());
        let pa = PartialAction::new(group, b_alg, u, alpha, ValidationMode::Equality)?;
        Ok((pa, incl))
    }

    /// Global action: every `u_g = 1`.
    pub fn global(
        group: Arc<FiniteGroup>,
        algebra: Arc<Algebra<F>>,
        sigma: Vec<Matrix<F>>,
    ) -> Result<Self, PartialActionError> {
        let u = vec![algebra.unit().clone(); group.order()];
        Self::new(group, algebra, u, sigma, ValidationMode::Equality)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn u(&self, g: usize) -> &Vector<F> {
        &self.u[g]
    }
    pub fn alpha(&self, g: usize) -> &Matrix<F> {
        &self.alpha[g]
    }

    pub fn is_global(&self) -> bool {
        self.u.iter().all(|u| u == self.algebra.unit())
    }

    /// Canonical basis of `D_g`, the column space of right multiplication by `u_g`.
    pub fn domain(&self, g: usize) -> Subspace<F> {
        self.algebra.right_matrix(&self.u[g]).column_space()
    }
}

/// Unit of the ideal spanned by `span`, if it has one.
fn ideal_unit<F: Field>(a: &Algebra<F>, span: &[Vector<F>]) -> Option<Vector<F>> {
    let f = a.field();
    let sub = Subspace::from_spanning(f, a.dim(), span);
    let basis = sub.basis();
    if basis.is_empty() {
        return Some(crate::linalg::zero_vector(f, a.dim()));
    }
    // unknowns c_k, u = sum c_k b_k; equations u b_j = b_j and b_j u = b_j
    let k = basis.len();
    let mut rows: Vec<Vector<F>> = Vec::new();
    let mut rhs: Vector<F> = Vec::new();
    for bj in basis {
        let left: Vec<Vector<F>> = basis.iter().map(|bk| a.mul(bk, bj)).collect();
        let right: Vec<Vector<F>> = basis.iter().map(|bk| a.mul(bj, bk)).collect();
        for prods in [&left, &right] {
            for coord in 0..a.dim() {
                rows.push((0..k).map(|kk| prods[kk][coord].clone()).collect());
                rhs.push(bj[coord].clone());
            }
        }
    }
    let m = Matrix::from_rows(f, k, &rows);
    let c = m.solve(&rhs).ok()??;
    let mut u = crate::linalg::zero_vector(f, a.dim());
    for (ck, bk) in c.iter().zip(basis) {
        crate::linalg::axpy(f, &mut u, ck, bk);
    }
    Some(u)
}

/// Small fixtures used throughout tests and the command line.
pub mod fixtures {
    use super::*;
    use crate::algebra::{diagonal_algebra, ints, split_pair};

    /// `K x K` (basis `1, t`) with `Z_2` acting partially: `u_g = t`,
    /// `alpha_g` the identity on `tA`.
    pub fn split_pair_partial<F: Field>(field: &F) -> PartialAction<F> {
        let a = Arc::new(split_pair(field));
        let g = Arc::new(FiniteGroup::cyclic(2));
        let u = vec![ints(field, &[1, 0]), ints(field, &[0, 1])];
        let alpha = vec![
            Matrix::identity(field, 2),
            a.left_matrix(&ints(field, &[0, 1])),
        ];
        PartialAction::new(g, a, u, alpha, ValidationMode::Equality).expect("fixture")
    }

    /// `K x K` with `Z_2` swapping the two factors: `t -> 1 - t`.
    pub fn split_pair_swap<F: Field>(field: &F) -> PartialAction<F> {
        let a = Arc::new(split_pair(field));
        let g = Arc::new(FiniteGroup::cyclic(2));
        let swap = Matrix::from_columns(field, 2, &[ints(field, &[1, 0]), ints(field, &[1, -1])]);
        PartialAction::global(g, a, vec![Matrix::identity(field, 2), swap]).expect("fixture")
    }

    /// `K[x]/(x^2)` with `Z_2` acting trivially.
    pub fn dual_numbers_trivial<F: Field>(field: &F) -> PartialAction<F> {
        let a = Arc::new(crate::algebra::dual_numbers(field));
        let g = Arc::new(FiniteGroup::cyclic(2));
        PartialAction::global(g, a, vec![Matrix::identity(field, 2); 2]).expect("fixture")
    }

    /// `K[x]/(x^2) x K` (basis `1, x, t`) with `Z_2` acting partially:
    /// `u_g = t`, `alpha_g` the identity on `tA`.
    pub fn dual_numbers_partial<F: Field>(field: &F) -> PartialAction<F> {
        let e = |xs: &[i64]| ints(field, xs);
        let s = vec![
            vec![e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1])],
            vec![e(&[0, 1, 0]), e(&[0, 0, 0]), e(&[0, 0, 0])],
            vec![e(&[0, 0, 1]), e(&[0, 0, 0]), e(&[0, 0, 1])],
        ];
        let a = Arc::new(Algebra::new(field, 3, s, e(&[1, 0, 0])).expect("fixture algebra"));
        let g = Arc::new(FiniteGroup::cyclic(2));
        let u = vec![e(&[1, 0, 0]), e(&[0, 0, 1])];
        let alpha = vec![Matrix::identity(field, 3), a.left_matrix(&e(&[0, 0, 1]))];
        PartialAction::new(g, a, u, alpha, ValidationMode::Equality).expect("fixture")
    }

    /// `k[x,y]/(x^2, y^2)` with `D_g = span(y, xy)` (no unit) and
    /// `alpha_g: y <-> xy`: the smash formula is not associative here.
    pub fn nonunital_example<F: Field>(field: &F) -> NonunitalData<F> {
        let a = Arc::new(crate::algebra::exterior_like(field));
        let e = |i| crate::linalg::unit_vector(field, 4, i);
        let alpha_g = Matrix::from_columns(
            field,
            4,
            &[ints(field, &[0; 4]), ints(field, &[0; 4]), e(3), e(2)],
        );
        NonunitalData {
            group: Arc::new(FiniteGroup::cyclic(2)),
            algebra: a,
            domains: vec![(0..4).map(e).collect(), vec![e(2), e(3)]],
            alpha: vec![Matrix::identity(field, 4), alpha_g],
        }
    }

    /// Inputs of a partial action given by domain spans, before validation.
    #[derive(Clone, Debug)]
    pub struct NonunitalData<F: Field> {
        pub group: Arc<FiniteGroup>,
        pub algebra: Arc<Algebra<F>>,
        pub domains: Vec<Vec<Vector<F>>>,
        pub alpha: Vec<Matrix<F>>,
    }

    /// Cyclic shift `delta_i -> delta_{i+g}` on `K^n`.
    pub fn rotation<F: Field>(field: &F, n: usize) -> (Algebra<F>, Vec<Matrix<F>>) {
        let a = diagonal_algebra(field, n);
        let sigma = (0..n)
            .map(|g| {
                let cols: Vec<Vector<F>> = (0..n)
                    .map(|i| crate::linalg::unit_vector(field, n, (i + g) % n))
                    .collect();
                Matrix::from_columns(field, n, &cols)
            })
            .collect();
        (a, sigma)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::algebra::{diagonal_algebra, exterior_like, ints, split_pair};
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn fixtures_validate() {
        let q = Rationals;
        assert!(!split_pair_partial(&q).is_global());
        assert!(split_pair_swap(&q).is_global());
        let f2 = PrimeField::new(2).unwrap();
        split_pair_partial(&f2);
        split_pair_swap(&f2);
    }

    #[test]
    fn restriction_examples() {
        let q = Rationals;
        let g4 = Arc::new(FiniteGroup::cyclic(4));
        let (big, sigma) = rotation(&q, 4);
        let (pa, incl) =
            PartialAction::restrict_global(g4.clone(), &big, &sigma, &ints(&q, &[1, 1, 0, 0]))
                .unwrap();
        assert_eq!(incl.cols(), 2);
        assert_eq!(pa.u(1), &ints(&q, &[0, 1]));
        assert_eq!(pa.u(2), &ints(&q, &[0, 0]));
        assert_eq!(pa.u(3), &ints(&q, &[1, 0]));
        let (pa, _) = PartialAction::restrict_global(g4, &big, &sigma, big.unit()).unwrap();
        assert!(pa.is_global());
        // swap on K x K restricted to (1,0) has D_g = 0
        let g2 = Arc::new(FiniteGroup::cyclic(2));
        let (kk, sw) = rotation(&q, 2);
        let (pa, _) = PartialAction::restrict_global(g2, &kk, &sw, &ints(&q, &[1, 0])).unwrap();
        assert_eq!(pa.u(1), &ints(&q, &[0]));
        assert_eq!(pa.domain(1).dim(), 0);
    }

    #[test]
    fn non_unital_domain_rejected() {
        let q = Rationals;
        let a = Arc::new(exterior_like(&q));
        let g = Arc::new(FiniteGroup::cyclic(2));
        let e = |i| crate::linalg::unit_vector(&q, 4, i);
        let domains = vec![(0..4).map(e).collect(), vec![e(2), e(3)]];
        // alpha_g: y -> xy, xy -> y
        let alpha_g =
            Matrix::from_columns(&q, 4, &[ints(&q, &[0; 4]), ints(&q, &[0; 4]), e(3), e(2)]);
        let err = PartialAction::from_domains(
            g,
            a,
            &domains,
            vec![Matrix::identity(&q, 4), alpha_g],
            ValidationMode::Equality,
        )
        .unwrap_err();
        assert_eq!(err, PartialActionError::NoUnitalDomain { g: 1 });
    }

    #[test]
    fn axioms_are_enforced() {
        let q = Rationals;
        let a = Arc::new(split_pair(&q));
        let g = Arc::new(FiniteGroup::cyclic(2));
        // alpha_g = identity is not supported on tA
        let bad = PartialAction::new(
            g.clone(),
            a.clone(),
            vec![ints(&q, &[1, 0]), ints(&q, &[0, 1])],
            vec![Matrix::identity(&q, 2), Matrix::identity(&q, 2)],
            ValidationMode::Equality,
        );
        assert!(matches!(
            bad,
            Err(PartialActionError::ImageOutsideDomain { g: 1, .. })
        ));
        let d3 = Arc::new(diagonal_algebra(&q, 3));
        let bad = PartialAction::new(
            g,
            d3.clone(),
            vec![d3.unit().clone(), ints(&q, &[1, 1, 0])],
            vec![Matrix::identity(&q, 3), Matrix::identity(&q, 3)],
            ValidationMode::Equality,
        );
        assert!(bad.is_err());
    }
}
