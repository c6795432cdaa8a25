use std::sync::Arc;

use crate::algebra::Algebra;
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::{add_vectors, is_zero_vector, zero_vector, Matrix, Subspace, Vector};

/// Element of the raw smash space: one `A`-component per group element.
pub type RawElement<F> = Vec<Vector<F>>;

/// Outcome of the associativity search.
#[derive(Clone, Debug, PartialEq)]
pub enum RawWitness<F: Field> {
    Associative,
    /// Basis triple `(x, y, z)`, each given as `(g, k)`, with `(xy)z` and `x(yz)`.
    NonAssociative {
        triple: [(usize, usize); 3],
        left: RawElement<F>,
        right: RawElement<F>,
    },
    /// A product left `D_gh`.
    IllDefined {
        g: usize,
        h: usize,
    },
}

/// Associativity witness of the smash formula on basis triples.
pub fn raw_smash_witness<F: Field>(
    group: Arc<FiniteGroup>,
    algebra: Arc<Algebra<F>>,
    domains: &[Vec<Vector<F>>],
    alpha: Vec<Matrix<F>>,
) -> RawWitness<F> {
    RawSmash::new(group, algebra, domains, alpha).witness()
}

/// `⊕ D_g # g` with `(a # g)(b # h) = alpha_g(alpha_{g^-1}(a) b) # gh`,
/// without any requirement that the `D_g` be unital.
#[derive(Clone, Debug)]
pub struct RawSmash<F: Field> {
    group: Arc<FiniteGroup>,
    algebra: Arc<Algebra<F>>,
    domains: Vec<Subspace<F>>,
    alpha: Vec<Matrix<F>>,
}

impl<F: Field> RawSmash<F> {
    pub fn new(
        group: Arc<FiniteGroup>,
        algebra: Arc<Algebra<F>>,
        domains: &[Vec<Vector<F>>],
        alpha: Vec<Matrix<F>>,
    ) -> Self {
        let f = algebra.field().clone();
        let domains = domains
            .iter()
            .map(|s| Subspace::from_spanning(&f, algebra.dim(), s))
            .collect();
        RawSmash {
            group,
            algebra,
            domains,
            alpha,
        }
    }

    pub fn zero(&self) -> RawElement<F> {
        vec![zero_vector(self.algebra.field(), self.algebra.dim()); self.group.order()]
    }

    /// Fails with `(g, h)` when a product `D_g # g · D_h # h` leaves `D_gh`.
    pub fn mul(
        &self,
        x: &RawElement<F>,
        y: &RawElement<F>,
    ) -> Result<RawElement<F>, (usize, usize)> {
        let f = self.algebra.field();
        let mut out = self.zero();
        for (g, a) in x.iter().enumerate() {
            if is_zero_vector(f, a) {
                continue;
            }
            let gi = self.group.inv(g);
            let back = self.alpha[gi].mul_vec(a);
            for (h, b) in y.iter().enumerate() {
                if is_zero_vector(f, b) {
                    continue;
                }
                let gh = self.group.mul(g, h);
                let p = self.alpha[g].mul_vec(&self.algebra.mul(&back, b));
                if !self.domains[gh].contains(&p) {
                    return Err((g, h));
                }
                out[gh] = add_vectors(f, &out[gh], &p);
            }
        }
        Ok(out)
    }

    fn basis_element(&self, g: usize, k: usize) -> RawElement<F> {
        let mut x = self.zero();
        x[g] = self.domains[g].basis()[k].clone();
        x
    }

    /// Searches basis triples in lexicographic order for a failure of
    /// associativity.
    pub fn witness(&self) -> RawWitness<F> {
        let labels: Vec<(usize, usize)> = self
            .group
            .elements()
            .flat_map(|g| (0..self.domains[g].dim()).map(move |k| (g, k)))
            .collect();
        for &x in &labels {
            for &y in &labels {
                for &z in &labels {
                    match self.triple(
                        &self.basis_element(x.0, x.1),
                        &self.basis_element(y.0, y.1),
                        &self.basis_element(z.0, z.1),
                    ) {
                        Err((g, h)) => return RawWitness::IllDefined { g, h },
                        Ok((l, r)) if l != r => {
                            return RawWitness::NonAssociative {
                                triple: [x, y, z],
                                left: l,
                                right: r,
                            }
                        }
                        Ok(_) => {}
                    }
                }
            }
        }
        RawWitness::Associative
    }

    /// `((xy)z, x(yz))`.
    pub fn triple(
        &self,
        x: &RawElement<F>,
        y: &RawElement<F>,
        z: &RawElement<F>,
    ) -> Result<(RawElement<F>, RawElement<F>), (usize, usize)> {
        let l = self.mul(&self.mul(x, y)?, z)?;
        let r = self.mul(x, &self.mul(y, z)?)?;
        Ok((l, r))
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ints;
    use crate::field::{PrimeField, Rationals};
    use crate::partial::fixtures::split_pair_partial;

    fn nonassociative_example<F: Field>(f: &F) -> RawSmash<F> {
        let d = crate::partial::fixtures::nonunital_example(f);
        RawSmash::new(d.group, d.algebra, &d.domains, d.alpha)
    }

    #[test]
    fn reproduces_nonassociative_triple() {
        let q = Rationals;
        let r = nonassociative_example(&q);
        // u = x δ_e + xy δ_g
        let u = vec![ints(&q, &[0, 1, 0, 0]), ints(&q, &[0, 0, 0, 1])];
        let uu = r.mul(&u, &u).unwrap();
        assert_eq!(uu, vec![ints(&q, &[0; 4]), ints(&q, &[0, 0, 1, 0])]);
        let (l, rr) = r.triple(&u, &u, &u).unwrap();
        assert_eq!(l, r.zero());
        assert_eq!(rr, vec![ints(&q, &[0; 4]), ints(&q, &[0, 0, 0, 1])]);
        assert!(matches!(r.witness(), RawWitness::NonAssociative { .. }));
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(
            nonassociative_example(&f2).witness(),
            RawWitness::NonAssociative { .. }
        ));
    }

    #[test]
    fn validated_action_is_associative() {
        let q = Rationals;
        let pa = split_pair_partial(&q);
        let domains: Vec<Vec<_>> = (0..2).map(|g| pa.domain(g).into_basis()).collect();
        let alpha = (0..2).map(|g| pa.alpha(g).clone()).collect();
        let r = RawSmash::new(pa.group().clone(), pa.algebra().clone(), &domains, alpha);
        assert_eq!(r.witness(), RawWitness::Associative);
    }
}
