use super::HochError;
use crate::algebra::{bimodule_hom_space, AlgModule, Bimodule};
use crate::field::Field;
use crate::kpar::Kpar;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::parcoh::partial_invariants;
use crate::partial::{check_partial_rep, SmashAlgebra};

/// `M` as an `A`-bimodule through `a -> a # e`.
pub fn restrict_to_base<F: Field>(sm: &SmashAlgebra<F>, m: &Bimodule<F>) -> Bimodule<F> {
    m.pullback(sm.action().algebra().clone(), sm.phi0())
}

/// `m -> pi0(g) m pi0(g^-1)` on all of `M`.
pub fn conjugation<F: Field>(sm: &SmashAlgebra<F>, m: &Bimodule<F>, g: usize) -> Matrix<F> {
    let gi = sm.action().group().inv(g);
    m.act_left(sm.pi0(g)).mul(&m.act_right(sm.pi0(gi)))
}

/// `Hom_{A^e}(A, M)`, identified with the centralizer of `A` in `M`, with its
/// partial representation and the induced `K_par G`-module.
#[derive(Clone, Debug)]
pub struct F1Module<F: Field> {
    pub space: Subspace<F>,
    pub pi: Vec<Matrix<F>>,
    pub module: AlgModule<F>,
}

impl<F: Field> F1Module<F> {
    /// Columns are the basis of the centralizer inside `M`.
    pub fn inclusion(&self) -> Matrix<F> {
        Matrix::from_columns(self.space.field(), self.space.ambient(), self.space.basis())
    }
}

pub fn f1<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    m: &Bimodule<F>,
) -> Result<F1Module<F>, HochError> {
    let f = m.field();
    let space = restrict_to_base(sm, m).centralizer();
    let grp = sm.action().group();
    let mut pi = Vec::with_capacity(grp.order());
    for g in grp.elements() {
        let c = conjugation(sm, m, g);
        let cols: Vec<Vector<F>> = space
            .basis()
            .iter()
            .map(|v| {
                space.coordinates(&c.mul_vec(v)).ok_or_else(|| {
                    HochError::AxiomViolated(format!("conjugation by {g} leaves the centralizer"))
                })
            })
            .collect::<Result<_, _>>()?;
        pi.push(Matrix::from_columns(f, space.dim(), &cols));
    }
    check_partial_rep(grp, &pi).map_err(|v| HochError::AxiomViolated(format!("F1 action: {v}")))?;
    let module = kp
        .partial_rep_to_module(&pi)
        .map_err(|e| HochError::Internal(e.to_string()))?;
    Ok(F1Module { space, pi, module })
}

/// Compares `F1` with `Hom_{A^e}(A, M)` computed as bimodule maps out of the
/// regular bimodule, including the action `f -> pi0(g) f(alpha_{g^-1}(u_g -)) pi0(g^-1)`.
pub fn f1_literal_check<F: Field>(
    sm: &SmashAlgebra<F>,
    m: &Bimodule<F>,
    f1: &F1Module<F>,
) -> Result<usize, String> {
    let a = sm.action().algebra();
    let f = a.field();
    let mb = restrict_to_base(sm, m);
    let hom = bimodule_hom_space(&Bimodule::regular(a.clone()), &mb);
    if hom.dim() != f1.space.dim() {
        return Err(format!(
            "dim Hom_A^e(A, M) = {} but centralizer has dim {}",
            hom.dim(),
            f1.space.dim()
        ));
    }
    let at_one = |h: &Matrix<F>| h.mul_vec(a.unit());
    let images = Subspace::from_spanning(
        f,
        m.dim(),
        &hom.basis().iter().map(at_one).collect::<Vec<_>>(),
    );
    if images != f1.space {
        return Err("evaluation at 1 does not map onto the centralizer".into());
    }
    let grp = sm.action().group();
    for g in grp.elements() {
        let conj = conjugation(sm, m, g);
        let shift = sm.action().alpha(grp.inv(g));
        for h in hom.basis() {
            let moved = conj.mul(&h).mul(shift);
            if !hom.contains(&moved) {
                return Err(format!("g = {g} does not preserve bimodule maps"));
            }
            let c = f1.space.coordinates(&at_one(&h)).expect("in centralizer");
            let expect = f1
                .space
                .coordinates(&at_one(&moved))
                .ok_or("image outside centralizer")?;
            if f1.pi[g].mul_vec(&c) != expect {
                return Err(format!("literal and centralizer actions differ at g = {g}"));
            }
        }
    }
    Ok(hom.dim())
}

/// `Hom_{S^e}(S, M)`: the centralizer of `S` in `M`.
pub fn f_space<F: Field>(m: &Bimodule<F>) -> Subspace<F> {
    m.centralizer()
}

/// `F = F2 ∘ F1`: the partial invariants of `F1(M)`, pushed into `M`, equal
/// the centralizer of `S`. Returns the common dimension.
pub fn factorization_check<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    m: &Bimodule<F>,
) -> Result<usize, String> {
    let f1 = f1(kp, sm, m).map_err(|e| e.to_string())?;
    let inv = partial_invariants(kp, &f1.module);
    let incl = f1.inclusion();
    let pushed: Vec<Vector<F>> = inv.basis().iter().map(|v| incl.mul_vec(v)).collect();
    let lhs = Subspace::from_spanning(m.field(), m.dim(), &pushed);
    let rhs = f_space(m);
    if lhs != rhs {
        return Err(format!(
            "F2(F1(M)) has dim {} but F(M) has dim {}",
            lhs.dim(),
            rhs.dim()
        ));
    }
    let via_gamma = super::tensor::gamma_lambda_check(kp, sm, &kp.b_module(), m)?;
    if via_gamma != rhs.dim() {
        return Err(format!(
            "Gamma/Lambda at X = B give dim {via_gamma} but F(M) has dim {}",
            rhs.dim()
        ));
    }
    super::tensor::b_tensor_check(kp, sm, m)?;
    Ok(rhs.dim())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::partial::fixtures::{split_pair_partial, split_pair_swap};

    fn run<F: Field>(field: &F) {
        for pa in [split_pair_partial(field), split_pair_swap(field)] {
            let pa = Arc::new(pa);
            let kp = Kpar::new(field, pa.group().clone(), 1024).unwrap();
            let sm = SmashAlgebra::new(pa).unwrap();
            let m = Bimodule::regular(sm.algebra().clone());
            let f1m = f1(&kp, &sm, &m).unwrap();
            f1_literal_check(&sm, &m, &f1m).unwrap();
            let d = factorization_check(&kp, &sm, &m).unwrap();
            assert_eq!(d, m.centralizer().dim());
        }
    }

    #[test]
    fn factorization_on_fixtures() {
        run(&Rationals);
        run(&PrimeField::new(2).unwrap());
    }
}
