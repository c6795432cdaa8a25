use rand::Rng;

use super::functors::{f1, F1Module};
use super::HochError;
use crate::algebra::{bimodule_hom_space, hom_space, AlgModule, Bimodule};
use crate::field::Field;
use crate::kpar::Kpar;
use crate::linalg::{unit_vector, Matrix, Subspace, Vector};
use crate::partial::SmashAlgebra;
use crate::random::{invertible_matrix, small_vector};

/// `X ⊗ Y` modulo the balancing relations `x s ⊗ y = x ⊗ s y`, in the
/// coordinates of the unit vectors at non-pivot columns.
#[derive(Clone, Debug)]
pub struct BalancedTensor<F: Field> {
    pub x_dim: usize,
    pub y_dim: usize,
    pub relations: Subspace<F>,
    free: Vec<usize>,
}

impl<F: Field> BalancedTensor<F> {
    /// `xs[k]`, `ys[k]` are the actions of the k-th balancing element.
    pub fn new(field: &F, x_dim: usize, y_dim: usize, xs: &[Matrix<F>], ys: &[Matrix<F>]) -> Self {
        let ix = Matrix::identity(field, x_dim);
        let iy = Matrix::identity(field, y_dim);
        let mut spans = Vec::new();
        for (a, b) in xs.iter().zip(ys) {
            spans.extend(a.kron(&iy).sub(&ix.kron(b)).columns());
        }
        let relations = Subspace::from_spanning(field, x_dim * y_dim, &spans);
        let free = relations
            .echelon()
            .complement_units()
            .iter()
            .map(|v| crate::linalg::first_nonzero(field, v).expect("unit"))
            .collect();
        BalancedTensor {
            x_dim,
            y_dim,
            relations,
            free,
        }
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn project(&self, v: &[F::Elem]) -> Vector<F> {
        let r = self.relations.echelon().reduce(v.to_vec());
        self.free.iter().map(|&c| r[c].clone()).collect()
    }

    /// Representative in `X ⊗ Y` of the i-th quotient basis vector.
    pub fn lift(&self, i: usize) -> Vector<F> {
        unit_vector(
            self.relations.field(),
            self.x_dim * self.y_dim,
            self.free[i],
        )
    }

    /// Map induced by `a` on `X ⊗ Y` into `other`; fails when `a` does not
    /// carry relations into relations.
    pub fn induced(&self, a: &Matrix<F>, other: &BalancedTensor<F>) -> Option<Matrix<F>> {
        if self
            .relations
            .basis()
            .iter()
            .any(|r| !other.relations.contains(&a.mul_vec(r)))
        {
            return None;
        }
        let cols: Vec<Vector<F>> = (0..self.dim())
            .map(|i| other.project(&a.mul_vec(&self.lift(i))))
            .collect();
        Some(Matrix::from_columns(
            self.relations.field(),
            other.dim(),
            &cols,
        ))
    }
}

/// Images in `S` of `e_g`, namely `u_g # e`.
fn balancing_elements<F: Field>(sm: &SmashAlgebra<F>) -> Vec<(usize, Vector<F>)> {
    sm.action()
        .group()
        .elements()
        .map(|g| (g, sm.phi0().mul_vec(sm.action().u(g))))
        .collect()
}

/// `X ⊗_B M` for a `K_par G`-module `X` and an `S`-bimodule `M`, with
/// `(a # g)(x ⊗ m) = [g] x ⊗ (a # g) m` and `(x ⊗ m) s = x ⊗ m s`.
#[derive(Clone, Debug)]
pub struct TensorOverB<F: Field> {
    pub tensor: BalancedTensor<F>,
    pub bimodule: Bimodule<F>,
}

pub fn tensor_over_b<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    x: &AlgModule<F>,
    m: &Bimodule<F>,
) -> Result<TensorOverB<F>, HochError> {
    let f = kp.field();
    let bal = balancing_elements(sm);
    let xs: Vec<Matrix<F>> = bal.iter().map(|(g, _)| x.act(&kp.e(*g))).collect();
    let ys: Vec<Matrix<F>> = bal.iter().map(|(_, s)| m.act_left(s)).collect();
    let tensor = BalancedTensor::new(f, x.dim(), m.dim(), &xs, &ys);
    let brackets: Vec<Matrix<F>> = sm
        .action()
        .group()
        .elements()
        .map(|g| x.act(&kp.bracket(g)))
        .collect();
    let ix = Matrix::identity(f, x.dim());
    let mut left = Vec::with_capacity(sm.dim());
    let mut right = Vec::with_capacity(sm.dim());
    for (i, &(g, _)) in sm.labels().iter().enumerate() {
        let l = brackets[g].kron(m.left(i));
        let r = ix.kron(m.right(i));
        left.push(tensor.induced(&l, &tensor).ok_or_else(|| {
            HochError::AxiomViolated(format!("left action of basis {i} breaks balancing"))
        })?);
        right.push(tensor.induced(&r, &tensor).ok_or_else(|| {
            HochError::AxiomViolated(format!("right action of basis {i} breaks balancing"))
        })?);
    }
    let bimodule = Bimodule::new(sm.algebra().clone(), tensor.dim(), left, right)
        .map_err(|e| HochError::AxiomViolated(e.to_string()))?;
    Ok(TensorOverB { tensor, bimodule })
}

/// `m -> 1 ⊗ m` is a bimodule isomorphism `M -> B ⊗_B M`.
pub fn b_tensor_check<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    m: &Bimodule<F>,
) -> Result<(), String> {
    let f = kp.field();
    let b = kp.b_module();
    let t = tensor_over_b(kp, sm, &b, m).map_err(|e| e.to_string())?;
    let one = Matrix::from_columns(f, b.dim(), &[kp.b_algebra().unit().clone()]);
    let embed = one.kron(&Matrix::identity(f, m.dim()));
    let cols: Vec<Vector<F>> = (0..m.dim())
        .map(|j| t.tensor.project(&embed.column(j)))
        .collect();
    let iso = Matrix::from_columns(f, t.tensor.dim(), &cols);
    if t.tensor.dim() != m.dim() || iso.rank() != m.dim() {
        return Err(format!(
            "B ⊗_B M has dim {} but M has dim {}",
            t.tensor.dim(),
            m.dim()
        ));
    }
    for i in 0..sm.dim() {
        if iso.mul(m.left(i)) != t.bimodule.left(i).mul(&iso)
            || iso.mul(m.right(i)) != t.bimodule.right(i).mul(&iso)
        {
            return Err(format!("1 ⊗ - does not intertwine basis element {i}"));
        }
    }
    Ok(())
}

/// Dimensions of the two sides of
/// `Hom_{K_par G}(X, F1(M)) ≅ Hom_{S^e}(X ⊗_B S, M)` after checking that
/// `Gamma(H)(x ⊗ s) = H(x) s` and `Lambda(T)(x) = T(x ⊗ 1)` are mutually
/// inverse.
pub fn gamma_lambda_check<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    x: &AlgModule<F>,
    m: &Bimodule<F>,
) -> Result<usize, String> {
    let f = kp.field();
    let f1m: F1Module<F> = f1(kp, sm, m).map_err(|e| e.to_string())?;
    let incl = f1m.inclusion();
    let h1 = hom_space(x, &f1m.module);
    let s = sm.algebra();
    let t = tensor_over_b(kp, sm, x, &Bimodule::regular(s.clone())).map_err(|e| e.to_string())?;
    let h2 = bimodule_hom_space(&t.bimodule, m);
    if h1.dim() != h2.dim() {
        return Err(format!(
            "dim Hom(X, F1 M) = {} but dim Hom(X ⊗_B S, M) = {}",
            h1.dim(),
            h2.dim()
        ));
    }
    let gamma = |h: &Matrix<F>| -> Result<Matrix<F>, String> {
        // full map on X ⊗ S, index x * dim S + s
        let into_m = incl.mul(h);
        let mut cols = Vec::with_capacity(x.dim() * s.dim());
        for i in 0..x.dim() {
            let hx = into_m.column(i);
            for j in 0..s.dim() {
                cols.push(m.right(j).mul_vec(&hx));
            }
        }
        let full = Matrix::from_columns(f, m.dim(), &cols);
        if t.tensor
            .relations
            .basis()
            .iter()
            .any(|r| !crate::linalg::is_zero_vector(f, &full.mul_vec(r)))
        {
            return Err("Gamma(H) does not vanish on the balancing relations".into());
        }
        let qcols: Vec<Vector<F>> = (0..t.tensor.dim())
            .map(|k| full.mul_vec(&t.tensor.lift(k)))
            .collect();
        Ok(Matrix::from_columns(f, m.dim(), &qcols))
    };
    let lambda = |tm: &Matrix<F>| -> Result<Matrix<F>, String> {
        let cols: Vec<Vector<F>> = (0..x.dim())
            .map(|i| {
                let mut v = unit_vector(f, x.dim(), i);
                v = Matrix::from_columns(f, x.dim(), &[v])
                    .kron(&Matrix::from_columns(f, s.dim(), &[s.unit().clone()]))
                    .column(0);
                let img = tm.mul_vec(&t.tensor.project(&v));
                f1m.space
                    .coordinates(&img)
                    .ok_or_else(|| "Lambda(T) leaves the centralizer".to_string())
            })
            .collect::<Result<_, _>>()?;
        Ok(Matrix::from_columns(f, f1m.space.dim(), &cols))
    };
    for h in h1.basis() {
        let g = gamma(&h)?;
        if !h2.contains(&g) {
            return Err("Gamma(H) is not a bimodule map".into());
        }
        if lambda(&g)? != h {
            return Err("Lambda ∘ Gamma is not the identity".into());
        }
    }
    for tm in h2.basis() {
        let l = lambda(&tm)?;
        if !h1.contains(&l) {
            return Err("Lambda(T) is not a module map".into());
        }
        if gamma(&l)? != tm {
            return Err("Gamma ∘ Lambda is not the identity".into());
        }
    }
    Ok(h1.dim())
}

/// A `B`-module that is a sum of characters `e_S -> [S ⊆ T]`, conjugated by a
/// random invertible matrix.
pub fn random_b_module<F: Field, R: Rng>(
    kp: &Kpar<F>,
    summands: usize,
    rng: &mut R,
) -> AlgModule<F> {
    let f = kp.field();
    let b = kp.b_algebra();
    let lattice = kp.lattice();
    let ts: Vec<u64> = (0..summands)
        .map(|_| rng.random_range(0..lattice.len() as u64))
        .collect();
    let (p, pinv) = invertible_matrix(f, summands, rng);
    let action = (0..b.dim() as u64)
        .map(|s| {
            let mut d = Matrix::zeros(f, summands, summands);
            for (k, &t) in ts.iter().enumerate() {
                if s & t == s {
                    d.set(k, k, f.one());
                }
            }
            p.mul(&d).mul(&pinv)
        })
        .collect();
    AlgModule::new(b.clone(), summands, action).expect("characters of a semilattice algebra")
}

/// A submodule of `y` generated by random vectors, with its inclusion.
pub fn random_submodule<F: Field, R: Rng>(
    y: &AlgModule<F>,
    gens: usize,
    rng: &mut R,
) -> (AlgModule<F>, Matrix<F>) {
    let vs: Vec<Vector<F>> = (0..gens)
        .map(|_| small_vector(y.field(), y.dim(), rng))
        .collect();
    y.submodule(&y.generated_submodule(&vs))
        .expect("generated submodule")
}

/// `X ⊗_B -` applied to an injective `B`-module map `j: Y -> Y'` stays
/// injective.
pub fn flatness_check<F: Field>(
    kp: &Kpar<F>,
    x: &AlgModule<F>,
    y: &AlgModule<F>,
    y2: &AlgModule<F>,
    j: &Matrix<F>,
) -> Result<(), String> {
    let f = kp.field();
    if j.rank() != y.dim() {
        return Err("map is not injective".into());
    }
    let b = kp.b_algebra();
    for i in 0..b.dim() {
        if j.mul(y.action(i)) != y2.action(i).mul(j) {
            return Err("map is not B-linear".into());
        }
    }
    let xs = x.actions();
    let t1 = BalancedTensor::new(f, x.dim(), y.dim(), xs, y.actions());
    let t2 = BalancedTensor::new(f, x.dim(), y2.dim(), xs, y2.actions());
    let id_j = Matrix::identity(f, x.dim()).kron(j);
    let induced = t1
        .induced(&id_j, &t2)
        .ok_or("1 ⊗ j does not respect the relations")?;
    if induced.rank() != t1.dim() {
        return Err(format!(
            "1 ⊗ j has rank {} on a space of dim {}",
            induced.rank(),
            t1.dim()
        ));
    }
    Ok(())
}

/// `- ⊗_B S` applied to an injective `K_par G`-module map stays injective.
pub fn smash_flatness_check<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    y: &AlgModule<F>,
    y2: &AlgModule<F>,
    j: &Matrix<F>,
) -> Result<(), String> {
    let f = kp.field();
    let s = Bimodule::regular(sm.algebra().clone());
    let t1 = tensor_over_b(kp, sm, y, &s).map_err(|e| e.to_string())?;
    let t2 = tensor_over_b(kp, sm, y2, &s).map_err(|e| e.to_string())?;
    let j_id = j.kron(&Matrix::identity(f, s.dim()));
    let induced = t1
        .tensor
        .induced(&j_id, &t2.tensor)
        .ok_or("j ⊗ 1 does not respect the relations")?;
    if induced.rank() != t1.tensor.dim() {
        return Err(format!(
            "j ⊗ 1 has rank {} on a space of dim {}",
            induced.rank(),
            t1.tensor.dim()
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::partial::fixtures::{split_pair_partial, split_pair_swap};
    use crate::random::rng;

    fn run<F: Field>(field: &F) {
        let mut r = rng(7);
        for pa in [split_pair_partial(field), split_pair_swap(field)] {
            let pa = Arc::new(pa);
            let kp = Kpar::new(field, pa.group().clone(), 1024).unwrap();
            let sm = SmashAlgebra::new(pa).unwrap();
            let m = Bimodule::regular(sm.algebra().clone());
            for x in [kp.b_module(), kp.regular_module()] {
                gamma_lambda_check(&kp, &sm, &x, &m).unwrap();
            }
            for _ in 0..5 {
                let x = random_b_module(&kp, 3, &mut r);
                let y2 = random_b_module(&kp, 3, &mut r);
                let (y, j) = random_submodule(&y2, 1, &mut r);
                flatness_check(&kp, &x, &y, &y2, &j).unwrap();
            }
            let reg = kp.regular_module();
            let (y, j) = random_submodule(&reg, 1, &mut r);
            smash_flatness_check(&kp, &sm, &y, &reg, &j).unwrap();
        }
    }

    #[test]
    fn adjunction_and_flatness() {
        run(&Rationals);
        run(&PrimeField::new(2).unwrap());
    }

    #[test]
    fn tensor_with_b_is_identity() {
        let q = Rationals;
        let pa = Arc::new(split_pair_partial(&q));
        let kp = Kpar::new(&q, pa.group().clone(), 1024).unwrap();
        let b = kp.b_module();
        let t = BalancedTensor::new(&q, b.dim(), b.dim(), b.actions(), b.actions());
        assert_eq!(t.dim(), b.dim());
    }
}
