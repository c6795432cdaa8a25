//! The partial group algebra `K_par G`, realized as `B ×_β G` where `B` is the
//! semilattice algebra of subsets of `G` containing `e`.
//!
//! A subset `T ∋ e` is stored as the bitmask of `T \ {e}`, element `i ≥ 1`
//! occupying bit `i - 1`. Since the semilattice is Boolean the basis index of
//! `e_T` in `B` equals its mask.

use std::sync::Arc;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{
    orthogonal_idempotent_basis, AlgModule, Algebra, ModuleError, OrthogonalBasis, Semilattice,
};
use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::{unit_vector, Matrix, Subspace, Vector};
use crate::partial::{
    check_partial_rep, PartialAction, PartialRepViolation, SmashAlgebra, ValidationMode,
};

pub const DEFAULT_MAX_KPAR_DIM: usize = 1024;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KparError {
    #[error("K_par G would have dimension {dim}, above the budget {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error("internal consistency: {0}")]
    Internal(String),
    #[error("not a partial representation: {0}")]
    AxiomViolated(PartialRepViolation),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `2^{n-2}(n+1)` for `n ≥ 2`, and 1 for the trivial group.
pub fn kpar_dimension_formula(order: usize) -> usize {
    if order <= 1 {
        1
    } else {
        (1usize << (order - 2)) * (order + 1)
    }
}

#[derive(Clone, Debug)]
pub struct Kpar<F: Field> {
    group: Arc<FiniteGroup>,
    lattice: Semilattice,
    b: Arc<Algebra<F>>,
    w: OrthogonalBasis<F>,
    beta: Arc<PartialAction<F>>,
    smash: SmashAlgebra<F>,
    /// `index[g][mask]` is the basis index of `e_T # g`, or `usize::MAX`.
    index: Vec<Vec<usize>>,
}

impl<F: Field> Kpar<F> {
    pub fn new(field: &F, group: Arc<FiniteGroup>, max_dim: usize) -> Result<Self, KparError> {
        let n = group.order();
        let dim = kpar_dimension_formula(n);
        if n > 20 || dim > max_dim {
            return Err(KparError::TooLarge { dim, cap: max_dim });
        }
        let lattice =
            Semilattice::boolean(n - 1).map_err(|e| KparError::Internal(e.to_string()))?;
        let b = Arc::new(lattice.algebra(field));
        let w = orthogonal_idempotent_basis(field, &lattice)
            .map_err(|e| KparError::Internal(e.to_string()))?;
        let nb = lattice.len();
        let u: Vec<Vector<F>> = group
            .elements()
            .map(|g| unit_vector(field, nb, bit(g) as usize))
            .collect();
        let alpha = group
            .elements()
            .map(|g| {
                let gi = group.inv(g);
                let cols: Vec<Vector<F>> = (0..nb as u64)
                    .map(|t| unit_vector(field, nb, translate(&group, g, t | bit(gi)) as usize))
                    .collect();
                Matrix::from_columns(field, nb, &cols)
            })
            .collect();
        let beta = Arc::new(
            PartialAction::new(group.clone(), b.clone(), u, alpha, ValidationMode::Equality)
                .map_err(|e| KparError::Internal(format!("beta: {e}")))?,
        );
        let d_e = beta.domain(0);
        let hints: Vec<Vector<F>> = w
            .vectors
            .iter()
            .map(|wt| {
                let mut v = d_e.coordinates(wt).expect("D_e = B");
                v.resize(dim, field.zero());
                v
            })
            .collect();
        let smash = SmashAlgebra::with_idempotents(beta.clone(), Some(hints))
            .map_err(|e| KparError::Internal(e.to_string()))?;
        let mut index = vec![vec![usize::MAX; nb]; n];
        for (pos, &(g, k)) in smash.labels().iter().enumerate() {
            let basis = &smash.domain(g).basis()[k];
            let mask = basis
                .iter()
                .position(|x| !field.is_zero(x))
                .expect("nonzero basis vector");
            index[g][mask] = pos;
        }
        let kp = Kpar {
            group,
            lattice,
            b,
            w,
            beta,
            smash,
            index,
        };
        kp.check_basis_shape()?;
        Ok(kp)
    }

    fn check_basis_shape(&self) -> Result<(), KparError> {
        let f = self.field();
        for (pos, &(g, k)) in self.smash.labels().iter().enumerate() {
            let v = &self.smash.domain(g).basis()[k];
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !f.is_zero(&v[i])).collect();
            if nz.len() != 1
                || !f.is_one(&v[nz[0]])
                || !contains(nz[0] as u64, g)
                || self.index[g][nz[0]] != pos
            {
                return Err(KparError::Internal(format!(
                    "D_{g} basis element {k} is not e_T with g in T"
                )));
            }
        }
        if self.dim() != kpar_dimension_formula(self.group.order()) {
            return Err(KparError::Internal("dimension formula".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        self.b.field()
    }
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn lattice(&self) -> &Semilattice {
        &self.lattice
    }
    pub fn b_algebra(&self) -> &Arc<Algebra<F>> {
        &self.b
    }
    pub fn orthogonal_basis(&self) -> &OrthogonalBasis<F> {
        &self.w
    }
    pub fn beta(&self) -> &Arc<PartialAction<F>> {
        &self.beta
    }
    pub fn smash(&self) -> &SmashAlgebra<F> {
        &self.smash
    }
    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        self.smash.algebra()
    }
    pub fn dim(&self) -> usize {
        self.smash.dim()
    }
    pub fn b_dim(&self) -> usize {
        self.lattice.len()
    }

    /// Basis index of `e_T # g`.
    pub fn index_of(&self, mask: u64, g: usize) -> Option<usize> {
        self.index
            .get(g)
            .and_then(|row| row.get(mask as usize))
            .copied()
            .filter(|&i| i != usize::MAX)
    }

    /// `(mask, g)` of a basis index.
    pub fn label(&self, i: usize) -> (u64, usize) {
        let (g, _) = self.smash.labels()[i];
        let mask = self.index[g].iter().position(|&p| p == i).expect("label") as u64;
        (mask, g)
    }

    pub fn basis_element(&self, mask: u64, g: usize) -> Vector<F> {
        let i = self.index_of(mask, g).expect("g must lie in T");
        unit_vector(self.field(), self.dim(), i)
    }

    /// `[g] = e_{{e,g}} # g`.
    pub fn bracket(&self, g: usize) -> Vector<F> {
        self.basis_element(bit(g), g)
    }

    /// `e_g = e_{{e,g}} # e`.
    pub fn e(&self, g: usize) -> Vector<F> {
        self.basis_element(bit(g), 0)
    }

    /// `b # e` for `b ∈ B`.
    pub fn embed_b(&self, b: &[F::Elem]) -> Vector<F> {
        self.smash.phi0().mul_vec(b)
    }

    /// `w_T # e`.
    pub fn w(&self, mask: u64) -> Vector<F> {
        self.embed_b(&self.w.vectors[mask as usize])
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vector<F> {
        self.algebra().mul(x, y)
    }

    /// Closed form `e_{T ∪ gT'} # gh` of the product of basis elements.
    pub fn closed_form_product(&self, (t, g): (u64, usize), (t2, h): (u64, usize)) -> (u64, usize) {
        (t | translate(&self.group, g, t2), self.group.mul(g, h))
    }

    /// `T = {e, g1, g1g2, ..., g1...gn}` and `g1...gn`.
    pub fn word_label(&self, word: &[usize]) -> (u64, usize) {
        let mut mask = 0;
        let mut prefix = 0;
        for &g in word {
            prefix = self.group.mul(prefix, g);
            mask |= bit(prefix);
        }
        (mask, prefix)
    }

    pub fn word_to_element(&self, word: &[usize]) -> Vector<F> {
        let (mask, g) = self.word_label(word);
        self.basis_element(mask, g)
    }

    pub fn bracket_product(&self, word: &[usize]) -> Vector<F> {
        word.iter().fold(self.algebra().unit().clone(), |acc, &g| {
            self.mul(&acc, &self.bracket(g))
        })
    }

    /// `ε(e_T # g) = e_T`.
    pub fn epsilon(&self) -> Matrix<F> {
        let f = self.field();
        let cols: Vec<Vector<F>> = (0..self.dim())
            .map(|i| unit_vector(f, self.b_dim(), self.label(i).0 as usize))
            .collect();
        Matrix::from_columns(f, self.b_dim(), &cols)
    }

    /// `{e_T # g - e_T # e : g ∈ T, g ≠ e}`.
    pub fn ig_generators(&self) -> Vec<Vector<F>> {
        let f = self.field();
        let mut out = Vec::new();
        for i in 0..self.dim() {
            let (t, g) = self.label(i);
            if g != 0 {
                out.push(crate::linalg::sub_vectors(
                    f,
                    &unit_vector(f, self.dim(), i),
                    &self.basis_element(t, 0),
                ));
            }
        }
        out
    }

    pub fn ig(&self) -> Subspace<F> {
        self.epsilon().kernel()
    }

    /// `x -> [g] x [g^-1]` on `B`, checked to land in `B # e`.
    pub fn conj_rep(&self, g: usize) -> Result<Matrix<F>, KparError> {
        let f = self.field();
        let gi = self.group.inv(g);
        let (l, r) = (self.bracket(g), self.bracket(gi));
        let off = self.smash.offset(0);
        let mut cols = Vec::with_capacity(self.b_dim());
        for t in 0..self.b_dim() {
            let x = self.embed_b(&unit_vector(f, self.b_dim(), t));
            let y = self.mul(&self.mul(&l, &x), &r);
            if (0..self.dim()).any(|i| (i < off || i >= off + self.b_dim()) && !f.is_zero(&y[i])) {
                return Err(KparError::Internal(format!("[{g}] e_T [{gi}] left B # e")));
            }
            cols.push(y[off..off + self.b_dim()].to_vec());
        }
        Ok(Matrix::from_columns(f, self.b_dim(), &cols))
    }

    pub fn regular_module(&self) -> AlgModule<F> {
        AlgModule::regular(self.algebra().clone())
    }

    /// `B` with `x · b = ε(x (b # e))`.
    pub fn b_module(&self) -> AlgModule<F> {
        let f = self.field();
        let nb = self.b_dim();
        let action = (0..self.dim())
            .map(|i| {
                let (t, g) = self.label(i);
                let cols: Vec<Vector<F>> = (0..nb as u64)
                    .map(|s| {
                        let (m, _) = self.closed_form_product((t, g), (s, 0));
                        unit_vector(f, nb, m as usize)
                    })
                    .collect();
                Matrix::from_columns(f, nb, &cols)
            })
            .collect();
        AlgModule::new_unchecked(self.algebra().clone(), nb, action).expect("shape")
    }

    /// The augmentation ideal as a submodule of the regular module.
    pub fn ig_module(&self) -> Result<(AlgModule<F>, Matrix<F>), KparError> {
        Ok(self.regular_module().submodule(&self.ig())?)
    }

    /// Submodule of `B` generated by `e_g`.
    pub fn domain_module(&self, g: usize) -> Result<(AlgModule<F>, Matrix<F>), KparError> {
        let bm = self.b_module();
        let s = bm.generated_submodule(&[unit_vector(self.field(), self.b_dim(), bit(g) as usize)]);
        Ok(bm.submodule(&s)?)
    }

    /// `Λ / Λv` for a seeded random `v`.
    pub fn random_quotient(&self, seed: u64) -> Result<(AlgModule<F>, Matrix<F>), KparError> {
        let mut rng = crate::random::rng(seed);
        let reg = self.regular_module();
        let v = crate::random::small_vector(self.field(), self.dim(), &mut rng);
        let s = reg.generated_submodule(&[v]);
        Ok(reg.quotient(&s)?)
    }

    /// Module with `e_T # g` acting by `prod_{h ∈ T} pi(h) pi(h^-1) · pi(g)`.
    pub fn partial_rep_to_module(&self, pi: &[Matrix<F>]) -> Result<AlgModule<F>, KparError> {
        check_partial_rep(&self.group, pi).map_err(KparError::AxiomViolated)?;
        let f = self.field();
        let dim = pi[0].rows();
        let idem: Vec<Matrix<F>> = self
            .group
            .elements()
            .map(|h| pi[h].mul(&pi[self.group.inv(h)]))
            .collect();
        let action = (0..self.dim())
            .map(|i| {
                let (t, g) = self.label(i);
                let mut m = Matrix::identity(f, dim);
                for h in self.group.elements().filter(|&h| contains(t, h)) {
                    m = m.mul(&idem[h]);
                }
                m.mul(&pi[g])
            })
            .collect();
        Ok(AlgModule::new(self.algebra().clone(), dim, action)?)
    }

    /// `pi(g) = action of [g]`.
    pub fn module_to_partial_rep(&self, m: &AlgModule<F>) -> Vec<Matrix<F>> {
        self.group
            .elements()
            .map(|g| m.act(&self.bracket(g)))
            .collect()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Vector<F> {
        crate::random::small_vector(self.field(), self.dim(), rng)
    }
}

impl<F: Field> Kpar<F> {
    /// Counts `{T : {e,g} ⊆ T}` over `g` directly.
    pub fn enumerate_basis(&self) -> usize {
        let n = self.group.order();
        (0..n)
            .map(|g| (0..1u64 << (n - 1)).filter(|&t| contains(t, g)).count())
            .sum()
    }

    /// Generic smash products of basis pairs against the closed form, and
    /// multiplicativity of the grading.
    pub fn closed_form_check(&self) -> Result<(), String> {
        let f = self.field();
        let alg = self.algebra();
        for i in 0..self.dim() {
            let x = self.label(i);
            for j in 0..self.dim() {
                let y = self.label(j);
                let (t, gh) = self.closed_form_product(x, y);
                let expect = self
                    .index_of(t, gh)
                    .ok_or_else(|| format!("closed form of {x:?}{y:?} is not a basis label"))?;
                let got = alg.basis_product_sparse(i, j);
                if got.len() != 1 || got[0].0 != expect || !f.is_one(&got[0].1) {
                    return Err(format!("(e_{:#b} # {}) (e_{:#b} # {})", x.0, x.1, y.0, y.1));
                }
                if self.label(expect).1 != self.group.mul(x.1, y.1) {
                    return Err(format!("grading fails on {x:?} {y:?}"));
                }
            }
        }
        Ok(())
    }

    /// `[e] = 1`, `[s^-1][s][t] = [s^-1][st]`, `[s][t][t^-1] = [st][t^-1]`.
    pub fn bracket_relations_check(&self) -> Result<(), String> {
        if self.bracket(0) != *self.algebra().unit() {
            return Err("[e] != 1".into());
        }
        let br: Vec<Vector<F>> = self.group.elements().map(|g| self.bracket(g)).collect();
        for s in self.group.elements() {
            let si = self.group.inv(s);
            for t in self.group.elements() {
                let ti = self.group.inv(t);
                let st = self.group.mul(s, t);
                if self.mul(&self.mul(&br[si], &br[s]), &br[t]) != self.mul(&br[si], &br[st]) {
                    return Err(format!("[{s}^-1][{s}][{t}] != [{s}^-1][{s}{t}]"));
                }
                if self.mul(&self.mul(&br[s], &br[t]), &br[ti]) != self.mul(&br[st], &br[ti]) {
                    return Err(format!("[{s}][{t}][{t}^-1] != [{s}{t}][{t}^-1]"));
                }
            }
        }
        Ok(())
    }

    /// Random words: the closed form against bracket products, and `ε` of
    /// the word against `e_{g1} e_{g1g2} ⋯` in `B`.
    pub fn word_check<R: Rng>(
        &self,
        words: usize,
        max_len: usize,
        rng: &mut R,
    ) -> Result<(), String> {
        let eps = self.epsilon();
        let f = self.field();
        for _ in 0..words {
            let len = rng.random_range(0..=max_len);
            let word: Vec<usize> = (0..len)
                .map(|_| rng.random_range(0..self.group.order()))
                .collect();
            let x = self.word_to_element(&word);
            if x != self.bracket_product(&word) {
                return Err(format!("word {word:?}"));
            }
            let mut prefix = 0;
            let mut e = self.b.unit().clone();
            for &g in &word {
                prefix = self.group.mul(prefix, g);
                e = self
                    .b
                    .mul(&e, &unit_vector(f, self.b_dim(), bit(prefix) as usize));
            }
            if eps.mul_vec(&x) != e {
                return Err(format!("epsilon of word {word:?}"));
            }
        }
        Ok(())
    }

    /// `[g] e_h = e_{gh} [g]`.
    pub fn commutation_check(&self, g: usize, h: usize) -> bool {
        let gh = self.group.mul(g, h);
        self.mul(&self.bracket(g), &self.e(h)) == self.mul(&self.e(gh), &self.bracket(g))
    }

    pub fn commutation_all(&self) -> Result<(), String> {
        for g in self.group.elements() {
            for h in self.group.elements() {
                if !self.commutation_check(g, h) {
                    return Err(format!("[{g}] e_{h} != e_{{{g}{h}}} [{g}]"));
                }
            }
        }
        Ok(())
    }

    /// `B` has the expected dimension, `e_e = 1`, the `e_g` are commuting
    /// idempotents.
    pub fn b_check(&self) -> Result<(), String> {
        let f = self.field();
        let n = self.group.order();
        if self.b_dim() != 1 << (n - 1) {
            return Err(format!("dim B = {}", self.b_dim()));
        }
        let e = |g: usize| unit_vector(f, self.b_dim(), bit(g) as usize);
        if e(0) != *self.b.unit() {
            return Err("e_e != 1".into());
        }
        for g in 0..n {
            if self.b.mul(&e(g), &e(g)) != e(g) {
                return Err(format!("e_{g} is not idempotent"));
            }
            for h in 0..n {
                if self.b.mul(&e(g), &e(h)) != self.b.mul(&e(h), &e(g)) {
                    return Err(format!("e_{g} e_{h} != e_{h} e_{g}"));
                }
            }
        }
        Ok(())
    }

    pub fn conj_rep_check(&self) -> Result<(), String> {
        let reps = self
            .group
            .elements()
            .map(|g| self.conj_rep(g))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        check_partial_rep(&self.group, &reps).map_err(|v| v.to_string())?;
        let bm = self.b_module();
        for g in self.group.elements() {
            if bm.act(&self.bracket(g)) != reps[g] {
                return Err(format!(
                    "conj_rep({g}) differs from the action of [{g}] on B"
                ));
            }
        }
        Ok(())
    }

    /// Structural facts about `ε` and `IG`.
    pub fn augmentation_check(&self) -> Result<(), String> {
        let f = self.field();
        let eps = self.epsilon();
        if eps.rank() != self.b_dim() {
            return Err("epsilon is not surjective".into());
        }
        let ig = self.ig();
        if ig.dim() != self.dim() - self.b_dim() {
            return Err(format!("dim IG = {}", ig.dim()));
        }
        if Subspace::from_spanning(f, self.dim(), &self.ig_generators()) != ig {
            return Err("IG differs from the span of e_T # g - e_T # e".into());
        }
        if eps.mul_vec(self.algebra().unit()) != *self.b.unit() {
            return Err("epsilon(1) != 1".into());
        }
        for g in self.group.elements() {
            if eps.mul_vec(&self.bracket(g)) != unit_vector(f, self.b_dim(), bit(g) as usize) {
                return Err(format!("epsilon([{g}]) != e_{g}"));
            }
        }
        for s in 0..self.b_dim() {
            let es = unit_vector(f, self.b_dim(), s);
            let left = self.embed_b(&es);
            for i in 0..self.dim() {
                let x = unit_vector(f, self.dim(), i);
                if eps.mul_vec(&self.mul(&left, &x)) != self.b.mul(&es, &eps.mul_vec(&x)) {
                    return Err(format!("epsilon is not B-linear at e_{s:#b}, basis {i}"));
                }
            }
        }
        Ok(())
    }

    /// `ε(xy)x = xε(y)` and `ε(xy) = ε(xy)ε(x)` on pairs of random words.
    /// Both sides are quadratic in `x`, so the identities hold on words and
    /// not on arbitrary linear combinations.
    pub fn epsilon_identities_check<R: Rng>(
        &self,
        pairs: usize,
        max_len: usize,
        rng: &mut R,
    ) -> Result<(), String> {
        let eps = self.epsilon();
        let n = self.group.order();
        for _ in 0..pairs {
            let w1: Vec<usize> = (0..rng.random_range(0..=max_len))
                .map(|_| rng.random_range(0..n))
                .collect();
            let w2: Vec<usize> = (0..rng.random_range(0..=max_len))
                .map(|_| rng.random_range(0..n))
                .collect();
            let (x, y) = (self.word_to_element(&w1), self.word_to_element(&w2));
            let exy = eps.mul_vec(&self.mul(&x, &y));
            if self.mul(&self.embed_b(&exy), &x) != self.mul(&x, &self.embed_b(&eps.mul_vec(&y))) {
                return Err(format!("eps(xy)x != x eps(y) for words {w1:?}, {w2:?}"));
            }
            if exy != self.b.mul(&exy, &eps.mul_vec(&x)) {
                return Err(format!("eps(xy) != eps(xy)eps(x) for words {w1:?}, {w2:?}"));
            }
        }
        Ok(())
    }
}

impl<F: Field> Kpar<F> {
    /// `w_S # g = sum_{S' ⊇ S} μ(S,S') e_{S'} # g` in the `e`-basis; index `i`
    /// carries the same label `(S, g)` in both bases.
    pub fn w_element(&self, i: usize) -> Vector<F> {
        let f = self.field();
        let (s, g) = self.label(i);
        let mut v = crate::linalg::zero_vector(f, self.dim());
        let full = (1u64 << (self.group.order() - 1)) - 1;
        let rest = full & !s;
        let mut sub = rest;
        loop {
            let sign = if sub.count_ones().is_multiple_of(2) {
                f.one()
            } else {
                f.neg(&f.one())
            };
            v[self.index_of(s | sub, g).expect("superset contains g")] = sign;
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        v
    }

    /// `(w_T # g)(w_{T'} # h) = [T' = g^-1 T] w_T # gh`.
    pub fn w_product(&self, i: usize, j: usize) -> Option<usize> {
        let (t, g) = self.label(i);
        let (t2, h) = self.label(j);
        if contains(t2, self.group.inv(g)) && translate(&self.group, g, t2) == t {
            self.index_of(t, self.group.mul(g, h))
        } else {
            None
        }
    }

    /// Basis index of `w_T # e`.
    pub fn w_idempotent(&self, t: u64) -> usize {
        self.index_of(t, 0).expect("e ∈ T")
    }

    /// Indices of the basis `{w_{hT} # h : h^-1 ∈ T}` of `Λ w_T`.
    pub fn w_left_ideal(&self, t: u64) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&h| contains(t, self.group.inv(h)))
            .map(|h| {
                self.index_of(translate(&self.group, h, t), h)
                    .expect("h ∈ hT")
            })
            .collect()
    }

    /// `{h : hT = T}`.
    pub fn stabilizer(&self, t: u64) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&h| contains(t, self.group.inv(h)) && translate(&self.group, h, t) == t)
            .collect()
    }

    /// One representative per orbit of `T ↦ gT` (`g^-1 ∈ T`), the least mask.
    pub fn orbit_representatives(&self) -> Vec<u64> {
        let mut seen = vec![false; self.b_dim()];
        let mut reps = Vec::new();
        for t in 0..self.b_dim() as u64 {
            if seen[t as usize] {
                continue;
            }
            reps.push(t);
            for h in self
                .group
                .elements()
                .filter(|&h| contains(t, self.group.inv(h)))
            {
                seen[translate(&self.group, h, t) as usize] = true;
            }
        }
        reps
    }

    /// The product rule in the `w`-basis against generic multiplication.
    pub fn w_form_check(&self) -> Result<(), String> {
        let f = self.field();
        let ws: Vec<Vector<F>> = (0..self.dim()).map(|i| self.w_element(i)).collect();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let p = self.mul(&ws[i], &ws[j]);
                let expect = match self.w_product(i, j) {
                    Some(k) => ws[k].clone(),
                    None => crate::linalg::zero_vector(f, self.dim()),
                };
                if p != expect {
                    return Err(format!(
                        "w-product of {:?} and {:?}",
                        self.label(i),
                        self.label(j)
                    ));
                }
            }
        }
        Ok(())
    }

    /// `φ_M(w_i)` for every `w`-basis index.
    pub fn w_actions(&self, m: &AlgModule<F>) -> Vec<Matrix<F>> {
        let f = self.field();
        (0..self.dim())
            .map(|i| {
                let w = self.w_element(i);
                let mut acc = Matrix::zeros(f, m.dim(), m.dim());
                for (k, c) in w.iter().enumerate() {
                    if !f.is_zero(c) {
                        acc.add_scaled(c, m.action(k));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Bit of `g ≠ e`; `e` maps to the empty mask.
pub fn bit(g: usize) -> u64 {
    if g == 0 {
        0
    } else {
        1u64 << (g - 1)
    }
}

/// Whether the subset with mask `t` (which always contains `e`) contains `g`.
pub fn contains(t: u64, g: usize) -> bool {
    g == 0 || t & bit(g) != 0
}

/// Mask of `gT` (assumes `g^-1 ∈ T` so that `e ∈ gT`).
pub fn translate(group: &FiniteGroup, g: usize, t: u64) -> u64 {
    let mut out = bit(g);
    for x in 1..group.order() {
        if t & bit(x) != 0 {
            out |= bit(group.mul(g, x));
        }
    }
    out
}

/// Members of the subset with mask `t`, ascending, including `e`.
pub fn members(group: &FiniteGroup, t: u64) -> Vec<usize> {
    group.elements().filter(|&g| contains(t, g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, PrimeField, Rationals};
    use crate::group::{GroupKind, DEFAULT_ORDER_CAP};

    fn kp<F: Field>(f: &F, n: usize) -> Kpar<F> {
        Kpar::new(f, Arc::new(FiniteGroup::cyclic(n)), DEFAULT_MAX_KPAR_DIM).unwrap()
    }

    #[test]
    fn dimensions() {
        let q = Rationals;
        assert_eq!(kp(&q, 1).dim(), 1);
        assert_eq!(kp(&q, 2).dim(), 3);
        assert_eq!(kp(&q, 2).b_dim(), 2);
        assert_eq!(kp(&q, 3).dim(), 8);
        assert_eq!(kp(&q, 3).b_dim(), 4);
        assert_eq!(kp(&q, 4).dim(), 20);
        let s3 = FiniteGroup::standard(GroupKind::Symmetric(3), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(
            Kpar::new(&PrimeField::new(2).unwrap(), Arc::new(s3), 1024)
                .unwrap()
                .dim(),
            112
        );
    }

    #[test]
    fn beta_examples() {
        let q = Rationals;
        let k3 = kp(&q, 3);
        // beta_g(e_{e,g^-1}) = e_{e,g}
        let g = 1;
        let gi = 2;
        let img = k3
            .beta()
            .alpha(g)
            .mul_vec(&unit_vector(&q, 4, bit(gi) as usize));
        assert_eq!(img, unit_vector(&q, 4, bit(g) as usize));
        let k2 = kp(&q, 2);
        let img = k2.beta().alpha(1).mul_vec(&unit_vector(&q, 2, 1));
        assert_eq!(img, unit_vector(&q, 2, 1));
    }

    #[test]
    fn words_and_brackets() {
        let q = Rationals;
        let k3 = kp(&q, 3);
        assert_eq!(k3.word_to_element(&[1]), k3.bracket(1));
        assert_eq!(k3.word_to_element(&[1, 2]), k3.e(1));
        assert_eq!(k3.bracket_product(&[1, 1]), k3.basis_element(0b11, 2));
        assert_eq!(k3.bracket_product(&[1, 1]), k3.word_to_element(&[1, 1]));
    }

    #[test]
    fn conj_rep_and_b_module_agree() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        let c = k2.conj_rep(1).unwrap();
        assert_eq!(c.column(0), unit_vector(&q, 2, 1));
        let bm = k2.b_module();
        assert!(bm.validate().is_ok());
        assert_eq!(bm.act(&k2.bracket(1)), c);
    }

    #[test]
    fn partial_rep_modules() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        let m = |x: i64| Matrix::from_i64(&q, &[vec![x]]);
        let zero_ext = k2.partial_rep_to_module(&[m(1), m(0)]).unwrap();
        assert!(zero_ext.act(&k2.e(1)).is_zero());
        let trivial = k2.partial_rep_to_module(&[m(1), m(1)]).unwrap();
        assert!((0..k2.dim()).all(|i| trivial
            .act(&k2.embed_b(&unit_vector(&q, 2, k2.label(i).0 as usize)))
            .is_identity()));
        assert!(matches!(
            k2.partial_rep_to_module(&[m(1), m(2)]),
            Err(KparError::AxiomViolated(_))
        ));
        assert_eq!(k2.module_to_partial_rep(&zero_ext), vec![m(1), m(0)]);
    }

    #[test]
    fn verification_suite() {
        let q = Rationals;
        let f2 = PrimeField::new(2).unwrap();
        let mut rng = crate::random::rng(7);
        for n in 1..=4 {
            let k = kp(&q, n);
            assert_eq!(k.enumerate_basis(), k.dim());
            k.b_check().unwrap();
            k.closed_form_check().unwrap();
            k.bracket_relations_check().unwrap();
            k.word_check(50, 6, &mut rng).unwrap();
            k.commutation_all().unwrap();
            k.conj_rep_check().unwrap();
            k.augmentation_check().unwrap();
            k.epsilon_identities_check(20, 5, &mut rng).unwrap();
            k.w_form_check().unwrap();
            let k = kp(&f2, n);
            k.w_form_check().unwrap();
            k.closed_form_check().unwrap();
            k.epsilon_identities_check(20, 5, &mut rng).unwrap();
        }
    }

    #[test]
    fn epsilon_identities_are_not_bilinear() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        let eps = k2.epsilon();
        let x = crate::linalg::scale_vector(&q, &q.from_i64(2), k2.algebra().unit());
        let y = k2.algebra().unit().clone();
        let exy = eps.mul_vec(&k2.mul(&x, &y));
        assert_ne!(
            k2.mul(&k2.embed_b(&exy), &x),
            k2.mul(&x, &k2.embed_b(&eps.mul_vec(&y)))
        );
    }

    #[test]
    fn word_examples() {
        let q = Rationals;
        let k3 = kp(&q, 3);
        // (g, h) with g != h in Z3
        assert_eq!(k3.word_to_element(&[1, 2]), k3.basis_element(bit(1), 0));
        assert_eq!(k3.word_label(&[2, 2]), (bit(2) | bit(1), 1));
        let k2 = kp(&q, 2);
        assert!(k2.commutation_check(1, 1));
        assert_eq!(k2.mul(&k2.bracket(1), &k2.e(1)), k2.bracket(1));
    }

    #[test]
    fn augmentation() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        assert_eq!(k2.ig().dim(), 1);
        assert_eq!(k2.epsilon().mul_vec(&k2.bracket(1)), unit_vector(&q, 2, 1));
        let gens = Subspace::from_spanning(&q, k2.dim(), &k2.ig_generators());
        assert_eq!(gens, k2.ig());
    }
}
