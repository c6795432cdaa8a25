use std::collections::HashMap;

use serde::Serialize;

use crate::algebra::AlgModule;
use crate::field::Field;
use crate::kpar::{contains, translate, Kpar};
use crate::linalg::{
    zero_vector, CochainComplex, EchelonBasis, Matrix, SparseMatrix, Subspace, Vector,
};

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum ResolutionMode {
    /// Summands `Λ w_T`.
    #[default]
    Projective,
    /// Summands `Λ`.
    Free,
}

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorOrder {
    #[default]
    Forward,
    Reversed,
}

/// `⊕_j Λ w_{T_j}` (or `Λ` when `T_j` is `None`), with basis `(j, S, g)`
/// standing for `w_S # g` in summand `j`.
#[derive(Clone, Debug)]
pub struct Projective {
    summands: Vec<Option<u64>>,
    basis: Vec<(usize, u64, usize)>,
    offsets: Vec<usize>,
    index: HashMap<(usize, u64, usize), usize>,
}

impl Projective {
    pub fn new<F: Field>(kp: &Kpar<F>, summands: Vec<Option<u64>>) -> Self {
        let mut basis = Vec::new();
        let mut offsets = Vec::with_capacity(summands.len());
        for (j, t) in summands.iter().enumerate() {
            offsets.push(basis.len());
            let idx = match t {
                Some(t) => kp.w_left_ideal(*t),
                None => (0..kp.dim()).collect(),
            };
            basis.extend(idx.into_iter().map(|i| {
                let (s, g) = kp.label(i);
                (j, s, g)
            }));
        }
        let index = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        Projective {
            summands,
            basis,
            offsets,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn summands(&self) -> &[Option<u64>] {
        &self.summands
    }
    pub fn rank(&self) -> usize {
        self.summands.len()
    }
    pub fn basis(&self) -> &[(usize, u64, usize)] {
        &self.basis
    }
    /// Basis positions belonging to summand `j`.
    pub fn summand_range(&self, j: usize) -> std::ops::Range<usize> {
        let end = self.offsets.get(j + 1).copied().unwrap_or(self.basis.len());
        self.offsets[j]..end
    }

    /// `(w_{S0} # g0) · v`.
    pub fn act<F: Field>(&self, kp: &Kpar<F>, i: usize, v: &[F::Elem]) -> Vector<F> {
        let f = kp.field();
        let mut out = zero_vector(f, self.dim());
        self.act_add(kp, i, &f.one(), v, &mut out);
        out
    }

    fn act_add<F: Field>(
        &self,
        kp: &Kpar<F>,
        i: usize,
        c: &F::Elem,
        v: &[F::Elem],
        out: &mut [F::Elem],
    ) {
        let f = kp.field();
        let grp = kp.group();
        let (s0, g0) = kp.label(i);
        let g0i = grp.inv(g0);
        for (p, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            let (j, s, g) = self.basis[p];
            if contains(s, g0i) && translate(grp, g0, s) == s0 {
                let q = self.index[&(j, s0, grp.mul(g0, g))];
                f.mul_add_assign(&mut out[q], c, x);
            }
        }
    }

    /// `x · v` for `x` in `w`-coordinates.
    pub fn act_element<F: Field>(&self, kp: &Kpar<F>, x: &[F::Elem], v: &[F::Elem]) -> Vector<F> {
        let f = kp.field();
        let mut out = zero_vector(f, self.dim());
        for (i, c) in x.iter().enumerate() {
            if !f.is_zero(c) {
                self.act_add(kp, i, c, v, &mut out);
            }
        }
        out
    }

    /// `w_T · v`.
    pub fn project<F: Field>(&self, kp: &Kpar<F>, t: u64, v: &[F::Elem]) -> Vector<F> {
        let f = kp.field();
        v.iter()
            .enumerate()
            .map(|(p, x)| {
                if self.basis[p].1 == t {
                    x.clone()
                } else {
                    f.zero()
                }
            })
            .collect()
    }
}

/// A module on which `Λ` acts through its `w`-basis.
enum Ambient<'a, F: Field> {
    Dense(&'a [SparseMatrix<F>]),
    Proj(&'a Projective),
}

impl<F: Field> Ambient<'_, F> {
    fn dim(&self) -> usize {
        match self {
            Ambient::Dense(m) => m[0].rows(),
            Ambient::Proj(p) => p.dim(),
        }
    }
    fn act(&self, kp: &Kpar<F>, i: usize, v: &[F::Elem]) -> Vector<F> {
        match self {
            Ambient::Dense(m) => m[i].mul_vec(v),
            Ambient::Proj(p) => p.act(kp, i, v),
        }
    }
    fn project(&self, kp: &Kpar<F>, t: u64, v: &[F::Elem]) -> Vector<F> {
        match self {
            Ambient::Dense(m) => m[kp.w_idempotent(t)].mul_vec(v),
            Ambient::Proj(p) => p.project(kp, t, v),
        }
    }
}

/// `P_L -> ... -> P_1 -> P_0 -> N -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub mode: ResolutionMode,
    pub order: GeneratorOrder,
    pub stages: Vec<Projective>,
    /// `maps[0]: P_0 -> N`, `maps[i]: P_i -> P_{i-1}`.
    pub maps: Vec<Matrix<F>>,
    /// Generator images: `generators[i][j] = maps[i](w_{T_j})`.
    pub generators: Vec<Vec<Vector<F>>>,
}

impl<F: Field> Resolution<F> {
    /// Resolves `n` through `P_length`.
    pub fn build(
        kp: &Kpar<F>,
        n: &AlgModule<F>,
        length: usize,
        mode: ResolutionMode,
        order: GeneratorOrder,
    ) -> Result<Self, String> {
        let f = kp.field();
        let dense: Vec<SparseMatrix<F>> = kp
            .w_actions(n)
            .iter()
            .map(SparseMatrix::from_dense)
            .collect();
        let mut stages = Vec::new();
        let mut maps: Vec<Matrix<F>> = Vec::new();
        let mut generators = Vec::new();
        let mut target = Subspace::full(f, n.dim());
        for i in 0..=length {
            let (p, map, gens) = {
                let amb = if i == 0 {
                    Ambient::Dense(&dense)
                } else {
                    Ambient::Proj(&stages[i - 1])
                };
                cover(kp, &amb, &target, mode, order)
            };
            if map.column_space() != target {
                return Err(format!(
                    "stage {i}: image differs from the kernel being covered"
                ));
            }
            if i > 0 && !maps[i - 1].mul(&map).is_zero() {
                return Err(format!("stage {i}: d∘d != 0"));
            }
            target = map.kernel();
            stages.push(p);
            maps.push(map);
            generators.push(gens);
        }
        Ok(Resolution {
            mode,
            order,
            stages,
            maps,
            generators,
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(Projective::rank).collect()
    }

    /// `Hom_Λ(P_•, M)` with `Hom(Λ w_T, M) = w_T M`; needs `w_actions` of `M`.
    pub fn hom_complex(
        &self,
        kp: &Kpar<F>,
        m_w: &[SparseMatrix<F>],
        m_dim: usize,
    ) -> HomComplex<F> {
        let f = kp.field();
        let spaces: Vec<Vec<Subspace<F>>> = self
            .stages
            .iter()
            .map(|p| {
                p.summands()
                    .iter()
                    .map(|t| match t {
                        Some(t) => m_w[kp.w_idempotent(*t)].to_dense().column_space(),
                        None => Subspace::full(f, m_dim),
                    })
                    .collect()
            })
            .collect();
        let dims: Vec<usize> = spaces
            .iter()
            .map(|s| s.iter().map(Subspace::dim).sum())
            .collect();
        let mut d = Vec::new();
        for i in 0..self.stages.len() - 1 {
            let src = &self.stages[i];
            let mut mat = Matrix::zeros(f, dims[i + 1], dims[i]);
            let mut row_off = 0;
            for (k, gen) in self.generators[i + 1].iter().enumerate() {
                let vk = &spaces[i + 1][k];
                let mut col_off = 0;
                for (j, vj) in spaces[i].iter().enumerate() {
                    let range = src.summand_range(j);
                    let coeffs: Vec<(usize, &F::Elem)> = range
                        .clone()
                        .filter(|&p| !f.is_zero(&gen[p]))
                        .map(|p| (p, &gen[p]))
                        .collect();
                    if !coeffs.is_empty() {
                        for (c, b) in vj.basis().iter().enumerate() {
                            let mut val = zero_vector(f, m_dim);
                            for &(p, x) in &coeffs {
                                let (_, s, g) = src.basis()[p];
                                m_w[kp.index_of(s, g).expect("basis label")]
                                    .mul_vec_add(b, x, &mut val);
                            }
                            let coords = vk.coordinates(&val).expect("value lies in w_T M");
                            for (r, y) in coords.into_iter().enumerate() {
                                mat.set(row_off + r, col_off + c, y);
                            }
                        }
                    }
                    col_off += vj.dim();
                }
                row_off += vk.dim();
            }
            d.push(mat);
        }
        HomComplex {
            spaces,
            complex: CochainComplex::new(f, dims, d),
        }
    }
}

/// Greedy cover of `target ⊆ ambient` by cyclic projective summands.
fn cover<F: Field>(
    kp: &Kpar<F>,
    amb: &Ambient<'_, F>,
    target: &Subspace<F>,
    mode: ResolutionMode,
    order: GeneratorOrder,
) -> (Projective, Matrix<F>, Vec<Vector<F>>) {
    let f = kp.field();
    let adim = amb.dim();
    let mut image = EchelonBasis::new(f, adim);
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    let mut ts: Vec<Option<u64>> = match mode {
        ResolutionMode::Projective => (0..kp.b_dim() as u64).map(Some).collect(),
        ResolutionMode::Free => vec![None],
    };
    if order == GeneratorOrder::Reversed {
        ts.reverse();
    }
    for t in ts {
        if image.rank() == target.dim() {
            break;
        }
        let cand = match t {
            Some(t) => {
                let proj: Vec<Vector<F>> = target
                    .basis()
                    .iter()
                    .map(|v| amb.project(kp, t, v))
                    .collect();
                Subspace::from_spanning(f, adim, &proj).into_basis()
            }
            None => target.basis().to_vec(),
        };
        let mut cand = cand;
        if order == GeneratorOrder::Reversed {
            cand.reverse();
        }
        let idx: Vec<usize> = match t {
            Some(t) => kp.w_left_ideal(t),
            None => (0..kp.dim()).collect(),
        };
        for v in cand {
            if image.contains(&v) {
                continue;
            }
            for &i in &idx {
                image.insert(amb.act(kp, i, &v));
            }
            summands.push(t);
            gens.push(v);
        }
    }
    let p = Projective::new(kp, summands);
    let mut cols = Vec::with_capacity(p.dim());
    for &(j, s, g) in p.basis() {
        cols.push(amb.act(kp, kp.index_of(s, g).expect("basis label"), &gens[j]));
    }
    let map = if cols.is_empty() {
        Matrix::zeros(f, adim, 0)
    } else {
        Matrix::from_columns(f, adim, &cols)
    };
    (p, map, gens)
}

/// `Hom_Λ(P_•, M)` together with the per-summand coordinate spaces.
#[derive(Clone, Debug)]
pub struct HomComplex<F: Field> {
    pub spaces: Vec<Vec<Subspace<F>>>,
    pub complex: CochainComplex<F>,
}

impl<F: Field> HomComplex<F> {
    /// Values `f(w_{T_j}) ∈ M` of the cochain `c` in degree `i`.
    pub fn values(&self, i: usize, c: &[F::Elem]) -> Vec<Vector<F>> {
        let mut off = 0;
        let mut out = Vec::new();
        for v in &self.spaces[i] {
            let f = v.field();
            let mut m = zero_vector(f, v.ambient());
            for (k, b) in v.basis().iter().enumerate() {
                crate::linalg::axpy(f, &mut m, &c[off + k], b);
            }
            out.push(m);
            off += v.dim();
        }
        out
    }
}
