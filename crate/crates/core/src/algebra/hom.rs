use super::{AlgModule, Bimodule};
use crate::field::Field;
use crate::linalg::{EchelonBasis, Matrix, Vector};

/// Basis of a space of linear maps `K^m -> K^n`, canonical as flattened
/// row-major vectors.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    field: F,
    source_dim: usize,
    target_dim: usize,
    echelon: EchelonBasis<F>,
}

impl<F: Field> HomSpace<F> {
    pub fn from_maps(field: &F, source_dim: usize, target_dim: usize, maps: &[Matrix<F>]) -> Self {
        let mut echelon = EchelonBasis::new(field, source_dim * target_dim);
        for m in maps {
            echelon.insert(m.data().to_vec());
        }
        HomSpace {
            field: field.clone(),
            source_dim,
            target_dim,
            echelon,
        }
    }

    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn basis(&self) -> Vec<Matrix<F>> {
        self.echelon
            .rows()
            .iter()
            .map(|r| {
                Matrix::from_vec(&self.field, self.target_dim, self.source_dim, r.clone())
                    .expect("shape")
            })
            .collect()
    }

    pub fn contains(&self, f: &Matrix<F>) -> bool {
        self.echelon.contains(f.data())
    }

    pub fn coordinates(&self, f: &Matrix<F>) -> Option<Vector<F>> {
        self.echelon.coordinates(f.data())
    }
}

/// All `f: K^m -> K^n` with `f * src[x] = tgt[x] * f` for each `x`.
///
/// `blocks`, when given, is a pair of projection families `(P_i, Q_i)` with
/// `sum P_i = 1`, `sum Q_i = 1`, pairwise orthogonal, and `f P_i = Q_i f` for
/// every intertwiner. The system is then solved blockwise in adapted bases.
pub fn intertwiners<F: Field>(
    field: &F,
    m: usize,
    n: usize,
    src: &[Matrix<F>],
    tgt: &[Matrix<F>],
    blocks: Option<(&[Matrix<F>], &[Matrix<F>])>,
) -> HomSpace<F> {
    assert_eq!(src.len(), tgt.len());
    if m == 0 || n == 0 {
        return HomSpace::from_maps(field, m, n, &[]);
    }
    if let Some((p, q)) = blocks {
        if let (Some((s, s_inv, bs)), Some((t, t_inv, bt))) =
            (adapted_basis(field, m, p), adapted_basis(field, n, q))
        {
            return blockwise(field, m, n, src, tgt, (&s, &s_inv, &bs), (&t, &t_inv, &bt));
        }
    }
    let mut eqs = EchelonBasis::new(field, n * m);
    for (a, b) in src.iter().zip(tgt) {
        for i in 0..n {
            for j in 0..m {
                // (f a - b f)_{ij} = sum_k f_{ik} a_{kj} - sum_k b_{ik} f_{kj}
                let mut row = vec![field.zero(); n * m];
                for k in 0..m {
                    let c = a.get(k, j);
                    if !field.is_zero(c) {
                        field.add_assign(&mut row[i * m + k], c);
                    }
                }
                for k in 0..n {
                    let c = b.get(i, k);
                    if !field.is_zero(c) {
                        let cur = row[k * m + j].clone();
                        row[k * m + j] = field.sub(&cur, c);
                    }
                }
                eqs.insert(row);
                if eqs.is_full() {
                    return HomSpace::from_maps(field, m, n, &[]);
                }
            }
        }
    }
    let maps: Vec<Matrix<F>> = eqs
        .null_space()
        .into_iter()
        .map(|v| Matrix::from_vec(field, n, m, v).expect("shape"))
        .collect();
    HomSpace::from_maps(field, m, n, &maps)
}

type Adapted<F> = (Matrix<F>, Matrix<F>, Vec<usize>);

fn adapted_basis<F: Field>(field: &F, dim: usize, projections: &[Matrix<F>]) -> Option<Adapted<F>> {
    let mut cols = Vec::new();
    let mut block = Vec::new();
    for (b, p) in projections.iter().enumerate() {
        for v in p.column_space().into_basis() {
            cols.push(v);
            block.push(b);
        }
    }
    if cols.len() != dim {
        return None;
    }
    let s = Matrix::from_columns(field, dim, &cols);
    let s_inv = s.inverse()?;
    Some((s, s_inv, block))
}

fn blockwise<F: Field>(
    field: &F,
    m: usize,
    n: usize,
    src: &[Matrix<F>],
    tgt: &[Matrix<F>],
    (s, s_inv, bs): (&Matrix<F>, &Matrix<F>, &[usize]),
    (t, t_inv, bt): (&Matrix<F>, &Matrix<F>, &[usize]),
) -> HomSpace<F> {
    let nblocks = bs.iter().chain(bt).max().map_or(0, |&b| b + 1);
    let mut src_in: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
    for (j, &b) in bs.iter().enumerate() {
        src_in[b].push(j);
    }
    let mut tgt_in: Vec<Vec<usize>> = vec![Vec::new(); nblocks];
    for (i, &b) in bt.iter().enumerate() {
        tgt_in[b].push(i);
    }
    // unknown f'(i, j) exists only when i and j share a block
    let mut unknown = vec![usize::MAX; n * m];
    let mut count = 0;
    for i in 0..n {
        for &j in &src_in[bt[i]] {
            unknown[i * m + j] = count;
            count += 1;
        }
    }
    if count == 0 {
        return HomSpace::from_maps(field, m, n, &[]);
    }
    let mut eqs = EchelonBasis::new(field, count);
    for (a, b) in src.iter().zip(tgt) {
        let a2 = s_inv.mul(a).mul(s);
        let b2 = t_inv.mul(b).mul(t);
        for i in 0..n {
            for j in 0..m {
                let mut row = vec![field.zero(); count];
                let mut nonzero = false;
                for &k in &src_in[bt[i]] {
                    let c = a2.get(k, j);
                    if !field.is_zero(c) {
                        field.add_assign(&mut row[unknown[i * m + k]], c);
                        nonzero = true;
                    }
                }
                for &k in &tgt_in[bs[j]] {
                    let c = b2.get(i, k);
                    if !field.is_zero(c) {
                        let u = unknown[k * m + j];
                        row[u] = field.sub(&row[u], c);
                        nonzero = true;
                    }
                }
                if nonzero {
                    eqs.insert(row);
                }
            }
        }
    }
    let maps: Vec<Matrix<F>> = eqs
        .null_space()
        .into_iter()
        .map(|v| {
            let mut fp = Matrix::zeros(field, n, m);
            for i in 0..n {
                for &j in &src_in[bt[i]] {
                    fp.set(i, j, v[unknown[i * m + j]].clone());
                }
            }
            t.mul(&fp).mul(s_inv)
        })
        .collect();
    HomSpace::from_maps(field, m, n, &maps)
}

/// Module homomorphisms `M -> N`.
pub fn hom_space<F: Field>(source: &AlgModule<F>, target: &AlgModule<F>) -> HomSpace<F> {
    let alg = source.algebra();
    assert_eq!(
        alg.dim(),
        target.algebra().dim(),
        "modules over different algebras"
    );
    let gens = alg.generators();
    let src: Vec<Matrix<F>> = gens.iter().map(|g| source.act(g)).collect();
    let tgt: Vec<Matrix<F>> = gens.iter().map(|g| target.act(g)).collect();
    let projections = alg.idempotent_hints().map(|ws| {
        let p: Vec<Matrix<F>> = ws.iter().map(|w| source.act(w)).collect();
        let q: Vec<Matrix<F>> = ws.iter().map(|w| target.act(w)).collect();
        (p, q)
    });
    intertwiners(
        source.field(),
        source.dim(),
        target.dim(),
        &src,
        &tgt,
        projections
            .as_ref()
            .map(|(p, q)| (p.as_slice(), q.as_slice())),
    )
}

/// Bimodule homomorphisms `M -> N`.
pub fn bimodule_hom_space<F: Field>(source: &Bimodule<F>, target: &Bimodule<F>) -> HomSpace<F> {
    let gens = source.algebra().generators();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for g in &gens {
        src.push(source.act_left(g));
        tgt.push(target.act_left(g));
        src.push(source.act_right(g));
        tgt.push(target.act_right(g));
    }
    intertwiners(source.field(), source.dim(), target.dim(), &src, &tgt, None)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{dual_numbers, split_pair};
    use crate::field::Rationals;

    #[test]
    fn hom_space_examples() {
        let q = Rationals;
        let kk = Arc::new(split_pair(&q));
        let reg = AlgModule::regular(kk.clone());
        let h = hom_space(&reg, &reg);
        assert_eq!(h.dim(), 2);
        for f in h.basis() {
            for i in 0..2 {
                assert_eq!(f.mul(reg.action(i)), reg.action(i).mul(&f));
            }
        }
        assert_eq!(hom_space(&reg, &AlgModule::zero(kk)).dim(), 0);
        let d = Arc::new(dual_numbers(&q));
        let reg = AlgModule::regular(d);
        assert_eq!(hom_space(&reg, &reg).dim(), 2);
    }

    #[test]
    fn blockwise_agrees_with_full_system() {
        let q = Rationals;
        let kk = split_pair(&q);
        let t = crate::algebra::ints(&q, &[0, 1]);
        let one_minus_t = crate::algebra::ints(&q, &[1, -1]);
        let hinted = Arc::new(kk.clone().with_idempotents(vec![one_minus_t, t]).unwrap());
        let plain = Arc::new(kk);
        let a = hom_space(
            &AlgModule::regular(hinted.clone()),
            &AlgModule::regular(hinted),
        );
        let b = hom_space(
            &AlgModule::regular(plain.clone()),
            &AlgModule::regular(plain),
        );
        assert_eq!(
            a.basis()
                .iter()
                .map(|m| m.data().to_vec())
                .collect::<Vec<_>>(),
            b.basis()
                .iter()
                .map(|m| m.data().to_vec())
                .collect::<Vec<_>>()
        );
    }
}
