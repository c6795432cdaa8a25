//! `K_par G` is the groupoid algebra of `T ↦ gT`, so `Ext_Λ(B, M)` splits as
//! group cohomology of the isotropy groups `Stab(T)` with coefficients in
//! `w_T M`, one orbit at a time.

use crate::field::Field;
use crate::group::FiniteGroup;
use crate::kpar::Kpar;
use crate::linalg::{CochainComplex, Matrix, Subspace};

/// `dim H^n(H, V)` for `n ≤ max_degree` from inhomogeneous cochains, where
/// `rho[k]` is the action of `elements[k]` on `V`.
pub fn group_cohomology_dims<F: Field>(
    field: &F,
    group: &FiniteGroup,
    elements: &[usize],
    rho: &[Matrix<F>],
    max_degree: usize,
) -> Vec<usize> {
    let h = elements.len();
    let v = rho.first().map_or(0, |m| m.rows());
    let pos = |g: usize| {
        elements
            .iter()
            .position(|&x| x == g)
            .expect("closed subgroup")
    };
    let dims: Vec<usize> = (0..=max_degree + 1).map(|n| h.pow(n as u32) * v).collect();
    let mut d = Vec::new();
    for n in 0..=max_degree {
        // (δf)(h1..h_{n+1}) = h1 f(h2..) + Σ (-1)^i f(.., h_i h_{i+1}, ..) + (-1)^{n+1} f(h1..hn)
        let mut mat = Matrix::zeros(field, dims[n + 1], dims[n]);
        let tuples = h.pow(n as u32 + 1);
        for t in 0..tuples {
            let idx: Vec<usize> = (0..=n).map(|k| (t / h.pow((n - k) as u32)) % h).collect();
            let enc = |xs: &[usize]| xs.iter().fold(0, |acc, &x| acc * h + x);
            let row = t * v;
            let first = &rho[idx[0]];
            let tail = enc(&idx[1..]) * v;
            for r in 0..v {
                for c in 0..v {
                    let a = first.get(r, c);
                    if !field.is_zero(a) {
                        let cur = mat.get(row + r, tail + c).clone();
                        mat.set(row + r, tail + c, field.add(&cur, a));
                    }
                }
            }
            for i in 0..n {
                let mut merged = idx.clone();
                let prod = pos(group.mul(elements[idx[i]], elements[idx[i + 1]]));
                merged.splice(i..i + 2, [prod]);
                let col = enc(&merged) * v;
                let sign = if (i + 1) % 2 == 0 {
                    field.one()
                } else {
                    field.neg(&field.one())
                };
                for r in 0..v {
                    let cur = mat.get(row + r, col + r).clone();
                    mat.set(row + r, col + r, field.add(&cur, &sign));
                }
            }
            let col = enc(&idx[..n]) * v;
            let sign = if (n + 1) % 2 == 0 {
                field.one()
            } else {
                field.neg(&field.one())
            };
            for r in 0..v {
                let cur = mat.get(row + r, col + r).clone();
                mat.set(row + r, col + r, field.add(&cur, &sign));
            }
        }
        d.push(mat);
    }
    CochainComplex::new(field, dims, d).cohomology_dims()
}

/// `Σ_orbits dim H^n(Stab(T), w_T M)` from the action matrices of `M` in the
/// `w`-basis.
pub fn groupoid_cohomology_dims<F: Field>(
    kp: &Kpar<F>,
    m_w: &[Matrix<F>],
    max_degree: usize,
) -> Vec<usize> {
    let f = kp.field();
    let mut total = vec![0; max_degree + 1];
    for t in kp.orbit_representatives() {
        let stab = kp.stabilizer(t);
        let v = m_w[kp.w_idempotent(t)].column_space();
        if v.dim() == 0 {
            continue;
        }
        let rho: Vec<Matrix<F>> = stab
            .iter()
            .map(|&h| restrict(&m_w[kp.index_of(t, h).expect("h ∈ T")], &v))
            .collect();
        for (n, d) in group_cohomology_dims(f, kp.group(), &stab, &rho, max_degree)
            .into_iter()
            .enumerate()
        {
            total[n] += d;
        }
    }
    total
}

fn restrict<F: Field>(a: &Matrix<F>, v: &Subspace<F>) -> Matrix<F> {
    let cols: Vec<_> = v
        .basis()
        .iter()
        .map(|b| v.coordinates(&a.mul_vec(b)).expect("invariant subspace"))
        .collect();
    Matrix::from_columns(v.field(), v.dim(), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn cyclic_group_cohomology() {
        let z2 = FiniteGroup::cyclic(2);
        let f2 = PrimeField::new(2).unwrap();
        let one = Matrix::identity(&f2, 1);
        assert_eq!(
            group_cohomology_dims(&f2, &z2, &[0, 1], &[one.clone(), one], 3),
            vec![1, 1, 1, 1]
        );
        let q = Rationals;
        let one = Matrix::identity(&q, 1);
        assert_eq!(
            group_cohomology_dims(&q, &z2, &[0, 1], &[one.clone(), one], 3),
            vec![1, 0, 0, 0]
        );
        let sign = Matrix::from_i64(&q, &[vec![-1]]);
        assert_eq!(
            group_cohomology_dims(&q, &z2, &[0, 1], &[Matrix::identity(&q, 1), sign], 2),
            vec![0, 0, 0]
        );
        let z3 = FiniteGroup::cyclic(3);
        let f3 = PrimeField::new(3).unwrap();
        let one = Matrix::identity(&f3, 1);
        assert_eq!(
            group_cohomology_dims(&f3, &z3, &[0, 1, 2], &[one.clone(), one.clone(), one], 2),
            vec![1, 1, 1]
        );
    }
}
