use super::HochError;
use crate::algebra::Bimodule;
use crate::budget::Budget;
use crate::field::Field;
use crate::linalg::{CochainComplex, Matrix, Vector};

/// Bar cochains `Hom(Ā^{⊗p}, M)` (normalized, `Ā = A / K·1`) or
/// `Hom(A^{⊗p}, M)`, indexed by tuples over `indices` with the tuple major.
#[derive(Clone, Debug)]
pub struct HochschildComplex<F: Field> {
    pub normalized: bool,
    pub indices: Vec<usize>,
    pub module_dim: usize,
    pub complex: CochainComplex<F>,
}

impl<F: Field> HochschildComplex<F> {
    pub fn dims(&self) -> Vec<usize> {
        self.complex.cohomology_dims()
    }
}

/// Builds cochains through degree `max_degree + 1`.
pub fn hochschild<F: Field>(
    m: &Bimodule<F>,
    max_degree: usize,
    normalized: bool,
    budget: &Budget,
) -> Result<HochschildComplex<F>, HochError> {
    let alg = m.algebra();
    let f = alg.field();
    let d = alg.dim();
    if d > budget.algebra_dim {
        return Err(HochError::BudgetExceeded {
            what: "algebra_dim",
            value: d,
            cap: budget.algebra_dim,
        });
    }
    if max_degree > budget.degree {
        return Err(HochError::BudgetExceeded {
            what: "degree",
            value: max_degree,
            cap: budget.degree,
        });
    }
    let unit = alg.unit();
    let p0 = unit
        .iter()
        .position(|x| !f.is_zero(x))
        .expect("nonzero unit");
    let indices: Vec<usize> = if normalized {
        (0..d).filter(|&j| j != p0).collect()
    } else {
        (0..d).collect()
    };
    let k = indices.len();
    let md = m.dim();
    let dims: Vec<usize> = (0..=max_degree + 1).map(|p| k.pow(p as u32) * md).collect();
    if let Some(&big) = dims.iter().find(|&&x| x > budget.cochain_dim) {
        return Err(HochError::BudgetExceeded {
            what: "cochain_dim",
            value: big,
            cap: budget.cochain_dim,
        });
    }
    let pos: Vec<Option<usize>> = (0..d)
        .map(|j| indices.iter().position(|&x| x == j))
        .collect();
    // coordinates of a in the basis `indices` of Ā (or of A)
    let reduce = |a: &Vector<F>| -> Vec<(usize, F::Elem)> {
        let shift = if normalized {
            f.mul(&a[p0], &f.inv(&unit[p0]).expect("unit coordinate"))
        } else {
            f.zero()
        };
        (0..d)
            .filter_map(|j| {
                let slot = pos[j]?;
                let c = f.sub(&a[j], &f.mul(&shift, &unit[j]));
                (!f.is_zero(&c)).then_some((slot, c))
            })
            .collect()
    };
    let mut diffs = Vec::new();
    for p in 0..=max_degree {
        let mut mat = Matrix::zeros(f, dims[p + 1], dims[p]);
        for s in 0..k.pow(p as u32 + 1) {
            let tup: Vec<usize> = (0..=p).map(|i| (s / k.pow((p - i) as u32)) % k).collect();
            let enc = |xs: &[usize]| xs.iter().fold(0, |acc, &x| acc * k + x);
            let row = s * md;
            add_block(
                &mut mat,
                row,
                enc(&tup[1..]) * md,
                m.left(indices[tup[0]]),
                &f.one(),
            );
            for i in 0..p {
                let prod = alg.basis_product(indices[tup[i]], indices[tup[i + 1]]);
                let sign = if (i + 1) % 2 == 0 {
                    f.one()
                } else {
                    f.neg(&f.one())
                };
                for (slot, c) in reduce(&prod) {
                    let mut t = tup.clone();
                    t.splice(i..i + 2, [slot]);
                    let col = enc(&t) * md;
                    let c = f.mul(&sign, &c);
                    for r in 0..md {
                        let cur = mat.get(row + r, col + r).clone();
                        mat.set(row + r, col + r, f.add(&cur, &c));
                    }
                }
            }
            let sign = if (p + 1) % 2 == 0 {
                f.one()
            } else {
                f.neg(&f.one())
            };
            add_block(
                &mut mat,
                row,
                enc(&tup[..p]) * md,
                m.right(indices[tup[p]]),
                &sign,
            );
        }
        diffs.push(mat);
    }
    let complex = CochainComplex::new(f, dims, diffs);
    complex
        .check_d_squared()
        .map_err(|n| HochError::Internal(format!("bar differential squares to nonzero at {n}")))?;
    Ok(HochschildComplex {
        normalized,
        indices,
        module_dim: md,
        complex,
    })
}

fn add_block<F: Field>(
    mat: &mut Matrix<F>,
    row: usize,
    col: usize,
    block: &Matrix<F>,
    c: &F::Elem,
) {
    let f = mat.field().clone();
    for i in 0..block.rows() {
        for j in 0..block.cols() {
            let b = block.get(i, j);
            if !f.is_zero(b) {
                let cur = mat.get(row + i, col + j).clone();
                mat.set(row + i, col + j, f.add(&cur, &f.mul(c, b)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algebra::{dual_numbers, split_pair, Algebra};
    use crate::field::{PrimeField, Rationals};

    fn dims<F: Field>(a: Algebra<F>, p: usize, normalized: bool) -> Vec<usize> {
        let m = Bimodule::regular(Arc::new(a));
        hochschild(&m, p, normalized, &Budget::default())
            .unwrap()
            .dims()
    }

    #[test]
    fn ground_field_and_separable() {
        let q = Rationals;
        let k = crate::algebra::diagonal_algebra(&q, 1);
        assert_eq!(dims(k, 2, true), vec![1, 0, 0]);
        assert_eq!(dims(split_pair(&q), 2, true), vec![2, 0, 0]);
        assert_eq!(dims(split_pair(&q), 2, false), vec![2, 0, 0]);
    }

    #[test]
    fn dual_numbers_have_outer_derivations() {
        let f2 = PrimeField::new(2).unwrap();
        let h = dims(dual_numbers(&f2), 2, true);
        assert_eq!(h[0], 2);
        assert_eq!(h[1], 2);
        assert_eq!(dims(dual_numbers(&f2), 2, false), h);
        let q = Rationals;
        assert_eq!(dims(dual_numbers(&q), 2, true)[1], 1);
    }

    #[test]
    fn budget_is_enforced() {
        let q = Rationals;
        let m = Bimodule::regular(Arc::new(split_pair(&q)));
        let tight = Budget {
            degree: 1,
            ..Budget::default()
        };
        assert!(matches!(
            hochschild(&m, 2, true, &tight),
            Err(HochError::BudgetExceeded { what: "degree", .. })
        ));
    }
}
