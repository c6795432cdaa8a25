use serde::Serialize;

use super::bar::hochschild;
use super::functors::{
    conjugation, f1, f1_literal_check, f_space, factorization_check, restrict_to_base,
};
use super::HochError;
use crate::algebra::{AlgModule, Bimodule};
use crate::budget::Budget;
use crate::field::Field;
use crate::kpar::Kpar;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::parcoh::{hpar, HparOptions};
use crate::partial::{check_partial_rep, SmashAlgebra};
use crate::report::{Check, Status};

/// The partial action of `G` on unnormalized Hochschild cochains of `A` with
/// values in `M`: `(P_g f)(a_1..a_p) = pi0(g) f(b_g a_1, .., b_g a_p) pi0(g^-1)`
/// with `b_g(a) = alpha_{g^-1}(u_g a)`.
#[derive(Clone, Debug)]
pub struct CochainLift<F: Field> {
    pub degree: usize,
    pub ops: Vec<Matrix<F>>,
    pub partial_rep: Result<(), String>,
    pub commutes: bool,
    pub preserves: bool,
    /// The action on `H^p(A, M)` in the basis of cohomology representatives.
    pub induced: Result<Vec<Matrix<F>>, String>,
}

fn cochain_ops<F: Field>(sm: &SmashAlgebra<F>, m: &Bimodule<F>, p: usize) -> Vec<Matrix<F>> {
    let pa = sm.action();
    let grp = pa.group();
    let a = pa.algebra();
    let f = a.field();
    grp.elements()
        .map(|g| {
            let b = pa
                .alpha(grp.inv(g))
                .mul(&a.left_matrix(pa.u(g)))
                .transpose();
            let mut op = Matrix::identity(f, 1);
            for _ in 0..p {
                op = op.kron(&b);
            }
            op.kron(&conjugation(sm, m, g))
        })
        .collect()
}

/// Basis change to `H^p`: coordinates of the class of a cocycle against
/// `reps`, given the coboundaries.
fn class_coordinates<F: Field>(
    f: &F,
    reps: &[Vector<F>],
    b: &Subspace<F>,
    z: &[F::Elem],
) -> Option<Vector<F>> {
    let mut cols: Vec<Vector<F>> = b.basis().to_vec();
    cols.extend(reps.iter().cloned());
    let mat = Matrix::from_columns(f, z.len(), &cols);
    let sol = mat.solve(z).ok()??;
    Some(sol[b.dim()..].to_vec())
}

pub fn cochain_lift<F: Field>(
    sm: &SmashAlgebra<F>,
    m: &Bimodule<F>,
    p: usize,
    budget: &Budget,
) -> Result<CochainLift<F>, HochError> {
    let f = m.field();
    let ma = restrict_to_base(sm, m);
    let hc = hochschild(&ma, p, false, budget)?;
    let cx = &hc.complex;
    let grp = sm.action().group();
    let ops = cochain_ops(sm, m, p);
    let next = cochain_ops(sm, m, p + 1);
    let partial_rep = check_partial_rep(grp, &ops).map_err(|v| v.to_string());
    let d = cx.differential(p);
    let commutes = ops.iter().zip(&next).all(|(a, b)| d.mul(a) == b.mul(d));
    let z = cx.cocycles(p);
    let bd = cx.coboundaries(p);
    let preserves = ops.iter().all(|op| {
        z.basis().iter().all(|v| z.contains(&op.mul_vec(v)))
            && bd.basis().iter().all(|v| bd.contains(&op.mul_vec(v)))
    });
    let reps = cx.representatives(p);
    let induced = if !preserves {
        Err(format!(
            "cochain action does not preserve cocycles and coboundaries in degree {p}"
        ))
    } else {
        let mats: Option<Vec<Matrix<F>>> = ops
            .iter()
            .map(|op| {
                let cols: Option<Vec<Vector<F>>> = reps
                    .iter()
                    .map(|r| class_coordinates(f, &reps, &bd, &op.mul_vec(r)))
                    .collect();
                cols.map(|c| Matrix::from_columns(f, reps.len(), &c))
            })
            .collect();
        match mats {
            None => Err(format!("image of a cocycle is not a cocycle in degree {p}")),
            Some(ms) => match check_partial_rep(grp, &ms) {
                Ok(()) => Ok(ms),
                Err(v) => Err(format!("induced action on H^{p}: {v}")),
            },
        }
    };
    Ok(CochainLift {
        degree: p,
        ops,
        partial_rep,
        commutes,
        preserves,
        induced,
    })
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct E2Entry {
    /// Degree in `H^*_par(G, -)`.
    pub partial_degree: usize,
    /// Degree in `H^*(A, M)`.
    pub hochschild_degree: usize,
    pub dim: Option<usize>,
    pub status: Status,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct SpectralReport {
    pub max_degree: usize,
    /// `dim H^n(A, M)`.
    pub hochschild_base: Vec<usize>,
    /// `dim H^n(A ⋊ G, M)`.
    pub hochschild_smash: Vec<usize>,
    /// `dim H^n_par(G, F1 M)`.
    pub hpar_f1: Vec<usize>,
    pub f_dim: usize,
    pub e2: Vec<E2Entry>,
    pub checks: Vec<Check>,
}

impl SpectralReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
    /// `dim H^p_par(G, H^q(A, M))`.
    pub fn e2(&self, p: usize, q: usize) -> Option<usize> {
        self.e2
            .iter()
            .find(|e| e.partial_degree == p && e.hochschild_degree == q)
            .and_then(|e| e.dim)
    }
}

#[derive(Clone, Debug)]
pub struct SpectralOptions {
    pub max_degree: usize,
    pub hpar: HparOptions,
    pub budget: Budget,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            max_degree: 2,
            hpar: HparOptions::default(),
            budget: Budget::default(),
        }
    }
}

fn hpar_dims<F: Field>(
    kp: &Kpar<F>,
    x: &AlgModule<F>,
    top: usize,
    opts: &HparOptions,
    checks: &mut Vec<Check>,
    name: &str,
) -> Result<Vec<usize>, HochError> {
    if x.dim() == 0 {
        return Ok(vec![0; top + 1]);
    }
    let o = HparOptions {
        max_degree: top,
        ..opts.clone()
    };
    let rep = hpar(kp, x, &o).map_err(|e| HochError::Internal(e.to_string()))?;
    let failed: Vec<&str> = rep
        .checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.as_str())
        .collect();
    checks.push(if failed.is_empty() {
        Check::pass(format!("{name}: partial cohomology cross-checks"))
    } else {
        Check::fail(
            format!("{name}: partial cohomology cross-checks"),
            failed.join(", "),
        )
    });
    Ok(rep.dims())
}

/// Low-degree consequences of `E_2^{p,q} = H^p_par(G, H^q(A, M)) => H^{p+q}(A ⋊ G, M)`.
pub fn spectral_low_degree<F: Field>(
    kp: &Kpar<F>,
    sm: &SmashAlgebra<F>,
    m: &Bimodule<F>,
    opts: &SpectralOptions,
) -> Result<SpectralReport, HochError> {
    let n = opts.max_degree;
    if n > 2 {
        return Err(HochError::BudgetExceeded {
            what: "spectral degree",
            value: n,
            cap: 2,
        });
    }
    let mut checks = Vec::new();
    let ma = restrict_to_base(sm, m);
    let h_base = hochschild(&ma, n, true, &opts.budget)?.dims();
    let unnormalized = hochschild(&ma, n, false, &opts.budget)?.dims();
    checks.push(Check::dims(
        "normalized and unnormalized bar complexes of A agree",
        h_base.len(),
        h_base
            .iter()
            .zip(&unnormalized)
            .filter(|(a, b)| a == b)
            .count(),
    ));
    let h_smash = hochschild(m, n, true, &opts.budget)?.dims();
    let f1m = f1(kp, sm, m)?;
    checks.push(Check::from_result(
        "F1 agrees with Hom_{A^e}(A, M)",
        f1_literal_check(sm, m, &f1m).map(|_| ()),
    ));
    checks.push(Check::from_result(
        "F = F2 ∘ F1",
        factorization_check(kp, sm, m).map(|_| ()),
    ));
    let hpar_f1 = hpar_dims(kp, &f1m.module, n, &opts.hpar, &mut checks, "F1 M")?;
    let f_dim = f_space(m).dim();
    checks.push(Check::dims(
        "dim F(M) = dim H^0_par(G, F1 M)",
        f_dim,
        hpar_f1[0],
    ));
    checks.push(Check::dims("H^0(A ⋊ G, M) = F(M)", h_smash[0], f_dim));

    // E_2 rows: q = 0 is F1 M itself.
    let mut e2 = Vec::new();
    for (p, &d) in hpar_f1.iter().enumerate() {
        e2.push(E2Entry {
            partial_degree: p,
            hochschild_degree: 0,
            dim: Some(d),
            status: Status::Pass,
        });
    }
    for q in 1..=n {
        let lift = cochain_lift(sm, m, q, &opts.budget)?;
        checks.push(Check::from_result(
            format!("cochain action in degree {q} is a partial representation"),
            lift.partial_rep.clone(),
        ));
        checks.push(if lift.commutes {
            Check::pass(format!("cochain action commutes with δ in degree {q}"))
        } else {
            Check::fail(
                format!("cochain action commutes with δ in degree {q}"),
                "δ P_g != P_g δ".to_string(),
            )
        });
        let module = match lift.induced {
            Ok(pi) if h_base[q] == pi.first().map_or(0, |x| x.rows()) => {
                kp.partial_rep_to_module(&pi).map_err(|e| e.to_string())
            }
            Ok(_) => Err("dimension mismatch with normalized complex".into()),
            Err(e) => Err(e),
        };
        match module {
            Ok(x) => {
                checks.push(Check::pass(format!("action on H^{q}(A, M)")));
                let dims = hpar_dims(
                    kp,
                    &x,
                    n - q,
                    &opts.hpar,
                    &mut checks,
                    &format!("H^{q}(A, M)"),
                )?;
                for (p, d) in dims.into_iter().enumerate() {
                    e2.push(E2Entry {
                        partial_degree: p,
                        hochschild_degree: q,
                        dim: Some(d),
                        status: Status::Pass,
                    });
                }
            }
            Err(w) => {
                checks.push(Check::with_status(
                    format!("action on H^{q}(A, M)"),
                    Status::Unavailable,
                    Some(w),
                ));
                for p in 0..=n - q {
                    let dim = (h_base[q] == 0).then_some(0);
                    let status = if dim.is_some() {
                        Status::Pass
                    } else {
                        Status::Unavailable
                    };
                    e2.push(E2Entry {
                        partial_degree: p,
                        hochschild_degree: q,
                        dim,
                        status,
                    });
                }
            }
        }
    }
    // p = 0 of the cochain lift is F1's action
    if let Ok(lift0) = cochain_lift(sm, m, 0, &opts.budget) {
        let same = lift0
            .induced
            .as_ref()
            .map(|pi| *pi == f1m.pi)
            .unwrap_or(false);
        checks.push(if same {
            Check::pass("degree 0 cochain action = F1 action")
        } else {
            Check::fail(
                "degree 0 cochain action = F1 action",
                "actions differ".to_string(),
            )
        });
    }
    checks.push(Check::with_status(
        "F1 sends injectives to F2-acyclic modules",
        Status::Assumed,
        None,
    ));

    let acyclic_base = h_base[1..].iter().all(|&d| d == 0);
    if acyclic_base {
        let ok = (0..=n).all(|k| h_smash[k] == hpar_f1[k]);
        let w = format!("H(A⋊G, M) = {h_smash:?}, H_par(G, F1 M) = {hpar_f1:?}");
        checks.push(if ok {
            Check::pass("collapse when H^{>0}(A, M) = 0")
        } else {
            Check::fail("collapse when H^{>0}(A, M) = 0", w)
        });
    } else {
        checks.push(Check::with_status(
            "collapse when H^{>0}(A, M) = 0",
            Status::Skipped,
            Some("H^{>0}(A, M) != 0".into()),
        ));
    }
    if n >= 1 {
        let (e10, h1) = (hpar_f1[1], h_smash[1]);
        checks.push(if e10 <= h1 {
            Check::pass("H^1_par(G, F1 M) injects into H^1(A ⋊ G, M)")
        } else {
            Check::fail(
                "H^1_par(G, F1 M) injects into H^1(A ⋊ G, M)",
                format!("{e10} > {h1}"),
            )
        });
        let get = |p: usize, q: usize| {
            e2.iter()
                .find(|e| e.partial_degree == p && e.hochschild_degree == q)
                .and_then(|e| e.dim)
        };
        if let Some(e01) = get(0, 1) {
            let ok = h1 <= e10 + e01;
            checks.push(if ok {
                Check::pass("H^1 ≤ E^{1,0} + E^{0,1}")
            } else {
                Check::fail("H^1 ≤ E^{1,0} + E^{0,1}", format!("{h1} > {e10} + {e01}"))
            });
            if n >= 2 && ok {
                let d2 = e10 + e01 - h1;
                let e20 = hpar_f1[2];
                let h2 = h_smash[2];
                let bounded = d2 <= e01.min(e20);
                checks.push(if bounded {
                    Check::pass("rank d_2: E^{0,1} -> E^{2,0} is consistent")
                } else {
                    Check::fail(
                        "rank d_2: E^{0,1} -> E^{2,0} is consistent",
                        format!("rank {d2}, E01 = {e01}, E20 = {e20}"),
                    )
                });
                let lower = e20.saturating_sub(d2);
                checks.push(if lower <= h2 {
                    Check::pass("E_∞^{2,0} injects into H^2")
                } else {
                    Check::fail("E_∞^{2,0} injects into H^2", format!("{lower} > {h2}"))
                });
                if let (Some(e11), Some(e02)) = (get(1, 1), get(0, 2)) {
                    let upper = e20 + e11 + e02;
                    checks.push(if h2 <= upper {
                        Check::pass("H^2 ≤ E^{2,0} + E^{1,1} + E^{0,2}")
                    } else {
                        Check::fail(
                            "H^2 ≤ E^{2,0} + E^{1,1} + E^{0,2}",
                            format!("{h2} > {upper}"),
                        )
                    });
                }
            }
        } else {
            checks.push(Check::with_status(
                "H^1 ≤ E^{1,0} + E^{0,1}",
                Status::Unavailable,
                Some("E^{0,1} unavailable".into()),
            ));
        }
    }
    e2.sort_by_key(|e| (e.hochschild_degree, e.partial_degree));
    Ok(SpectralReport {
        max_degree: n,
        hochschild_base: h_base,
        hochschild_smash: h_smash,
        hpar_f1,
        f_dim,
        e2,
        checks,
    })
}

/// `M*` with `(s φ)(x) = φ(x s)` and `(φ s)(x) = φ(s x)`.
pub fn dual_bimodule<F: Field>(m: &Bimodule<F>) -> Bimodule<F> {
    let d = m.algebra().dim();
    let left = (0..d).map(|i| m.right(i).transpose()).collect();
    let right = (0..d).map(|i| m.left(i).transpose()).collect();
    Bimodule::new(m.algebra().clone(), m.dim(), left, right).expect("dual of a bimodule")
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::partial::fixtures::{
        dual_numbers_partial, dual_numbers_trivial, split_pair_partial, split_pair_swap,
    };

    fn run<F: Field>(field: &F) -> Vec<SpectralReport> {
        let mut out = Vec::new();
        for pa in [split_pair_partial(field), split_pair_swap(field)] {
            let pa = Arc::new(pa);
            let kp = Kpar::new(field, pa.group().clone(), 1024).unwrap();
            let sm = SmashAlgebra::new(pa).unwrap();
            let reg = Bimodule::regular(sm.algebra().clone());
            for m in [dual_bimodule(&reg), reg] {
                let rep = spectral_low_degree(&kp, &sm, &m, &SpectralOptions::default()).unwrap();
                assert!(rep.passed(), "{:#?}", rep.checks);
                out.push(rep);
            }
        }
        out
    }

    #[test]
    fn fixtures_over_q_and_f2() {
        for rep in run(&Rationals) {
            assert_eq!(rep.hochschild_base[1..], [0, 0]);
        }
        run(&PrimeField::new(2).unwrap());
    }

    #[test]
    fn non_separable_base() {
        for f in [PrimeField::new(2).unwrap(), PrimeField::new(3).unwrap()] {
            for pa in [dual_numbers_trivial(&f), dual_numbers_partial(&f)] {
                let pa = Arc::new(pa);
                let kp = Kpar::new(&f, pa.group().clone(), 1024).unwrap();
                let sm = SmashAlgebra::new(pa).unwrap();
                let reg = Bimodule::regular(sm.algebra().clone());
                for m in [dual_bimodule(&reg), reg] {
                    let rep =
                        spectral_low_degree(&kp, &sm, &m, &SpectralOptions::default()).unwrap();
                    assert!(rep.passed(), "{:#?}", rep.checks);
                    assert!(rep.hochschild_base[1] > 0);
                }
            }
        }
    }

    #[test]
    fn trivial_group_is_degenerate() {
        let f2 = PrimeField::new(2).unwrap();
        let a = Arc::new(crate::algebra::dual_numbers(&f2));
        let g = Arc::new(crate::group::FiniteGroup::trivial());
        let pa = Arc::new(
            crate::partial::PartialAction::global(g.clone(), a, vec![Matrix::identity(&f2, 2)])
                .unwrap(),
        );
        let kp = Kpar::new(&f2, g, 1024).unwrap();
        let sm = SmashAlgebra::new(pa).unwrap();
        let m = Bimodule::regular(sm.algebra().clone());
        let rep = spectral_low_degree(&kp, &sm, &m, &SpectralOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.hochschild_base, rep.hochschild_smash);
        assert_eq!(rep.hochschild_smash, vec![2, 2, 2]);
        for q in 0..=2 {
            assert_eq!(rep.e2(0, q), Some(rep.hochschild_base[q]));
        }
        let l = cochain_lift(&sm, &m, 1, &Budget::default()).unwrap();
        assert!(l.ops[0].is_identity());
    }

    #[test]
    fn lift_commutes_with_differential() {
        let q = Rationals;
        let pa = Arc::new(split_pair_partial(&q));
        let sm = SmashAlgebra::new(pa).unwrap();
        let reg = Bimodule::regular(sm.algebra().clone());
        for p in 0..3 {
            let l = cochain_lift(&sm, &reg, p, &Budget::default()).unwrap();
            assert!(l.commutes && l.preserves && l.partial_rep.is_ok());
        }
    }
}
