//! Partial invariants, partial derivations and partial group cohomology
//! `H^n_par(G, M) = Ext^n_{K_par G}(B, M)`.

mod groupoid;
mod resolution;

pub use groupoid::{group_cohomology_dims, groupoid_cohomology_dims};
pub use resolution::{GeneratorOrder, HomComplex, Projective, Resolution, ResolutionMode};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{hom_space, AlgModule, HomSpace};
use crate::field::Field;
use crate::kpar::Kpar;
use crate::linalg::{
    format_vector, sub_vectors, unit_vector, zero_vector, EchelonBasis, Matrix, SparseMatrix,
    Subspace, Vector,
};
use crate::report::{Check, Status};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParcohError {
    #[error("module is over an algebra of dimension {got}, expected {expected}")]
    WrongAlgebra { expected: usize, got: usize },
    #[error("cross-check failed in degree {degree}: {left} != {right} ({what})")]
    CrossCheckFailed {
        degree: usize,
        what: String,
        left: usize,
        right: usize,
    },
    #[error("isomorphism check failed: {0}")]
    IsoFailed(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

fn check_module<F: Field>(kp: &Kpar<F>, m: &AlgModule<F>) -> Result<(), ParcohError> {
    if m.algebra().dim() != kp.dim() {
        return Err(ParcohError::WrongAlgebra {
            expected: kp.dim(),
            got: m.algebra().dim(),
        });
    }
    Ok(())
}

/// `{v : [g]v = e_g v for all g}`.
pub fn partial_invariants<F: Field>(kp: &Kpar<F>, m: &AlgModule<F>) -> Subspace<F> {
    let eqs: Vec<Matrix<F>> = kp
        .group()
        .elements()
        .map(|g| m.act(&kp.bracket(g)).sub(&m.act(&kp.e(g))))
        .collect();
    stack_kernel(kp.field(), m.dim(), &eqs)
}

fn stack_kernel<F: Field>(field: &F, dim: usize, eqs: &[Matrix<F>]) -> Subspace<F> {
    let rows = EchelonBasis::from_vectors(
        field,
        dim,
        eqs.iter()
            .flat_map(|a| a.row_vectors())
            .collect::<Vec<_>>()
            .iter(),
    );
    Subspace::from_spanning(field, dim, &rows.null_space())
}

/// Each claimed invariant satisfies every defining equation, and the
/// dimension matches `dim M - rank` of the stacked equations.
pub fn invariants_oracle<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    inv: &Subspace<F>,
) -> Result<(), String> {
    let f = kp.field();
    let mut rank = EchelonBasis::new(f, m.dim());
    for g in kp.group().elements() {
        let a = m.act(&kp.bracket(g));
        let b = m.act(&kp.e(g));
        for v in inv.basis() {
            if a.mul_vec(v) != b.mul_vec(v) {
                return Err(format!("[{g}]v != e_{g} v"));
            }
        }
        for r in a.sub(&b).row_vectors() {
            rank.insert(r);
        }
    }
    if inv.dim() + rank.rank() != m.dim() {
        return Err(format!(
            "dim {} + rank {} != {}",
            inv.dim(),
            rank.rank(),
            m.dim()
        ));
    }
    Ok(())
}

/// `Hom_Λ(B, M) -> M^{G_par}`, `f ↦ f(1)`, is a bijection. Returns `dim Hom`.
pub fn invariants_hom_iso_check<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
) -> Result<usize, ParcohError> {
    check_module(kp, m)?;
    let f = kp.field();
    let hom = hom_space(&kp.b_module(), m);
    let inv = partial_invariants(kp, m);
    let one = unit_vector(f, kp.b_dim(), 0);
    let images: Vec<Vector<F>> = hom.basis().iter().map(|h| h.mul_vec(&one)).collect();
    if let Some(k) = images.iter().position(|v| !inv.contains(v)) {
        return Err(ParcohError::IsoFailed(format!(
            "f_{k}(1) is not partially invariant"
        )));
    }
    let span = Subspace::from_spanning(f, m.dim(), &images);
    if span.dim() != hom.dim() {
        return Err(ParcohError::IsoFailed("f ↦ f(1) is not injective".into()));
    }
    if span != inv {
        return Err(ParcohError::IsoFailed(format!(
            "image has dim {} but invariants have dim {}",
            span.dim(),
            inv.dim()
        )));
    }
    Ok(hom.dim())
}

/// Partial derivations in the coordinates `(d_g)_g = (δ([g]))_g ∈ M^G`.
#[derive(Clone, Debug)]
pub struct DerivationSpace<F: Field> {
    pub der: Subspace<F>,
    pub inner: Subspace<F>,
    pub module_dim: usize,
}

impl<F: Field> DerivationSpace<F> {
    pub fn dim(&self) -> usize {
        self.der.dim()
    }
    pub fn inner_dim(&self) -> usize {
        self.inner.dim()
    }
    /// `dim Der_par - dim Int_par`.
    pub fn quotient_dim(&self) -> usize {
        self.der.dim() - self.inner.dim()
    }

    /// `δ(e_T # g) = e_T d_g` as a `dim M × dim Λ` matrix.
    pub fn to_matrix(&self, kp: &Kpar<F>, m: &AlgModule<F>, d: &[F::Elem]) -> Matrix<F> {
        let f = kp.field();
        let md = self.module_dim;
        let cols: Vec<Vector<F>> = (0..kp.dim())
            .map(|i| {
                let (t, g) = kp.label(i);
                let eb = kp.embed_b(&unit_vector(f, kp.b_dim(), t as usize));
                m.act(&eb).mul_vec(&d[g * md..(g + 1) * md])
            })
            .collect();
        Matrix::from_columns(f, md, &cols)
    }
}

/// `Der_par(G, M)` from `d_g = e_g d_g` and
/// `e_g e_{gh} d_{gh} = [g] d_h + e_g e_{gh} d_g`, and `Int_par(G, M)` from
/// `d_g = [g]m - e_g m`.
pub fn partial_derivations<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
) -> Result<DerivationSpace<F>, ParcohError> {
    check_module(kp, m)?;
    let f = kp.field();
    let grp = kp.group();
    let n = grp.order();
    let md = m.dim();
    let w = n * md;
    let br: Vec<Matrix<F>> = grp.elements().map(|g| m.act(&kp.bracket(g))).collect();
    let eg: Vec<Matrix<F>> = grp.elements().map(|g| m.act(&kp.e(g))).collect();
    let mut eqs = EchelonBasis::new(f, w);
    let id = Matrix::identity(f, md);
    for g in grp.elements() {
        let a = id.sub(&eg[g]);
        for r in 0..md {
            let mut row = zero_vector(f, w);
            row[g * md..(g + 1) * md].clone_from_slice(a.row(r));
            eqs.insert(row);
        }
    }
    for g in grp.elements() {
        for h in grp.elements() {
            let gh = grp.mul(g, h);
            let e = eg[g].mul(&eg[gh]);
            for r in 0..md {
                let mut row = zero_vector(f, w);
                for c in 0..md {
                    f.add_assign(&mut row[gh * md + c], e.get(r, c));
                    row[h * md + c] = f.sub(&row[h * md + c], br[g].get(r, c));
                    row[g * md + c] = f.sub(&row[g * md + c], e.get(r, c));
                }
                eqs.insert(row);
            }
        }
    }
    let der = Subspace::from_spanning(f, w, &eqs.null_space());
    let inner_vecs: Vec<Vector<F>> = (0..md)
        .map(|r| {
            let mv = unit_vector(f, md, r);
            grp.elements()
                .flat_map(|g| sub_vectors(f, &br[g].mul_vec(&mv), &eg[g].mul_vec(&mv)))
                .collect()
        })
        .collect();
    let inner = Subspace::from_spanning(f, w, &inner_vecs);
    if !der.contains_space(&inner) {
        return Err(ParcohError::Internal(
            "an inner derivation failed the derivation equations".into(),
        ));
    }
    Ok(DerivationSpace {
        der,
        inner,
        module_dim: md,
    })
}

/// The full linear system over unknowns `δ(e_T # g)`: left `B`-linearity and
/// `δ(ab) = aδ(b) + δ(aε(b))` on all basis pairs. Solutions are flattened
/// column by column.
pub fn derivations_full_system<F: Field>(kp: &Kpar<F>, m: &AlgModule<F>) -> Subspace<F> {
    let f = kp.field();
    let md = m.dim();
    let nl = kp.dim();
    let w = nl * md;
    let mut eqs = EchelonBasis::new(f, w);
    let mut push = |terms: &[(usize, Option<&Matrix<F>>, bool)]| {
        for r in 0..md {
            let mut row = zero_vector(f, w);
            for &(i, a, neg) in terms {
                for c in 0..md {
                    let v = match a {
                        Some(a) => a.get(r, c).clone(),
                        None if c == r => f.one(),
                        None => continue,
                    };
                    let v = if neg { f.neg(&v) } else { v };
                    f.add_assign(&mut row[i * md + c], &v);
                }
            }
            eqs.insert(row);
        }
    };
    for s in 0..kp.b_dim() as u64 {
        let es = m.act(&kp.embed_b(&unit_vector(f, kp.b_dim(), s as usize)));
        for i in 0..nl {
            let (t, g) = kp.label(i);
            let p = kp.index_of(s | t, g).expect("closed form");
            push(&[(p, None, false), (i, Some(&es), true)]);
        }
    }
    for i in 0..nl {
        let xi = kp.label(i);
        let ai = m.action(i);
        for j in 0..nl {
            let xj = kp.label(j);
            let (pt, pg) = kp.closed_form_product(xi, xj);
            let (qt, qg) = kp.closed_form_product(xi, (xj.0, 0));
            let p = kp.index_of(pt, pg).expect("closed form");
            let q = kp.index_of(qt, qg).expect("closed form");
            push(&[(p, None, false), (j, Some(ai), true), (q, None, true)]);
        }
    }
    Subspace::from_spanning(f, w, &eqs.null_space())
}

fn flatten<F: Field>(a: &Matrix<F>) -> Vector<F> {
    (0..a.cols()).flat_map(|j| a.column(j)).collect()
}

/// Checks the derivation identities of `delta` on the given basis pairs and
/// `B`-linearity on the given `(S, i)` pairs.
pub fn verify_derivation<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    delta: &Matrix<F>,
    pairs: &[(usize, usize)],
    b_pairs: &[(u64, usize)],
) -> Result<(), String> {
    let f = kp.field();
    for &(i, j) in pairs {
        let xi = kp.label(i);
        let xj = kp.label(j);
        let (pt, pg) = kp.closed_form_product(xi, xj);
        let (qt, qg) = kp.closed_form_product(xi, (xj.0, 0));
        let p = kp.index_of(pt, pg).expect("closed form");
        let q = kp.index_of(qt, qg).expect("closed form");
        let rhs =
            crate::linalg::add_vectors(f, &m.action(i).mul_vec(&delta.column(j)), &delta.column(q));
        if delta.column(p) != rhs {
            return Err(format!("Leibniz rule fails on basis pair ({i}, {j})"));
        }
    }
    for &(s, i) in b_pairs {
        let (t, g) = kp.label(i);
        let p = kp.index_of(s | t, g).expect("closed form");
        let es = m.act(&kp.embed_b(&unit_vector(f, kp.b_dim(), s as usize)));
        if delta.column(p) != es.mul_vec(&delta.column(i)) {
            return Err(format!("B-linearity fails at e_{s:#b}, basis {i}"));
        }
    }
    Ok(())
}

/// Verifies every basis derivation on all pairs when `dim Λ ≤ exhaustive`,
/// otherwise a few random combinations on `samples` random pairs.
pub fn verify_derivation_space<F: Field, R: Rng>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    ds: &DerivationSpace<F>,
    exhaustive: usize,
    samples: usize,
    rng: &mut R,
) -> Result<(), String> {
    let nl = kp.dim();
    if nl <= exhaustive {
        let pairs: Vec<(usize, usize)> =
            (0..nl).flat_map(|i| (0..nl).map(move |j| (i, j))).collect();
        let bp: Vec<(u64, usize)> = (0..kp.b_dim() as u64)
            .flat_map(|s| (0..nl).map(move |i| (s, i)))
            .collect();
        for d in ds.der.basis() {
            verify_derivation(kp, m, &ds.to_matrix(kp, m, d), &pairs, &bp)?;
        }
        return Ok(());
    }
    let f = kp.field();
    for _ in 0..3 {
        let mut d = zero_vector(f, ds.der.ambient());
        for b in ds.der.basis() {
            crate::linalg::axpy(f, &mut d, &f.from_i64(rng.random_range(-2..=2)), b);
        }
        let pairs: Vec<(usize, usize)> = (0..samples)
            .map(|_| (rng.random_range(0..nl), rng.random_range(0..nl)))
            .collect();
        let bp: Vec<(u64, usize)> = (0..samples)
            .map(|_| {
                (
                    rng.random_range(0..kp.b_dim() as u64),
                    rng.random_range(0..nl),
                )
            })
            .collect();
        verify_derivation(kp, m, &ds.to_matrix(kp, m, &d), &pairs, &bp)?;
    }
    Ok(())
}

/// The reduced parametrization against the full system (both as spaces of
/// `dim M × dim Λ` matrices).
pub fn derivations_agree<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    ds: &DerivationSpace<F>,
) -> Result<(), String> {
    let full = derivations_full_system(kp, m);
    let mats: Vec<Vector<F>> = ds
        .der
        .basis()
        .iter()
        .map(|d| flatten(&ds.to_matrix(kp, m, d)))
        .collect();
    let reduced = Subspace::from_spanning(kp.field(), full.ambient(), &mats);
    if reduced.dim() != ds.dim() {
        return Err("parametrization is not injective".into());
    }
    if reduced != full {
        return Err(format!(
            "reduced system gives {} derivations, full system {}",
            reduced.dim(),
            full.dim()
        ));
    }
    Ok(())
}

/// `Hom_Λ(IG, M)` with the canonical basis of `IG` as coordinates.
pub fn hom_from_ig<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
) -> Result<(Subspace<F>, HomSpace<F>), ParcohError> {
    let ig = kp.ig();
    let (igm, _) = kp
        .ig_module()
        .map_err(|e| ParcohError::Internal(e.to_string()))?;
    Ok((ig, hom_space(&igm, m)))
}

/// `f ↦ f̂`, `f̂(x) = f(x - ε(x)·1)`, is a bijection onto `Der_par`; `f̂`
/// satisfies the derivation identity on random elements. Returns `dim Hom`.
pub fn hom_ig_check<F: Field, R: Rng>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    ds: &DerivationSpace<F>,
    samples: usize,
    rng: &mut R,
) -> Result<usize, ParcohError> {
    check_module(kp, m)?;
    let f = kp.field();
    let (ig, hom) = hom_from_ig(kp, m)?;
    let eps = kp.epsilon();
    let to_ig = |x: &[F::Elem]| -> Vector<F> {
        let y = sub_vectors(f, x, &kp.embed_b(&eps.mul_vec(x)));
        ig.coordinates(&y).expect("x - ε(x) lies in IG")
    };
    let brackets: Vec<Vector<F>> = kp
        .group()
        .elements()
        .map(|g| to_ig(&kp.bracket(g)))
        .collect();
    let hats: Vec<Vector<F>> = hom
        .basis()
        .iter()
        .map(|h| brackets.iter().flat_map(|b| h.mul_vec(b)).collect())
        .collect();
    if let Some(k) = hats.iter().position(|d| !ds.der.contains(d)) {
        return Err(ParcohError::IsoFailed(format!(
            "f̂ for Hom basis element {k} is not a partial derivation"
        )));
    }
    let span = Subspace::from_spanning(f, ds.der.ambient(), &hats);
    if span.dim() != hom.dim() || span != ds.der {
        return Err(ParcohError::IsoFailed(format!(
            "Hom(IG, M) has dim {}, image {}, Der {}",
            hom.dim(),
            span.dim(),
            ds.dim()
        )));
    }
    let basis = hom.basis();
    for k in 0..samples {
        let Some(h) = basis.get(rng.random_range(0..basis.len().max(1))) else {
            break;
        };
        let hat = |x: &[F::Elem]| h.mul_vec(&to_ig(x));
        let x = kp.random_element(rng);
        let y = kp.random_element(rng);
        let lhs = hat(&kp.mul(&x, &y));
        let xey = kp.mul(&x, &kp.embed_b(&eps.mul_vec(&y)));
        let rhs = crate::linalg::add_vectors(f, &m.act_on(&x, &hat(&y)), &hat(&xey));
        if lhs != rhs {
            return Err(ParcohError::IsoFailed(format!(
                "f̂(xy) != x f̂(y) + f̂(x ε(y)) on sample {k}"
            )));
        }
    }
    Ok(hom.dim())
}

/// `dim coker(M -> Hom_Λ(IG, M))`, `m ↦ (y ↦ y m)`.
pub fn ig_coker_dim<F: Field>(kp: &Kpar<F>, m: &AlgModule<F>) -> Result<usize, ParcohError> {
    check_module(kp, m)?;
    let f = kp.field();
    let (ig, hom) = hom_from_ig(kp, m)?;
    let acts: Vec<Matrix<F>> = ig.basis().iter().map(|y| m.act(y)).collect();
    let mut image = EchelonBasis::new(f, hom.dim());
    for r in 0..m.dim() {
        let mv = unit_vector(f, m.dim(), r);
        let cols: Vec<Vector<F>> = acts.iter().map(|a| a.mul_vec(&mv)).collect();
        let map = if cols.is_empty() {
            Matrix::zeros(f, m.dim(), 0)
        } else {
            Matrix::from_columns(f, m.dim(), &cols)
        };
        let c = hom
            .coordinates(&map)
            .ok_or_else(|| ParcohError::Internal("y ↦ y m is not Λ-linear".into()))?;
        image.insert(c);
    }
    Ok(hom.dim() - image.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    #[default]
    Strict,
    Warn,
}

#[derive(Clone, Debug)]
pub struct HparOptions {
    pub max_degree: usize,
    pub mode: ResolutionMode,
    pub checks: CheckMode,
    pub cross_checks: bool,
    /// Re-run with reversed generator order.
    pub reversed_check: bool,
    /// Also run a resolution by free modules when `dim Λ` is at most this.
    pub free_check_max_dim: usize,
    /// Compare against the isotropy group cohomology decomposition.
    pub groupoid_oracle: bool,
    pub seed: u64,
    pub samples: usize,
}

impl Default for HparOptions {
    fn default() -> Self {
        HparOptions {
            max_degree: 2,
            mode: ResolutionMode::Projective,
            checks: CheckMode::Strict,
            cross_checks: true,
            reversed_check: true,
            free_check_max_dim: 8,
            groupoid_oracle: true,
            seed: 0,
            samples: 50,
        }
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim: usize,
    pub cochain_dim: usize,
    pub representatives: Vec<Vec<String>>,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub module_dim: usize,
    pub resolution_mode: ResolutionMode,
    pub resolution_ranks: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
    pub checks: Vec<Check>,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dim).collect()
    }
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// `dim Ext^n_Λ(N, M)` for `n ≤ max_degree`.
pub fn ext_dims<F: Field>(
    kp: &Kpar<F>,
    n: &AlgModule<F>,
    m: &AlgModule<F>,
    max_degree: usize,
    mode: ResolutionMode,
    order: GeneratorOrder,
) -> Result<Vec<usize>, ParcohError> {
    let res =
        Resolution::build(kp, n, max_degree + 1, mode, order).map_err(ParcohError::Internal)?;
    let m_w: Vec<SparseMatrix<F>> = kp
        .w_actions(m)
        .iter()
        .map(SparseMatrix::from_dense)
        .collect();
    let hc = res.hom_complex(kp, &m_w, m.dim());
    hc.complex
        .check_d_squared()
        .map_err(|k| ParcohError::Internal(format!("δ∘δ != 0 at {k}")))?;
    Ok(hc.complex.cohomology_dims())
}

/// `H^n_par(G, M)` for `n ≤ max_degree` with cross-checks.
pub fn hpar<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    opts: &HparOptions,
) -> Result<CohomologyReport, ParcohError> {
    check_module(kp, m)?;
    let f = kp.field();
    let top = opts.max_degree;
    let bm = kp.b_module();
    let res = Resolution::build(kp, &bm, top + 1, opts.mode, GeneratorOrder::Forward)
        .map_err(ParcohError::Internal)?;
    let m_w_dense = kp.w_actions(m);
    let m_w: Vec<SparseMatrix<F>> = m_w_dense.iter().map(SparseMatrix::from_dense).collect();
    let hc = res.hom_complex(kp, &m_w, m.dim());
    let cx = &hc.complex;
    let mut checks = Vec::new();
    checks.push(Check::from_result("resolution exact", Ok(())));
    checks.push(Check::from_result(
        "cochain d^2 = 0",
        cx.check_d_squared().map_err(|k| format!("degree {k}")),
    ));
    let dims = cx.cohomology_dims();
    let mut degrees = Vec::new();
    let mut reps1 = Vec::new();
    for (n, &dim) in dims.iter().enumerate() {
        let reps = cx.representatives(n);
        if n == 1 {
            reps1 = reps.clone();
        }
        degrees.push(DegreeReport {
            degree: n,
            dim,
            cochain_dim: cx.dims()[n],
            representatives: reps.iter().map(|r| format_vector(f, r)).collect(),
        });
    }
    let mut rng = crate::random::rng(opts.seed);
    if opts.cross_checks {
        let inv = partial_invariants(kp, m);
        checks.push(Check::from_result(
            "invariants oracle",
            invariants_oracle(kp, m, &inv),
        ));
        checks.push(Check::dims("H0 = partial invariants", dims[0], inv.dim()));
        match invariants_hom_iso_check(kp, m) {
            Ok(h) => checks.push(Check::dims("H0 = Hom(B, M)", dims[0], h)),
            Err(e) => checks.push(Check::fail("H0 = Hom(B, M)", e.to_string())),
        }
        if top >= 1 {
            let ds = partial_derivations(kp, m)?;
            checks.push(Check::from_result(
                "derivation identities",
                verify_derivation_space(kp, m, &ds, 20, opts.samples, &mut rng),
            ));
            if kp.dim() * m.dim() <= 450 {
                checks.push(Check::from_result(
                    "derivations: reduced = full system",
                    derivations_agree(kp, m, &ds),
                ));
            }
            checks.push(Check::dims("H1 = Der/Int", dims[1], ds.quotient_dim()));
            match hom_ig_check(kp, m, &ds, opts.samples.min(20), &mut rng) {
                Ok(_) => checks.push(Check::pass("Hom(IG, M) = Der")),
                Err(e) => checks.push(Check::fail("Hom(IG, M) = Der", e.to_string())),
            }
            checks.push(Check::dims(
                "H1 = coker(M -> Hom(IG, M))",
                dims[1],
                ig_coker_dim(kp, m)?,
            ));
            checks.push(Check::from_result(
                "H1 connecting map",
                connecting_check(kp, m, &res, &hc, &reps1, &ds),
            ));
        }
        if top >= 2 {
            let (igm, _) = kp
                .ig_module()
                .map_err(|e| ParcohError::Internal(e.to_string()))?;
            let ext = ext_dims(kp, &igm, m, top - 1, opts.mode, GeneratorOrder::Forward)?;
            for n in 2..=top {
                checks.push(Check::dims(
                    format!("H{n} = Ext{}(IG, M)", n - 1),
                    dims[n],
                    ext[n - 1],
                ));
            }
        }
    }
    if opts.reversed_check {
        let other = ext_dims(kp, &bm, m, top, opts.mode, GeneratorOrder::Reversed)?;
        checks.push(dims_check("reversed generator order", &dims, &other));
    }
    if opts.free_check_max_dim >= kp.dim() && opts.mode != ResolutionMode::Free {
        let other = ext_dims(
            kp,
            &bm,
            m,
            top,
            ResolutionMode::Free,
            GeneratorOrder::Forward,
        )?;
        checks.push(dims_check("free resolution", &dims, &other));
    }
    if opts.groupoid_oracle {
        let other = groupoid_cohomology_dims(kp, &m_w_dense, top);
        checks.push(dims_check("isotropy group cohomology", &dims, &other));
    }
    if opts.checks == CheckMode::Warn {
        checks = checks.into_iter().map(Check::downgrade).collect();
    }
    Ok(CohomologyReport {
        module_dim: m.dim(),
        resolution_mode: opts.mode,
        resolution_ranks: res.ranks(),
        degrees,
        checks,
    })
}

fn dims_check(name: &str, a: &[usize], b: &[usize]) -> Check {
    if a == b {
        Check::with_status(name, Status::Pass, Some(format!("{a:?}")))
    } else {
        Check::fail(name, format!("{a:?} != {b:?}"))
    }
}

/// Pushes each `H^1` representative through `IG -> P_0` to a derivation and
/// checks the results are independent modulo `Int_par`.
fn connecting_check<F: Field>(
    kp: &Kpar<F>,
    m: &AlgModule<F>,
    res: &Resolution<F>,
    hc: &HomComplex<F>,
    reps: &[Vector<F>],
    ds: &DerivationSpace<F>,
) -> Result<(), String> {
    let f = kp.field();
    let p0 = &res.stages[0];
    let p1 = &res.stages[1];
    let one = unit_vector(f, kp.b_dim(), 0);
    let lift = res.maps[0]
        .solve(&one)
        .map_err(|e| e.to_string())?
        .ok_or("1 has no preimage in P_0")?;
    let m_w: Vec<Matrix<F>> = kp.w_actions(m);
    let mut acc = EchelonBasis::from_vectors(f, ds.der.ambient(), ds.inner.basis());
    for (k, c) in reps.iter().enumerate() {
        let vals = hc.values(1, c);
        let mut d = Vec::new();
        for g in kp.group().elements() {
            let x = sub_vectors(f, &kp.bracket(g), &kp.e(g));
            let q = p0.act_element(kp, &e_to_w(kp, &x), &lift);
            let r = res.maps[1]
                .solve(&q)
                .map_err(|e| e.to_string())?
                .ok_or(format!("([{g}] - e_{g}) lift is not a boundary"))?;
            let mut val = zero_vector(f, m.dim());
            for (p, y) in r.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let (j, s, h) = p1.basis()[p];
                let z = m_w[kp.index_of(s, h).expect("label")].mul_vec(&vals[j]);
                crate::linalg::axpy(f, &mut val, y, &z);
            }
            d.extend(val);
        }
        if !ds.der.contains(&d) {
            return Err(format!(
                "representative {k} gives a map that is not a partial derivation"
            ));
        }
        if !acc.insert(d) {
            return Err(format!(
                "representative {k} lands in Int_par modulo earlier ones"
            ));
        }
    }
    Ok(())
}

/// `e_T # g = Σ_{T' ⊇ T} w_{T'} # g`.
pub fn e_to_w<F: Field>(kp: &Kpar<F>, x: &[F::Elem]) -> Vector<F> {
    let f = kp.field();
    let mut out = zero_vector(f, kp.dim());
    let full = (1u64 << (kp.group().order() - 1)) - 1;
    for (i, c) in x.iter().enumerate() {
        if f.is_zero(c) {
            continue;
        }
        let (t, g) = kp.label(i);
        let rest = full & !t;
        let mut sub = rest;
        loop {
            let j = kp.index_of(t | sub, g).expect("superset contains g");
            f.add_assign(&mut out[j], c);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }
    out
}

/// The standard coefficient modules: `B`, `Λ`, `D_g` and a random cyclic
/// quotient.
pub fn standard_modules<F: Field>(
    kp: &Kpar<F>,
    seed: u64,
) -> Result<Vec<(String, AlgModule<F>)>, ParcohError> {
    let err = |e: crate::kpar::KparError| ParcohError::Internal(e.to_string());
    let mut out = vec![
        ("B".to_string(), kp.b_module()),
        ("regular".to_string(), kp.regular_module()),
    ];
    let g = if kp.group().order() > 1 { 1 } else { 0 };
    out.push((format!("D_{g}"), kp.domain_module(g).map_err(err)?.0));
    out.push((
        "random quotient".to_string(),
        kp.random_quotient(seed).map_err(err)?.0,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::group::FiniteGroup;
    use crate::kpar::DEFAULT_MAX_KPAR_DIM;

    fn kp<F: Field>(f: &F, n: usize) -> Kpar<F> {
        Kpar::new(f, Arc::new(FiniteGroup::cyclic(n)), DEFAULT_MAX_KPAR_DIM).unwrap()
    }

    #[test]
    fn invariants_of_b() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        let inv = partial_invariants(&k2, &k2.b_module());
        assert_eq!(inv.dim(), 2);
        assert_eq!(invariants_hom_iso_check(&k2, &k2.b_module()).unwrap(), 2);
        let k1 = kp(&q, 1);
        assert_eq!(partial_invariants(&k1, &k1.regular_module()).dim(), 1);
        let reg = k2.regular_module();
        let h = invariants_hom_iso_check(&k2, &reg).unwrap();
        assert_eq!(h, partial_invariants(&k2, &reg).dim());
    }

    #[test]
    fn derivations_on_b() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        let bm = k2.b_module();
        let ds = partial_derivations(&k2, &bm).unwrap();
        assert_eq!(ds.inner_dim(), 0);
        derivations_agree(&k2, &bm, &ds).unwrap();
        // δ_1(x) = x - ε(x) on the regular module is inner
        let reg = k2.regular_module();
        let ds = partial_derivations(&k2, &reg).unwrap();
        let one = k2.algebra().unit().clone();
        let d: Vector<Rationals> = k2
            .group()
            .elements()
            .flat_map(|g| sub_vectors(&q, &k2.bracket(g), &k2.e(g)))
            .collect();
        assert!(ds.inner.contains(&d));
        let mat = ds.to_matrix(&k2, &reg, &d);
        let eps = k2.epsilon();
        for i in 0..k2.dim() {
            let x = unit_vector(&q, k2.dim(), i);
            let expect = sub_vectors(&q, &x, &k2.mul(&k2.embed_b(&eps.mul_vec(&x)), &one));
            assert_eq!(mat.column(i), expect);
        }
    }

    #[test]
    fn resolution_of_b_over_z2() {
        let q = Rationals;
        let k2 = kp(&q, 2);
        let res = Resolution::build(
            &k2,
            &k2.b_module(),
            2,
            ResolutionMode::Free,
            GeneratorOrder::Forward,
        )
        .unwrap();
        assert_eq!(res.ranks()[0], 1);
        assert_eq!(res.maps[0].kernel(), k2.ig());
        let res = Resolution::build(
            &k2,
            &k2.b_module(),
            3,
            ResolutionMode::Projective,
            GeneratorOrder::Forward,
        )
        .unwrap();
        assert!(res.maps.windows(2).all(|w| w[0].mul(&w[1]).is_zero()));
    }

    #[test]
    fn ext_of_regular_vanishes() {
        let f2 = PrimeField::new(2).unwrap();
        let k2 = kp(&f2, 2);
        let reg = k2.regular_module();
        for m in [k2.b_module(), reg.clone()] {
            let e = ext_dims(
                &k2,
                &reg,
                &m,
                3,
                ResolutionMode::Projective,
                GeneratorOrder::Forward,
            )
            .unwrap();
            assert!(e[1..].iter().all(|&d| d == 0));
        }
    }

    #[test]
    fn hpar_small_cases() {
        let q = Rationals;
        let f2 = PrimeField::new(2).unwrap();
        let opts = HparOptions {
            max_degree: 3,
            ..Default::default()
        };
        let k1 = kp(&q, 1);
        let r = hpar(&k1, &k1.regular_module(), &opts).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.dims(), vec![1, 0, 0, 0]);
        let k2 = kp(&q, 2);
        let r = hpar(&k2, &k2.b_module(), &opts).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.dims(), vec![2, 0, 0, 0]);
        let k2 = kp(&f2, 2);
        let r = hpar(&k2, &k2.b_module(), &opts).unwrap();
        assert!(r.passed(), "{:?}", r.checks);
        assert_eq!(r.dims(), vec![2, 1, 1, 1]);
        let k3 = kp(&f2, 3);
        for (name, m) in standard_modules(&k3, 1).unwrap() {
            let r = hpar(&k3, &m, &opts).unwrap();
            assert!(r.passed(), "{name}: {:?}", r.checks);
        }
    }
}
