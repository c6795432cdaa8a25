//! One function per subcommand; each produces a [`TaskReport`].

use std::collections::BTreeMap;
use std::time::Instant;

use parsmash::algebra::{orthogonal_idempotent_basis, principal_generator, Algebra, Semilattice};
use parsmash::hochss::{hochschild, spectral_low_degree, HochError, SpectralOptions};
use parsmash::kpar::{kpar_dimension_formula, members};
use parsmash::linalg::format_vector;
use parsmash::parcoh::{hpar, CheckMode, HparOptions};
use parsmash::partial::{RawSmash, RawWitness};
use parsmash::random::{rng, small_vector};
use parsmash::{Check, Field, Matrix, Status, Vector};
use serde_json::{json, Value};

use crate::build::{algebra_block, vector, Objects, TaskError};
use crate::input::{as_array, as_usize, HochschildOf, InputError, ProblemSpec, TaskKind, TaskSpec};

#[derive(Clone, Debug, Default)]
pub struct TaskReport {
    pub task: String,
    pub dimensions: BTreeMap<String, Value>,
    pub checks: Vec<Check>,
    pub details: BTreeMap<String, Value>,
    /// Microseconds per phase.
    pub timings: BTreeMap<String, u64>,
}

impl TaskReport {
    fn new(kind: TaskKind) -> Self {
        TaskReport {
            task: kind.name().to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        parsmash::report::all_passed(&self.checks)
    }

    fn dim(&mut self, key: &str, v: impl Into<Value>) {
        self.dimensions.insert(key.to_string(), v.into());
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.timings
            .insert(phase.to_string(), t.elapsed().as_micros() as u64);
        out
    }
}

/// Task parameters after merging file values with flags.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub max_degree: Option<usize>,
    pub checks: CheckMode,
}

fn matrix_rows<F: Field>(f: &F, m: &Matrix<F>) -> Value {
    Value::from(
        (0..m.rows())
            .map(|i| format_vector(f, m.row(i)))
            .collect::<Vec<_>>(),
    )
}

pub fn run_task<F: Field>(
    spec: &ProblemSpec,
    objs: &Objects<F>,
    task: &TaskSpec,
    opts: &Resolved,
) -> Result<TaskReport, InputError> {
    let mut rep = TaskReport::new(task.kind);
    let result = match task.kind {
        TaskKind::Validate => validate(spec, objs, &mut rep),
        TaskKind::Smash => smash(objs, &mut rep),
        TaskKind::Kpar => kpar(objs, task, &mut rep),
        TaskKind::Hpar => hpar_task(spec, objs, task, opts, &mut rep),
        TaskKind::Hochschild => hochschild_task(spec, objs, task, opts, &mut rep),
        TaskKind::SpectralCheck => spectral(spec, objs, task, opts, &mut rep),
        TaskKind::Orthogonalize => orthogonalize(spec, objs, task, &mut rep),
    };
    match result {
        Ok(()) => {}
        Err(TaskError::Input(e)) => return Err(e),
        Err(TaskError::Check(c)) => rep.checks.push(c),
    }
    if opts.checks == CheckMode::Warn {
        rep.checks = rep.checks.into_iter().map(Check::downgrade).collect();
    }
    Ok(rep)
}

fn format_raw<F: Field>(objs: &Objects<F>, x: &[Vector<F>]) -> String {
    let f = &objs.field;
    let mut terms = Vec::new();
    for (g, comp) in x.iter().enumerate() {
        for (k, c) in comp.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            let coeff = if f.is_one(c) {
                String::new()
            } else {
                f.format(c)
            };
            terms.push(format!(
                "{coeff}{}δ_{}",
                objs.basis_names[k], objs.element_names[g]
            ));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn validate<F: Field>(
    spec: &ProblemSpec,
    objs: &Objects<F>,
    rep: &mut TaskReport,
) -> Result<(), TaskError> {
    let g = objs.group()?;
    rep.checks.push(Check::pass("group axioms"));
    rep.dim("group_order", g.order());
    if let Some(a) = &objs.algebra {
        match a {
            Ok(a) => {
                rep.checks.push(Check::pass("algebra axioms"));
                rep.dim("algebra_dim", a.dim());
            }
            Err(e) => rep.checks.push(Check::fail("algebra axioms", e.clone())),
        }
    }
    if let Some(pa) = &objs.partial_action {
        match pa {
            Ok(_) => {
                rep.checks.push(Check::pass("partial action axioms"));
                match objs.smash() {
                    Ok(sm) => {
                        rep.checks.push(Check::pass(
                            "smash product is an associative unital algebra",
                        ));
                        rep.dim("smash_dim", sm.dim());
                    }
                    Err(TaskError::Check(c)) => rep.checks.push(c),
                    Err(e) => return Err(e),
                }
            }
            Err(e) => rep
                .checks
                .push(Check::fail("partial action axioms", e.clone())),
        }
    }
    if let Some(d) = &objs.raw {
        let raw = RawSmash::new(
            d.group.clone(),
            d.algebra.clone(),
            &d.domains,
            d.alpha.clone(),
        );
        let check = match raw.witness() {
            RawWitness::Associative => Check::pass("smash formula associative on basis triples"),
            RawWitness::IllDefined { g, h } => Check::fail(
                "smash formula associative on basis triples",
                format!("product of degrees ({g},{h}) leaves D_gh"),
            ),
            RawWitness::NonAssociative {
                triple,
                left,
                right,
            } => {
                let name = |(g, k): (usize, usize)| format!("[{}]{}", objs.element_names[g], k);
                Check::fail(
                    "smash formula associative on basis triples",
                    format!(
                        "x = {}, y = {}, z = {}: (xy)z = {}, x(yz) = {}",
                        name(triple[0]),
                        name(triple[1]),
                        name(triple[2]),
                        format_raw(objs, &left),
                        format_raw(objs, &right)
                    ),
                )
            }
        };
        rep.checks.push(check);
        if let Some(u) = &objs.probe {
            let check = match raw.triple(u, u, u) {
                Err((g, h)) => Check::fail(
                    "probe (uu)u = u(uu)",
                    format!("product of degrees ({g},{h}) leaves D_gh"),
                ),
                Ok((l, r)) if l == r => Check::pass("probe (uu)u = u(uu)"),
                Ok((l, r)) => Check::fail(
                    "probe (uu)u = u(uu)",
                    format!(
                        "(uu)u = {}, u(uu) = {}",
                        format_raw(objs, &l),
                        format_raw(objs, &r)
                    ),
                ),
            };
            rep.checks.push(check);
        }
    }
    for name in spec.modules.keys() {
        match objs.module(spec, name) {
            Ok(m) => {
                rep.checks.push(Check::pass(format!("module {name}")));
                rep.dim(&format!("module {name}"), m.dim());
            }
            Err(TaskError::Check(c)) => rep.checks.push(c),
            Err(e) => return Err(e),
        }
    }
    if !spec.bimodules.is_empty() {
        let alg = match objs.smash() {
            Ok(sm) => sm.algebra().clone(),
            Err(_) => objs.algebra()?.clone(),
        };
        for name in spec.bimodules.keys() {
            match objs.bimodule(spec, &alg, name) {
                Ok(m) => {
                    rep.checks.push(Check::pass(format!("bimodule {name}")));
                    rep.dim(&format!("bimodule {name}"), m.dim());
                }
                Err(TaskError::Check(c)) => rep.checks.push(c),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(())
}

/// Algebra block in the input format.
pub fn algebra_json<F: Field>(f: &F, a: &Algebra<F>) -> Value {
    let structure: Vec<Vec<Vec<String>>> = (0..a.dim())
        .map(|i| {
            (0..a.dim())
                .map(|j| format_vector(f, &a.basis_product(i, j)))
                .collect()
        })
        .collect();
    json!({"dim": a.dim(), "unit": format_vector(f, a.unit()), "structure": structure})
}

fn smash<F: Field>(objs: &Objects<F>, rep: &mut TaskReport) -> Result<(), TaskError> {
    let sm = objs.smash()?;
    let f = &objs.field;
    let g = objs.group()?;
    rep.dim("smash_dim", sm.dim());
    rep.dim(
        "domains",
        g.elements().map(|x| sm.domain(x).dim()).collect::<Vec<_>>(),
    );
    let block = algebra_json(f, sm.algebra());
    let labels: Vec<Value> = sm
        .labels()
        .iter()
        .map(|&(x, k)| json!({"g": objs.element_names[x], "k": k}))
        .collect();
    let back = algebra_block(f, &block, "$.details.algebra")
        .map_err(TaskError::Input)?
        .0;
    rep.checks.push(match back {
        Ok(a)
            if a.structure_dense() == sm.algebra().structure_dense()
                && a.unit() == sm.algebra().unit() =>
        {
            Check::pass("structure constants re-ingest as the same algebra")
        }
        Ok(_) => Check::fail(
            "structure constants re-ingest as the same algebra",
            "structure differs",
        ),
        Err(e) => Check::fail("structure constants re-ingest as the same algebra", e),
    });
    rep.details.insert("algebra".into(), block);
    rep.details.insert("labels".into(), Value::from(labels));
    Ok(())
}

fn kpar<F: Field>(
    objs: &Objects<F>,
    task: &TaskSpec,
    rep: &mut TaskReport,
) -> Result<(), TaskError> {
    let g = objs.group()?.clone();
    let kp = rep.time("build", || objs.kpar())?;
    let f = &objs.field;
    let formula = kpar_dimension_formula(g.order());
    let ig = kp.ig();
    rep.dim("B", kp.b_dim());
    rep.dim("Kpar", kp.dim());
    rep.dim("IG", ig.dim());
    rep.dim("formula", formula);
    let mut r = rng(task.seed.unwrap_or(0));
    let enumerated = kp.enumerate_basis();
    rep.checks.push(Check::dims(
        "basis enumeration = 2^(n-2)(n+1)",
        enumerated,
        formula,
    ));
    rep.checks.push(Check::dims(
        "dim K_par G = basis enumeration",
        kp.dim(),
        enumerated,
    ));
    rep.checks.push(Check::dims(
        "dim IG = dim K_par G - dim B",
        ig.dim(),
        kp.dim() - kp.b_dim(),
    ));
    let checks = rep.time("checks", || {
        vec![
            Check::from_result("closed form products", kp.closed_form_check()),
            Check::from_result("bracket relations", kp.bracket_relations_check()),
            Check::from_result(
                "words agree with bracket products",
                kp.word_check(500, 8, &mut r),
            ),
            Check::from_result("e_g [h] = [h] e_{h^-1 g}", kp.commutation_all()),
            Check::from_result("B is the semilattice algebra", kp.b_check()),
            Check::from_result(
                "conjugation is a partial representation",
                kp.conj_rep_check(),
            ),
            Check::from_result("augmentation", kp.augmentation_check()),
            Check::from_result(
                "epsilon identities on words",
                kp.epsilon_identities_check(1000, 4, &mut r),
            ),
            Check::from_result("orthogonal form", kp.w_form_check()),
        ]
    });
    rep.checks.extend(checks);
    let labels: Vec<Value> = (0..kp.dim())
        .map(|i| {
            let (t, x) = kp.label(i);
            let names: Vec<&str> = members(&g, t)
                .into_iter()
                .map(|h| objs.element_names[h].as_str())
                .collect();
            json!({"T": names, "g": objs.element_names[x]})
        })
        .collect();
    rep.details.insert("basis".into(), Value::from(labels));
    rep.details
        .insert("epsilon".into(), matrix_rows(f, &kp.epsilon()));
    Ok(())
}

fn hpar_task<F: Field>(
    spec: &ProblemSpec,
    objs: &Objects<F>,
    task: &TaskSpec,
    opts: &Resolved,
    rep: &mut TaskReport,
) -> Result<(), TaskError> {
    let kp = rep.time("build", || objs.kpar())?;
    let name = task.module.clone().unwrap_or_else(|| "B".into());
    let m = objs.module(spec, &name)?;
    let ho = HparOptions {
        max_degree: opts.max_degree.unwrap_or(3),
        checks: opts.checks,
        seed: task.seed.unwrap_or(0),
        ..HparOptions::default()
    };
    let report = rep
        .time("cohomology", || hpar(kp, &m, &ho))
        .map_err(|e| TaskError::Check(Check::fail("partial cohomology", e.to_string())))?;
    rep.dim("module", m.dim());
    rep.dim("H", report.dims());
    rep.dim("resolution_ranks", report.resolution_ranks.clone());
    rep.checks.extend(report.checks.iter().cloned());
    rep.details.insert("module".into(), Value::from(name));
    rep.details.insert(
        "cohomology".into(),
        serde_json::to_value(&report).expect("serializable"),
    );
    Ok(())
}

fn hoch_error(e: HochError) -> TaskError {
    match e {
        HochError::BudgetExceeded { .. } => TaskError::Check(Check::with_status(
            "budget",
            Status::Skipped,
            Some(e.to_string()),
        )),
        other => TaskError::Check(Check::fail("hochschild", other.to_string())),
    }
}

fn hochschild_task<F: Field>(
    spec: &ProblemSpec,
    objs: &Objects<F>,
    task: &TaskSpec,
    opts: &Resolved,
    rep: &mut TaskReport,
) -> Result<(), TaskError> {
    let of = task.of.unwrap_or(if objs.partial_action.is_some() {
        HochschildOf::Smash
    } else {
        HochschildOf::Base
    });
    let alg = match of {
        HochschildOf::Base => objs.algebra()?.clone(),
        HochschildOf::Smash => objs.smash()?.algebra().clone(),
        HochschildOf::Kpar => objs.kpar()?.algebra().clone(),
    };
    let name = task.bimodule.clone().unwrap_or_else(|| "regular".into());
    let m = objs.bimodule(spec, &alg, &name)?;
    let top = opts.max_degree.unwrap_or(2);
    let hc = rep
        .time("normalized", || hochschild(&m, top, true, &objs.budget))
        .map_err(hoch_error)?;
    let dims = hc.dims();
    rep.dim("algebra_dim", alg.dim());
    rep.dim("bimodule_dim", m.dim());
    rep.dim("H", dims.clone());
    rep.dim("cochain_dims", hc.complex.dims().to_vec());
    rep.checks.push(Check::pass("d∘d = 0"));
    if top <= 2 {
        match hochschild(&m, top, false, &objs.budget) {
            Ok(u) => rep.checks.push(Check::from_result(
                "normalized = unnormalized",
                if u.dims() == dims {
                    Ok(())
                } else {
                    Err(format!("{dims:?} vs {:?}", u.dims()))
                },
            )),
            Err(e) => rep.checks.push(Check::with_status(
                "normalized = unnormalized",
                Status::Skipped,
                Some(e.to_string()),
            )),
        }
    }
    let of_name = match of {
        HochschildOf::Base => "base",
        HochschildOf::Smash => "smash",
        HochschildOf::Kpar => "kpar",
    };
    rep.details.insert("of".into(), Value::from(of_name));
    rep.details.insert("bimodule".into(), Value::from(name));
    Ok(())
}

fn spectral<F: Field>(
    spec: &ProblemSpec,
    objs: &Objects<F>,
    task: &TaskSpec,
    opts: &Resolved,
    rep: &mut TaskReport,
) -> Result<(), TaskError> {
    let sm = objs.smash()?;
    let kp = objs.kpar()?;
    let name = task.bimodule.clone().unwrap_or_else(|| "regular".into());
    let m = objs.bimodule(spec, sm.algebra(), &name)?;
    let so = SpectralOptions {
        max_degree: opts.max_degree.unwrap_or(2),
        hpar: HparOptions {
            checks: opts.checks,
            seed: task.seed.unwrap_or(0),
            ..HparOptions::default()
        },
        budget: objs.budget.clone(),
    };
    let report = rep
        .time("spectral", || spectral_low_degree(kp, sm, &m, &so))
        .map_err(hoch_error)?;
    rep.dim("hochschild_base", report.hochschild_base.clone());
    rep.dim("hochschild_smash", report.hochschild_smash.clone());
    rep.dim("hpar_f1", report.hpar_f1.clone());
    rep.dim("F", report.f_dim);
    rep.checks.extend(report.checks.iter().cloned());
    rep.details.insert("bimodule".into(), Value::from(name));
    rep.details.insert(
        "e2".into(),
        serde_json::to_value(&report.e2).expect("serializable"),
    );
    Ok(())
}

fn orthogonalize<F: Field>(
    spec: &ProblemSpec,
    objs: &Objects<F>,
    task: &TaskSpec,
    rep: &mut TaskReport,
) -> Result<(), TaskError> {
    let f = &objs.field;
    let lattice = match &spec.semilattice {
        None => Semilattice::boolean(objs.group()?.order().saturating_sub(1)),
        Some(v) => {
            let o = v
                .as_object()
                .ok_or_else(|| InputError::new("$.semilattice", "expected an object"))?;
            if let Some(n) = o.get("boolean") {
                Semilattice::boolean(as_usize(n, "$.semilattice.boolean")?)
            } else {
                let ground = as_usize(
                    o.get("ground").ok_or_else(|| {
                        InputError::new(
                            "$.semilattice",
                            "needs \"boolean\" or \"ground\" and \"masks\"",
                        )
                    })?,
                    "$.semilattice.ground",
                )?;
                let masks = as_array(
                    o.get("masks")
                        .ok_or_else(|| InputError::new("$.semilattice", "missing \"masks\""))?,
                    "$.semilattice.masks",
                )?
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    m.as_u64().ok_or_else(|| {
                        InputError::new(format!("$.semilattice.masks[{i}]"), "expected a bit mask")
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
                Semilattice::from_masks(ground, masks)
            }
        }
    }
    .map_err(|e| TaskError::Check(Check::fail("semilattice", e.to_string())))?;
    let n = lattice.len();
    rep.dim("lattice", n);
    let basis = orthogonal_idempotent_basis(f, &lattice)
        .map_err(|e| TaskError::Check(Check::fail("orthogonal idempotent basis", e.to_string())))?;
    rep.checks.push(Check::pass(
        "orthogonal idempotent basis: orthogonal, complete, spanning",
    ));
    let alg = lattice.algebra(f);
    let ideals: Vec<Vec<Vector<F>>> = match &spec.ideals {
        Some(v) => as_array(v, "$.ideals")?
            .iter()
            .enumerate()
            .map(|(i, gens)| {
                as_array(gens, &format!("$.ideals[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| vector(f, x, &format!("$.ideals[{i}][{j}]"), n))
                    .collect()
            })
            .collect::<Result<_, InputError>>()?,
        None => {
            let mut r = rng(task.seed.unwrap_or(0));
            (0..3)
                .map(|k| (0..=k).map(|_| small_vector(f, n, &mut r)).collect())
                .collect()
        }
    };
    let mut gens_out = Vec::new();
    for (i, gens) in ideals.iter().enumerate() {
        let pg = principal_generator(f, &lattice, &basis, gens);
        let ideal = alg.ideal_closure(gens);
        let ok = alg.mul(&pg.u, &pg.u) == pg.u
            && gens.iter().all(|r| &alg.mul(&pg.u, r) == r)
            && ideal.contains(&pg.u);
        rep.checks.push(if ok {
            Check::pass(format!("ideal {i}: u idempotent, u r = r, u in the ideal"))
        } else {
            Check::fail(
                format!("ideal {i}: u idempotent, u r = r, u in the ideal"),
                format!("u = {:?}", format_vector(f, &pg.u)),
            )
        });
        gens_out.push(json!({"u": format_vector(f, &pg.u), "support": pg.support}));
    }
    let idems: Vec<Value> = basis
        .labels
        .iter()
        .zip(&basis.vectors)
        .map(|(t, w)| json!({"label": t, "w": format_vector(f, w)}))
        .collect();
    rep.details.insert("idempotents".into(), Value::from(idems));
    rep.details
        .insert("generators".into(), Value::from(gens_out));
    Ok(())
}
