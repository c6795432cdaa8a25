//! Field-dependent domain objects built from a [`ProblemSpec`].

use std::sync::{Arc, OnceLock};

use parsmash::algebra::{AlgModule, Algebra, Bimodule};
use parsmash::hochss::dual_bimodule;
use parsmash::kpar::Kpar;
use parsmash::partial::fixtures::{self, NonunitalData};
use parsmash::partial::{PartialAction, SmashAlgebra, ValidationMode};
use parsmash::{Budget, Check, Field, FiniteGroup, Matrix, Vector};
use serde_json::Value;

use crate::input::{as_array, as_usize, GroupSpec, InputError, ProblemSpec};

/// Why a task could not run: malformed input, or a failed construction that
/// is reported as a check.
#[derive(Debug, Clone)]
pub enum TaskError {
    Input(InputError),
    Check(Check),
}

impl From<InputError> for TaskError {
    fn from(e: InputError) -> Self {
        TaskError::Input(e)
    }
}

pub fn scalar<F: Field>(f: &F, v: &Value, path: &str) -> Result<F::Elem, InputError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| f.from_i64(x))
            .ok_or_else(|| InputError::new(path, "expected an integer or a string \"p/q\"")),
        Value::String(s) => f.parse(s).map_err(|e| InputError::new(path, e.to_string())),
        _ => Err(InputError::new(
            path,
            "expected an integer or a string \"p/q\"",
        )),
    }
}

pub fn vector<F: Field>(f: &F, v: &Value, path: &str, len: usize) -> Result<Vector<F>, InputError> {
    let xs = as_array(v, path)?;
    if xs.len() != len {
        return Err(InputError::new(
            path,
            format!("expected {len} entries, got {}", xs.len()),
        ));
    }
    xs.iter()
        .enumerate()
        .map(|(i, x)| scalar(f, x, &format!("{path}[{i}]")))
        .collect()
}

/// A list of rows.
pub fn matrix<F: Field>(
    f: &F,
    v: &Value,
    path: &str,
    rows: usize,
    cols: usize,
) -> Result<Matrix<F>, InputError> {
    let rs = as_array(v, path)?;
    if rs.len() != rows {
        return Err(InputError::new(
            path,
            format!("expected {rows} rows, got {}", rs.len()),
        ));
    }
    let rows_v: Vec<Vector<F>> = rs
        .iter()
        .enumerate()
        .map(|(i, r)| vector(f, r, &format!("{path}[{i}]"), cols))
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_rows(f, cols, &rows_v))
}

pub fn matrices<F: Field>(
    f: &F,
    v: &Value,
    path: &str,
    count: usize,
    n: usize,
) -> Result<Vec<Matrix<F>>, InputError> {
    let ms = as_array(v, path)?;
    if ms.len() != count {
        return Err(InputError::new(
            path,
            format!("expected {count} matrices, got {}", ms.len()),
        ));
    }
    ms.iter()
        .enumerate()
        .map(|(i, m)| matrix(f, m, &format!("{path}[{i}]"), n, n))
        .collect()
}

/// Parses an algebra block; construction failures are returned as `Ok(Err)`.
#[allow(clippy::type_complexity)]
pub fn algebra_block<F: Field>(
    f: &F,
    v: &Value,
    path: &str,
) -> Result<(Result<Algebra<F>, String>, Option<Vec<String>>), InputError> {
    let o = v
        .as_object()
        .ok_or_else(|| InputError::new(path, "expected an object"))?;
    for k in o.keys() {
        if !["dim", "unit", "structure", "basis_names"].contains(&k.as_str()) {
            return Err(InputError::new(format!("{path}.{k}"), "unknown key"));
        }
    }
    let get = |k: &str| {
        o.get(k)
            .ok_or_else(|| InputError::new(path, format!("missing \"{k}\"")))
    };
    let dim = as_usize(get("dim")?, &format!("{path}.dim"))?;
    let unit = vector(f, get("unit")?, &format!("{path}.unit"), dim)?;
    let sp = format!("{path}.structure");
    let rows = as_array(get("structure")?, &sp)?;
    if rows.len() != dim {
        return Err(InputError::new(sp, format!("expected {dim} rows")));
    }
    let mut structure = Vec::with_capacity(dim);
    for (i, r) in rows.iter().enumerate() {
        let p = format!("{sp}[{i}]");
        let cells = as_array(r, &p)?;
        if cells.len() != dim {
            return Err(InputError::new(p, format!("expected {dim} products")));
        }
        structure.push(
            cells
                .iter()
                .enumerate()
                .map(|(j, c)| vector(f, c, &format!("{p}[{j}]"), dim))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    let names = names_list(o.get("basis_names"), &format!("{path}.basis_names"), dim)?;
    Ok((
        Algebra::new(f, dim, structure, unit).map_err(|e| e.to_string()),
        names,
    ))
}

fn names_list(
    v: Option<&Value>,
    path: &str,
    len: usize,
) -> Result<Option<Vec<String>>, InputError> {
    let Some(v) = v else { return Ok(None) };
    let xs = as_array(v, path)?;
    if xs.len() != len {
        return Err(InputError::new(path, format!("expected {len} names")));
    }
    xs.iter()
        .enumerate()
        .map(|(i, x)| {
            x.as_str()
                .map(String::from)
                .ok_or_else(|| InputError::new(format!("{path}[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// Everything a task may need, built lazily where expensive.
pub struct Objects<F: Field> {
    pub field: F,
    pub budget: Budget,
    pub group: Result<Arc<FiniteGroup>, String>,
    pub element_names: Vec<String>,
    pub algebra: Option<Result<Arc<Algebra<F>>, String>>,
    pub basis_names: Vec<String>,
    pub partial_action: Option<Result<Arc<PartialAction<F>>, String>>,
    /// Domain spans and maps as given, when the action was described by domains.
    pub raw: Option<NonunitalData<F>>,
    pub probe: Option<Vec<Vector<F>>>,
    group_over_budget: bool,
    kpar: OnceLock<Result<Arc<Kpar<F>>, String>>,
    smash: OnceLock<Result<Arc<SmashAlgebra<F>>, String>>,
}

fn key_to_element(
    k: &str,
    names: &[String],
    order: usize,
    path: &str,
) -> Result<usize, InputError> {
    if let Some(i) = names.iter().position(|n| n == k) {
        return Ok(i);
    }
    k.parse::<usize>()
        .ok()
        .filter(|&g| g < order)
        .ok_or_else(|| InputError::new(path, format!("`{k}` is not a group element")))
}

/// `{g: value}` with the identity optional.
fn per_element<T>(
    v: &Value,
    path: &str,
    names: &[String],
    order: usize,
    identity: impl Fn() -> T,
    parse: impl Fn(&Value, &str) -> Result<T, InputError>,
) -> Result<Vec<T>, InputError> {
    let o = v
        .as_object()
        .ok_or_else(|| InputError::new(path, "expected an object keyed by group elements"))?;
    let mut out: Vec<Option<T>> = (0..order).map(|_| None).collect();
    for (k, x) in o {
        let p = format!("{path}.{k}");
        let g = key_to_element(k, names, order, &p)?;
        out[g] = Some(parse(x, &p)?);
    }
    if out[0].is_none() {
        out[0] = Some(identity());
    }
    out.into_iter()
        .enumerate()
        .map(|(g, x)| {
            x.ok_or_else(|| InputError::new(path, format!("missing entry for group element {g}")))
        })
        .collect()
}

fn default_names(order: usize) -> Vec<String> {
    (0..order)
        .map(|g| {
            if g == 0 {
                "e".to_string()
            } else {
                format!("g{g}")
            }
        })
        .collect()
}

impl<F: Field> Objects<F> {
    pub fn new(spec: &ProblemSpec, field: F, budget: Budget) -> Result<Self, InputError> {
        let f = &field;
        let mut objs = Objects {
            field: field.clone(),
            budget: budget.clone(),
            group: Err("no group".into()),
            group_over_budget: false,
            element_names: Vec::new(),
            algebra: None,
            basis_names: Vec::new(),
            partial_action: None,
            raw: None,
            probe: None,
            kpar: OnceLock::new(),
            smash: OnceLock::new(),
        };
        if let Some(name) = &spec.fixture {
            let pa_fixture =
                |pa: PartialAction<F>| (pa.group().clone(), pa.algebra().clone(), Arc::new(pa));
            let (g, a, pa) = match name.as_str() {
                "split_pair_partial" => pa_fixture(fixtures::split_pair_partial(f)),
                "split_pair_swap" => pa_fixture(fixtures::split_pair_swap(f)),
                "dual_numbers_trivial" => pa_fixture(fixtures::dual_numbers_trivial(f)),
                "dual_numbers_partial" => pa_fixture(fixtures::dual_numbers_partial(f)),
                "nonunital_example" => {
                    let d = fixtures::nonunital_example(f);
                    let built = PartialAction::from_domains(
                        d.group.clone(),
                        d.algebra.clone(),
                        &d.domains,
                        d.alpha.clone(),
                        ValidationMode::Equality,
                    );
                    objs.group = Ok(d.group.clone());
                    objs.element_names = vec!["1".into(), "g".into()];
                    objs.algebra = Some(Ok(d.algebra.clone()));
                    objs.basis_names = ["1", "x", "y", "xy"].map(String::from).to_vec();
                    objs.partial_action = Some(built.map(Arc::new).map_err(|e| e.to_string()));
                    let e =
                        |xs: &[i64]| -> Vector<F> { xs.iter().map(|&x| f.from_i64(x)).collect() };
                    objs.probe = Some(vec![e(&[0, 1, 0, 0]), e(&[0, 0, 0, 1])]);
                    objs.raw = Some(d);
                    return objs.finish(spec);
                }
                other => {
                    return Err(InputError::new(
                        "$.fixture",
                        format!("unknown fixture `{other}`"),
                    ))
                }
            };
            objs.element_names = default_names(g.order());
            objs.basis_names = (0..a.dim()).map(|i| format!("b{i}")).collect();
            objs.group = Ok(g);
            objs.algebra = Some(Ok(a));
            objs.partial_action = Some(Ok(pa));
            return objs.finish(spec);
        }
        let group = match spec.group.as_ref().expect("checked by the parser") {
            GroupSpec::Standard(kind) => FiniteGroup::standard(*kind, budget.group_order),
            GroupSpec::Table(t) => FiniteGroup::from_table(t.clone()).and_then(|g| {
                if g.order() > budget.group_order {
                    Err(parsmash::group::GroupError::TooLarge {
                        order: g.order(),
                        cap: budget.group_order,
                    })
                } else {
                    Ok(g)
                }
            }),
        };
        objs.group_over_budget = matches!(group, Err(parsmash::group::GroupError::TooLarge { .. }));
        objs.group = group.map(Arc::new).map_err(|e| e.to_string());
        let order = objs.group.as_ref().map_or(0, |g| g.order());
        objs.element_names = match &spec.element_names {
            Some(n) if n.len() == order => n.clone(),
            Some(_) => {
                return Err(InputError::new(
                    "$.group.names",
                    format!("expected {order} names"),
                ))
            }
            None => default_names(order),
        };
        if let Some(av) = &spec.algebra {
            let (a, names) = algebra_block(f, av, "$.algebra")?;
            let dim = a.as_ref().map_or(0, |a| a.dim());
            objs.basis_names = names.unwrap_or_else(|| (0..dim).map(|i| format!("b{i}")).collect());
            objs.algebra = Some(a.map(Arc::new));
        }
        if let Some(pv) = &spec.partial_action {
            objs.parse_partial_action(pv)?;
        }
        objs.finish(spec)
    }

    fn finish(mut self, spec: &ProblemSpec) -> Result<Self, InputError> {
        if let Some(pv) = &spec.probe {
            let (Ok(g), Some(Ok(a))) = (&self.group, &self.algebra) else {
                return Err(InputError::new(
                    "$.probe",
                    "needs a valid group and algebra",
                ));
            };
            let d = a.dim();
            let zero = vec![self.field.zero(); d];
            let f = self.field.clone();
            self.probe = Some(per_element(
                pv,
                "$.probe",
                &self.element_names,
                g.order(),
                || zero.clone(),
                |v, p| vector(&f, v, p, d),
            )?);
        }
        Ok(self)
    }

    fn parse_partial_action(&mut self, pv: &Value) -> Result<(), InputError> {
        let path = "$.partial_action";
        let o = pv
            .as_object()
            .ok_or_else(|| InputError::new(path, "expected an object"))?;
        for k in o.keys() {
            if !["u", "alpha", "domains", "global", "validation"].contains(&k.as_str()) {
                return Err(InputError::new(format!("{path}.{k}"), "unknown key"));
            }
        }
        let (Ok(g), Some(Ok(a))) = (self.group.clone(), self.algebra.clone()) else {
            self.partial_action = Some(Err(
                "a partial action needs a valid group and algebra".into()
            ));
            return Ok(());
        };
        let f = self.field.clone();
        let d = a.dim();
        let names = self.element_names.clone();
        let mode = match o.get("validation").map(|v| v.as_str()) {
            None | Some(Some("equality")) => ValidationMode::Equality,
            Some(Some("weak")) => ValidationMode::Weak,
            _ => {
                return Err(InputError::new(
                    format!("{path}.validation"),
                    "expected \"equality\" or \"weak\"",
                ))
            }
        };
        let mat = |v: &Value, p: &str| matrix(&f, v, p, d, d);
        let ident = || Matrix::identity(&f, d);
        if let Some(sv) = o.get("global") {
            let sigma = per_element(sv, &format!("{path}.global"), &names, g.order(), ident, mat)?;
            self.partial_action = Some(
                PartialAction::global(g, a, sigma)
                    .map(Arc::new)
                    .map_err(|e| e.to_string()),
            );
            return Ok(());
        }
        let alpha_v = o
            .get("alpha")
            .ok_or_else(|| InputError::new(path, "missing \"alpha\""))?;
        let alpha = per_element(
            alpha_v,
            &format!("{path}.alpha"),
            &names,
            g.order(),
            ident,
            mat,
        )?;
        if let Some(dv) = o.get("domains") {
            let full: Vec<Vector<F>> = (0..d).map(|i| a.basis(i)).collect();
            let spans = per_element(
                dv,
                &format!("{path}.domains"),
                &names,
                g.order(),
                || full.clone(),
                |v, p| {
                    as_array(v, p)?
                        .iter()
                        .enumerate()
                        .map(|(i, x)| vector(&f, x, &format!("{p}[{i}]"), d))
                        .collect()
                },
            )?;
            let built =
                PartialAction::from_domains(g.clone(), a.clone(), &spans, alpha.clone(), mode);
            self.partial_action = Some(built.map(Arc::new).map_err(|e| e.to_string()));
            self.raw = Some(NonunitalData {
                group: g,
                algebra: a,
                domains: spans,
                alpha,
            });
            return Ok(());
        }
        let uv = o
            .get("u")
            .ok_or_else(|| InputError::new(path, "needs \"u\", \"domains\" or \"global\""))?;
        let unit = a.unit().clone();
        let u = per_element(
            uv,
            &format!("{path}.u"),
            &names,
            g.order(),
            || unit.clone(),
            |v, p| vector(&f, v, p, d),
        )?;
        self.partial_action = Some(
            PartialAction::new(g, a, u, alpha, mode)
                .map(Arc::new)
                .map_err(|e| e.to_string()),
        );
        Ok(())
    }

    pub fn group(&self) -> Result<&Arc<FiniteGroup>, TaskError> {
        self.group.as_ref().map_err(|e| {
            let status = if self.group_over_budget {
                parsmash::Status::Skipped
            } else {
                parsmash::Status::Fail
            };
            TaskError::Check(Check::with_status("group", status, Some(e.clone())))
        })
    }

    pub fn algebra(&self) -> Result<&Arc<Algebra<F>>, TaskError> {
        match &self.algebra {
            None => Err(
                InputError::new("$", "this task needs an \"algebra\" block or a fixture").into(),
            ),
            Some(Err(e)) => Err(TaskError::Check(Check::fail("algebra axioms", e.clone()))),
            Some(Ok(a)) => Ok(a),
        }
    }

    pub fn partial_action(&self) -> Result<&Arc<PartialAction<F>>, TaskError> {
        match &self.partial_action {
            None => Err(InputError::new(
                "$",
                "this task needs a \"partial_action\" block or a fixture",
            )
            .into()),
            Some(Err(e)) => Err(TaskError::Check(Check::fail(
                "partial action axioms",
                e.clone(),
            ))),
            Some(Ok(pa)) => Ok(pa),
        }
    }

    pub fn kpar(&self) -> Result<&Arc<Kpar<F>>, TaskError> {
        let g = self.group()?.clone();
        self.kpar
            .get_or_init(|| {
                Kpar::new(&self.field, g, self.budget.kpar_dim)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| {
                TaskError::Check(Check::with_status(
                    "build K_par G",
                    parsmash::Status::Skipped,
                    Some(e.clone()),
                ))
            })
    }

    pub fn smash(&self) -> Result<&Arc<SmashAlgebra<F>>, TaskError> {
        let pa = self.partial_action()?.clone();
        self.smash
            .get_or_init(|| {
                SmashAlgebra::new(pa)
                    .map(Arc::new)
                    .map_err(|e| e.to_string())
            })
            .as_ref()
            .map_err(|e| TaskError::Check(Check::fail("smash product", e.clone())))
    }

    /// `B`, `regular`, `IG`, `D_g:<g>`, `quotient:<seed>`, or a named entry of
    /// the `modules` block.
    pub fn module(&self, spec: &ProblemSpec, name: &str) -> Result<AlgModule<F>, TaskError> {
        let kp = self.kpar()?;
        let fail = |e: String| TaskError::Check(Check::fail(format!("module {name}"), e));
        if let Some(v) = spec.modules.get(name) {
            let path = format!("$.modules.{name}");
            if let Some(alias) = v.as_str() {
                return self
                    .literal_module(kp, alias)
                    .ok_or_else(|| {
                        TaskError::from(InputError::new(
                            path,
                            format!("unknown module literal `{alias}`"),
                        ))
                    })?
                    .map_err(fail);
            }
            let o = v
                .as_object()
                .ok_or_else(|| InputError::new(&path, "expected a literal or an object"))?;
            let dim = as_usize(
                o.get("dim")
                    .ok_or_else(|| InputError::new(&path, "missing \"dim\""))?,
                &format!("{path}.dim"),
            )?;
            if let Some(pr) = o.get("partial_rep") {
                let g = self.group()?;
                let pi = per_element(
                    pr,
                    &format!("{path}.partial_rep"),
                    &self.element_names,
                    g.order(),
                    || Matrix::identity(&self.field, dim),
                    |v, p| matrix(&self.field, v, p, dim, dim),
                )?;
                return kp
                    .partial_rep_to_module(&pi)
                    .map_err(|e| fail(e.to_string()));
            }
            if let Some(acts) = o.get("actions") {
                let ms = matrices(&self.field, acts, &format!("{path}.actions"), kp.dim(), dim)?;
                return AlgModule::new(kp.algebra().clone(), dim, ms)
                    .map_err(|e| fail(e.to_string()));
            }
            return Err(InputError::new(path, "needs \"partial_rep\" or \"actions\"").into());
        }
        self.literal_module(kp, name)
            .ok_or_else(|| {
                TaskError::from(InputError::new("$", format!("unknown module `{name}`")))
            })?
            .map_err(fail)
    }

    fn literal_module(&self, kp: &Kpar<F>, name: &str) -> Option<Result<AlgModule<F>, String>> {
        let m = match name {
            "B" => Ok(kp.b_module()),
            "regular" | "Λ" => Ok(kp.regular_module()),
            "IG" => kp.ig_module().map(|x| x.0).map_err(|e| e.to_string()),
            _ => {
                if let Some(g) = name
                    .strip_prefix("D_g:")
                    .or_else(|| name.strip_prefix("D_"))
                {
                    let g = key_to_element(g, &self.element_names, kp.group().order(), "$").ok()?;
                    kp.domain_module(g).map(|x| x.0).map_err(|e| e.to_string())
                } else {
                    let seed = name.strip_prefix("quotient:")?;
                    kp.random_quotient(seed.parse().ok()?)
                        .map(|x| x.0)
                        .map_err(|e| e.to_string())
                }
            }
        };
        Some(m)
    }

    /// `regular`, `dual`, `zero`, or a named entry of the `bimodules` block,
    /// over `alg`.
    pub fn bimodule(
        &self,
        spec: &ProblemSpec,
        alg: &Arc<Algebra<F>>,
        name: &str,
    ) -> Result<Bimodule<F>, TaskError> {
        let fail = |e: String| TaskError::Check(Check::fail(format!("bimodule {name}"), e));
        let literal = |n: &str| -> Option<Bimodule<F>> {
            match n {
                "regular" => Some(Bimodule::regular(alg.clone())),
                "dual" => Some(dual_bimodule(&Bimodule::regular(alg.clone()))),
                "zero" => Some(Bimodule::zero(alg.clone())),
                _ => None,
            }
        };
        if let Some(v) = spec.bimodules.get(name) {
            let path = format!("$.bimodules.{name}");
            if let Some(alias) = v.as_str() {
                return literal(alias).ok_or_else(|| {
                    InputError::new(path, format!("unknown bimodule literal `{alias}`")).into()
                });
            }
            let o = v
                .as_object()
                .ok_or_else(|| InputError::new(&path, "expected a literal or an object"))?;
            let dim = as_usize(
                o.get("dim")
                    .ok_or_else(|| InputError::new(&path, "missing \"dim\""))?,
                &format!("{path}.dim"),
            )?;
            let side = |k: &str| -> Result<Vec<Matrix<F>>, InputError> {
                let v = o
                    .get(k)
                    .ok_or_else(|| InputError::new(&path, format!("missing \"{k}\"")))?;
                matrices(&self.field, v, &format!("{path}.{k}"), alg.dim(), dim)
            };
            return Bimodule::new(alg.clone(), dim, side("left")?, side("right")?)
                .map_err(|e| fail(e.to_string()));
        }
        literal(name)
            .ok_or_else(|| InputError::new("$", format!("unknown bimodule `{name}`")).into())
    }
}
