//! Command line front end: JSON problem files in, JSON or TSV reports out.

pub mod build;
pub mod input;
pub mod output;
pub mod tasks;

use parsmash::parcoh::CheckMode;
use parsmash::{Budget, Field, FieldKind, PrimeField, Rationals};
use serde_json::{json, Value};

use build::Objects;
use input::{HochschildOf, InputError, ProblemSpec, TaskSpec};
use tasks::{run_task, Resolved, TaskReport};

/// Command line overrides; each takes precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub field: Option<FieldKind>,
    pub max_degree: Option<usize>,
    pub budget: Option<String>,
    pub checks: Option<CheckMode>,
    pub module: Option<String>,
    pub bimodule: Option<String>,
    pub of: Option<HochschildOf>,
    pub seed: Option<u64>,
    pub timings: bool,
}

impl Flags {
    fn digest_value(&self) -> Value {
        json!({
            "field": self.field.map(|f| f.to_string()),
            "max_degree": self.max_degree,
            "budget": self.budget,
            "checks": self.checks,
            "module": self.module,
            "bimodule": self.bimodule,
            "of": self.of.map(|o| format!("{o:?}").to_lowercase()),
            "seed": self.seed,
        })
    }
}

pub struct RunResult {
    pub document: Value,
    pub passed: bool,
}

/// `default < PARSMASH_BUDGET < task budget < --budget`.
fn budget_for(
    env: Option<&str>,
    task: Option<(&str, &str)>,
    flag: Option<&str>,
) -> Result<Budget, InputError> {
    let mut b = Budget::default();
    if let Some(e) = env {
        b.apply(e)
            .map_err(|e| InputError::new("$PARSMASH_BUDGET", e.to_string()))?;
    }
    if let Some((path, t)) = task {
        b.apply(t)
            .map_err(|e| InputError::new(format!("{path}.budget"), e.to_string()))?;
    }
    if let Some(f) = flag {
        b.apply(f)
            .map_err(|e| InputError::new("--budget", e.to_string()))?;
    }
    Ok(b)
}

fn merge(task: &TaskSpec, flags: &Flags) -> TaskSpec {
    let mut t = task.clone();
    t.module = flags.module.clone().or(t.module);
    t.bimodule = flags.bimodule.clone().or(t.bimodule);
    t.of = flags.of.or(t.of);
    t.seed = flags.seed.or(t.seed);
    t.max_degree = flags.max_degree.or(t.max_degree);
    t.checks = flags.checks.or(t.checks);
    t
}

fn run_field<F: Field>(
    field: F,
    spec: &ProblemSpec,
    tasks: &[TaskSpec],
    flags: &Flags,
    env: Option<&str>,
) -> Result<(Vec<TaskReport>, Budget), InputError> {
    let base = budget_for(env, None, flags.budget.as_deref())?;
    let shared = Objects::new(spec, field.clone(), base.clone())?;
    let mut own = Vec::new();
    for t in tasks {
        own.push(match &t.budget {
            Some(b) => Some(Objects::new(
                spec,
                field.clone(),
                budget_for(env, Some((&t.path, b)), flags.budget.as_deref())?,
            )?),
            None => None,
        });
    }
    let results: Vec<Result<TaskReport, InputError>> = std::thread::scope(|s| {
        let handles: Vec<_> = tasks
            .iter()
            .zip(&own)
            .map(|(t, o)| {
                let objs = o.as_ref().unwrap_or(&shared);
                let opts = Resolved {
                    max_degree: t.max_degree,
                    checks: t.checks.unwrap_or_default(),
                };
                s.spawn(move || run_task(spec, objs, t, &opts))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("task thread panicked"))
            .collect()
    });
    Ok((results.into_iter().collect::<Result<_, _>>()?, base))
}

/// Runs `tasks` (after applying `flags`) and assembles the report document.
pub fn execute(
    spec: &ProblemSpec,
    tasks: &[TaskSpec],
    flags: &Flags,
    env_budget: Option<&str>,
) -> Result<RunResult, InputError> {
    let kind = flags.field.or(spec.field).unwrap_or(FieldKind::Rationals);
    let tasks: Vec<TaskSpec> = tasks.iter().map(|t| merge(t, flags)).collect();
    let (reports, budget) = match kind {
        FieldKind::Rationals => run_field(Rationals, spec, &tasks, flags, env_budget)?,
        FieldKind::Prime(p) => {
            let f = PrimeField::new(p).map_err(|e| {
                InputError::new(
                    if flags.field.is_some() {
                        "--field"
                    } else {
                        "$.field"
                    },
                    e.to_string(),
                )
            })?;
            run_field(f, spec, &tasks, flags, env_budget)?
        }
    };
    let passed = reports.iter().all(TaskReport::passed);
    let digest = output::digest(&json!({
        "input": spec.raw,
        "tasks": tasks.iter().map(|t| t.kind.name()).collect::<Vec<_>>(),
        "flags": flags.digest_value(),
        "env_budget": env_budget,
    }));
    let task_values: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = json!({
                "task": r.task,
                "passed": r.passed(),
                "dimensions": r.dimensions,
                "checks": r.checks,
                "details": r.details,
            });
            if flags.timings {
                v["timings_us"] = json!(r.timings);
            }
            v
        })
        .collect();
    let document = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "field": kind.to_string(),
        "budget": budget,
        "inputs_digest": digest,
        "passed": passed,
        "tasks": task_values,
    });
    Ok(RunResult { document, passed })
}
