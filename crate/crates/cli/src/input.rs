//! Problem descriptions: a single JSON document per experiment.

use std::collections::BTreeMap;

use parsmash::parcoh::CheckMode;
use parsmash::{FieldKind, GroupKind};
use serde_json::Value;
use thiserror::Error;

/// Input error naming the offending JSON path.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum TaskKind {
    Validate,
    Smash,
    Kpar,
    Hpar,
    Hochschild,
    SpectralCheck,
    Orthogonalize,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Validate => "validate",
            TaskKind::Smash => "smash",
            TaskKind::Kpar => "kpar",
            TaskKind::Hpar => "hpar",
            TaskKind::Hochschild => "hochschild",
            TaskKind::SpectralCheck => "spectral-check",
            TaskKind::Orthogonalize => "orthogonalize",
        }
    }

    pub fn parse(s: &str) -> Option<TaskKind> {
        [
            TaskKind::Validate,
            TaskKind::Smash,
            TaskKind::Kpar,
            TaskKind::Hpar,
            TaskKind::Hochschild,
            TaskKind::SpectralCheck,
            TaskKind::Orthogonalize,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Standard(GroupKind),
    Table(Vec<Vec<usize>>),
}

/// Where the Hochschild algebra comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HochschildOf {
    Base,
    Smash,
    Kpar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TaskSpec {
    pub kind: TaskKind,
    pub path: String,
    pub module: Option<String>,
    pub bimodule: Option<String>,
    pub max_degree: Option<usize>,
    pub budget: Option<String>,
    pub checks: Option<CheckMode>,
    pub of: Option<HochschildOf>,
    pub seed: Option<u64>,
}

impl TaskSpec {
    pub fn bare(kind: TaskKind) -> Self {
        TaskSpec {
            kind,
            path: "$".into(),
            module: None,
            bimodule: None,
            max_degree: None,
            budget: None,
            checks: None,
            of: None,
            seed: None,
        }
    }
}

/// The field-independent skeleton of a problem; scalars stay as JSON until
/// the field is known.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemSpec {
    pub raw: Value,
    pub field: Option<FieldKind>,
    pub group: Option<GroupSpec>,
    pub element_names: Option<Vec<String>>,
    pub fixture: Option<String>,
    pub algebra: Option<Value>,
    pub partial_action: Option<Value>,
    pub modules: BTreeMap<String, Value>,
    pub bimodules: BTreeMap<String, Value>,
    pub probe: Option<Value>,
    pub semilattice: Option<Value>,
    pub ideals: Option<Value>,
    pub tasks: Vec<TaskSpec>,
}

const TOP_KEYS: &[&str] = &[
    "field",
    "group",
    "fixture",
    "algebra",
    "partial_action",
    "modules",
    "bimodules",
    "probe",
    "semilattice",
    "ideals",
    "tasks",
];

fn obj<'a>(v: &'a Value, path: &str) -> Result<&'a serde_json::Map<String, Value>, InputError> {
    v.as_object()
        .ok_or_else(|| InputError::new(path, "expected an object"))
}

pub fn as_usize(v: &Value, path: &str) -> Result<usize, InputError> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| InputError::new(path, "expected a nonnegative integer"))
}

pub fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, InputError> {
    v.as_str()
        .ok_or_else(|| InputError::new(path, "expected a string"))
}

fn parse_group(v: &Value) -> Result<(GroupSpec, Option<Vec<String>>), InputError> {
    let o = obj(v, "$.group")?;
    let names = match o.get("names") {
        None => None,
        Some(n) => Some(
            as_array(n, "$.group.names")?
                .iter()
                .enumerate()
                .map(|(i, x)| as_str(x, &format!("$.group.names[{i}]")).map(String::from))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    if let Some(t) = o.get("table") {
        let rows = as_array(t, "$.group.table")?;
        let table = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                as_array(r, &format!("$.group.table[{i}]"))?
                    .iter()
                    .enumerate()
                    .map(|(j, x)| as_usize(x, &format!("$.group.table[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok((GroupSpec::Table(table), names));
    }
    let kind = as_str(
        o.get("type")
            .ok_or_else(|| InputError::new("$.group", "needs \"type\" or \"table\""))?,
        "$.group.type",
    )?;
    let n = as_usize(
        o.get("n")
            .ok_or_else(|| InputError::new("$.group", "missing \"n\""))?,
        "$.group.n",
    )?;
    let kind = match kind {
        "cyclic" => GroupKind::Cyclic(n),
        "dihedral" => GroupKind::Dihedral(n),
        "symmetric" => GroupKind::Symmetric(n),
        "trivial" => GroupKind::Cyclic(1),
        other => {
            return Err(InputError::new(
                "$.group.type",
                format!("unknown group type `{other}`"),
            ))
        }
    };
    Ok((GroupSpec::Standard(kind), names))
}

pub fn parse_check_mode(s: &str, path: &str) -> Result<CheckMode, InputError> {
    match s {
        "strict" => Ok(CheckMode::Strict),
        "warn" => Ok(CheckMode::Warn),
        other => Err(InputError::new(
            path,
            format!("checks must be \"strict\" or \"warn\", got `{other}`"),
        )),
    }
}

fn parse_task(v: &Value, path: &str) -> Result<TaskSpec, InputError> {
    let o = obj(v, path)?;
    let name = as_str(
        o.get("task")
            .ok_or_else(|| InputError::new(path, "missing \"task\""))?,
        &format!("{path}.task"),
    )?;
    let kind = TaskKind::parse(name)
        .ok_or_else(|| InputError::new(format!("{path}.task"), format!("unknown task `{name}`")))?;
    let mut t = TaskSpec::bare(kind);
    t.path = path.to_string();
    for (k, val) in o {
        let p = format!("{path}.{k}");
        match k.as_str() {
            "task" => {}
            "module" => t.module = Some(as_str(val, &p)?.to_string()),
            "bimodule" => t.bimodule = Some(as_str(val, &p)?.to_string()),
            "max_degree" => t.max_degree = Some(as_usize(val, &p)?),
            "budget" => t.budget = Some(as_str(val, &p)?.to_string()),
            "checks" => t.checks = Some(parse_check_mode(as_str(val, &p)?, &p)?),
            "seed" => {
                t.seed = Some(
                    val.as_u64()
                        .ok_or_else(|| InputError::new(&p, "expected a nonnegative integer"))?,
                )
            }
            "of" => {
                t.of = Some(match as_str(val, &p)? {
                    "base" => HochschildOf::Base,
                    "smash" => HochschildOf::Smash,
                    "kpar" => HochschildOf::Kpar,
                    other => {
                        return Err(InputError::new(
                            p,
                            format!("expected base, smash or kpar, got `{other}`"),
                        ))
                    }
                })
            }
            _ => return Err(InputError::new(p, "unknown task parameter")),
        }
    }
    Ok(t)
}

impl ProblemSpec {
    pub fn parse_str(text: &str) -> Result<Self, InputError> {
        let raw: Value = serde_json::from_str(text)
            .map_err(|e| InputError::new("$", format!("invalid JSON: {e}")))?;
        Self::from_value(raw)
    }

    pub fn from_value(raw: Value) -> Result<Self, InputError> {
        let o = obj(&raw, "$")?;
        if let Some(k) = o.keys().find(|k| !TOP_KEYS.contains(&k.as_str())) {
            return Err(InputError::new(format!("$.{k}"), "unknown key"));
        }
        let field = match o.get("field") {
            None => None,
            Some(v) => {
                let s = match v {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => format!("F{n}"),
                    _ => {
                        return Err(InputError::new(
                            "$.field",
                            "expected a string such as \"Q\" or \"F2\"",
                        ))
                    }
                };
                Some(FieldKind::parse(&s).map_err(|e| InputError::new("$.field", e.to_string()))?)
            }
        };
        let (group, element_names) = match o.get("group") {
            None => (None, None),
            Some(g) => {
                let (g, n) = parse_group(g)?;
                (Some(g), n)
            }
        };
        let fixture = o
            .get("fixture")
            .map(|v| as_str(v, "$.fixture").map(String::from))
            .transpose()?;
        if fixture.is_some() {
            for k in ["group", "algebra", "partial_action"] {
                if o.contains_key(k) {
                    return Err(InputError::new(
                        format!("$.{k}"),
                        "not allowed together with \"fixture\"",
                    ));
                }
            }
        } else if group.is_none() {
            return Err(InputError::new(
                "$",
                "needs a \"group\" block or a \"fixture\"",
            ));
        }
        let named = |key: &str| -> Result<BTreeMap<String, Value>, InputError> {
            match o.get(key) {
                None => Ok(BTreeMap::new()),
                Some(v) => Ok(obj(v, &format!("$.{key}"))?
                    .iter()
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect()),
            }
        };
        let tasks = match o.get("tasks") {
            None => Vec::new(),
            Some(v) => as_array(v, "$.tasks")?
                .iter()
                .enumerate()
                .map(|(i, t)| parse_task(t, &format!("$.tasks[{i}]")))
                .collect::<Result<_, _>>()?,
        };
        Ok(ProblemSpec {
            field,
            group,
            element_names,
            fixture,
            algebra: o.get("algebra").cloned(),
            partial_action: o.get("partial_action").cloned(),
            modules: named("modules")?,
            bimodules: named("bimodules")?,
            probe: o.get("probe").cloned(),
            semilattice: o.get("semilattice").cloned(),
            ideals: o.get("ideals").cloned(),
            tasks,
            raw,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paths_in_errors() {
        let e = ProblemSpec::parse_str(r#"{"group": {"type": "cyclic", "n": -1}}"#).unwrap_err();
        assert_eq!(e.path, "$.group.n");
        let e = ProblemSpec::parse_str(r#"{"group": {"type": "cyclic", "n": 2}, "tasks": [{"task": "hpar", "max_degree": "x"}]}"#).unwrap_err();
        assert_eq!(e.path, "$.tasks[0].max_degree");
        let e = ProblemSpec::parse_str(r#"{"group": {"table": [[0, 1], [1]]}, "colour": 1}"#)
            .unwrap_err();
        assert_eq!(e.path, "$.colour");
        let e = ProblemSpec::parse_str(
            r#"{"fixture": "split_pair_partial", "group": {"type": "cyclic", "n": 2}}"#,
        )
        .unwrap_err();
        assert_eq!(e.path, "$.group");
    }

    #[test]
    fn parses_tasks() {
        let p = ProblemSpec::parse_str(
            r#"{"field": "F2", "group": {"type": "symmetric", "n": 3}, "tasks": [{"task": "hpar", "module": "B", "max_degree": 2, "checks": "warn"}]}"#,
        )
        .unwrap();
        assert_eq!(p.field, Some(FieldKind::Prime(2)));
        assert_eq!(p.group, Some(GroupSpec::Standard(GroupKind::Symmetric(3))));
        assert_eq!(p.tasks[0].kind, TaskKind::Hpar);
        assert_eq!(p.tasks[0].checks, Some(CheckMode::Warn));
    }
}
