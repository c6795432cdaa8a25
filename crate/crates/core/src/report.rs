//! Outcome records shared by the verification routines.

use serde::Serialize;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Assumed,
    Skipped,
    Unavailable,
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn with_status(name: impl Into<String>, status: Status, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            status,
            witness,
        }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Check::pass(name),
            Err(w) => Check::fail(name, w),
        }
    }

    /// Equality of two computed dimensions.
    pub fn dims(name: impl Into<String>, left: usize, right: usize) -> Self {
        if left == right {
            Check::with_status(name, Status::Pass, Some(format!("{left} = {right}")))
        } else {
            Check::fail(name, format!("{left} != {right}"))
        }
    }

    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail)
    }

    /// Turns a failure into a warning.
    pub fn downgrade(mut self) -> Self {
        if self.status == Status::Fail {
            self.status = Status::Warn;
        }
        self
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(Check::passed)
}
