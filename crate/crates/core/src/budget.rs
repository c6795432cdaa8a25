//! Size limits for the exponential constructions.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BudgetError {
    #[error("budget entry `{0}` is not of the form key=value")]
    Syntax(String),
    #[error("unknown budget key `{0}`")]
    UnknownKey(String),
    #[error("budget value for `{key}` is not a nonnegative integer: `{value}`")]
    BadValue { key: String, value: String },
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub group_order: usize,
    pub kpar_dim: usize,
    /// Largest algebra for Hochschild cohomology.
    pub algebra_dim: usize,
    /// Largest Hochschild degree.
    pub degree: usize,
    /// Largest cochain space.
    pub cochain_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            group_order: 24,
            kpar_dim: 1024,
            algebra_dim: 6,
            degree: 2,
            cochain_dim: 20_000,
        }
    }
}

impl Budget {
    /// Applies `key=value,key=value`.
    pub fn apply(&mut self, spec: &str) -> Result<(), BudgetError> {
        for entry in spec.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (key, value) = entry
                .split_once('=')
                .ok_or_else(|| BudgetError::Syntax(entry.to_string()))?;
            let (key, value) = (key.trim(), value.trim());
            let v: usize = value.parse().map_err(|_| BudgetError::BadValue {
                key: key.into(),
                value: value.into(),
            })?;
            match key {
                "group_order" => self.group_order = v,
                "kpar_dim" => self.kpar_dim = v,
                "algebra_dim" => self.algebra_dim = v,
                "degree" => self.degree = v,
                "cochain_dim" => self.cochain_dim = v,
                _ => return Err(BudgetError::UnknownKey(key.into())),
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let mut b = Budget::default();
        b.apply("degree=3, kpar_dim=20").unwrap();
        assert_eq!((b.degree, b.kpar_dim), (3, 20));
        assert_eq!(
            b.apply("nope=1"),
            Err(BudgetError::UnknownKey("nope".into()))
        );
        assert!(matches!(b.apply("degree"), Err(BudgetError::Syntax(_))));
        assert!(matches!(
            b.apply("degree=-1"),
            Err(BudgetError::BadValue { .. })
        ));
    }
}
