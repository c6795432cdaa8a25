use std::fmt;

use crate::field::Field;
use crate::group::FiniteGroup;
use crate::linalg::Matrix;

/// First violated partial-representation axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartialRepViolation {
    /// `pi(e) != id`
    Identity,
    /// `pi(s) pi(t) pi(t^-1) != pi(st) pi(t^-1)`
    Right { s: usize, t: usize },
    /// `pi(s^-1) pi(s) pi(t) != pi(s^-1) pi(st)`
    Left { s: usize, t: usize },
}

impl fmt::Display for PartialRepViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartialRepViolation::Identity => write!(f, "pi(e) != id"),
            PartialRepViolation::Right { s, t } => {
                write!(f, "pi({s})pi({t})pi({t}^-1) != pi({s}*{t})pi({t}^-1)")
            }
            PartialRepViolation::Left { s, t } => {
                write!(f, "pi({s}^-1)pi({s})pi({t}) != pi({s}^-1)pi({s}*{t})")
            }
        }
    }
}

/// Checks the axioms for any family closed under an associative product.
pub fn check_partial_rep_by<T: PartialEq>(
    group: &FiniteGroup,
    pi: &[T],
    mul: impl Fn(&T, &T) -> T,
    is_identity: impl Fn(&T) -> bool,
) -> Result<(), PartialRepViolation> {
    if !is_identity(&pi[0]) {
        return Err(PartialRepViolation::Identity);
    }
    for s in group.elements() {
        let si = group.inv(s);
        for t in group.elements() {
            let ti = group.inv(t);
            let st = group.mul(s, t);
            if mul(&mul(&pi[s], &pi[t]), &pi[ti]) != mul(&pi[st], &pi[ti]) {
                return Err(PartialRepViolation::Right { s, t });
            }
            if mul(&mul(&pi[si], &pi[s]), &pi[t]) != mul(&pi[si], &pi[st]) {
                return Err(PartialRepViolation::Left { s, t });
            }
        }
    }
    Ok(())
}

pub fn check_partial_rep<F: Field>(
    group: &FiniteGroup,
    pi: &[Matrix<F>],
) -> Result<(), PartialRepViolation> {
    check_partial_rep_by(group, pi, |a, b| a.mul(b), |a| a.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn scalar_partial_reps() {
        let q = Rationals;
        let z2 = FiniteGroup::cyclic(2);
        let m = |x: i64| Matrix::from_i64(&q, &[vec![x]]);
        assert!(check_partial_rep(&z2, &[m(1), m(0)]).is_ok());
        assert!(check_partial_rep(&z2, &[m(1), m(-1)]).is_ok());
        assert_eq!(
            check_partial_rep(&z2, &[m(1), m(2)]),
            Err(PartialRepViolation::Right { s: 1, t: 1 })
        );
        assert_eq!(
            check_partial_rep(&z2, &[m(2), m(1)]),
            Err(PartialRepViolation::Identity)
        );
    }
}
