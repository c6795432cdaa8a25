//! Finite groups as validated Cayley tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_ORDER_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("table is empty or not square (row {row} has length {len}, expected {expected})")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry ({row},{col}) = {value} is out of range")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("element 0 is not a two-sided identity (fails at element {witness})")]
    NoIdentity { witness: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order {order} exceeds the configured cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Standard families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "n", rename_all = "lowercase")]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
}

impl GroupKind {
    pub fn order(&self) -> usize {
        match *self {
            GroupKind::Cyclic(n) => n,
            GroupKind::Dihedral(n) => 2 * n,
            GroupKind::Symmetric(n) => (1..=n).product(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    name: String,
}

impl FiniteGroup {
    /// Validates a Cayley table whose element 0 is the identity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::NotSquare {
                row: 0,
                len: 0,
                expected: 1,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            if let Some((j, &v)) = row.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
        if let Some(w) = (0..n).find(|&i| table[0][i] != i || table[i][0] != i) {
            return Err(GroupError::NoIdentity { witness: w });
        }
        let mut inv = vec![0; n];
        for (i, slot) in inv.iter_mut().enumerate() {
            *slot = (0..n)
                .find(|&j| table[i][j] == 0 && table[j][i] == 0)
                .ok_or(GroupError::NoInverse { element: i })?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            mul: table,
            inv,
            name: format!("table{n}"),
        })
    }

    pub fn standard(kind: GroupKind, cap: usize) -> Result<FiniteGroup, GroupError> {
        let n = match kind {
            GroupKind::Cyclic(n) | GroupKind::Dihedral(n) | GroupKind::Symmetric(n) => n,
        };
        if n == 0 {
            return Err(GroupError::InvalidParameter("n must be at least 1".into()));
        }
        if let GroupKind::Symmetric(n) = kind {
            if n > 5 {
                return Err(GroupError::InvalidParameter(format!(
                    "symmetric groups are limited to n <= 5, got {n}"
                )));
            }
        }
        let order = kind.order();
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        let (table, name) = match kind {
            GroupKind::Cyclic(n) => (cyclic_table(n), format!("C{n}")),
            GroupKind::Dihedral(n) => (dihedral_table(n), format!("D{n}")),
            GroupKind::Symmetric(n) => (symmetric_table(n), format!("S{n}")),
        };
        let mut g = FiniteGroup::from_table(table)?;
        g.name = name;
        Ok(g)
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        Self::standard(GroupKind::Cyclic(n), usize::MAX).expect("cyclic group")
    }

    pub fn trivial() -> FiniteGroup {
        Self::cyclic(1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn order(&self) -> usize {
        self.mul.len()
    }
    pub fn identity(&self) -> usize {
        0
    }
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }
    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Product of a word, left to right.
    pub fn product(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |acc, &g| self.mul(acc, g))
    }

    pub fn power(&self, g: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, g))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        self.elements()
            .flat_map(|a| self.elements().map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    /// A bijection `phi` with `phi(a*b) = phi(a)*phi(b)` into `other`, found by
    /// backtracking. Only intended for small groups.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order() {
            return None;
        }
        let mut phi = vec![usize::MAX; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        self.extend_iso(other, 1, &mut phi, &mut used)
            .then_some(phi)
    }

    fn extend_iso(
        &self,
        other: &FiniteGroup,
        next: usize,
        phi: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        let n = self.order();
        if next == n {
            return (0..n)
                .all(|a| (0..n).all(|b| phi[self.mul(a, b)] == other.mul(phi[a], phi[b])));
        }
        for cand in 1..n {
            if used[cand] {
                continue;
            }
            phi[next] = cand;
            used[cand] = true;
            let consistent = (0..=next).all(|a| {
                (0..=next).all(|b| {
                    let ab = self.mul(a, b);
                    ab > next || phi[ab] == other.mul(phi[a], phi[b])
                })
            });
            if consistent && self.extend_iso(other, next + 1, phi, used) {
                return true;
            }
            used[cand] = false;
        }
        phi[next] = usize::MAX;
        false
    }
}

fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Element `r^i s^j` sits at index `i + n*j`.
fn dihedral_table(n: usize) -> Vec<Vec<usize>> {
    let idx = |i: usize, j: usize| i + n * j;
    let mut t = vec![vec![0; 2 * n]; 2 * n];
    for j1 in 0..2 {
        for i1 in 0..n {
            for j2 in 0..2 {
                for i2 in 0..n {
                    // r^i1 s^j1 r^i2 s^j2 = r^(i1 +- i2) s^(j1+j2)
                    let i = if j1 == 0 {
                        (i1 + i2) % n
                    } else {
                        (i1 + n - i2) % n
                    };
                    t[idx(i1, j1)][idx(i2, j2)] = idx(i, (j1 + j2) % 2);
                }
            }
        }
    }
    t
}

/// Permutations of `0..n` in lexicographic order; `(p*q)(x) = p(q(x))`.
fn symmetric_table(n: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            break;
        };
        let j = (i + 1..n)
            .rev()
            .find(|&j| cur[j] > cur[i])
            .expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    let index: std::collections::HashMap<Vec<usize>, usize> = perms
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq: Vec<usize> = (0..n).map(|x| p[q[x]]).collect();
                    index[&pq]
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_group_examples() {
        assert_eq!(FiniteGroup::from_table(vec![vec![0]]).unwrap().order(), 1);
        let z2 = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.inv(1), 1);
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse { element: 1 })
        );
    }

    #[test]
    fn not_associative_is_reported() {
        // a loop of order 5 that is not a group
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(t),
            Err(GroupError::NotAssociative { .. })
        ));
    }

    #[test]
    fn standard_groups() {
        let c3 = FiniteGroup::standard(GroupKind::Cyclic(3), DEFAULT_ORDER_CAP).unwrap();
        assert!(c3.elements().all(|g| c3.power(g, 3) == 0));
        let d3 = FiniteGroup::standard(GroupKind::Dihedral(3), DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(d3.order(), 6);
        assert!(d3.non_commuting_pair().is_some());
        let s3 = FiniteGroup::standard(GroupKind::Symmetric(3), DEFAULT_ORDER_CAP).unwrap();
        assert!(s3.find_isomorphism(&d3).is_some());
        assert!(s3.find_isomorphism(&FiniteGroup::cyclic(6)).is_none());
        assert_eq!(
            FiniteGroup::standard(GroupKind::Symmetric(5), DEFAULT_ORDER_CAP),
            Err(GroupError::TooLarge {
                order: 120,
                cap: 24
            })
        );
        for kind in [
            GroupKind::Cyclic(4),
            GroupKind::Dihedral(4),
            GroupKind::Symmetric(4),
        ] {
            let g = FiniteGroup::standard(kind, DEFAULT_ORDER_CAP).unwrap();
            assert!(FiniteGroup::from_table(g.table().to_vec()).is_ok());
        }
    }
}
