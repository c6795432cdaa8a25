//! Exact scalar fields.
//!
//! Everything in this crate is generic over a [`Field`] value that carries the
//! arithmetic; elements are plain data. Two fields are provided: the rationals
//! (arbitrary precision, always normalized) and prime fields `F_p`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cannot parse `{0}` as a field element")]
    Parse(String),
    #[error("division by zero in `{0}`")]
    DivisionByZero(String),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
}

/// Which field a computation runs over. This is the serializable description;
/// the arithmetic lives in [`Rationals`] and [`PrimeField`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FieldKind {
    /// Accepts `Q`, `QQ`, `F5`, `F_5`, `GF(5)`, `GF5`.
    pub fn parse(s: &str) -> Result<FieldKind, ScalarError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("qq") {
            return Ok(FieldKind::Rationals);
        }
        let digits = t
            .strip_prefix("GF")
            .or_else(|| t.strip_prefix("gf"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('f'))
            .map(|r| {
                r.trim_start_matches('_')
                    .trim_start_matches('(')
                    .trim_end_matches(')')
            })
            .ok_or_else(|| ScalarError::Parse(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| ScalarError::Parse(s.to_string()))?;
        PrimeField::new(p)?;
        Ok(FieldKind::Prime(p))
    }
}

/// Field arithmetic. Implementors are small `Copy`-like context values.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn kind(&self) -> FieldKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, acc: &mut Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        let prod = self.mul(a, b);
        self.add_assign(acc, &prod);
    }

    /// `acc -= a * b`
    fn mul_sub_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        if self.is_zero(a) || self.is_zero(b) {
            return;
        }
        let prod = self.mul(a, b);
        *acc = self.sub(acc, &prod);
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// A normalized rational number. Values whose numerator and denominator fit in
/// an `i64` are always stored inline, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(Box<(BigInt, BigInt)>),
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Rational::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl Rational {
    pub const ZERO: Rational = Rational::Small { num: 0, den: 1 };
    pub const ONE: Rational = Rational::Small { num: 1, den: 1 };

    pub fn integer(n: i64) -> Rational {
        Rational::Small { num: n, den: 1 }
    }

    /// Builds `num / den`, normalizing sign and common factors.
    pub fn new(num: BigInt, den: BigInt) -> Option<Rational> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Some(Self::from_normalized(n, d))
    }

    fn from_normalized(n: BigInt, d: BigInt) -> Rational {
        match (n.to_i64(), d.to_i64()) {
            (Some(num), Some(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new((n, d))),
        }
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational::Small { num, den },
            _ => Rational::Big(Box::new((BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn to_big(&self) -> (BigInt, BigInt) {
        match self {
            Rational::Small { num, den } => (BigInt::from(*num), BigInt::from(*den)),
            Rational::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn numerator(&self) -> BigInt {
        self.to_big().0
    }

    pub fn denominator(&self) -> BigInt {
        self.to_big().1
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if let (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) =
            (self, other)
        {
            if *b == 1 && *d == 1 {
                if let Some(s) = a.checked_add(*c) {
                    return Rational::integer(s);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if let Some(n) = (a * d).checked_add(c * b) {
                return Rational::from_i128(n, b * d);
            }
        }
        let ((a, b), (c, d)) = (self.to_big(), other.to_big());
        Rational::new(a * &d + c * &b, b * d).expect("nonzero denominator")
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small { num, den } if *num != i64::MIN => Rational::Small {
                num: -num,
                den: *den,
            },
            _ => {
                let (a, b) = self.to_big();
                Rational::from_normalized(-a, b)
            }
        }
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        if let (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) =
            (self, other)
        {
            if *b == 1 && *d == 1 {
                if let Some(p) = a.checked_mul(*c) {
                    return Rational::integer(p);
                }
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Rational::from_i128(a * c, b * d);
        }
        let ((a, b), (c, d)) = (self.to_big(), other.to_big());
        Rational::new(a * c, b * d).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        let (a, b) = self.to_big();
        Rational::new(b, a)
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn kind(&self) -> FieldKind {
        FieldKind::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::ZERO
    }
    fn one(&self) -> Rational {
        Rational::ONE
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::integer(n)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn parse(&self, s: &str) -> Result<Rational, ScalarError> {
        let t = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        match t.split_once('/') {
            None => {
                let n: BigInt = t.parse().map_err(|_| err())?;
                Ok(Rational::new(n, BigInt::one()).expect("denominator one"))
            }
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                Rational::new(n, d).ok_or_else(|| ScalarError::DivisionByZero(s.to_string()))
            }
        }
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// `F_p` for a prime `p < 2^31`; elements are residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, ScalarError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn kind(&self) -> FieldKind {
        FieldKind::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn parse(&self, s: &str) -> Result<u64, ScalarError> {
        let t = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        let residue = |x: &str| -> Result<u64, ScalarError> {
            let n: BigInt = x.trim().parse().map_err(|_| err())?;
            let r = n.mod_floor(&BigInt::from(self.p));
            Ok(r.to_u64().expect("residue below p"))
        };
        match t.split_once('/') {
            None => residue(t),
            Some((n, d)) => {
                let d = residue(d)?;
                let dinv = self
                    .inv(&d)
                    .ok_or_else(|| ScalarError::DivisionByZero(s.to_string()))?;
                Ok(self.mul(&residue(n)?, &dinv))
            }
        }
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_normalizes() {
        let q = Rationals;
        let a = q.parse("6/-4").unwrap();
        assert_eq!(a, Rational::Small { num: -3, den: 2 });
        assert_eq!(q.format(&a), "-3/2");
        assert_eq!(q.mul(&a, &q.inv(&a).unwrap()), q.one());
    }

    #[test]
    fn rational_promotes_and_demotes() {
        let q = Rationals;
        let big = q.from_i64(i64::MAX);
        let sq = q.mul(&big, &big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = q.mul(&sq, &q.inv(&big).unwrap());
        assert_eq!(back, big);
        let sum = q.add(&big, &q.one());
        assert!(matches!(sum, Rational::Big(_)));
        assert_eq!(q.sub(&sum, &q.one()), big);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.parse("1/2").unwrap(), 4);
        assert_eq!(f.inv(&0), None);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn field_kind_parsing() {
        assert_eq!(FieldKind::parse("Q").unwrap(), FieldKind::Rationals);
        assert_eq!(FieldKind::parse("F2").unwrap(), FieldKind::Prime(2));
        assert_eq!(FieldKind::parse("GF(5)").unwrap(), FieldKind::Prime(5));
        assert!(FieldKind::parse("F4").is_err());
    }
}
