//! Exact ground fields.
//!
//! Everything downstream is generic over [`Field`], which extends the
//! `num-traits` arithmetic traits with parsing and rendering against a
//! runtime [`FieldKind`]. Two implementations ship with the crate: arbitrary
//! precision rationals ([`Rational`]) and prime fields with a runtime modulus
//! ([`Fp`]).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Rationals in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Largest modulus accepted for prime fields (exclusive).
pub const MAX_PRIME: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("empty coefficient")]
    Empty,
    #[error("malformed coefficient {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
}

/// Which field a specification lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rational,
    Prime(u64),
}

impl FieldKind {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if is_prime(p) {
            Ok(FieldKind::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if !(2..MAX_PRIME).contains(&p) {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field usable as the scalar type of every algebra in this crate.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Sub<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Parses `"p/q"`, `"p"` or a signed integer into the field.
    fn parse_in(kind: &FieldKind, text: &str) -> Result<Self, ScalarError>;

    fn from_i64_in(kind: &FieldKind, n: i64) -> Self;

    /// Canonical string form: `"p/q"` (q omitted when 1) or a residue in `[0, p)`.
    fn render(&self, kind: &FieldKind) -> String;

    /// Whether values of this type can represent elements of `kind`.
    fn supports(kind: &FieldKind) -> bool;
}

fn split_fraction(text: &str) -> Result<(BigInt, BigInt), ScalarError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ScalarError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let parse = |s: &str| BigInt::from_str(s).map_err(|_| ScalarError::Malformed(text.to_string()));
    let num = parse(num)?;
    let den = parse(den)?;
    if den.is_zero() {
        return Err(ScalarError::ZeroDenominator(text.to_string()));
    }
    Ok((num, den))
}

impl Field for Rational {
    fn parse_in(_kind: &FieldKind, text: &str) -> Result<Self, ScalarError> {
        let (num, den) = split_fraction(text)?;
        Ok(BigRational::new(num, den))
    }

    fn from_i64_in(_kind: &FieldKind, n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn render(&self, _kind: &FieldKind) -> String {
        self.to_string()
    }

    fn supports(kind: &FieldKind) -> bool {
        matches!(kind, FieldKind::Rational)
    }
}

/// Element of a prime field `F_p` whose modulus is chosen at runtime.
///
/// `Zero::zero()` and `One::one()` cannot know the modulus, so they produce
/// unbound integer constants. An unbound value adopts the modulus of the
/// first bound value it meets; every value read from a specification is
/// bound.
#[derive(Clone, Copy, Debug)]
pub struct Fp(Repr);

#[derive(Clone, Copy, Debug)]
enum Repr {
    Int(i64),
    Mod { value: u64, p: u64 },
}

impl Fp {
    pub fn new(n: i64, p: u64) -> Self {
        Fp(Repr::Mod { value: lift(n, p), p })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self.0 {
            Repr::Int(_) => None,
            Repr::Mod { p, .. } => Some(p),
        }
    }

    /// Residue in `[0, p)`, or `None` for an unbound constant.
    pub fn residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Int(_) => None,
            Repr::Mod { value, .. } => Some(value),
        }
    }

    fn bind(self, p: u64) -> u64 {
        match self.0 {
            Repr::Int(n) => lift(n, p),
            Repr::Mod { value, p: q } => {
                assert_eq!(p, q, "mixed prime moduli");
                value
            }
        }
    }

    fn combine(
        self,
        rhs: Fp,
        int_op: impl Fn(i64, i64) -> Option<i64>,
        mod_op: impl Fn(u64, u64, u64) -> u64,
    ) -> Fp {
        let p = match (self.0, rhs.0) {
            (Repr::Int(a), Repr::Int(b)) => {
                return Fp(Repr::Int(int_op(a, b).expect("unbound F_p constant overflow")));
            }
            (Repr::Mod { p, .. }, _) | (_, Repr::Mod { p, .. }) => p,
        };
        Fp(Repr::Mod { value: mod_op(self.bind(p), rhs.bind(p), p), p })
    }

    fn inverse_mod(a: u64, p: u64) -> u64 {
        assert!(a != 0, "division by zero in F_{p}");
        pow_mod(a, p - 2, p)
    }
}

fn lift(n: i64, p: u64) -> u64 {
    (n as i128).rem_euclid(p as i128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.0, other.0) {
            (Repr::Int(a), Repr::Int(b)) => a == b,
            (Repr::Int(a), Repr::Mod { value, p }) | (Repr::Mod { value, p }, Repr::Int(a)) => {
                lift(a, p) == value
            }
            (Repr::Mod { value: a, p }, Repr::Mod { value: b, p: q }) => p == q && a == b,
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        self.combine(rhs, i64::checked_add, |a, b, p| ((a as u128 + b as u128) % p as u128) as u64)
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        self.combine(rhs, i64::checked_sub, |a, b, p| ((a as u128 + p as u128 - b as u128) % p as u128) as u64)
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        self.combine(rhs, i64::checked_mul, mul_mod)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self.combine(
            rhs,
            |a, b| {
                assert!(b != 0, "division by zero");
                assert!(a % b == 0, "inexact division of unbound F_p constants");
                Some(a / b)
            },
            |a, b, p| mul_mod(a, Fp::inverse_mod(b, p), p),
        )
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        match self.0 {
            Repr::Int(n) => Fp(Repr::Int(-n)),
            Repr::Mod { value, p } => Fp(Repr::Mod { value: (p - value) % p, p }),
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(Repr::Int(0))
    }
    fn is_zero(&self) -> bool {
        match self.0 {
            Repr::Int(n) => n == 0,
            Repr::Mod { value, .. } => value == 0,
        }
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(Repr::Int(1))
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Int(n) => write!(f, "{n}"),
            Repr::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Field for Fp {
    fn parse_in(kind: &FieldKind, text: &str) -> Result<Self, ScalarError> {
        let FieldKind::Prime(p) = *kind else {
            panic!("Fp cannot represent {kind}");
        };
        let (num, den) = split_fraction(text)?;
        let modulus = BigInt::from(p);
        let reduce = |x: &BigInt| x.mod_floor(&modulus).to_u64().expect("residue fits u64");
        let (num, den) = (reduce(&num), reduce(&den));
        if den == 0 {
            return Err(ScalarError::ZeroDenominator(text.to_string()));
        }
        Ok(Fp(Repr::Mod { value: mul_mod(num, Fp::inverse_mod(den, p), p), p }))
    }

    fn from_i64_in(kind: &FieldKind, n: i64) -> Self {
        match *kind {
            FieldKind::Prime(p) => Fp::new(n, p),
            FieldKind::Rational => panic!("Fp cannot represent Q"),
        }
    }

    fn render(&self, kind: &FieldKind) -> String {
        match *kind {
            FieldKind::Prime(p) => self.bind(p).to_string(),
            FieldKind::Rational => self.to_string(),
        }
    }

    fn supports(kind: &FieldKind) -> bool {
        matches!(kind, FieldKind::Prime(_))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        Rational::parse_in(&FieldKind::Rational, s).unwrap()
    }

    #[test]
    fn rationals_are_normalized() {
        let x = q("6/-4");
        assert_eq!(x.render(&FieldKind::Rational), "-3/2");
        assert_eq!(q("4/2").render(&FieldKind::Rational), "2");
        assert_eq!(q(" 0/7 ").render(&FieldKind::Rational), "0");
    }

    #[test]
    fn rational_parse_errors() {
        let k = FieldKind::Rational;
        assert_eq!(Rational::parse_in(&k, "1/0"), Err(ScalarError::ZeroDenominator("1/0".into())));
        assert!(matches!(Rational::parse_in(&k, "x"), Err(ScalarError::Malformed(_))));
        assert_eq!(Rational::parse_in(&k, ""), Err(ScalarError::Empty));
    }

    #[test]
    fn prime_field_arithmetic() {
        let k = FieldKind::prime(7).unwrap();
        let a = Fp::parse_in(&k, "3").unwrap();
        let b = Fp::parse_in(&k, "5").unwrap();
        assert_eq!((a + b).residue(), Some(1));
        assert_eq!((a * b).residue(), Some(1));
        assert_eq!((a - b).residue(), Some(5));
        assert_eq!((a / b).residue(), Some(2));
        assert_eq!((-a).residue(), Some(4));
        assert_eq!(Fp::parse_in(&k, "1/2").unwrap().residue(), Some(4));
        assert_eq!(Fp::parse_in(&k, "-1").unwrap().render(&k), "6");
        assert_eq!(Fp::parse_in(&k, "1/7"), Err(ScalarError::ZeroDenominator("1/7".into())));
    }

    #[test]
    fn unbound_constants_adopt_modulus() {
        let k = FieldKind::prime(5).unwrap();
        let two = Fp::one() + Fp::one();
        assert_eq!(two.modulus(), None);
        let x = Fp::from_i64_in(&k, 3);
        assert_eq!((two * x).residue(), Some(1));
        assert_eq!(Fp::from_i64_in(&k, 10), Fp::zero());
        assert!((Fp::from_i64_in(&k, 5)).is_zero());
        assert_eq!(Fp::new(-1, 5).render(&k), "4");
    }

    #[test]
    fn primality() {
        assert!(FieldKind::prime(2).is_ok());
        assert!(FieldKind::prime(65537).is_ok());
        assert_eq!(FieldKind::prime(1), Err(ScalarError::NotPrime(1)));
        assert_eq!(FieldKind::prime(91), Err(ScalarError::NotPrime(91)));
    }
}
