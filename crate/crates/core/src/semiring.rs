//! Semirings and their partial star.
//!
//! Every other module is generic over [`Semiring`]. The concrete instances
//! keep arithmetic exact: naturals and integers are arbitrary precision,
//! rationals are reduced fractions, and the two "extended" semirings add a
//! single symbolic element (`-inf` for max-plus, `inf` for the completed
//! positive reals).
//!
//! The star is the solution of the self-reproducing equations
//! `y = 1 + a·y = 1 + y·a`. Which elements have a star is decided per
//! instance:
//!
//! | semiring  | starrable                | value            |
//! |-----------|--------------------------|------------------|
//! | `bool`    | everything               | `1`              |
//! | `nat`     | `0` only                 | `1`              |
//! | `int`     | `0` only                 | `1`              |
//! | `rat`     | `a != 1`                 | `1/(1-a)`        |
//! | `maxplus` | `a <= 0` (incl. `-inf`)  | `0`              |
//! | `cpos`    | everything               | `1/(1-a)` or inf |

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Runtime tag naming a semiring instance.
///
/// This is the handle selected by `--semiring` on the command line and by
/// the `"semiring"` field of the JSON formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SemiringKind {
    Boolean,
    Natural,
    Integer,
    Rational,
    MaxPlus,
    CompletedPositive,
}

impl SemiringKind {
    pub const ALL: [SemiringKind; 6] = [
        SemiringKind::Boolean,
        SemiringKind::Natural,
        SemiringKind::Integer,
        SemiringKind::Rational,
        SemiringKind::MaxPlus,
        SemiringKind::CompletedPositive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SemiringKind::Boolean => "bool",
            SemiringKind::Natural => "nat",
            SemiringKind::Integer => "int",
            SemiringKind::Rational => "rat",
            SemiringKind::MaxPlus => "maxplus",
            SemiringKind::CompletedPositive => "cpos",
        }
    }

    pub fn is_commutative(self) -> bool {
        true
    }

    pub fn is_field(self) -> bool {
        self == SemiringKind::Rational
    }

    pub fn has_total_star(self) -> bool {
        matches!(
            self,
            SemiringKind::Boolean | SemiringKind::CompletedPositive
        )
    }
}

impl fmt::Display for SemiringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SemiringKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SemiringKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownSemiring(s.to_string()))
    }
}

/// An exact semiring.
///
/// Implementations must satisfy the semiring axioms: `(K, add, zero)` is a
/// commutative monoid, `(K, mul, one)` is a monoid, `mul` distributes over
/// `add` on both sides and `zero` annihilates.
pub trait Semiring:
    Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    const KIND: SemiringKind;

    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;

    /// Partial star; see the module table for the starrable elements.
    fn star(&self) -> Result<Self>;

    /// Parses the literal syntax used by expressions and JSON files.
    fn parse(text: &str) -> Result<Self>;

    /// The element `1 + 1 + ... + 1` (`n` times).
    fn from_count(n: u64) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn sum<'a, I>(iter: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        iter.into_iter().fold(Self::zero(), |acc, x| acc.add(x))
    }

    fn product<'a, I>(iter: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        iter.into_iter().fold(Self::one(), |acc, x| acc.mul(x))
    }
}

/// Semirings with additive inverses and inverses of nonzero elements.
pub trait Field: Semiring {
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

fn not_starrable<K: Semiring>(a: &K) -> Error {
    Error::NotStarrable {
        semiring: K::KIND.name(),
        value: a.to_string(),
    }
}

fn bad_scalar(kind: SemiringKind, text: &str) -> Error {
    Error::BadScalar {
        semiring: kind.name(),
        text: text.to_string(),
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    // Ratio's parser panics on a zero denominator in some versions.
    if let Some((_, den)) = t.split_once('/') {
        if den.trim().parse::<BigInt>().ok()?.is_zero() {
            return None;
        }
    }
    BigRational::from_str(t).ok()
}

/// The Boolean semiring `({0,1}, or, and)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Boolean(pub bool);

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for Boolean {
    const KIND: SemiringKind = SemiringKind::Boolean;

    fn zero() -> Self {
        Boolean(false)
    }
    fn one() -> Self {
        Boolean(true)
    }
    fn add(&self, rhs: &Self) -> Self {
        Boolean(self.0 || rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Boolean(self.0 && rhs.0)
    }
    fn star(&self) -> Result<Self> {
        Ok(Boolean(true))
    }
    fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "true" | "1" => Ok(Boolean(true)),
            "false" | "0" => Ok(Boolean(false)),
            _ => Err(bad_scalar(Self::KIND, text)),
        }
    }
    fn from_count(n: u64) -> Self {
        Boolean(n > 0)
    }
}

/// Natural numbers, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Natural(pub BigUint);

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for Natural {
    fn from(n: u64) -> Self {
        Natural(BigUint::from(n))
    }
}

impl Semiring for Natural {
    const KIND: SemiringKind = SemiringKind::Natural;

    fn zero() -> Self {
        Natural(BigUint::zero())
    }
    fn one() -> Self {
        Natural(BigUint::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        Natural(&self.0 + &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Natural(&self.0 * &rhs.0)
    }
    fn star(&self) -> Result<Self> {
        if self.0.is_zero() {
            Ok(Self::one())
        } else {
            Err(not_starrable(self))
        }
    }
    fn parse(text: &str) -> Result<Self> {
        BigUint::from_str(text.trim())
            .map(Natural)
            .map_err(|_| bad_scalar(Self::KIND, text))
    }
    fn from_count(n: u64) -> Self {
        Natural::from(n)
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Integers, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Integer(pub BigInt);

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<i64> for Integer {
    fn from(n: i64) -> Self {
        Integer(BigInt::from(n))
    }
}

impl Semiring for Integer {
    const KIND: SemiringKind = SemiringKind::Integer;

    fn zero() -> Self {
        Integer(BigInt::zero())
    }
    fn one() -> Self {
        Integer(BigInt::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        Integer(&self.0 + &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Integer(&self.0 * &rhs.0)
    }
    fn star(&self) -> Result<Self> {
        if self.0.is_zero() {
            Ok(Self::one())
        } else {
            Err(not_starrable(self))
        }
    }
    fn parse(text: &str) -> Result<Self> {
        BigInt::from_str(text.trim())
            .map(Integer)
            .map_err(|_| bad_scalar(Self::KIND, text))
    }
    fn from_count(n: u64) -> Self {
        Integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// Exact rationals; the only field among the instances.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Semiring for Rational {
    const KIND: SemiringKind = SemiringKind::Rational;

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn star(&self) -> Result<Self> {
        if self.0.is_one() {
            return Err(not_starrable(self));
        }
        Ok(Rational((BigRational::one() - &self.0).recip()))
    }
    fn parse(text: &str) -> Result<Self> {
        parse_rational(text)
            .map(Rational)
            .ok_or_else(|| bad_scalar(Self::KIND, text))
    }
    fn from_count(n: u64) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl Field for Rational {
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Option<Self> {
        (!self.0.is_zero()).then(|| Rational(self.0.recip()))
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
}

/// `([-inf, inf), max, +)` over exact rationals; `None` is `-inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaxPlus(pub Option<BigRational>);

impl MaxPlus {
    pub fn finite(n: i64) -> Self {
        MaxPlus(Some(BigRational::from_integer(n.into())))
    }

    pub fn neg_infinity() -> Self {
        MaxPlus(None)
    }
}

impl fmt::Display for MaxPlus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Some(x) => write!(f, "{x}"),
            None => f.write_str("-inf"),
        }
    }
}

impl Semiring for MaxPlus {
    const KIND: SemiringKind = SemiringKind::MaxPlus;

    fn zero() -> Self {
        MaxPlus(None)
    }
    fn one() -> Self {
        MaxPlus(Some(BigRational::zero()))
    }
    fn add(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (None, _) => rhs.clone(),
            (_, None) => self.clone(),
            (Some(a), Some(b)) => MaxPlus(Some(a.max(b).clone())),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        match (&self.0, &rhs.0) {
            (Some(a), Some(b)) => MaxPlus(Some(a + b)),
            _ => MaxPlus(None),
        }
    }
    fn star(&self) -> Result<Self> {
        match &self.0 {
            Some(a) if a.is_positive() => Err(not_starrable(self)),
            _ => Ok(Self::one()),
        }
    }
    fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "-inf" => Ok(MaxPlus(None)),
            t => parse_rational(t)
                .map(|x| MaxPlus(Some(x)))
                .ok_or_else(|| bad_scalar(Self::KIND, text)),
        }
    }
    fn from_count(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Self::one()
        }
    }
}

/// The completed positive reals `[0, inf]`, restricted to exact rationals
/// plus the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CompletedPositive {
    Finite(BigRational),
    Infinity,
}

impl CompletedPositive {
    pub fn new(numer: u64, denom: u64) -> Self {
        CompletedPositive::Finite(BigRational::new(numer.into(), denom.into()))
    }
}

impl fmt::Display for CompletedPositive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CompletedPositive::Finite(x) => write!(f, "{x}"),
            CompletedPositive::Infinity => f.write_str("inf"),
        }
    }
}

impl Semiring for CompletedPositive {
    const KIND: SemiringKind = SemiringKind::CompletedPositive;

    fn zero() -> Self {
        CompletedPositive::Finite(BigRational::zero())
    }
    fn one() -> Self {
        CompletedPositive::Finite(BigRational::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        use CompletedPositive::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a + b),
            _ => Infinity,
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        use CompletedPositive::*;
        match (self, rhs) {
            (Finite(a), Finite(b)) => Finite(a * b),
            (Finite(a), Infinity) | (Infinity, Finite(a)) if a.is_zero() => Self::zero(),
            _ => Infinity,
        }
    }
    fn star(&self) -> Result<Self> {
        match self {
            CompletedPositive::Finite(a) if *a < BigRational::one() => {
                Ok(CompletedPositive::Finite((BigRational::one() - a).recip()))
            }
            _ => Ok(CompletedPositive::Infinity),
        }
    }
    fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "inf" => Ok(CompletedPositive::Infinity),
            t => match parse_rational(t) {
                Some(x) if !x.is_negative() => Ok(CompletedPositive::Finite(x)),
                _ => Err(bad_scalar(Self::KIND, text)),
            },
        }
    }
    fn from_count(n: u64) -> Self {
        CompletedPositive::Finite(BigRational::from_integer(n.into()))
    }
}

/// A scalar tagged with its semiring, for call sites that only learn the
/// semiring at run time. Mixing tags is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Boolean(Boolean),
    Natural(Natural),
    Integer(Integer),
    Rational(Rational),
    MaxPlus(MaxPlus),
    CompletedPositive(CompletedPositive),
}

macro_rules! value_binop {
    ($self:ident, $rhs:ident, $op:ident) => {
        match ($self, $rhs) {
            (Value::Boolean(a), Value::Boolean(b)) => Ok(Value::Boolean(a.$op(b))),
            (Value::Natural(a), Value::Natural(b)) => Ok(Value::Natural(a.$op(b))),
            (Value::Integer(a), Value::Integer(b)) => Ok(Value::Integer(a.$op(b))),
            (Value::Rational(a), Value::Rational(b)) => Ok(Value::Rational(a.$op(b))),
            (Value::MaxPlus(a), Value::MaxPlus(b)) => Ok(Value::MaxPlus(a.$op(b))),
            (Value::CompletedPositive(a), Value::CompletedPositive(b)) => {
                Ok(Value::CompletedPositive(a.$op(b)))
            }
            _ => Err(Error::DomainMismatch {
                left: $self.kind().to_string(),
                right: $rhs.kind().to_string(),
            }),
        }
    };
}

impl Value {
    pub fn parse(kind: SemiringKind, text: &str) -> Result<Value> {
        Ok(match kind {
            SemiringKind::Boolean => Value::Boolean(Boolean::parse(text)?),
            SemiringKind::Natural => Value::Natural(Natural::parse(text)?),
            SemiringKind::Integer => Value::Integer(Integer::parse(text)?),
            SemiringKind::Rational => Value::Rational(Rational::parse(text)?),
            SemiringKind::MaxPlus => Value::MaxPlus(MaxPlus::parse(text)?),
            SemiringKind::CompletedPositive => {
                Value::CompletedPositive(CompletedPositive::parse(text)?)
            }
        })
    }

    pub fn kind(&self) -> SemiringKind {
        match self {
            Value::Boolean(_) => SemiringKind::Boolean,
            Value::Natural(_) => SemiringKind::Natural,
            Value::Integer(_) => SemiringKind::Integer,
            Value::Rational(_) => SemiringKind::Rational,
            Value::MaxPlus(_) => SemiringKind::MaxPlus,
            Value::CompletedPositive(_) => SemiringKind::CompletedPositive,
        }
    }

    pub fn add(&self, rhs: &Value) -> Result<Value> {
        value_binop!(self, rhs, add)
    }

    pub fn mul(&self, rhs: &Value) -> Result<Value> {
        value_binop!(self, rhs, mul)
    }

    pub fn star(&self) -> Result<Value> {
        Ok(match self {
            Value::Boolean(a) => Value::Boolean(a.star()?),
            Value::Natural(a) => Value::Natural(a.star()?),
            Value::Integer(a) => Value::Integer(a.star()?),
            Value::Rational(a) => Value::Rational(a.star()?),
            Value::MaxPlus(a) => Value::MaxPlus(a.star()?),
            Value::CompletedPositive(a) => Value::CompletedPositive(a.star()?),
        })
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Boolean(a) => a.fmt(f),
            Value::Natural(a) => a.fmt(f),
            Value::Integer(a) => a.fmt(f),
            Value::Rational(a) => a.fmt(f),
            Value::MaxPlus(a) => a.fmt(f),
            Value::CompletedPositive(a) => a.fmt(f),
        }
    }
}
