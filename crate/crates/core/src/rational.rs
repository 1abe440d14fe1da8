//! Exact rationals and orbifold multiplicities.
//!
//! Every numeric quantity that feeds a verdict is a [`Rational`]. The textual
//! form is `p/q` in lowest terms, or just `p` when the denominator is one.

use std::fmt;
use std::iter::Sum;
use std::num::NonZeroU64;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Arbitrary-precision rational, always normalized (lowest terms, positive
/// denominator).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn pow(&self, exp: i32) -> Self {
        Rational(num_traits::Pow::pow(&self.0, exp))
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Smallest integer strictly greater than `self`.
    pub fn next_integer_above(&self) -> BigInt {
        self.0.floor().to_integer() + 1
    }

    /// Lossy conversion, only for the labelled approximate columns.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Decimal rendering with six significant digits.
    pub fn approx(&self) -> String {
        let x = self.to_f64();
        if x == 0.0 {
            return "0".to_string();
        }
        let exp = x.abs().log10().floor() as i32;
        if !(-5..6).contains(&exp) {
            return format!("{:.5e}", x);
        }
        let decimals = (5 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let invalid = || ParseRationalError::Invalid(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let valid_int = |t: &str| {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(num) || !valid_int(den) {
            return Err(invalid());
        }
        let n: BigInt = num.parse().map_err(|_| invalid())?;
        let d: BigInt = den.parse().map_err(|_| invalid())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(n, d)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Ok(Rational::from(n)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Rational {
            fn from(n: $t) -> Self {
                Rational::from_integer(n)
            }
        }
    )*};
}
from_int!(i32, i64, u32, u64, i128, usize);

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        self.0 -= rhs.0;
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Shorthand for `Rational::new(n, d)` with machine integers.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseMultiplicityError {
    #[error("multiplicity must be a positive integer or `inf`, got `{0}`")]
    Invalid(String),
    #[error("multiplicity must be at least 1")]
    Zero,
}

/// Ramification multiplicity of a boundary component: a positive integer or
/// infinity (the logarithmic case).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Multiplicity {
    Finite(NonZeroU64),
    Infinite,
}

impl Multiplicity {
    pub fn finite(m: u64) -> Result<Self, ParseMultiplicityError> {
        NonZeroU64::new(m)
            .map(Multiplicity::Finite)
            .ok_or(ParseMultiplicityError::Zero)
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    pub fn value(&self) -> Option<u64> {
        match self {
            Multiplicity::Finite(m) => Some(m.get()),
            Multiplicity::Infinite => None,
        }
    }

    /// `1/m`, with `1/inf = 0`.
    pub fn reciprocal(&self) -> Rational {
        reciprocal_mult(*self)
    }

    /// The boundary coefficient `1 - 1/m`.
    pub fn coefficient(&self) -> Rational {
        Rational::one() - self.reciprocal()
    }
}

pub fn reciprocal_mult(m: Multiplicity) -> Rational {
    match m {
        Multiplicity::Finite(m) => Rational::new(1, m.get()),
        Multiplicity::Infinite => Rational::zero(),
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(m) => write!(f, "{m}"),
            Multiplicity::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Multiplicity {
    type Err = ParseMultiplicityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Multiplicity::Infinite),
            _ => {
                let m: u64 = t
                    .parse()
                    .map_err(|_| ParseMultiplicityError::Invalid(t.to_string()))?;
                Multiplicity::finite(m)
            }
        }
    }
}

impl Serialize for Multiplicity {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Multiplicity::Finite(m) => serializer.serialize_u64(m.get()),
            Multiplicity::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Multiplicity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(n) if n >= 1 => Multiplicity::finite(n as u64).map_err(serde::de::Error::custom),
            Repr::Int(n) => Err(serde::de::Error::custom(ParseMultiplicityError::Invalid(
                n.to_string(),
            ))),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(v: u64) -> Multiplicity {
        Multiplicity::finite(v).unwrap()
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal_mult(m(5)), q(1, 5));
        assert_eq!(reciprocal_mult(Multiplicity::Infinite), Rational::zero());
        assert_eq!(reciprocal_mult(m(1)), Rational::one());
    }

    #[test]
    fn zero_multiplicity_rejected() {
        assert_eq!(Multiplicity::finite(0), Err(ParseMultiplicityError::Zero));
        assert!("0".parse::<Multiplicity>().is_err());
        assert!("-3".parse::<Multiplicity>().is_err());
        assert_eq!("inf".parse::<Multiplicity>(), Ok(Multiplicity::Infinite));
    }

    #[test]
    fn render_and_parse() {
        assert_eq!(q(6, 4761).to_string(), "2/1587");
        assert_eq!(q(-14, 4).to_string(), "-7/2");
        assert_eq!(Rational::from(3).to_string(), "3");
        assert_eq!("75/2".parse::<Rational>().unwrap(), q(75, 2));
        assert_eq!("-6/4".parse::<Rational>().unwrap(), q(-3, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("/3".parse::<Rational>().is_err());
    }

    #[test]
    fn approx_six_significant_digits() {
        assert_eq!(q(-7, 2).approx(), "-3.5");
        assert_eq!(q(1, 3).approx(), "0.333333");
        assert_eq!(q(6, 4761).approx(), "0.00126024");
        assert_eq!(Rational::from(600).approx(), "600");
    }

    proptest! {
        #[test]
        fn parse_render_round_trip(n in -1_000_000i64..1_000_000, d in 1i64..1_000_000) {
            let x = q(n, d);
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }

        #[test]
        fn reciprocal_monotone(a in 1u64..10_000, b in 1u64..10_000) {
            prop_assume!(a < b);
            prop_assert!(m(a).reciprocal() > m(b).reciprocal());
            prop_assert!(m(b).reciprocal() > Multiplicity::Infinite.reciprocal());
        }
    }
}
