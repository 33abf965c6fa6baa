//! Exact numbers of the form `a + b·√m` with rational `a`, `b`.
//!
//! A problem instance lives in a single real quadratic field `Q(√m)`; purely
//! rational values carry `m = 0` and combine freely with values of any field.
//! Mixing two different non-trivial fields is a programming error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{Reciprocal, Square};
use malachite_base::num::conversion::traits::RoundingFrom;
use malachite_base::rounding_modes::RoundingMode;
use malachite_q::Rational;
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: Rational,
    b: Rational,
    /// `0` marks a rational-only value.
    m: u32,
}

pub fn is_squarefree(m: u32) -> bool {
    if m < 2 {
        return false;
    }
    let mut k = 2u32;
    while k.saturating_mul(k) <= m {
        if m % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

fn join_fields(m1: u32, m2: u32) -> u32 {
    match (m1, m2) {
        (0, m) | (m, 0) => m,
        (x, y) if x == y => x,
        (x, y) => panic!("scalars from different quadratic fields: sqrt({x}) and sqrt({y})"),
    }
}

impl Scalar {
    fn canonical(a: Rational, b: Rational, m: u32) -> Self {
        if b == 0u32 || m == 0 {
            debug_assert!(m != 0 || b == 0u32);
            Scalar { a, b: Rational::from(0u32), m: 0 }
        } else {
            Scalar { a, b, m }
        }
    }

    /// `a + b·√m`; fails when `b ≠ 0` and `m` is not a squarefree integer ≥ 2.
    pub fn new(a: Rational, b: Rational, m: u32) -> Result<Self> {
        if b != 0u32 && !is_squarefree(m) {
            return Err(Error::InvalidInput(format!(
                "radicand {m} is not a squarefree integer >= 2"
            )));
        }
        Ok(Self::canonical(a, b, m))
    }

    pub fn zero() -> Self {
        Scalar { a: Rational::from(0u32), b: Rational::from(0u32), m: 0 }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Scalar { a: Rational::from(v), b: Rational::from(0u32), m: 0 }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar { a: Rational::from_signeds(num, den), b: Rational::from(0u32), m: 0 }
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::from(0u32), m: 0 }
    }

    /// `√m`.
    pub fn sqrt(m: u32) -> Self {
        assert!(is_squarefree(m), "sqrt({m}) is not a quadratic irrational");
        Scalar { a: Rational::from(0u32), b: Rational::from(1u32), m }
    }

    /// `p + q·√m` with integer coefficients.
    pub fn quadratic(p: i64, q: i64, m: u32) -> Self {
        if q == 0 {
            return Self::from_int(p);
        }
        Self::new(Rational::from(p), Rational::from(q), m).expect("valid radicand")
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// Radicand of the field this value lives in, `None` when rational.
    pub fn field(&self) -> Option<u32> {
        (self.m != 0).then_some(self.m)
    }

    pub fn is_rational(&self) -> bool {
        self.m == 0
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0 && self.a == 0u32
    }

    pub fn is_one(&self) -> bool {
        self.m == 0 && self.a == 1u32
    }

    /// Exact sign of `a + b√m` as -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        let sa = rational_sign(&self.a);
        if self.m == 0 {
            return sa;
        }
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: the larger magnitude wins
        let a2 = (&self.a).square();
        let b2m = (&self.b).square() * Rational::from(self.m);
        match a2.cmp(&b2m) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; zero is a degenerate input.
    pub fn inv(&self) -> Result<Scalar> {
        if self.sign() == 0 {
            return Err(Error::Degenerate("division by zero".into()));
        }
        if self.m == 0 {
            return Ok(Scalar::from_rational((&self.a).reciprocal()));
        }
        let norm = (&self.a).square() - (&self.b).square() * Rational::from(self.m);
        let inv_norm = norm.reciprocal();
        Ok(Scalar::canonical(&self.a * &inv_norm, -(&self.b * &inv_norm), self.m))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.inv()?)
    }

    pub fn to_f64(&self) -> f64 {
        let a = f64::rounding_from(&self.a, RoundingMode::Nearest).0;
        if self.m == 0 {
            return a;
        }
        let b = f64::rounding_from(&self.b, RoundingMode::Nearest).0;
        a + b * f64::from(self.m).sqrt()
    }

    /// Compact text form accepted by [`FromStr`]: `3`, `-1/2`, `3-2sqrt2`, `1/2sqrt2`.
    pub fn to_text(&self) -> String {
        if self.m == 0 {
            return self.a.to_string();
        }
        let surd = if self.b == 1u32 {
            format!("sqrt{}", self.m)
        } else if self.b == -1i32 {
            format!("-sqrt{}", self.m)
        } else {
            format!("{}sqrt{}", self.b, self.m)
        };
        if self.a == 0u32 {
            surd
        } else if surd.starts_with('-') {
            format!("{}{}", self.a, surd)
        } else {
            format!("{}+{}", self.a, surd)
        }
    }
}

fn rational_sign(r: &Rational) -> i8 {
    match r.partial_cmp(&0u32) {
        Some(Ordering::Greater) => 1,
        Some(Ordering::Less) => -1,
        _ => 0,
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<Rational> for Scalar {
    fn from(v: Rational) -> Self {
        Scalar::from_rational(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if rhs.m == 0 && self.m == 0 {
            return Scalar::from_rational(&self.a + &rhs.a);
        }
        let m = join_fields(self.m, rhs.m);
        Scalar::canonical(&self.a + &rhs.a, &self.b + &rhs.b, m)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if rhs.m == 0 && self.m == 0 {
            return Scalar::from_rational(&self.a - &rhs.a);
        }
        let m = join_fields(self.m, rhs.m);
        Scalar::canonical(&self.a - &rhs.a, &self.b - &rhs.b, m)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self.m, rhs.m) {
            (0, 0) => Scalar::from_rational(&self.a * &rhs.a),
            (0, m) => Scalar::canonical(&self.a * &rhs.a, &self.a * &rhs.b, m),
            (m, 0) => Scalar::canonical(&self.a * &rhs.a, &self.b * &rhs.a, m),
            (m1, m2) => {
                let m = join_fields(m1, m2);
                let a = &self.a * &rhs.a + &self.b * &rhs.b * Rational::from(m);
                let b = &self.a * &rhs.b + &self.b * &rhs.a;
                Scalar::canonical(a, b, m)
            }
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] for fallible input.
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, m: self.m }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, m: self.m }
    }
}

macro_rules! forward_binop {
    ($Tr:ident, $f:ident) => {
        impl $Tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $Tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $f(self, rhs: &'a Scalar) -> Scalar {
                (&self).$f(rhs)
            }
        }
        impl<'a> $Tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $f(self, rhs: Scalar) -> Scalar {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.m == 0 && other.m == 0 {
            return self.a.cmp(&other.a);
        }
        (other - self).sign().cmp(&0).reverse()
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 0 {
            return write!(f, "{}", self.a);
        }
        let (sign, mag) = if self.b < 0u32 { ("-", -&self.b) } else { ("+", self.b.clone()) };
        let coef = if mag == 1u32 { String::new() } else { mag.to_string() };
        if self.a == 0u32 {
            let lead = if sign == "-" { "-" } else { "" };
            write!(f, "{lead}{coef}√{}", self.m)
        } else {
            write!(f, "{} {sign} {coef}√{}", self.a, self.m)
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() || s == "+" {
        return Ok(Rational::from(1u32));
    }
    if s == "-" {
        return Ok(Rational::from(-1i32));
    }
    let s = s.strip_prefix('+').unwrap_or(s);
    Rational::from_str(s).map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.replace('√', "sqrt").replace('*', "");
        if s.is_empty() {
            return Err(Error::InvalidInput("empty scalar".into()));
        }
        let Some(pos) = s.find("sqrt") else {
            return Ok(Scalar::from_rational(parse_rational(&s)?));
        };
        let tail = &s[pos + 4..];
        let bad = || Error::InvalidInput(format!("bad radicand in `{text}`"));
        let (radicand_text, rest) = match tail.strip_prefix('(') {
            Some(t) => t.split_once(')').ok_or_else(bad)?,
            None => tail.split_at(tail.find(|c: char| !c.is_ascii_digit()).unwrap_or(tail.len())),
        };
        let radicand: u32 = radicand_text.parse().map_err(|_| bad())?;
        // an optional `/q` after the surd divides its coefficient, and a
        // trailing signed rational is allowed when nothing precedes the surd
        let cut = rest.find(['+', '-']).unwrap_or(rest.len());
        let (div_text, addend_text) = rest.split_at(cut);
        let divisor = match div_text.strip_prefix('/') {
            Some(q) => Rational::from_str(q).map_err(|_| bad())?,
            None if div_text.is_empty() => Rational::from(1u32),
            None => return Err(bad()),
        };
        if divisor == 0u32 {
            return Err(Error::InvalidInput(format!("zero denominator in `{text}`")));
        }
        let head = &s[..pos];
        // split `head` into rational part and the signed coefficient of the surd
        let split = head
            .char_indices()
            .skip(1)
            .filter(|(i, c)| (*c == '+' || *c == '-') && !head[..*i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (mut a, b) = match split {
            Some(i) => (parse_rational(&head[..i])?, parse_rational(&head[i..])?),
            None => (Rational::from(0u32), parse_rational(head)?),
        };
        if !addend_text.is_empty() {
            if split.is_some() {
                return Err(bad());
            }
            let addend = addend_text.strip_prefix('+').unwrap_or(addend_text);
            a = Rational::from_str(addend).map_err(|_| bad())?;
        }
        Scalar::new(a, b / divisor, radicand)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(if self.m == 0 { 1 } else { 3 }))?;
        map.serialize_entry("a", &self.a.to_string())?;
        if self.m != 0 {
            map.serialize_entry("b", &self.b.to_string())?;
            map.serialize_entry("m", &self.m)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRepr {
    Object {
        a: RationalRepr,
        #[serde(default)]
        b: Option<RationalRepr>,
        #[serde(default)]
        m: Option<u32>,
    },
    Text(String),
    Int(i64),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalRepr {
    Text(String),
    Int(i64),
}

impl RationalRepr {
    fn into_rational(self) -> Result<Rational> {
        match self {
            RationalRepr::Text(s) => parse_rational(&s),
            RationalRepr::Int(v) => Ok(Rational::from(v)),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(deserializer)?;
        let value = match repr {
            ScalarRepr::Int(v) => Ok(Scalar::from_int(v)),
            ScalarRepr::Text(s) => s.parse(),
            ScalarRepr::Object { a, b, m } => (|| {
                let a = a.into_rational()?;
                let b = match b {
                    Some(b) => b.into_rational()?,
                    None => Rational::from(0u32),
                };
                if b != 0u32 && m.is_none() {
                    return Err(Error::InvalidInput("irrational part without radicand".into()));
                }
                Scalar::new(a, b, m.unwrap_or(0))
            })(),
        };
        value.map_err(de::Error::custom)
    }
}
