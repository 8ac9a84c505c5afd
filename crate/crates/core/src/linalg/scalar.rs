//! Exact scalars: rationals, optionally extended by one square root.

use std::fmt;
use std::hash::Hash;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value `a + b·√d` with `a, b` rational and `d` a square-free integer.
///
/// Pure rationals carry `d = 1` and `b = 0`; the representation is kept
/// normalized so that structural equality is numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    re: BigRational,
    surd: BigRational,
    radicand: i64,
}

fn merge_radicands(a: i64, b: i64) -> i64 {
    if a == 1 || a == b {
        b
    } else if b == 1 {
        a
    } else {
        panic!("arithmetic across quadratic extensions sqrt({a}) and sqrt({b})")
    }
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Scalar {
        Scalar {
            re: q,
            surd: BigRational::zero(),
            radicand: 1,
        }
    }

    /// `a + b·√d`; `d` must be square-free and different from 0 and 1.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Result<Scalar> {
        if d == 0 || d == 1 || !is_square_free(d) {
            return Err(Error::Parse(format!(
                "radicand {d} is not a square-free integer other than 0, 1"
            )));
        }
        Ok(Scalar {
            re: a,
            surd: b,
            radicand: d,
        }
        .normalized())
    }

    fn normalized(mut self) -> Scalar {
        if self.surd.is_zero() {
            self.radicand = 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.surd.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.surd.is_zero() && self.re.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.re)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.re
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.surd
    }

    /// The radicand `d` for irrational values, `None` for rationals.
    pub fn radicand(&self) -> Option<i64> {
        (!self.is_rational()).then_some(self.radicand)
    }

    /// Whether `self` and `other` can be combined arithmetically.
    pub fn compatible(&self, other: &Scalar) -> bool {
        self.radicand == 1 || other.radicand == 1 || self.radicand == other.radicand
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Scalar::from_rational(self.re.recip()));
        }
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let norm = &self.re * &self.re - &self.surd * &self.surd * d;
        Some(Scalar {
            re: &self.re / &norm,
            surd: -(&self.surd / &norm),
            radicand: self.radicand,
        })
    }

    /// Square root of a rational as an element of `ℚ` or `ℚ(√d)`.
    pub fn sqrt_rational(q: &BigRational) -> Result<Scalar> {
        if q.is_zero() {
            return Ok(Scalar::zero());
        }
        // √(p/q) = √(p·q) / q
        let prod = q.numer() * q.denom();
        let (root, free) = square_free_split(&prod)?;
        let coef = BigRational::new(root, q.denom().clone());
        if free.is_one() {
            return Ok(Scalar::from_rational(coef));
        }
        let d = free
            .to_i64()
            .ok_or_else(|| Error::ExtensionTower(format!("radicand {free} exceeds 64 bits")))?;
        Ok(Scalar {
            re: BigRational::zero(),
            surd: coef,
            radicand: d,
        })
    }

    /// Multiply every denominator away: the least common multiple of the
    /// denominators of both components.
    pub fn denominator_lcm(&self) -> BigInt {
        self.re.denom().lcm(self.surd.denom())
    }

    pub fn scale_int(&self, k: &BigInt) -> Scalar {
        let k = BigRational::from_integer(k.clone());
        Scalar {
            re: &self.re * &k,
            surd: &self.surd * &k,
            radicand: self.radicand,
        }
        .normalized()
    }

    pub fn square(&self) -> Scalar {
        self * self
    }
}

/// Splits `n` as `s²·f` with `f` square-free (sign kept in `f`).
///
/// Trial division runs up to `10⁶`; a remaining cofactor is tested for being
/// a perfect square and otherwise treated as square-free.
pub fn square_free_split(n: &BigInt) -> Result<(BigInt, BigInt)> {
    if n.is_zero() {
        return Ok((BigInt::zero(), BigInt::one()));
    }
    let sign = if n.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let mut rest = n.abs();
    let mut root = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u32);
    while &p * &p <= rest && p <= limit {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            root *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !rest.is_one() {
        let r = rest.sqrt();
        if &r * &r == rest {
            root *= r;
        } else {
            free *= rest;
        }
    }
    Ok((root, free * sign))
}

fn is_square_free(d: i64) -> bool {
    match square_free_split(&BigInt::from(d)) {
        Ok((root, _)) => root.is_one(),
        Err(_) => false,
    }
}

fn add_impl(a: &Scalar, b: &Scalar) -> Scalar {
    let radicand = merge_radicands(a.radicand, b.radicand);
    Scalar {
        re: &a.re + &b.re,
        surd: &a.surd + &b.surd,
        radicand,
    }
    .normalized()
}

fn sub_impl(a: &Scalar, b: &Scalar) -> Scalar {
    let radicand = merge_radicands(a.radicand, b.radicand);
    Scalar {
        re: &a.re - &b.re,
        surd: &a.surd - &b.surd,
        radicand,
    }
    .normalized()
}

fn mul_impl(a: &Scalar, b: &Scalar) -> Scalar {
    if a.is_rational() && b.is_rational() {
        return Scalar::from_rational(&a.re * &b.re);
    }
    let radicand = merge_radicands(a.radicand, b.radicand);
    let d = BigRational::from_integer(BigInt::from(radicand));
    Scalar {
        re: &a.re * &b.re + &a.surd * &b.surd * d,
        surd: &a.re * &b.surd + &a.surd * &b.re,
        radicand,
    }
    .normalized()
}

fn div_impl(a: &Scalar, b: &Scalar) -> Scalar {
    let inv = b.inv().expect("division by zero scalar");
    mul_impl(a, &inv)
}

macro_rules! binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl<'a, 'b> $trait<&'b Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                $imp(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(&self, &rhs)
            }
        }
        impl<'b> $trait<&'b Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'b Scalar) -> Scalar {
                $imp(&self, rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $imp(self, &rhs)
            }
        }
    };
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = add_impl(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = sub_impl(self, rhs);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = mul_impl(self, rhs);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            surd: -self.surd,
            radicand: self.radicand,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -(self.clone())
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

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Scalar {
        Scalar::from_rational(q)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let surd = if self.surd.is_one() {
            String::new()
        } else if (-&self.surd).is_one() {
            "-".to_string()
        } else {
            format!("{}*", fmt_rational(&self.surd))
        };
        let root = format!("{surd}sqrt({})", self.radicand);
        if self.re.is_zero() {
            f.write_str(&root)
        } else if root.starts_with('-') {
            write!(f, "{}{}", fmt_rational(&self.re), root)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), root)
        }
    }
}

/// Parses `"p"` or `"p/q"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        parse_rational(s).map(Scalar::from_rational)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_rational() {
            serializer.serialize_str(&fmt_rational(&self.re))
        } else {
            let mut st = serializer.serialize_struct("Scalar", 3)?;
            st.serialize_field("a", &fmt_rational(&self.re))?;
            st.serialize_field("b", &fmt_rational(&self.surd))?;
            st.serialize_field("d", &self.radicand)?;
            st.end()
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalWire {
    Text(String),
    Int(i64),
}

impl RationalWire {
    fn parse(self) -> Result<BigRational> {
        match self {
            RationalWire::Text(s) => parse_rational(&s),
            RationalWire::Int(n) => Ok(BigRational::from_integer(BigInt::from(n))),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarWire {
    Plain(RationalWire),
    Quadratic {
        a: RationalWire,
        b: RationalWire,
        d: i64,
    },
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Scalar, D::Error> {
        let wire = ScalarWire::deserialize(deserializer)?;
        let out = match wire {
            ScalarWire::Plain(q) => q.parse().map(Scalar::from_rational),
            ScalarWire::Quadratic { a, b, d } => {
                let a = a.parse().map_err(de::Error::custom)?;
                let b = b.parse().map_err(de::Error::custom)?;
                if b.is_zero() {
                    Ok(Scalar::from_rational(a))
                } else {
                    Scalar::quadratic(a, b, d)
                }
            }
        };
        out.map_err(de::Error::custom)
    }
}

/// Common radicand of a collection of scalars, failing on a mix.
pub fn common_radicand<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Result<Option<i64>> {
    let mut found: Option<i64> = None;
    for x in items {
        if let Some(d) = x.radicand() {
            match found {
                None => found = Some(d),
                Some(e) if e != d => return Err(Error::MixedExtension(e, d)),
                _ => {}
            }
        }
    }
    Ok(found)
}
