//! Gaussian rationals: complex numbers with arbitrary-precision rational
//! real and imaginary parts. This is the coefficient field of the whole
//! crate; every computation downstream stays exact because this type is.
//!
//! The text format is `a/b`, `a/b+c/d*i` or `a/b-c/d*i` with integer
//! shorthand (`3`, `-1/2+i`, `2*i`).

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// Exact complex scalar with rational parts, kept in canonical reduced form
/// by `BigRational` itself.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Self::new(BigRational::one(), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// |z|^2 as a rational; zero iff the scalar is zero.
    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sq();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Parses the crate's canonical scalar syntax.
    pub fn parse(src: &str) -> Result<Self> {
        src.parse()
    }
}

fn parse_ratio(s: &str) -> Result<BigRational> {
    let t = s.strip_prefix('+').unwrap_or(s);
    BigRational::from_str(t).map_err(|_| Error::BadScalar(s.to_string()))
}

/// Parses one signed term that ends in `i` (e.g. `+1/2*i`, `-i`, `i`, `3*i`).
fn parse_imag_term(s: &str) -> Result<BigRational> {
    let body = s.strip_suffix('i').ok_or_else(|| Error::BadScalar(s.to_string()))?;
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Ok(BigRational::one()),
        "-" => Ok(-BigRational::one()),
        other => parse_ratio(other),
    }
}

impl FromStr for GaussianRational {
    type Err = Error;

    fn from_str(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::BadScalar(src.to_string()));
        }
        // Split into at most two signed terms; the leading sign stays with
        // the first term.
        let mut split = None;
        for (idx, ch) in s.char_indices().skip(1) {
            if ch == '+' || ch == '-' {
                split = Some(idx);
                break;
            }
        }
        match split {
            Some(p) => {
                let (a, b) = s.split_at(p);
                if !b.ends_with('i') {
                    return Err(Error::BadScalar(src.to_string()));
                }
                Ok(Self::new(parse_ratio(a)?, parse_imag_term(b)?))
            }
            None => {
                if s.ends_with('i') {
                    Ok(Self::new(BigRational::zero(), parse_imag_term(&s)?))
                } else {
                    Ok(Self::new(parse_ratio(&s)?, BigRational::zero()))
                }
            }
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im_mag = self.im.abs();
        let istr = if im_mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", im_mag)
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}", istr)
            } else {
                write!(f, "{}", istr)
            }
        } else if self.im.is_negative() {
            write!(f, "{}-{}", self.re, istr)
        } else {
            write!(f, "{}+{}", self.re, istr)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
        impl $trait<GaussianRational> for &GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}
forward_binop!(Add, add);

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}
forward_binop!(Sub, sub);

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}
forward_binop!(Div, div);

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

/// n! as a scalar.
pub fn factorial(n: usize) -> GaussianRational {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    GaussianRational::new(BigRational::from_integer(acc), BigRational::zero())
}

/// Binomial coefficient C(n, k) as a scalar.
pub fn binomial(n: usize, k: usize) -> GaussianRational {
    if k > n {
        return GaussianRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n - j);
        den *= BigInt::from(j + 1);
    }
    GaussianRational::new(BigRational::new(num, den), BigRational::zero())
}

/// Falling factorial n (n-1) ... (n-k+1) as a scalar.
pub fn falling(n: usize, k: usize) -> GaussianRational {
    if k > n {
        return GaussianRational::zero();
    }
    let mut acc = BigInt::one();
    for j in 0..k {
        acc *= BigInt::from(n - j);
    }
    GaussianRational::new(BigRational::from_integer(acc), BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(s: &str) -> GaussianRational {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "3", "-3/2", "1/2+i", "-3/2+1/1*i", "2*i", "-i", "1-2/3*i"] {
            let v = gr(s);
            let back = gr(&v.to_string());
            assert_eq!(v, back, "round trip through {s:?}");
        }
    }

    #[test]
    fn canonical_display() {
        assert_eq!(gr("2/4").to_string(), "1/2");
        assert_eq!(gr("-3/2+1/1*i").to_string(), "-3/2+i");
        assert_eq!(gr("0+0*i").to_string(), "0");
    }

    #[test]
    fn field_ops() {
        let a = gr("1/2+i");
        let b = gr("-2+3/2*i");
        assert_eq!(&(&a + &b) - &b, a);
        let prod = &a * &b;
        assert_eq!(&prod / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), GaussianRational::one());
        assert_eq!(GaussianRational::i().pow(2), GaussianRational::from_int(-1));
    }

    #[test]
    fn combinatorial_helpers() {
        assert_eq!(factorial(5), GaussianRational::from_int(120));
        assert_eq!(binomial(5, 2), GaussianRational::from_int(10));
        assert_eq!(falling(5, 2), GaussianRational::from_int(20));
        assert_eq!(falling(1, 3), GaussianRational::zero());
    }

    #[test]
    fn bad_literals_rejected() {
        assert!(GaussianRational::parse("").is_err());
        assert!(GaussianRational::parse("1+2").is_err());
        assert!(GaussianRational::parse("x").is_err());
    }
}
