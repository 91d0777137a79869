//! Exact rational scalars.
//!
//! Every squared length, squared area and determinant in this crate is a
//! [`Scalar`]. Decisions (equal areas, zero volume, right angles) are made on
//! these values only, never on floating-point approximations.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Errors raised while building or inspecting a [`Scalar`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("invalid number {text:?}: unexpected {found} at position {position}")]
    Parse {
        text: String,
        position: usize,
        found: String,
    },
    #[error("square root of negative value {0}")]
    NegativeSquareRoot(Scalar),
    #[error("division by zero")]
    DivisionByZero,
}

/// An exact rational number kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Fails when `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Result<Self, ScalarError> {
        if den == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(BigRational::new(num, den)))
    }

    /// The exact value of a finite `f64` (a dyadic rational). `None` for NaN or infinities.
    pub fn from_f64_exact(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Scalar)
    }

    /// Parses a plain decimal literal (`"3"`, `"-0.25"`, `"12.5"`) exactly.
    ///
    /// Exponents, fractions and surrounding whitespace are rejected; the error
    /// names the zero-based character position of the first offending character.
    pub fn parse_decimal(text: &str) -> Result<Self, ScalarError> {
        let err = |position: usize, found: String| ScalarError::Parse {
            text: text.to_owned(),
            position,
            found,
        };
        let chars: Vec<char> = text.chars().collect();
        let mut pos = 0;
        let mut negative = false;
        if let Some(&c) = chars.first() {
            if c == '+' || c == '-' {
                negative = c == '-';
                pos = 1;
            }
        }
        let mut digits = String::new();
        let mut frac_len = 0usize;
        let mut int_digits = 0usize;
        let mut seen_point = false;
        while pos < chars.len() {
            let c = chars[pos];
            match c {
                '0'..='9' => {
                    digits.push(c);
                    if seen_point {
                        frac_len += 1;
                    } else {
                        int_digits += 1;
                    }
                }
                '.' if !seen_point => seen_point = true,
                _ => return Err(err(pos, format!("character {c:?}"))),
            }
            pos += 1;
        }
        if int_digits == 0 && frac_len == 0 {
            return Err(err(pos, "end of input (no digits)".to_owned()));
        }
        if seen_point && frac_len == 0 {
            return Err(err(pos, "end of input (no digits after '.')".to_owned()));
        }
        let mut num: BigInt = digits.parse().expect("digit string");
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac_len);
        Ok(Scalar(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
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

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn square(&self) -> Self {
        Scalar(&self.0 * &self.0)
    }

    pub fn recip(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(self.0.recip()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }

    /// The exact rational square root, if numerator and denominator are both
    /// perfect squares.
    pub fn perfect_square_root(&self) -> Result<Option<Scalar>, ScalarError> {
        if self.is_negative() {
            return Err(ScalarError::NegativeSquareRoot(self.clone()));
        }
        let exact_root = |n: &BigInt| {
            let r = n.sqrt();
            (&r * &r == *n).then_some(r)
        };
        match (exact_root(self.numer()), exact_root(self.denom())) {
            (Some(n), Some(d)) => Ok(Some(Scalar(BigRational::new(n, d)))),
            _ => Ok(None),
        }
    }

    /// Nearest `f64`. Very large or very small values saturate.
    pub fn to_f64(&self) -> f64 {
        if let Some(v) = self.0.to_f64() {
            if v.is_finite() {
                return v;
            }
        }
        // Fall back to a scaled division for operands beyond f64 range.
        let n = self.numer();
        let d = self.denom();
        let shift = n.bits() as i64 - d.bits() as i64;
        let (n, d) = if shift > 0 {
            (n.clone(), d << (shift as usize))
        } else {
            (n << ((-shift) as usize), d.clone())
        };
        let base = n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
        base * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// `sqrt(self)` in floating point; negative values give NaN.
    pub fn sqrt_f64(&self) -> f64 {
        self.to_f64().sqrt()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl fmt::Display for Scalar {
    /// `p` for integers, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts decimal literals and `p/q` fractions, so `Display` output parses back.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once('/') {
            None => Scalar::parse_decimal(s),
            Some((n, d)) => {
                let shift = |e: ScalarError, offset: usize| match e {
                    ScalarError::Parse {
                        position, found, ..
                    } => ScalarError::Parse {
                        text: s.to_owned(),
                        position: position + offset,
                        found,
                    },
                    other => other,
                };
                let num = Scalar::parse_decimal(n).map_err(|e| shift(e, 0))?;
                let den = Scalar::parse_decimal(d).map_err(|e| shift(e, n.len() + 1))?;
                num.checked_div(&den)
            }
        }
    }
}

impl PartialEq<i64> for Scalar {
    fn eq(&self, other: &i64) -> bool {
        self.0.is_integer() && *self.0.numer() == BigInt::from(*other)
    }
}

impl PartialOrd<i64> for Scalar {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer(BigInt::from(*other))))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(self.0, rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar($trait::$method(self.0, &rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar($trait::$method(&self.0, rhs.0))
            }
        }
        impl $trait<i64> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: i64) -> Scalar {
                $trait::$method(self, Scalar::from_integer(rhs))
            }
        }
        impl $trait<i64> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: i64) -> Scalar {
                $trait::$method(self, Scalar::from_integer(rhs))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

// Panics on a zero divisor, like the integer types; use `checked_div` otherwise.
forward_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, v| acc + v)
    }
}

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}

/// Shorthand for `num / den`; panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::from_ratio(num, den).expect("nonzero denominator")
}
