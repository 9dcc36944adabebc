use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_traits::{Num, One, Zero};

use super::dyadic::{Dyadic, Rounding};

/// Precision used when two exact operands are divided.
const EXACT_DIV_BITS: u32 = 128;

/// Binary floating point with a per-value precision, rounding to nearest.
///
/// Precision 0 marks an exact value (constants such as `zero()` and
/// `one()`); a binary operation rounds to the larger operand precision.
#[derive(Clone)]
pub struct BigFloat {
    value: Dyadic,
    prec: u32,
}

impl BigFloat {
    pub fn new(value: Dyadic, prec: u32) -> Self {
        let value = if prec == 0 {
            value
        } else {
            value.round(prec, Rounding::Nearest)
        };
        Self { value, prec }
    }

    pub fn exact(value: Dyadic) -> Self {
        Self { value, prec: 0 }
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::new(Dyadic::from_f64(x), prec)
    }

    pub fn from_int(x: impl Into<BigInt>, prec: u32) -> Self {
        Self::new(Dyadic::from_int(x), prec)
    }

    pub fn value(&self) -> &Dyadic {
        &self.value
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.value.clone(), prec)
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn round_to_integer(&self) -> BigInt {
        self.value.to_integer(Rounding::Nearest)
    }

    fn combine(&self, rhs: &Self, value: Dyadic) -> Self {
        Self::new(value, self.prec.max(rhs.prec))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.value.cmp(&other.value))
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        Self::exact(Dyadic::zero())
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        Self::exact(Dyadic::one())
    }
}

impl Add for BigFloat {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let v = &self.value + &rhs.value;
        self.combine(&rhs, v)
    }
}

impl Sub for BigFloat {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let v = &self.value - &rhs.value;
        self.combine(&rhs, v)
    }
}

impl Mul for BigFloat {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let v = &self.value * &rhs.value;
        self.combine(&rhs, v)
    }
}

impl Div for BigFloat {
    type Output = Self;

    fn div(self, rhs: Self) -> Self {
        let prec = match self.prec.max(rhs.prec) {
            0 => EXACT_DIV_BITS,
            p => p,
        };
        Self::new(self.value.div(&rhs.value, prec, Rounding::Nearest), prec)
    }
}

impl Rem for BigFloat {
    type Output = Self;

    /// Remainder of truncated division, as for primitive floats.
    fn rem(self, rhs: Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        let q = self
            .value
            .div(&rhs.value, prec.max(EXACT_DIV_BITS), Rounding::Nearest);
        let trunc = if q.is_negative() {
            q.to_integer(Rounding::Ceil)
        } else {
            q.to_integer(Rounding::Floor)
        };
        let v = &self.value - &(&Dyadic::from_int(trunc) * &rhs.value);
        Self::new(v, prec)
    }
}

impl Neg for BigFloat {
    type Output = Self;

    fn neg(self) -> Self {
        Self {
            value: -self.value,
            prec: self.prec,
        }
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = num_traits::ParseFloatError;

    /// Parses through `f64`; only meant for short literals.
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let x = f64::from_str_radix(s, radix)?;
        Ok(Self::exact(Dyadic::from_f64(x)))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}@{}", self.to_f64(), self.prec)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.value.to_decimal(digits, Rounding::Nearest))
    }
}

/// Real scalar the root refinement is generic over.
///
/// Constructors take a `like` value whose precision the result inherits, so
/// there is never an ambient precision setting.
pub trait Scalar: Num + Clone + PartialOrd + Neg<Output = Self> + fmt::Debug {
    fn from_f64_like(x: f64, like: &Self) -> Self;
    fn from_int_like(x: &BigInt, like: &Self) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    /// `floor(log2 |x|)`, `None` for zero.
    fn log2_floor(&self) -> Option<i64>;
    /// Significant bits carried by this value.
    fn precision(&self) -> u32;
}

impl Scalar for f64 {
    fn from_f64_like(x: f64, _: &Self) -> Self {
        x
    }

    fn from_int_like(x: &BigInt, _: &Self) -> Self {
        Dyadic::from_int(x.clone()).to_f64()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn log2_floor(&self) -> Option<i64> {
        if *self == 0.0 {
            None
        } else {
            Some(f64::abs(*self).log2().floor() as i64)
        }
    }

    fn precision(&self) -> u32 {
        f64::MANTISSA_DIGITS
    }
}

impl Scalar for BigFloat {
    fn from_f64_like(x: f64, like: &Self) -> Self {
        Self::from_f64(x, like.prec)
    }

    fn from_int_like(x: &BigInt, like: &Self) -> Self {
        Self::from_int(x.clone(), like.prec)
    }

    fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    fn abs(&self) -> Self {
        Self {
            value: self.value.abs(),
            prec: self.prec,
        }
    }

    fn sqrt(&self) -> Self {
        let prec = match self.prec {
            0 => EXACT_DIV_BITS,
            p => p,
        };
        Self::new(self.value.sqrt(prec, Rounding::Nearest), prec)
    }

    fn log2_floor(&self) -> Option<i64> {
        self.value.log2_floor()
    }

    fn precision(&self) -> u32 {
        self.prec
    }
}
